#include "tamon/partition.hpp"

#include <algorithm>

#include "tamon/error.hpp"

namespace tamon {

Rat Interval::representative() const {
  switch (kind_) {
    case Kind::Point: return lo_;
    case Kind::Open: return (lo_ + hi_) / Rat(2);
    case Kind::OpenUnbounded: return lo_ + Rat(1);
  }
  return lo_;
}

std::string Interval::str() const {
  switch (kind_) {
    case Kind::Point: return "[" + lo_.str() + "," + lo_.str() + "]";
    case Kind::Open: return "(" + lo_.str() + "," + hi_.str() + ")";
    case Kind::OpenUnbounded: return "(" + lo_.str() + ",inf)";
  }
  return "?";
}

IntervalPartition::IntervalPartition(std::vector<Rat> constants)
    : constants_(std::move(constants)) {
  if (constants_.empty() || !constants_.front().is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "clock constants must start with 0");
  }
  for (std::size_t i = 1; i < constants_.size(); ++i) {
    if (!(constants_[i - 1] < constants_[i])) {
      throw Error(ErrorKind::InvalidArgument,
                  "clock constants must be sorted and distinct");
    }
  }
  intervals_.reserve(2 * constants_.size());
  for (std::size_t i = 0; i < constants_.size(); ++i) {
    intervals_.push_back(Interval::point(constants_[i]));
    if (i + 1 < constants_.size()) {
      intervals_.push_back(Interval::open(constants_[i], constants_[i + 1]));
    } else {
      intervals_.push_back(Interval::unbounded(constants_[i]));
    }
  }
}

std::size_t IntervalPartition::index_of(const Rat& t) const {
  if (t.is_negative()) {
    throw Error(ErrorKind::InvalidArgument, "clock values are non-negative");
  }
  // i = number of constants <= t, so C_{i-1} <= t < C_i.
  auto it = std::upper_bound(constants_.begin(), constants_.end(), t);
  auto i = static_cast<std::size_t>(it - constants_.begin());
  return constants_[i - 1] == t ? 2 * (i - 1) : 2 * (i - 1) + 1;
}

}  // namespace tamon
