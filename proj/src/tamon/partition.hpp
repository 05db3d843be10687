#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tamon/rational.hpp"

namespace tamon {

/// One cell of the partition of [0, inf): a point [c, c], a bounded open
/// interval (lo, hi) or the unbounded (lo, inf).
class Interval {
 public:
  enum class Kind { Point, Open, OpenUnbounded };

  static Interval point(Rat c) { return Interval(Kind::Point, c, c); }
  static Interval open(Rat lo, Rat hi) { return Interval(Kind::Open, std::move(lo), std::move(hi)); }
  static Interval unbounded(Rat lo) { return Interval(Kind::OpenUnbounded, lo, lo); }

  Kind kind() const noexcept { return kind_; }
  const Rat& lo() const noexcept { return lo_; }
  /// Meaningless for `OpenUnbounded`.
  const Rat& hi() const noexcept { return hi_; }
  bool bounded_above() const noexcept { return kind_ != Kind::OpenUnbounded; }

  bool contains(const Rat& t) const {
    switch (kind_) {
      case Kind::Point: return t == lo_;
      case Kind::Open: return lo_ < t && t < hi_;
      case Kind::OpenUnbounded: return lo_ < t;
    }
    return false;
  }

  /// Some value inside the interval; guards are evaluated on it.
  Rat representative() const;
  std::string str() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Interval(Kind k, Rat lo, Rat hi) : kind_(k), lo_(std::move(lo)), hi_(std::move(hi)) {}

  Kind kind_;
  Rat lo_;
  Rat hi_;
};

/// The 2k+2 intervals induced by clock constants 0 = C_0 < ... < C_k:
/// index 2i is [C_i, C_i], index 2i+1 is (C_i, C_{i+1}), and the last one is
/// (C_k, inf). Every guard over these constants is constant on each cell.
class IntervalPartition {
 public:
  /// Throws `InvalidArgument` unless `constants` is strictly increasing and
  /// starts with 0.
  explicit IntervalPartition(std::vector<Rat> constants);

  const std::vector<Rat>& constants() const noexcept { return constants_; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }

  /// Index of the unique interval containing t (t >= 0). O(log k).
  std::size_t index_of(const Rat& t) const;

 private:
  std::vector<Rat> constants_;
  std::vector<Interval> intervals_;
};

inline IntervalPartition build_partition(std::vector<Rat> constants) {
  return IntervalPartition(std::move(constants));
}

inline std::size_t interval_index(const IntervalPartition& p, const Rat& t) {
  return p.index_of(t);
}

}  // namespace tamon
