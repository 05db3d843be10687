#include "tamon/rational.hpp"

#include <algorithm>
#include <ostream>

#include "tamon/error.hpp"

namespace tamon {
namespace {

using Int = Rat::Int;

[[noreturn]] void overflow(const char* op) {
  throw Error(ErrorKind::Overflow,
              std::string("rational overflow in ") + op);
}

Int abs128(Int v) { return v < 0 ? -v : v; }

Int gcd128(Int a, Int b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int mul(Int a, Int b, const char* op) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) overflow(op);
  return r;
}

Int add(Int a, Int b, const char* op) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) overflow(op);
  return r;
}

Int floor_div(Int a, Int b) {
  // b > 0
  Int q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

// Continued-fraction comparison of a/b and c/d (b, d > 0); never overflows.
std::strong_ordering compare_slow(Int a, Int b, Int c, Int d) {
  bool flipped = false;
  for (;;) {
    Int qa = floor_div(a, b);
    Int qc = floor_div(c, d);
    if (qa != qc) {
      auto o = qa <=> qc;
      if (!flipped) return o;
      return o == std::strong_ordering::less ? std::strong_ordering::greater
                                             : std::strong_ordering::less;
    }
    Int ra = a - qa * b;
    Int rc = c - qc * d;
    if (ra == 0 || rc == 0) {
      std::strong_ordering o = std::strong_ordering::equal;
      if (ra == 0 && rc != 0) o = std::strong_ordering::less;
      if (ra != 0 && rc == 0) o = std::strong_ordering::greater;
      if (!flipped || o == std::strong_ordering::equal) return o;
      return o == std::strong_ordering::less ? std::strong_ordering::greater
                                             : std::strong_ordering::less;
    }
    // ra/b vs rc/d  <=>  d/rc vs b/ra (reversed)
    Int next_a = b;
    Int next_c = d;
    a = next_a;
    b = ra;
    c = next_c;
    d = rc;
    flipped = !flipped;
  }
}

}  // namespace

Rat::Rat(Int num, Int den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rat Rat::parse(std::string_view text) {
  auto fail = [&]() -> Rat {
    throw Error(ErrorKind::InvalidArgument,
                "not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  auto digits = [&](std::size_t& p, Int& out, Int& scale) {
    std::size_t start = p;
    while (p < text.size() && text[p] >= '0' && text[p] <= '9') {
      out = add(mul(out, 10, "parse"), text[p] - '0', "parse");
      scale = mul(scale, 10, "parse");
      ++p;
    }
    return p > start;
  };
  Int whole = 0;
  Int unused = 1;
  bool has_whole = digits(pos, whole, unused);
  if (pos == text.size()) {
    if (!has_whole) return fail();
    return Rat(negative ? -whole : whole, 1);
  }
  if (text[pos] == '/') {
    if (!has_whole) return fail();
    ++pos;
    Int den = 0;
    Int scale = 1;
    if (!digits(pos, den, scale) || pos != text.size() || den == 0) return fail();
    return Rat(negative ? -whole : whole, den);
  }
  if (text[pos] == '.') {
    ++pos;
    Int frac = 0;
    Int scale = 1;
    bool has_frac = digits(pos, frac, scale);
    if ((!has_whole && !has_frac) || pos != text.size()) return fail();
    Int num = add(mul(whole, scale, "parse"), frac, "parse");
    return Rat(negative ? -num : num, scale);
  }
  return fail();
}

double Rat::to_double() const noexcept {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string int128_to_string(Int value) {
  if (value == 0) return "0";
  bool negative = value < 0;
  std::string out;
  // Work with negative remainders so INT128_MIN is handled.
  while (value != 0) {
    int digit = static_cast<int>(value % 10);
    if (digit < 0) digit = -digit;
    out.push_back(static_cast<char>('0' + digit));
    value /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Rat::str() const {
  if (den_ == 1) return int128_to_string(num_);
  return int128_to_string(num_) + "/" + int128_to_string(den_);
}

Rat Rat::operator-() const {
  Rat r;
  if (__builtin_sub_overflow(Int{0}, num_, &r.num_)) overflow("negation");
  r.den_ = den_;
  return r;
}

Rat& Rat::operator+=(const Rat& rhs) {
  if (den_ == rhs.den_) {
    Int n = add(num_, rhs.num_, "addition");
    if (den_ == 1) {
      num_ = n;
      return *this;
    }
    *this = Rat(n, den_);
    return *this;
  }
  Int g = gcd128(den_, rhs.den_);
  Int lhs_scale = rhs.den_ / g;
  Int rhs_scale = den_ / g;
  Int n = add(mul(num_, lhs_scale, "addition"), mul(rhs.num_, rhs_scale, "addition"),
              "addition");
  Int d = mul(den_, lhs_scale, "addition");
  *this = Rat(n, d);
  return *this;
}

Rat& Rat::operator-=(const Rat& rhs) { return *this += -rhs; }

Rat& Rat::operator*=(const Rat& rhs) {
  Int g1 = gcd128(num_, rhs.den_);
  Int g2 = gcd128(rhs.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  Int n = mul(num_ / g1, rhs.num_ / g2, "multiplication");
  Int d = mul(den_ / g2, rhs.den_ / g1, "multiplication");
  *this = Rat(n, d);
  return *this;
}

Rat& Rat::operator/=(const Rat& rhs) {
  if (rhs.num_ == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  Rat inv;
  inv.num_ = rhs.den_;
  inv.den_ = rhs.num_;
  if (inv.den_ < 0) {
    inv.num_ = -inv.num_;
    inv.den_ = -inv.den_;
  }
  return *this *= inv;
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  Int l;
  Int r;
  if (!__builtin_mul_overflow(a.num_, b.den_, &l) &&
      !__builtin_mul_overflow(b.num_, a.den_, &r)) {
    return l <=> r;
  }
  return compare_slow(a.num_, a.den_, b.num_, b.den_);
}

std::size_t Rat::hash() const noexcept {
  auto mix = [](std::size_t h, std::uint64_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  auto un = static_cast<unsigned __int128>(num_);
  auto ud = static_cast<unsigned __int128>(den_);
  std::size_t h = 0;
  h = mix(h, static_cast<std::uint64_t>(un));
  h = mix(h, static_cast<std::uint64_t>(un >> 64));
  h = mix(h, static_cast<std::uint64_t>(ud));
  h = mix(h, static_cast<std::uint64_t>(ud >> 64));
  return h;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace tamon
