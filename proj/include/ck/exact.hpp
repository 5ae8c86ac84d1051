#ifndef CK_EXACT_HPP
#define CK_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ck {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct MixedSurdFields : std::runtime_error {
  MixedSurdFields(std::int64_t d1, std::int64_t d2)
      : std::runtime_error("mixed surd fields: sqrt(" + std::to_string(d1) +
                           ") vs sqrt(" + std::to_string(d2) + ")") {}
};

struct DivideByZero : std::runtime_error {
  DivideByZero() : std::runtime_error("division by zero") {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Splits n >= 0 as m^2 * d with d square-free. Trial division up to 10^4,
// enough for every discriminant arising from degree-<=2 clause polynomials.
inline void extract_square_factor(const Int& n, Int& m, Int& d) {
  m = 1;
  d = n;
  if (d <= 1) return;
  for (Int p = 2; p * p <= d && p <= 10000; ++p) {
    while (d % (p * p) == 0) {
      d /= p * p;
      m *= p;
    }
  }
  Int r = boost::multiprecision::sqrt(d);
  if (r * r == d) {
    m *= r;
    d = 1;
  }
}

// Exact element of Q or a real quadratic field Q(sqrt(d)):
// value = rat + surd * sqrt(d), with d square-free and d = 0 iff surd = 0.
// Arithmetic between elements of distinct genuine quadratic fields throws
// MixedSurdFields; every comparison is exact.
class ExactScalar {
 public:
  ExactScalar() : d_(0) {}
  ExactScalar(int v) : rat_(v), d_(0) {}            // NOLINT(runtime/explicit)
  ExactScalar(std::int64_t v) : rat_(v), d_(0) {}   // NOLINT(runtime/explicit)
  ExactScalar(Rat v) : rat_(std::move(v)), d_(0) {} // NOLINT(runtime/explicit)

  ExactScalar(Rat rat, Rat surd, std::int64_t d)
      : rat_(std::move(rat)), surd_(std::move(surd)), d_(d) {
    normalize();
  }

  static ExactScalar sqrt_of(std::int64_t n) {
    if (n < 0) throw std::domain_error("sqrt of negative integer");
    Int m, d;
    extract_square_factor(Int(n), m, d);
    if (d == 1) return ExactScalar(Rat(m));
    return ExactScalar(Rat(0), Rat(m), static_cast<std::int64_t>(d));
  }

  // sqrt of a nonnegative rational p/q = sqrt(p*q)/q.
  static ExactScalar sqrt_of(const Rat& r) {
    if (r < 0) throw std::domain_error("sqrt of negative rational");
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    Int m, d;
    extract_square_factor(num * den, m, d);
    if (d == 1) return ExactScalar(Rat(m, den));
    return ExactScalar(Rat(0), Rat(m, den), static_cast<std::int64_t>(d));
  }

  const Rat& rational_part() const { return rat_; }
  const Rat& surd_part() const { return surd_; }
  std::int64_t surd_base() const { return d_; }

  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return rat_ == 0 && surd_ == 0; }

  // Exact rational value; throws when the value is irrational.
  const Rat& as_rational() const {
    if (!is_rational()) throw std::domain_error("irrational ExactScalar");
    return rat_;
  }

  double approx() const {
    double v = static_cast<double>(rat_);
    if (d_ != 0) v += static_cast<double>(surd_) * std::sqrt(static_cast<double>(d_));
    return v;
  }

  int sign() const {
    if (surd_ == 0) return rat_ == 0 ? 0 : (rat_ > 0 ? 1 : -1);
    if (rat_ == 0) return surd_ > 0 ? 1 : -1;
    int sr = rat_ > 0 ? 1 : -1;
    int ss = surd_ > 0 ? 1 : -1;
    if (sr == ss) return sr;
    // rat and surd*sqrt(d) of opposite signs: compare rat^2 vs surd^2 * d.
    Rat lhs = rat_ * rat_;
    Rat rhs = surd_ * surd_ * d_;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sr : ss;
  }

  friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
    std::int64_t d = merged_base(x, y);
    return ExactScalar(x.rat_ + y.rat_, x.surd_ + y.surd_, d);
  }
  friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
    std::int64_t d = merged_base(x, y);
    return ExactScalar(x.rat_ - y.rat_, x.surd_ - y.surd_, d);
  }
  ExactScalar operator-() const { return ExactScalar(-rat_, -surd_, d_); }

  friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
    std::int64_t d = merged_base(x, y);
    return ExactScalar(x.rat_ * y.rat_ + x.surd_ * y.surd_ * d,
                       x.rat_ * y.surd_ + x.surd_ * y.rat_, d);
  }

  friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) {
    if (y.is_zero()) throw DivideByZero();
    std::int64_t d = merged_base(x, y);
    // 1/(a + b sqrt(d)) = (a - b sqrt(d)) / (a^2 - b^2 d)
    Rat norm = y.rat_ * y.rat_ - y.surd_ * y.surd_ * d;
    if (norm == 0) throw DivideByZero();  // cannot happen for square-free d
    ExactScalar conj(y.rat_ / norm, -y.surd_ / norm, d);
    return x * conj;
  }

  ExactScalar& operator+=(const ExactScalar& y) { return *this = *this + y; }
  ExactScalar& operator-=(const ExactScalar& y) { return *this = *this - y; }
  ExactScalar& operator*=(const ExactScalar& y) { return *this = *this * y; }
  ExactScalar& operator/=(const ExactScalar& y) { return *this = *this / y; }

  // Three-way comparison, exact across distinct quadratic fields. Within one
  // field it is algebraic; across two genuine fields the difference is never
  // zero (the fields meet only in Q), so refining rational enclosures of the
  // square roots always separates the values.
  static int compare(const ExactScalar& x, const ExactScalar& y) {
    if (x.d_ == y.d_ || x.surd_ == 0 || y.surd_ == 0) return (x - y).sign();
    Rat alo, ahi, blo, bhi;
    for (int iters = 4; iters <= 256; iters *= 2) {
      surd_bounds(x.surd_, x.d_, iters, alo, ahi);
      surd_bounds(y.surd_, y.d_, iters, blo, bhi);
      Rat lo = x.rat_ + alo - (y.rat_ + bhi);
      Rat hi = x.rat_ + ahi - (y.rat_ + blo);
      if (lo > 0) return 1;
      if (hi < 0) return -1;
    }
    throw std::logic_error("surd comparison failed to separate");
  }

  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    if (x.d_ == y.d_) return x.rat_ == y.rat_ && x.surd_ == y.surd_;
    return compare(x, y) == 0;
  }
  friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }
  friend bool operator<(const ExactScalar& x, const ExactScalar& y) { return compare(x, y) < 0; }
  friend bool operator>(const ExactScalar& x, const ExactScalar& y) { return compare(x, y) > 0; }
  friend bool operator<=(const ExactScalar& x, const ExactScalar& y) { return compare(x, y) <= 0; }
  friend bool operator>=(const ExactScalar& x, const ExactScalar& y) { return compare(x, y) >= 0; }

  // Canonical (a + b sqrt(d)) / q with gcd(a, b, q) = 1, q > 0.
  void canonical(Int& a, Int& b, std::int64_t& d, Int& q) const {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    using boost::multiprecision::gcd;
    Int an = numerator(rat_), ad = denominator(rat_);
    Int bn = numerator(surd_), bd = denominator(surd_);
    Int g = gcd(ad, bd);
    q = ad / g * bd;
    a = an * (bd / g);
    b = bn * (ad / g);
    d = d_;
    Int c = gcd(gcd(abs(a), abs(b)), q);
    if (c > 1) {
      a /= c;
      b /= c;
      q /= c;
    }
  }

  // Prints "a", "a/q", or "(a+b*sqrt(d))/q"; parse() consumes the same syntax.
  std::string str() const {
    Int a, b, q;
    std::int64_t d;
    canonical(a, b, d, q);
    if (b == 0) {
      std::string s = a.str();
      if (q != 1) s += "/" + q.str();
      return s;
    }
    std::string s = "(" + a.str();
    s += (b < 0 ? "-" : "+");
    Int babs = abs(b);
    if (babs != 1) s += babs.str() + "*";
    s += "sqrt(" + std::to_string(d) + "))";
    if (q != 1) s += "/" + q.str();
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactScalar& x) {
    return os << x.str();
  }

  static ExactScalar parse(const std::string& text);

 private:
  // Rational enclosure of b * sqrt(d) after `iters` Newton steps (the Newton
  // sequence for sqrt(d) decreases from above; d / upper bounds from below).
  static void surd_bounds(const Rat& b, std::int64_t d, int iters, Rat& lo, Rat& hi) {
    Rat up(boost::multiprecision::sqrt(Int(d)) + 1);
    for (int i = 0; i < iters; ++i) up = (up + d / up) / 2;
    Rat down = d / up;
    if (b >= 0) {
      lo = b * down;
      hi = b * up;
    } else {
      lo = b * up;
      hi = b * down;
    }
  }

  static std::int64_t merged_base(const ExactScalar& x, const ExactScalar& y) {
    if (x.d_ == y.d_ || y.d_ == 0) return x.d_;
    if (x.d_ == 0) return y.d_;
    throw MixedSurdFields(x.d_, y.d_);
  }

  void normalize() {
    if (surd_ == 0) {
      d_ = 0;
    } else if (d_ == 0) {
      surd_ = 0;
    } else if (d_ == 1) {
      rat_ += surd_;
      surd_ = 0;
      d_ = 0;
    }
  }

  Rat rat_;
  Rat surd_;
  std::int64_t d_;
};

namespace detail {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  bool eof() const { return i >= s.size(); }
  char peek() const { return eof() ? '\0' : s[i]; }
  void skip_ws() {
    while (!eof() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ParseError("expected '" + std::string(1, c) + "' at offset " +
                       std::to_string(i) + " in \"" + s + "\"");
  }
  Int integer() {
    skip_ws();
    bool neg = accept('-');
    if (!neg) accept('+');
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected integer at offset " + std::to_string(i) +
                       " in \"" + s + "\"");
    Int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s[i] - '0');
      ++i;
    }
    return neg ? Int(-v) : v;
  }
  bool match_word(const char* w) {
    skip_ws();
    std::size_t j = i;
    for (const char* p = w; *p; ++p, ++j)
      if (j >= s.size() || s[j] != *p) return false;
    i = j;
    return true;
  }
};

}  // namespace detail

// Accepts "p", "p/q", "sqrt(d)", "b*sqrt(d)", "(a+b*sqrt(d))/q" and the
// obvious sign variants.
inline ExactScalar ExactScalar::parse(const std::string& text) {
  detail::Cursor c{text};
  Int a = 0, b = 0, d = 0;

  auto surd_term = [&](Int coeff) {
    c.expect('(');
    Int base = c.integer();
    c.expect(')');
    if (base < 0) throw ParseError("negative surd base in \"" + text + "\"");
    b += coeff;
    if (d != 0 && base != d) throw ParseError("mixed surd bases in \"" + text + "\"");
    d = base;
  };

  auto term = [&](int sign) {
    if (c.match_word("sqrt")) {
      surd_term(Int(sign));
      return;
    }
    Int v = c.integer() * sign;
    c.skip_ws();
    if (c.accept('*')) {
      if (!c.match_word("sqrt")) throw ParseError("expected sqrt after '*' in \"" + text + "\"");
      surd_term(v);
    } else {
      a += v;
    }
  };

  if (c.accept('(')) {
    term(1);
    c.skip_ws();
    while (!c.eof() && (c.peek() == '+' || c.peek() == '-')) {
      int sign = c.accept('+') ? 1 : (c.expect('-'), -1);
      term(sign);
      c.skip_ws();
    }
    c.expect(')');
  } else {
    term(1);
  }

  Int q = 1;
  c.skip_ws();
  if (c.accept('/')) {
    q = c.integer();
    if (q == 0) throw ParseError("zero denominator in \"" + text + "\"");
    if (q < 0) {
      a = -a;
      b = -b;
      q = -q;
    }
  }
  c.skip_ws();
  if (!c.eof()) throw ParseError("trailing characters in \"" + text + "\"");

  if (b == 0) return ExactScalar(Rat(a, q));
  Int m, sf;
  extract_square_factor(d, m, sf);
  if (sf == 1) return ExactScalar(Rat(a + b * m, q));
  return ExactScalar(Rat(a, q), Rat(b * m, q), static_cast<std::int64_t>(sf));
}

inline ExactScalar abs(const ExactScalar& x) { return x.sign() < 0 ? -x : x; }

}  // namespace ck

#endif  // CK_EXACT_HPP
