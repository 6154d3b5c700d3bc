#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>

namespace regdiff {

using Int = mpz_class;
using Rat = mpq_class;

/// Rational number extended by +inf and -inf.
class ExtRat {
 public:
  ExtRat() = default;
  ExtRat(const Rat& q) : q_(q) {}  // NOLINT(google-explicit-constructor)
  ExtRat(long n) : q_(n) {}        // NOLINT(google-explicit-constructor)

  static ExtRat inf() { return ExtRat(1, 0); }
  static ExtRat neg_inf() { return ExtRat(-1, 0); }

  bool is_finite() const { return inf_ == 0; }
  bool is_inf() const { return inf_ > 0; }
  bool is_neg_inf() const { return inf_ < 0; }

  /// The finite value; throws if infinite.
  const Rat& value() const {
    if (inf_ != 0) throw std::domain_error("ExtRat: value() of an infinite quantity");
    return q_;
  }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b);
  friend ExtRat operator-(const ExtRat& a, const ExtRat& b);
  friend ExtRat operator-(const ExtRat& a);
  /// Multiplication by a positive or negative rational scalar.
  friend ExtRat operator*(const Rat& c, const ExtRat& a);

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    return a.inf_ == b.inf_ && (a.inf_ != 0 || a.q_ == b.q_);
  }
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ != b.inf_) return a.inf_ <=> b.inf_;
    if (a.inf_ != 0) return std::strong_ordering::equal;
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "a/b", "a", "inf" or "-inf".
  std::string str() const;
  static ExtRat parse(const std::string& s);

 private:
  ExtRat(int sign, int) : inf_(sign) {}
  Rat q_{0};
  int inf_ = 0;
};

inline ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
inline ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

/// Exponent of p in q, +inf for q = 0.
ExtRat valp(const Rat& q, long p);
/// Exponent of p in a nonzero integer.
long valp_int(const Int& n, long p);

std::string rat_str(const Rat& q);
Rat parse_rat(const std::string& s);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);
/// Denominator of q as a machine integer (throws on overflow).
long den_long(const Rat& q);
long to_long(const Int& n);
Int lcm(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);
/// p^k for an integer k of either sign.
Rat rat_pow(const Rat& base, long k);
/// Reduction of a p-integral rational modulo p.
long mod_p(const Rat& q, long p);
bool is_prime(long p);

}  // namespace regdiff
