#include "regdiff/rational.hpp"

#include <limits>

namespace regdiff {

ExtRat operator+(const ExtRat& a, const ExtRat& b) {
  if (a.inf_ != 0 || b.inf_ != 0) {
    if (a.inf_ * b.inf_ < 0) throw std::domain_error("ExtRat: inf + (-inf)");
    return ExtRat(a.inf_ != 0 ? a.inf_ : b.inf_, 0);
  }
  return ExtRat(Rat(a.q_ + b.q_));
}

ExtRat operator-(const ExtRat& a) {
  if (a.inf_ != 0) return ExtRat(-a.inf_, 0);
  return ExtRat(Rat(-a.q_));
}

ExtRat operator-(const ExtRat& a, const ExtRat& b) { return a + (-b); }

ExtRat operator*(const Rat& c, const ExtRat& a) {
  if (a.inf_ != 0) {
    if (sgn(c) == 0) throw std::domain_error("ExtRat: 0 * inf");
    return ExtRat(sgn(c) * a.inf_, 0);
  }
  return ExtRat(Rat(c * a.q_));
}

std::string ExtRat::str() const {
  if (inf_ > 0) return "inf";
  if (inf_ < 0) return "-inf";
  return rat_str(q_);
}

ExtRat ExtRat::parse(const std::string& s) {
  if (s == "inf" || s == "+inf") return inf();
  if (s == "-inf") return neg_inf();
  return ExtRat(parse_rat(s));
}

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  q.canonicalize();
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return q;
}

long valp_int(const Int& n, long p) {
  if (n == 0) throw std::domain_error("valp_int(0)");
  Int m = abs(n);
  long k = 0;
  Int P(p);
  while (mpz_divisible_p(m.get_mpz_t(), P.get_mpz_t()) != 0) {
    m /= P;
    ++k;
  }
  return k;
}

ExtRat valp(const Rat& q, long p) {
  if (q == 0) return ExtRat::inf();
  return ExtRat(Rat(valp_int(q.get_num(), p) - valp_int(q.get_den(), p)));
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

long to_long(const Int& n) {
  if (!n.fits_slong_p()) throw std::overflow_error("integer does not fit in a machine word");
  return n.get_si();
}

long den_long(const Rat& q) { return to_long(q.get_den()); }

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rat rat_pow(const Rat& base, long k) {
  Int num, den;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rat r = k >= 0 ? Rat(num, den) : Rat(den, num);
  r.canonicalize();
  return r;
}

long mod_p(const Rat& q, long p) {
  Int P(p);
  Int d = q.get_den();
  if (mpz_divisible_p(d.get_mpz_t(), P.get_mpz_t()) != 0)
    throw std::domain_error("mod_p: rational is not p-integral");
  Int inv;
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
  Int r = q.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), P.get_mpz_t());
  return r.get_si();
}

bool is_prime(long p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(Int(p).get_mpz_t(), 30) != 0;
}

}  // namespace regdiff
