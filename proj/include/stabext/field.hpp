#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace stabext {

/// Exact scalar domain: the rationals, or a prime field F_p.
/// Scalars are always mpq_class values; prime-field elements are kept as
/// integers in [0, p).  No floating point anywhere.
class FieldSpec {
public:
  static FieldSpec rationals() { return FieldSpec(0); }

  static FieldSpec prime(unsigned long p) {
    if (!is_prime(p)) throw std::invalid_argument("FieldSpec: " + std::to_string(p) + " is not prime");
    return FieldSpec(p);
  }

  bool is_rational() const { return p_ == 0; }
  unsigned long characteristic() const { return p_; }

  bool operator==(const FieldSpec& o) const { return p_ == o.p_; }
  bool operator!=(const FieldSpec& o) const { return p_ != o.p_; }

  /// Canonical representative: lowest terms over Q, value in [0,p) over F_p.
  /// Over Q this is the identity: gmp arithmetic keeps mpq_class canonical,
  /// and the few constructors of raw num/den pairs canonicalize themselves.
  mpq_class reduce(const mpq_class& x) const {
    if (is_rational()) return x;
    // fast path: canonical prime-field values are integers in [0, p)
    if (x.get_den() == 1 && x.get_num() >= 0 && x.get_num() < long(p_)) return x;
    // x must be an integer mod p; invert any denominator mod p.
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_class p(static_cast<unsigned long>(p_));
    mpz_class d = den % p;
    if (d < 0) d += p;
    if (d == 0) throw std::domain_error("FieldSpec: denominator divisible by p");
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()) == 0)
      throw std::domain_error("FieldSpec: no inverse mod p");
    mpz_class r = (num % p) * dinv % p;
    if (r < 0) r += p;
    return mpq_class(r);
  }

  mpq_class add(const mpq_class& a, const mpq_class& b) const { return reduce(a + b); }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const { return reduce(a - b); }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return reduce(a * b); }
  mpq_class neg(const mpq_class& a) const { return reduce(-a); }

  mpq_class inv(const mpq_class& a) const {
    if (a == 0) throw std::domain_error("FieldSpec: inverse of zero");
    if (is_rational()) return mpq_class(1) / a;
    mpz_class p(p_), dinv;
    mpz_class n = a.get_num() % p;
    if (n < 0) n += p;
    if (mpz_invert(dinv.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()) == 0)
      throw std::domain_error("FieldSpec: no inverse mod p");
    return mpq_class(dinv);
  }

  mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

  mpq_class from_long(long v) const { return reduce(mpq_class(v)); }

  /// Parse "3/7", "-2", "5".  Over F_p, rational input is reduced mod p.
  mpq_class parse(const std::string& s) const {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("FieldSpec: cannot parse scalar '" + s + "'");
    v.canonicalize();
    return reduce(v);
  }

  std::string to_string(const mpq_class& a) const { return a.get_str(); }

  /// Uniform scalar for seeded property tests: F_p uniform, Q small-height.
  mpq_class random(std::mt19937_64& rng) const {
    if (!is_rational()) {
      std::uniform_int_distribution<unsigned long> d(0, p_ - 1);
      return mpq_class(static_cast<long>(d(rng)));
    }
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 4);
    mpq_class v(num(rng), den(rng));
    v.canonicalize();
    return v;
  }

  static bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

private:
  explicit FieldSpec(unsigned long p) : p_(p) {}
  unsigned long p_;  // 0 encodes the rationals
};

}  // namespace stabext
