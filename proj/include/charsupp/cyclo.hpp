#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "charsupp/rational.hpp"

namespace charsupp {

struct CycloError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Q(zeta_{p^r}); r = 0 denotes Q itself.
struct FieldTag {
  uint32_t p = 2;
  uint32_t r = 0;
  friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

uint32_t euler_phi(uint32_t n);
bool is_prime_u32(uint32_t n);

// Element of the cyclotomic field Q(zeta_n), held in the reduced power
// basis zeta_n^0 .. zeta_n^{phi(n)-1} modulo the n-th cyclotomic
// polynomial. The representation is canonical: two values at the same
// conductor are equal iff their coefficient vectors are equal. Values
// embed exactly into any conductor that is a multiple of their own.
class Cyclo {
 public:
  Cyclo() : conductor_(1), coeffs_(1) {}

  static Cyclo from_rational(const Rational& q, uint32_t conductor = 1);
  static Cyclo zero(uint32_t conductor) { return from_rational(Rational(0), conductor); }
  static Cyclo one() { return from_rational(Rational(1)); }
  // zeta_n^k, any integer k (reduced mod n).
  static Cyclo root_of_unity(uint32_t n, int64_t k);

  uint32_t conductor() const { return conductor_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  // Throws unless is_rational().
  Rational as_rational() const;
  bool has_integral_coeffs() const;

  // Exact re-expression at conductor m, n | m.
  Cyclo embedded(uint32_t m) const;

  Cyclo operator-() const;
  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  Cyclo scaled(const Rational& s) const;

  // Galois map zeta_n -> zeta_n^{-1} (complex conjugation).
  Cyclo conjugate() const;

  // Equality embeds both sides into the lcm conductor first.
  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Canonical text: bare rational, or c(<n>)[a0, a1, ...].
  std::string str() const;

 private:
  friend struct CycloAccess;

  uint32_t conductor_;
  std::vector<Rational> coeffs_;  // length euler_phi(conductor_)
};

Cyclo pow(const Cyclo& x, uint64_t e);

// Field automorphism zeta_n -> zeta_n^j, gcd(j, n) = 1.
Cyclo galois_apply(const Cyclo& x, uint64_t j);

// Relative trace from Q(zeta_{p^r}) down to Q(zeta_{p^s}), s <= r.
// x must have conductor dividing p^r; the result is returned at
// conductor p^s (membership in the subfield is verified).
Cyclo relative_trace(const Cyclo& x, FieldTag source, uint32_t target_s);

struct RootOfUnityInfo {
  bool is_root = false;
  uint32_t order = 0;
};
// Tests x^lcm(2,n) = 1 (the roots of unity of Q(zeta_n) are exactly the
// lcm(2,n)-th roots); reports the multiplicative order on success.
RootOfUnityInfo is_root_of_unity(const Cyclo& x);

// Smallest r such that every value is fixed by the Galois subgroup fixing
// Q(zeta_{p^r}). All conductors must be 1 or powers of p.
FieldTag minimal_prime_power_field(std::span<const Cyclo> values, uint32_t p);

// Re-express x at conductor m (m | conductor). Throws CycloError when x
// does not lie in Q(zeta_m).
Cyclo to_subfield(const Cyclo& x, uint32_t m);

// Hard limit for conductors (guards the power-basis table cache).
uint32_t conductor_cap();
void set_conductor_cap(uint32_t cap);

}  // namespace charsupp
