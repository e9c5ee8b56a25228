#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "charsupp/cyclo.hpp"
#include "charsupp/util.hpp"

using namespace charsupp;

namespace {

// Float shadow: map the power basis to complex numbers and evaluate.
std::complex<double> shadow(const Cyclo& x) {
  std::complex<double> acc{0.0, 0.0};
  const uint32_t n = x.conductor();
  for (size_t k = 0; k < x.coeffs().size(); ++k) {
    const auto& q = x.coeffs()[k];
    if (q.is_zero()) continue;
    double phase = 2.0 * M_PI * static_cast<double>(k) / n;
    acc += (static_cast<double>(q.num()) / static_cast<double>(q.den())) *
           std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

Cyclo random_cyclo(Rng& rng, uint32_t n) {
  Cyclo acc = Cyclo::zero(n);
  uint32_t terms = 1 + static_cast<uint32_t>(rng.below(4));
  for (uint32_t t = 0; t < terms; ++t) {
    int64_t num = static_cast<int64_t>(rng.below(9)) - 4;
    int64_t den = 1 + static_cast<int64_t>(rng.below(3));
    acc += Cyclo::root_of_unity(n, static_cast<int64_t>(rng.below(n)))
               .scaled(Rational(num, den));
  }
  return acc;
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
  Rational a(1, 2), b(1, 3);
  CHECK(a + b == Rational(5, 6));
  CHECK(a * b == Rational(1, 6));
  CHECK((a - a).is_zero());
  CHECK(Rational(4, 8) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK_THROWS_AS(Rational(1, 0), ArithmeticError);
  CHECK_THROWS_AS(Rational(INT64_MAX) * Rational(INT64_MAX), ArithmeticError);
}

TEST_CASE("cyclotomic identities") {
  // (zeta_8 + zeta_8^-1)^2 = 2
  Cyclo s = Cyclo::root_of_unity(8, 1) + Cyclo::root_of_unity(8, -1);
  CHECK(s * s == Cyclo::from_rational(Rational(2), 8));
  // zeta_5 * conj(zeta_5) = 1
  Cyclo z5 = Cyclo::root_of_unity(5, 1);
  CHECK(z5 * z5.conjugate() == Cyclo::one());
  // 1 + zeta_3 + zeta_3^2 = 0
  Cyclo gsum = Cyclo::one() + Cyclo::root_of_unity(3, 1) + Cyclo::root_of_unity(3, 2);
  CHECK(gsum.is_zero());
}

TEST_CASE("canonicality: equality iff difference reduces to zero") {
  Rng rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(23));
    Cyclo x = random_cyclo(rng, n);
    Cyclo y = random_cyclo(rng, n);
    CHECK((x == y) == (x - y).is_zero());
  }
}

TEST_CASE("float shadow agrees with exact arithmetic") {
  Rng rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(40));
    Cyclo x = random_cyclo(rng, n);
    Cyclo y = random_cyclo(rng, n);
    auto close = [](std::complex<double> a, std::complex<double> b) {
      double scale = std::max(1.0, std::max(std::abs(a), std::abs(b)));
      return std::abs(a - b) / scale < 1e-9;
    };
    CHECK(close(shadow(x * y), shadow(x) * shadow(y)));
    CHECK(close(shadow(x + y), shadow(x) + shadow(y)));
    CHECK(close(shadow(x.conjugate()), std::conj(shadow(x))));
  }
}

TEST_CASE("embedding compatibility") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(14));
    uint32_t factor = 1 + static_cast<uint32_t>(rng.below(4));
    uint32_t m = n * factor;
    Cyclo x = random_cyclo(rng, n);
    Cyclo y = random_cyclo(rng, n);
    CHECK((x * y).embedded(m) == x.embedded(m) * y.embedded(m));
    CHECK((x + y).embedded(m) == x.embedded(m) + y.embedded(m));
  }
}

TEST_CASE("galois maps are field automorphisms") {
  CHECK(galois_apply(Cyclo::root_of_unity(9, 1), 4) == Cyclo::root_of_unity(9, 4));
  CHECK(galois_apply(Cyclo::from_rational(Rational(7, 3), 12), 5) ==
        Cyclo::from_rational(Rational(7, 3), 12));
  // Exhaustive on basis products for small conductors.
  for (uint32_t n : {5u, 8u, 9u, 12u, 16u, 64u}) {
    uint32_t phi = euler_phi(n);
    for (uint64_t j = 1; j < n; ++j) {
      if (std::gcd(j, static_cast<uint64_t>(n)) != 1) continue;
      for (uint32_t a = 0; a < phi; ++a) {
        Cyclo za = Cyclo::root_of_unity(n, a);
        for (uint32_t b = 0; b < phi; ++b) {
          Cyclo zb = Cyclo::root_of_unity(n, b);
          CHECK(galois_apply(za * zb, j) == galois_apply(za, j) * galois_apply(zb, j));
        }
        CHECK(galois_apply(za, 1) == za);
      }
    }
  }
}

TEST_CASE("relative traces between prime-power fields") {
  // Trace of 1 from Q(zeta_9) to Q(zeta_3) is the extension degree 3.
  CHECK(relative_trace(Cyclo::one(), FieldTag{3, 2}, 1) ==
        Cyclo::from_rational(Rational(3), 3));
  // Primitive 9th root traces to 0.
  CHECK(relative_trace(Cyclo::root_of_unity(9, 1), FieldTag{3, 2}, 1).is_zero());
  // Fixed element scales by the degree.
  CHECK(relative_trace(Cyclo::root_of_unity(3, 1), FieldTag{3, 2}, 1) ==
        Cyclo::root_of_unity(3, 1).scaled(Rational(3)));
  CHECK_THROWS_AS(relative_trace(Cyclo::one(), FieldTag{3, 1}, 2), CycloError);
}

TEST_CASE("trace of every primitive p^r-th root vanishes (odd p^r <= 81)") {
  for (uint32_t p : {3u, 5u, 7u}) {
    for (uint32_t r = 2; ; ++r) {
      uint64_t pr = 1;
      for (uint32_t i = 0; i < r; ++i) pr *= p;
      if (pr > 81) break;
      for (uint32_t s = 1; s < r; ++s) {
        for (uint64_t k = 1; k < pr; ++k) {
          if (k % p == 0) continue;  // primitive roots only
          Cyclo z = Cyclo::root_of_unity(static_cast<uint32_t>(pr), static_cast<int64_t>(k));
          CHECK(relative_trace(z, FieldTag{p, r}, s).is_zero());
        }
      }
    }
  }
}

TEST_CASE("trace is linear over the target field") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Cyclo x = random_cyclo(rng, 27);
    Cyclo y = random_cyclo(rng, 27);
    Cyclo c = random_cyclo(rng, 3);  // scalar from the target field
    Cyclo lhs = relative_trace(x.scaled(Rational(2)) + y * c.embedded(27), FieldTag{3, 3}, 1);
    Cyclo rhs = relative_trace(x, FieldTag{3, 3}, 1).scaled(Rational(2)) +
                relative_trace(y, FieldTag{3, 3}, 1) * c;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("root of unity detection") {
  auto minus_one = Cyclo::from_rational(Rational(-1));
  auto r1 = is_root_of_unity(minus_one);
  CHECK(r1.is_root);
  CHECK(r1.order == 2);
  CHECK_FALSE(is_root_of_unity(Cyclo::from_rational(Rational(2))).is_root);
  CHECK_FALSE(is_root_of_unity(Cyclo::zero(8)).is_root);
  // ((zeta_8 + zeta_8^-1)^2) / 2 = 1.
  Cyclo s = Cyclo::root_of_unity(8, 1) + Cyclo::root_of_unity(8, -1);
  auto r2 = is_root_of_unity((s * s).scaled(Rational(1, 2)));
  CHECK(r2.is_root);
  CHECK(r2.order == 1);
  auto r3 = is_root_of_unity(Cyclo::root_of_unity(9, 3));
  CHECK(r3.is_root);
  CHECK(r3.order == 3);
  // zeta_8 + zeta_8^-1 itself is sqrt(2): not a root of unity.
  CHECK_FALSE(is_root_of_unity(s).is_root);
}

TEST_CASE("minimal prime-power field") {
  std::vector<Cyclo> rationals{Cyclo::one(), Cyclo::from_rational(Rational(-5, 2))};
  CHECK(minimal_prime_power_field(rationals, 3) == FieldTag{3, 0});
  std::vector<Cyclo> thirds{Cyclo::one(), Cyclo::root_of_unity(3, 1),
                            Cyclo::root_of_unity(3, 2)};
  CHECK(minimal_prime_power_field(thirds, 3) == FieldTag{3, 1});
  // zeta_3 seen at conductor 9 still generates only Q(zeta_3).
  std::vector<Cyclo> embedded{Cyclo::root_of_unity(9, 3)};
  CHECK(minimal_prime_power_field(embedded, 3) == FieldTag{3, 1});
  std::vector<Cyclo> ninth{Cyclo::root_of_unity(9, 1)};
  CHECK(minimal_prime_power_field(ninth, 3) == FieldTag{3, 2});
  std::vector<Cyclo> mixed{Cyclo::root_of_unity(6, 1)};
  CHECK_THROWS_AS(minimal_prime_power_field(mixed, 3), CycloError);
}

TEST_CASE("canonical rendering") {
  CHECK(Cyclo::from_rational(Rational(2), 8).str() == "2");
  CHECK(Cyclo::from_rational(Rational(-1, 2)).str() == "-1/2");
  Cyclo s = Cyclo::root_of_unity(8, 1) + Cyclo::root_of_unity(8, -1);
  CHECK(s.str() == "c(8)[0, 1, 0, -1]");
}

TEST_CASE("conductor cap is a hard error") {
  uint32_t old_cap = conductor_cap();
  set_conductor_cap(100);
  CHECK_THROWS_AS(Cyclo::root_of_unity(101, 1), CycloError);
  set_conductor_cap(old_cap);
}
