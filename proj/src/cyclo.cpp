#include "charsupp/cyclo.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace charsupp {

namespace {

std::atomic<uint32_t> g_conductor_cap{16384};

// Reduction data for one conductor: phi(n) and the rows expressing
// zeta_n^j in the power basis for j >= phi(n).
struct ConductorData {
  uint32_t n = 1;
  uint32_t phi = 1;
  // rows[j - phi] = coefficients of x^j mod Phi_n, for phi <= j <= max_exp.
  std::vector<std::vector<long long>> rows;
  uint32_t max_exp = 0;
};

// Cyclotomic polynomial Phi_n as ascending integer coefficients.
// Computed by exact division of x^n - 1 by the Phi_d for proper d | n.
std::vector<long long> cyclotomic_poly(uint32_t n,
                                       std::map<uint32_t, std::vector<long long>>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<long long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (uint32_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto den = cyclotomic_poly(d, cache);
    // Exact long division; den is monic.
    std::vector<long long> quot(num.size() - den.size() + 1, 0);
    std::vector<long long> rem = num;
    for (size_t i = quot.size(); i-- > 0;) {
      long long c = rem[i + den.size() - 1];
      quot[i] = c;
      if (c == 0) continue;
      for (size_t k = 0; k < den.size(); ++k) rem[i + k] -= c * den[k];
    }
    num = quot;
  }
  while (num.size() > 1 && num.back() == 0) num.pop_back();
  cache.emplace(n, num);
  return num;
}

const ConductorData& conductor_data(uint32_t n) {
  static std::mutex mu;
  static std::map<uint32_t, std::unique_ptr<ConductorData>> table;
  static std::map<uint32_t, std::vector<long long>> poly_cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(n);
  if (it != table.end()) return *it->second;
  if (n == 0 || n > g_conductor_cap.load())
    throw CycloError("conductor " + std::to_string(n) + " beyond configured cap");
  auto data = std::make_unique<ConductorData>();
  data->n = n;
  const auto phi_poly = cyclotomic_poly(n, poly_cache);
  data->phi = static_cast<uint32_t>(phi_poly.size() - 1);
  const uint32_t phi = data->phi;
  data->max_exp = std::max(n - 1, 2 * phi > 1 ? 2 * phi - 2 : 0);
  if (data->max_exp >= phi) {
    data->rows.reserve(data->max_exp - phi + 1);
    // x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1}), Phi_n monic.
    std::vector<long long> row(phi);
    for (uint32_t k = 0; k < phi; ++k) row[k] = -phi_poly[k];
    data->rows.push_back(row);
    for (uint32_t j = phi + 1; j <= data->max_exp; ++j) {
      const auto& prev = data->rows.back();
      std::vector<long long> next(phi, 0);
      long long top = prev[phi - 1];
      for (uint32_t k = phi - 1; k > 0; --k) next[k] = prev[k - 1];
      next[0] = 0;
      if (top != 0) {
        const auto& r0 = data->rows[0];
        for (uint32_t k = 0; k < phi; ++k) {
          next[k] += top * r0[k];
          if (next[k] > (1LL << 56) || next[k] < -(1LL << 56))
            throw CycloError("reduction coefficient overflow");
        }
      }
      data->rows.push_back(std::move(next));
    }
  }
  const auto& ref = *data;
  table.emplace(n, std::move(data));
  return ref;
}

// Adds q * zeta_n^e into a reduced coefficient vector (e <= max_exp).
void add_power(std::vector<Rational>& coeffs, const ConductorData& cd, uint64_t e,
               const Rational& q) {
  if (q.is_zero()) return;
  if (e < cd.phi) {
    coeffs[e] += q;
    return;
  }
  const auto& row = cd.rows[e - cd.phi];
  for (uint32_t k = 0; k < cd.phi; ++k) {
    if (row[k] != 0) coeffs[k] += q * Rational(row[k]);
  }
}

}  // namespace

// Installs an already-reduced power-basis vector (internal factory).
struct CycloAccess {
  static Cyclo make(uint32_t n, std::vector<Rational> coeffs) {
    Cyclo c;
    c.conductor_ = n;
    c.coeffs_ = std::move(coeffs);
    return c;
  }
};

uint32_t euler_phi(uint32_t n) {
  uint32_t result = n;
  uint32_t m = n;
  for (uint32_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint32_t conductor_cap() { return g_conductor_cap.load(); }
void set_conductor_cap(uint32_t cap) { g_conductor_cap.store(cap); }

Cyclo Cyclo::from_rational(const Rational& q, uint32_t conductor) {
  const auto& cd = conductor_data(conductor);
  std::vector<Rational> coeffs(cd.phi, Rational(0));
  coeffs[0] = q;
  return CycloAccess::make(conductor, std::move(coeffs));
}

Cyclo Cyclo::root_of_unity(uint32_t n, int64_t k) {
  const auto& cd = conductor_data(n);
  int64_t e = k % static_cast<int64_t>(n);
  if (e < 0) e += n;
  std::vector<Rational> coeffs(cd.phi, Rational(0));
  add_power(coeffs, cd, static_cast<uint64_t>(e), Rational(1));
  return CycloAccess::make(n, std::move(coeffs));
}

bool Cyclo::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& q) { return q.is_zero(); });
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

Rational Cyclo::as_rational() const {
  if (!is_rational()) throw CycloError("value is not rational: " + str());
  return coeffs_[0];
}

bool Cyclo::has_integral_coeffs() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& q) { return q.is_integer(); });
}

Cyclo Cyclo::embedded(uint32_t m) const {
  if (m == conductor_) return *this;
  if (m % conductor_ != 0)
    throw CycloError("cannot embed conductor " + std::to_string(conductor_) +
                     " into " + std::to_string(m));
  const auto& cd = conductor_data(m);
  const uint64_t step = m / conductor_;
  std::vector<Rational> out(cd.phi, Rational(0));
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (!coeffs_[k].is_zero()) add_power(out, cd, k * step, coeffs_[k]);
  }
  return CycloAccess::make(m, std::move(out));
}

Cyclo Cyclo::operator-() const {
  Cyclo c = *this;
  for (auto& q : c.coeffs_) q = -q;
  return c;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  if (a.conductor_ != b.conductor_) {
    uint32_t m = std::lcm(a.conductor_, b.conductor_);
    return a.embedded(m) + b.embedded(m);
  }
  Cyclo c = a;
  for (size_t k = 0; k < c.coeffs_.size(); ++k) c.coeffs_[k] += b.coeffs_[k];
  return c;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  if (a.conductor_ != b.conductor_) {
    uint32_t m = std::lcm(a.conductor_, b.conductor_);
    return a.embedded(m) * b.embedded(m);
  }
  const auto& cd = conductor_data(a.conductor_);
  const uint32_t phi = cd.phi;
  std::vector<Rational> conv(2 * phi > 0 ? 2 * phi - 1 : 1, Rational(0));
  for (uint32_t i = 0; i < phi; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (uint32_t k = 0; k < phi; ++k) {
      if (b.coeffs_[k].is_zero()) continue;
      conv[i + k] += a.coeffs_[i] * b.coeffs_[k];
    }
  }
  std::vector<Rational> out(phi, Rational(0));
  for (uint32_t k = 0; k < phi; ++k) out[k] = conv[k];
  for (uint32_t j = phi; j < conv.size(); ++j) {
    if (conv[j].is_zero()) continue;
    const auto& row = cd.rows[j - phi];
    for (uint32_t k = 0; k < phi; ++k)
      if (row[k] != 0) out[k] += conv[j] * Rational(row[k]);
  }
  return CycloAccess::make(a.conductor_, std::move(out));
}

Cyclo Cyclo::scaled(const Rational& s) const {
  Cyclo c = *this;
  for (auto& q : c.coeffs_) q *= s;
  return c;
}

Cyclo Cyclo::conjugate() const {
  if (conductor_ <= 2) return *this;
  return galois_apply(*this, conductor_ - 1);
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  uint32_t m = std::lcm(a.conductor_, b.conductor_);
  return a.embedded(m).coeffs_ == b.embedded(m).coeffs_;
}

std::string Cyclo::str() const {
  if (is_rational()) return coeffs_[0].str();
  std::ostringstream os;
  os << "c(" << conductor_ << ")[";
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) os << ", ";
    os << coeffs_[k].str();
  }
  os << "]";
  return os.str();
}

Cyclo pow(const Cyclo& x, uint64_t e) {
  Cyclo result = Cyclo::from_rational(Rational(1), x.conductor());
  Cyclo base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Cyclo galois_apply(const Cyclo& x, uint64_t j) {
  const uint32_t n = x.conductor();
  j %= n;
  if (std::gcd(j, static_cast<uint64_t>(n)) != 1)
    throw CycloError("galois exponent " + std::to_string(j) +
                     " not coprime to conductor " + std::to_string(n));
  const auto& cd = conductor_data(n);
  std::vector<Rational> out(cd.phi, Rational(0));
  const auto& coeffs = x.coeffs();
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) add_power(out, cd, (k * j) % n, coeffs[k]);
  }
  return CycloAccess::make(n, std::move(out));
}

Cyclo to_subfield(const Cyclo& x, uint32_t m) {
  const uint32_t n = x.conductor();
  if (m == n) return x;
  if (n % m != 0) throw CycloError("target conductor does not divide source");
  const uint32_t phim = euler_phi(m);
  const uint32_t phin = euler_phi(n);
  // Columns: embedding of zeta_m^t into conductor n; solve E c = x exactly.
  std::vector<std::vector<Rational>> cols;
  cols.reserve(phim);
  for (uint32_t t = 0; t < phim; ++t)
    cols.push_back(Cyclo::root_of_unity(m, t).embedded(n).coeffs());
  std::vector<std::vector<Rational>> aug(phin, std::vector<Rational>(phim + 1, Rational(0)));
  for (uint32_t r = 0; r < phin; ++r) {
    for (uint32_t t = 0; t < phim; ++t) aug[r][t] = cols[t][r];
    aug[r][phim] = x.coeffs()[r];
  }
  uint32_t rank = 0;
  std::vector<int64_t> pivot_row(phim, -1);
  for (uint32_t col = 0; col < phim && rank < phin; ++col) {
    uint32_t sel = rank;
    while (sel < phin && aug[sel][col].is_zero()) ++sel;
    if (sel == phin) continue;
    std::swap(aug[sel], aug[rank]);
    Rational inv = Rational(1) / aug[rank][col];
    for (uint32_t t = col; t <= phim; ++t) aug[rank][t] *= inv;
    for (uint32_t r = 0; r < phin; ++r) {
      if (r == rank || aug[r][col].is_zero()) continue;
      Rational f = aug[r][col];
      for (uint32_t t = col; t <= phim; ++t) aug[r][t] -= f * aug[rank][t];
    }
    pivot_row[col] = rank;
    ++rank;
  }
  for (uint32_t r = rank; r < phin; ++r)
    if (!aug[r][phim].is_zero())
      throw CycloError("value does not lie in Q(zeta_" + std::to_string(m) + ")");
  std::vector<Rational> out(phim, Rational(0));
  for (uint32_t t = 0; t < phim; ++t)
    if (pivot_row[t] >= 0) out[t] = aug[static_cast<size_t>(pivot_row[t])][phim];
  Cyclo result = CycloAccess::make(m, std::move(out));
  if (result.embedded(n) != x)
    throw CycloError("value does not lie in Q(zeta_" + std::to_string(m) + ")");
  return result;
}

Cyclo relative_trace(const Cyclo& x, FieldTag source, uint32_t target_s) {
  if (target_s > source.r) throw CycloError("relative trace: target field above source");
  uint64_t pr = 1;
  for (uint32_t i = 0; i < source.r; ++i) pr *= source.p;
  uint64_t ps = 1;
  for (uint32_t i = 0; i < target_s; ++i) ps *= source.p;
  if (pr % x.conductor() != 0)
    throw CycloError("value conductor does not divide p^r");
  const Cyclo xe = x.embedded(static_cast<uint32_t>(pr));
  Cyclo acc = Cyclo::zero(static_cast<uint32_t>(pr));
  for (uint64_t j = 1; j <= pr; ++j) {
    if (std::gcd(j, pr) != 1) continue;
    if (j % ps != 1 % ps) continue;
    acc += galois_apply(xe, j);
  }
  return to_subfield(acc, static_cast<uint32_t>(ps));
}

RootOfUnityInfo is_root_of_unity(const Cyclo& x) {
  if (x.is_zero()) return {};
  const uint32_t n = x.conductor();
  const uint64_t L = std::lcm<uint64_t>(2, n);
  const Cyclo one = Cyclo::from_rational(Rational(1), n);
  if (pow(x, L) != one) return {};
  uint64_t order = L;
  uint64_t m = L;
  for (uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    while (order % p == 0 && pow(x, order / p) == one) order /= p;
  }
  if (m > 1)
    while (order % m == 0 && pow(x, order / m) == one) order /= m;
  return {true, static_cast<uint32_t>(order)};
}

FieldTag minimal_prime_power_field(std::span<const Cyclo> values, uint32_t p) {
  uint64_t big = 1;
  for (const auto& v : values) {
    uint32_t c = v.conductor();
    uint32_t reduced = c;
    while (reduced % p == 0) reduced /= p;
    if (reduced != 1) throw CycloError("mixed conductors in field computation");
    big = std::lcm<uint64_t>(big, c);
  }
  if (big == 1) return {p, 0};
  uint32_t big_r = 0;
  for (uint64_t t = big; t > 1; t /= p) ++big_r;
  std::vector<Cyclo> embedded;
  embedded.reserve(values.size());
  for (const auto& v : values) embedded.push_back(v.embedded(static_cast<uint32_t>(big)));
  // The Galois subgroup fixing Q(zeta_{p^r}) consists of the residues
  // j = 1 (mod p^r); testing fixity on generators of that subgroup
  // suffices. It is generated by 1 + p^r (with -1 joining in for the
  // full unit group when p = 2), and by a primitive root at r = 0.
  auto generators_for = [&](uint32_t r) {
    std::vector<uint64_t> gens;
    if (p == 2) {
      if (r <= 1) {
        gens.push_back(big - 1);
        if (big >= 8) gens.push_back(5);
        if (big == 4) gens.push_back(3);
      } else {
        uint64_t ps = 1;
        for (uint32_t i = 0; i < r; ++i) ps *= 2;
        if (ps < big) gens.push_back(1 + ps);
      }
      return gens;
    }
    if (r == 0) {
      // Primitive root modulo p^big_r.
      for (uint64_t cand = 2; cand < big; ++cand) {
        if (std::gcd(cand, big) != 1) continue;
        uint64_t order = 1;
        uint64_t acc = cand;
        while (acc != 1) {
          acc = (acc * cand) % big;
          ++order;
        }
        if (order == euler_phi(static_cast<uint32_t>(big))) {
          gens.push_back(cand);
          break;
        }
      }
      return gens;
    }
    uint64_t ps = 1;
    for (uint32_t i = 0; i < r; ++i) ps *= p;
    if (ps < big) gens.push_back(1 + ps);
    return gens;
  };
  for (uint32_t r = 0; r <= big_r; ++r) {
    bool fixed = true;
    for (uint64_t j : generators_for(r)) {
      for (const auto& v : embedded) {
        if (galois_apply(v, j) != v) { fixed = false; break; }
      }
      if (!fixed) break;
    }
    if (fixed) return {p, r};
  }
  return {p, big_r};
}

}  // namespace charsupp
