#include "charsupp/characters.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace charsupp {

namespace {

struct Fq {
  uint64_t q = 0;
  uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % q; }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a + q - b % q) % q; }
  uint64_t mul(uint64_t a, uint64_t b) const { return (a * b) % q; }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t acc = 1 % q;
    a %= q;
    while (e) {
      if (e & 1) acc = mul(acc, a);
      a = mul(a, a);
      e >>= 1;
    }
    return acc;
  }
  uint64_t inv(uint64_t a) const { return pow(a, q - 2); }
};

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

using Vec = std::vector<uint64_t>;
using Mat = std::vector<Vec>;  // row-major

Vec apply(const Fq& F, const Mat& m, const Vec& v) {
  const size_t r = v.size();
  Vec out(r, 0);
  for (size_t j = 0; j < r; ++j) {
    uint64_t acc = 0;
    const Vec& row = m[j];
    for (size_t k = 0; k < r; ++k)
      if (row[k] && v[k]) acc = F.add(acc, F.mul(row[k], v[k]));
    out[j] = acc;
  }
  return out;
}

// Row-reduced view of a basis, for extracting coordinates of vectors in
// its span: rref_t = sum_s T[t][s] basis_s, with unit pivot columns.
struct SpanSolver {
  std::vector<size_t> pivots;
  Mat T;
  Mat rref;

  SpanSolver(const Fq& F, const std::vector<Vec>& basis) {
    const size_t d = basis.size();
    const size_t r = basis[0].size();
    rref = Mat(basis.begin(), basis.end());
    T.assign(d, Vec(d, 0));
    for (size_t t = 0; t < d; ++t) T[t][t] = 1;
    size_t row = 0;
    for (size_t col = 0; col < r && row < d; ++col) {
      size_t sel = row;
      while (sel < d && rref[sel][col] == 0) ++sel;
      if (sel == d) continue;
      std::swap(rref[sel], rref[row]);
      std::swap(T[sel], T[row]);
      uint64_t s = F.inv(rref[row][col]);
      for (size_t k = 0; k < r; ++k) rref[row][k] = F.mul(rref[row][k], s);
      for (size_t k = 0; k < d; ++k) T[row][k] = F.mul(T[row][k], s);
      for (size_t i = 0; i < d; ++i) {
        if (i == row || rref[i][col] == 0) continue;
        uint64_t f = rref[i][col];
        for (size_t k = 0; k < r; ++k)
          rref[i][k] = F.sub(rref[i][k], F.mul(f, rref[row][k]));
        for (size_t k = 0; k < d; ++k) T[i][k] = F.sub(T[i][k], F.mul(f, T[row][k]));
      }
      pivots.push_back(col);
      ++row;
    }
    if (pivots.size() != d) throw CharError("subspace basis is degenerate");
  }

  // Coordinates of w (must lie in the span) relative to the basis.
  Vec coords(const Fq& F, const Vec& w) const {
    const size_t d = pivots.size();
    Vec gamma(d);
    for (size_t u = 0; u < d; ++u) gamma[u] = w[pivots[u]];
    Vec beta(d, 0);
    for (size_t u = 0; u < d; ++u) {
      if (!gamma[u]) continue;
      for (size_t s = 0; s < d; ++s)
        if (T[u][s]) beta[s] = F.add(beta[s], F.mul(gamma[u], T[u][s]));
    }
    return beta;
  }
};

// Characteristic polynomial via Hessenberg reduction (any field works:
// pivots only need to be nonzero).
Vec char_poly(const Fq& F, Mat h) {
  const size_t d = h.size();
  for (size_t j = 0; j + 2 < d; ++j) {
    size_t piv = j + 1;
    while (piv < d && h[piv][j] == 0) ++piv;
    if (piv == d) continue;
    if (piv != j + 1) {
      std::swap(h[piv], h[j + 1]);
      for (size_t k = 0; k < d; ++k) std::swap(h[k][piv], h[k][j + 1]);
    }
    uint64_t inv = F.inv(h[j + 1][j]);
    for (size_t i = j + 2; i < d; ++i) {
      if (h[i][j] == 0) continue;
      uint64_t f = F.mul(h[i][j], inv);
      for (size_t k = 0; k < d; ++k) h[i][k] = F.sub(h[i][k], F.mul(f, h[j + 1][k]));
      for (size_t k = 0; k < d; ++k) h[k][j + 1] = F.add(h[k][j + 1], F.mul(f, h[k][i]));
    }
  }
  // p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[i-1][m-1] (prod subdiag) p_{i-1}.
  std::vector<Vec> p(d + 1);
  p[0] = {1};
  for (size_t m = 1; m <= d; ++m) {
    Vec cur(m + 1, 0);
    for (size_t k = 0; k < m; ++k) {
      cur[k + 1] = F.add(cur[k + 1], p[m - 1][k]);
      cur[k] = F.sub(cur[k], F.mul(h[m - 1][m - 1], p[m - 1][k]));
    }
    uint64_t prod = 1;
    for (size_t i = m - 1; i >= 1; --i) {
      prod = F.mul(prod, h[i][i - 1]);
      if (prod == 0) break;
      uint64_t coeff = F.mul(h[i - 1][m - 1], prod);
      if (coeff)
        for (size_t k = 0; k < i; ++k) cur[k] = F.sub(cur[k], F.mul(coeff, p[i - 1][k]));
    }
    p[m] = std::move(cur);
  }
  return p[d];
}

uint64_t eval_poly(const Fq& F, const Vec& poly, uint64_t x) {
  uint64_t acc = 0;
  for (size_t k = poly.size(); k-- > 0;) acc = F.add(F.mul(acc, x), poly[k]);
  return acc;
}

// In-place radix-2 NTT: v[k] <- sum_s v[s] * root^{ks}, |v| a power of 2,
// root of that order in F_q.
void ntt_pow2(const Fq& F, std::vector<uint64_t>& v, uint64_t root) {
  const size_t o = v.size();
  for (size_t i = 1, j = 0; i < o; ++i) {
    size_t bit = o >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  for (size_t len = 2; len <= o; len <<= 1) {
    uint64_t wlen = F.pow(root, o / len);
    for (size_t i = 0; i < o; i += len) {
      uint64_t w = 1;
      for (size_t j = 0; j < len / 2; ++j) {
        uint64_t u = v[i + j];
        uint64_t t = F.mul(w, v[i + j + len / 2]);
        v[i + j] = F.add(u, t);
        v[i + j + len / 2] = F.sub(u, t);
        w = F.mul(w, wlen);
      }
    }
  }
}

// Kernel basis of (m - lambda I), deterministic free-variable order.
std::vector<Vec> kernel_basis(const Fq& F, Mat m, uint64_t lambda) {
  const size_t d = m.size();
  for (size_t i = 0; i < d; ++i) m[i][i] = F.sub(m[i][i], lambda);
  std::vector<int64_t> pivot_of_col(d, -1);
  size_t row = 0;
  for (size_t col = 0; col < d && row < d; ++col) {
    size_t sel = row;
    while (sel < d && m[sel][col] == 0) ++sel;
    if (sel == d) continue;
    std::swap(m[sel], m[row]);
    uint64_t s = F.inv(m[row][col]);
    for (size_t k = 0; k < d; ++k) m[row][k] = F.mul(m[row][k], s);
    for (size_t i = 0; i < d; ++i) {
      if (i == row || m[i][col] == 0) continue;
      uint64_t f = m[i][col];
      for (size_t k = 0; k < d; ++k) m[i][k] = F.sub(m[i][k], F.mul(f, m[row][k]));
    }
    pivot_of_col[col] = static_cast<int64_t>(row);
    ++row;
  }
  std::vector<Vec> out;
  for (size_t col = 0; col < d; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    Vec v(d, 0);
    v[col] = 1;
    for (size_t c2 = 0; c2 < d; ++c2)
      if (pivot_of_col[c2] >= 0)
        v[c2] = F.sub(0, m[static_cast<size_t>(pivot_of_col[c2])][col]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Cyclo inner_product(const ClassPartition& classes, const std::vector<Cyclo>& a,
                    const std::vector<Cyclo>& b, uint32_t order) {
  Cyclo acc;
  for (uint32_t c = 0; c < classes.count(); ++c) {
    if (a[c].is_zero() || b[c].is_zero()) continue;
    acc += (a[c] * b[c].conjugate()).scaled(Rational(classes.sizes[c]));
  }
  return acc.scaled(Rational(1, order));
}

Cyclo inner_product_over(const Subgroup& h, const std::vector<Cyclo>& a_by_element,
                         const std::vector<Cyclo>& b_by_element) {
  Cyclo acc;
  for (Elt x : h.members) {
    if (a_by_element[x].is_zero() || b_by_element[x].is_zero()) continue;
    acc += a_by_element[x] * b_by_element[x].conjugate();
  }
  return acc.scaled(Rational(1, h.order()));
}

ClassFunction induce(const Group& g, const ClassPartition& g_classes, const Subgroup& h,
                     const std::vector<Cyclo>& values_on_members) {
  if (values_on_members.size() != h.members.size())
    throw CharError("induction needs one value per subgroup member");
  ClassFunction out;
  out.values.reserve(g_classes.count());
  for (uint32_t c = 0; c < g_classes.count(); ++c) {
    Elt rep = g_classes.reps[c];
    Cyclo acc;
    for (Elt x = 0; x < g.order(); ++x) {
      Elt y = g.conjugate(rep, g.inverse(x));  // x rep x^-1
      auto it = std::lower_bound(h.members.begin(), h.members.end(), y);
      if (it != h.members.end() && *it == y)
        acc += values_on_members[static_cast<size_t>(it - h.members.begin())];
    }
    out.values.push_back(acc.scaled(Rational(1, h.order())));
  }
  return out;
}

std::vector<Cyclo> restrict_to(const CharacterTable& t, uint32_t row, const Subgroup& h) {
  std::vector<Cyclo> out;
  out.reserve(h.members.size());
  for (Elt x : h.members) out.push_back(t.value(row, t.classes.class_of[x]));
  return out;
}

std::string CharacterTable::render() const {
  std::ostringstream os;
  os << "classes:";
  for (uint32_t c = 0; c < classes.count(); ++c)
    os << " " << group->element_order(classes.reps[c]) << "/" << classes.sizes[c];
  os << "\n";
  for (uint32_t k = 0; k < count(); ++k) {
    os << "chi" << k << " deg=" << rows[k].degree << " :";
    for (uint32_t c = 0; c < classes.count(); ++c) os << " " << rows[k].values[c].str();
    os << "\n";
  }
  return os.str();
}

CharacterTable character_table(const Group& g, const TableOptions& opts) {
  if (g.order() > opts.max_order)
    throw CapError("character table order cap exceeded (" + std::to_string(g.order()) +
                   " > " + std::to_string(opts.max_order) + ")");
  CharacterTable table;
  table.group = &g;
  table.classes = conjugacy_classes(g);
  const ClassPartition& cl = table.classes;
  const uint32_t r = cl.count();
  const uint32_t n = g.order();
  const uint32_t e = g.exponent();
  table.conductor = e;

  // Smallest prime q = 1 mod e with q > 2 ceil(sqrt(n)).
  uint32_t root = 1;
  while (root * root < n) ++root;
  const uint64_t lower = 2ULL * root;
  uint64_t q = 0;
  for (uint64_t cand = e + 1;; cand += e) {
    if (cand <= lower) continue;
    bool prime = cand >= 2;
    for (uint64_t d = 2; d * d <= cand; ++d)
      if (cand % d == 0) { prime = false; break; }
    if (prime) { q = cand; break; }
    if (cand > (1ULL << 40)) throw CharError("no admissible Dixon modulus found");
  }
  table.dixon_modulus = q;
  Fq F{q};

  // Primitive e-th root of unity in F_q.
  uint64_t z = 1;
  {
    uint64_t gen = 0;
    auto factors = prime_factors(q - 1);
    for (uint64_t cand = 2; cand < q; ++cand) {
      bool ok = true;
      for (uint64_t f : factors)
        if (F.pow(cand, (q - 1) / f) == 1) { ok = false; break; }
      if (ok) { gen = cand; break; }
    }
    z = F.pow(gen, (q - 1) / e);
  }

  std::vector<uint32_t> inv_class(r);
  for (uint32_t c = 0; c < r; ++c) inv_class[c] = cl.class_of[g.inverse(cl.reps[c])];

  auto class_matrix = [&](uint32_t i) {
    Mat m(r, Vec(r, 0));
    for (uint32_t k = 0; k < r; ++k) {
      Elt zk = cl.reps[k];
      for (Elt x : cl.classes[i]) {
        uint32_t j = cl.class_of[g.mult(g.inverse(x), zk)];
        m[j][k] = F.add(m[j][k], 1);
      }
    }
    return m;
  };

  // Split the class-function space into common eigenspaces.
  std::vector<std::vector<Vec>> spaces;
  {
    std::vector<Vec> full;
    for (uint32_t k = 0; k < r; ++k) {
      Vec v(r, 0);
      v[k] = 1;
      full.push_back(std::move(v));
    }
    spaces.push_back(std::move(full));
  }
  for (uint32_t ci = 1; ci < r; ++ci) {
    bool pending = false;
    for (const auto& s : spaces)
      if (s.size() > 1) { pending = true; break; }
    if (!pending) break;
    Mat m = class_matrix(ci);
    std::vector<std::vector<Vec>> next;
    for (auto& space : spaces) {
      const size_t d = space.size();
      if (d == 1) {
        next.push_back(std::move(space));
        continue;
      }
      SpanSolver solver(F, space);
      Mat restr(d, Vec(d, 0));
      for (size_t t = 0; t < d; ++t) {
        Vec w = apply(F, m, space[t]);
        Vec beta = solver.coords(F, w);
        for (size_t s = 0; s < d; ++s) restr[s][t] = beta[s];
      }
      Vec poly = char_poly(F, restr);
      std::vector<uint64_t> roots;
      for (uint64_t lambda = 0; lambda < q; ++lambda)
        if (eval_poly(F, poly, lambda) == 0) roots.push_back(lambda);
      size_t total = 0;
      for (uint64_t lambda : roots) {
        auto ker = kernel_basis(F, restr, lambda);
        if (ker.empty()) continue;
        total += ker.size();
        std::vector<Vec> sub;
        for (const Vec& kv : ker) {
          Vec v(r, 0);
          for (size_t s = 0; s < d; ++s) {
            if (!kv[s]) continue;
            for (uint32_t k = 0; k < r; ++k)
              if (space[s][k]) v[k] = F.add(v[k], F.mul(kv[s], space[s][k]));
          }
          sub.push_back(std::move(v));
        }
        next.push_back(std::move(sub));
      }
      if (total != d) throw CharError("eigenspace splitting lost dimensions");
    }
    spaces = std::move(next);
  }
  for (const auto& s : spaces)
    if (s.size() != 1) throw CharError("class algebra did not split to lines");

  // Power-map classes: pclass[j][s] = class of rep_j^s.
  std::vector<std::vector<uint32_t>> pclass(r);
  for (uint32_t j = 0; j < r; ++j) {
    uint32_t o = g.element_order(cl.reps[j]);
    pclass[j].resize(o);
    Elt cur = 0;
    for (uint32_t s = 0; s < o; ++s) {
      pclass[j][s] = cl.class_of[cur];
      cur = g.mult(cur, cl.reps[j]);
    }
  }

  std::vector<Character> rows;
  rows.reserve(r);
  for (const auto& space : spaces) {
    const Vec& raw = space[0];
    if (raw[0] == 0) throw CharError("eigenvector has vanishing identity coordinate");
    uint64_t norm = F.inv(raw[0]);
    Vec omega(r);
    for (uint32_t k = 0; k < r; ++k) omega[k] = F.mul(raw[k], norm);
    // degree^2 = n / sum_i omega_i omega_{i'} / h_i.
    uint64_t s_acc = 0;
    for (uint32_t i = 0; i < r; ++i)
      s_acc = F.add(s_acc, F.mul(F.mul(omega[i], omega[inv_class[i]]),
                                 F.inv(cl.sizes[i] % q)));
    uint64_t t_val = F.mul(n % q, F.inv(s_acc));
    uint32_t degree = 0;
    for (uint32_t d = 1; static_cast<uint64_t>(d) * d <= n; ++d)
      if (F.mul(d, d) == t_val) { degree = d; break; }
    if (degree == 0) throw CharError("degree recovery failed");
    // theta_j = omega_j * degree / h_j in F_q.
    Vec theta(r);
    for (uint32_t j = 0; j < r; ++j)
      theta[j] = F.mul(omega[j], F.mul(degree, F.inv(cl.sizes[j] % q)));

    Character chi;
    chi.degree = degree;
    chi.values.reserve(r);
    for (uint32_t j = 0; j < r; ++j) {
      const uint32_t o = g.element_order(cl.reps[j]);
      const uint64_t zj_inv = F.inv(F.pow(z, e / o));
      const uint64_t o_inv = F.inv(o % q);
      std::vector<uint64_t> dft(o);
      if ((o & (o - 1)) == 0 && o >= 64) {
        for (uint32_t s = 0; s < o; ++s) dft[s] = theta[pclass[j][s]];
        ntt_pow2(F, dft, zj_inv);
      } else {
        std::vector<uint64_t> zpow(o);
        zpow[0] = 1;
        for (uint32_t t = 1; t < o; ++t) zpow[t] = F.mul(zpow[t - 1], zj_inv);
        for (uint32_t k = 0; k < o; ++k) {
          uint64_t acc = 0;
          for (uint32_t s = 0; s < o; ++s)
            acc = F.add(acc,
                        F.mul(theta[pclass[j][s]], zpow[(static_cast<uint64_t>(k) * s) % o]));
          dft[k] = acc;
        }
      }
      Cyclo value = Cyclo::zero(e);
      uint64_t msum = 0;
      for (uint32_t k = 0; k < o; ++k) {
        uint64_t mk = F.mul(dft[k], o_inv);
        if (mk == 0) continue;
        if (mk > degree) throw CharError("root multiplicity lift out of range");
        msum += mk;
        value += Cyclo::root_of_unity(e, static_cast<int64_t>(k) * (e / o))
                     .scaled(Rational(static_cast<long long>(mk)));
      }
      if (msum != degree) throw CharError("root multiplicities do not sum to the degree");
      chi.values.push_back(std::move(value));
    }
    rows.push_back(std::move(chi));
  }

  // Deterministic row order: degree, then canonical value text.
  std::vector<std::string> keys(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    std::string key;
    for (const Cyclo& v : rows[i].values) {
      key += v.str();
      key += ' ';
    }
    keys[i] = std::move(key);
  }
  std::vector<size_t> order_idx(rows.size());
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::sort(order_idx.begin(), order_idx.end(), [&](size_t a, size_t b) {
    if (rows[a].degree != rows[b].degree) return rows[a].degree < rows[b].degree;
    return keys[a] < keys[b];
  });
  std::vector<Character> sorted;
  sorted.reserve(rows.size());
  for (size_t i : order_idx) sorted.push_back(std::move(rows[i]));
  table.rows = std::move(sorted);

  // Exact verification before returning: degrees, integrality, both
  // orthogonality relations.
  uint64_t degree_sq_sum = 0;
  for (const Character& chi : table.rows) {
    degree_sq_sum += static_cast<uint64_t>(chi.degree) * chi.degree;
    if (n % chi.degree != 0) throw CharError("character degree does not divide the order");
    for (const Cyclo& v : chi.values)
      if (!v.has_integral_coeffs()) throw CharError("character value is not integral");
  }
  if (degree_sq_sum != n) throw CharError("degree squares do not sum to the order");
  // Sparse nonzero-coefficient lists make the r^3 orthogonality sums cheap
  // (character values are sparse in the power basis).
  const uint32_t phi = euler_phi(e);
  using SparseVal = std::vector<std::pair<uint32_t, Rational>>;
  auto sparsify = [phi](const Cyclo& v) {
    SparseVal s;
    for (uint32_t t = 0; t < phi; ++t)
      if (!v.coeffs()[t].is_zero()) s.emplace_back(t, v.coeffs()[t]);
    return s;
  };
  std::vector<std::vector<SparseVal>> sval(r), scon(r);
  for (uint32_t i = 0; i < r; ++i) {
    sval[i].reserve(r);
    scon[i].reserve(r);
    for (uint32_t c = 0; c < r; ++c) {
      sval[i].push_back(sparsify(table.rows[i].values[c]));
      scon[i].push_back(sparsify(table.rows[i].values[c].conjugate()));
    }
  }
  const uint32_t conv_len = phi > 0 ? 2 * phi - 1 : 1;
  std::vector<Rational> acc(conv_len);
  std::vector<Cyclo> red_rows;  // zeta^j for j in [phi, 2phi-2], reduced
  for (uint32_t j = phi; j < conv_len; ++j)
    red_rows.push_back(Cyclo::root_of_unity(e, j));
  auto run_pair = [&](auto value_at, uint64_t expected_c0, const char* what) {
    // value_at(c) yields the two sparse factors and a weight per summand c.
    for (Rational& x : acc) x = Rational(0);
    value_at();
    // Fold exponents >= phi through the reduction rows, then compare to
    // the expected rational constant.
    for (uint32_t j = conv_len; j-- > phi;) {
      if (acc[j].is_zero()) continue;
      const auto& row = red_rows[j - phi].coeffs();
      for (uint32_t t = 0; t < phi; ++t)
        if (!row[t].is_zero()) acc[t] += acc[j] * row[t];
      acc[j] = Rational(0);
    }
    if (acc[0] != Rational(static_cast<long long>(expected_c0)))
      throw CharError(std::string(what) + " orthogonality verification failed");
    for (uint32_t t = 1; t < phi; ++t)
      if (!acc[t].is_zero())
        throw CharError(std::string(what) + " orthogonality verification failed");
  };
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t j = i; j < r; ++j) {
      run_pair(
          [&] {
            for (uint32_t c = 0; c < r; ++c) {
              const Rational w(cl.sizes[c]);
              for (const auto& [ta, qa] : sval[i][c])
                for (const auto& [tb, qb] : scon[j][c]) acc[ta + tb] += qa * qb * w;
            }
          },
          i == j ? n : 0, "row");
    }
  for (uint32_t c1 = 0; c1 < r; ++c1)
    for (uint32_t c2 = c1; c2 < r; ++c2) {
      run_pair(
          [&] {
            for (uint32_t i = 0; i < r; ++i)
              for (const auto& [ta, qa] : sval[i][c1])
                for (const auto& [tb, qb] : scon[i][c2]) acc[ta + tb] += qa * qb;
          },
          c1 == c2 ? n / cl.sizes[c1] : 0, "column");
    }
  return table;
}

CharStructure character_structure(const CharacterTable& t, uint32_t row) {
  const Group& g = *t.group;
  const Character& chi = t.rows[row];
  const Cyclo deg = Cyclo::from_rational(Rational(chi.degree));
  const Cyclo deg_sq = Cyclo::from_rational(Rational(static_cast<long long>(chi.degree) *
                                                     chi.degree));
  CharStructure out;
  out.kernel.parent = &g;
  out.z_chi.parent = &g;
  for (uint32_t c = 0; c < t.classes.count(); ++c) {
    const Cyclo& v = chi.values[c];
    bool in_kernel = (v == deg);
    bool in_z = (v * v.conjugate() == deg_sq);
    if (in_kernel || in_z) {
      for (Elt x : t.classes.classes[c]) {
        if (in_kernel) out.kernel.members.push_back(x);
        if (in_z) out.z_chi.members.push_back(x);
      }
    }
  }
  std::sort(out.kernel.members.begin(), out.kernel.members.end());
  std::sort(out.z_chi.members.begin(), out.z_chi.members.end());
  out.kernel.is_normal = true;
  out.z_chi.is_normal = true;
  out.faithful = out.kernel.members.size() == 1;
  out.central_type =
      static_cast<uint64_t>(chi.degree) * chi.degree ==
      g.order() / out.z_chi.members.size();
  if (auto p = g.prime(); p && *p > 1) {
    out.field = minimal_prime_power_field(chi.values, *p);
  } else {
    out.field = FieldTag{2, 0};
  }
  return out;
}

uint32_t AbelianDual::count() const {
  uint32_t n = 1;
  for (uint32_t o : orders) n *= o;
  return n;
}

Cyclo AbelianDual::value(uint32_t k, Elt x) const {
  if (orders.empty()) return Cyclo::one();
  std::vector<uint32_t> tuple(orders.size());
  for (size_t i = orders.size(); i-- > 0;) {
    tuple[i] = k % orders[i];
    k /= orders[i];
  }
  uint64_t expo = 0;
  const uint32_t L = exponent;
  for (size_t i = 0; i < orders.size(); ++i)
    expo = (expo + static_cast<uint64_t>(tuple[i]) * coords[x][i] * (L / orders[i])) % L;
  return Cyclo::root_of_unity(L, static_cast<int64_t>(expo));
}

AbelianDual abelian_dual(const Group& a) {
  for (Elt x = 0; x < a.order(); ++x)
    for (Elt y = x + 1; y < a.order(); ++y)
      if (a.mult(x, y) != a.mult(y, x)) throw CharError("dual of a non-abelian group");
  AbelianDual dual;
  dual.exponent = a.exponent();
  if (a.order() == 1) {
    dual.coords.assign(1, {});
    return dual;
  }
  // Peel off a maximal-order cyclic subgroup and recurse on the quotient;
  // quotient basis elements lift to elements of the same order.
  Elt best = 0;
  for (Elt x = 0; x < a.order(); ++x)
    if (a.element_order(x) > a.element_order(best)) best = x;
  dual.basis.push_back(best);
  dual.orders.push_back(a.element_order(best));
  Subgroup c = generated(a, std::vector<Elt>{best});
  auto q = quotient(a, c);
  AbelianDual inner = abelian_dual(q.group);
  for (size_t i = 0; i < inner.basis.size(); ++i) {
    Elt target = inner.basis[i];
    uint32_t want = inner.orders[i];
    Elt lift = UINT32_MAX;
    for (Elt x = 0; x < a.order(); ++x) {
      if (q.projection[x] == target && a.element_order(x) == want) {
        lift = x;
        break;
      }
    }
    if (lift == UINT32_MAX) throw CharError("abelian basis lift failed");
    dual.basis.push_back(lift);
    dual.orders.push_back(want);
  }
  // Normal forms: enumerate all exponent tuples and invert the bijection.
  dual.coords.assign(a.order(), {});
  std::vector<char> seen(a.order(), 0);
  uint32_t total = 1;
  for (uint32_t o : dual.orders) total *= o;
  if (total != a.order()) throw CharError("abelian basis does not factor the group");
  for (uint32_t k = 0; k < total; ++k) {
    uint32_t kk = k;
    std::vector<uint32_t> tuple(dual.orders.size());
    for (size_t i = dual.orders.size(); i-- > 0;) {
      tuple[i] = kk % dual.orders[i];
      kk /= dual.orders[i];
    }
    Elt elt = 0;
    for (size_t i = 0; i < tuple.size(); ++i)
      elt = a.mult(elt, a.power(dual.basis[i], tuple[i]));
    if (seen[elt]) throw CharError("abelian basis tuple collision");
    seen[elt] = 1;
    dual.coords[elt] = std::move(tuple);
  }
  return dual;
}

const CharacterTable& TableContext::table_of(std::shared_ptr<const Group> g) {
  if (!g) throw CharError("null group");
  const Group* key = g.get();
  retained_.emplace(key, std::move(g));
  auto it = top_tables_.find(key);
  if (it != top_tables_.end()) return it->second;
  return top_tables_.emplace(key, character_table(*retained_.at(key), opts_)).first->second;
}

void TableContext::require_registered(const Group* g) const {
  if (!retained_.count(g))
    throw CharError("group is not registered with this table context");
}

const TableContext::SubgroupRealization& TableContext::subgroup_realization(
    const Group& parent, const Subgroup& s) {
  require_registered(&parent);
  auto key = std::make_pair(&parent, s.members);
  auto it = realizations_.find(key);
  if (it != realizations_.end()) return it->second;
  SubgroupRealization real;
  real.to_parent = s.members;
  Group parent_copy = parent;
  std::vector<Elt> members = s.members;
  auto mult = [parent_copy, members](Elt a, Elt b) {
    Elt prod = parent_copy.mult(members[a], members[b]);
    auto lo = std::lower_bound(members.begin(), members.end(), prod);
    return static_cast<Elt>(lo - members.begin());
  };
  // Greedy minimal generating set.
  std::vector<Elt> parent_gens;
  {
    Subgroup span = trivial_subgroup(parent);
    for (Elt m : s.members) {
      if (span.contains(m)) continue;
      parent_gens.push_back(m);
      span = generated(parent, parent_gens);
      if (span.order() == s.order()) break;
    }
  }
  std::vector<Elt> gens;
  for (Elt pg : parent_gens) gens.push_back(s.index_of(pg));
  if (gens.empty()) gens.push_back(0);
  real.group = Group::from_mult(s.order(), mult, gens);
  return realizations_.emplace(std::move(key), std::move(real)).first->second;
}

const CharacterTable& TableContext::subgroup_character_table(const Group& parent,
                                                             const Subgroup& s) {
  require_registered(&parent);
  auto key = std::make_pair(&parent, s.members);
  auto it = sub_tables_.find(key);
  if (it != sub_tables_.end()) return it->second;
  const auto& real = subgroup_realization(parent, s);
  return sub_tables_.emplace(std::move(key), character_table(real.group, opts_))
      .first->second;
}

namespace {

bool members_commute(const Group& g, const std::vector<Elt>& members) {
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j)
      if (g.mult(members[i], members[j]) != g.mult(members[j], members[i])) return false;
  return true;
}

}  // namespace

Constituents constituents_over_normal(TableContext& ctx, const CharacterTable& t,
                                      uint32_t row, const Subgroup& n) {
  const Group& g = *t.group;
  if (!is_normal(g, n)) throw CharError("constituent analysis requires a normal subgroup");
  Constituents out;
  uint32_t degree_acc = 0;
  if (members_commute(g, n.members)) {
    // Abelian subgroup: decompose against the dual, no table required.
    const auto& real = ctx.subgroup_realization(g, n);
    AbelianDual dual = abelian_dual(real.group);
    std::vector<Cyclo> chi_on_members;
    chi_on_members.reserve(n.members.size());
    for (Elt x : n.members) chi_on_members.push_back(t.value(row, t.classes.class_of[x]));
    for (uint32_t k = 0; k < dual.count(); ++k) {
      Cyclo acc;
      for (uint32_t idx = 0; idx < n.members.size(); ++idx) {
        if (chi_on_members[idx].is_zero()) continue;
        acc += chi_on_members[idx] * dual.value(k, idx).conjugate();
      }
      if (acc.is_zero()) continue;
      Rational m = acc.scaled(Rational(1, n.order())).as_rational();
      if (!m.is_integer() || m.num() <= 0)
        throw CharError("restriction multiplicity is not a positive integer");
      out.parts.emplace_back(1u, static_cast<uint32_t>(m.num()));
      degree_acc += static_cast<uint32_t>(m.num());
    }
  } else {
    const CharacterTable& ntable = ctx.subgroup_character_table(g, n);
    const auto& real = ctx.subgroup_realization(g, n);
    std::vector<Cyclo> restricted;
    restricted.reserve(ntable.classes.count());
    for (uint32_t c = 0; c < ntable.classes.count(); ++c) {
      Elt parent_elt = real.to_parent[ntable.classes.reps[c]];
      restricted.push_back(t.value(row, t.classes.class_of[parent_elt]));
    }
    for (uint32_t k = 0; k < ntable.count(); ++k) {
      Cyclo m = inner_product(ntable.classes, restricted, ntable.rows[k].values,
                              real.group.order());
      if (m.is_zero()) continue;
      Rational mr = m.as_rational();
      if (!mr.is_integer() || mr.num() <= 0)
        throw CharError("restriction multiplicity is not a positive integer");
      out.parts.emplace_back(ntable.rows[k].degree, static_cast<uint32_t>(mr.num()));
      degree_acc += static_cast<uint32_t>(mr.num()) * ntable.rows[k].degree;
    }
  }
  if (degree_acc != t.rows[row].degree)
    throw CharError("restriction decomposition does not recover the degree");
  out.homogeneous = out.parts.size() == 1;
  out.irreducible_restriction = out.homogeneous && out.parts[0].second == 1;
  if (out.homogeneous) {
    out.ramification = out.parts[0].second;
    uint64_t index = g.order() / n.order();
    out.fully_ramified =
        static_cast<uint64_t>(out.ramification) * out.ramification == index;
  }
  return out;
}

uint32_t constituent_degree_over_normal(TableContext& ctx, const CharacterTable& t,
                                        uint32_t row, const Subgroup& n) {
  const Group& g = *t.group;
  if (members_commute(g, n.members)) return 1;
  Constituents parts = constituents_over_normal(ctx, t, row, n);
  return parts.parts.at(0).first;
}

std::optional<MonomialWitness> monomial_normal_witness(TableContext& ctx,
                                                       const CharacterTable& t,
                                                       uint32_t row) {
  const Group& g = *t.group;
  const uint32_t degree = t.rows[row].degree;
  Subgroup derived = derived_subgroup(g, whole_group(g));
  auto q = quotient(g, derived);
  auto q_subs = all_subgroups(q.group);
  // Pull back, largest first; ties by member list.
  std::vector<std::vector<Elt>> candidates;
  for (const auto& qs : q_subs) {
    std::vector<Elt> members;
    for (Elt x = 0; x < g.order(); ++x)
      if (std::binary_search(qs.members.begin(), qs.members.end(), q.projection[x]))
        members.push_back(x);
    candidates.push_back(std::move(members));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const std::vector<Elt>& a, const std::vector<Elt>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a < b;
            });
  for (const auto& members : candidates) {
    if (static_cast<uint64_t>(members.size()) * degree != g.order()) continue;
    Subgroup a;
    a.parent = &g;
    a.members = members;
    a.is_normal = true;
    // Linear characters of A = characters of A/[A,A], enumerated through
    // the abelian dual; no table needed.
    const auto& real = ctx.subgroup_realization(g, a);
    const Group& sub = real.group;
    Subgroup sub_derived = derived_subgroup(sub, whole_group(sub));
    auto sub_q = quotient(sub, sub_derived);
    AbelianDual dual = abelian_dual(sub_q.group);
    for (uint32_t k = 0; k < dual.count(); ++k) {
      // lambda on A via the projection to the abelianization.
      std::vector<Cyclo> lam;
      lam.reserve(members.size());
      for (uint32_t idx = 0; idx < members.size(); ++idx)
        lam.push_back(dual.value(k, sub_q.projection[idx]));
      // Compare the induced class function to the row, class by class.
      bool match = true;
      for (uint32_t c = 0; c < t.classes.count() && match; ++c) {
        Elt rep = t.classes.reps[c];
        Cyclo acc;
        for (Elt x = 0; x < g.order(); ++x) {
          Elt y = g.conjugate(rep, g.inverse(x));
          auto it = std::lower_bound(members.begin(), members.end(), y);
          if (it != members.end() && *it == y)
            acc += lam[static_cast<size_t>(it - members.begin())];
        }
        if (acc.scaled(Rational(1, static_cast<long long>(members.size()))) !=
            t.rows[row].values[c])
          match = false;
      }
      if (match) {
        MonomialWitness w;
        w.normal_subgroup = a;
        w.linear_values = lam;
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace charsupp
