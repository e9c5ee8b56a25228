#pragma once

#include "charsupp/characters.hpp"
#include "charsupp/report.hpp"

namespace charsupp {

// Support data of one table row, with the class-count and element-order
// bounds kept in exact form (p-power exponents, never floats).
struct SupportProfile {
  uint32_t chi = 0;
  std::vector<uint32_t> support_classes;  // class indices, ascending
  uint32_t k_supp = 0;
  uint32_t max_order = 1;   // largest element order in the support
  uint32_t prime = 0;       // p (0 when the order is not a prime power)
  uint32_t n_exp = 0;       // |P| = p^n
  uint32_t a_exp = 0;       // chi(1) = p^a
  uint64_t bound_count = 0; // |P| / chi(1)^2, also the order-divisor bound
  bool gvz = false;         // support equals Z(chi)

  // |P| / chi(1)^{3/2} as a p-power with half-integer exponent.
  std::string order_bound_str() const;
};
SupportProfile support_profile(const CharacterTable& t, uint32_t row);

// tr_H(lambda) = sum over h in H of lambda(act(h)(x)), per element of A.
std::vector<Cyclo> trace_character(const Action& act,
                                   const std::vector<Cyclo>& lambda_by_element);

struct SigmaReport {
  uint32_t a_order = 0;
  uint32_t h_order = 0;
  uint32_t stabilizer_of_lambda = 0;  // |C_H(lambda)|
  uint64_t sigma = 0;
  uint64_t bound = 0;  // |A| * |C_H(lambda)|
  bool both_abelian = false;
  bool holds = false;  // asserted only when both groups are abelian
};
// sigma(A, lambda, H) = sum of |C_H(x)| over x in A with tr_H(lambda)(x)
// nonzero, by full enumeration of A. A must be abelian.
SigmaReport sigma(const Action& act, const std::vector<Cyclo>& lambda_by_element);

struct SuiteOptions {
  uint32_t witness_search_cap = 729;  // frc search skipped above this order
};

// Theorem suites. Failures become FAIL report lines, never exceptions;
// hypothesis violations are recorded as SKIP lines (theorem A still runs
// its bound checks so declared counterexamples surface as FAILs).
std::vector<CheckLine> verify_theorem_A(TableContext& ctx,
                                        const std::shared_ptr<const Group>& group,
                                        const std::string& id);
std::vector<CheckLine> verify_theorem_B(TableContext& ctx,
                                        const std::shared_ptr<const Group>& group,
                                        const std::string& id);
std::vector<CheckLine> verify_theorem_C(TableContext& ctx,
                                        const std::shared_ptr<const Group>& group,
                                        const std::string& id);
std::vector<CheckLine> verify_lemmas(TableContext& ctx,
                                     const std::shared_ptr<const Group>& group,
                                     const std::string& id,
                                     const SuiteOptions& opts = {});

struct FrcResult {
  bool found = false;
  Subgroup witness;                  // U with L <= U, KU = G, K cap U = L
  bool support_is_conjugate_union = false;  // Supp(chi) = union of U^g
};
// Exhaustive witness search for a character five (K, L normal, theta and
// phi invariant and fully ramified, |K:L| odd); theta and phi are given
// by their values on the members of K and L.
FrcResult frc_witness_search(const CharacterTable& t, uint32_t chi_row,
                             const Subgroup& k, const Subgroup& l,
                             const std::vector<Cyclo>& theta_on_k,
                             const std::vector<Cyclo>& phi_on_l, uint32_t search_cap);

struct SigmaSampleConfig {
  uint32_t count = 200;
  uint64_t seed = 0;
  uint32_t max_product = 729;  // cap on |A| * |H|
};
// Seeded random abelian-by-abelian instances; every tenth instance uses
// the trivial acting group so the equality case stays covered.
std::vector<CheckLine> sigma_random_suite(const SigmaSampleConfig& cfg);

}  // namespace charsupp
