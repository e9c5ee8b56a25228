#pragma once

#include <map>
#include <optional>
#include <vector>

#include "charsupp/cyclo.hpp"
#include "charsupp/group.hpp"

namespace charsupp {

struct CharError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Character {
  std::vector<Cyclo> values;  // one per class, at conductor = group exponent
  uint32_t degree = 1;
};

struct ClassFunction {
  std::vector<Cyclo> values;  // one per class
};

// Exact irreducible character table. Rows are sorted by (degree, then
// lexicographic canonical value text); both orthogonality relations are
// verified exactly before a table is returned.
struct CharacterTable {
  const Group* group = nullptr;
  ClassPartition classes;
  std::vector<Character> rows;
  uint32_t conductor = 1;     // = group exponent
  uint64_t dixon_modulus = 0; // smallest admissible prime, for reproducibility

  uint32_t count() const { return static_cast<uint32_t>(rows.size()); }
  const Cyclo& value(uint32_t row, uint32_t cls) const { return rows[row].values[cls]; }
  // `classes: <order>/<size> ...` header plus one `chi<k>` line per row.
  std::string render() const;
};

struct TableOptions {
  uint32_t max_order = 8192;
};

// Dixon–Schneider: class-sum matrices over F_q (q = 1 mod exponent,
// q > 2 sqrt|G|), common eigenspace splitting, then the discrete-Fourier
// lift over power-map classes back to exact cyclotomic integers.
CharacterTable character_table(const Group& g, const TableOptions& opts = {});

// (1/order) * sum_c size_c * a_c * conj(b_c).
Cyclo inner_product(const ClassPartition& classes, const std::vector<Cyclo>& a,
                    const std::vector<Cyclo>& b, uint32_t order);
// Inner product of two element-indexed functions summed over a subgroup.
Cyclo inner_product_over(const Subgroup& h, const std::vector<Cyclo>& a_by_element,
                         const std::vector<Cyclo>& b_by_element);

// Standard induced class function of `values_on_members` (indexed like
// h.members). Frobenius reciprocity and the transversal formula are
// exercised in the test suites.
ClassFunction induce(const Group& g, const ClassPartition& g_classes, const Subgroup& h,
                     const std::vector<Cyclo>& values_on_members);

// Restriction of a table row to a subgroup, as element values aligned
// with h.members.
std::vector<Cyclo> restrict_to(const CharacterTable& t, uint32_t row, const Subgroup& h);

struct CharStructure {
  Subgroup kernel;
  Subgroup z_chi;        // where |chi(g)| = chi(1)
  bool faithful = false;
  bool central_type = false;
  FieldTag field;        // minimal prime-power field of the values
};
CharStructure character_structure(const CharacterTable& t, uint32_t row);

// Basis decomposition of a finite abelian group: member-indexed
// coordinates relative to an independent generating set, used to
// enumerate linear characters without building a character table.
struct AbelianDual {
  std::vector<Elt> basis;             // element indices in the group
  std::vector<uint32_t> orders;       // cyclic orders, multiplying to |A|
  std::vector<std::vector<uint32_t>> coords;  // element -> exponent tuple
  uint32_t exponent = 1;

  uint32_t count() const;  // number of linear characters = |A|
  // Value of character #k (mixed-radix tuple over `orders`) at element x.
  Cyclo value(uint32_t k, Elt x) const;
};
AbelianDual abelian_dual(const Group& a);

// Memoizes tables and subgroup realizations. The context takes shared
// ownership of every group it is handed, so cache keys (addresses) can
// never be reused by a later allocation.
class TableContext {
 public:
  explicit TableContext(TableOptions opts = {}) : opts_(opts) {}

  const TableOptions& options() const { return opts_; }
  const CharacterTable& table_of(std::shared_ptr<const Group> g);

  struct SubgroupRealization {
    Group group;                 // members reindexed; 0 stays the identity
    std::vector<Elt> to_parent;  // = sorted member list
  };
  // The parent must be a group previously registered via table_of.
  const SubgroupRealization& subgroup_realization(const Group& parent, const Subgroup& s);
  // Realization plus its character table (computed on demand, memoized).
  const CharacterTable& subgroup_character_table(const Group& parent, const Subgroup& s);

 private:
  void require_registered(const Group* g) const;

  TableOptions opts_;
  std::map<const Group*, std::shared_ptr<const Group>> retained_;
  std::map<const Group*, CharacterTable> top_tables_;
  std::map<std::pair<const Group*, std::vector<Elt>>, SubgroupRealization> realizations_;
  std::map<std::pair<const Group*, std::vector<Elt>>, CharacterTable> sub_tables_;
};

struct Constituents {
  // Distinct irreducible constituents of the restriction as (degree,
  // multiplicity) pairs, ordered by the subgroup's row order (abelian
  // subgroups enumerate their dual instead of building a table).
  std::vector<std::pair<uint32_t, uint32_t>> parts;
  bool homogeneous = false;
  bool irreducible_restriction = false;
  bool fully_ramified = false;  // single part phi with e^2 = |G:N|
  uint32_t ramification = 0;    // e when homogeneous
};
Constituents constituents_over_normal(TableContext& ctx, const CharacterTable& t,
                                      uint32_t row, const Subgroup& n);
// Degree of (any) irreducible constituent of the restriction to a normal
// subgroup; they are all conjugate, hence share it.
uint32_t constituent_degree_over_normal(TableContext& ctx, const CharacterTable& t,
                                        uint32_t row, const Subgroup& n);

struct MonomialWitness {
  Subgroup normal_subgroup;            // A, with G/A abelian
  std::vector<Cyclo> linear_values;    // lambda on A, indexed like members
};
// Searches normal subgroups A between G' and G (largest first) for a
// linear character inducing the row; guaranteed to exist for metabelian
// groups. Returns the first witness in deterministic order.
std::optional<MonomialWitness> monomial_normal_witness(TableContext& ctx,
                                                       const CharacterTable& t,
                                                       uint32_t row);

}  // namespace charsupp
