#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace charsupp {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapError : GroupError {
  using GroupError::GroupError;
};

using Elt = uint32_t;
using Perm = std::vector<uint32_t>;  // images of 0..degree-1

// Caps are hard errors, never silent truncation.
struct GroupConfig {
  uint32_t closure_cap = 20000;
  uint32_t mult_table_threshold = 4096;  // precompute rows up to this order
};

// Pluggable multiplication for groups too large for a dense table.
class MultSource {
 public:
  virtual ~MultSource() = default;
  virtual Elt mult(Elt a, Elt b) const = 0;
};

// A concrete finite group on element indices 0..order-1, with 0 the
// identity. Immutable after construction; safe to share between threads.
class Group {
 public:
  // Builds from a total multiplication function. The function must
  // describe a group with identity at index 0 (verified: identity row and
  // column, inverses; associativity is the caller's contract and is
  // exercised by the invariant tests).
  static Group from_mult(uint32_t order, const std::function<Elt(Elt, Elt)>& mult,
                         std::vector<Elt> generators, const GroupConfig& cfg = {});
  static Group from_mult_source(uint32_t order, std::shared_ptr<const MultSource> src,
                                std::vector<Elt> generators, const GroupConfig& cfg = {});

  uint32_t order() const { return order_; }
  Elt mult(Elt a, Elt b) const {
    if (table_data_) return table_data_[static_cast<size_t>(a) * order_ + b];
    return source_->mult(a, b);
  }
  Elt inverse(Elt a) const { return inverse_[a]; }
  Elt conjugate(Elt x, Elt g) const { return mult(mult(inverse(g), x), g); }
  Elt commutator(Elt x, Elt y) const {
    return mult(mult(inverse(x), inverse(y)), mult(x, y));
  }
  Elt power(Elt a, long long e) const;

  std::span<const Elt> generators() const { return generators_; }
  uint32_t element_order(Elt a) const { return element_order_[a]; }
  uint32_t exponent() const { return exponent_; }
  // p for p-groups (order 1 reports 1); nullopt for mixed order.
  std::optional<uint32_t> prime() const { return prime_; }

 private:
  friend struct GroupAccess;

  uint32_t order_ = 1;
  // Row-major dense table, shared so copies of a Group are cheap; null
  // above the table threshold, where source_ supplies products instead.
  std::shared_ptr<const std::vector<Elt>> table_;
  const Elt* table_data_ = nullptr;
  std::shared_ptr<const MultSource> source_;
  std::vector<Elt> inverse_;
  std::vector<Elt> generators_;
  std::vector<uint32_t> element_order_;
  uint32_t exponent_ = 1;
  std::optional<uint32_t> prime_;
};

// BFS closure of permutation generators; deterministic indexing given the
// generator order (identity first, then discovery order).
Group closure_from_generators(const std::vector<Perm>& gens, const GroupConfig& cfg = {});

struct Subgroup {
  const Group* parent = nullptr;
  std::vector<Elt> members;  // sorted ascending; contains 0
  bool is_normal = false;

  uint32_t order() const { return static_cast<uint32_t>(members.size()); }
  bool contains(Elt x) const;
  uint32_t index_of(Elt x) const;  // position in members (throws if absent)
};

struct ClassPartition {
  std::vector<std::vector<Elt>> classes;  // disjoint, cover the group
  std::vector<Elt> reps;                  // minimal member of each class
  std::vector<uint32_t> sizes;
  std::vector<uint32_t> class_of;  // element index -> class index

  uint32_t count() const { return static_cast<uint32_t>(classes.size()); }
};

// Classes sorted by (element order, class size, minimal member); the
// identity class is therefore always first.
ClassPartition conjugacy_classes(const Group& g);

// An action of H on A by automorphisms, realized as one permutation of
// A's indices per element of H. Generator images are validated to be
// automorphisms and to respect H's relations.
class Action {
 public:
  static Action from_generator_images(const Group& acting, const Group& target,
                                      const std::vector<Perm>& images);
  static Action trivial(const Group& acting, const Group& target);

  const Group& acting() const { return *acting_; }
  const Group& target() const { return *target_; }
  Elt apply(Elt h, Elt a) const { return maps_[h][a]; }
  const Perm& automorphism(Elt h) const { return maps_[h]; }

 private:
  const Group* acting_ = nullptr;
  const Group* target_ = nullptr;
  std::vector<Perm> maps_;  // one per element of H
};

Subgroup centralizer(const Group& g, Elt x);
Subgroup centralizer(const Group& g, const Subgroup& s);
// C_H(a): stabilizer of a in the acting group.
Subgroup centralizer_in_action(const Action& act, Elt a);

Subgroup whole_group(const Group& g);
Subgroup trivial_subgroup(const Group& g);
Subgroup generated(const Group& g, std::span<const Elt> seeds);
Subgroup intersect(const Subgroup& u, const Subgroup& v);
Subgroup conjugate_subgroup(const Subgroup& u, Elt g);
Subgroup normal_closure(const Group& g, std::span<const Elt> seeds);
bool is_normal(const Group& g, const Subgroup& u);

struct ProductSet {
  std::vector<Elt> elements;  // the set UV, sorted
  bool is_subgroup = false;
};
ProductSet product_set(const Subgroup& u, const Subgroup& v);

Subgroup derived_subgroup(const Group& g, const Subgroup& u);
Subgroup commutator_subgroup(const Group& g, const Subgroup& u, const Subgroup& v);
Subgroup center(const Group& g);

struct SeriesReport {
  std::vector<Subgroup> lower_central;  // G = L1 >= L2 >= ... (stabilized)
  std::vector<Subgroup> derived;        // G = D0 >= D1 >= ...
  uint32_t nilpotence_class = 0;        // 0 for the trivial group
  uint32_t derived_length = 0;
  bool is_metabelian = false;
  bool class_at_most_3 = false;
  Subgroup center;
};
SeriesReport series_report(const Group& g);

// Quotient by a normal subgroup: the group on cosets (ordered by minimal
// member, so the identity coset is index 0) and the projection map.
struct QuotientResult {
  Group group;
  std::vector<Elt> projection;  // parent element -> coset index
};
QuotientResult quotient(const Group& g, const Subgroup& n);

// Pairs (a, h) with (a1,h1)(a2,h2) = (a1 * act(h1)(a2), h1 h2); index of
// (a, h) is a*|H| + h. A embeds as a normal subgroup, H as a complement.
Group semidirect_product(const Group& a, const Group& h, const Action& act,
                         const GroupConfig& cfg = {});
Group direct_product(const Group& a, const Group& b, const GroupConfig& cfg = {});

// Enumerates subgroups of order <= max_order (all when max_order = 0) by
// breadth-first closure over one-generator extensions; deterministic.
std::vector<Subgroup> all_subgroups(const Group& g, uint32_t max_order = 0);
std::vector<Subgroup> normal_subgroups(const Group& g);
// One deterministic chief series G = S[0] > S[1] > ... > S[last] = 1,
// every term normal in G with successive indices the group's prime.
std::vector<Subgroup> chief_series(const Group& g);

// Extends a generator-image assignment to a homomorphism G -> Sym; used
// for building explicit isomorphisms in tests and fixture export.
std::optional<std::vector<Elt>> extend_generator_map(const Group& from, const Group& to,
                                                     std::span<const Elt> images);

}  // namespace charsupp
