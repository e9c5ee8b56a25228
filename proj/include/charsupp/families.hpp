#pragma once

#include <memory>
#include <string>
#include <vector>

#include "charsupp/group.hpp"

namespace charsupp {

enum class Family {
  dihedral,       // params: {order}, order = 2^k >= 8
  quaternion,     // params: {order}, order = 2^k >= 8
  semidihedral,   // params: {order}, order = 2^k >= 16
  abelian,        // params: invariant factors, all powers of p
  extraspecial,   // params: {exponent}, exponent in {p, p^2}, p odd
  unitriangular,  // params: {n}, n in {3, 4}
  wreath_cyclic,  // params: {} — (C_p)^p x| C_p
};

struct FamilySpec {
  Family family = Family::abelian;
  uint32_t p = 2;
  std::vector<uint32_t> params;
};

// Documented structural certificate; tests re-derive every field through
// series_report and the Group invariants (the constructor never
// self-certifies).
struct FamilyCertificate {
  uint32_t order = 1;
  uint32_t nilpotence_class = 0;
  uint32_t derived_length = 0;
  uint32_t exponent = 1;
};

Group build_family(const FamilySpec& spec, const GroupConfig& cfg = {});
FamilyCertificate family_certificate(const FamilySpec& spec);
std::string family_id(const FamilySpec& spec);
FamilySpec parse_family(const std::string& name, uint32_t p,
                        const std::vector<uint32_t>& k_params);

// Semidirect "family": explicit action images of H-generators on A.
Group build_semidirect_family(const Group& a, const Group& h,
                              const std::vector<Perm>& images,
                              const GroupConfig& cfg = {});

enum class CorpusProfile { quick, full };

struct CorpusEntry {
  std::string id;
  std::shared_ptr<const Group> group;
};

// Deterministic benchmark corpus. quick: all families at p in {2,3} up to
// order 729. full: adds small p = 5 members and the bundled fixtures
// (loaded from fixtures_dir; pass an empty string to skip fixtures).
std::vector<CorpusEntry> corpus(CorpusProfile profile, const std::string& fixtures_dir,
                                const GroupConfig& cfg = {});

}  // namespace charsupp
