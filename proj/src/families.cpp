#include "charsupp/families.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "charsupp/presentation.hpp"

namespace charsupp {

namespace {

bool is_power_of(uint32_t value, uint32_t p) {
  if (value == 0) return false;
  while (value % p == 0) value /= p;
  return value == 1;
}

uint32_t log_base(uint32_t value, uint32_t p) {
  uint32_t e = 0;
  while (value > 1) {
    value /= p;
    ++e;
  }
  return e;
}

Group make_cyclic(uint32_t m, const GroupConfig& cfg) {
  return Group::from_mult(
      m, [m](Elt a, Elt b) { return (a + b) % m; }, {m > 1 ? 1u : 0u}, cfg);
}

Group make_abelian(const std::vector<uint32_t>& factors, const GroupConfig& cfg) {
  uint64_t order = 1;
  for (uint32_t d : factors) order *= d;
  auto mult = [factors](Elt a, Elt b) {
    std::vector<uint32_t> digits(factors.size());
    Elt av = a, bv = b;
    for (size_t i = factors.size(); i-- > 0;) {
      digits[i] = (av % factors[i] + bv % factors[i]) % factors[i];
      av /= factors[i];
      bv /= factors[i];
    }
    Elt out = 0;
    for (size_t i = 0; i < factors.size(); ++i) out = out * factors[i] + digits[i];
    return out;
  };
  std::vector<Elt> gens;
  uint32_t stride = static_cast<uint32_t>(order);
  for (uint32_t d : factors) {
    stride /= d;
    gens.push_back(stride);
  }
  return Group::from_mult(static_cast<uint32_t>(order), mult, gens, cfg);
}

// C_m x| C_2 where the involution acts by x -> t*x (t^2 = 1 mod m).
Group cyclic_by_involution(uint32_t m, uint32_t t, const GroupConfig& cfg) {
  auto mult = [m, t](Elt x, Elt y) {
    Elt a1 = x / 2, j1 = x % 2;
    Elt a2 = y / 2, j2 = y % 2;
    Elt a = (a1 + (j1 ? (a2 * t) % m : a2)) % m;
    return a * 2 + (j1 ^ j2);
  };
  return Group::from_mult(2 * m, mult, {2 /* a */, 1 /* b */}, cfg);
}

Group make_quaternion(uint32_t order, const GroupConfig& cfg) {
  const uint32_t half = order / 2;     // |<a>|
  const uint32_t quarter = order / 4;  // b^2 = a^quarter
  auto mult = [half, quarter](Elt x, Elt y) {
    Elt i = x / 2, j = x % 2;
    Elt i2 = y / 2, j2 = y % 2;
    Elt a = j ? (i + half - i2) % half : (i + i2) % half;
    if (j && j2) a = (a + quarter) % half;
    return a * 2 + (j ^ j2);
  };
  return Group::from_mult(order, mult, {2, 1}, cfg);
}

// Strictly upper-triangular coordinates over F_p; n = 3 uses (12,23,13)
// and n = 4 uses (12,23,34,13,24,14).
Group make_unitriangular(uint32_t n, uint32_t p, const GroupConfig& cfg) {
  if (n == 3) {
    auto mult = [p](Elt x, Elt y) {
      uint32_t a1 = x / (p * p), b1 = (x / p) % p, c1 = x % p;
      uint32_t a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      uint32_t a = (a1 + a2) % p;
      uint32_t b = (b1 + b2) % p;
      uint32_t c = (c1 + c2 + a1 * b2) % p;
      return a * p * p + b * p + c;
    };
    return Group::from_mult(p * p * p, mult, {p * p, p}, cfg);
  }
  // n = 4: entries (e12, e23, e34, e13, e24, e14).
  const uint32_t p2 = p * p, p3 = p2 * p, p4 = p3 * p, p5 = p4 * p;
  auto unpack = [&](Elt v, uint32_t out[6]) {
    out[0] = v / p5;
    out[1] = (v / p4) % p;
    out[2] = (v / p3) % p;
    out[3] = (v / p2) % p;
    out[4] = (v / p) % p;
    out[5] = v % p;
  };
  auto mult = [p, p2, p3, p4, p5, unpack](Elt x, Elt y) {
    uint32_t a[6], b[6];
    unpack(x, a);
    unpack(y, b);
    uint32_t e12 = (a[0] + b[0]) % p;
    uint32_t e23 = (a[1] + b[1]) % p;
    uint32_t e34 = (a[2] + b[2]) % p;
    uint32_t e13 = (a[3] + b[3] + a[0] * b[1]) % p;
    uint32_t e24 = (a[4] + b[4] + a[1] * b[2]) % p;
    uint32_t e14 = (a[5] + b[5] + a[0] * b[4] + a[3] * b[2]) % p;
    return e12 * p5 + e23 * p4 + e34 * p3 + e13 * p2 + e24 * p + e14;
  };
  return Group::from_mult(p5 * p, mult, {p5, p4, p3}, cfg);
}

Group make_wreath_cyclic(uint32_t p, const GroupConfig& cfg) {
  Group base = make_abelian(std::vector<uint32_t>(p, p), cfg);
  Group top = make_cyclic(p, cfg);
  // Rotate base coordinates one step.
  const uint32_t n = base.order();
  Perm rot(n);
  for (Elt v = 0; v < n; ++v) {
    std::vector<uint32_t> digits(p);
    Elt t = v;
    for (size_t i = p; i-- > 0;) {
      digits[i] = t % p;
      t /= p;
    }
    std::vector<uint32_t> shifted(p);
    for (uint32_t i = 0; i < p; ++i) shifted[(i + 1) % p] = digits[i];
    Elt out = 0;
    for (uint32_t i = 0; i < p; ++i) out = out * p + shifted[i];
    rot[v] = out;
  }
  Action act = Action::from_generator_images(top, base, {rot});
  return semidirect_product(base, top, act, cfg);
}

}  // namespace

Group build_family(const FamilySpec& spec, const GroupConfig& cfg) {
  switch (spec.family) {
    case Family::dihedral: {
      if (spec.p != 2 || spec.params.size() != 1)
        throw GroupError("dihedral family expects p=2 and the order parameter");
      uint32_t m = spec.params[0];
      if (!is_power_of(m, 2) || m < 8)
        throw GroupError("dihedral order must be a power of 2, at least 8");
      return cyclic_by_involution(m / 2, m / 2 - 1, cfg);
    }
    case Family::quaternion: {
      if (spec.p != 2 || spec.params.size() != 1)
        throw GroupError("quaternion family expects p=2 and the order parameter");
      uint32_t m = spec.params[0];
      if (!is_power_of(m, 2) || m < 8)
        throw GroupError("quaternion order must be a power of 2, at least 8");
      return make_quaternion(m, cfg);
    }
    case Family::semidihedral: {
      if (spec.p != 2 || spec.params.size() != 1)
        throw GroupError("semidihedral family expects p=2 and the order parameter");
      uint32_t m = spec.params[0];
      if (!is_power_of(m, 2) || m < 16)
        throw GroupError("semidihedral order must be a power of 2, at least 16");
      return cyclic_by_involution(m / 2, m / 4 - 1, cfg);
    }
    case Family::abelian: {
      if (spec.params.empty()) throw GroupError("abelian family expects invariant factors");
      for (uint32_t d : spec.params)
        if (d < 2 || !is_power_of(d, spec.p))
          throw GroupError("abelian invariant factors must be powers of p");
      return make_abelian(spec.params, cfg);
    }
    case Family::extraspecial: {
      if (spec.p < 3 || spec.params.size() != 1)
        throw GroupError("extraspecial family expects odd p and the exponent parameter");
      uint32_t e = spec.params[0];
      if (e == spec.p) return make_unitriangular(3, spec.p, cfg);
      if (e == spec.p * spec.p) {
        Group base = make_cyclic(e, cfg);
        Group top = make_cyclic(spec.p, cfg);
        Perm img(e);
        for (Elt x = 0; x < e; ++x) img[x] = (x * (1 + spec.p)) % e;
        Action act = Action::from_generator_images(top, base, {img});
        return semidirect_product(base, top, act, cfg);
      }
      throw GroupError("extraspecial exponent must be p or p^2");
    }
    case Family::unitriangular: {
      if (spec.params.size() != 1 || (spec.params[0] != 3 && spec.params[0] != 4))
        throw GroupError("unitriangular family expects n in {3, 4}");
      return make_unitriangular(spec.params[0], spec.p, cfg);
    }
    case Family::wreath_cyclic: {
      if (!spec.params.empty()) throw GroupError("wreath_cyclic takes no parameters");
      return make_wreath_cyclic(spec.p, cfg);
    }
  }
  throw GroupError("unknown family");
}

FamilyCertificate family_certificate(const FamilySpec& spec) {
  FamilyCertificate cert;
  switch (spec.family) {
    case Family::dihedral:
    case Family::quaternion:
    case Family::semidihedral: {
      uint32_t m = spec.params.at(0);
      cert.order = m;
      cert.nilpotence_class = log_base(m, 2) - 1;
      cert.derived_length = 2;
      cert.exponent = m / 2;
      return cert;
    }
    case Family::abelian: {
      cert.order = 1;
      cert.exponent = 1;
      for (uint32_t d : spec.params) {
        cert.order *= d;
        cert.exponent = static_cast<uint32_t>(std::lcm<uint64_t>(cert.exponent, d));
      }
      cert.nilpotence_class = cert.order > 1 ? 1 : 0;
      cert.derived_length = cert.order > 1 ? 1 : 0;
      return cert;
    }
    case Family::extraspecial: {
      cert.order = spec.p * spec.p * spec.p;
      cert.nilpotence_class = 2;
      cert.derived_length = 2;
      cert.exponent = spec.params.at(0);
      return cert;
    }
    case Family::unitriangular: {
      uint32_t n = spec.params.at(0);
      cert.order = 1;
      for (uint32_t i = 0; i < n * (n - 1) / 2; ++i) cert.order *= spec.p;
      cert.nilpotence_class = n - 1;
      cert.derived_length = 2;
      if (spec.p == 2)
        cert.exponent = 4;
      else
        cert.exponent = n == 3 ? spec.p : spec.p * spec.p;
      return cert;
    }
    case Family::wreath_cyclic: {
      cert.order = 1;
      for (uint32_t i = 0; i <= spec.p; ++i) cert.order *= spec.p;
      cert.nilpotence_class = spec.p;
      cert.derived_length = 2;
      cert.exponent = spec.p * spec.p;
      return cert;
    }
  }
  throw GroupError("unknown family");
}

std::string family_id(const FamilySpec& spec) {
  const char* name = nullptr;
  switch (spec.family) {
    case Family::dihedral: name = "dihedral"; break;
    case Family::quaternion: name = "quaternion"; break;
    case Family::semidihedral: name = "semidihedral"; break;
    case Family::abelian: name = "abelian"; break;
    case Family::extraspecial: name = "extraspecial"; break;
    case Family::unitriangular: name = "unitriangular"; break;
    case Family::wreath_cyclic: name = "wreath_cyclic"; break;
  }
  std::ostringstream os;
  os << name << "(";
  if (spec.family == Family::wreath_cyclic) {
    os << spec.p;
  } else if (spec.family == Family::extraspecial || spec.family == Family::unitriangular) {
    os << spec.p;
    for (uint32_t v : spec.params) os << "," << v;
  } else {
    for (size_t i = 0; i < spec.params.size(); ++i) {
      if (i) os << ",";
      os << spec.params[i];
    }
  }
  os << ")";
  return os.str();
}

FamilySpec parse_family(const std::string& name, uint32_t p,
                        const std::vector<uint32_t>& k_params) {
  FamilySpec spec;
  spec.p = p;
  spec.params = k_params;
  if (name == "dihedral") spec.family = Family::dihedral;
  else if (name == "quaternion") spec.family = Family::quaternion;
  else if (name == "semidihedral") spec.family = Family::semidihedral;
  else if (name == "abelian") spec.family = Family::abelian;
  else if (name == "extraspecial") spec.family = Family::extraspecial;
  else if (name == "unitriangular") spec.family = Family::unitriangular;
  else if (name == "wreath_cyclic") spec.family = Family::wreath_cyclic;
  else throw GroupError("unknown family '" + name + "'");
  return spec;
}

Group build_semidirect_family(const Group& a, const Group& h,
                              const std::vector<Perm>& images, const GroupConfig& cfg) {
  Action act = Action::from_generator_images(h, a, images);
  return semidirect_product(a, h, act, cfg);
}

namespace {

void push_family(std::vector<CorpusEntry>& out, const FamilySpec& spec,
                 const GroupConfig& cfg) {
  out.push_back({family_id(spec), std::make_shared<const Group>(build_family(spec, cfg))});
}

}  // namespace

std::vector<CorpusEntry> corpus(CorpusProfile profile, const std::string& fixtures_dir,
                                const GroupConfig& cfg) {
  std::vector<CorpusEntry> out;
  for (uint32_t m = 8; m <= 512; m *= 2) push_family(out, {Family::dihedral, 2, {m}}, cfg);
  for (uint32_t m = 8; m <= 512; m *= 2) push_family(out, {Family::quaternion, 2, {m}}, cfg);
  for (uint32_t m = 16; m <= 512; m *= 2)
    push_family(out, {Family::semidihedral, 2, {m}}, cfg);
  push_family(out, {Family::abelian, 2, {8}}, cfg);
  push_family(out, {Family::abelian, 2, {4, 2}}, cfg);
  push_family(out, {Family::abelian, 2, {2, 2, 2}}, cfg);
  push_family(out, {Family::abelian, 2, {16}}, cfg);
  push_family(out, {Family::abelian, 3, {9}}, cfg);
  push_family(out, {Family::abelian, 3, {3, 3}}, cfg);
  push_family(out, {Family::abelian, 3, {27}}, cfg);
  push_family(out, {Family::abelian, 3, {9, 3}}, cfg);
  push_family(out, {Family::abelian, 3, {3, 3, 3}}, cfg);
  push_family(out, {Family::extraspecial, 3, {3}}, cfg);
  push_family(out, {Family::extraspecial, 3, {9}}, cfg);
  push_family(out, {Family::unitriangular, 2, {3}}, cfg);
  push_family(out, {Family::unitriangular, 2, {4}}, cfg);
  push_family(out, {Family::unitriangular, 3, {3}}, cfg);
  push_family(out, {Family::unitriangular, 3, {4}}, cfg);
  push_family(out, {Family::wreath_cyclic, 2, {}}, cfg);
  push_family(out, {Family::wreath_cyclic, 3, {}}, cfg);
  if (profile == CorpusProfile::full) {
    push_family(out, {Family::abelian, 5, {25}}, cfg);
    push_family(out, {Family::abelian, 5, {5, 5}}, cfg);
    push_family(out, {Family::extraspecial, 5, {5}}, cfg);
    push_family(out, {Family::extraspecial, 5, {25}}, cfg);
    push_family(out, {Family::unitriangular, 5, {3}}, cfg);
    if (!fixtures_dir.empty()) {
      for (const char* name :
           {"dihedral16.perm", "extraspecial27_exp3.pc", "extraspecial27_exp9.pc",
            "ut4_3.pc", "smallgroup_512_2015.pc"}) {
        std::string path = fixtures_dir + "/" + name;
        std::ifstream in(path);
        if (!in) throw GroupError("cannot read fixture " + path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        GroupSpec spec = parse_group_file(buffer.str());
        RealizeOptions opts;
        opts.config = cfg;
        std::string id(name);
        id = id.substr(0, id.rfind('.'));
        out.push_back({id, std::make_shared<const Group>(realize(spec, opts))});
      }
    }
  }
  return out;
}

}  // namespace charsupp
