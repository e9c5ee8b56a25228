#include "charsupp/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace charsupp {

namespace {

struct FunctionSource final : MultSource {
  explicit FunctionSource(std::function<Elt(Elt, Elt)> fn) : fn(std::move(fn)) {}
  Elt mult(Elt a, Elt b) const override { return fn(a, b); }
  std::function<Elt(Elt, Elt)> fn;
};

struct PermSource final : MultSource {
  std::vector<Perm> elems;
  std::map<Perm, Elt> index;
  Elt mult(Elt a, Elt b) const override {
    const Perm& f = elems[a];
    const Perm& g = elems[b];
    Perm h(f.size());
    for (size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];
    auto it = index.find(h);
    if (it == index.end()) throw GroupError("permutation product escaped closure");
    return it->second;
  }
};

std::optional<uint32_t> prime_of_order(uint32_t n) {
  if (n == 1) return 1;
  uint32_t m = n;
  uint32_t p = 0;
  for (uint32_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      while (m % d == 0) m /= d;
      break;
    }
  }
  if (p == 0) p = m, m = 1;
  if (m != 1) return std::nullopt;
  return p;
}

}  // namespace

struct GroupAccess {
  static Group make(uint32_t order, std::vector<Elt> table,
                    std::shared_ptr<const MultSource> src, std::vector<Elt> generators) {
    Group g;
    g.order_ = order;
    if (!table.empty()) {
      g.table_ = std::make_shared<const std::vector<Elt>>(std::move(table));
      g.table_data_ = g.table_->data();
    }
    g.source_ = std::move(src);
    g.generators_ = std::move(generators);

    for (Elt a = 0; a < order; ++a) {
      if (g.mult(0, a) != a || g.mult(a, 0) != a)
        throw GroupError("index 0 is not a two-sided identity");
    }

    g.element_order_.assign(order, 1);
    uint32_t expo = 1;
    for (Elt a = 0; a < order; ++a) {
      uint32_t ord = 1;
      Elt x = a;
      while (x != 0) {
        x = g.mult(x, a);
        ++ord;
        if (ord > order) throw GroupError("element order exceeds group order");
      }
      g.element_order_[a] = ord;
      expo = static_cast<uint32_t>(std::lcm<uint64_t>(expo, ord));
    }
    g.exponent_ = expo;

    g.inverse_.assign(order, 0);
    for (Elt a = 0; a < order; ++a) {
      Elt inv = 0;
      Elt x = a;
      for (uint32_t k = 1; k + 1 < g.element_order_[a]; ++k) x = g.mult(x, a);
      inv = g.element_order_[a] == 1 ? a : x;
      if (g.mult(a, inv) != 0 || g.mult(inv, a) != 0)
        throw GroupError("inverse computation failed (non-associative input?)");
      g.inverse_[a] = inv;
    }

    g.prime_ = prime_of_order(order);

    // Generators must generate every index.
    std::vector<char> seen(order, 0);
    seen[0] = 1;
    std::vector<Elt> frontier{0};
    size_t head = 0;
    uint32_t count = 1;
    while (head < frontier.size()) {
      Elt x = frontier[head++];
      for (Elt gen : g.generators_) {
        Elt y = g.mult(x, gen);
        if (!seen[y]) {
          seen[y] = 1;
          frontier.push_back(y);
          ++count;
        }
      }
    }
    if (count != order) throw GroupError("generators do not generate the group");
    return g;
  }
};

Group Group::from_mult(uint32_t order, const std::function<Elt(Elt, Elt)>& mult,
                       std::vector<Elt> generators, const GroupConfig& cfg) {
  if (order == 0) throw GroupError("group order must be positive");
  if (order > cfg.closure_cap)
    throw CapError("group order " + std::to_string(order) + " exceeds cap " +
                   std::to_string(cfg.closure_cap));
  if (order <= cfg.mult_table_threshold) {
    std::vector<Elt> table(static_cast<size_t>(order) * order);
    for (Elt a = 0; a < order; ++a)
      for (Elt b = 0; b < order; ++b) {
        Elt v = mult(a, b);
        if (v >= order) throw GroupError("multiplication image out of range");
        table[static_cast<size_t>(a) * order + b] = v;
      }
    return GroupAccess::make(order, std::move(table), nullptr, std::move(generators));
  }
  return GroupAccess::make(order, {}, std::make_shared<FunctionSource>(mult),
                           std::move(generators));
}

Group Group::from_mult_source(uint32_t order, std::shared_ptr<const MultSource> src,
                              std::vector<Elt> generators, const GroupConfig& cfg) {
  if (order == 0) throw GroupError("group order must be positive");
  if (order > cfg.closure_cap)
    throw CapError("group order " + std::to_string(order) + " exceeds cap " +
                   std::to_string(cfg.closure_cap));
  if (order <= cfg.mult_table_threshold) {
    std::vector<Elt> table(static_cast<size_t>(order) * order);
    for (Elt a = 0; a < order; ++a)
      for (Elt b = 0; b < order; ++b) table[static_cast<size_t>(a) * order + b] = src->mult(a, b);
    return GroupAccess::make(order, std::move(table), nullptr, std::move(generators));
  }
  return GroupAccess::make(order, {}, std::move(src), std::move(generators));
}

Elt Group::power(Elt a, long long e) const {
  uint32_t ord = element_order_[a];
  long long r = e % ord;
  if (r < 0) r += ord;
  Elt result = 0;
  Elt base = a;
  while (r > 0) {
    if (r & 1) result = mult(result, base);
    base = mult(base, base);
    r >>= 1;
  }
  return result;
}

Group closure_from_generators(const std::vector<Perm>& gens, const GroupConfig& cfg) {
  if (gens.empty()) throw GroupError("closure requires at least one generator");
  const size_t degree = gens[0].size();
  for (const auto& p : gens) {
    if (p.size() != degree) throw GroupError("generators act on different degrees");
    std::vector<char> hit(degree, 0);
    for (uint32_t v : p) {
      if (v >= degree || hit[v]) throw GroupError("generator is not a bijection");
      hit[v] = 1;
    }
  }
  auto src = std::make_shared<PermSource>();
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  src->elems.push_back(id);
  src->index.emplace(id, 0);
  std::vector<Elt> gen_ids;
  for (size_t head = 0; head < src->elems.size(); ++head) {
    for (const auto& g : gens) {
      const Perm cur = src->elems[head];  // copy: elems may reallocate
      Perm next(degree);
      for (size_t i = 0; i < degree; ++i) next[i] = cur[g[i]];
      if (src->index.find(next) == src->index.end()) {
        if (src->elems.size() >= cfg.closure_cap)
          throw CapError("closure exceeds cap " + std::to_string(cfg.closure_cap));
        Elt idx = static_cast<Elt>(src->elems.size());
        src->index.emplace(next, idx);
        src->elems.push_back(std::move(next));
      }
    }
  }
  gen_ids.reserve(gens.size());
  for (const auto& g : gens) gen_ids.push_back(src->index.at(g));
  const uint32_t order = static_cast<uint32_t>(src->elems.size());
  return Group::from_mult_source(order, src, std::move(gen_ids), cfg);
}

bool Subgroup::contains(Elt x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

uint32_t Subgroup::index_of(Elt x) const {
  auto it = std::lower_bound(members.begin(), members.end(), x);
  if (it == members.end() || *it != x) throw GroupError("element not in subgroup");
  return static_cast<uint32_t>(it - members.begin());
}

ClassPartition conjugacy_classes(const Group& g) {
  const uint32_t n = g.order();
  ClassPartition part;
  part.class_of.assign(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Elt>> classes;
  for (Elt x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<Elt> orbit{x};
    seen[x] = 1;
    for (size_t head = 0; head < orbit.size(); ++head) {
      Elt y = orbit[head];
      for (Elt gen : g.generators()) {
        Elt z = g.conjugate(y, gen);
        if (!seen[z]) {
          seen[z] = 1;
          orbit.push_back(z);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  std::sort(classes.begin(), classes.end(),
            [&g](const std::vector<Elt>& a, const std::vector<Elt>& b) {
              uint32_t oa = g.element_order(a[0]);
              uint32_t ob = g.element_order(b[0]);
              if (oa != ob) return oa < ob;
              if (a.size() != b.size()) return a.size() < b.size();
              return a[0] < b[0];
            });
  for (uint32_t c = 0; c < classes.size(); ++c) {
    part.reps.push_back(classes[c][0]);
    part.sizes.push_back(static_cast<uint32_t>(classes[c].size()));
    for (Elt x : classes[c]) part.class_of[x] = c;
  }
  part.classes = std::move(classes);
  return part;
}

Action Action::from_generator_images(const Group& acting, const Group& target,
                                     const std::vector<Perm>& images) {
  if (images.size() != acting.generators().size())
    throw GroupError("one image per generator of the acting group required");
  const uint32_t na = target.order();
  for (const auto& img : images) {
    if (img.size() != na) throw GroupError("action image has wrong degree");
    std::vector<char> hit(na, 0);
    for (Elt v : img) {
      if (v >= na || hit[v]) throw GroupError("action image is not a bijection");
      hit[v] = 1;
    }
    for (Elt x = 0; x < na; ++x)
      for (Elt y = 0; y < na; ++y)
        if (img[target.mult(x, y)] != target.mult(img[x], img[y]))
          throw GroupError("action image is not an automorphism");
  }
  Action act;
  act.acting_ = &acting;
  act.target_ = &target;
  act.maps_.assign(acting.order(), {});
  std::vector<char> known(acting.order(), 0);
  Perm id(na);
  std::iota(id.begin(), id.end(), 0);
  act.maps_[0] = id;
  known[0] = 1;
  std::vector<Elt> frontier{0};
  auto gens = acting.generators();
  for (size_t head = 0; head < frontier.size(); ++head) {
    Elt h = frontier[head];
    for (size_t k = 0; k < gens.size(); ++k) {
      Elt h2 = acting.mult(h, gens[k]);
      Perm composed(na);
      // Left action: act(h * g)(a) = act(h)(act(g)(a)).
      for (Elt a = 0; a < na; ++a) composed[a] = act.maps_[h][images[k][a]];
      if (!known[h2]) {
        act.maps_[h2] = std::move(composed);
        known[h2] = 1;
        frontier.push_back(h2);
      } else if (act.maps_[h2] != composed) {
        throw GroupError("action images do not respect the acting group's relations");
      }
    }
  }
  return act;
}

Action Action::trivial(const Group& acting, const Group& target) {
  Perm id(target.order());
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> images(acting.generators().size(), id);
  return from_generator_images(acting, target, images);
}

Subgroup centralizer(const Group& g, Elt x) {
  if (x >= g.order()) throw GroupError("element index out of range");
  Subgroup s;
  s.parent = &g;
  for (Elt h = 0; h < g.order(); ++h)
    if (g.mult(h, x) == g.mult(x, h)) s.members.push_back(h);
  s.is_normal = is_normal(g, s);
  return s;
}

Subgroup centralizer(const Group& g, const Subgroup& sub) {
  Subgroup s;
  s.parent = &g;
  for (Elt h = 0; h < g.order(); ++h) {
    bool ok = true;
    for (Elt x : sub.members)
      if (g.mult(h, x) != g.mult(x, h)) { ok = false; break; }
    if (ok) s.members.push_back(h);
  }
  s.is_normal = is_normal(g, s);
  return s;
}

Subgroup centralizer_in_action(const Action& act, Elt a) {
  Subgroup s;
  s.parent = &act.acting();
  for (Elt h = 0; h < act.acting().order(); ++h)
    if (act.apply(h, a) == a) s.members.push_back(h);
  s.is_normal = is_normal(act.acting(), s);
  return s;
}

Subgroup whole_group(const Group& g) {
  Subgroup s;
  s.parent = &g;
  s.members.resize(g.order());
  std::iota(s.members.begin(), s.members.end(), 0);
  s.is_normal = true;
  return s;
}

Subgroup trivial_subgroup(const Group& g) {
  Subgroup s;
  s.parent = &g;
  s.members = {0};
  s.is_normal = true;
  return s;
}

Subgroup generated(const Group& g, std::span<const Elt> seeds) {
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  std::vector<Elt> frontier{0};
  std::vector<Elt> gens;
  for (Elt s : seeds) {
    gens.push_back(s);
    gens.push_back(g.inverse(s));
  }
  for (size_t head = 0; head < frontier.size(); ++head) {
    Elt x = frontier[head];
    for (Elt s : gens) {
      Elt y = g.mult(x, s);
      if (!in[y]) {
        in[y] = 1;
        frontier.push_back(y);
      }
    }
  }
  Subgroup sub;
  sub.parent = &g;
  for (Elt x = 0; x < g.order(); ++x)
    if (in[x]) sub.members.push_back(x);
  sub.is_normal = is_normal(g, sub);
  return sub;
}

Subgroup intersect(const Subgroup& u, const Subgroup& v) {
  if (u.parent != v.parent) throw GroupError("subgroups of different parents");
  Subgroup s;
  s.parent = u.parent;
  std::set_intersection(u.members.begin(), u.members.end(), v.members.begin(),
                        v.members.end(), std::back_inserter(s.members));
  s.is_normal = is_normal(*s.parent, s);
  return s;
}

Subgroup conjugate_subgroup(const Subgroup& u, Elt g) {
  const Group& parent = *u.parent;
  Subgroup s;
  s.parent = u.parent;
  s.members.reserve(u.members.size());
  for (Elt x : u.members) s.members.push_back(parent.conjugate(x, g));
  std::sort(s.members.begin(), s.members.end());
  s.is_normal = u.is_normal;
  return s;
}

bool is_normal(const Group& g, const Subgroup& u) {
  for (Elt gen : g.generators())
    for (Elt x : u.members)
      if (!u.contains(g.conjugate(x, gen))) return false;
  return true;
}

Subgroup normal_closure(const Group& g, std::span<const Elt> seeds) {
  std::vector<Elt> current(seeds.begin(), seeds.end());
  Subgroup s = generated(g, current);
  while (true) {
    std::vector<Elt> extra;
    for (Elt gen : g.generators())
      for (Elt x : s.members) {
        Elt y = g.conjugate(x, gen);
        if (!s.contains(y)) extra.push_back(y);
      }
    if (extra.empty()) break;
    std::vector<Elt> all = s.members;
    all.insert(all.end(), extra.begin(), extra.end());
    s = generated(g, all);
  }
  s.is_normal = true;
  return s;
}

ProductSet product_set(const Subgroup& u, const Subgroup& v) {
  if (u.parent != v.parent) throw GroupError("subgroups of different parents");
  const Group& g = *u.parent;
  std::set<Elt> uv;
  for (Elt a : u.members)
    for (Elt b : v.members) uv.insert(g.mult(a, b));
  std::set<Elt> vu;
  for (Elt b : v.members)
    for (Elt a : u.members) vu.insert(g.mult(b, a));
  ProductSet out;
  out.elements.assign(uv.begin(), uv.end());
  out.is_subgroup = (uv == vu);
  return out;
}

Subgroup commutator_subgroup(const Group& g, const Subgroup& u, const Subgroup& v) {
  std::set<Elt> comms;
  for (Elt x : u.members)
    for (Elt y : v.members) comms.insert(g.commutator(x, y));
  std::vector<Elt> seeds(comms.begin(), comms.end());
  return generated(g, seeds);
}

Subgroup derived_subgroup(const Group& g, const Subgroup& u) {
  return commutator_subgroup(g, u, u);
}

Subgroup center(const Group& g) { return centralizer(g, whole_group(g)); }

SeriesReport series_report(const Group& g) {
  SeriesReport rep;
  const Subgroup whole = whole_group(g);
  rep.lower_central.push_back(whole);
  while (true) {
    const Subgroup& last = rep.lower_central.back();
    if (last.order() == 1) break;
    Subgroup next = commutator_subgroup(g, last, whole);
    if (next.members == last.members) break;  // stabilized (non-nilpotent input)
    rep.lower_central.push_back(std::move(next));
  }
  rep.derived.push_back(whole);
  while (true) {
    const Subgroup& last = rep.derived.back();
    if (last.order() == 1) break;
    Subgroup next = derived_subgroup(g, last);
    if (next.members == last.members) break;
    rep.derived.push_back(std::move(next));
  }
  const bool nilpotent = rep.lower_central.back().order() == 1;
  rep.nilpotence_class =
      nilpotent ? static_cast<uint32_t>(rep.lower_central.size() - 1) : UINT32_MAX;
  rep.derived_length = rep.derived.back().order() == 1
                           ? static_cast<uint32_t>(rep.derived.size() - 1)
                           : UINT32_MAX;
  rep.is_metabelian = rep.derived_length <= 2;
  rep.class_at_most_3 = nilpotent && rep.nilpotence_class <= 3;
  rep.center = center(g);
  return rep;
}

namespace {

struct QuotientSource final : MultSource {
  Group parent;  // cheap copy: table is shared
  std::vector<Elt> reps;
  std::vector<Elt> proj;
  Elt mult(Elt a, Elt b) const override {
    return proj[parent.mult(reps[a], reps[b])];
  }
};

}  // namespace

QuotientResult quotient(const Group& g, const Subgroup& n) {
  if (n.parent != &g) throw GroupError("subgroup of a different parent");
  if (!is_normal(g, n)) throw GroupError("quotient by a non-normal subgroup");
  const uint32_t order = g.order();
  std::vector<Elt> proj(order, UINT32_MAX);
  std::vector<Elt> reps;
  for (Elt x = 0; x < order; ++x) {
    if (proj[x] != UINT32_MAX) continue;
    Elt c = static_cast<Elt>(reps.size());
    reps.push_back(x);
    for (Elt m : n.members) proj[g.mult(x, m)] = c;
  }
  auto src = std::make_shared<QuotientSource>();
  src->parent = g;
  src->reps = reps;
  src->proj = proj;
  std::vector<Elt> gens;
  for (Elt gen : g.generators()) {
    Elt img = proj[gen];
    if (img != 0 && std::find(gens.begin(), gens.end(), img) == gens.end())
      gens.push_back(img);
  }
  if (gens.empty() && reps.size() > 1) throw GroupError("quotient generator collapse");
  Group q = Group::from_mult_source(static_cast<uint32_t>(reps.size()), src, gens);
  return {std::move(q), std::move(proj)};
}

namespace {

struct SemidirectSource final : MultSource {
  Group a, h;
  std::vector<Perm> maps;  // automorphism of A per element of H
  Elt mult(Elt x, Elt y) const override {
    Elt a1 = x / h.order(), h1 = x % h.order();
    Elt a2 = y / h.order(), h2 = y % h.order();
    return a.mult(a1, maps[h1][a2]) * h.order() + h.mult(h1, h2);
  }
};

}  // namespace

Group semidirect_product(const Group& a, const Group& h, const Action& act,
                         const GroupConfig& cfg) {
  if (&act.acting() != &h || &act.target() != &a)
    throw GroupError("action does not match the semidirect factors");
  const uint64_t order = static_cast<uint64_t>(a.order()) * h.order();
  if (order > cfg.closure_cap)
    throw CapError("semidirect order " + std::to_string(order) + " exceeds cap");
  auto src = std::make_shared<SemidirectSource>();
  src->a = a;
  src->h = h;
  src->maps.reserve(h.order());
  for (Elt x = 0; x < h.order(); ++x) src->maps.push_back(act.automorphism(x));
  std::vector<Elt> gens;
  for (Elt ga : a.generators()) gens.push_back(ga * h.order());
  for (Elt gh : h.generators()) gens.push_back(gh);
  return Group::from_mult_source(static_cast<uint32_t>(order), src, std::move(gens), cfg);
}

Group direct_product(const Group& a, const Group& b, const GroupConfig& cfg) {
  return semidirect_product(a, b, Action::trivial(b, a), cfg);
}

std::vector<Subgroup> all_subgroups(const Group& g, uint32_t max_order) {
  // BFS over one-generator extensions, deduplicated by member set. Any
  // subgroup of a p-group sits atop a chain of smaller subgroups, so
  // pruning by max_order keeps the enumeration complete below the cap.
  std::set<std::vector<Elt>> seen;
  struct Node {
    std::vector<Elt> members;
    std::vector<Elt> gens;
  };
  std::vector<Node> queue;
  queue.push_back({{0}, {}});
  seen.insert({0});
  for (size_t head = 0; head < queue.size(); ++head) {
    const Node node = queue[head];
    for (Elt x = 0; x < g.order(); ++x) {
      if (std::binary_search(node.members.begin(), node.members.end(), x)) continue;
      std::vector<Elt> gens = node.gens;
      gens.push_back(x);
      Subgroup t = generated(g, gens);
      if (max_order != 0 && t.order() > max_order) continue;
      if (seen.insert(t.members).second) queue.push_back({t.members, gens});
    }
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  std::vector<std::vector<Elt>> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const std::vector<Elt>& a, const std::vector<Elt>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  for (auto& members : sorted) {
    Subgroup s;
    s.parent = &g;
    s.members = std::move(members);
    s.is_normal = is_normal(g, s);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Subgroup> normal_subgroups(const Group& g) {
  const ClassPartition classes = conjugacy_classes(g);
  std::set<std::vector<Elt>> seen;
  std::vector<std::vector<Elt>> queue;
  queue.push_back({0});
  seen.insert({0});
  for (size_t head = 0; head < queue.size(); ++head) {
    const std::vector<Elt> current = queue[head];
    for (uint32_t c = 0; c < classes.count(); ++c) {
      Elt rep = classes.reps[c];
      if (std::binary_search(current.begin(), current.end(), rep)) continue;
      std::vector<Elt> seeds = current;
      for (Elt x : classes.classes[c]) seeds.push_back(x);
      Subgroup t = generated(g, seeds);
      if (seen.insert(t.members).second) queue.push_back(t.members);
    }
  }
  std::vector<std::vector<Elt>> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const std::vector<Elt>& a, const std::vector<Elt>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  std::vector<Subgroup> out;
  for (auto& members : sorted) {
    Subgroup s;
    s.parent = &g;
    s.members = std::move(members);
    s.is_normal = true;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Subgroup> chief_series(const Group& g) {
  auto p_opt = g.prime();
  if (!p_opt || g.order() == 1) {
    if (g.order() == 1) return {whole_group(g)};
    if (!p_opt) throw GroupError("chief series construction requires a p-group");
  }
  std::vector<Subgroup> series;
  series.push_back(whole_group(g));
  while (series.back().order() > 1) {
    const Subgroup& n = series.back();
    // W = [N, G] <p-th powers of N>: N/W is central elementary abelian in
    // G/W, so every intermediate subgroup is normal in G.
    std::set<Elt> seeds;
    for (Elt x : n.members) {
      for (Elt gen : g.generators()) seeds.insert(g.commutator(x, gen));
      seeds.insert(g.power(x, *p_opt));
    }
    std::vector<Elt> seed_list(seeds.begin(), seeds.end());
    Subgroup w = generated(g, seed_list);
    Elt t = 0;
    for (Elt x : n.members)
      if (!w.contains(x)) { t = x; break; }
    Subgroup m = w;
    for (Elt x : n.members) {
      if (m.contains(x)) continue;
      std::vector<Elt> seeds2 = m.members;
      seeds2.push_back(x);
      Subgroup cand = generated(g, seeds2);
      if (!cand.contains(t)) m = std::move(cand);
    }
    m.is_normal = true;
    if (m.order() * *p_opt != n.order())
      throw GroupError("chief series step failed");
    series.push_back(std::move(m));
  }
  return series;
}

std::optional<std::vector<Elt>> extend_generator_map(const Group& from, const Group& to,
                                                     std::span<const Elt> images) {
  if (images.size() != from.generators().size()) return std::nullopt;
  std::vector<Elt> map(from.order(), UINT32_MAX);
  map[0] = 0;
  std::vector<Elt> frontier{0};
  auto gens = from.generators();
  for (size_t head = 0; head < frontier.size(); ++head) {
    Elt x = frontier[head];
    for (size_t k = 0; k < gens.size(); ++k) {
      Elt y = from.mult(x, gens[k]);
      Elt img = to.mult(map[x], images[k]);
      if (map[y] == UINT32_MAX) {
        map[y] = img;
        frontier.push_back(y);
      } else if (map[y] != img) {
        return std::nullopt;
      }
    }
  }
  return map;
}

}  // namespace charsupp
