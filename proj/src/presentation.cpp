#include "charsupp/presentation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace charsupp {

namespace {

struct Token {
  std::string text;
  uint32_t col = 0;
};

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  uint32_t col = 1;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      ++col;
      continue;
    }
    size_t start = i;
    uint32_t start_col = col;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#') {
      ++i;
      ++col;
    }
    out.push_back({std::string(line.substr(start, i - start)), start_col});
  }
  return out;
}

uint32_t parse_number(const Token& tok, uint32_t line, const char* what) {
  uint64_t value = 0;
  if (tok.text.empty()) throw ParseError(line, tok.col, std::string("expected ") + what);
  for (char c : tok.text) {
    if (c < '0' || c > '9')
      throw ParseError(line, tok.col, std::string("malformed ") + what + " '" + tok.text + "'");
    value = value * 10 + static_cast<uint64_t>(c - '0');
    if (value > UINT32_MAX) throw ParseError(line, tok.col, std::string(what) + " too large");
  }
  return static_cast<uint32_t>(value);
}

// key=value with a fixed key.
uint32_t parse_keyed(const Token& tok, uint32_t line, const std::string& key) {
  auto eq = tok.text.find('=');
  if (eq == std::string::npos || tok.text.substr(0, eq) != key)
    throw ParseError(line, tok.col, "expected " + key + "=<value>");
  Token value{tok.text.substr(eq + 1), tok.col + static_cast<uint32_t>(eq) + 1};
  return parse_number(value, line, key.c_str());
}

// g<k> or g<k>^<e>.
PcTerm parse_pc_term(const Token& tok, uint32_t line, uint32_t ngens, uint32_t prime) {
  if (tok.text.size() < 2 || tok.text[0] != 'g')
    throw ParseError(line, tok.col, "expected generator term, got '" + tok.text + "'");
  auto caret = tok.text.find('^');
  std::string gen_part = tok.text.substr(1, caret == std::string::npos ? std::string::npos
                                                                       : caret - 1);
  PcTerm term;
  term.gen = parse_number({gen_part, tok.col + 1}, line, "generator index");
  if (term.gen == 0 || term.gen > ngens)
    throw ParseError(line, tok.col, "generator g" + std::to_string(term.gen) +
                                        " out of range (ngens=" + std::to_string(ngens) + ")");
  if (caret != std::string::npos) {
    Token exp{tok.text.substr(caret + 1), tok.col + static_cast<uint32_t>(caret) + 1};
    term.exp = parse_number(exp, line, "exponent");
  } else {
    term.exp = 1;
  }
  if (term.exp == 0 || term.exp >= prime)
    throw ParseError(line, tok.col,
                     "exponent must lie in 1.." + std::to_string(prime - 1));
  return term;
}

PcWord parse_pc_word(const std::vector<Token>& toks, size_t from, uint32_t line,
                     uint32_t ngens, uint32_t prime, uint32_t min_gen) {
  PcWord word;
  if (from < toks.size() && toks[from].text == "1") {
    if (from + 1 != toks.size())
      throw ParseError(line, toks[from + 1].col, "unexpected token after '1'");
    return word;
  }
  uint32_t last = 0;
  for (size_t k = from; k < toks.size(); ++k) {
    PcTerm term = parse_pc_term(toks[k], line, ngens, prime);
    if (term.gen <= last)
      throw ParseError(line, toks[k].col, "word generators must be strictly ascending");
    if (term.gen < min_gen)
      throw ParseError(line, toks[k].col,
                       "word may only use generators of index >= " + std::to_string(min_gen));
    last = term.gen;
    word.push_back(term);
  }
  if (word.empty() && from >= toks.size())
    throw ParseError(line, 1, "missing word (use '1' for the empty word)");
  return word;
}

}  // namespace

GroupSpec parse_group_file(std::string_view text) {
  GroupSpec spec;
  bool header_seen = false;
  uint32_t line_no = 0;
  size_t pos = 0;
  uint32_t perm_gens_expected_degree = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (!header_seen) {
      if (toks[0].text != "group")
        throw ParseError(line_no, toks[0].col, "expected 'group' header");
      if (toks.size() < 2) throw ParseError(line_no, toks[0].col, "incomplete group header");
      if (toks[1].text == "perm") {
        if (toks.size() != 3)
          throw ParseError(line_no, toks[1].col, "perm header needs degree=<d>");
        spec.kind = GroupSpec::Kind::perm;
        spec.perm.degree = parse_keyed(toks[2], line_no, "degree");
        if (spec.perm.degree == 0)
          throw ParseError(line_no, toks[2].col, "degree must be positive");
        perm_gens_expected_degree = spec.perm.degree;
      } else if (toks[1].text == "pc") {
        if (toks.size() != 4)
          throw ParseError(line_no, toks[1].col, "pc header needs ngens=<n> prime=<p>");
        spec.kind = GroupSpec::Kind::pc;
        spec.pc.ngens = parse_keyed(toks[2], line_no, "ngens");
        spec.pc.prime = parse_keyed(toks[3], line_no, "prime");
        if (spec.pc.ngens == 0 || spec.pc.ngens > 30)
          throw ParseError(line_no, toks[2].col, "ngens out of range");
        if (!is_prime(spec.pc.prime))
          throw ParseError(line_no, toks[3].col,
                           std::to_string(spec.pc.prime) + " is not prime");
      } else {
        throw ParseError(line_no, toks[1].col, "unknown group kind '" + toks[1].text + "'");
      }
      header_seen = true;
      continue;
    }

    if (spec.kind == GroupSpec::Kind::perm) {
      if (toks[0].text != "gen")
        throw ParseError(line_no, toks[0].col, "expected 'gen' line");
      if (toks.size() != perm_gens_expected_degree + 1)
        throw ParseError(line_no, toks[0].col,
                         "gen line must list exactly " +
                             std::to_string(perm_gens_expected_degree) + " images");
      Perm p(perm_gens_expected_degree);
      std::vector<char> hit(perm_gens_expected_degree, 0);
      for (uint32_t k = 0; k < perm_gens_expected_degree; ++k) {
        uint32_t img = parse_number(toks[k + 1], line_no, "image");
        if (img == 0 || img > perm_gens_expected_degree)
          throw ParseError(line_no, toks[k + 1].col, "image out of range");
        if (hit[img - 1])
          throw ParseError(line_no, toks[k + 1].col, "row not a bijection");
        hit[img - 1] = 1;
        p[k] = img - 1;
      }
      spec.perm.generators.push_back(std::move(p));
      continue;
    }

    // pc relation lines.
    if (toks[0].text == "power") {
      if (toks.size() < 3 || toks[2].text != "=")
        throw ParseError(line_no, toks[0].col, "power syntax: power g<i> = <word>");
      if (toks[1].text.size() < 2 || toks[1].text[0] != 'g')
        throw ParseError(line_no, toks[1].col, "expected generator");
      uint32_t i = parse_number({toks[1].text.substr(1), toks[1].col + 1}, line_no,
                                "generator index");
      if (i == 0 || i > spec.pc.ngens)
        throw ParseError(line_no, toks[1].col, "generator out of range");
      PcWord word = parse_pc_word(toks, 3, line_no, spec.pc.ngens, spec.pc.prime, i + 1);
      if (spec.pc.power.count(i))
        throw ParseError(line_no, toks[1].col, "duplicate power relation for g" +
                                                   std::to_string(i));
      if (!word.empty()) spec.pc.power.emplace(i, std::move(word));
      continue;
    }
    if (toks[0].text == "conj") {
      if (toks.size() < 3 || toks[2].text != "=")
        throw ParseError(line_no, toks[0].col, "conj syntax: conj g<j>^g<i> = <word>");
      const std::string& head = toks[1].text;
      auto caret = head.find("^g");
      if (head.size() < 4 || head[0] != 'g' || caret == std::string::npos)
        throw ParseError(line_no, toks[1].col, "expected g<j>^g<i>");
      uint32_t j = parse_number({head.substr(1, caret - 1), toks[1].col + 1}, line_no,
                                "generator index");
      uint32_t i = parse_number({head.substr(caret + 2), toks[1].col + 2}, line_no,
                                "generator index");
      if (i == 0 || j == 0 || i > spec.pc.ngens || j > spec.pc.ngens)
        throw ParseError(line_no, toks[1].col, "generator out of range");
      if (i >= j)
        throw ParseError(line_no, toks[1].col, "conj requires i < j in g<j>^g<i>");
      PcWord word = parse_pc_word(toks, 3, line_no, spec.pc.ngens, spec.pc.prime, j);
      if (spec.pc.conj.count({i, j}))
        throw ParseError(line_no, toks[1].col, "duplicate conj relation");
      // Drop relations equal to the default (commuting).
      if (!(word.size() == 1 && word[0] == PcTerm{j, 1}))
        spec.pc.conj.emplace(std::make_pair(i, j), std::move(word));
      continue;
    }
    throw ParseError(line_no, toks[0].col, "unknown line '" + toks[0].text + "'");
  }
  if (!header_seen) throw ParseError(1, 1, "empty document");
  if (spec.kind == GroupSpec::Kind::perm && spec.perm.generators.empty())
    throw ParseError(line_no, 1, "perm spec requires at least one generator");
  return spec;
}

std::string emit_group_file(const GroupSpec& spec) {
  std::ostringstream os;
  if (spec.kind == GroupSpec::Kind::perm) {
    os << "group perm degree=" << spec.perm.degree << "\n";
    for (const Perm& g : spec.perm.generators) {
      os << "gen";
      for (uint32_t img : g) os << " " << img + 1;
      os << "\n";
    }
    return os.str();
  }
  os << "group pc ngens=" << spec.pc.ngens << " prime=" << spec.pc.prime << "\n";
  auto render_word = [&os](const PcWord& w) {
    if (w.empty()) {
      os << "1";
      return;
    }
    for (size_t k = 0; k < w.size(); ++k) {
      if (k) os << " ";
      os << "g" << w[k].gen << "^" << w[k].exp;
    }
  };
  for (const auto& [i, word] : spec.pc.power) {
    os << "power g" << i << " = ";
    render_word(word);
    os << "\n";
  }
  for (const auto& [ij, word] : spec.pc.conj) {
    os << "conj g" << ij.second << "^g" << ij.first << " = ";
    render_word(word);
    os << "\n";
  }
  return os.str();
}

namespace {

// Collection from the left over normal-form exponent vectors.
struct PcCollector final : MultSource {
  uint32_t n = 0;
  uint32_t p = 0;
  uint32_t order = 0;
  std::vector<PcWord> power_word;               // 0-based gen -> word (0-based gens)
  std::vector<std::vector<PcWord>> conj_word;   // [i][j], i < j (0-based)

  Elt encode(const std::vector<uint8_t>& e) const {
    Elt idx = 0;
    for (uint32_t k = 0; k < n; ++k) idx = idx * p + e[k];
    return idx;
  }
  std::vector<uint8_t> decode(Elt idx) const {
    std::vector<uint8_t> e(n, 0);
    for (uint32_t k = n; k-- > 0;) {
      e[k] = static_cast<uint8_t>(idx % p);
      idx /= p;
    }
    return e;
  }

  // Right-multiplies the normal form by generator i (0-based).
  void mul_gen(std::vector<uint8_t>& e, uint32_t i) const {
    std::vector<std::pair<uint32_t, uint8_t>> tail;
    for (uint32_t j = i + 1; j < n; ++j) {
      if (e[j] != 0) {
        tail.emplace_back(j, e[j]);
        e[j] = 0;
      }
    }
    e[i] = static_cast<uint8_t>(e[i] + 1);
    std::vector<const PcWord*> pending;
    if (e[i] == p) {
      e[i] = 0;
      pending.push_back(&power_word[i]);
    }
    for (const auto& [j, c] : tail) {
      for (uint8_t t = 0; t < c; ++t) pending.push_back(&conj_word[i][j]);
    }
    for (const PcWord* w : pending) {
      for (const PcTerm& term : *w) {
        for (uint32_t t = 0; t < term.exp; ++t) mul_gen(e, term.gen);
      }
    }
  }

  Elt mult(Elt a, Elt b) const override {
    std::vector<uint8_t> acc = decode(a);
    std::vector<uint8_t> rhs = decode(b);
    for (uint32_t k = 0; k < n; ++k) {
      for (uint8_t t = 0; t < rhs[k]; ++t) mul_gen(acc, k);
    }
    return encode(acc);
  }
};

std::shared_ptr<PcCollector> build_collector(const PcSpecData& pc) {
  auto col = std::make_shared<PcCollector>();
  col->n = pc.ngens;
  col->p = pc.prime;
  uint64_t order = 1;
  for (uint32_t k = 0; k < pc.ngens; ++k) {
    order *= pc.prime;
    if (order > (1ULL << 31)) throw GroupError("pc group order overflows");
  }
  col->order = static_cast<uint32_t>(order);
  col->power_word.assign(pc.ngens, {});
  col->conj_word.assign(pc.ngens, std::vector<PcWord>(pc.ngens));
  auto to_zero_based = [](const PcWord& w) {
    PcWord out = w;
    for (PcTerm& t : out) --t.gen;
    return out;
  };
  for (const auto& [i, word] : pc.power) col->power_word[i - 1] = to_zero_based(word);
  for (uint32_t i = 0; i + 1 < pc.ngens; ++i)
    for (uint32_t j = i + 1; j < pc.ngens; ++j)
      col->conj_word[i][j] = {PcTerm{j, 1}};  // default: commute
  for (const auto& [ij, word] : pc.conj)
    col->conj_word[ij.first - 1][ij.second - 1] = to_zero_based(word);
  return col;
}

void check_pc_consistency(const PcCollector& col) {
  const uint32_t n = col.n;
  const uint32_t p = col.p;
  auto gen = [&](uint32_t k) {
    std::vector<uint8_t> e(n, 0);
    e[k] = 1;
    return col.encode(e);
  };
  auto pw = [&](Elt a, uint32_t times) {
    Elt acc = 0;
    for (uint32_t t = 0; t < times; ++t) acc = col.mult(acc, a);
    return acc;
  };
  // Overlap conditions: with these satisfied, the collected normal forms
  // form a group of order p^n.
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t j = 0; j < k; ++j)
      for (uint32_t i = 0; i < j; ++i) {
        Elt lhs = col.mult(col.mult(gen(k), gen(j)), gen(i));
        Elt rhs = col.mult(gen(k), col.mult(gen(j), gen(i)));
        if (lhs != rhs) throw GroupError("pc presentation inconsistent (associativity overlap)");
      }
  for (uint32_t j = 0; j < n; ++j)
    for (uint32_t i = 0; i < j; ++i) {
      Elt lhs = col.mult(pw(gen(j), p), gen(i));
      Elt rhs = col.mult(pw(gen(j), p - 1), col.mult(gen(j), gen(i)));
      if (lhs != rhs) throw GroupError("pc presentation inconsistent (power overlap)");
      lhs = col.mult(gen(j), pw(gen(i), p));
      rhs = col.mult(col.mult(gen(j), gen(i)), pw(gen(i), p - 1));
      if (lhs != rhs) throw GroupError("pc presentation inconsistent (power overlap)");
    }
  for (uint32_t i = 0; i < n; ++i) {
    Elt lhs = col.mult(gen(i), pw(gen(i), p));
    Elt rhs = col.mult(pw(gen(i), p), gen(i));
    if (lhs != rhs) throw GroupError("pc presentation inconsistent (power overlap)");
  }
}

Group realize_pc(const PcSpecData& pc, const RealizeOptions& opts) {
  auto col = build_collector(pc);
  if (col->order > opts.config.closure_cap)
    throw CapError("pc group order " + std::to_string(col->order) + " exceeds cap");
  check_pc_consistency(*col);

  // Reachability guard: BFS from the identity must cover all p^n vectors.
  {
    std::vector<char> seen(col->order, 0);
    seen[0] = 1;
    std::vector<Elt> frontier{0};
    uint32_t count = 1;
    for (size_t head = 0; head < frontier.size(); ++head) {
      std::vector<uint8_t> e = col->decode(frontier[head]);
      for (uint32_t k = 0; k < col->n; ++k) {
        std::vector<uint8_t> e2 = e;
        col->mul_gen(e2, k);
        Elt idx = col->encode(e2);
        if (!seen[idx]) {
          seen[idx] = 1;
          frontier.push_back(idx);
          ++count;
        }
      }
    }
    if (count != col->order)
      throw GroupError("pc presentation inconsistent (collected order " +
                       std::to_string(count) + " != p^ngens)");
  }

  std::vector<Elt> gens(col->n);
  for (uint32_t k = 0; k < col->n; ++k) {
    std::vector<uint8_t> e(col->n, 0);
    e[k] = 1;
    gens[k] = col->encode(e);
  }

  if (opts.via_regular_representation) {
    // Left-regular permutations x -> g_k * x; their closure is isomorphic
    // to the collected group and doubles as an oracle for the collector.
    std::vector<Perm> maps(col->n, Perm(col->order));
    for (uint32_t k = 0; k < col->n; ++k)
      for (Elt x = 0; x < col->order; ++x) maps[k][x] = col->mult(gens[k], x);
    Group g = closure_from_generators(maps, opts.config);
    if (g.order() != col->order)
      throw GroupError("pc presentation inconsistent (regular representation order)");
    return g;
  }
  return Group::from_mult_source(col->order, col, std::move(gens), opts.config);
}

}  // namespace

Group realize(const GroupSpec& spec, const RealizeOptions& opts) {
  if (spec.kind == GroupSpec::Kind::perm)
    return closure_from_generators(spec.perm.generators, opts.config);
  return realize_pc(spec.pc, opts);
}

GroupSpec to_pc_spec(const Group& g) {
  auto p_opt = g.prime();
  if (!p_opt || g.order() == 1)
    throw GroupError("pc export requires a nontrivial p-group");
  const uint32_t p = *p_opt;
  const auto series = chief_series(g);
  const uint32_t n = static_cast<uint32_t>(series.size() - 1);
  std::vector<Elt> gens(n);
  for (uint32_t i = 0; i < n; ++i) {
    for (Elt x : series[i].members)
      if (!series[i + 1].contains(x)) {
        gens[i] = x;
        break;
      }
  }
  // Normal-form decomposition along the series.
  auto word_of = [&](Elt x) {
    PcWord word;
    for (uint32_t i = 0; i < n; ++i) {
      if (series[i + 1].contains(x)) continue;
      uint32_t e = 0;
      Elt cur = x;
      while (!series[i + 1].contains(cur)) {
        cur = g.mult(g.inverse(gens[i]), cur);
        ++e;
        if (e > p) throw GroupError("pc export: series decomposition failed");
      }
      word.push_back({i + 1, e});
      x = cur;
    }
    if (x != 0) throw GroupError("pc export: residue after decomposition");
    return word;
  };
  GroupSpec spec;
  spec.kind = GroupSpec::Kind::pc;
  spec.pc.ngens = n;
  spec.pc.prime = p;
  for (uint32_t i = 0; i < n; ++i) {
    PcWord w = word_of(g.power(gens[i], p));
    if (!w.empty()) spec.pc.power.emplace(i + 1, std::move(w));
  }
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j) {
      PcWord w = word_of(g.conjugate(gens[j], gens[i]));
      if (!(w.size() == 1 && w[0] == PcTerm{j + 1, 1}))
        spec.pc.conj.emplace(std::make_pair(i + 1, j + 1), std::move(w));
    }
  return spec;
}

}  // namespace charsupp
