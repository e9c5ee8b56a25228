// charsupp: exact character-support workbench for finite p-groups.
//
// Subcommands: table, support, verify, family, sigma. Reports follow the
// line protocol `CHECK <suite>.<name> group=<id> chi=<k> result=...
// expected=... got=...`; exit 0 = clean, 1 = unexpected FAIL, 2 = usage
// or input error.

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "charsupp/families.hpp"
#include "charsupp/presentation.hpp"
#include "charsupp/support.hpp"

using namespace charsupp;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "--" || path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string stem_of(const std::string& path) {
  if (path == "--" || path == "-") return "stdin";
  auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = name.rfind('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

uint32_t order_cap_from_env() {
  if (const char* env = std::getenv("CHARSUPP_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw UsageError("CHARSUPP_CAP must be a positive integer");
    return static_cast<uint32_t>(v);
  }
  return 8192;
}

Group realize_file(const std::string& path, uint32_t order_cap) {
  GroupSpec spec = parse_group_file(read_input(path));
  RealizeOptions opts;
  opts.config.closure_cap = std::max(order_cap, 20000u);
  Group g = realize(spec, opts);
  if (g.order() > order_cap)
    throw UsageError("group order " + std::to_string(g.order()) + " exceeds cap " +
                     std::to_string(order_cap) + " (override with CHARSUPP_CAP)");
  return g;
}

int run_table(const std::string& path, uint32_t order_cap) {
  auto g = std::make_shared<const Group>(realize_file(path, order_cap));
  TableOptions topts;
  topts.max_order = order_cap;
  CharacterTable t = character_table(*g, topts);
  std::cout << "# group=" << stem_of(path) << " order=" << g->order() << " exponent="
            << g->exponent() << " classes=" << t.count() << " dixon_q=" << t.dixon_modulus
            << "\n";
  std::cout << t.render();
  return 0;
}

int run_support(const std::string& path, int64_t only_chi, uint32_t order_cap) {
  auto g = std::make_shared<const Group>(realize_file(path, order_cap));
  TableOptions topts;
  topts.max_order = order_cap;
  TableContext ctx(topts);
  const CharacterTable& t = ctx.table_of(g);
  std::cout << "# group=" << stem_of(path) << " order=" << g->order() << " classes="
            << t.count() << "\n";
  for (uint32_t k = 0; k < t.count(); ++k) {
    if (only_chi >= 0 && static_cast<uint32_t>(only_chi) != k) continue;
    SupportProfile prof = support_profile(t, k);
    std::cout << "chi" << k << " deg=" << t.rows[k].degree << " k_supp=" << prof.k_supp
              << " max_order=" << prof.max_order << " bound_classes=" << prof.bound_count
              << " bound_order=" << prof.order_bound_str()
              << " gvz=" << (prof.gvz ? "yes" : "no") << " support=";
    for (size_t i = 0; i < prof.support_classes.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << prof.support_classes[i];
    }
    std::cout << "\n";
  }
  if (only_chi >= 0 && static_cast<uint64_t>(only_chi) >= t.count())
    throw UsageError("--chi index out of range");
  return 0;
}

std::vector<CheckLine> run_suites_for(const std::shared_ptr<const Group>& g,
                                      const std::string& id, const std::string& suite,
                                      const TableOptions& topts) {
  TableContext ctx(topts);
  std::vector<CheckLine> lines;
  auto append = [&lines](std::vector<CheckLine> more) {
    for (auto& l : more) lines.push_back(std::move(l));
  };
  if (suite == "A" || suite == "all") append(verify_theorem_A(ctx, g, id));
  if (suite == "B" || suite == "all") append(verify_theorem_B(ctx, g, id));
  if (suite == "C" || suite == "all") append(verify_theorem_C(ctx, g, id));
  if (suite == "lemmas" || suite == "all") append(verify_lemmas(ctx, g, id));
  return lines;
}

int run_verify(const std::string& path, const std::string& corpus_profile,
               const std::string& suite, const std::vector<std::string>& expect_fail,
               const std::string& fixtures_dir, const std::string& format, uint32_t jobs,
               uint32_t order_cap) {
  if (path.empty() == corpus_profile.empty())
    throw UsageError("verify needs exactly one of <file> or --corpus");
  ExpectedFailures declared;
  for (const std::string& token : expect_fail) declared.add_token(token);

  GroupConfig gcfg;
  gcfg.closure_cap = std::max(order_cap, 20000u);
  std::vector<CorpusEntry> targets;
  if (!corpus_profile.empty()) {
    if (corpus_profile != "quick" && corpus_profile != "full")
      throw UsageError("--corpus takes quick or full");
    targets = corpus(corpus_profile == "quick" ? CorpusProfile::quick : CorpusProfile::full,
                     fixtures_dir, gcfg);
    // Bundled negative controls for the corpus (p = 2 clauses etc.).
    std::ifstream manifest(fixtures_dir + "/negative_controls.manifest");
    if (manifest) {
      std::ostringstream os;
      os << manifest.rdbuf();
      declared.load_manifest(os.str());
    }
  } else {
    targets.push_back(
        {stem_of(path), std::make_shared<const Group>(realize_file(path, order_cap))});
  }

  TableOptions topts;
  topts.max_order = order_cap;
  std::vector<std::vector<CheckLine>> results(targets.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < targets.size(); ++i)
      results[i] = run_suites_for(targets[i].group, targets[i].id, suite, topts);
  } else {
    // Fan out across groups; the merge below is in corpus order, so the
    // output is byte-identical to the sequential run.
    std::vector<std::future<std::vector<CheckLine>>> futures(targets.size());
    size_t next = 0;
    while (next < targets.size()) {
      size_t batch = std::min<size_t>(jobs, targets.size() - next);
      for (size_t b = 0; b < batch; ++b) {
        size_t idx = next + b;
        futures[idx] = std::async(std::launch::async, [&targets, idx, &suite, &topts] {
          return run_suites_for(targets[idx].group, targets[idx].id, suite, topts);
        });
      }
      for (size_t b = 0; b < batch; ++b) results[next + b] = futures[next + b].get();
      next += batch;
    }
  }

  ReportTally tally;
  for (const auto& group_lines : results)
    for (const auto& line : group_lines) {
      tally.account(line, declared);
      std::cout << line.render() << "\n";
    }
  if (format == "text") std::cout << tally.summary() << "\n";
  return tally.clean() ? 0 : 1;
}

int run_family(const std::string& name, const std::vector<std::string>& kv, bool emit,
               uint32_t order_cap) {
  uint32_t p = 0;
  std::vector<uint32_t> k_params;
  for (const std::string& token : kv) {
    auto eq = token.find('=');
    if (eq == std::string::npos) throw UsageError("expected p=<p> or k=<k>, got '" + token + "'");
    std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    if (key == "p") {
      p = static_cast<uint32_t>(std::stoul(value));
    } else if (key == "k") {
      std::istringstream vs(value);
      std::string part;
      while (std::getline(vs, part, ',')) k_params.push_back(static_cast<uint32_t>(std::stoul(part)));
    } else {
      throw UsageError("unknown family parameter '" + key + "'");
    }
  }
  if (p == 0) throw UsageError("family requires p=<prime>");
  FamilySpec spec = parse_family(name, p, k_params);
  GroupConfig cfg;
  cfg.closure_cap = std::max(order_cap, 20000u);
  Group g = build_family(spec, cfg);
  if (emit) {
    std::cout << emit_group_file(to_pc_spec(g));
    return 0;
  }
  SeriesReport rep = series_report(g);
  std::cout << family_id(spec) << " order=" << g.order() << " exponent=" << g.exponent()
            << " class=" << rep.nilpotence_class << " derived_length=" << rep.derived_length
            << " center=" << rep.center.order() << "\n";
  return 0;
}

int run_sigma(uint32_t count, uint64_t seed, uint32_t max_product, const std::string& format) {
  SigmaSampleConfig cfg;
  cfg.count = count;
  cfg.seed = seed;
  cfg.max_product = max_product;
  auto lines = sigma_random_suite(cfg);
  ReportTally tally;
  ExpectedFailures none;
  for (const auto& line : lines) {
    tally.account(line, none);
    std::cout << line.render() << "\n";
  }
  if (format == "text") std::cout << tally.summary() << "\n";
  return tally.clean() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact character-support workbench for finite p-groups"};
  app.require_subcommand(1);
  app.fallthrough();  // --format/--jobs may follow the subcommand
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "lines"}));
  uint32_t jobs = 1;
  app.add_option("--jobs", jobs, "parallelism degree (output is order-independent)");

  auto* table_cmd = app.add_subcommand("table", "print the exact character table");
  std::string table_path = "--";  // bare `table --` (or no file) reads stdin
  table_cmd->add_option("file", table_path, "group file, or -- for stdin");

  auto* support_cmd = app.add_subcommand("support", "print support profiles");
  std::string support_path;
  int64_t only_chi = -1;
  support_cmd->add_option("file", support_path, "group file")->required();
  support_cmd->add_option("--chi", only_chi, "restrict to one character");

  auto* verify_cmd = app.add_subcommand("verify", "run theorem verification suites");
  std::string verify_path, corpus_profile, suite = "all", fixtures_dir = "fixtures";
  std::vector<std::string> expect_fail;
  verify_cmd->add_option("file", verify_path, "group file");
  verify_cmd->add_option("--corpus", corpus_profile, "run over the benchmark corpus")
      ->check(CLI::IsMember({"quick", "full"}));
  verify_cmd->add_option("--suite", suite, "A, B, C, lemmas or all")
      ->check(CLI::IsMember({"A", "B", "C", "lemmas", "all"}));
  verify_cmd->add_option("--expect-fail", expect_fail,
                         "declare a negative control: suite.name[@group[:chi<k>]]");
  verify_cmd->add_option("--fixtures", fixtures_dir, "bundled fixtures directory");

  auto* family_cmd = app.add_subcommand("family", "build a corpus family member");
  std::string family_name;
  std::vector<std::string> family_kv;
  bool family_emit = false;
  family_cmd->add_option("name", family_name, "family name")->required();
  family_cmd->add_option("params", family_kv, "p=<p> [k=<k>]");
  family_cmd->add_flag("--emit", family_emit, "write the canonical group file");

  auto* sigma_cmd = app.add_subcommand("sigma", "randomized trace-support inequality suite");
  uint32_t sigma_count = 200;
  uint64_t sigma_seed = 0;
  uint32_t sigma_max = 729;
  sigma_cmd->add_option("--random", sigma_count, "number of sampled instances");
  sigma_cmd->add_option("--seed", sigma_seed, "sample seed");
  sigma_cmd->add_option("--max", sigma_max, "cap on |A|*|H|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    const uint32_t order_cap = order_cap_from_env();
    if (table_cmd->parsed()) return run_table(table_path, order_cap);
    if (support_cmd->parsed()) return run_support(support_path, only_chi, order_cap);
    if (verify_cmd->parsed())
      return run_verify(verify_path, corpus_profile, suite, expect_fail, fixtures_dir,
                        format, jobs, order_cap);
    if (family_cmd->parsed()) return run_family(family_name, family_kv, family_emit, order_cap);
    if (sigma_cmd->parsed()) return run_sigma(sigma_count, sigma_seed, sigma_max, format);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
