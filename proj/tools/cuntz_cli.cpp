// Command-line front end: check, enumerate, invert, compose, trees,
// diagonal, is-inner, tables. Every command prints human-readable text on
// stdout and can mirror the result as JSON (with a run manifest) via --json.
// Exit codes: 0 success (for `check`: automorphism), 1 negative/not found,
// 2 usage or computation error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cuntz/budget.hpp"
#include "cuntz/closures.hpp"
#include "cuntz/diagonal.hpp"
#include "cuntz/invert.hpp"
#include "cuntz/names.hpp"
#include "cuntz/search.hpp"
#include "cuntz/tree.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Accepts cycle text or one of the named generators (A, B, J, G, F, y, z,
/// id); named inputs below level k are embedded.
cuntz::Perm parse_perm_arg(int n, int k, const std::string& text) {
  using namespace cuntz;
  if (text == "id") return Perm::identity(n, k);
  const auto named = [&]() -> std::optional<Perm> {
    if (text == "A") return names::A();
    if (text == "B") return names::B();
    if (text == "J") return names::J();
    if (text == "G") return names::G();
    if (text == "F") return names::F();
    if (text == "y") return names::y();
    if (text == "z") return names::z();
    return std::nullopt;
  }();
  if (named) {
    if (named->n() != n) throw std::invalid_argument("named permutation needs n = 2");
    if (named->k() > k) throw std::invalid_argument("named permutation lives above level k");
    return named->k() == k ? *named : embed(*named, k - named->k());
  }
  return parse_cycles(n, k, text);
}

struct Output {
  std::string command;
  json config;
  json result;
  std::string json_path;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit() const {
    json manifest;
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["version"] = kVersion;
    manifest["result_digest"] = hex64(fnv1a64(result.dump()));
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cerr << "# " << command << " finished in " << ms << " ms, digest "
              << manifest["result_digest"].get<std::string>() << "\n";
    if (json_path.empty()) return;
    json doc;
    doc["manifest"] = manifest;
    doc["result"] = result;
    std::ofstream out(json_path);
    out << doc.dump(1) << "\n";
  }
};

json shape_to_json(const cuntz::TreeShape& s) {
  return json{{"code", s.code}, {"vertices", s.vertices}, {"aut_order", s.aut}};
}

json closure_to_json(const cuntz::ClosureState& c) {
  return json{{"covered", c.covered()},
              {"depth", c.depth},
              {"members", c.members},
              {"universe", c.universe_size}};
}

int cmd_check(int n, int k, const std::vector<std::string>& perms, Output& out) {
  using namespace cuntz;
  json results = json::array();
  bool all_auto = true;
  for (const auto& text : perms) {
    const Perm p = parse_perm_arg(n, k, text);
    const CheckReport r = check_permutation(p);
    json jr;
    jr["input"] = text;
    jr["permutation"] = format_cycles(p);
    json trees = json::array();
    for (std::size_t i = 0; i < r.shapes.size(); ++i) {
      json t;
      t["index"] = i + 1;
      t["is_tree"] = static_cast<bool>(r.is_tree[i]);
      if (r.is_tree[i]) t["shape"] = shape_to_json(r.shapes[i]);
      trees.push_back(std::move(t));
    }
    jr["trees"] = std::move(trees);
    jr["sigma"] = closure_to_json(r.sigma);
    jr["psi"] = closure_to_json(r.psi);
    jr["oracle"] = json{{"diag_nilpotent", r.oracle.diag},
                        {"dcorner_nilpotent", r.oracle.dcorner},
                        {"agrees", r.oracle_agrees}};
    jr["diag_automorphism"] = r.diag_automorphism;
    jr["automorphism"] = r.automorphism;
    results.push_back(jr);
    all_auto = all_auto && r.automorphism;

    std::cout << text << ": " << (r.automorphism ? "automorphism" : "not an automorphism")
              << "\n";
    for (std::size_t i = 0; i < r.shapes.size(); ++i)
      std::cout << "  f" << i + 1 << ": "
                << (r.is_tree[i] ? r.shapes[i].code + " |Aut| = " + std::to_string(r.shapes[i].aut)
                                 : std::string("not a rooted tree"))
                << "\n";
    std::cout << "  sigma: " << (r.sigma.covered() ? "covers" : "fails") << " at depth "
              << r.sigma.depth << "; psi: " << (r.psi.covered() ? "covers" : "fails")
              << " at depth " << r.psi.depth << "\n";
    std::cout << "  diagonal automorphism: " << (r.diag_automorphism ? "yes" : "no")
              << "; matrix oracle " << (r.oracle_agrees ? "agrees" : "DISAGREES") << "\n";
  }
  out.result = results.size() == 1 ? results[0] : json{{"batch", results}};
  out.emit();
  return all_auto ? 0 : 1;
}

const char* engine_name(cuntz::Engine e) {
  switch (e) {
    case cuntz::Engine::brute: return "brute";
    case cuntz::Engine::pipeline: return "pipeline";
    default: return "both";
  }
}

json report_to_json(const cuntz::ClassReport& r, bool count_only) {
  json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["engine"] = engine_name(r.engine);
  j["diag_count"] = r.diag_count;
  if (r.mode != cuntz::SearchMode::diag_only) j["automorphism_count"] = r.full_count;
  if (r.mode == cuntz::SearchMode::square_free) j["square_free_count"] = r.sf_count;
  j["shape_count"] = r.shape_count;
  j["complete"] = r.complete;
  j["max_sigma_depth"] = r.max_sigma_depth;
  j["max_psi_depth"] = r.max_psi_depth;
  if (r.classes_computed) {
    j["class_count"] = r.orbit_count;
    j["freeness_verified"] = r.freeness_verified;
    if (!count_only) {
      j["orbit_sizes"] = r.orbit_sizes;
      j["representatives"] = r.representatives;
    }
  }
  if (!count_only) {
    json stats = json::array();
    for (const auto& s : r.shape_stats)
      stats.push_back(json{{"codes", s.codes},
                           {"survivors_first_fixed", s.survivors_first_fixed},
                           {"labeled_tuples", s.labeled_tuples},
                           {"fiber_pass_first_fixed", s.fiber_pass_first_fixed}});
    j["shape_stats"] = std::move(stats);
  }
  return j;
}

int cmd_enumerate(const cuntz::SearchConfig& cfg, bool count_only, Output& out) {
  const cuntz::ClassReport r = cuntz::enumerate_automorphisms(cfg);
  out.result = report_to_json(r, count_only);
  std::cout << "n = " << r.n << ", k = " << r.k << " (engine " << engine_name(r.engine)
            << ")\n";
  std::cout << "  diagonal-automorphism permutations: " << r.diag_count << "\n";
  if (cfg.mode != cuntz::SearchMode::diag_only) {
    std::cout << "  automorphisms: " << r.full_count << "\n";
    if (r.classes_computed)
      std::cout << "  inner-equivalence classes: " << r.orbit_count
                << (r.freeness_verified ? " (free action)" : "") << "\n";
  }
  if (cfg.mode == cuntz::SearchMode::square_free)
    std::cout << "  square-free automorphisms: " << r.sf_count << "\n";
  if (!count_only && r.classes_computed && r.representatives.size() <= 100) {
    std::cout << "  representatives:\n";
    for (const auto& s : r.representatives) std::cout << "    " << s << "\n";
  }
  out.emit();
  return r.complete ? 0 : 1;
}

int cmd_invert(int n, int k, const std::string& text, int cutoff, Output& out) {
  using namespace cuntz;
  const Perm p = parse_perm_arg(n, k, text);
  const StabilizationResult r = invert_endo(p, cutoff);
  json j;
  j["input"] = text;
  j["cutoff_level"] = r.cutoff;
  j["memory_capped"] = r.memory_capped;
  j["iterations"] = r.iterations;
  j["found"] = r.found;
  if (r.found) {
    const bool coupled = verify_coupled(p, r.inverse);
    j["inverse"] = format_cycles(r.inverse);
    j["inverse_level"] = r.level;
    j["coupled_equations"] = coupled;
    std::cout << "inverse at level " << r.level << ": " << format_cycles(r.inverse) << "\n";
    std::cout << "coupled equations: " << (coupled ? "hold" : "FAIL") << "\n";
  } else {
    std::cout << "not stabilized by level " << r.cutoff
              << (r.memory_capped ? " (memory budget cap)" : "")
              << "; either not an automorphism or the cap is too small\n";
  }
  out.result = j;
  out.emit();
  return r.found ? 0 : 1;
}

int cmd_compose(int n, int k1, const std::string& t1, int k2, const std::string& t2,
                Output& out) {
  using namespace cuntz;
  const Perm p = parse_perm_arg(n, k1, t1);
  const Perm q = parse_perm_arg(n, k2, t2);
  const Perm c = convolve(p, q);
  const Perm small = strip_trailing_id(c);
  json j;
  j["level"] = c.k();
  j["cycles"] = format_cycles(c);
  j["reduced_level"] = small.k();
  j["is_identity"] = c.is_identity();
  out.result = j;
  std::cout << format_cycles(c) << "\n";
  std::cout << "level " << c.k();
  if (small.k() < c.k()) std::cout << " (factors through level " << small.k() << ")";
  std::cout << "\n";
  out.emit();
  return 0;
}

int cmd_trees(int n, int k, const std::string& text, bool labels, const std::string& dot_path,
              Output& out) {
  using namespace cuntz;
  const Perm p = parse_perm_arg(n, k, text);
  const TreeTuple t = extract_maps(p);
  json j;
  json trees = json::array();
  bool all_trees = true;
  for (std::size_t i = 0; i < t.maps.size(); ++i) {
    json e;
    e["index"] = i + 1;
    const bool ok = is_rooted_tree(t.maps[i]);
    e["is_tree"] = ok;
    all_trees = all_trees && ok;
    if (ok) {
      e["shape"] = shape_to_json(shape_of(t.maps[i]));
      e["root"] = to_string(word_from_index(n, k - 1, tree_root(t.maps[i])));
      e["height"] = height_of(t.maps[i]);
    }
    trees.push_back(std::move(e));
    std::cout << "f" << i + 1 << ": "
              << (ok ? "rooted tree, root " +
                           to_string(word_from_index(n, k - 1, tree_root(t.maps[i]))) +
                           ", |Aut| = " + std::to_string(shape_of(t.maps[i]).aut)
                     : "not a rooted tree")
              << "\n";
  }
  j["trees"] = std::move(trees);
  if (all_trees) {
    const std::string dot = to_dot(t, labels);
    j["dot"] = dot;
    if (!dot_path.empty()) {
      std::ofstream f(dot_path);
      f << dot;
    } else {
      std::cout << dot;
    }
  }
  out.result = j;
  out.emit();
  return 0;
}

int cmd_diagonal(int n, int k, const std::string& text, int maxlen, Output& out) {
  using namespace cuntz;
  const Perm p = parse_perm_arg(n, k, text);
  const DiagTable t = diag_table(p, maxlen);
  json rows = json::array();
  for (const auto& [alpha, sum] : t.rows) {
    json r;
    r["alpha"] = to_string(alpha);
    json terms = json::array();
    for (const auto& w : sum.words) terms.push_back(to_string(w));
    r["image"] = std::move(terms);
    rows.push_back(std::move(r));
  }
  out.result = json{{"n", n}, {"k", k}, {"maxlen", maxlen}, {"rows", rows}};
  std::cout << to_text(t);
  out.emit();
  return 0;
}

int cmd_is_inner(int n, int k, const std::string& text, Output& out) {
  using namespace cuntz;
  const Perm p = parse_perm_arg(n, k, text);
  const Ternary v = is_inner(p);
  const char* verdict = v == Ternary::yes ? "inner" : v == Ternary::no ? "outer" : "unknown";
  out.result = json{{"input", text}, {"verdict", verdict}};
  std::cout << verdict << "\n";
  out.emit();
  return 0;
}

struct TableCell {
  std::uint64_t n_count = 0, c_count = 0, sf = 0;
  bool have = false;
};

int cmd_tables(bool long_run, int jobs, const std::string& csv_path, Output& out) {
  using namespace cuntz;
  // desk-scale cells; (4,2) dwarfs the rest and stays behind --long-run
  std::vector<std::pair<int, int>> cells{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {4, 1}};
  if (long_run) cells.emplace_back(4, 2);
  std::map<std::pair<int, int>, TableCell> table;
  for (auto [n, k] : cells) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.mode = SearchMode::square_free;
    cfg.engine = k == 1 ? Engine::brute : Engine::pipeline;
    cfg.jobs = jobs;
    cfg.long_run = long_run;
    const ClassReport r = enumerate_automorphisms(cfg);
    table[{n, k}] = {r.full_count, r.orbit_count, r.sf_count, true};
  }
  std::ostringstream csv;
  csv << "quantity,k,n=2,n=3,n=4\n";
  for (const std::string q : {"N", "C", "sf"}) {
    for (int k = 1; k <= 4; ++k) {
      csv << q << "," << k;
      for (int n : {2, 3, 4}) {
        csv << ",";
        auto it = table.find({n, k});
        if (it != table.end()) {
          const auto& c = it->second;
          csv << (q == "N" ? c.n_count : q == "C" ? c.c_count : c.sf);
        }
      }
      csv << "\n";
    }
  }
  const std::string text = csv.str();
  std::cout << text;
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    f << text;
  }
  json j;
  for (const auto& [nk, c] : table)
    j["n" + std::to_string(nk.first) + "_k" + std::to_string(nk.second)] =
        json{{"N", c.n_count}, {"C", c.c_count}, {"sf", c.sf}};
  out.result = j;
  out.emit();
  return 0;
}

void apply_config_file(const std::string& path, cuntz::SearchConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "jobs") cfg.jobs = std::stoi(val);
    else if (key == "long_run") cfg.long_run = val == "1" || val == "true";
    else if (key == "checkpoint") cfg.checkpoint_path = val;
    else if (key == "checkpoint_every") cfg.checkpoint_every = std::stoull(val);
    else throw std::runtime_error("unknown config key: " + key);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localized endomorphisms of Cuntz algebras from permutation unitaries"};
  app.set_version_flag("--version", std::string("cuntz ") + kVersion);
  app.require_subcommand(1);

  int n = 2, k = 2;
  std::string perm_text, perm_text2, json_path, dot_path, csv_path, config_path,
      checkpoint_path;
  std::string engine = "pipeline";
  int cutoff = -1, maxlen = 3, jobs = 1, k2 = 1;
  bool diag_only = false, count_only = false, classes = false, square_free = false,
       long_run = false, no_labels = false;
  std::uint64_t checkpoint_every = 0;
  std::vector<std::string> batch;

  auto add_nk = [&](CLI::App* c) {
    c->add_option("-n,--n", n, "alphabet size")->required();
    c->add_option("-k,--k", k, "level")->required();
  };
  auto add_json = [&](CLI::App* c) { c->add_option("--json", json_path, "write JSON here"); };

  auto* c_check = app.add_subcommand("check", "decide whether lambda_w is an automorphism");
  add_nk(c_check);
  c_check->add_option("perm", batch, "cycle text, named generator, or @file of one per line")
      ->required();
  add_json(c_check);

  auto* c_enum = app.add_subcommand("enumerate", "census at level k");
  add_nk(c_enum);
  c_enum->add_flag("--diag-only", diag_only, "count diagonal automorphisms only");
  c_enum->add_flag("--count-only", count_only, "omit representatives from output");
  c_enum->add_flag("--classes", classes, "list class representatives");
  c_enum->add_flag("--square-free", square_free, "also count square-free automorphisms");
  c_enum->add_option("--engine", engine, "brute | pipeline | both");
  c_enum->add_flag("--long-run", long_run, "unlock cells that need serious compute");
  c_enum->add_option("--jobs", jobs, "worker threads");
  c_enum->add_option("--checkpoint", checkpoint_path, "checkpoint file for resumable runs");
  c_enum->add_option("--checkpoint-every", checkpoint_every, "candidates between checkpoints");
  c_enum->add_option("--config", config_path, "key=value file with run options");
  add_json(c_enum);

  auto* c_inv = app.add_subcommand("invert", "invert by stabilization");
  add_nk(c_inv);
  c_inv->add_option("perm", perm_text)->required();
  c_inv->add_option("--cutoff", cutoff, "level cutoff (default: worst-case bound)");
  add_json(c_inv);

  auto* c_comp = app.add_subcommand("compose", "convolution product of two permutations");
  c_comp->add_option("-n,--n", n)->required();
  c_comp->add_option("--k1", k, "level of the first factor")->required();
  c_comp->add_option("perm1", perm_text)->required();
  c_comp->add_option("--k2", k2, "level of the second factor")->required();
  c_comp->add_option("perm2", perm_text2)->required();
  add_json(c_comp);

  auto* c_trees = app.add_subcommand("trees", "extract and render the tree maps");
  add_nk(c_trees);
  c_trees->add_option("perm", perm_text)->required();
  c_trees->add_flag("--no-labels", no_labels, "render canonical positions instead of words");
  c_trees->add_option("--dot", dot_path, "write dot text here instead of stdout");
  add_json(c_trees);

  auto* c_diag = app.add_subcommand("diagonal", "action on diagonal projections");
  add_nk(c_diag);
  c_diag->add_option("perm", perm_text)->required();
  c_diag->add_option("--max-len", maxlen, "longest source word")->required();
  add_json(c_diag);

  auto* c_inner = app.add_subcommand("is-inner", "test inner-ness at level k");
  add_nk(c_inner);
  c_inner->add_option("perm", perm_text)->required();
  add_json(c_inner);

  auto* c_tables = app.add_subcommand("tables", "the N / C / sf tables at desk scale");
  c_tables->add_flag("--long-run", long_run);
  c_tables->add_option("--jobs", jobs);
  c_tables->add_option("--csv", csv_path, "write CSV here");
  add_json(c_tables);

  CLI11_PARSE(app, argc, argv);

  Output out;
  out.json_path = json_path;
  for (int i = 0; i < argc; ++i) {
    if (i) out.command += ' ';
    out.command += argv[i];
  }

  try {
    if (app.got_subcommand(c_check)) {
      out.config = json{{"n", n}, {"k", k}};
      std::vector<std::string> perms;
      for (const auto& b : batch) {
        if (!b.empty() && b[0] == '@') {
          std::ifstream f(b.substr(1));
          if (!f) throw std::runtime_error("cannot open batch file " + b.substr(1));
          std::string line;
          while (std::getline(f, line))
            if (!line.empty()) perms.push_back(line);
        } else {
          perms.push_back(b);
        }
      }
      return cmd_check(n, k, perms, out);
    }
    if (app.got_subcommand(c_enum)) {
      cuntz::SearchConfig cfg;
      cfg.n = n;
      cfg.k = k;
      cfg.mode = square_free ? cuntz::SearchMode::square_free
                 : diag_only ? cuntz::SearchMode::diag_only
                             : cuntz::SearchMode::full;
      cfg.engine = engine == "brute"  ? cuntz::Engine::brute
                   : engine == "both" ? cuntz::Engine::both
                                      : cuntz::Engine::pipeline;
      cfg.jobs = jobs;
      cfg.long_run = long_run;
      cfg.checkpoint_path = checkpoint_path;
      cfg.checkpoint_every = checkpoint_every;
      if (!config_path.empty()) apply_config_file(config_path, cfg);
      out.config = json{{"n", n},
                        {"k", k},
                        {"mode", diag_only ? "diag-only" : square_free ? "square-free" : "full"},
                        {"engine", engine},
                        {"jobs", cfg.jobs},
                        {"long_run", cfg.long_run}};
      return cmd_enumerate(cfg, count_only && !classes, out);
    }
    if (app.got_subcommand(c_inv)) {
      out.config = json{{"n", n}, {"k", k}, {"cutoff", cutoff}};
      return cmd_invert(n, k, perm_text, cutoff, out);
    }
    if (app.got_subcommand(c_comp)) {
      out.config = json{{"n", n}, {"k1", k}, {"k2", k2}};
      return cmd_compose(n, k, perm_text, k2, perm_text2, out);
    }
    if (app.got_subcommand(c_trees)) {
      out.config = json{{"n", n}, {"k", k}, {"labels", !no_labels}};
      return cmd_trees(n, k, perm_text, !no_labels, dot_path, out);
    }
    if (app.got_subcommand(c_diag)) {
      out.config = json{{"n", n}, {"k", k}, {"maxlen", maxlen}};
      return cmd_diagonal(n, k, perm_text, maxlen, out);
    }
    if (app.got_subcommand(c_inner)) {
      out.config = json{{"n", n}, {"k", k}};
      return cmd_is_inner(n, k, perm_text, out);
    }
    if (app.got_subcommand(c_tables)) {
      out.config = json{{"long_run", long_run}, {"jobs", jobs}};
      return cmd_tables(long_run, jobs, csv_path, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
