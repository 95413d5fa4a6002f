#include "cuntz/search.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "cuntz/closures.hpp"
#include "cuntz/errors.hpp"
#include "cuntz/invert.hpp"
#include "cuntz/names.hpp"

namespace cuntz {

namespace {

std::uint64_t factorial(std::uint64_t m) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= m; ++i) r *= i;
  return r;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// All of P_n^k as explicit permutations, in lexicographic table order.
std::vector<Perm> whole_group(int n, int k) {
  const auto size = pow_nk(n, k);
  if (size > 9) throw ResourceError("whole_group: n^k! too large to enumerate");
  std::vector<std::uint32_t> t(size);
  std::iota(t.begin(), t.end(), 0u);
  std::vector<Perm> out;
  out.reserve(factorial(size));
  do {
    out.push_back(Perm::from_table(n, k, t));
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

// ---------------------------------------------------------------------------
// brute engine
// ---------------------------------------------------------------------------

struct BruteAccum {
  std::uint64_t diag = 0;
  std::uint64_t full = 0;
  std::vector<Perm> autos;
  int max_sigma_depth = 0;
  int max_psi_depth = 0;
};

void brute_scan_chunk(int n, int k, std::uint32_t first, SearchMode mode, BruteAccum& acc) {
  const auto size = pow_nk(n, k);
  std::vector<std::uint32_t> t(size);
  t[0] = first;
  std::uint32_t next = 0;
  for (std::size_t i = 1; i < size; ++i) {
    if (next == first) ++next;
    t[i] = next++;
  }
  do {
    Perm p = Perm::from_table(n, k, t);
    const auto sigma = sigma_closure(extract_maps(p));
    acc.max_sigma_depth = std::max(acc.max_sigma_depth, sigma.depth);
    if (!sigma.covered()) continue;
    ++acc.diag;
    if (mode == SearchMode::diag_only) continue;
    const auto psi = psi_closure(p);
    acc.max_psi_depth = std::max(acc.max_psi_depth, psi.depth);
    if (!psi.covered()) continue;
    ++acc.full;
    acc.autos.push_back(std::move(p));
  } while (std::next_permutation(t.begin() + 1, t.end()));
}

ClassReport run_brute(const SearchConfig& cfg, const PermSink& sink) {
  const auto size = pow_nk(cfg.n, cfg.k);
  ClassReport rep;
  rep.n = cfg.n;
  rep.k = cfg.k;
  rep.mode = cfg.mode;
  rep.engine = Engine::brute;
  rep.shape_count =
      enumerate_shapes(static_cast<int>(pow_nk(cfg.n, cfg.k - 1)), cfg.n).size();

  std::vector<BruteAccum> accs(size);
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (std::uint32_t f = 0; f < size; ++f)
      brute_scan_chunk(cfg.n, cfg.k, f, cfg.mode, accs[f]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        for (std::uint32_t f = static_cast<std::uint32_t>(w); f < size;
             f += static_cast<std::uint32_t>(jobs))
          brute_scan_chunk(cfg.n, cfg.k, f, cfg.mode, accs[f]);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<Perm> autos;
  for (auto& a : accs) {
    rep.diag_count += a.diag;
    rep.full_count += a.full;
    rep.max_sigma_depth = std::max(rep.max_sigma_depth, a.max_sigma_depth);
    rep.max_psi_depth = std::max(rep.max_psi_depth, a.max_psi_depth);
    for (auto& p : a.autos) autos.push_back(std::move(p));
  }

  if (cfg.mode != SearchMode::diag_only) {
    if (sink)
      for (const auto& p : autos) sink(p);
    ClassReport orbits = inner_orbits(autos);
    rep.orbit_count = orbits.orbit_count;
    rep.orbit_sizes = std::move(orbits.orbit_sizes);
    rep.representatives = std::move(orbits.representatives);
    rep.freeness_verified = orbits.freeness_verified;
    rep.classes_computed = true;
    if (cfg.mode == SearchMode::square_free)
      for (const auto& p : autos)
        if (is_square_free(p)) ++rep.sf_count;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// pipeline engine
// ---------------------------------------------------------------------------

struct TreeFrame {
  const TreeShape* shape = nullptr;
  std::vector<int> need;      // preimage slots consumed per canonical vertex
  std::vector<int> prev_sib;  // previous identical-subtree sibling, or -1
};

TreeFrame make_frame(const TreeShape& s) {
  TreeFrame fr;
  fr.shape = &s;
  const int d = s.vertices;
  fr.need.assign(static_cast<std::size_t>(d), 0);
  fr.prev_sib.assign(static_cast<std::size_t>(d), -1);
  const auto codes = subtree_codes(s);
  for (int v = 1; v < d; ++v) {
    const int pa = s.parent[static_cast<std::size_t>(v)];
    ++fr.need[static_cast<std::size_t>(pa)];
    for (int u = v - 1; u > 0; --u)
      if (s.parent[static_cast<std::size_t>(u)] == pa &&
          codes[static_cast<std::size_t>(u)] == codes[static_cast<std::size_t>(v)]) {
        fr.prev_sib[static_cast<std::size_t>(v)] = u;
        break;
      }
  }
  if (d > 0) ++fr.need[0];  // the root's self-loop consumes one slot
  return fr;
}

TreeMap map_from_assignment(const TreeShape& s, int n, int k,
                            const std::vector<std::uint32_t>& word_of) {
  TreeMap f;
  f.n = n;
  f.k = k;
  f.table.resize(word_of.size());
  for (std::size_t v = 0; v < word_of.size(); ++v) {
    const int pa = s.parent[v];
    f.table[word_of[v]] = pa < 0 ? word_of[v] : word_of[static_cast<std::size_t>(pa)];
  }
  return f;
}

/// Relabelings fixing the canonically labeled instantiation of `s`; there
/// are |Aut(s)| of them.
std::vector<Perm> canonical_stabilizer(const TreeShape& s, int n, int k) {
  const TreeMap f = instantiate(s, n, k);
  const std::uint32_t d = f.domain_size();
  std::vector<Perm> out;
  std::vector<std::uint32_t> t(d);
  std::iota(t.begin(), t.end(), 0u);
  do {
    bool ok = true;
    for (std::uint32_t a = 0; a < d && ok; ++a) ok = t[f.table[a]] == f.table[t[a]];
    if (ok) out.push_back(Perm::from_table(n, k - 1, t));
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

struct PipelineState {
  std::uint64_t next_unit = 0;
  std::uint64_t diag = 0;
  std::uint64_t full_scaled = 0;
  std::uint64_t candidates = 0;
  int max_sigma_depth = 0;
  int max_psi_depth = 0;
  std::vector<ShapeTupleStat> stats;
  // psi-passing permutations with the first tree canonically labeled
  std::vector<std::pair<std::uint64_t, std::string>> reps;  // (unit, cycles)
};

nlohmann::json state_to_json(const SearchConfig& cfg, const PipelineState& st) {
  nlohmann::json stats = nlohmann::json::array();
  for (const auto& s : st.stats)
    stats.push_back({{"codes", s.codes},
                     {"survivors", s.survivors_first_fixed},
                     {"labeled", s.labeled_tuples},
                     {"fiber_pass", s.fiber_pass_first_fixed}});
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& [unit, cyc] : st.reps) reps.push_back({{"unit", unit}, {"perm", cyc}});
  return nlohmann::json{{"n", cfg.n},
                        {"k", cfg.k},
                        {"mode", static_cast<int>(cfg.mode)},
                        {"next_unit", st.next_unit},
                        {"diag", st.diag},
                        {"full_scaled", st.full_scaled},
                        {"candidates", st.candidates},
                        {"max_sigma_depth", st.max_sigma_depth},
                        {"max_psi_depth", st.max_psi_depth},
                        {"stats", stats},
                        {"reps", reps}};
}

bool state_from_json(const nlohmann::json& j, const SearchConfig& cfg, PipelineState& st) {
  if (j.value("n", -1) != cfg.n || j.value("k", -1) != cfg.k ||
      j.value("mode", -1) != static_cast<int>(cfg.mode))
    return false;
  st.next_unit = j.at("next_unit").get<std::uint64_t>();
  st.diag = j.at("diag").get<std::uint64_t>();
  st.full_scaled = j.at("full_scaled").get<std::uint64_t>();
  st.candidates = j.at("candidates").get<std::uint64_t>();
  st.max_sigma_depth = j.at("max_sigma_depth").get<int>();
  st.max_psi_depth = j.at("max_psi_depth").get<int>();
  for (const auto& e : j.at("stats")) {
    ShapeTupleStat s;
    s.codes = e.at("codes").get<std::vector<std::string>>();
    s.survivors_first_fixed = e.at("survivors").get<std::uint64_t>();
    s.labeled_tuples = e.at("labeled").get<std::uint64_t>();
    s.fiber_pass_first_fixed = e.at("fiber_pass").get<std::uint64_t>();
    st.stats.push_back(std::move(s));
  }
  for (const auto& e : j.at("reps"))
    st.reps.emplace_back(e.at("unit").get<std::uint64_t>(), e.at("perm").get<std::string>());
  return true;
}

class PipelineRun {
public:
  explicit PipelineRun(const SearchConfig& cfg) : cfg_(cfg) {
    d_ = static_cast<std::uint32_t>(pow_nk(cfg.n, cfg.k - 1));
    shapes_ = enumerate_shapes(static_cast<int>(d_), cfg.n);
    frames_.reserve(shapes_.size());
    for (const auto& s : shapes_) frames_.push_back(make_frame(s));
    nfact_ = factorial(static_cast<std::uint64_t>(cfg.n));
    dfact_ = factorial(d_);
    arrangements_.clear();
    std::vector<std::uint8_t> m(static_cast<std::size_t>(cfg.n));
    std::iota(m.begin(), m.end(), static_cast<std::uint8_t>(0));
    do {
      arrangements_.push_back(m);
    } while (std::next_permutation(m.begin(), m.end()));
  }

  PipelineState run() {
    PipelineState st;
    maybe_load(st);
    const std::uint64_t units = total_units();
    for (std::uint64_t u = st.next_unit; u < units; ++u) {
      process_unit(u, st);
      st.next_unit = u + 1;
      maybe_save(st);
    }
    save(st);
    return st;
  }

  const std::vector<TreeShape>& shapes() const { return shapes_; }
  std::size_t first_shape_of_unit(std::uint64_t unit) const {
    for (int i = cfg_.n - 1; i > 0; --i) unit /= shapes_.size();
    return static_cast<std::size_t>(unit % shapes_.size());
  }
  std::uint64_t dfact() const { return dfact_; }
  std::uint32_t d() const { return d_; }

private:
  std::uint64_t total_units() const {
    std::uint64_t u = 1;
    for (int i = 0; i < cfg_.n; ++i) u *= shapes_.size();
    return u;
  }

  void maybe_load(PipelineState& st) {
    if (cfg_.checkpoint_path.empty()) return;
    std::ifstream in(cfg_.checkpoint_path);
    if (!in) return;
    nlohmann::json j;
    in >> j;
    PipelineState loaded;
    if (state_from_json(j, cfg_, loaded)) st = std::move(loaded);
  }

  void maybe_save(const PipelineState& st) {
    if (cfg_.checkpoint_path.empty() || cfg_.checkpoint_every == 0) return;
    if (st.candidates - last_saved_ < cfg_.checkpoint_every) return;
    save(st);
    last_saved_ = st.candidates;
  }

  void save(const PipelineState& st) {
    if (cfg_.checkpoint_path.empty()) return;
    std::ofstream out(cfg_.checkpoint_path);
    out << state_to_json(cfg_, st).dump(1) << "\n";
  }

  void process_unit(std::uint64_t unit, PipelineState& st) {
    std::vector<std::size_t> tup(static_cast<std::size_t>(cfg_.n));
    {
      std::uint64_t u = unit;
      for (int i = cfg_.n - 1; i >= 0; --i) {
        tup[static_cast<std::size_t>(i)] = u % shapes_.size();
        u /= shapes_.size();
      }
    }

    // first tree: canonical labeling (word v at vertex v)
    std::vector<int> budget(d_, 0);
    for (std::uint32_t w = 0; w < d_; ++w)
      budget[w] = cfg_.n - frames_[tup[0]].need[w];
    std::vector<TreeMap> maps;
    maps.push_back(instantiate(*frames_[tup[0]].shape, cfg_.n, cfg_.k));

    std::vector<std::vector<std::uint32_t>> survivors;
    backtrack_tree(1, tup, budget, maps, survivors, st);
    if (survivors.empty()) return;

    ShapeTupleStat stat;
    for (auto t : tup) stat.codes.push_back(shapes_[t].code);
    const std::uint64_t scale = dfact_ / shapes_[tup[0]].aut;
    stat.survivors_first_fixed = survivors.size();
    stat.labeled_tuples = survivors.size() * scale;
    st.diag += stat.labeled_tuples * ipow(nfact_, d_);

    if (cfg_.mode != SearchMode::diag_only) {
      for (const auto& flat : survivors) {
        std::vector<TreeMap> tuple_maps;
        tuple_maps.push_back(maps[0]);
        for (int j = 1; j < cfg_.n; ++j) {
          TreeMap f;
          f.n = cfg_.n;
          f.k = cfg_.k;
          f.table.assign(flat.begin() + (j - 1) * static_cast<std::ptrdiff_t>(d_),
                         flat.begin() + j * static_cast<std::ptrdiff_t>(d_));
          tuple_maps.push_back(std::move(f));
        }
        stat.fiber_pass_first_fixed += scan_fiber(tuple_maps, unit, st);
      }
      st.full_scaled += stat.fiber_pass_first_fixed * scale;
    }
    st.stats.push_back(std::move(stat));
  }

  void backtrack_tree(int j, const std::vector<std::size_t>& tup, std::vector<int>& budget,
                      std::vector<TreeMap>& maps,
                      std::vector<std::vector<std::uint32_t>>& out, PipelineState& st) {
    if (j == cfg_.n) {
      std::vector<std::uint32_t> flat;
      flat.reserve(static_cast<std::size_t>(cfg_.n - 1) * d_);
      for (int t = 1; t < cfg_.n; ++t)
        flat.insert(flat.end(), maps[static_cast<std::size_t>(t)].table.begin(),
                    maps[static_cast<std::size_t>(t)].table.end());
      out.push_back(std::move(flat));
      return;
    }
    const TreeFrame& fr = frames_[tup[static_cast<std::size_t>(j)]];
    // each tree owns its assignment buffer: the deeper trees' backtracking
    // must not disturb the labels this level is still extending
    std::vector<std::uint32_t> word_of(d_);
    std::vector<char> used(d_, 0);
    assign_vertex(0, j, fr, tup, budget, maps, word_of, used, out, st);
  }

  void assign_vertex(int v, int j, const TreeFrame& fr, const std::vector<std::size_t>& tup,
                     std::vector<int>& budget, std::vector<TreeMap>& maps,
                     std::vector<std::uint32_t>& word_of, std::vector<char>& used,
                     std::vector<std::vector<std::uint32_t>>& out, PipelineState& st) {
    if (v == static_cast<int>(d_)) {
      maps.push_back(map_from_assignment(*fr.shape, cfg_.n, cfg_.k, word_of));
      // sigma over a partial tuple contains the full-tuple closure, so a
      // failed cover here prunes soundly
      const auto sig = sigma_closure(TreeTuple{cfg_.n, cfg_.k, maps});
      st.max_sigma_depth = std::max(st.max_sigma_depth, sig.depth);
      if (sig.covered()) backtrack_tree(j + 1, tup, budget, maps, out, st);
      maps.pop_back();
      return;
    }
    const bool last_tree = j == cfg_.n - 1;
    const int need = fr.need[static_cast<std::size_t>(v)];
    std::uint32_t lo = 0;
    const int sib = fr.prev_sib[static_cast<std::size_t>(v)];
    if (sib > 0) lo = word_of[static_cast<std::size_t>(sib)] + 1;
    for (std::uint32_t w = lo; w < d_; ++w) {
      if (used[w]) continue;
      if (last_tree ? budget[w] != need : budget[w] < need) continue;
      used[w] = 1;
      word_of[static_cast<std::size_t>(v)] = w;
      budget[w] -= need;
      assign_vertex(v + 1, j, fr, tup, budget, maps, word_of, used, out, st);
      budget[w] += need;
      used[w] = 0;
    }
  }

  std::uint64_t scan_fiber(const std::vector<TreeMap>& maps, std::uint64_t unit,
                           PipelineState& st) {
    const int n = cfg_.n;
    const std::uint32_t d = d_;
    // the n preimage pairs (i, a) of each word b, fixed order
    std::vector<std::uint32_t> pre(static_cast<std::size_t>(n) * d);
    {
      std::vector<int> fill(d, 0);
      for (int i = 0; i < n; ++i)
        for (std::uint32_t a = 0; a < d; ++a) {
          const std::uint32_t b = maps[static_cast<std::size_t>(i)].table[a];
          if (fill[b] >= n) throw std::logic_error("scan_fiber: preimage-sum law violated");
          pre[static_cast<std::size_t>(b) * n + fill[b]++] =
              static_cast<std::uint32_t>(i + n * a);
        }
    }
    const std::uint64_t fiber = ipow(nfact_, d);
    std::vector<std::uint32_t> digit(d, 0);
    std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * d);
    std::uint64_t pass = 0;
    for (std::uint64_t c = 0; c < fiber; ++c) {
      for (std::uint32_t b = 0; b < d; ++b) {
        const auto& arr = arrangements_[digit[b]];
        for (int s = 0; s < n; ++s)
          table[pre[static_cast<std::size_t>(b) * n + s]] =
              static_cast<std::uint32_t>(b + d * arr[static_cast<std::size_t>(s)]);
      }
      // `table` is sigma^{-1}; invert on the fly
      std::vector<std::uint32_t> sig(table.size());
      for (std::uint32_t x = 0; x < table.size(); ++x) sig[table[x]] = x;
      Perm p = Perm::from_table(cfg_.n, cfg_.k, std::move(sig));
      const auto psi = psi_closure(p);
      st.max_psi_depth = std::max(st.max_psi_depth, psi.depth);
      if (psi.covered()) {
        ++pass;
        st.reps.emplace_back(unit, format_cycles(p));
      }
      // odometer
      for (std::uint32_t b = 0; b < d; ++b) {
        if (++digit[b] < nfact_) break;
        digit[b] = 0;
      }
    }
    st.candidates += fiber;
    return pass;
  }

  SearchConfig cfg_;
  std::uint32_t d_ = 0;
  std::vector<TreeShape> shapes_;
  std::vector<TreeFrame> frames_;
  std::vector<std::vector<std::uint8_t>> arrangements_;  // all n! letter maps
  std::uint64_t nfact_ = 1;
  std::uint64_t dfact_ = 1;
  std::uint64_t last_saved_ = 0;
};

struct OrbitInfo {
  std::uint64_t size = 0;
  std::string min_cycles;
  Perm representative;  // element with canonical first tree
  bool full_size = false;
};

ClassReport run_pipeline(const SearchConfig& cfg, const PermSink& sink) {
  PipelineRun run(cfg);
  PipelineState st = run.run();

  ClassReport rep;
  rep.n = cfg.n;
  rep.k = cfg.k;
  rep.mode = cfg.mode;
  rep.engine = Engine::pipeline;
  rep.shape_count = run.shapes().size();
  rep.shape_stats = st.stats;
  rep.diag_count = st.diag;
  rep.max_sigma_depth = st.max_sigma_depth;
  rep.max_psi_depth = st.max_psi_depth;
  if (cfg.mode == SearchMode::diag_only) return rep;

  rep.full_count = st.full_scaled;

  // group representatives by unit; within a unit, inner equivalence is the
  // orbit relation of the canonical first tree's stabilizer
  std::map<std::uint64_t, std::vector<Perm>> by_unit;
  for (const auto& [unit, cyc] : st.reps)
    by_unit[unit].push_back(parse_cycles(cfg.n, cfg.k, cyc));

  const std::vector<Perm> group = whole_group(cfg.n, cfg.k - 1);
  std::map<std::size_t, std::vector<Perm>> stab_cache;
  std::vector<OrbitInfo> orbits;

  for (auto& [unit, perms] : by_unit) {
    const std::size_t shape_idx = run.first_shape_of_unit(unit);
    auto it = stab_cache.find(shape_idx);
    if (it == stab_cache.end())
      it = stab_cache
               .emplace(shape_idx,
                        canonical_stabilizer(run.shapes()[shape_idx], cfg.n, cfg.k))
               .first;
    const auto& gc = it->second;

    std::map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < perms.size(); ++i)
      index.emplace(encode_compact(perms[i]), i);
    std::vector<char> visited(perms.size(), 0);
    for (std::size_t i = 0; i < perms.size(); ++i) {
      if (visited[i]) continue;
      // the G(c)-orbit of perms[i] inside this unit's representative list
      std::vector<std::size_t> members{i};
      visited[i] = 1;
      for (std::size_t q = 0; q < members.size(); ++q)
        for (const auto& phi : gc) {
          const auto code = encode_compact(relabel(perms[members[q]], phi));
          auto f = index.find(code);
          if (f == index.end())
            throw std::logic_error("pipeline: stabilizer left the representative set");
          if (!visited[f->second]) {
            visited[f->second] = 1;
            members.push_back(f->second);
          }
        }
      // full relabeling orbit: size, minimal cycle string
      OrbitInfo info;
      info.representative = perms[i];
      std::set<std::uint64_t> seen;
      std::string best;
      for (const auto& phi : group) {
        Perm q = relabel(perms[i], phi);
        if (seen.insert(encode_compact(q)).second) {
          std::string cyc = format_cycles(q);
          if (best.empty() || cyc < best) best = std::move(cyc);
        }
      }
      info.size = seen.size();
      info.min_cycles = std::move(best);
      info.full_size = info.size == run.dfact();
      // in the free case each global orbit contributes |G(c)| representatives
      if (info.full_size && members.size() != gc.size())
        throw std::logic_error("pipeline: orbit representative count mismatch");
      orbits.push_back(std::move(info));
    }
  }

  std::sort(orbits.begin(), orbits.end(),
            [](const OrbitInfo& a, const OrbitInfo& b) { return a.min_cycles < b.min_cycles; });
  rep.orbit_count = orbits.size();
  rep.freeness_verified = !orbits.empty();
  std::uint64_t total = 0;
  for (const auto& o : orbits) {
    rep.orbit_sizes.push_back(o.size);
    rep.representatives.push_back(o.min_cycles);
    rep.freeness_verified = rep.freeness_verified && o.full_size;
    total += o.size;
  }
  rep.classes_computed = true;
  if (total != rep.full_count)
    throw std::logic_error("pipeline: orbit sizes do not sum to the census count");

  // stream the full automorphism set / square-free scan, orbit by orbit
  const bool want_stream = static_cast<bool>(sink) || cfg.mode == SearchMode::square_free;
  if (want_stream) {
    const int jobs = std::max(1, cfg.jobs);
    for (const auto& o : orbits) {
      if (o.full_size && !sink && jobs > 1) {
        // counting-only scan over a free orbit parallelizes cleanly
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(jobs), 0);
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
          pool.emplace_back([&, w] {
            for (std::size_t g = static_cast<std::size_t>(w); g < group.size();
                 g += static_cast<std::size_t>(jobs))
              if (is_square_free(relabel(o.representative, group[g])))
                ++counts[static_cast<std::size_t>(w)];
          });
        for (auto& th : pool) th.join();
        for (auto c : counts) rep.sf_count += c;
      } else if (o.full_size) {
        for (const auto& phi : group) {
          Perm q = relabel(o.representative, phi);
          if (sink) sink(q);
          if (cfg.mode == SearchMode::square_free && is_square_free(q)) ++rep.sf_count;
        }
      } else {
        std::set<std::uint64_t> seen;
        for (const auto& phi : group) {
          Perm q = relabel(o.representative, phi);
          if (!seen.insert(encode_compact(q)).second) continue;
          if (sink) sink(q);
          if (cfg.mode == SearchMode::square_free && is_square_free(q)) ++rep.sf_count;
        }
      }
    }
  }
  return rep;
}

}  // namespace

void SearchConfig::validate() const {
  if (n < 2) throw std::invalid_argument("SearchConfig: n must be >= 2");
  if (k < 1) throw std::invalid_argument("SearchConfig: k must be >= 1");
  if (engine != Engine::pipeline && pow_nk(n, k) > 9)
    throw std::invalid_argument("SearchConfig: brute engine requires n^k <= 9");
  if (engine != Engine::brute && k < 2)
    throw std::invalid_argument("SearchConfig: pipeline engine requires k >= 2");
  if (n == 4 && k == 2 && !long_run)
    throw std::invalid_argument(
        "SearchConfig: (n, k) = (4, 2) is a long run; pass long_run to confirm");
  if (pow_nk(n, k - 1) > 12)
    throw std::invalid_argument("SearchConfig: n^{k-1} too large to classify");
}

ClassReport enumerate_automorphisms(const SearchConfig& cfg, const PermSink& sink) {
  cfg.validate();
  if (cfg.engine == Engine::brute) return run_brute(cfg, sink);
  if (cfg.engine == Engine::pipeline) return run_pipeline(cfg, sink);

  // both: run the engines side by side and insist on identical answers
  std::vector<std::uint64_t> set_b, set_p;
  SearchConfig cb = cfg;
  cb.engine = Engine::brute;
  ClassReport rb = run_brute(cb, [&](const Perm& p) {
    set_b.push_back(encode_compact(p));
    if (sink) sink(p);
  });
  SearchConfig cp = cfg;
  cp.engine = Engine::pipeline;
  ClassReport rp = run_pipeline(cp, [&](const Perm& p) { set_p.push_back(encode_compact(p)); });
  std::sort(set_b.begin(), set_b.end());
  std::sort(set_p.begin(), set_p.end());
  const bool agree = rb.diag_count == rp.diag_count && rb.full_count == rp.full_count &&
                     rb.orbit_count == rp.orbit_count && rb.sf_count == rp.sf_count &&
                     set_b == set_p && rb.representatives == rp.representatives;
  if (!agree) throw std::logic_error("enumerate_automorphisms: engines disagree");
  rp.engine = Engine::both;
  return rp;
}

ClassReport inner_orbits(const std::vector<Perm>& perms) {
  ClassReport rep;
  rep.classes_computed = true;
  rep.freeness_verified = true;
  if (perms.empty()) return rep;
  const int n = perms[0].n();
  const int k = perms[0].k();
  for (const auto& p : perms)
    if (p.n() != n || p.k() != k)
      throw std::invalid_argument("inner_orbits: mixed levels in input");
  rep.n = n;
  rep.k = k;
  rep.full_count = perms.size();

  const std::vector<Perm> group = whole_group(n, k - 1);
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index.emplace(perms[i].table(), i);
  std::vector<char> visited(perms.size(), 0);

  struct Orb {
    std::uint64_t size;
    std::string min_cycles;
  };
  std::vector<Orb> orbits;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (visited[i]) continue;
    std::set<std::vector<std::uint32_t>> seen;
    std::string best;
    for (const auto& phi : group) {
      Perm q = relabel(perms[i], phi);
      auto f = index.find(q.table());
      if (f != index.end()) visited[f->second] = 1;
      if (seen.insert(q.table()).second) {
        std::string cyc = format_cycles(q);
        if (best.empty() || cyc < best) best = std::move(cyc);
      }
    }
    orbits.push_back({seen.size(), std::move(best)});
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const Orb& a, const Orb& b) { return a.min_cycles < b.min_cycles; });
  const std::uint64_t dfact = factorial(pow_nk(n, k - 1));
  for (const auto& o : orbits) {
    rep.orbit_sizes.push_back(o.size);
    rep.representatives.push_back(o.min_cycles);
    rep.freeness_verified = rep.freeness_verified && o.size == dfact;
  }
  rep.orbit_count = orbits.size();
  return rep;
}

Ternary is_inner(const Perm& p) {
  // Testing at level max(k, 2) is complete: an inner level-k permutation has
  // a conjugator one level down once k >= 2
  const Perm q = p.k() >= 2 ? p : embed(p, 2 - p.k());
  const std::uint64_t d = pow_nk(q.n(), q.k() - 1);
  if (d > 9) return Ternary::unknown;  // 10! conjugators is past the sweep cap

  const TreeTuple own = extract_maps(q);
  const TreeTuple idt = extract_maps(Perm::identity(q.n(), q.k()));
  for (int i = 0; i < q.n(); ++i) {
    if (!is_rooted_tree(own.maps[static_cast<std::size_t>(i)])) return Ternary::no;
    if (shape_of(own.maps[static_cast<std::size_t>(i)]).code !=
        shape_of(idt.maps[static_cast<std::size_t>(i)]).code)
      return Ternary::no;  // unlabeled trees are inner invariants
  }
  std::vector<std::uint32_t> t(d);
  std::iota(t.begin(), t.end(), 0u);
  do {
    const Perm phi = Perm::from_table(q.n(), q.k() - 1, t);
    if (inner_image(phi) == q) return Ternary::yes;
  } while (std::next_permutation(t.begin(), t.end()));
  return Ternary::no;
}

std::uint64_t canonical_inner_form(const Perm& p) {
  const std::uint64_t d = pow_nk(p.n(), p.k() - 1);
  if (d > 9) throw ResourceError("canonical_inner_form: relabeling group too large");
  std::vector<std::uint32_t> t(d);
  std::iota(t.begin(), t.end(), 0u);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    const Perm phi = Perm::from_table(p.n(), p.k() - 1, t);
    best = std::min(best, encode_compact(relabel(p, phi)));
  } while (std::next_permutation(t.begin(), t.end()));
  return best;
}

MatchTable match_named(const ClassReport& report) {
  if (report.n != 2 || report.k != 4 || !report.classes_computed)
    throw std::invalid_argument("match_named: expects a classified (2,4) report");
  const Perm f = names::F();
  const auto fam = [&](const Perm& x, const std::string& base,
                       std::vector<std::pair<std::string, Perm>>& out) {
    out.emplace_back(base, x);
    out.emplace_back(base + "*F", convolve(x, f));
    out.emplace_back("F*" + base, convolve(f, x));
    out.emplace_back("F*" + base + "*F", convolve(f, convolve(x, f)));
  };
  std::vector<std::pair<std::string, Perm>> named;
  named.emplace_back("id", Perm::identity(2, 4));
  named.emplace_back("F", embed(f, 3));
  fam(names::A(), "A", named);
  fam(names::J(), "J", named);
  fam(names::G(), "G", named);

  std::vector<std::uint64_t> orbit_forms;
  orbit_forms.reserve(report.representatives.size());
  for (const auto& cyc : report.representatives)
    orbit_forms.push_back(canonical_inner_form(parse_cycles(2, 4, cyc)));

  MatchTable out;
  std::vector<int> hits(report.representatives.size(), 0);
  bool ok = true;
  for (const auto& [name, perm] : named) {
    const auto form = canonical_inner_form(perm);
    const auto it = std::find(orbit_forms.begin(), orbit_forms.end(), form);
    if (it == orbit_forms.end()) {
      ok = false;
      continue;
    }
    const auto idx = static_cast<std::size_t>(it - orbit_forms.begin());
    ++hits[idx];
    out.entries.push_back({name, idx});
  }
  for (auto h : hits) ok = ok && h == 1;
  ok = ok && out.entries.size() == report.representatives.size();
  out.all_matched = ok;
  // orbits hit per family, in declaration order: {id, F}, A-, J-, G-family
  out.family_sizes.assign(4, 0);
  for (const auto& e : out.entries) {
    std::size_t fami = 0;
    if (e.name.find('A') != std::string::npos) fami = 1;
    else if (e.name.find('J') != std::string::npos) fami = 2;
    else if (e.name.find('G') != std::string::npos) fami = 3;
    ++out.family_sizes[fami];
  }
  return out;
}

}  // namespace cuntz
