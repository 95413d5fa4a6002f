#include "cuntz/closures.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "cuntz/errors.hpp"

namespace cuntz {

namespace {

constexpr std::uint64_t kMaxPairUniverse = 1u << 22;

}  // namespace

ClosureState sigma_closure(const TreeTuple& t) {
  const std::uint32_t d = t.maps.empty() ? 1 : t.maps[0].domain_size();
  const std::uint64_t universe = static_cast<std::uint64_t>(d) * d;
  if (universe > kMaxPairUniverse)
    throw ResourceError("sigma_closure: pair universe exceeds cap");
  // iterate over the maps present; a partial tuple yields a larger closure,
  // which the search uses for sound pruning
  const int n = static_cast<int>(t.maps.size());

  // counter[q] = how many of the n successor pairs are still outside;
  // reverse index from a successor pair to its predecessors.
  std::vector<std::uint8_t> in(universe, 0);
  std::vector<std::uint16_t> need(universe, 0);
  std::vector<std::uint32_t> rev_head(universe + 1, 0);
  std::vector<std::uint32_t> rev_data(universe * static_cast<std::uint64_t>(n));

  auto succ = [&](std::uint64_t q, int i) -> std::uint64_t {
    const std::uint32_t a = static_cast<std::uint32_t>(q / d);
    const std::uint32_t b = static_cast<std::uint32_t>(q % d);
    const auto& f = t.maps[static_cast<std::size_t>(i)].table;
    return static_cast<std::uint64_t>(f[a]) * d + f[b];
  };

  for (std::uint64_t q = 0; q < universe; ++q)
    for (int i = 0; i < n; ++i) ++rev_head[succ(q, i) + 1];
  for (std::uint64_t s = 0; s < universe; ++s) rev_head[s + 1] += rev_head[s];
  {
    std::vector<std::uint32_t> cursor(rev_head.begin(), rev_head.end() - 1);
    for (std::uint64_t q = 0; q < universe; ++q)
      for (int i = 0; i < n; ++i)
        rev_data[cursor[succ(q, i)]++] = static_cast<std::uint32_t>(q);
  }

  std::uint64_t members = 0;
  for (std::uint32_t a = 0; a < d; ++a) {
    in[static_cast<std::uint64_t>(a) * d + a] = 1;
    ++members;
  }
  // `need` counts successors outside Sigma_0; decrements from the diagonal
  // seeds are folded into this initialization
  std::vector<std::uint32_t> frontier, next;
  for (std::uint64_t q = 0; q < universe; ++q) {
    if (in[q]) continue;
    std::uint16_t c = 0;
    for (int i = 0; i < n; ++i)
      if (!in[succ(q, i)]) ++c;
    need[q] = c;
    if (c == 0) frontier.push_back(static_cast<std::uint32_t>(q));
  }

  int depth = 0;
  while (!frontier.empty()) {
    ++depth;
    for (auto q : frontier)
      if (!in[q]) {
        in[q] = 1;
        ++members;
      }
    next.clear();
    for (auto s : frontier)
      for (std::uint32_t idx = rev_head[s]; idx < rev_head[s + 1]; ++idx) {
        const std::uint32_t q = rev_data[idx];
        if (!in[q] && --need[q] == 0) next.push_back(q);
      }
    std::swap(frontier, next);
  }

  ClosureState st;
  st.universe_size = universe;
  st.members = members;
  st.depth = depth;
  return st;
}

PairMaps pair_maps(const Perm& p) {
  if (p.k() < 1) throw std::invalid_argument("pair_maps: level must be >= 1");
  const int n = p.n();
  const std::uint32_t d = static_cast<std::uint32_t>(p.size() / static_cast<std::uint64_t>(n));
  if (static_cast<std::uint64_t>(d) * d > kMaxPairUniverse)
    throw ResourceError("pair_maps: pair universe exceeds cap");
  const Perm pinv = invert_perm(p);

  // per letter i and word a: sigma^{-1}(i a) = (gamma, m)
  std::vector<std::uint32_t> g(static_cast<std::size_t>(n) * d);
  std::vector<std::uint8_t> m(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n; ++i)
    for (std::uint32_t a = 0; a < d; ++a) {
      const std::uint32_t x = pinv(static_cast<std::uint32_t>(i + n * a));
      g[static_cast<std::size_t>(i) * d + a] = x % d;
      m[static_cast<std::size_t>(i) * d + a] = static_cast<std::uint8_t>(x / d);
    }

  PairMaps pm;
  pm.n = n;
  pm.k = p.k();
  pm.d = d;
  pm.maps.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto& tab = pm.maps[static_cast<std::size_t>(i * n + j)];
      tab.assign(static_cast<std::size_t>(d) * d, -1);
      for (std::uint32_t a = 0; a < d; ++a)
        for (std::uint32_t b = 0; b < d; ++b)
          if (m[static_cast<std::size_t>(i) * d + a] == m[static_cast<std::size_t>(j) * d + b])
            tab[static_cast<std::size_t>(a) * d + b] =
                static_cast<std::int32_t>(g[static_cast<std::size_t>(i) * d + a] * d +
                                          g[static_cast<std::size_t>(j) * d + b]);
    }
  return pm;
}

ClosureState psi_closure(const Perm& p) {
  const PairMaps pm = pair_maps(p);
  const std::uint32_t d = pm.d;
  const int n = pm.n;
  const std::uint64_t square = static_cast<std::uint64_t>(d) * d;
  const std::uint64_t universe = square - d + 1;  // off-diagonal pairs + dagger

  // need[q] over off-diagonal q; dagger is in from the start, so absent
  // images (-1) never count. Worklist with reverse dependencies.
  std::vector<std::uint8_t> in(square, 0);
  std::vector<std::uint16_t> need(square, 0);
  const int nn = n * n;
  std::vector<std::uint32_t> rev_head(square + 1, 0);
  std::vector<std::uint32_t> rev_data;

  std::uint64_t members = 1;  // dagger
  std::vector<std::uint32_t> ready;
  for (std::uint32_t a = 0; a < d; ++a)
    for (std::uint32_t b = 0; b < d; ++b) {
      if (a == b) continue;
      const std::uint32_t q = a * d + b;
      std::uint16_t c = 0;
      for (int ij = 0; ij < nn; ++ij)
        if (pm.maps[static_cast<std::size_t>(ij)][q] >= 0) ++c;
      need[q] = c;
      if (c == 0) ready.push_back(q);
    }
  for (int ij = 0; ij < nn; ++ij) {
    const auto& tab = pm.maps[static_cast<std::size_t>(ij)];
    for (std::uint32_t a = 0; a < d; ++a)
      for (std::uint32_t b = 0; b < d; ++b) {
        if (a == b) continue;
        const std::int32_t im = tab[static_cast<std::size_t>(a) * d + b];
        if (im >= 0) ++rev_head[static_cast<std::uint32_t>(im) + 1];
      }
  }
  for (std::uint64_t s = 0; s < square; ++s) rev_head[s + 1] += rev_head[s];
  rev_data.resize(rev_head[square]);
  {
    std::vector<std::uint32_t> cursor(rev_head.begin(), rev_head.end() - 1);
    for (int ij = 0; ij < nn; ++ij) {
      const auto& tab = pm.maps[static_cast<std::size_t>(ij)];
      for (std::uint32_t a = 0; a < d; ++a)
        for (std::uint32_t b = 0; b < d; ++b) {
          if (a == b) continue;
          const std::int32_t im = tab[static_cast<std::size_t>(a) * d + b];
          if (im >= 0) rev_data[cursor[static_cast<std::uint32_t>(im)]++] = a * d + b;
        }
    }
  }

  int depth = 0;
  std::vector<std::uint32_t> frontier;
  while (!ready.empty()) {
    ++depth;
    frontier.clear();
    for (auto q : ready)
      if (!in[q]) {
        in[q] = 1;
        ++members;
        frontier.push_back(q);
      }
    ready.clear();
    for (auto s : frontier)
      for (std::uint32_t idx = rev_head[s]; idx < rev_head[s + 1]; ++idx) {
        const std::uint32_t q = rev_data[idx];
        if (!in[q] && --need[q] == 0) ready.push_back(q);
      }
  }

  ClosureState st;
  st.universe_size = universe;
  st.members = members;
  st.depth = depth;
  return st;
}

bool is_diag_automorphism(const Perm& p) { return sigma_closure(extract_maps(p)).covered(); }

bool is_automorphism(const Perm& p) {
  if (!sigma_closure(extract_maps(p)).covered()) return false;
  return psi_closure(p).covered();
}

OracleVerdict ring_nilpotent_oracle(const Perm& p) {
  const int n = p.n();
  const std::uint32_t d = static_cast<std::uint32_t>(p.size() / static_cast<std::uint64_t>(n));
  if (static_cast<std::uint64_t>(d) * d > 1u << 14)
    throw ResourceError("ring_nilpotent_oracle: dimension cap exceeded");

  OracleVerdict v;

  // --- b-side: multiplicative closure of the function matrices ---
  const TreeTuple t = extract_maps(p);
  if (d == 1) {
    v.diag = true;
    v.b_index = 0;
  } else {
    std::set<std::vector<std::uint32_t>> layer;
    for (const auto& f : t.maps) layer.insert(f.table);
    auto all_constant = [](const std::set<std::vector<std::uint32_t>>& ts) {
      for (const auto& f : ts)
        for (auto x : f)
          if (x != f[0]) return false;
      return true;
    };
    // nilpotency index on the (d-1)-dimensional quotient is at most d-1, so
    // it suffices to look at layers of products up to that length
    for (std::uint32_t len = 1; len <= d - 1; ++len) {
      if (all_constant(layer)) {
        v.diag = true;
        v.b_index = static_cast<int>(len);
        break;
      }
      if (len == d - 1) break;
      std::set<std::vector<std::uint32_t>> nxt;
      std::vector<std::uint32_t> g(d);
      for (const auto& prod : layer)
        for (const auto& f : t.maps) {
          for (std::uint32_t x = 0; x < d; ++x) g[x] = f.table[prod[x]];
          nxt.insert(g);
        }
      layer = std::move(nxt);
    }
  }

  // --- d-side: boolean nilpotency of the OR of the d_ij ---
  const PairMaps pm = pair_maps(p);
  std::vector<std::uint32_t> off;
  off.reserve(static_cast<std::size_t>(d) * d - d);
  std::vector<std::int32_t> pos(static_cast<std::size_t>(d) * d, -1);
  for (std::uint32_t a = 0; a < d; ++a)
    for (std::uint32_t b = 0; b < d; ++b)
      if (a != b) {
        pos[static_cast<std::size_t>(a) * d + b] = static_cast<std::int32_t>(off.size());
        off.push_back(a * d + b);
      }
  const std::size_t m = off.size();
  if (m == 0) {
    v.dcorner = true;
    v.d_index = 0;
  } else {
    const std::size_t wpr = (m + 63) / 64;
    std::vector<std::uint64_t> gen(m * wpr, 0);
    for (int ij = 0; ij < n * n; ++ij) {
      const auto& tab = pm.maps[static_cast<std::size_t>(ij)];
      for (std::size_t r = 0; r < m; ++r) {
        const std::int32_t im = tab[off[r]];
        if (im >= 0) {
          const auto c = static_cast<std::size_t>(pos[static_cast<std::uint32_t>(im)]);
          gen[r * wpr + c / 64] |= 1ull << (c % 64);
        }
      }
    }
    std::vector<std::uint64_t> cur = gen, nxt(m * wpr);
    auto is_zero = [&](const std::vector<std::uint64_t>& mt) {
      for (auto w : mt)
        if (w) return false;
      return true;
    };
    v.d_index = 1;
    while (!is_zero(cur) && static_cast<std::size_t>(v.d_index) <= m) {
      std::fill(nxt.begin(), nxt.end(), 0);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t wq = 0; wq < wpr; ++wq) {
          std::uint64_t bits = cur[r * wpr + wq];
          while (bits) {
            const std::size_t c = wq * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            for (std::size_t t2 = 0; t2 < wpr; ++t2) nxt[r * wpr + t2] |= gen[c * wpr + t2];
          }
        }
      std::swap(cur, nxt);
      ++v.d_index;
    }
    v.dcorner = is_zero(cur);
    if (!v.dcorner) v.d_index = 0;
  }

  v.full = v.diag && v.dcorner;
  return v;
}

CheckReport check_permutation(const Perm& p) {
  CheckReport r;
  r.n = p.n();
  r.k = p.k();
  const TreeTuple t = extract_maps(p);
  for (const auto& f : t.maps) {
    const bool tree = is_rooted_tree(f);
    r.is_tree.push_back(tree);
    if (tree) r.shapes.push_back(shape_of(f));
    else r.shapes.push_back(TreeShape{});
  }
  r.sigma = sigma_closure(t);
  r.psi = psi_closure(p);
  r.oracle = ring_nilpotent_oracle(p);
  r.diag_automorphism = r.sigma.covered();
  r.automorphism = r.sigma.covered() && r.psi.covered();
  r.oracle_agrees =
      r.oracle.diag == r.diag_automorphism && r.oracle.full == r.automorphism;
  return r;
}

}  // namespace cuntz
