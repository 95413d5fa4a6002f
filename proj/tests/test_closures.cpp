#include "doctest.h"

#include <map>
#include <numeric>
#include <random>

#include "cuntz/closures.hpp"
#include "cuntz/names.hpp"

using namespace cuntz;

namespace {

Perm random_perm(int n, int k, std::mt19937_64& rng) {
  std::vector<std::uint32_t> t(pow_nk(n, k));
  std::iota(t.begin(), t.end(), 0u);
  std::shuffle(t.begin(), t.end(), rng);
  return Perm::from_table(n, k, std::move(t));
}

std::uint32_t idx(int n, const char* w) {
  return static_cast<std::uint32_t>(word_index(word_from_string(n, w)));
}

template <typename F>
void for_all_perms(int n, int k, F&& fn) {
  std::vector<std::uint32_t> t(pow_nk(n, k));
  std::iota(t.begin(), t.end(), 0u);
  do {
    fn(Perm::from_table(n, k, t));
  } while (std::next_permutation(t.begin(), t.end()));
}

}  // namespace

TEST_CASE("sigma closure covers for the identity and fails off trees") {
  const auto ok = sigma_closure(extract_maps(Perm::identity(2, 3)));
  CHECK(ok.covered());
  CHECK(ok.depth <= static_cast<int>(ok.universe_size));
  // a tuple with a 2-cycle map can never cover
  TreeTuple bad;
  bad.n = 2;
  bad.k = 3;
  bad.maps = {TreeMap{2, 3, {1, 0, 0, 0}}, TreeMap{2, 3, {3, 3, 3, 3}}};
  CHECK(!sigma_closure(bad).covered());
}

TEST_CASE("the 4-vertex chain admits no valid labeling") {
  // chain maps alpha1 -> alpha2 -> alpha3 -> root; pair any two labelings
  // compatible with the preimage-sum law and check that sigma never covers
  std::vector<std::uint32_t> lab(4);
  std::iota(lab.begin(), lab.end(), 0u);
  std::vector<TreeMap> chains;
  do {
    TreeMap f{2, 3, std::vector<std::uint32_t>(4)};
    f.table[lab[0]] = lab[0];
    f.table[lab[1]] = lab[0];
    f.table[lab[2]] = lab[1];
    f.table[lab[3]] = lab[2];
    chains.push_back(std::move(f));
  } while (std::next_permutation(lab.begin(), lab.end()));
  CHECK(chains.size() == 24);
  auto preimages = [](const TreeMap& f, std::uint32_t w) {
    int c = f.table[w] == w ? 1 : 0;
    for (std::uint32_t a = 0; a < 4; ++a) c += f.table[a] == w && a != w;
    return c;
  };
  int matched_pairs = 0, covered = 0;
  for (const auto& f1 : chains)
    for (const auto& f2 : chains) {
      bool matched = true;
      for (std::uint32_t w = 0; w < 4 && matched; ++w)
        matched = preimages(f1, w) + preimages(f2, w) == 2;
      if (!matched) continue;
      ++matched_pairs;
      covered += sigma_closure(TreeTuple{2, 3, {f1, f2}}).covered();
    }
  CHECK(matched_pairs > 0);
  CHECK(covered == 0);
}

TEST_CASE("pair maps satisfy the defining condition") {
  const Perm id = Perm::identity(2, 3);
  const PairMaps pm = pair_maps(id);
  // for sigma = id: common last letter means equal last letters of the words
  const std::uint32_t a = idx(2, "12"), b = idx(2, "22");
  const std::int32_t im = pm.apply(0, 1, a, b);  // i=1, j=2 in 1-based terms
  CHECK(im >= 0);
  CHECK(static_cast<std::uint32_t>(im) / pm.d == idx(2, "11"));  // gamma = 1|first(12)
  CHECK(static_cast<std::uint32_t>(im) % pm.d == idx(2, "22"));  // delta = 2|first(22)
  const std::uint32_t c = idx(2, "11"), e = idx(2, "12");  // last letters differ
  CHECK(pm.apply(0, 0, c, e) == -1);

  // f_ii through the diagonal reproduces f_i componentwise
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const Perm p = random_perm(2, 3, rng);
    const PairMaps q = pair_maps(p);
    const TreeTuple tu = extract_maps(p);
    for (int i = 0; i < 2; ++i)
      for (std::uint32_t x = 0; x < q.d; ++x) {
        const std::int32_t y = q.apply(i, i, x, x);
        CHECK(y >= 0);
        CHECK(static_cast<std::uint32_t>(y) ==
              tu.maps[i].table[x] * q.d + tu.maps[i].table[x]);
      }
  }
}

TEST_CASE("psi closure on the flip-flop and the identity") {
  const Perm fe = embed(names::F(), 1);
  const auto st = psi_closure(fe);
  CHECK(st.covered());
  CHECK(st.depth <= 2);
  CHECK(psi_closure(Perm::identity(2, 4)).covered());
  CHECK(psi_closure(Perm::identity(3, 2)).covered());
}

TEST_CASE("level-2 census over n = 2") {
  std::uint64_t diag = 0, full = 0;
  for_all_perms(2, 2, [&](const Perm& p) {
    const bool d = is_diag_automorphism(p);
    diag += d;
    full += d && psi_closure(p).covered();
    CHECK(is_automorphism(p) == (d && psi_closure(p).covered()));
  });
  CHECK(diag == 8);
  CHECK(full == 4);
}

TEST_CASE("each sigma-passing tuple at level 3 has a 16-element fiber with 2 automorphisms") {
  std::map<std::vector<std::uint32_t>, std::pair<int, int>> fibers;
  for_all_perms(2, 3, [&](const Perm& p) {
    const TreeTuple tu = extract_maps(p);
    if (!sigma_closure(tu).covered()) return;
    std::vector<std::uint32_t> key;
    for (const auto& f : tu.maps) key.insert(key.end(), f.table.begin(), f.table.end());
    auto& [members, autos] = fibers[key];
    ++members;
    autos += psi_closure(p).covered();
  });
  CHECK(fibers.size() == 24);  // 4! labelings of the unique valid pair
  for (const auto& [key, mc] : fibers) {
    CHECK(mc.first == 16);
    CHECK(mc.second == 2);
  }
}

TEST_CASE("level-1 permutations are always automorphisms") {
  for (int n : {2, 3, 4}) {
    std::uint64_t cnt = 0;
    for_all_perms(n, 1, [&](const Perm& p) {
      CHECK(is_diag_automorphism(p));
      CHECK(is_automorphism(p));
      ++cnt;
    });
    std::uint64_t fact = 1;
    for (std::uint64_t i = 2; i <= static_cast<std::uint64_t>(n); ++i) fact *= i;
    CHECK(cnt == fact);
  }
}

TEST_CASE("the matrix oracle agrees with the closures") {
  for_all_perms(2, 2, [&](const Perm& p) {
    const auto v = ring_nilpotent_oracle(p);
    CHECK(v.diag == is_diag_automorphism(p));
    CHECK(v.full == is_automorphism(p));
  });
  std::mt19937_64 rng(41);
  for (int t = 0; t < 500; ++t) {
    const Perm p = random_perm(2, 3, rng);
    const auto v = ring_nilpotent_oracle(p);
    CHECK(v.diag == is_diag_automorphism(p));
    CHECK(v.full == is_automorphism(p));
  }
  for (const Perm& p : {names::A(), names::B(), names::J(), names::G(),
                        embed(names::F(), 3), Perm::identity(2, 4)}) {
    const auto v = ring_nilpotent_oracle(p);
    CHECK(v.full);
    CHECK(is_automorphism(p));
  }
}

TEST_CASE("the verdicts are invariant under inner relabeling") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 300; ++t) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const Perm p = random_perm(2, k, rng);
    const Perm phi = random_perm(2, k - 1, rng);
    const Perm q = relabel(p, phi);
    CHECK(is_diag_automorphism(p) == is_diag_automorphism(q));
    CHECK(is_automorphism(p) == is_automorphism(q));
  }
}

TEST_CASE("check report is self-consistent") {
  const auto r = check_permutation(names::G());
  CHECK(r.automorphism);
  CHECK(r.diag_automorphism);
  CHECK(r.oracle_agrees);
  CHECK(r.shapes.size() == 2);
  const auto bad = check_permutation(parse_cycles(2, 2, "(1,2)"));
  CHECK(!bad.automorphism);
  CHECK(bad.oracle_agrees);
}
