#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "cuntz/names.hpp"
#include "cuntz/tree.hpp"

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

std::string shape_code_of(const Perm& p, int i) {
  return shape_of(extract_maps(p).maps[static_cast<std::size_t>(i)]).code;
}

}  // namespace

TEST_CASE("extraction of the identity's maps") {
  const TreeTuple t = extract_maps(Perm::identity(2, 3));
  const auto& f1 = t.maps[0];
  const auto& f2 = t.maps[1];
  CHECK(f1.table[idx(2, "11")] == idx(2, "11"));
  CHECK(f1.table[idx(2, "12")] == idx(2, "11"));
  CHECK(f1.table[idx(2, "21")] == idx(2, "12"));
  CHECK(f1.table[idx(2, "22")] == idx(2, "12"));
  CHECK(f2.table[idx(2, "11")] == idx(2, "21"));
  CHECK(f2.table[idx(2, "12")] == idx(2, "21"));
  CHECK(f2.table[idx(2, "21")] == idx(2, "22"));
  CHECK(f2.table[idx(2, "22")] == idx(2, "22"));
}

TEST_CASE("extraction of the named level-4 generators") {
  const TreeTuple ta = extract_maps(names::A());
  const auto& f1 = ta.maps[0];
  // leaves 211, 212, 221, 222; chain 121, 122 -> 112 -> root 111
  for (const char* leaf : {"211", "212", "221", "222"}) {
    bool has_preimage = false;
    for (std::uint32_t a = 0; a < 8; ++a) has_preimage |= f1.table[a] == idx(2, leaf);
    CHECK(!has_preimage);
  }
  CHECK(f1.table[idx(2, "121")] == idx(2, "112"));
  CHECK(f1.table[idx(2, "122")] == idx(2, "112"));
  CHECK(f1.table[idx(2, "112")] == idx(2, "111"));
  CHECK(tree_root(f1) == idx(2, "111"));

  const TreeTuple tj = extract_maps(names::J());
  CHECK(shape_of(tj.maps[0]).code == shape_code_of(names::A(), 0));
  CHECK(tree_root(tj.maps[1]) == idx(2, "222"));
  CHECK(shape_of(tj.maps[1]).code != shape_of(tj.maps[0]).code);
}

TEST_CASE("rooted-tree recognition") {
  CHECK(is_rooted_tree(extract_maps(Perm::identity(3, 2)).maps[0]));
  TreeMap id_map{2, 3, {0, 1, 2, 3}};  // four fixed points
  CHECK(!is_rooted_tree(id_map));
  TreeMap two_cycle{2, 3, {1, 0, 0, 0}};  // 0 <-> 1
  CHECK(!is_rooted_tree(two_cycle));
  TreeMap ok{2, 3, {0, 0, 1, 1}};
  CHECK(is_rooted_tree(ok));
  CHECK(tree_root(ok) == 0);
  CHECK(height_of(ok) == 2);
  CHECK_THROWS_AS(shape_of(two_cycle), std::domain_error);
}

TEST_CASE("shapes and automorphism orders of the named trees") {
  const TreeShape TA = shape_of(extract_maps(names::A()).maps[0]);
  const TreeShape TJ = shape_of(extract_maps(names::J()).maps[1]);
  CHECK(aut_order(TA) == 8);
  CHECK(aut_order(TJ) == 2);
  CHECK(TA.vertices == 8);
  // a chain has no symmetry
  TreeMap chain{2, 3, {0, 0, 1, 2}};
  CHECK(aut_order(shape_of(chain)) == 1);
  CHECK(stabilizer_order(chain) == 1);
}

TEST_CASE("stabilizer order agrees with a brute-force count") {
  auto brute = [](const TreeMap& f) {
    std::vector<std::uint32_t> t(f.domain_size());
    std::iota(t.begin(), t.end(), 0u);
    std::uint64_t cnt = 0;
    do {
      bool ok = true;
      for (std::uint32_t a = 0; a < f.domain_size() && ok; ++a)
        ok = t[f.table[a]] == f.table[t[a]];
      cnt += ok;
    } while (std::next_permutation(t.begin(), t.end()));
    return cnt;
  };
  const TreeMap f1 = extract_maps(Perm::identity(2, 3)).maps[0];
  CHECK(brute(f1) == 2);
  CHECK(stabilizer_order(f1) == 2);
  const TreeMap fj = extract_maps(names::J()).maps[1];
  CHECK(stabilizer_order(fj) == 2);
  CHECK(brute(fj) == 2);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Perm p = random_perm(2, 3, rng);
    const auto maps = extract_maps(p).maps;
    if (is_rooted_tree(maps[0])) CHECK(stabilizer_order(maps[0]) == brute(maps[0]));
  }
}

TEST_CASE("shape enumeration counts") {
  const auto s84 = enumerate_shapes(8, 2);
  CHECK(s84.size() == 23);
  const auto s42 = enumerate_shapes(4, 2);
  CHECK(s42.size() == 2);
  CHECK(enumerate_shapes(1, 5).size() == 1);
  CHECK(enumerate_shapes(4, 4).size() == 4);
  // the named shapes are among the 23, and the order is code-sorted
  const std::string ca = shape_code_of(names::A(), 0);
  const std::string cj = shape_code_of(names::J(), 1);
  std::set<std::string> codes;
  for (const auto& s : s84) codes.insert(s.code);
  CHECK(codes.count(ca) == 1);
  CHECK(codes.count(cj) == 1);
  CHECK(std::is_sorted(s84.begin(), s84.end()));
  // every enumerated shape instantiates to a valid tree of its own shape
  for (const auto& s : s84) {
    const TreeMap f = instantiate(s, 2, 4);
    CHECK(is_rooted_tree(f));
    CHECK(shape_of(f).code == s.code);
    CHECK(stabilizer_order(f) == s.aut);
  }
}

TEST_CASE("relabeling conjugates the tree maps") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const Perm p = random_perm(2, k, rng);
    const Perm phi = random_perm(2, k - 1, rng);
    const TreeTuple before = extract_maps(p);
    const TreeTuple after = extract_maps(relabel(p, phi));
    for (int i = 0; i < 2; ++i) {
      for (std::uint32_t a = 0; a < before.maps[0].domain_size(); ++a) {
        // g_i = phi f_i phi^{-1}
        CHECK(after.maps[i].table[phi(a)] == phi(before.maps[i].table[a]));
      }
    }
  }
}

TEST_CASE("every tree tuple is induced by exactly n!^(n^(k-1)) permutations") {
  for (int k : {2, 3}) {
    const auto size = pow_nk(2, k);
    std::vector<std::uint32_t> t(size);
    std::iota(t.begin(), t.end(), 0u);
    std::map<std::vector<std::uint32_t>, std::uint64_t> fibers;
    do {
      const TreeTuple tu = extract_maps(Perm::from_table(2, k, t));
      std::vector<std::uint32_t> key;
      for (const auto& f : tu.maps) key.insert(key.end(), f.table.begin(), f.table.end());
      ++fibers[key];
    } while (std::next_permutation(t.begin(), t.end()));
    const std::uint64_t expected = [&] {
      std::uint64_t e = 1;
      for (std::uint64_t i = 0; i < pow_nk(2, k - 1); ++i) e *= 2;  // n! = 2
      return e;
    }();
    for (const auto& [key, cnt] : fibers) CHECK(cnt == expected);
  }
}

TEST_CASE("level-1 unitaries viewed at level k give n identical full trees") {
  for (int n : {2, 3}) {
    const int k = n == 2 ? 4 : 3;
    std::mt19937_64 rng(n);
    const Perm u = random_perm(n, 1, rng);
    const TreeTuple t = extract_maps(embed(u, k - 1));
    const TreeTuple id = extract_maps(Perm::identity(n, k));
    const std::string c0 = shape_of(t.maps[0]).code;
    for (int i = 0; i < n; ++i) {
      CHECK(shape_of(t.maps[i]).code == c0);
      CHECK(shape_of(id.maps[i]).code == c0);
      CHECK(height_of(t.maps[i]) == k - 1);
    }
  }
}

TEST_CASE("dot output is deterministic and marks the root") {
  const TreeTuple t = extract_maps(Perm::identity(2, 3));
  const std::string labeled = to_dot(t, true);
  CHECK(labeled == to_dot(extract_maps(Perm::identity(2, 3)), true));
  CHECK(labeled.find("11*") != std::string::npos);   // root of f_1
  CHECK(labeled.find("22*") != std::string::npos);   // root of f_2
  const std::string bare = to_dot(t.maps[0], false);
  CHECK(bare.find("v0*") != std::string::npos);
  CHECK(bare.find("11") == std::string::npos);
}
