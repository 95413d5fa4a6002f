#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cuntz/perm.hpp"

namespace cuntz {

/// The self-map f_i of W_n^{k-1} cut out of a level-k permutation: the i-th
/// diagonal block of the conjugation operators, viewed as a function table.
/// `table` is indexed by 0-based word index; `k` is the level of the parent
/// permutation (domain size n^{k-1}).
struct TreeMap {
  int n = 2;
  int k = 1;
  std::vector<std::uint32_t> table;

  std::uint32_t domain_size() const { return static_cast<std::uint32_t>(table.size()); }

  friend bool operator==(const TreeMap&, const TreeMap&) = default;
};

/// The n maps (f_1, ..., f_n) of one permutation. By construction the
/// preimage counts satisfy sum_i |f_i^{-1}(beta)| = n for every beta.
struct TreeTuple {
  int n = 2;
  int k = 1;
  std::vector<TreeMap> maps;
};

/// An unlabeled rooted directed tree (children unordered), canonicalized.
/// `code` is the nested-parentheses encoding with child codes sorted, so two
/// maps have equal codes iff their diagrams are isomorphic rooted trees.
/// `parent` lists the canonical DFS order: parent[0] == -1 is the root and
/// parent[v] < v, with children of each vertex appearing in code order.
struct TreeShape {
  std::string code;
  int vertices = 0;
  std::uint64_t aut = 1;  // |Aut| of the rooted tree
  std::vector<int> parent;

  friend bool operator==(const TreeShape& a, const TreeShape& b) { return a.code == b.code; }
  friend bool operator<(const TreeShape& a, const TreeShape& b) { return a.code < b.code; }
};

/// f_i(alpha) = beta iff (i, alpha) = sigma(beta, m) for some m; i.e. beta is
/// sigma^{-1}(i alpha) with its last letter dropped. Requires level k >= 1
/// (k = 1 gives the trivial one-point maps).
TreeTuple extract_maps(const Perm& p);

/// True iff the functional graph of f has exactly one fixed point and no
/// cycle of length >= 2 (every orbit falls into the root).
bool is_rooted_tree(const TreeMap& f);

/// 0-based index of the unique fixed point; throws if f is not a tree.
std::uint32_t tree_root(const TreeMap& f);

/// Length of the longest path into the root.
int height_of(const TreeMap& f);

/// Canonical form; throws std::domain_error for non-tree input. |Aut| is
/// accumulated in the same pass as the product, over all vertices, of the
/// factorials of identical-child-subtree multiplicities.
TreeShape shape_of(const TreeMap& f);

std::uint64_t aut_order(const TreeShape& s);

/// Number of sigma in P_n^{k-1} with sigma f sigma^{-1} = f. Labels do not
/// matter: the stabilizing group is isomorphic to Aut of the unlabeled tree,
/// so this equals aut_order(shape_of(f)). Requires is_rooted_tree(f).
std::uint64_t stabilizer_order(const TreeMap& f);

/// A bijection canonical-position -> word index realizing shape_of(f): the
/// permutation phi of W_n^{k-1} with phi(order[v]) = v conjugates f onto the
/// canonical instantiation of its shape. Ties between identical sibling
/// subtrees are broken by smallest contained word, deterministically.
std::vector<std::uint32_t> canonical_labeling(const TreeMap& f);

/// The TreeMap with word v attached to canonical vertex v of `s`.
TreeMap instantiate(const TreeShape& s, int n, int k);

/// Canonical code of the subtree rooted at each canonical vertex of `s`.
std::vector<std::string> subtree_codes(const TreeShape& s);

/// All rooted trees with `vertices` vertices whose diagram satisfies the
/// preimage-sum bounds: in-degree <= n off the root and 1..n-1 at the root
/// (the root's self-loop consumes one of its n preimage slots; in-degree 0
/// only for the one-vertex tree). Sorted by code; deterministic.
std::vector<TreeShape> enumerate_shapes(int vertices, int n);

/// dot-format rendering; root vertex starred. With labels=false vertex names
/// are canonical positions instead of words.
std::string to_dot(const TreeMap& f, bool labels);
std::string to_dot(const TreeTuple& t, bool labels);

}  // namespace cuntz
