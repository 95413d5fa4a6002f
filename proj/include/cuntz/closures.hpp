#pragma once

#include <cstdint>
#include <vector>

#include "cuntz/perm.hpp"
#include "cuntz/tree.hpp"

namespace cuntz {

/// Result of one monotone fixpoint run. For the pair closure the universe is
/// all ordered pairs of W_n^{k-1}; for the annihilation closure it is the
/// off-diagonal pairs plus the absorbing symbol. Members only ever grow and
/// the fixpoint is reached within universe_size rounds; `depth` is the first
/// round after which nothing new enters.
struct ClosureState {
  std::uint64_t universe_size = 0;
  std::uint64_t members = 0;
  int depth = 0;

  bool covered() const { return members == universe_size; }
};

/// Sigma closure: seed the diagonal, then admit (alpha, beta) as soon as
/// (f_i(alpha), f_i(beta)) is admitted for every i. Covering the full square
/// is the diagonal-automorphism criterion. Consumes only the tree maps, so
/// the verdict is shared by all n!^{n^{k-1}} permutations over one tuple.
ClosureState sigma_closure(const TreeTuple& t);

/// The d-corner maps: for each (i, j), maps the pair (alpha, beta) to the
/// unique (gamma, delta) with (i,alpha) = sigma(gamma,m), (j,beta) =
/// sigma(delta,m) for a common last letter m, or annihilates it (dagger)
/// when the letters disagree. Stored as full d*d tables with -1 for dagger;
/// for alpha != beta the image is never diagonal.
struct PairMaps {
  int n = 2;
  int k = 1;
  std::uint32_t d = 1;                        // n^{k-1}
  std::vector<std::vector<std::int32_t>> maps;  // maps[i*n+j][a*d+b] = c*d+e or -1

  std::int32_t apply(int i, int j, std::uint32_t a, std::uint32_t b) const {
    return maps[static_cast<std::size_t>(i * n + j)][a * d + b];
  }
};

PairMaps pair_maps(const Perm& p);

/// Psi closure: seed the absorbing symbol, then admit an off-diagonal pair
/// as soon as all n^2 of its d-corner images are admitted. Covering
/// everything is the remaining half of the automorphism criterion.
ClosureState psi_closure(const Perm& p);

/// lambda_p restricts to an automorphism of the diagonal iff the sigma
/// closure covers; lambda_p is an automorphism of O_n iff both closures do.
bool is_diag_automorphism(const Perm& p);
bool is_automorphism(const Perm& p);

/// Independent oracle on the generator matrices themselves.
///
/// b-side: the diagonal blocks b_i are the 0/1 function matrices of the f_i;
/// products over the boolean semiring are exactly function compositions, and
/// the ring they generate on the quotient by the scalars is nilpotent iff
/// every composition of d-1 generators is a constant map (the quotient has
/// dimension d-1, so a nilpotent ring has index at most d-1). We grow the
/// multiplicative closure layer by layer and test for all-constant.
///
/// d-side: the ring generated by the d_ij is nilpotent iff the boolean OR of
/// the generators is a nilpotent boolean matrix: entries are non-negative,
/// so a sum of products vanishes iff every product does.
struct OracleVerdict {
  bool diag = false;     // b-ring nilpotent on the quotient
  bool dcorner = false;  // d-ring nilpotent
  bool full = false;     // both
  int b_index = 0;       // smallest all-constant product length (when diag)
  int d_index = 0;       // smallest vanishing power (when dcorner)
};

/// Throws ResourceError when (n^{k-1})^2 exceeds the dimension cap.
OracleVerdict ring_nilpotent_oracle(const Perm& p);

/// Per-permutation diagnostic used by the check command.
struct CheckReport {
  int n = 0;
  int k = 0;
  std::vector<TreeShape> shapes;
  std::vector<bool> is_tree;
  ClosureState sigma;
  ClosureState psi;
  OracleVerdict oracle;
  bool diag_automorphism = false;
  bool automorphism = false;
  bool oracle_agrees = false;
};

CheckReport check_permutation(const Perm& p);

}  // namespace cuntz
