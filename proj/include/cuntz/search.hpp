#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cuntz/perm.hpp"
#include "cuntz/tree.hpp"

namespace cuntz {

enum class SearchMode { diag_only, full, square_free };
enum class Engine { brute, pipeline, both };

struct SearchConfig {
  int n = 2;
  int k = 2;
  SearchMode mode = SearchMode::full;
  Engine engine = Engine::pipeline;
  int jobs = 1;
  bool long_run = false;          // unlock cells the paper needed cluster time for
  std::uint64_t checkpoint_every = 0;  // candidates between checkpoints; 0 = off
  std::string checkpoint_path;

  void validate() const;  // brute needs n^k <= 9; pipeline needs k >= 2
};

/// Per ordered shape tuple: how many labelings of the non-first trees pass
/// the sigma filter with the first tree's labeling pinned to canonical, the
/// total number of sigma-valid labeled tuples this scales to, and how many
/// permutations in the fibers pass the psi filter (per fixed first
/// labeling).
struct ShapeTupleStat {
  std::vector<std::string> codes;        // n canonical codes
  std::uint64_t survivors_first_fixed = 0;
  std::uint64_t labeled_tuples = 0;
  std::uint64_t fiber_pass_first_fixed = 0;
};

struct ClassReport {
  int n = 0;
  int k = 0;
  SearchMode mode = SearchMode::full;
  Engine engine = Engine::pipeline;

  std::uint64_t diag_count = 0;  // sigma-passing permutations
  std::uint64_t full_count = 0;  // automorphisms (not filled in diag_only mode)
  std::uint64_t sf_count = 0;    // square-free automorphisms (square_free mode)

  std::uint64_t orbit_count = 0;  // inner-equivalence classes
  std::vector<std::uint64_t> orbit_sizes;
  std::vector<std::string> representatives;  // cycle-notation minimal element per orbit

  std::uint64_t shape_count = 0;  // admissible shapes at this (n, k)
  std::vector<ShapeTupleStat> shape_stats;

  bool freeness_verified = false;  // every relabeling orbit has full size
  bool classes_computed = false;   // orbit data above is populated
  bool complete = true;            // false when a resource cap truncated the run
  int max_sigma_depth = 0;
  int max_psi_depth = 0;
};

using PermSink = std::function<void(const Perm&)>;

/// The level-k census. Pipeline engine: admissible shapes -> sigma-filtered
/// labelings (first tree pinned, orbit-stabilizer scaling by
/// (n^{k-1})!/|Aut(first)|) -> psi-filtered permutation fibers. Brute
/// engine: filter all n^k! permutations. Engine::both runs both and throws
/// logic_error on any disagreement. The sink, when given, receives every
/// automorphism exactly once (diag_only mode: every sigma-passer the sink
/// can afford only with the brute engine; the pipeline does not materialize
/// diagonal passers).
ClassReport enumerate_automorphisms(const SearchConfig& cfg, const PermSink& sink = {});

/// Orbit decomposition of an explicit set under p -> (1 x phi) p
/// (phi^{-1} x 1), phi over P_n^{k-1}. Representatives are the
/// cycle-notation minimal orbit elements.
ClassReport inner_orbits(const std::vector<Perm>& perms);

enum class Ternary { no, yes, unknown };

/// Whether p = phi(u)u^* for some permutation unitary u one level down.
/// Fast reject: the tree tuple of an inner permutation is a relabeling of
/// the identity's, so differing shapes settle it. Returns unknown when the
/// fiber (n^{k-1})! is too large to sweep.
Ternary is_inner(const Perm& p);

/// Minimum of encode_compact over the relabeling orbit; equal values
/// characterize inner equivalence. Cost grows with (n^{k-1})!.
std::uint64_t canonical_inner_form(const Perm& p);

struct NamedMatch {
  std::string name;
  std::size_t orbit_index = 0;  // into report.representatives
};

struct MatchTable {
  std::vector<NamedMatch> entries;
  bool all_matched = false;      // every orbit hit by exactly one named element
  std::vector<std::size_t> family_sizes;  // orbits matched per family, in order
};

/// Identifies the orbits of a full (2,4) report with the named generator
/// families {id, F}, {A, AF, FA, FAF}, {J, ...}, {G, ...} by canonical
/// inner form. An unmatched orbit or a collision leaves all_matched false.
MatchTable match_named(const ClassReport& report);

}  // namespace cuntz
