#pragma once

// Seeded construction of posets and problem instances. Output depends only
// on the GenSpec, so a spec reproduces its artifact exactly.

#include <cstdint>
#include <string>
#include <vector>

#include "roep/equilibrium.hpp"

namespace roep {

enum class GenKind { chain, antichain, boolean_lattice, grid, random_poset, random_instance };
enum class GenFilter { none, require_hypotheses };

/// Order shape of the strategy posets X and Y in random_instance.
enum class FactorShape { random, chain, bounded };

/// How F and G are drawn in random_instance. `principal` gives F(x) an
/// up-set in D whose threshold grows with x and G(y) a down-set in C whose
/// threshold grows with y; `mixed` picks one style per map.
enum class ConstraintStyle { constant, principal, random, mixed };

struct GenCaps {
  std::size_t max_c = 6;
  std::size_t max_d = 6;
  std::size_t max_u = 12;
  std::size_t max_poset = 64;
  std::size_t max_retries = 2000;
};

struct GenSpec {
  GenKind kind = GenKind::random_instance;
  /// chain, antichain, random_poset: {n}; boolean_lattice: {k}; grid: extents;
  /// random_instance: {|C|, |D|, |U|}.
  std::vector<std::size_t> sizes;
  double density = 0.35;
  std::uint64_t rng_seed = 0;
  GenFilter filter = GenFilter::none;
  /// random_instance only: T(x, y) = a(x) + b(y) for order-monotone scores
  /// a, b, clamped into a chain U.
  bool monotone_bias = false;
  FactorShape factor_shape = FactorShape::random;
  /// random_instance only: draw U as a chain rather than a random poset.
  bool total_utility = false;
  ConstraintStyle constraints = ConstraintStyle::mixed;
  GenCaps caps;
};

/// kind must be a poset kind. Throws InvalidSpec.
Poset gen_poset(const GenSpec& spec);

/// kind must be random_instance. Under require_hypotheses the instance
/// carries the seed pair that passed. Throws InvalidSpec or FilterExhausted.
ProblemInstance gen_instance(const GenSpec& spec);

std::string to_string(GenKind kind);
GenKind parse_gen_kind(std::string_view text);

}  // namespace roep
