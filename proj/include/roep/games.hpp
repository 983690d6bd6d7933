#pragma once

// Constrained two-person zero-sum games on component-wise ordered integer
// grids. Player 1 receives the payoff, player 2 its negation.

#include <boost/rational.hpp>
#include <string>
#include <vector>

#include "roep/equilibrium.hpp"

namespace roep {

using Rational = boost::rational<long long>;

/// "3", "-1/2", "0.25" -> exact rational. Throws ParseError.
Rational parse_rational(std::string_view text);
/// Canonical text: "n" for integers, "n/d" otherwise.
std::string format_rational(const Rational& r);

/// All integer tuples below `dims`, ordered coordinate-wise. Elements are
/// named by their coordinates joined with '.', e.g. "1.0".
class GridPoset {
 public:
  /// Throws ZeroExtent if any extent is 0 or `dims` is empty.
  explicit GridPoset(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const PosetPtr& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return poset_->size(); }

  const std::vector<std::size_t>& coords(Element e) const { return coords_.at(e); }
  Element element(const std::vector<std::size_t>& coords) const;
  Element bottom() const { return 0; }
  Element top() const { return size() - 1; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::vector<std::size_t>> coords_;
  PosetPtr poset_;
};

GridPoset grid_poset(std::vector<std::size_t> dims);

class ZeroSumGame {
 public:
  /// `payoff` is row-major over (C position, D position).
  ZeroSumGame(Subset c, Subset d, std::vector<Rational> payoff, SetValuedMap f, SetValuedMap g);
  /// Unconstrained game: F = x -> D, G = y -> C.
  ZeroSumGame(Subset c, Subset d, std::vector<Rational> payoff);

  const Subset& c() const noexcept { return c_; }
  const Subset& d() const noexcept { return d_; }
  const SetValuedMap& f() const noexcept { return f_; }
  const SetValuedMap& g() const noexcept { return g_; }
  const std::vector<Rational>& payoffs() const noexcept { return payoff_; }
  Rational payoff(Element x, Element y) const;

 private:
  Subset c_;
  Subset d_;
  std::vector<Rational> payoff_;
  SetValuedMap f_;
  SetValuedMap g_;
};

/// U is the chain of distinct payoff values in increasing order, each named
/// by format_rational; T sends a pair to its payoff's element.
ProblemInstance build_game(const ZeroSumGame& game, std::optional<Pair> seed = std::nullopt);

/// Swaps the players: payoff (y, x) -> -T(x, y), F and G exchanged.
ZeroSumGame transpose(const ZeroSumGame& game);

/// x* in G(y*), y* in F(x*), T(x, y*) <= T(x*, y*) <= T(x*, y) for all
/// x in G(y*) and y in F(x*), checked over the rationals.
bool is_equilibrium(const ZeroSumGame& game, Pair p);

struct GameReport {
  SolutionReport report;
  Pair equilibrium;
  Rational value;
  bool saddle_verified = false;
};

/// solve_maximal on build_game(game) followed by an exhaustive re-check of
/// the saddle inequalities. Seed defaults to the first one passing the
/// hypotheses (or the bottom pair when forced).
GameReport solve_game(const ZeroSumGame& game, std::optional<Pair> seed = std::nullopt, SolveOptions opts = {});

}  // namespace roep
