#include "roep/games.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "roep/error.hpp"

namespace roep {

namespace {

long long parse_integer(std::string_view s, std::string_view whole) {
  long long v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, "not a rational number: '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    long long den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(text.substr(0, slash), text), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 17 || frac.find_first_not_of("0123456789") != std::string_view::npos)
      throw Error(ErrorCode::ParseError, "not a rational number: '" + std::string(text) + "'");
    std::string_view whole = text.substr(0, dot);
    bool negative = !whole.empty() && whole.front() == '-';
    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    long long ip = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_integer(whole, text);
    long long fp = parse_integer(frac, text);
    Rational r(ip);
    r += Rational(negative ? -fp : fp, scale);
    return r;
  }
  return Rational(parse_integer(text, text));
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// GridPoset

GridPoset::GridPoset(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorCode::ZeroExtent, "grid needs at least one dimension");
  for (std::size_t e : dims_)
    if (e == 0) throw Error(ErrorCode::ZeroExtent, "grid extents must be positive");

  // Row-major enumeration: the last coordinate varies fastest.
  std::size_t total = 1;
  for (std::size_t e : dims_) total *= e;
  coords_.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::size_t> c(dims_.size());
    std::size_t rem = idx;
    for (std::size_t k = dims_.size(); k-- > 0;) {
      c[k] = rem % dims_[k];
      rem /= dims_[k];
    }
    coords_.push_back(std::move(c));
  }

  std::vector<std::string> names;
  names.reserve(coords_.size());
  for (const auto& c : coords_) {
    std::string n;
    for (std::size_t i = 0; i < c.size(); ++i) n += (i ? "." : "") + std::to_string(c[i]);
    names.push_back(std::move(n));
  }
  poset_ = make_poset(Poset::from_relation(std::move(names), [&](Element a, Element b) {
    for (std::size_t i = 0; i < dims_.size(); ++i)
      if (coords_[a][i] > coords_[b][i]) return false;
    return true;
  }));
}

Element GridPoset::element(const std::vector<std::size_t>& coords) const {
  if (coords.size() != dims_.size()) throw Error(ErrorCode::UnknownElement, "coordinate arity mismatch");
  Element idx = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (coords[i] >= dims_[i]) throw Error(ErrorCode::UnknownElement, "coordinate out of range");
    idx = idx * dims_[i] + coords[i];
  }
  return idx;
}

GridPoset grid_poset(std::vector<std::size_t> dims) { return GridPoset(std::move(dims)); }

// ZeroSumGame

ZeroSumGame::ZeroSumGame(Subset c, Subset d, std::vector<Rational> payoff, SetValuedMap f, SetValuedMap g)
    : c_(std::move(c)), d_(std::move(d)), payoff_(std::move(payoff)), f_(std::move(f)), g_(std::move(g)) {
  if (c_.empty() || d_.empty()) throw Error(ErrorCode::ValidationError, "strategy sets must be nonempty");
  if (payoff_.size() != c_.size() * d_.size())
    throw Error(ErrorCode::ValidationError, "payoff table must cover every strategy pair");
  if (!(f_.domain() == c_) || !(f_.codomain() == d_))
    throw Error(ErrorCode::ValidationError, "F must map C into subsets of D");
  if (!(g_.domain() == d_) || !(g_.codomain() == c_))
    throw Error(ErrorCode::ValidationError, "G must map D into subsets of C");
}

ZeroSumGame::ZeroSumGame(Subset c, Subset d, std::vector<Rational> payoff)
    : ZeroSumGame(c, d, std::move(payoff), SetValuedMap::constant(c, d), SetValuedMap::constant(d, c)) {}

Rational ZeroSumGame::payoff(Element x, Element y) const {
  auto i = c_.position(x);
  auto j = d_.position(y);
  if (!i || !j) throw Error(ErrorCode::UnknownElement, "payoff evaluated outside C x D");
  return payoff_[*i * d_.size() + *j];
}

ProblemInstance build_game(const ZeroSumGame& game, std::optional<Pair> seed) {
  std::vector<Rational> distinct = game.payoffs();
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<std::string> names;
  std::vector<Poset::Edge> edges;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    names.push_back(format_rational(distinct[i]));
    if (i) edges.emplace_back(names[i - 1], names[i]);
  }
  PosetPtr u = make_poset(Poset::load(names, edges));

  std::vector<Element> table;
  table.reserve(game.payoffs().size());
  for (const Rational& v : game.payoffs())
    table.push_back(static_cast<Element>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()));

  ObjectiveMap t(game.c(), game.d(), u, std::move(table));
  return ProblemInstance(game.c(), game.d(), u, std::move(t), game.f(), game.g(), seed);
}

ZeroSumGame transpose(const ZeroSumGame& game) {
  std::vector<Rational> payoff;
  payoff.reserve(game.payoffs().size());
  for (Element y : game.d())
    for (Element x : game.c()) payoff.push_back(-game.payoff(x, y));
  return ZeroSumGame(game.d(), game.c(), std::move(payoff), game.g(), game.f());
}

bool is_equilibrium(const ZeroSumGame& game, Pair p) {
  const Subset& rows = game.g().at(p.y);
  const Subset& cols = game.f().at(p.x);
  if (!rows.contains(p.x) || !cols.contains(p.y)) return false;
  const Rational v = game.payoff(p.x, p.y);
  for (Element x : rows)
    if (game.payoff(x, p.y) > v) return false;
  for (Element y : cols)
    if (game.payoff(p.x, y) < v) return false;
  return true;
}

GameReport solve_game(const ZeroSumGame& game, std::optional<Pair> seed, SolveOptions opts) {
  const ProblemInstance inst = build_game(game, seed);
  Pair start;
  if (seed) {
    start = *seed;
  } else if (auto found = find_seed(inst)) {
    start = *found;
  } else {
    if (!opts.force) throw Error(ErrorCode::HypothesisFailed, "no strategy pair satisfies the existence hypotheses");
    start = {game.c()[0], game.d()[0]};
  }

  GameReport out;
  out.report = solve_maximal(inst, start, opts);
  out.equilibrium = *out.report.maximal_solution;
  out.value = game.payoff(out.equilibrium.x, out.equilibrium.y);
  out.saddle_verified = is_equilibrium(game, out.equilibrium);
  if (!out.saddle_verified)
    throw Error(ErrorCode::InvariantBreach, "reported equilibrium " + inst.pair_name(out.equilibrium) +
                                                " violates a saddle inequality");
  return out;
}

}  // namespace roep
