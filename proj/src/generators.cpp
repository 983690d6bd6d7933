#include "roep/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "roep/error.hpp"
#include "roep/games.hpp"

namespace roep {

namespace {

// Draws are computed from raw 64-bit outputs so sequences do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Poset chain_poset(const std::string& prefix, std::size_t n) {
  std::vector<std::string> names = numbered(prefix, n);
  std::vector<Poset::Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(names[i - 1], names[i]);
  return Poset::load(names, edges);
}

// Strict upper-triangular edges over a shuffled order, then closed.
Poset random_poset(Rng& rng, const std::string& prefix, std::size_t n, double density, bool bounded) {
  std::vector<std::string> names = numbered(prefix, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<Poset::Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool forced = bounded && (i == 0 || j == n - 1);
      if (forced || rng.chance(density)) edges.emplace_back(names[order[i]], names[order[j]]);
    }
  return Poset::load(names, edges);
}

// Length of the longest chain strictly below each element.
std::vector<std::size_t> heights(const Poset& p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> below(p.size(), 0);
  for (Element e = 0; e < p.size(); ++e)
    for (Element f = 0; f < p.size(); ++f) below[e] += p.leq(f, e) ? 1 : 0;
  std::sort(order.begin(), order.end(), [&](Element a, Element b) { return below[a] < below[b]; });
  std::vector<std::size_t> h(p.size(), 0);
  for (Element e : order)
    for (Element f = 0; f < p.size(); ++f)
      if (p.less(f, e)) h[e] = std::max(h[e], h[f] + 1);
  return h;
}

// a(x) = sum of weights over the down-set of x: order-monotone.
std::vector<std::size_t> monotone_score(Rng& rng, const Poset& p) {
  std::vector<std::size_t> w(p.size());
  for (auto& v : w) v = rng.below(3) == 0 ? 0 : 1;
  std::vector<std::size_t> a(p.size(), 0);
  for (Element x = 0; x < p.size(); ++x)
    for (Element e = 0; e < p.size(); ++e)
      if (p.leq(e, x)) a[x] += w[e];
  return a;
}

Subset random_nonempty(Rng& rng, const Subset& from) {
  std::vector<Element> m;
  for (Element e : from)
    if (rng.chance(0.5)) m.push_back(e);
  if (m.empty()) m.push_back(from[rng.below(from.size())]);
  return Subset(from.parent(), std::move(m));
}

ConstraintStyle pick_style(Rng& rng, ConstraintStyle style) {
  if (style != ConstraintStyle::mixed) return style;
  return static_cast<ConstraintStyle>(rng.below(3));
}

// F: C -> D (up-sets when principal) or G: D -> C (down-sets when
// principal), depending on `upward`.
SetValuedMap draw_constraint(Rng& rng, ConstraintStyle style, const Subset& domain, const Subset& codomain,
                             bool upward) {
  std::vector<Subset> values;
  values.reserve(domain.size());
  const auto hd = heights(domain.poset());
  const auto hc = heights(codomain.poset());
  const std::size_t max_hd = *std::max_element(hd.begin(), hd.end());
  const std::size_t max_hc = *std::max_element(hc.begin(), hc.end());
  for (Element x : domain) {
    switch (style) {
      case ConstraintStyle::constant:
        values.push_back(codomain);
        break;
      case ConstraintStyle::random:
        values.push_back(random_nonempty(rng, codomain));
        break;
      default: {
        const std::size_t scaled = max_hd == 0 ? 0 : hd[x] * max_hc / max_hd;
        std::vector<Element> m;
        for (Element y : codomain) {
          bool keep = upward ? hc[y] >= scaled : hc[y] <= scaled;
          if (keep) m.push_back(y);
        }
        values.emplace_back(codomain.parent(), std::move(m));
        break;
      }
    }
  }
  return SetValuedMap(domain, codomain, std::move(values));
}

void require_sizes(const GenSpec& spec, std::size_t count) {
  if (spec.sizes.size() != count)
    throw Error(ErrorCode::InvalidSpec, to_string(spec.kind) + " takes " + std::to_string(count) + " size parameter(s)");
  for (std::size_t s : spec.sizes)
    if (s == 0) throw Error(ErrorCode::InvalidSpec, "sizes must be positive");
}

ProblemInstance draw_instance(Rng& rng, const GenSpec& spec) {
  const std::size_t nc = spec.sizes[0];
  const std::size_t nd = spec.sizes[1];
  const std::size_t nu = spec.sizes[2];

  auto factor = [&](const std::string& prefix, std::size_t n) {
    switch (spec.factor_shape) {
      case FactorShape::chain: return chain_poset(prefix, n);
      case FactorShape::bounded: return random_poset(rng, prefix, n, spec.density, true);
      case FactorShape::random: break;
    }
    return random_poset(rng, prefix, n, spec.density, false);
  };
  PosetPtr x = make_poset(factor("c", nc));
  PosetPtr y = make_poset(factor("d", nd));
  const bool chain_u = spec.total_utility || spec.monotone_bias;
  PosetPtr u = make_poset(chain_u ? chain_poset("u", nu) : random_poset(rng, "u", nu, spec.density, false));
  Subset c = Subset::all(x);
  Subset d = Subset::all(y);

  std::vector<Element> table;
  table.reserve(nc * nd);
  if (spec.monotone_bias) {
    const auto a = monotone_score(rng, *x);
    const auto b = monotone_score(rng, *y);
    for (Element i : c)
      for (Element j : d) table.push_back(std::min(nu - 1, a[i] + b[j]));
  } else {
    for (std::size_t k = 0; k < nc * nd; ++k) table.push_back(rng.below(nu));
  }

  SetValuedMap f = draw_constraint(rng, pick_style(rng, spec.constraints), c, d, true);
  SetValuedMap g = draw_constraint(rng, pick_style(rng, spec.constraints), d, c, false);
  ObjectiveMap t(c, d, u, std::move(table));
  return ProblemInstance(c, d, u, std::move(t), std::move(f), std::move(g));
}

}  // namespace

std::string to_string(GenKind kind) {
  switch (kind) {
    case GenKind::chain: return "chain";
    case GenKind::antichain: return "antichain";
    case GenKind::boolean_lattice: return "boolean_lattice";
    case GenKind::grid: return "grid";
    case GenKind::random_poset: return "random_poset";
    case GenKind::random_instance: return "random_instance";
  }
  return "unknown";
}

GenKind parse_gen_kind(std::string_view text) {
  for (GenKind k : {GenKind::chain, GenKind::antichain, GenKind::boolean_lattice, GenKind::grid,
                    GenKind::random_poset, GenKind::random_instance})
    if (to_string(k) == text) return k;
  throw Error(ErrorCode::InvalidSpec, "unknown generator kind '" + std::string(text) + "'");
}

Poset gen_poset(const GenSpec& spec) {
  std::size_t total = 1;
  switch (spec.kind) {
    case GenKind::chain:
      require_sizes(spec, 1);
      total = spec.sizes[0];
      break;
    case GenKind::antichain:
    case GenKind::random_poset:
      require_sizes(spec, 1);
      total = spec.sizes[0];
      break;
    case GenKind::boolean_lattice:
      require_sizes(spec, 1);
      if (spec.sizes[0] >= 16) throw Error(ErrorCode::InvalidSpec, "boolean lattice rank too large");
      total = std::size_t{1} << spec.sizes[0];
      break;
    case GenKind::grid:
      if (spec.sizes.empty()) throw Error(ErrorCode::InvalidSpec, "grid needs at least one extent");
      for (std::size_t s : spec.sizes) {
        if (s == 0) throw Error(ErrorCode::InvalidSpec, "sizes must be positive");
        total *= s;
      }
      break;
    case GenKind::random_instance:
      throw Error(ErrorCode::InvalidSpec, "random_instance is not a poset kind");
  }
  if (total > spec.caps.max_poset)
    throw Error(ErrorCode::InvalidSpec, "poset of " + std::to_string(total) + " elements exceeds the cap of " +
                                            std::to_string(spec.caps.max_poset));

  switch (spec.kind) {
    case GenKind::chain:
      return chain_poset("e", total);
    case GenKind::antichain:
      return Poset::load(numbered("e", total), {});
    case GenKind::random_poset: {
      if (spec.density < 0.0 || spec.density > 1.0) throw Error(ErrorCode::InvalidSpec, "density must lie in [0, 1]");
      Rng rng(spec.rng_seed);
      return random_poset(rng, "e", total, spec.density, false);
    }
    case GenKind::boolean_lattice: {
      const std::size_t k = spec.sizes[0];
      std::vector<std::string> names;
      for (std::size_t mask = 0; mask < total; ++mask) {
        std::string n;
        for (std::size_t bit = k; bit-- > 0;) n += (mask >> bit) & 1 ? '1' : '0';
        names.push_back(std::move(n));
      }
      return Poset::from_relation(std::move(names), [](Element a, Element b) { return (a & ~b) == 0; });
    }
    case GenKind::grid:
      return *grid_poset(spec.sizes).poset();
    case GenKind::random_instance:
      break;
  }
  throw Error(ErrorCode::InvalidSpec, "unsupported generator kind");
}

ProblemInstance gen_instance(const GenSpec& spec) {
  if (spec.kind != GenKind::random_instance) throw Error(ErrorCode::InvalidSpec, "gen_instance needs random_instance");
  require_sizes(spec, 3);
  if (spec.sizes[0] > spec.caps.max_c || spec.sizes[1] > spec.caps.max_d || spec.sizes[2] > spec.caps.max_u)
    throw Error(ErrorCode::InvalidSpec, "instance sizes exceed the configured caps");
  if (spec.density < 0.0 || spec.density > 1.0) throw Error(ErrorCode::InvalidSpec, "density must lie in [0, 1]");

  Rng rng(spec.rng_seed);
  if (spec.filter == GenFilter::none) return draw_instance(rng, spec);

  for (std::size_t attempt = 0; attempt < spec.caps.max_retries; ++attempt) {
    ProblemInstance inst = draw_instance(rng, spec);
    if (auto seed = find_seed(inst)) return inst.with_seed(*seed);
  }
  throw Error(ErrorCode::FilterExhausted, "no instance passed the hypotheses within " +
                                               std::to_string(spec.caps.max_retries) + " draws");
}

}  // namespace roep
