#include "roep/poset.hpp"

#include <algorithm>
#include <sstream>

#include "roep/error.hpp"

namespace roep {

namespace {

std::vector<Element> sorted_unique(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_nonempty(const Subset& s, const char* what) {
  if (s.empty()) throw Error(ErrorCode::EmptySubset, std::string(what) + " requires a nonempty subset");
}

}  // namespace

Poset::Poset(std::vector<std::string> names, std::vector<char> rel)
    : names_(std::move(names)), rel_(std::move(rel)), index_(index_names(names_)) {}

std::unordered_map<std::string, Element> Poset::index_names(const std::vector<std::string>& names) {
  std::unordered_map<std::string, Element> index;
  index.reserve(names.size());
  for (Element i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second)
      throw Error(ErrorCode::DuplicateElement, "element '" + names[i] + "' listed twice");
  }
  return index;
}

Poset Poset::load(std::vector<std::string> elements, std::span<const Edge> edges, EdgeKind kind) {
  const auto index = index_names(elements);
  const std::size_t n = elements.size();
  std::vector<char> rel(n * n, 0);
  for (Element i = 0; i < n; ++i) rel[i * n + i] = 1;

  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw Error(ErrorCode::UnknownElement, "edge references unknown element '" + name + "'");
    return it->second;
  };
  for (const auto& [a, b] : edges) rel[lookup(a) * n + lookup(b)] = 1;

  // Warshall. A full relation is already closed; closing it again is a no-op.
  (void)kind;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rel[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (rel[k * n + j]) rel[i * n + j] = 1;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rel[i * n + j] && rel[j * n + i])
        throw Error(ErrorCode::CycleDetected,
                    "'" + elements[i] + "' and '" + elements[j] + "' lie on a common cycle");

  return Poset(std::move(elements), std::move(rel));
}

Poset Poset::from_relation(std::vector<std::string> elements,
                           const std::function<bool(Element, Element)>& leq) {
  const std::size_t n = elements.size();
  std::vector<char> rel(n * n, 0);
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j) rel[i * n + j] = leq(i, j) ? 1 : 0;
  Poset p(std::move(elements), std::move(rel));
  p.check_partial_order();
  return p;
}

void Poset::check_partial_order() const {
  const std::size_t n = size();
  for (Element a = 0; a < n; ++a) {
    if (!leq(a, a)) throw Error(ErrorCode::ValidationError, "relation is not reflexive at '" + names_[a] + "'");
    for (Element b = 0; b < n; ++b) {
      if (a != b && leq(a, b) && leq(b, a))
        throw Error(ErrorCode::CycleDetected, "'" + names_[a] + "' and '" + names_[b] + "' are mutually related");
      if (!leq(a, b)) continue;
      for (Element c = 0; c < n; ++c)
        if (leq(b, c) && !leq(a, c))
          throw Error(ErrorCode::ValidationError, "relation is not transitive at '" + names_[a] + "' <= '" +
                                                     names_[b] + "' <= '" + names_[c] + "'");
    }
  }
}

const std::string& Poset::name(Element e) const {
  if (e >= names_.size()) throw Error(ErrorCode::UnknownElement, "element index " + std::to_string(e) + " out of range");
  return names_[e];
}

Element Poset::index(std::string_view name) const {
  if (auto e = find(name)) return *e;
  throw Error(ErrorCode::UnknownElement, "unknown element '" + std::string(name) + "'");
}

std::optional<Element> Poset::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Poset::relation_size() const {
  return static_cast<std::size_t>(std::count(rel_.begin(), rel_.end(), char{1}));
}

bool Poset::is_total() const {
  for (Element a = 0; a < size(); ++a)
    for (Element b = a + 1; b < size(); ++b)
      if (!comparable(a, b)) return false;
  return true;
}

Poset Poset::dual() const {
  const std::size_t n = size();
  std::vector<char> rel(n * n, 0);
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j) rel[i * n + j] = rel_[j * n + i];
  return Poset(names_, std::move(rel));
}

std::vector<std::pair<Element, Element>> Poset::covers() const {
  std::vector<std::pair<Element, Element>> out;
  for (Element a = 0; a < size(); ++a)
    for (Element b = 0; b < size(); ++b) {
      if (!less(a, b)) continue;
      bool between = false;
      for (Element c = 0; c < size() && !between; ++c) between = less(a, c) && less(c, b);
      if (!between) out.emplace_back(a, b);
    }
  return out;
}

PosetPtr make_poset(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

// Subset

Subset::Subset(PosetPtr parent, std::vector<Element> members)
    : parent_(std::move(parent)), members_(sorted_unique(std::move(members))) {
  if (!parent_) throw Error(ErrorCode::InvalidArgument, "subset without a parent poset");
  if (!members_.empty() && members_.back() >= parent_->size())
    throw Error(ErrorCode::UnknownElement, "subset member index " + std::to_string(members_.back()) + " out of range");
}

Subset Subset::all(PosetPtr parent) {
  std::vector<Element> m(parent->size());
  for (Element i = 0; i < m.size(); ++i) m[i] = i;
  return Subset(std::move(parent), std::move(m));
}

Subset Subset::from_names(PosetPtr parent, std::span<const std::string> names) {
  std::vector<Element> m;
  m.reserve(names.size());
  for (const auto& n : names) m.push_back(parent->index(n));
  return Subset(std::move(parent), std::move(m));
}

bool Subset::contains(Element e) const { return std::binary_search(members_.begin(), members_.end(), e); }

std::optional<std::size_t> Subset::position(Element e) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), e);
  if (it == members_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

bool Subset::is_subset_of(const Subset& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

std::vector<std::string> Subset::names() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (Element e : members_) out.push_back(parent_->name(e));
  return out;
}

Subset Subset::rebased(PosetPtr parent) const {
  if (parent->size() != parent_->size())
    throw Error(ErrorCode::InvalidArgument, "rebased subset needs a parent with the same ground set");
  return Subset(std::move(parent), members_);
}

// Extremal points

Subset maximal_points(const Subset& s) {
  require_nonempty(s, "maximal_points");
  const Poset& p = s.poset();
  std::vector<Element> out;
  for (Element m : s) {
    bool dominated = std::any_of(s.begin(), s.end(), [&](Element t) { return p.less(m, t); });
    if (!dominated) out.push_back(m);
  }
  return Subset(s.parent(), std::move(out));
}

Subset minimal_points(const Subset& s) {
  require_nonempty(s, "minimal_points");
  const Poset& p = s.poset();
  std::vector<Element> out;
  for (Element m : s) {
    bool dominated = std::any_of(s.begin(), s.end(), [&](Element t) { return p.less(t, m); });
    if (!dominated) out.push_back(m);
  }
  return Subset(s.parent(), std::move(out));
}

Subset up_set(const PosetPtr& p, Element a) {
  p->name(a);
  std::vector<Element> out;
  for (Element b = 0; b < p->size(); ++b)
    if (p->leq(a, b)) out.push_back(b);
  return Subset(p, std::move(out));
}

Subset down_set(const PosetPtr& p, Element a) {
  p->name(a);
  std::vector<Element> out;
  for (Element b = 0; b < p->size(); ++b)
    if (p->leq(b, a)) out.push_back(b);
  return Subset(p, std::move(out));
}

bool is_chain(const Subset& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!s.poset().comparable(s[i], s[j])) return false;
  return true;
}

bool is_antichain(const Subset& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s.poset().comparable(s[i], s[j])) return false;
  return true;
}

std::optional<Element> greatest(const Subset& s) {
  for (Element g : s)
    if (std::all_of(s.begin(), s.end(), [&](Element t) { return s.poset().leq(t, g); })) return g;
  return std::nullopt;
}

std::optional<Element> least(const Subset& s) {
  for (Element g : s)
    if (std::all_of(s.begin(), s.end(), [&](Element t) { return s.poset().leq(g, t); })) return g;
  return std::nullopt;
}

// Product

ProductPoset::ProductPoset(PosetPtr x, PosetPtr y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t ny = y_->size();
  std::vector<std::string> names;
  names.reserve(x_->size() * ny);
  for (Element i = 0; i < x_->size(); ++i)
    for (Element j = 0; j < ny; ++j) names.push_back("(" + x_->name(i) + "," + y_->name(j) + ")");

  const Poset& px = *x_;
  const Poset& py = *y_;
  product_ = make_poset(Poset::from_relation(std::move(names), [&](Element a, Element b) {
    return px.leq(a / ny, b / ny) && py.leq(a % ny, b % ny);
  }));

  for (Element a = 0; a < product_->size(); ++a)
    for (Element b = 0; b < product_->size(); ++b) {
      auto [ax, ay] = factors(a);
      auto [bx, by] = factors(b);
      if (product_->leq(a, b) != (px.leq(ax, bx) && py.leq(ay, by)))
        throw Error(ErrorCode::InvariantBreach, "product order disagrees with its factors");
    }
}

ProductPoset product(PosetPtr x, PosetPtr y) { return ProductPoset(std::move(x), std::move(y)); }

// Chains and completeness

std::size_t for_each_chain(const Poset& p, std::span<const Element> pool,
                           const std::function<void(std::span<const Element>)>& visit) {
  // Order the pool by down-set size: a < b implies |(a]| < |(b]|, so every
  // chain is an increasing subsequence of this order.
  std::vector<std::pair<std::size_t, Element>> keyed;
  keyed.reserve(pool.size());
  for (Element e : pool) {
    std::size_t below = 0;
    for (Element f = 0; f < p.size(); ++f) below += p.leq(f, e) ? 1 : 0;
    keyed.emplace_back(below, e);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Element> order;
  order.reserve(keyed.size());
  for (const auto& [k, e] : keyed) order.push_back(e);

  std::vector<Element> chain;
  std::size_t count = 0;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    for (std::size_t j = from; j < order.size(); ++j) {
      if (!chain.empty() && !p.less(chain.back(), order[j])) continue;
      chain.push_back(order[j]);
      ++count;
      visit(chain);
      extend(j + 1);
      chain.pop_back();
    }
  };
  extend(0);
  return count;
}

CompletenessReport order_completeness_report(const Subset& s, const Subset& ambient) {
  require_nonempty(s, "order_completeness_report");
  if (!s.is_subset_of(ambient))
    throw Error(ErrorCode::InvalidArgument, "completeness report: subset is not contained in its ambient set");
  const Poset& p = s.poset();

  auto is_upper_bound = [&](Element u, std::span<const Element> chain) {
    return std::all_of(chain.begin(), chain.end(), [&](Element c) { return p.leq(c, u); });
  };
  auto is_lower_bound = [&](Element l, std::span<const Element> chain) {
    return std::all_of(chain.begin(), chain.end(), [&](Element c) { return p.leq(l, c); });
  };

  CompletenessReport r{true, true, true, true, 0};
  r.chains_checked += for_each_chain(p, s.members(), [&](std::span<const Element> chain) {
    std::vector<Element> uppers;
    bool has_lower = false;
    for (Element t : s) {
      if (is_upper_bound(t, chain)) uppers.push_back(t);
      if (is_lower_bound(t, chain)) has_lower = true;
    }
    if (uppers.empty()) r.inductive = false;
    if (uppers.empty() || !has_lower) r.bi_inductive = false;
    // Supremum: an upper bound below every other upper bound.
    bool has_sup = std::any_of(uppers.begin(), uppers.end(), [&](Element u) {
      return std::all_of(uppers.begin(), uppers.end(), [&](Element v) { return p.leq(u, v); });
    });
    if (!has_sup) r.chain_complete = false;
  });

  std::vector<Element> dominated;
  for (Element a : ambient)
    if (std::any_of(s.begin(), s.end(), [&](Element t) { return p.leq(a, t); })) dominated.push_back(a);
  r.chains_checked += for_each_chain(p, dominated, [&](std::span<const Element> chain) {
    if (std::none_of(s.begin(), s.end(), [&](Element t) { return is_upper_bound(t, chain); }))
      r.universally_inductive = false;
  });

  if (!r.all()) {
    std::ostringstream msg;
    msg << "finite subset failed a completeness predicate (chain_complete=" << r.chain_complete
        << ", inductive=" << r.inductive << ", bi_inductive=" << r.bi_inductive
        << ", universally_inductive=" << r.universally_inductive << ")";
    throw Error(ErrorCode::InvariantBreach, msg.str());
  }
  return r;
}

CompletenessReport order_completeness_report(const Subset& s) {
  return order_completeness_report(s, Subset::all(s.parent()));
}

}  // namespace roep
