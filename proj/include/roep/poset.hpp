#pragma once

// Finite partial orders with a precomputed reflexive-transitive incidence
// matrix, subsets of them, component-wise products and the chain-based
// completeness predicates.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace roep {

/// Index of an element inside its Poset. Stable for the Poset's lifetime.
using Element = std::size_t;

enum class EdgeKind { hasse, full };

class Poset {
 public:
  using Edge = std::pair<std::string, std::string>;

  /// Builds the reflexive-transitive closure of `edges` (each edge a <= b).
  /// Throws DuplicateElement, UnknownElement or CycleDetected.
  static Poset load(std::vector<std::string> elements, std::span<const Edge> edges,
                    EdgeKind kind = EdgeKind::hasse);

  /// Tabulates `leq` over all pairs and validates it as a partial order
  /// without closing it. Used for products, grids, and duals.
  static Poset from_relation(std::vector<std::string> elements,
                             const std::function<bool(Element, Element)>& leq);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& elements() const noexcept { return names_; }
  const std::string& name(Element e) const;

  /// Throws UnknownElement.
  Element index(std::string_view name) const;
  std::optional<Element> find(std::string_view name) const;

  bool leq(Element a, Element b) const { return rel_[a * names_.size() + b] != 0; }
  bool less(Element a, Element b) const { return a != b && leq(a, b); }
  bool comparable(Element a, Element b) const { return leq(a, b) || leq(b, a); }
  bool leq(std::string_view a, std::string_view b) const { return leq(index(a), index(b)); }

  /// Number of related ordered pairs, reflexive ones included.
  std::size_t relation_size() const;
  bool is_total() const;

  /// Same elements (same indices) with the order reversed.
  Poset dual() const;

  /// Covering pairs (a, b): a < b with nothing strictly between.
  std::vector<std::pair<Element, Element>> covers() const;

  friend bool operator==(const Poset&, const Poset&) = default;

 private:
  Poset(std::vector<std::string> names, std::vector<char> rel);
  static std::unordered_map<std::string, Element> index_names(const std::vector<std::string>& names);
  void check_partial_order() const;

  std::vector<std::string> names_;
  std::vector<char> rel_;
  std::unordered_map<std::string, Element> index_;
};

using PosetPtr = std::shared_ptr<const Poset>;

PosetPtr make_poset(Poset p);

/// A sorted, duplicate-free set of elements of a shared parent Poset.
class Subset {
 public:
  /// Throws UnknownElement if a member is out of range for the parent.
  Subset(PosetPtr parent, std::vector<Element> members);

  static Subset all(PosetPtr parent);
  static Subset from_names(PosetPtr parent, std::span<const std::string> names);

  const Poset& poset() const noexcept { return *parent_; }
  const PosetPtr& parent() const noexcept { return parent_; }
  std::span<const Element> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  Element operator[](std::size_t i) const { return members_[i]; }

  bool contains(Element e) const;
  /// Position of `e` within members(), if present.
  std::optional<std::size_t> position(Element e) const;

  bool is_subset_of(const Subset& other) const;
  std::vector<std::string> names() const;

  /// The same members over another parent with the same ground set
  /// (typically the dual of the current parent).
  Subset rebased(PosetPtr parent) const;

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.members_ == b.members_ && (a.parent_ == b.parent_ || *a.parent_ == *b.parent_);
  }

 private:
  PosetPtr parent_;
  std::vector<Element> members_;
};

/// Elements of s with no strictly greater element in s. Throws EmptySubset.
Subset maximal_points(const Subset& s);
/// Elements of s with no strictly smaller element in s. Throws EmptySubset.
Subset minimal_points(const Subset& s);

/// Principal up-set [a) of the whole parent, including a.
Subset up_set(const PosetPtr& p, Element a);
/// Principal down-set (a] of the whole parent, including a.
Subset down_set(const PosetPtr& p, Element a);

bool is_chain(const Subset& s);
bool is_antichain(const Subset& s);

/// Greatest/least element of s, if any.
std::optional<Element> greatest(const Subset& s);
std::optional<Element> least(const Subset& s);

/// Component-wise order on X x Y. Pair (x, y) lives at index x * |Y| + y.
class ProductPoset {
 public:
  ProductPoset(PosetPtr x, PosetPtr y);

  const PosetPtr& poset() const noexcept { return product_; }
  const Poset& x() const noexcept { return *x_; }
  const Poset& y() const noexcept { return *y_; }

  Element pair_index(Element x, Element y) const { return x * y_->size() + y; }
  std::pair<Element, Element> factors(Element p) const { return {p / y_->size(), p % y_->size()}; }

 private:
  PosetPtr x_;
  PosetPtr y_;
  PosetPtr product_;
};

ProductPoset product(PosetPtr x, PosetPtr y);

/// Calls `visit` on every nonempty chain drawn from `pool`, each presented
/// in ascending order. Returns the number of chains visited.
std::size_t for_each_chain(const Poset& p, std::span<const Element> pool,
                           const std::function<void(std::span<const Element>)>& visit);

struct CompletenessReport {
  bool chain_complete = false;
  bool inductive = false;
  bool bi_inductive = false;
  bool universally_inductive = false;
  std::size_t chains_checked = 0;

  bool all() const { return chain_complete && inductive && bi_inductive && universally_inductive; }
};

/// Evaluates the four completeness predicates of `s` by exhaustive chain
/// enumeration. Universal inductivity quantifies over chains of `ambient`
/// whose elements are each dominated by a member of s. In a finite poset
/// every predicate holds (a finite chain contains its own maximum); a false
/// flag is reported as InvariantBreach. Throws EmptySubset.
CompletenessReport order_completeness_report(const Subset& s, const Subset& ambient);
CompletenessReport order_completeness_report(const Subset& s);

}  // namespace roep
