#pragma once

#include <optional>
#include <vector>

#include "roep/poset.hpp"

namespace roep {

/// A mapping from a domain subset to nonempty subsets of a codomain subset.
class SetValuedMap {
 public:
  /// `values[i]` is the image of `domain[i]`. Throws ValidationError if an
  /// image is empty or leaves the codomain, or the sizes disagree.
  SetValuedMap(Subset domain, Subset codomain, std::vector<Subset> values);

  /// x -> value for every x in domain.
  static SetValuedMap constant(Subset domain, Subset codomain, const Subset& value);
  static SetValuedMap constant(Subset domain, Subset codomain);

  const Subset& domain() const noexcept { return domain_; }
  const Subset& codomain() const noexcept { return codomain_; }
  const std::vector<Subset>& values() const noexcept { return values_; }

  /// Throws UnknownElement when x is outside the domain.
  const Subset& at(Element x) const;

  bool single_valued() const;

  /// Same table over other parents with the same ground sets.
  SetValuedMap rebased(PosetPtr domain_parent, PosetPtr codomain_parent) const;

 private:
  Subset domain_;
  Subset codomain_;
  std::vector<Subset> values_;
};

/// Order behaviour of a single-valued map; only filled for maps whose every
/// image is a singleton.
struct SingleValuedMonotonicity {
  bool increasing = false;
  bool strictly_increasing = false;
  bool decreasing = false;
  bool strictly_decreasing = false;
};

struct MonotonicityReport {
  bool increasing_upward = false;
  bool increasing_downward = false;
  bool increasing = false;
  bool decreasing_upward = false;
  bool decreasing_downward = false;
  bool decreasing = false;
  std::optional<SingleValuedMonotonicity> single_valued;
};

/// Exhaustive evaluation over every comparable pair of domain elements.
MonotonicityReport monotonicity_report(const SetValuedMap& m);

/// The common image when every entry is the same set.
std::optional<Subset> constant_value(const SetValuedMap& m);
inline bool is_constant(const SetValuedMap& m) { return constant_value(m).has_value(); }

}  // namespace roep
