#include "roep/order_maps.hpp"

#include <algorithm>

#include "roep/error.hpp"

namespace roep {

SetValuedMap::SetValuedMap(Subset domain, Subset codomain, std::vector<Subset> values)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), values_(std::move(values)) {
  if (values_.size() != domain_.size())
    throw Error(ErrorCode::ValidationError, "set-valued map needs exactly one image per domain element");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const std::string& x = domain_.poset().name(domain_[i]);
    if (values_[i].empty()) throw Error(ErrorCode::ValidationError, "image of '" + x + "' is empty");
    if (!(values_[i].parent() == codomain_.parent() || values_[i].poset() == codomain_.poset()) ||
        !values_[i].is_subset_of(codomain_))
      throw Error(ErrorCode::ValidationError, "image of '" + x + "' leaves the codomain");
  }
}

SetValuedMap SetValuedMap::constant(Subset domain, Subset codomain, const Subset& value) {
  std::vector<Subset> values(domain.size(), value);
  return SetValuedMap(std::move(domain), std::move(codomain), std::move(values));
}

SetValuedMap SetValuedMap::constant(Subset domain, Subset codomain) {
  Subset value = codomain;
  return constant(std::move(domain), std::move(codomain), value);
}

const Subset& SetValuedMap::at(Element x) const {
  auto pos = domain_.position(x);
  if (!pos) throw Error(ErrorCode::UnknownElement, "element index " + std::to_string(x) + " is outside the map's domain");
  return values_[*pos];
}

bool SetValuedMap::single_valued() const {
  return std::all_of(values_.begin(), values_.end(), [](const Subset& v) { return v.size() == 1; });
}

SetValuedMap SetValuedMap::rebased(PosetPtr domain_parent, PosetPtr codomain_parent) const {
  std::vector<Subset> values;
  values.reserve(values_.size());
  for (const auto& v : values_) values.push_back(v.rebased(codomain_parent));
  return SetValuedMap(domain_.rebased(std::move(domain_parent)), codomain_.rebased(codomain_parent),
                      std::move(values));
}

MonotonicityReport monotonicity_report(const SetValuedMap& m) {
  const Poset& dom = m.domain().poset();
  const Poset& cod = m.codomain().poset();
  const auto& d = m.domain();

  // For x <= y: every image at `from` must relate (via `rel`) to some image at `to`.
  auto every_has_witness = [&](const Subset& from, const Subset& to, auto rel) {
    return std::all_of(from.begin(), from.end(), [&](Element a) {
      return std::any_of(to.begin(), to.end(), [&](Element b) { return rel(a, b); });
    });
  };
  auto le = [&](Element a, Element b) { return cod.leq(a, b); };
  auto ge = [&](Element a, Element b) { return cod.leq(b, a); };

  MonotonicityReport r;
  r.increasing_upward = r.increasing_downward = r.decreasing_upward = r.decreasing_downward = true;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (!dom.leq(d[i], d[j])) continue;
      const Subset& tx = m.values()[i];
      const Subset& ty = m.values()[j];
      // upward: z in Tx has w in Ty with z <= w ; downward: w in Ty has z in Tx with z <= w
      r.increasing_upward = r.increasing_upward && every_has_witness(tx, ty, le);
      r.increasing_downward = r.increasing_downward && every_has_witness(ty, tx, ge);
      r.decreasing_upward = r.decreasing_upward && every_has_witness(tx, ty, ge);
      r.decreasing_downward = r.decreasing_downward && every_has_witness(ty, tx, le);
    }
  r.increasing = r.increasing_upward && r.increasing_downward;
  r.decreasing = r.decreasing_upward && r.decreasing_downward;

  if (m.single_valued()) {
    SingleValuedMonotonicity s{true, true, true, true};
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (!dom.leq(d[i], d[j])) continue;
        Element fx = m.values()[i][0];
        Element fy = m.values()[j][0];
        s.increasing = s.increasing && cod.leq(fx, fy);
        s.decreasing = s.decreasing && cod.leq(fy, fx);
        if (i != j) {
          s.strictly_increasing = s.strictly_increasing && cod.less(fx, fy);
          s.strictly_decreasing = s.strictly_decreasing && cod.less(fy, fx);
        }
      }
    s.strictly_increasing = s.strictly_increasing && s.increasing;
    s.strictly_decreasing = s.strictly_decreasing && s.decreasing;
    r.single_valued = s;
  }
  return r;
}

std::optional<Subset> constant_value(const SetValuedMap& m) {
  const auto& v = m.values();
  if (v.empty()) return std::nullopt;
  for (const auto& s : v)
    if (!(s == v.front())) return std::nullopt;
  return v.front();
}

}  // namespace roep
