#include "roep/instance_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "roep/error.hpp"

namespace roep::io {

using json = nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& section, const std::string& msg) {
  throw Error(ErrorCode::ParseError, section + ": " + msg);
}

[[noreturn]] void invalid(const std::string& section, const std::string& msg) {
  throw Error(ErrorCode::ValidationError, section + ": " + msg);
}

// Runs `fn`, attributing any failure to `section`.
template <typename Fn>
auto in_section(const std::string& section, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError) throw;
    throw Error(ErrorCode::ValidationError, section + ": " + e.what());
  } catch (const json::exception& e) {
    parse_fail(section, e.what());
  }
}

void check_keys(const json& obj, const std::string& section, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) parse_fail(section, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) parse_fail(section, "unknown field '" + key + "'");
  }
}

std::string as_string(const json& j, const std::string& section) {
  if (!j.is_string()) parse_fail(section, "expected a string, got " + j.dump());
  return j.get<std::string>();
}

std::vector<std::string> as_strings(const json& j, const std::string& section) {
  if (!j.is_array()) parse_fail(section, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(as_string(e, section));
  return out;
}

Poset parse_poset_body(const json& body, const std::string& section, bool with_schema) {
  if (with_schema)
    check_keys(body, section, {"schema", "name", "elements", "edges", "edge_kind"});
  else
    check_keys(body, section, {"elements", "edges", "edge_kind"});
  if (!body.contains("elements")) parse_fail(section, "missing 'elements'");
  auto elements = as_strings(body.at("elements"), section + ".elements");

  std::vector<Poset::Edge> edges;
  if (body.contains("edges")) {
    const json& e = body.at("edges");
    if (!e.is_array()) parse_fail(section + ".edges", "expected an array of [a, b] pairs");
    for (const auto& pair : e) {
      auto ab = as_strings(pair, section + ".edges");
      if (ab.size() != 2) parse_fail(section + ".edges", "each edge must be [a, b]");
      edges.emplace_back(ab[0], ab[1]);
    }
  }
  EdgeKind kind = EdgeKind::hasse;
  if (body.contains("edge_kind")) {
    std::string k = as_string(body.at("edge_kind"), section + ".edge_kind");
    if (k == "full")
      kind = EdgeKind::full;
    else if (k != "hasse")
      parse_fail(section + ".edge_kind", "expected 'hasse' or 'full'");
  }
  return in_section(section, [&] { return Poset::load(std::move(elements), edges, kind); });
}

json poset_body(const Poset& p) {
  json edges = json::array();
  for (auto [a, b] : p.covers()) edges.push_back({p.name(a), p.name(b)});
  return {{"elements", p.elements()}, {"edges", std::move(edges)}, {"edge_kind", "hasse"}};
}

Subset parse_strategy_set(const json& spec, const std::string& section, const std::map<std::string, PosetPtr>& posets) {
  check_keys(spec, section, {"poset", "members", "grid"});
  if (spec.contains("grid")) {
    if (spec.contains("poset") || spec.contains("members")) parse_fail(section, "'grid' excludes 'poset' and 'members'");
    const json& g = spec.at("grid");
    if (!g.is_array()) parse_fail(section + ".grid", "expected an array of extents");
    std::vector<std::size_t> dims;
    for (const auto& e : g) {
      if (!e.is_number_integer() || e.get<long long>() < 0) parse_fail(section + ".grid", "extents must be integers >= 0");
      dims.push_back(e.get<std::size_t>());
    }
    return in_section(section, [&] { return Subset::all(grid_poset(std::move(dims)).poset()); });
  }
  if (!spec.contains("poset")) parse_fail(section, "needs 'poset' or 'grid'");
  std::string name = as_string(spec.at("poset"), section + ".poset");
  auto it = posets.find(name);
  if (it == posets.end()) invalid(section, "unknown poset '" + name + "'");
  if (!spec.contains("members")) return Subset::all(it->second);
  auto members = as_strings(spec.at("members"), section + ".members");
  Subset s = in_section(section, [&] { return Subset::from_names(it->second, members); });
  if (s.empty()) invalid(section, "must be nonempty");
  return s;
}

Element member(const Subset& s, const std::string& name, const std::string& section, const char* set_name) {
  auto e = s.poset().find(name);
  if (!e || !s.contains(*e)) invalid(section, "'" + name + "' is not an element of " + set_name);
  return *e;
}

SetValuedMap parse_constraint(const json* spec, const std::string& section, const Subset& domain,
                              const Subset& codomain, const char* dom_name, const char* cod_name) {
  if (!spec) return SetValuedMap::constant(domain, codomain);
  if (!spec->is_object()) parse_fail(section, "expected an object mapping elements to arrays");
  std::map<Element, Subset> table;
  for (const auto& [key, value] : spec->items()) {
    Element x = member(domain, key, section, dom_name);
    std::vector<Element> image;
    for (const auto& y : as_strings(value, section + "." + key)) image.push_back(member(codomain, y, section, cod_name));
    if (image.empty()) invalid(section, "image of '" + key + "' is empty; constraint values must be nonempty");
    table.emplace(x, Subset(codomain.parent(), std::move(image)));
  }
  std::vector<Subset> values;
  for (Element x : domain) {
    auto it = table.find(x);
    if (it == table.end()) invalid(section, "no entry for '" + domain.poset().name(x) + "'");
    values.push_back(it->second);
  }
  return in_section(section, [&] { return SetValuedMap(domain, codomain, std::move(values)); });
}

Rational parse_payoff(const json& v, const std::string& section) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return in_section(section, [&] { return parse_rational(v.get<std::string>()); });
  parse_fail(section, "payoffs must be integers or exact strings such as \"1/3\" or \"0.25\", got " + v.dump());
}

Document parse_instance_doc(const json& doc) {
  check_keys(doc, "instance", {"schema", "mode", "posets", "C", "D", "U", "T", "F", "G", "seed"});
  std::string mode = doc.contains("mode") ? as_string(doc.at("mode"), "mode") : "roep";
  if (mode != "roep" && mode != "game") parse_fail("mode", "expected 'roep' or 'game'");
  const bool game = mode == "game";

  std::map<std::string, PosetPtr> posets;
  if (doc.contains("posets")) {
    const json& ps = doc.at("posets");
    if (!ps.is_object()) parse_fail("posets", "expected an object of named posets");
    for (const auto& [name, body] : ps.items())
      posets.emplace(name, make_poset(parse_poset_body(body, "posets." + name, false)));
  }
  for (const char* key : {"C", "D", "T"})
    if (!doc.contains(key)) parse_fail(key, "missing section");
  Subset c = parse_strategy_set(doc.at("C"), "C", posets);
  Subset d = parse_strategy_set(doc.at("D"), "D", posets);

  PosetPtr u;
  if (game) {
    if (doc.contains("U")) parse_fail("U", "game mode builds U from the payoffs; remove 'U'");
  } else {
    if (!doc.contains("U")) parse_fail("U", "missing section");
    std::string name = as_string(doc.at("U"), "U");
    auto it = posets.find(name);
    if (it == posets.end()) invalid("U", "unknown poset '" + name + "'");
    u = it->second;
  }

  const json& rows = doc.at("T");
  if (!rows.is_array()) parse_fail("T", "expected an array of [x, y, value] rows");
  std::vector<std::optional<Element>> values(c.size() * d.size());
  std::vector<std::optional<Rational>> payoffs(c.size() * d.size());
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 3) parse_fail("T", "each row must be [x, y, value]");
    Element x = member(c, as_string(row[0], "T"), "T", "C");
    Element y = member(d, as_string(row[1], "T"), "T", "D");
    std::size_t k = *c.position(x) * d.size() + *d.position(y);
    if (values[k] || payoffs[k])
      invalid("T", "duplicate row for (" + c.poset().name(x) + "," + d.poset().name(y) + ")");
    if (game) {
      payoffs[k] = parse_payoff(row[2], "T");
    } else {
      std::string v = as_string(row[2], "T");
      auto e = u->find(v);
      if (!e) invalid("T", "value '" + v + "' is not an element of U");
      values[k] = *e;
    }
  }
  for (std::size_t k = 0; k < values.size(); ++k)
    if (!values[k] && !payoffs[k])
      invalid("T", "missing row for (" + c.poset().name(c[k / d.size()]) + "," + d.poset().name(d[k % d.size()]) + ")");

  SetValuedMap f = parse_constraint(doc.contains("F") ? &doc.at("F") : nullptr, "F", c, d, "C", "D");
  SetValuedMap g = parse_constraint(doc.contains("G") ? &doc.at("G") : nullptr, "G", d, c, "D", "C");

  std::optional<Pair> seed;
  if (doc.contains("seed")) {
    auto s = as_strings(doc.at("seed"), "seed");
    if (s.size() != 2) parse_fail("seed", "expected [x, y]");
    seed = Pair{member(c, s[0], "seed", "C"), member(d, s[1], "seed", "D")};
  }

  if (game) {
    std::vector<Rational> table;
    for (auto& p : payoffs) table.push_back(*p);
    return in_section("instance", [&] {
      return Document(GameDocument{ZeroSumGame(c, d, std::move(table), std::move(f), std::move(g)), seed});
    });
  }
  std::vector<Element> table;
  for (auto& v : values) table.push_back(*v);
  return in_section("instance", [&] {
    ObjectiveMap t(c, d, u, std::move(table));
    return Document(ProblemInstance(c, d, u, std::move(t), std::move(f), std::move(g), seed));
  });
}

// Assigns document names to the strategy posets: "X" for C's parent, "Y"
// for D's parent unless it is the same poset.
struct StrategyNames {
  std::string x = "X";
  std::string y = "Y";
};

json serialize_common(const Subset& c, const Subset& d, const SetValuedMap& f, const SetValuedMap& g,
                      const std::optional<Pair>& seed, json& posets) {
  StrategyNames names;
  const bool shared = c.parent() == d.parent();
  if (shared) names.y = names.x;
  posets[names.x] = poset_body(c.poset());
  if (!shared) posets[names.y] = poset_body(d.poset());

  auto set_json = [](const Subset& s, const std::string& poset) {
    json j = {{"poset", poset}};
    if (s.size() != s.poset().size()) j["members"] = s.names();
    return j;
  };
  auto map_json = [](const SetValuedMap& m) {
    json j = json::object();
    for (std::size_t i = 0; i < m.domain().size(); ++i)
      j[m.domain().poset().name(m.domain()[i])] = m.values()[i].names();
    return j;
  };

  json doc = {{"schema", kInstanceSchema}};
  doc["C"] = set_json(c, names.x);
  doc["D"] = set_json(d, names.y);
  doc["F"] = map_json(f);
  doc["G"] = map_json(g);
  if (seed) doc["seed"] = {c.poset().name(seed->x), d.poset().name(seed->y)};
  return doc;
}

std::string sha256_hex(const std::string& text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::InvariantBreach, "SHA-256 digest failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

json pair_json(const ProblemInstance& inst, Pair p) { return {inst.x_order().name(p.x), inst.y_order().name(p.y)}; }

json names_json(const Poset& p, const std::vector<Element>& es) {
  json j = json::array();
  for (Element e : es) j.push_back(p.name(e));
  return j;
}

json monotonicity_json(const MonotonicityReport& m) {
  json j = {{"increasing_upward", m.increasing_upward},     {"increasing_downward", m.increasing_downward},
            {"increasing", m.increasing},                   {"decreasing_upward", m.decreasing_upward},
            {"decreasing_downward", m.decreasing_downward}, {"decreasing", m.decreasing}};
  if (m.single_valued)
    j["single_valued"] = {{"increasing", m.single_valued->increasing},
                          {"strictly_increasing", m.single_valued->strictly_increasing},
                          {"decreasing", m.single_valued->decreasing},
                          {"strictly_decreasing", m.single_valued->strictly_decreasing}};
  return j;
}

}  // namespace

Document parse_document(const json& doc) {
  if (!doc.is_object()) parse_fail("document", "expected a JSON object");
  if (!doc.contains("schema")) parse_fail("schema", "missing schema tag");
  std::string schema = as_string(doc.at("schema"), "schema");
  if (schema == kPosetSchema) {
    std::string name = doc.contains("name") ? as_string(doc.at("name"), "name") : "P";
    return PosetDocument{name, parse_poset_body(doc, "poset", true)};
  }
  if (schema != kInstanceSchema) parse_fail("schema", "unsupported schema '" + schema + "'");
  return parse_instance_doc(doc);
}

Document parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return parse_document(doc);
}

std::variant<ProblemInstance, GameDocument> parse_instance(const std::filesystem::path& path) {
  Document doc = parse_file(path);
  if (auto* inst = std::get_if<ProblemInstance>(&doc)) return *inst;
  if (auto* game = std::get_if<GameDocument>(&doc)) return *game;
  throw Error(ErrorCode::ValidationError, path.string() + ": a poset document is not a problem instance");
}

json serialize(const ProblemInstance& inst) {
  json posets = json::object();
  json doc = serialize_common(inst.c(), inst.d(), inst.f(), inst.g(), inst.seed(), posets);
  posets["U"] = poset_body(inst.u());
  doc["mode"] = "roep";
  doc["posets"] = std::move(posets);
  doc["U"] = "U";
  json rows = json::array();
  for (Pair p : inst.pairs())
    rows.push_back({inst.x_order().name(p.x), inst.y_order().name(p.y), inst.u().name(inst.value(p))});
  doc["T"] = std::move(rows);
  return doc;
}

json serialize(const GameDocument& g) {
  const ZeroSumGame& game = g.game;
  json posets = json::object();
  json doc = serialize_common(game.c(), game.d(), game.f(), game.g(), g.seed, posets);
  doc["mode"] = "game";
  doc["posets"] = std::move(posets);
  json rows = json::array();
  for (Element x : game.c())
    for (Element y : game.d()) {
      Rational v = game.payoff(x, y);
      json value = v.denominator() == 1 ? json(v.numerator()) : json(format_rational(v));
      rows.push_back({game.c().poset().name(x), game.d().poset().name(y), std::move(value)});
    }
  doc["T"] = std::move(rows);
  return doc;
}

json serialize(const PosetDocument& p) {
  json doc = poset_body(p.poset);
  doc["schema"] = kPosetSchema;
  doc["name"] = p.name;
  return doc;
}

json serialize(const Document& doc) {
  return std::visit([](const auto& d) { return serialize(d); }, doc);
}

std::string digest(const Document& doc) { return "sha256:" + sha256_hex(serialize(doc).dump()); }

json to_json(const ProblemInstance& inst, const HypothesisReport& h) {
  json j = {{"direction", h.direction == Direction::ascending ? "ascending" : "descending"},
            {"seed", pair_json(inst, h.seed)},
            {"phi", monotonicity_json(h.phi)},
            {"psi", monotonicity_json(h.psi)},
            {"monotone", h.monotone},
            {"values_complete", h.values_complete},
            {"seed_condition", h.seed_condition},
            {"passed", h.passed()}};
  if (h.witness_z) j["witness_z"] = inst.x_order().name(*h.witness_z);
  if (h.witness_u) j["witness_u"] = inst.y_order().name(*h.witness_u);
  return j;
}

json to_json(const ProblemInstance& inst, const SolutionCertificate& c) {
  return {{"pair", pair_json(inst, c.pair)},
          {"holds", c.holds()},
          {"row_feasible", c.row_feasible},
          {"column_feasible", c.column_feasible},
          {"rows_checked", names_json(inst.x_order(), c.rows_checked)},
          {"columns_checked", names_json(inst.y_order(), c.columns_checked)},
          {"row_violators", names_json(inst.x_order(), c.row_violators)},
          {"column_violators", names_json(inst.y_order(), c.column_violators)}};
}

json report_header(const std::string& command, const std::string& instance_digest, double elapsed_ms) {
  return {{"schema", kReportSchema},
          {"tool", "roep"},
          {"version", kToolVersion},
          {"command", command},
          {"instance_digest", instance_digest},
          {"elapsed_ms", elapsed_ms}};
}

void fill_report(json& out, const ProblemInstance& inst, const SolutionReport& r) {
  json sols = json::array();
  for (Pair p : r.solutions) sols.push_back(pair_json(inst, p));
  out["solutions"] = std::move(sols);
  out["maximal_solution"] = r.maximal_solution ? pair_json(inst, *r.maximal_solution) : json(nullptr);
  out["minimal_solution"] = r.minimal_solution ? pair_json(inst, *r.minimal_solution) : json(nullptr);
  out["existence_guaranteed"] = r.existence_guaranteed;
  out["climb_stalled"] = r.climb_stalled;
  json trace = json::array();
  for (Pair p : r.climb_trace) trace.push_back(pair_json(inst, p));
  out["climb_trace"] = std::move(trace);
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(inst, c));
  out["certificates"] = std::move(certs);
  out["hypotheses"] = r.hypotheses ? to_json(inst, *r.hypotheses) : json(nullptr);
}

ReplayResult replay(const json& report, const Document& doc) {
  ReplayResult r;
  r.digest_matches = report.value("instance_digest", std::string()) == digest(doc);

  std::optional<ProblemInstance> inst;
  if (auto* p = std::get_if<ProblemInstance>(&doc)) inst = *p;
  if (auto* g = std::get_if<GameDocument>(&doc)) inst = build_game(g->game);
  if (!inst) return r;

  r.solutions_verified = true;
  auto verify = [&](const json& pj) {
    if (pj.is_null()) return;
    auto names = pj.get<std::vector<std::string>>();
    ++r.solutions_checked;
    try {
      if (names.size() != 2 || !is_solution(*inst, inst->pair(names[0], names[1]))) r.solutions_verified = false;
    } catch (const Error&) {
      r.solutions_verified = false;
    }
  };
  if (report.contains("solutions"))
    for (const auto& p : report.at("solutions")) verify(p);
  for (const char* key : {"maximal_solution", "minimal_solution"})
    if (report.contains(key)) verify(report.at(key));
  return r;
}

}  // namespace roep::io
