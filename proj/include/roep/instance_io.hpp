#pragma once

// JSON instance documents (schema "roep-instance/1"), poset documents
// ("roep-poset/1") and solver reports ("roep-report/1").
//
// Instance document:
//   {
//     "schema": "roep-instance/1",
//     "mode":   "roep" | "game",                 (default "roep")
//     "posets": { "<name>": { "elements": [...], "edges": [[a, b], ...],
//                             "edge_kind": "hasse" | "full" } },
//     "C": { "poset": "<name>", "members": [...] } | { "grid": [extents] },
//     "D": same as C,
//     "U": "<poset name>",                        (roep mode only)
//     "T": [[x, y, value], ...],                  (value: element of U, or a
//                                                  number / "p/q" string in game mode)
//     "F": { "<x>": [y, ...] },                   (optional, default x -> D)
//     "G": { "<y>": [x, ...] },                   (optional, default y -> C)
//     "seed": [x, y]                              (optional)
//   }
// "members" defaults to every element of the poset; unknown keys are rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "roep/equilibrium.hpp"
#include "roep/games.hpp"

namespace roep::io {

inline constexpr const char* kInstanceSchema = "roep-instance/1";
inline constexpr const char* kPosetSchema = "roep-poset/1";
inline constexpr const char* kReportSchema = "roep-report/1";
inline constexpr const char* kToolVersion = "1.0.0";

struct GameDocument {
  ZeroSumGame game;
  std::optional<Pair> seed;
};

struct PosetDocument {
  std::string name;
  Poset poset;
};

using Document = std::variant<ProblemInstance, GameDocument, PosetDocument>;

/// Throws ParseError for malformed JSON or shapes, ValidationError (naming
/// the offending section) when the content violates an invariant.
Document parse_document(const nlohmann::json& doc);
Document parse_file(const std::filesystem::path& path);

/// Instance or game only; poset documents are rejected with ValidationError.
std::variant<ProblemInstance, GameDocument> parse_instance(const std::filesystem::path& path);

/// Normalized form: posets as Hasse edges, members omitted when complete.
nlohmann::json serialize(const ProblemInstance& inst);
nlohmann::json serialize(const GameDocument& game);
nlohmann::json serialize(const PosetDocument& poset);
nlohmann::json serialize(const Document& doc);

/// "sha256:<hex>" of the normalized serialization.
std::string digest(const Document& doc);

nlohmann::json to_json(const ProblemInstance& inst, const HypothesisReport& h);
nlohmann::json to_json(const ProblemInstance& inst, const SolutionCertificate& c);

/// Report skeleton: tool, version, schema, command, instance digest, timing.
nlohmann::json report_header(const std::string& command, const std::string& instance_digest, double elapsed_ms);
/// Adds solutions, extremal solutions, certificates, hypotheses and trace.
void fill_report(nlohmann::json& out, const ProblemInstance& inst, const SolutionReport& report);

struct ReplayResult {
  bool digest_matches = false;
  bool solutions_verified = false;
  std::size_t solutions_checked = 0;
  bool ok() const { return digest_matches && solutions_verified; }
};

/// Re-verifies every solution listed in `report` against `doc` with
/// is_solution, after checking the recorded instance digest.
ReplayResult replay(const nlohmann::json& report, const Document& doc);

}  // namespace roep::io
