#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "wickgraph/bounds.hpp"
#include "wickgraph/moments.hpp"
#include "wickgraph/survey.hpp"

namespace wickgraph {

// Every report shares one envelope: format_version, kind, the echoed
// configuration, the results, and provenance (tool, version, runtime).
inline constexpr int kReportFormatVersion = 1;

using Json = nlohmann::ordered_json;

// Graph as wire text: the compact one-line form when colors 1,2 are the
// ring matchings, the explicit three-line form otherwise.
std::string graph_text(const ColoredGraph& g);

Json survey_report_json(const SurveyReport& report);
Json fixture_verification_json(const FixtureVerification& v, const std::string& source);
Json max_faces_json(const ColoredGraph& g, const MaxFaceResult& result, bool pruned);
Json certificate_json(const ColoredGraph& g, const BoundCertificate& cert);
Json moment_json(const ColoredGraph& g, const MomentPolynomial& poly,
                 std::optional<double> eval_at, const std::optional<McEstimate>& mc);
Json canon_json(const ColoredGraph& g);
Json census_json(int n, std::uint64_t count);

// Write-temp-then-rename so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& text);

// Checks `doc` against the subset of JSON Schema the shipped schema uses:
// type, required, properties, enum, items, minimum. On mismatch returns
// false and fills `why` with the offending path.
bool matches_schema(const Json& doc, const Json& schema, std::string* why = nullptr);

// The schema shipped at schema/report.schema.json, embedded so validation
// needs no file lookup.
const Json& report_schema();

}  // namespace wickgraph
