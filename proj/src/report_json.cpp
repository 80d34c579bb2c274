#include "wickgraph/report_json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "wickgraph/canonical.hpp"
#include "wickgraph/graph_io.hpp"
#include "wickgraph/version.hpp"

namespace wickgraph {

namespace {

Json hist_json(const std::map<int, std::uint64_t>& hist) {
    Json out = Json::object();
    for (const auto& [k, v] : hist) out[std::to_string(k)] = v;
    return out;
}

// Vertex labels are 1-based everywhere on the wire, JSON included.
Json edges_json(const EdgeList& edges) {
    Json out = Json::array();
    for (const auto& [a, b] : edges) out.push_back(Json::array({a + 1, b + 1}));
    return out;
}

Json matching_json(const Matching& m) { return edges_json(m.edges()); }

Json make_envelope(const char* kind, Json config, Json results, Json provenance_extra) {
    Json prov = Json::object();
    prov["tool"] = "wickgraph";
    prov["version"] = kToolVersion;
    for (auto& [k, v] : provenance_extra.items()) prov[k] = std::move(v);
    Json out = Json::object();
    out["format_version"] = kReportFormatVersion;
    out["kind"] = kind;
    out["config"] = std::move(config);
    out["results"] = std::move(results);
    out["provenance"] = std::move(prov);
    return out;
}

Json class_json(const ClassRecord& rec) {
    Json c = Json::object();
    c["code"] = rec.code.hex();
    c["graph"] = graph_text(rec.graph);
    c["f12"] = rec.profile.f12;
    c["f13"] = rec.profile.f13;
    c["f23"] = rec.profile.f23;
    c["mst"] = rec.mst;
    c["bipartite"] = rec.bipartite;
    c["max_f"] = rec.max_f;
    c["violates"] = rec.violates;
    c["witness"] = rec.witness ? matching_json(*rec.witness) : Json(nullptr);
    return c;
}

}  // namespace

std::string graph_text(const ColoredGraph& g) {
    std::string text;
    try {
        text = serialize_graph(g, GraphConvention::compact);
    } catch (const ValidationError&) {
        text = serialize_graph(g, GraphConvention::explicit_colors);
    }
    while (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
}

Json survey_report_json(const SurveyReport& report) {
    Json config = Json::object();
    config["n"] = report.config.n;
    config["mode"] = to_string(report.config.mode);
    config["checkpoint"] = report.config.checkpoint_path.empty()
                               ? Json(nullptr)
                               : Json(report.config.checkpoint_path);
    config["stop_after_units"] = report.config.stop_after_units;

    Json results = Json::object();
    results["complete"] = report.complete;
    results["candidates_examined"] = report.candidates_examined;
    results["class_count"] = report.class_count;
    results["mst_count"] = report.mst_count;
    results["max_f_hist"] = hist_json(report.max_f_hist);
    results["mst_hist"] = hist_json(report.mst_hist);
    Json violators = Json::array();
    for (std::size_t i : report.violator_indices) violators.push_back(i);
    results["violators"] = std::move(violators);
    Json classes = Json::array();
    for (const auto& rec : report.classes) classes.push_back(class_json(rec));
    results["classes"] = std::move(classes);

    Json prov = Json::object();
    prov["runtime_seconds"] = report.runtime_seconds;
    prov["workers_requested"] = report.config.workers;
    prov["scan_leaves"] = report.scan_leaves;
    return make_envelope("survey", std::move(config), std::move(results), std::move(prov));
}

Json fixture_verification_json(const FixtureVerification& v, const std::string& source) {
    Json config = Json::object();
    config["source"] = source;

    Json rows = Json::array();
    for (const auto& r : v.rows) {
        Json row = Json::object();
        row["row"] = r.row;
        row["code"] = r.code.hex();
        row["connected"] = r.connected;
        row["mst"] = r.mst;
        row["non_bipartite"] = r.non_bipartite;
        row["duplicate"] = r.duplicate;
        row["max_f"] = r.max_f;
        rows.push_back(std::move(row));
    }
    Json results = Json::object();
    results["rows"] = std::move(rows);
    results["pairwise_distinct"] = v.pairwise_distinct;
    results["all_pass"] = v.all_pass;
    results["failure"] = v.failure.empty() ? Json(nullptr) : Json(v.failure);
    return make_envelope("fixtures", std::move(config), std::move(results), Json::object());
}

Json max_faces_json(const ColoredGraph& g, const MaxFaceResult& result, bool pruned) {
    Json config = Json::object();
    config["graph"] = graph_text(g);
    config["pruned"] = pruned;

    Json results = Json::object();
    results["max_f"] = result.max_f;
    results["witness"] = matching_json(result.witness);
    results["maximizer_count"] = result.maximizer_count;
    results["matchings_examined"] = result.matchings_examined;
    results["violates"] = 2 * result.max_f <= 3 * g.n();
    return make_envelope("max_faces", std::move(config), std::move(results), Json::object());
}

Json certificate_json(const ColoredGraph& g, const BoundCertificate& cert) {
    Json config = Json::object();
    config["graph"] = graph_text(g);

    Json results = Json::object();
    results["bound"] = cert.bound;
    results["rule"] = to_string(cert.rule);
    results["witness"] = matching_json(cert.witness);
    results["exceeds_half_envelope"] = 2 * cert.bound > 3 * g.n();
    if (cert.flip) {
        Json flip = Json::object();
        flip["colors"] = Json::array({cert.flip->color_i, cert.flip->color_j, cert.flip->color_k});
        flip["removed"] = edges_json({cert.flip->removed_e, cert.flip->removed_f});
        flip["added"] = edges_json({cert.flip->added_e, cert.flip->added_f});
        results["flip"] = std::move(flip);
    } else {
        results["flip"] = nullptr;
    }
    return make_envelope("bound", std::move(config), std::move(results), Json::object());
}

Json moment_json(const ColoredGraph& g, const MomentPolynomial& poly,
                 std::optional<double> eval_at, const std::optional<McEstimate>& mc) {
    Json config = Json::object();
    config["graph"] = graph_text(g);
    config["nu"] = poly.nu;

    Json results = Json::object();
    results["n"] = poly.n;
    results["pairing_count"] = poly.pairing_count();
    results["max_exponent"] = poly.max_exponent();
    results["terms"] = hist_json(poly.terms);
    if (eval_at) {
        Json eval = Json::object();
        eval["at"] = *eval_at;
        eval["value"] = poly.evaluate(*eval_at);
        results["eval"] = std::move(eval);
    } else {
        results["eval"] = nullptr;
    }
    if (mc) {
        Json est = Json::object();
        est["mean"] = mc->mean;
        est["std_error"] = mc->std_error;
        est["samples"] = mc->samples;
        est["seed"] = mc->seed;
        est["generator"] = mc->generator;
        results["mc"] = std::move(est);
    } else {
        results["mc"] = nullptr;
    }
    return make_envelope("moment", std::move(config), std::move(results), Json::object());
}

Json canon_json(const ColoredGraph& g) {
    Json config = Json::object();
    config["graph"] = graph_text(g);

    CanonicalForm form = canonical_form(g);
    Json results = Json::object();
    results["n"] = form.n;
    results["code"] = form.hex();
    return make_envelope("canon", std::move(config), std::move(results), Json::object());
}

Json census_json(int n, std::uint64_t count) {
    Json config = Json::object();
    config["n"] = n;
    Json results = Json::object();
    results["connected_classes"] = count;
    return make_envelope("census", std::move(config), std::move(results), Json::object());
}

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(path + ": cannot open for writing");
        out.write(text.data(), (std::streamsize)text.size());
        out.flush();
        if (!out) throw std::runtime_error(path + ": write failed");
    }
    std::filesystem::rename(tmp, path);
}

namespace {

bool type_matches(const Json& doc, const std::string& type) {
    if (type == "object") return doc.is_object();
    if (type == "array") return doc.is_array();
    if (type == "string") return doc.is_string();
    if (type == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
    if (type == "number") return doc.is_number();
    if (type == "boolean") return doc.is_boolean();
    if (type == "null") return doc.is_null();
    throw std::runtime_error("schema uses unsupported type: " + type);
}

bool fail(std::string* why, const std::string& path, const std::string& reason) {
    if (why) *why = path + ": " + reason;
    return false;
}

bool check_schema(const Json& doc, const Json& schema, const std::string& path,
                  std::string* why) {
    if (auto it = schema.find("type"); it != schema.end()) {
        if (!type_matches(doc, it->get<std::string>()))
            return fail(why, path, "expected type " + it->get<std::string>());
    }
    if (auto it = schema.find("enum"); it != schema.end()) {
        bool hit = false;
        for (const auto& v : *it) hit = hit || v == doc;
        if (!hit) return fail(why, path, "value not in enum");
    }
    if (auto it = schema.find("minimum"); it != schema.end()) {
        if (!doc.is_number() || doc.get<double>() < it->get<double>())
            return fail(why, path, "below minimum");
    }
    if (auto it = schema.find("required"); it != schema.end()) {
        for (const auto& key : *it)
            if (!doc.contains(key.get<std::string>()))
                return fail(why, path, "missing required key " + key.get<std::string>());
    }
    if (auto it = schema.find("properties"); it != schema.end() && doc.is_object()) {
        for (const auto& [key, sub] : it->items())
            if (doc.contains(key) &&
                !check_schema(doc.at(key), sub, path + "/" + key, why))
                return false;
    }
    if (auto it = schema.find("items"); it != schema.end() && doc.is_array()) {
        for (std::size_t i = 0; i < doc.size(); ++i)
            if (!check_schema(doc[i], *it, path + "/" + std::to_string(i), why))
                return false;
    }
    return true;
}

}  // namespace

bool matches_schema(const Json& doc, const Json& schema, std::string* why) {
    return check_schema(doc, schema, "$", why);
}

const Json& report_schema() {
    static const Json schema = Json::parse(R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "wickgraph report envelope",
  "type": "object",
  "required": ["format_version", "kind", "config", "results", "provenance"],
  "properties": {
    "format_version": {"type": "integer", "minimum": 1},
    "kind": {"enum": ["survey", "fixtures", "max_faces", "bound", "moment", "canon", "census"]},
    "config": {"type": "object"},
    "results": {"type": "object"},
    "provenance": {
      "type": "object",
      "required": ["tool", "version"],
      "properties": {
        "tool": {"enum": ["wickgraph"]},
        "version": {"type": "string"},
        "runtime_seconds": {"type": "number"},
        "workers_requested": {"type": "integer"},
        "scan_leaves": {"type": "integer"}
      }
    }
  }
})");
    return schema;
}

}  // namespace wickgraph
