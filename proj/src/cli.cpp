#include "wickgraph/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wickgraph/canonical.hpp"
#include "wickgraph/fixtures.hpp"
#include "wickgraph/graph_io.hpp"
#include "wickgraph/report_json.hpp"
#include "wickgraph/version.hpp"

namespace wickgraph {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ColoredGraph load_graph(const std::string& path) {
    return parse_graph(read_file(path), GraphConvention::auto_detect);
}

// Wire-style pair list, 1-based: "{1,4},{2,6},..."
std::string edges_text(const EdgeList& edges) {
    std::string out;
    for (const auto& [a, b] : edges) {
        if (!out.empty()) out += ',';
        out += '{' + std::to_string(a + 1) + ',' + std::to_string(b + 1) + '}';
    }
    return out;
}

void emit_json(const Json& report, bool to_stdout, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (!out_path.empty()) write_text_atomic(out_path, text);
    if (to_stdout) std::fputs(text.c_str(), stdout);
}

std::string hist_text(const std::map<int, std::uint64_t>& hist) {
    if (hist.empty()) return "(empty)";
    std::string out;
    for (const auto& [k, v] : hist) {
        if (!out.empty()) out += ' ';
        out += std::to_string(k) + ":" + std::to_string(v);
    }
    return out;
}

int cmd_survey(const SurveyConfig& cfg, bool json, const std::string& out_path) {
    SurveyReport report = run_survey(cfg);
    if (json || !out_path.empty()) emit_json(survey_report_json(report), json, out_path);
    if (!json) {
        std::printf("n=%d mode=%s complete=%s\n", report.config.n,
                    to_string(report.config.mode).c_str(), report.complete ? "yes" : "no");
        std::printf("candidates=%llu classes=%llu mst=%llu violators=%zu\n",
                    (unsigned long long)report.candidates_examined,
                    (unsigned long long)report.class_count,
                    (unsigned long long)report.mst_count, report.violator_indices.size());
        std::printf("max_f hist: %s\n", hist_text(report.max_f_hist).c_str());
        std::printf("mst hist: %s\n", hist_text(report.mst_hist).c_str());
    }
    return kExitOk;
}

int cmd_verify_fixtures(const std::string& fixtures_path, bool json) {
    std::vector<ColoredGraph> graphs;
    std::string source;
    if (fixtures_path.empty()) {
        source = "embedded";
        graphs = catalog_graphs();  // throws if the pinned digest mismatches
    } else {
        source = fixtures_path;
        std::istringstream in(read_file(fixtures_path));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            graphs.push_back(parse_graph(line, GraphConvention::auto_detect));
        }
        if (graphs.empty()) throw ValidationError(fixtures_path + ": no graphs");
    }

    FixtureVerification v = verify_fixture_set(graphs);
    if (json) emit_json(fixture_verification_json(v, source), true, "");

    std::size_t passed = 0;
    bool uniform_max = true;
    for (const auto& r : v.rows) {
        if (r.connected && r.mst && r.non_bipartite && !r.duplicate) ++passed;
        uniform_max = uniform_max && r.max_f == v.rows.front().max_f;
    }
    if (!json) {
        if (v.all_pass && uniform_max) {
            std::printf("%zu/%zu pass: MST, non-bipartite, maxF=%d\n", passed,
                        v.rows.size(), v.rows.front().max_f);
        } else if (v.all_pass) {
            std::printf("%zu/%zu pass: MST, non-bipartite\n", passed, v.rows.size());
        } else {
            std::printf("%zu/%zu pass\n", passed, v.rows.size());
            std::printf("FAIL %s\n", v.failure.c_str());
        }
    }
    return v.all_pass ? kExitOk : kExitVerificationFailure;
}

int cmd_max_faces(const std::string& graph_path, bool exact, bool json) {
    ColoredGraph g = load_graph(graph_path);
    MaxFaceOptions opts;
    opts.prune = !exact;
    MaxFaceResult result = max_faces(g, opts);
    if (json)
        emit_json(max_faces_json(g, result, opts.prune), true, "");
    else
        std::printf("%d\n", result.max_f);
    return kExitOk;
}

int cmd_bound(const std::string& graph_path, bool json) {
    ColoredGraph g = load_graph(graph_path);
    BoundCertificate cert = certified_lower_bound(g);  // TheoremViolation on failure
    if (json) {
        emit_json(certificate_json(g, cert), true, "");
    } else {
        std::printf("bound=%d rule=%s\n", cert.bound, to_string(cert.rule));
        std::printf("witness: %s\n", edges_text(cert.witness.edges()).c_str());
        if (cert.flip) {
            std::printf("flip: removed %s added %s\n",
                        edges_text({cert.flip->removed_e, cert.flip->removed_f}).c_str(),
                        edges_text({cert.flip->added_e, cert.flip->added_f}).c_str());
        }
    }
    return kExitOk;
}

int cmd_moment(const std::string& graph_path, int nu, bool force,
               std::optional<double> eval_at, std::uint64_t mc_samples,
               std::uint64_t seed, int big_n, bool json) {
    ColoredGraph g = load_graph(graph_path);
    MomentOptions opts;
    opts.nu = nu;
    opts.force = force;
    MomentPolynomial poly = moment_polynomial(g, opts);

    std::optional<McEstimate> mc;
    if (mc_samples > 0) {
        McOptions mopts;
        mopts.big_n = big_n;
        mopts.samples = mc_samples;
        mopts.seed = seed;
        mopts.nu = nu;
        mc = mc_estimate(g, mopts);
    }
    if (json) {
        Json report = moment_json(g, poly, eval_at, mc);
        if (mc) report["results"]["mc"]["big_n"] = big_n;
        emit_json(report, true, "");
    } else {
        std::printf("n=%d nu=%d pairings=%llu max_exponent=%d\n", poly.n, poly.nu,
                    (unsigned long long)poly.pairing_count(), poly.max_exponent());
        std::string terms;
        for (const auto& [e, mult] : poly.terms) {
            if (!terms.empty()) terms += ' ';
            terms += std::to_string(e) + ":" + std::to_string(mult);
        }
        std::printf("terms: %s\n", terms.c_str());
        if (eval_at) std::printf("eval N=%g: %.17g\n", *eval_at, poly.evaluate(*eval_at));
        if (mc) {
            std::printf("mc N=%d samples=%llu seed=%llu: mean=%.17g se=%.17g\n", big_n,
                        (unsigned long long)mc->samples, (unsigned long long)mc->seed,
                        mc->mean, mc->std_error);
        }
    }
    return kExitOk;
}

int cmd_canon(const std::string& graph_path, bool json) {
    ColoredGraph g = load_graph(graph_path);
    if (json)
        emit_json(canon_json(g), true, "");
    else
        std::printf("%s\n", canonical_form(g).hex().c_str());
    return kExitOk;
}

int cmd_count_classes(int n, bool json) {
    std::uint64_t count = count_colored_graphs(n);
    if (json)
        emit_json(census_json(n, count), true, "");
    else
        std::printf("%llu\n", (unsigned long long)count);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"survey tool for 3-edge-colored graphs and their Wick matchings"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    int rc = kExitOk;

    // survey
    SurveyConfig survey_cfg;
    std::string survey_mode = "mst_only";
    std::string survey_out;
    bool survey_json = false;
    auto* survey = app.add_subcommand("survey", "sweep classes at fixed n and maximize faces");
    survey->add_option("--n", survey_cfg.n, "half vertex count")->required()->check(CLI::Range(1, 9));
    survey->add_option("--mode", survey_mode, "class family to sweep")
        ->check(CLI::IsMember({"single_face_pair", "mst_only", "all_colored"}));
    survey->add_option("--workers", survey_cfg.workers, "worker threads (0: auto)");
    survey->add_option("--checkpoint", survey_cfg.checkpoint_path, "checkpoint file to resume from");
    survey->add_option("--out", survey_out, "write the JSON report here");
    survey->add_flag("--json", survey_json, "print the JSON report");
    survey->callback([&] {
        survey_cfg.mode = survey_mode_from_string(survey_mode);
        rc = cmd_survey(survey_cfg, survey_json, survey_out);
    });

    // verify-fixtures
    std::string fixtures_path;
    bool fixtures_json = false;
    auto* fixtures = app.add_subcommand("verify-fixtures", "check the bundled violator catalog");
    fixtures->add_option("--fixtures", fixtures_path, "graph file, one record per line (default: embedded catalog)");
    fixtures->add_flag("--json", fixtures_json, "print the JSON report");
    fixtures->callback([&] { rc = cmd_verify_fixtures(fixtures_path, fixtures_json); });

    // max-faces
    std::string mf_graph;
    bool mf_exact = false, mf_pruned = false, mf_json = false;
    auto* mf = app.add_subcommand("max-faces", "exact max of F(M,G) over all matchings M");
    mf->add_option("--graph", mf_graph, "graph file")->required();
    auto* exact_flag = mf->add_flag("--exact", mf_exact, "full enumeration, no pruning");
    mf->add_flag("--pruned", mf_pruned, "pruned search (default; same result)")->excludes(exact_flag);
    mf->add_flag("--json", mf_json, "print the JSON report");
    mf->callback([&] { rc = cmd_max_faces(mf_graph, mf_exact, mf_json); });

    // bound
    std::string bound_graph;
    bool bound_json = false;
    auto* bound = app.add_subcommand("bound", "certified constructive lower bound on max F(M,G)");
    bound->add_option("--graph", bound_graph, "graph file")->required();
    bound->add_flag("--json", bound_json, "print the JSON report");
    bound->callback([&] { rc = cmd_bound(bound_graph, bound_json); });

    // moment
    std::string moment_graph;
    int moment_nu = 2;
    bool moment_force = false, moment_json_flag = false;
    double moment_eval = 0.0;
    std::uint64_t moment_mc = 0, moment_seed = 1;
    int moment_big_n = 2;
    auto* moment = app.add_subcommand("moment", "exact Gaussian moment of the graph invariant");
    moment->add_option("--graph", moment_graph, "graph file")->required();
    moment->add_option("--nu", moment_nu, "scaling exponent in N^{-nu n/2} per vertex")
        ->check(CLI::Range(0, 8));
    auto* eval_opt = moment->add_option("--eval", moment_eval, "evaluate the polynomial at this N");
    moment->add_option("--mc", moment_mc, "Monte Carlo cross-check with this many samples");
    moment->add_option("--seed", moment_seed, "Monte Carlo seed");
    moment->add_option("--N", moment_big_n, "Monte Carlo tensor side length");
    moment->add_flag("--force", moment_force, "lift the enumeration size guard");
    moment->add_flag("--json", moment_json_flag, "print the JSON report");
    moment->callback([&] {
        std::optional<double> eval_at;
        if (eval_opt->count() > 0) eval_at = moment_eval;
        rc = cmd_moment(moment_graph, moment_nu, moment_force, eval_at, moment_mc,
                        moment_seed, moment_big_n, moment_json_flag);
    });

    // canon
    std::string canon_graph;
    bool canon_json_flag = false;
    auto* canon = app.add_subcommand("canon", "canonical isomorphism code of a graph");
    canon->add_option("--graph", canon_graph, "graph file")->required();
    canon->add_flag("--json", canon_json_flag, "print the JSON report");
    canon->callback([&] { rc = cmd_canon(canon_graph, canon_json_flag); });

    // count-classes
    int census_n = 1;
    bool census_json_flag = false;
    auto* census = app.add_subcommand("count-classes", "connected classes over all three colors");
    census->add_option("--n", census_n, "half vertex count")->required()->check(CLI::Range(1, 5));
    census->add_flag("--json", census_json_flag, "print the JSON report");
    census->callback([&] { rc = cmd_count_classes(census_n, census_json_flag); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const CapacityError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitVerificationFailure;
    }
    return rc;
}

}  // namespace wickgraph
