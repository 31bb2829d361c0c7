// Command-line front end: one subcommand per pipeline stage plus the
// orchestrating `pipeline` command. Exit codes: 0 success, 1 validation
// failures, 2 config/argument error, 3 parse error, 4 stage failure.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corecrest/analysis.hpp"
#include "corecrest/aoc.hpp"
#include "corecrest/clustering.hpp"
#include "corecrest/digest.hpp"
#include "corecrest/errors.hpp"
#include "corecrest/graph.hpp"
#include "corecrest/ikc.hpp"
#include "corecrest/io.hpp"
#include "corecrest/kcore.hpp"
#include "corecrest/null_models.hpp"

namespace {

using namespace corecrest;
using ordered_json = nlohmann::ordered_json;

unsigned default_threads() {
    if (const char* env = std::getenv("CORECREST_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

long peak_rss_kb() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("VmHWM:", 0) == 0) return std::atol(line.c_str() + 6);
    return 0;
}

// Collects what a run touched; written as a manifest next to the primary
// output. Wall clock and peak memory live here, never in the data files, so
// the data files stay byte-identical across reruns.
struct RunContext {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::string command;
    ordered_json params = ordered_json::object();
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::string> outputs;
    std::string manifest_path;  // explicit --manifest, else derived

    void input(const std::string& path) {
        if (!path.empty()) inputs.emplace_back(path, sha256_file(path));
    }
    void output(const std::string& path) {
        if (!path.empty()) outputs.push_back(path);
    }
    void write(const std::string& fallback) {
        std::string target = manifest_path.empty() ? fallback : manifest_path;
        if (target.empty()) return;
        ordered_json j;
        j["tool"] = "corecrest";
        j["version"] = kVersion;
        j["command"] = command;
        ordered_json in = ordered_json::object();
        for (const auto& [path, digest] : inputs) in[path] = digest;
        j["inputs"] = in;
        j["params"] = params;
        ordered_json out = ordered_json::object();
        for (const auto& path : outputs) out[path] = sha256_file(path);
        j["outputs"] = out;
        j["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        j["peak_rss_kb"] = peak_rss_kb();
        std::ofstream f(target, std::ios::binary);
        if (!f) throw ConfigError("cannot open manifest file: " + target);
        f << j.dump(2) << '\n';
    }
};

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) out += ' ';
        out += argv[i];
    }
    return out;
}

CitationGraph load_graph(const std::string& path, bool comma) {
    EdgeListOptions opt;
    opt.delimiter = comma ? ',' : '\t';
    return load_edges(path, opt);
}

NodeMetadata empty_metadata(const CitationGraph& g) {
    NodeMetadata meta;
    meta.year.assign(g.node_count(), NodeMetadata::kNoYear);
    meta.doi.assign(g.node_count(), "");
    return meta;
}

std::unordered_set<std::string> load_doi_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open retracted-DOI file: " + path);
    std::unordered_set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r\n");
        std::string doi = line.substr(b, e - b + 1);
        if (doi.empty() || doi[0] == '#') continue;
        out.insert(doi);
    }
    return out;
}

CandidateSet parse_candidates(const std::string& selector, const CitationGraph& graph,
                              const Clustering& clustering) {
    if (selector == "nonsingleton") return candidates_from_members(graph, clustering);
    if (selector.rfind("singletons:", 0) == 0) {
        std::string pct = selector.substr(11);
        char* end = nullptr;
        double p = std::strtod(pct.c_str(), &end);
        if (pct.empty() || end != pct.c_str() + pct.size())
            throw ConfigError("bad candidate percent: " + pct);
        return candidates_top_singletons(graph, clustering, p);
    }
    if (selector.rfind("file:", 0) == 0) return candidates_from_file(graph, selector.substr(5));
    throw ConfigError("candidates must be nonsingleton, singletons:P, or file:PATH, got '" +
                      selector + "'");
}

MembershipCriterion parse_criterion(const std::string& name, std::uint32_t k) {
    MembershipCriterion crit;
    if (name == "m")
        crit.kind = MembershipCriterion::Kind::aoc_m;
    else if (name == "k")
        crit.kind = MembershipCriterion::Kind::aoc_k;
    else
        throw ConfigError("criterion must be m or k, got '" + name + "'");
    crit.k = k;
    return crit;
}

ordered_json ingest_summary(const CitationGraph& g) {
    ordered_json j;
    j["nodes"] = g.node_count();
    j["directed_edges"] = g.edge_count();
    j["undirected_edges"] = g.undirected_edge_count();
    auto groups = degree_groups(g);
    j["degree_groups"] = groups.counts;
    j["largest_component"] = largest_connected_component(g).size();
    return j;
}

// --- validate ---

struct ClusterCheck {
    bool connected = false;
    bool degree_ok = false;
    bool modularity_ok = false;
    bool summary_ok = true;
    std::uint32_t mcd = 0;
    double modularity = 0.0;
    bool modularity_defined = true;
    std::string summary_reason;

    bool pass() const { return connected && degree_ok && modularity_ok && summary_ok; }
};

struct SummaryRow {
    std::uint64_t size = 0;
    std::uint32_t mcd = 0;
    double modularity = 0.0;
};

std::map<std::uint32_t, SummaryRow> read_summary_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open summary file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("summary JSON: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("summary JSON: expected an array");
    std::map<std::uint32_t, SummaryRow> out;
    for (const auto& row : j) {
        SummaryRow s;
        std::uint32_t id = row.at("cluster_id").get<std::uint32_t>();
        s.size = row.at("size").get<std::uint64_t>();
        s.mcd = row.at("mcd").get<std::uint32_t>();
        s.modularity = row.at("modularity").get<double>();
        out[id] = s;
    }
    return out;
}

int run_validate(const std::string& edges_path, bool comma, const std::string& clusters_path,
                 std::uint32_t k, const std::string& summary_path) {
    auto graph = load_graph(edges_path, comma);
    auto clustering = read_clusters_csv(clusters_path, graph);
    std::map<std::uint32_t, SummaryRow> expected;
    if (!summary_path.empty()) expected = read_summary_json(summary_path);

    std::size_t failed = 0;
    for (const Cluster& c : clustering.clusters) {
        ClusterCheck check;
        check.connected = connected_components(graph, c.members).size() == 1;
        check.mcd = mcd_of(graph, c.members);
        check.degree_ok = check.mcd >= k;
        try {
            check.modularity = cluster_modularity(graph, c.members);
            check.modularity_ok = check.modularity > 0.0;
        } catch (const UndefinedModularityError&) {
            check.modularity_defined = false;
            check.modularity_ok = false;
        }
        if (!expected.empty()) {
            auto it = expected.find(c.id);
            if (it == expected.end()) {
                check.summary_ok = false;
                check.summary_reason = "missing from summary";
            } else {
                const SummaryRow& s = it->second;
                if (s.size != c.members.size()) {
                    check.summary_ok = false;
                    check.summary_reason = "size " + std::to_string(c.members.size()) +
                                           " != recorded " + std::to_string(s.size);
                } else if (s.mcd > check.mcd) {
                    // Recorded MCD may sit below the recomputed minimum (an
                    // expansion can raise it) but never above.
                    check.summary_ok = false;
                    check.summary_reason = "recorded mcd " + std::to_string(s.mcd) +
                                           " exceeds recomputed " + std::to_string(check.mcd);
                } else if (check.modularity_defined &&
                           std::fabs(s.modularity - check.modularity) > 1e-9) {
                    check.summary_ok = false;
                    check.summary_reason = "modularity mismatch";
                }
            }
        }
        if (check.pass()) {
            std::cout << "cluster " << c.id << ": PASS\n";
        } else {
            ++failed;
            std::cout << "cluster " << c.id << ": FAIL";
            if (!check.connected) std::cout << " [disconnected]";
            if (!check.degree_ok)
                std::cout << " [min_degree " << check.mcd << " < " << k << "]";
            if (!check.modularity_defined)
                std::cout << " [modularity undefined]";
            else if (!check.modularity_ok)
                std::cout << " [modularity " << format_double(check.modularity) << " <= 0]";
            if (!check.summary_ok) std::cout << " [" << check.summary_reason << "]";
            std::cout << '\n';
        }
    }
    std::cout << "validated " << clustering.clusters.size() << " clusters: "
              << clustering.clusters.size() - failed << " pass, " << failed << " fail\n";
    return failed ? 1 : 0;
}

// --- pipeline ---

const std::vector<std::string> kStageOrder = {"ingest", "curate",  "ikc",    "aoc",
                                              "tiers",  "markers", "overlap"};

struct PipelineSettings {
    std::string input;
    bool comma = false;
    std::string metadata;
    std::string retracted;
    std::uint32_t max_references = kNoReferenceLimit;
    std::uint32_t k = 0;
    std::string criterion = "m";
    std::string candidates = "nonsingleton";
    bool frozen_reference = false;
    bool median_includes_zeros = false;
    bool decisions = false;
    std::string markers;
    unsigned threads = 0;
    std::string output_dir = "out";
    std::vector<std::string> stages = kStageOrder;
};

PipelineSettings pipeline_settings(const std::map<std::string, std::string>& config) {
    PipelineSettings s;
    static const std::set<std::string> known = {
        "input",      "delimiter", "metadata",  "retracted",  "max_references",
        "k",          "criterion", "candidates", "frozen_reference",
        "median_includes_zeros",   "decisions", "markers",    "threads",
        "output_dir", "stages"};
    auto parse_bool = [](const std::string& key, const std::string& v) {
        if (v == "true") return true;
        if (v == "false") return false;
        throw ConfigError("config " + key + " must be true or false, got '" + v + "'");
    };
    for (const auto& [key, value] : config) {
        if (!known.count(key)) throw ConfigError("unknown config key: " + key);
        if (key == "input") s.input = value;
        else if (key == "delimiter") {
            if (value == "tab") s.comma = false;
            else if (value == "comma") s.comma = true;
            else throw ConfigError("config delimiter must be tab or comma, got '" + value + "'");
        } else if (key == "metadata") s.metadata = value;
        else if (key == "retracted") s.retracted = value;
        else if (key == "max_references") s.max_references = std::uint32_t(std::stoul(value));
        else if (key == "k") s.k = std::uint32_t(std::stoul(value));
        else if (key == "criterion") s.criterion = value;
        else if (key == "candidates") s.candidates = value;
        else if (key == "frozen_reference") s.frozen_reference = parse_bool(key, value);
        else if (key == "median_includes_zeros") s.median_includes_zeros = parse_bool(key, value);
        else if (key == "decisions") s.decisions = parse_bool(key, value);
        else if (key == "markers") s.markers = value;
        else if (key == "threads") s.threads = unsigned(std::stoul(value));
        else if (key == "output_dir") s.output_dir = value;
        else if (key == "stages") {
            s.stages.clear();
            std::string rest = value;
            while (!rest.empty()) {
                std::size_t comma_at = rest.find(',');
                std::string stage = rest.substr(0, comma_at);
                if (!stage.empty()) s.stages.push_back(stage);
                if (comma_at == std::string::npos) break;
                rest = rest.substr(comma_at + 1);
            }
        }
    }
    return s;
}

void check_pipeline_settings(const PipelineSettings& s) {
    std::set<std::string> stage_set;
    for (const auto& stage : s.stages) {
        if (std::find(kStageOrder.begin(), kStageOrder.end(), stage) == kStageOrder.end())
            throw ConfigError("unknown stage: " + stage);
        stage_set.insert(stage);
    }
    if (stage_set.empty()) throw ConfigError("no stages selected");
    if (!stage_set.count("ingest")) throw ConfigError("every pipeline needs the ingest stage");
    if (stage_set.count("aoc") && !stage_set.count("ikc"))
        throw ConfigError("aoc requires the ikc stage");
    for (const char* analysis : {"tiers", "markers", "overlap"})
        if (stage_set.count(analysis) && !stage_set.count("ikc"))
            throw ConfigError(std::string(analysis) + " requires the ikc stage");
    if (s.input.empty()) throw ConfigError("config is missing: input");
    if (!std::filesystem::exists(s.input))
        throw ConfigError("input file does not exist: " + s.input);
    if ((stage_set.count("ikc") || stage_set.count("aoc")) && s.k == 0)
        throw ConfigError("config is missing: k");
    if (!s.retracted.empty() && s.metadata.empty())
        throw ConfigError("retracted filtering needs a metadata file");
    for (const std::string& path : {s.metadata, s.retracted, s.markers})
        if (!path.empty() && !std::filesystem::exists(path))
            throw ConfigError("file does not exist: " + path);
    if (stage_set.count("markers") && s.markers.empty())
        throw ConfigError("config is missing: markers");
    parse_criterion(s.criterion, 1);
}

int run_pipeline(const PipelineSettings& s, RunContext& rc) {
    check_pipeline_settings(s);
    std::filesystem::create_directories(s.output_dir);
    auto path_in = [&](const std::string& name) { return s.output_dir + "/" + name; };
    std::set<std::string> stage_set(s.stages.begin(), s.stages.end());

    rc.input(s.input);
    rc.input(s.metadata);
    rc.input(s.retracted);
    rc.input(s.markers);
    rc.params["k"] = s.k;
    rc.params["criterion"] = s.criterion;
    rc.params["candidates"] = s.candidates;
    rc.params["frozen_reference"] = s.frozen_reference;
    rc.params["median_includes_zeros"] = s.median_includes_zeros;
    rc.params["max_references"] = s.max_references;
    rc.params["threads"] = s.threads;
    ordered_json stages_run = ordered_json::array();

    std::string current_stage;
    try {
        CitationGraph graph;
        Clustering ikc_clusters;
        Clustering latest;
        bool have_aoc = false;
        Clustering aoc_clusters;

        for (const std::string& stage : kStageOrder) {
            if (!stage_set.count(stage)) continue;
            current_stage = stage;
            if (stage == "ingest") {
                graph = load_graph(s.input, s.comma);
                auto out = path_in("ingest_summary.json");
                std::ofstream f(out, std::ios::binary);
                f << ingest_summary(graph).dump(2) << '\n';
                rc.output(out);
            } else if (stage == "curate") {
                NodeMetadata meta = s.metadata.empty() ? empty_metadata(graph)
                                                       : load_metadata(s.metadata, graph);
                auto dois = s.retracted.empty() ? std::unordered_set<std::string>{}
                                                : load_doi_set(s.retracted);
                auto result = curate(graph, meta, dois, s.max_references);
                graph = std::move(result.graph);
                write_edges(path_in("curated_edges.tsv"), graph);
                write_curation_report_json(path_in("curation_report.json"), result.report);
                rc.output(path_in("curated_edges.tsv"));
                rc.output(path_in("curation_report.json"));
            } else if (stage == "ikc") {
                auto result = ikc(graph, s.k);
                ikc_clusters = std::move(result.clustering);
                latest = ikc_clusters;
                write_clusters_csv(path_in("clusters.csv"), ikc_clusters, graph);
                write_summary_json(path_in("summary.json"), ikc_clusters);
                write_rejected_csv(path_in("rejected.csv"), result.rejected, graph);
                rc.output(path_in("clusters.csv"));
                rc.output(path_in("summary.json"));
                rc.output(path_in("rejected.csv"));
            } else if (stage == "aoc") {
                auto candidates = parse_candidates(s.candidates, graph, ikc_clusters);
                AocOptions opt;
                opt.frozen_reference = s.frozen_reference;
                opt.threads = s.threads;
                opt.record_decisions = s.decisions;
                auto result =
                    aoc(graph, ikc_clusters, candidates, parse_criterion(s.criterion, s.k), opt);
                aoc_clusters = std::move(result.clustering);
                latest = aoc_clusters;
                have_aoc = true;
                write_clusters_with_origin_csv(path_in("aoc_clusters.csv"), aoc_clusters,
                                               ikc_clusters, graph);
                write_summary_json(path_in("aoc_summary.json"), aoc_clusters);
                rc.output(path_in("aoc_clusters.csv"));
                rc.output(path_in("aoc_summary.json"));
                if (s.decisions) {
                    write_decisions_csv(path_in("aoc_decisions.csv"), result.decisions, graph);
                    rc.output(path_in("aoc_decisions.csv"));
                }
            } else if (stage == "tiers") {
                write_tiers_csv(path_in("tiers.csv"), tier_classify(graph, latest), graph);
                rc.output(path_in("tiers.csv"));
            } else if (stage == "markers") {
                auto markers = load_markers(s.markers, graph);
                write_marker_report_csv(path_in("marker_report.csv"),
                                        marker_report(latest, markers));
                rc.output(path_in("marker_report.csv"));
            } else if (stage == "overlap") {
                OverlapGraphOptions opt;
                opt.median_includes_zeros = s.median_includes_zeros;
                auto og = overlap_graph(have_aoc ? aoc_clusters : ikc_clusters, opt);
                write_overlap_json(path_in("overlap.json"), og);
                write_overlap_dot(path_in("overlap.dot"), og);
                rc.output(path_in("overlap.json"));
                rc.output(path_in("overlap.dot"));
            }
            stages_run.push_back(stage);
            std::cout << "stage " << stage << ": done\n";
        }
    } catch (const std::exception& e) {
        // Preserve whatever was already written and mark the failure.
        std::ofstream marker(path_in("FAILED"));
        marker << current_stage << ": " << e.what() << '\n';
        std::cerr << "stage " << current_stage << " failed: " << e.what() << '\n';
        return 4;
    }
    rc.params["stages"] = stages_run;
    rc.write(path_in("manifest.json"));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-core clustering and overlap assembly for citation networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("corecrest ") + kVersion);

    RunContext rc;
    rc.command = join_args(argc, argv);

    // Common option storage; each subcommand binds the subset it uses.
    std::string input, clusters_path, metadata_path, output, summary, manifest;
    std::string report, rejected, dot, markers_path, retracted_path, decisions_path;
    std::string criterion = "m", candidates = "nonsingleton", config_path;
    bool comma = false, directed = false, frozen = false, zeros = false, decisions_flag = false;
    std::uint32_t k = 0, max_references = kNoReferenceLimit;
    std::uint64_t er_n = 0, er_m = 0, seed = 0;
    double swaps_per_edge = 10.0;
    unsigned threads = default_threads();

    auto* ingest_cmd = app.add_subcommand("ingest", "load an edge list and report its shape");
    ingest_cmd->add_option("--input", input, "edge list file")->required();
    ingest_cmd->add_flag("--comma", comma, "comma-delimited input");
    ingest_cmd->add_option("--output", output, "write the normalized edge list here");
    ingest_cmd->add_option("--summary", summary, "write a JSON summary here");
    ingest_cmd->add_option("--manifest", manifest, "manifest path");

    auto* curate_cmd = app.add_subcommand("curate", "drop retracted and high-referencing nodes");
    curate_cmd->add_option("--input", input, "edge list file")->required();
    curate_cmd->add_flag("--comma", comma, "comma-delimited input");
    curate_cmd->add_option("--metadata", metadata_path, "node_key<TAB>year<TAB>doi table");
    curate_cmd->add_option("--retracted", retracted_path, "file of retracted DOIs");
    curate_cmd->add_option("--max-references", max_references,
                           "remove nodes with out-degree >= this");
    curate_cmd->add_option("--output", output, "curated edge list")->required();
    curate_cmd->add_option("--report", report, "curation report JSON");
    curate_cmd->add_option("--manifest", manifest, "manifest path");

    auto* cores_cmd = app.add_subcommand("cores", "core number per node");
    cores_cmd->add_option("--input", input, "edge list file")->required();
    cores_cmd->add_flag("--comma", comma, "comma-delimited input");
    cores_cmd->add_option("--output", output, "node_key,core_number CSV")->required();
    cores_cmd->add_option("--summary", summary, "degeneracy summary JSON");
    cores_cmd->add_option("--manifest", manifest, "manifest path");

    auto* ikc_cmd = app.add_subcommand("ikc", "iterative k-core clustering");
    ikc_cmd->add_option("--input", input, "edge list file")->required();
    ikc_cmd->add_flag("--comma", comma, "comma-delimited input");
    ikc_cmd->add_option("--k", k, "stop once degeneracy falls below k")->required();
    ikc_cmd->add_option("--output", output, "cluster_id,node_key CSV")->required();
    ikc_cmd->add_option("--summary", summary, "per-cluster summary JSON");
    ikc_cmd->add_option("--rejected", rejected, "rejected component CSV");
    ikc_cmd->add_option("--threads", threads, "accepted for symmetry; ikc is sequential");
    ikc_cmd->add_option("--manifest", manifest, "manifest path");

    auto* aoc_cmd = app.add_subcommand("aoc", "assemble overlapping clusters");
    aoc_cmd->add_option("--input", input, "edge list file")->required();
    aoc_cmd->add_flag("--comma", comma, "comma-delimited input");
    aoc_cmd->add_option("--clusters", clusters_path, "input clustering CSV")->required();
    aoc_cmd->add_option("--criterion", criterion, "m (mcd) or k (fixed k)")->required();
    aoc_cmd->add_option("--k", k, "k used by the input clustering")->required();
    aoc_cmd->add_option("--candidates", candidates,
                        "nonsingleton | singletons:P | file:PATH (default nonsingleton)");
    aoc_cmd->add_option("--output", output, "cluster_id,node_key,origin CSV")->required();
    aoc_cmd->add_option("--summary", summary, "per-cluster summary JSON");
    aoc_cmd->add_option("--decisions", decisions_path, "admission decision log CSV");
    aoc_cmd->add_flag("--frozen-reference", frozen,
                      "count criterion neighbors against the original members");
    aoc_cmd->add_option("--threads", threads, "worker threads (CORECREST_THREADS default)");
    aoc_cmd->add_option("--manifest", manifest, "manifest path");

    auto* tiers_cmd = app.add_subcommand("tiers", "intra-cluster citation tiers");
    tiers_cmd->add_option("--input", input, "edge list file")->required();
    tiers_cmd->add_flag("--comma", comma, "comma-delimited input");
    tiers_cmd->add_option("--clusters", clusters_path, "clustering CSV")->required();
    tiers_cmd->add_option("--output", output, "tier CSV")->required();
    tiers_cmd->add_option("--manifest", manifest, "manifest path");

    auto* markers_cmd = app.add_subcommand("markers", "marker counts per cluster");
    markers_cmd->add_option("--input", input, "edge list file")->required();
    markers_cmd->add_flag("--comma", comma, "comma-delimited input");
    markers_cmd->add_option("--clusters", clusters_path, "clustering CSV")->required();
    markers_cmd->add_option("--markers", markers_path, "marker key file")->required();
    markers_cmd->add_option("--output", output, "marker report CSV")->required();
    markers_cmd->add_option("--manifest", manifest, "manifest path");

    auto* overlap_cmd = app.add_subcommand("overlap", "cluster overlap graph");
    overlap_cmd->add_option("--clusters", clusters_path, "clustering CSV")->required();
    overlap_cmd->add_option("--output", output, "overlap JSON");
    overlap_cmd->add_option("--dot", dot, "DOT export");
    overlap_cmd->add_flag("--median-includes-zeros", zeros,
                          "median over all cluster pairs, not just intersecting ones");
    overlap_cmd->add_option("--manifest", manifest, "manifest path");

    auto* er_cmd = app.add_subcommand("er", "seeded G(n,m) random graph");
    er_cmd->add_option("--n", er_n, "node count")->required();
    er_cmd->add_option("--m", er_m, "edge count")->required();
    er_cmd->add_option("--seed", seed, "generator seed")->required();
    er_cmd->add_flag("--directed", directed, "directed edges (default undirected)");
    er_cmd->add_option("--output", output, "edge list file")->required();
    er_cmd->add_option("--manifest", manifest, "manifest path");

    auto* shuffle_cmd = app.add_subcommand("shuffle", "cited-year-preserving edge shuffle");
    shuffle_cmd->add_option("--input", input, "edge list file")->required();
    shuffle_cmd->add_flag("--comma", comma, "comma-delimited input");
    shuffle_cmd->add_option("--metadata", metadata_path, "node_key<TAB>year table")->required();
    shuffle_cmd->add_option("--seed", seed, "shuffle seed")->required();
    shuffle_cmd->add_option("--swaps-per-edge", swaps_per_edge,
                            "attempted swaps per stratum edge (default 10)");
    shuffle_cmd->add_option("--output", output, "shuffled edge list")->required();
    shuffle_cmd->add_option("--report", report, "swap statistics JSON");
    shuffle_cmd->add_option("--manifest", manifest, "manifest path");

    auto* validate_cmd = app.add_subcommand("validate", "re-check km-validity of a clustering");
    validate_cmd->add_option("--input", input, "edge list file")->required();
    validate_cmd->add_flag("--comma", comma, "comma-delimited input");
    validate_cmd->add_option("--clusters", clusters_path, "clustering CSV")->required();
    validate_cmd->add_option("--k", k, "required minimum induced degree")->required();
    validate_cmd->add_option("--summary", summary,
                             "recorded summary JSON to cross-check against");

    auto* pipeline_cmd = app.add_subcommand("pipeline", "run configured stages in order");
    pipeline_cmd->add_option("--config", config_path, "flat key = value config file")->required();
    std::string ov_input, ov_output_dir, ov_stages, ov_criterion, ov_candidates;
    std::uint32_t ov_k = 0;
    unsigned ov_threads = 0;
    pipeline_cmd->add_option("--input", ov_input, "override config input");
    pipeline_cmd->add_option("--output-dir", ov_output_dir, "override config output_dir");
    pipeline_cmd->add_option("--k", ov_k, "override config k");
    pipeline_cmd->add_option("--criterion", ov_criterion, "override config criterion");
    pipeline_cmd->add_option("--candidates", ov_candidates, "override config candidates");
    pipeline_cmd->add_option("--stages", ov_stages, "override config stages (comma list)");
    pipeline_cmd->add_option("--threads", ov_threads, "override config threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    rc.manifest_path = manifest;

    try {
        if (*ingest_cmd) {
            rc.input(input);
            auto graph = load_graph(input, comma);
            auto j = ingest_summary(graph);
            if (!output.empty()) {
                write_edges(output, graph);
                rc.output(output);
            }
            if (!summary.empty()) {
                std::ofstream f(summary, std::ios::binary);
                if (!f) throw ConfigError("cannot open output file: " + summary);
                f << j.dump(2) << '\n';
                rc.output(summary);
            }
            std::cout << "nodes=" << graph.node_count() << " directed_edges=" << graph.edge_count()
                      << " undirected_edges=" << graph.undirected_edge_count() << '\n';
            rc.write(!output.empty() ? output + ".manifest.json"
                                     : (!summary.empty() ? summary + ".manifest.json" : ""));
        } else if (*curate_cmd) {
            rc.input(input);
            rc.input(metadata_path);
            rc.input(retracted_path);
            rc.params["max_references"] = max_references;
            if (!retracted_path.empty() && metadata_path.empty())
                throw ConfigError("--retracted needs --metadata for DOI lookup");
            auto graph = load_graph(input, comma);
            NodeMetadata meta = metadata_path.empty() ? empty_metadata(graph)
                                                      : load_metadata(metadata_path, graph);
            auto dois = retracted_path.empty() ? std::unordered_set<std::string>{}
                                               : load_doi_set(retracted_path);
            auto result = curate(graph, meta, dois, max_references);
            write_edges(output, result.graph);
            rc.output(output);
            if (!report.empty()) {
                write_curation_report_json(report, result.report);
                rc.output(report);
            }
            std::cout << "nodes_removed=" << result.report.nodes_removed
                      << " edges_removed=" << result.report.edges_removed << '\n';
            rc.write(output + ".manifest.json");
        } else if (*cores_cmd) {
            rc.input(input);
            auto graph = load_graph(input, comma);
            auto cores = core_numbers(graph);
            write_core_numbers_csv(output, cores, graph);
            rc.output(output);
            if (!summary.empty()) {
                std::ofstream f(summary, std::ios::binary);
                if (!f) throw ConfigError("cannot open output file: " + summary);
                ordered_json j{{"degeneracy", cores.degeneracy},
                               {"nodes", graph.node_count()},
                               {"directed_edges", graph.edge_count()}};
                f << j.dump(2) << '\n';
                rc.output(summary);
            }
            std::cout << "degeneracy=" << cores.degeneracy << '\n';
            rc.write(output + ".manifest.json");
        } else if (*ikc_cmd) {
            rc.input(input);
            rc.params["k"] = k;
            auto graph = load_graph(input, comma);
            auto result = ikc(graph, k);
            write_clusters_csv(output, result.clustering, graph);
            rc.output(output);
            if (!summary.empty()) {
                write_summary_json(summary, result.clustering);
                rc.output(summary);
            }
            if (!rejected.empty()) {
                write_rejected_csv(rejected, result.rejected, graph);
                rc.output(rejected);
            }
            auto stats = clustering_stats(result.clustering);
            std::cout << "clusters=" << stats.cluster_count
                      << " nodes_clustered=" << stats.nodes_clustered
                      << " coverage=" << format_double(stats.coverage)
                      << " rejected_components=" << result.rejected.size() << '\n';
            rc.write(output + ".manifest.json");
        } else if (*aoc_cmd) {
            rc.input(input);
            rc.input(clusters_path);
            rc.params["criterion"] = criterion;
            rc.params["k"] = k;
            rc.params["candidates"] = candidates;
            rc.params["frozen_reference"] = frozen;
            rc.params["threads"] = threads;
            auto graph = load_graph(input, comma);
            auto original = read_clusters_csv(clusters_path, graph);
            auto candidate_set = parse_candidates(candidates, graph, original);
            AocOptions opt;
            opt.frozen_reference = frozen;
            opt.threads = threads;
            opt.record_decisions = !decisions_path.empty();
            auto result = aoc(graph, original, candidate_set, parse_criterion(criterion, k), opt);
            write_clusters_with_origin_csv(output, result.clustering, original, graph);
            rc.output(output);
            if (!summary.empty()) {
                write_summary_json(summary, result.clustering);
                rc.output(summary);
            }
            if (!decisions_path.empty()) {
                write_decisions_csv(decisions_path, result.decisions, graph);
                rc.output(decisions_path);
            }
            auto growth = cluster_growth_report(original, result.clustering);
            std::cout << "clusters=" << result.clustering.clusters.size()
                      << " grown=" << growth.increased << " unchanged=" << growth.unchanged
                      << " candidates=" << candidate_set.nodes.size() << '\n';
            rc.write(output + ".manifest.json");
        } else if (*tiers_cmd) {
            rc.input(input);
            rc.input(clusters_path);
            auto graph = load_graph(input, comma);
            auto clustering = read_clusters_csv(clusters_path, graph);
            auto tiers = tier_classify(graph, clustering);
            write_tiers_csv(output, tiers, graph);
            rc.output(output);
            std::size_t tier1 = 0;
            for (const auto& row : tiers.rows) tier1 += row.tier;
            std::cout << "rows=" << tiers.rows.size() << " tier1=" << tier1 << '\n';
            rc.write(output + ".manifest.json");
        } else if (*markers_cmd) {
            rc.input(input);
            rc.input(clusters_path);
            rc.input(markers_path);
            auto graph = load_graph(input, comma);
            auto clustering = read_clusters_csv(clusters_path, graph);
            auto markers = load_markers(markers_path, graph);
            auto report_table = marker_report(clustering, markers);
            write_marker_report_csv(output, report_table);
            rc.output(output);
            std::cout << "resolved=" << report_table.resolved
                      << " covered=" << report_table.covered
                      << " clusters_with_markers=" << report_table.clusters_with_markers
                      << " unresolved=" << markers.unresolved.size() << '\n';
            if (report_table.zero_denominator)
                std::cout << "warning: no marker resolved; percentages are zero\n";
            rc.write(output + ".manifest.json");
        } else if (*overlap_cmd) {
            rc.input(clusters_path);
            rc.params["median_includes_zeros"] = zeros;
            auto loaded = read_clusters_csv(clusters_path);
            OverlapGraphOptions opt;
            opt.median_includes_zeros = zeros;
            auto og = overlap_graph(loaded.clustering, opt);
            if (!output.empty()) {
                write_overlap_json(output, og);
                rc.output(output);
            }
            if (!dot.empty()) {
                write_overlap_dot(dot, og);
                rc.output(dot);
            }
            std::cout << "pairs=" << og.overlapping_pairs << " edges=" << og.edges.size();
            if (og.threshold_defined)
                std::cout << " threshold=" << format_double(og.threshold);
            else
                std::cout << " threshold=undefined";
            std::cout << '\n';
            rc.write(!output.empty() ? output + ".manifest.json"
                                     : (!dot.empty() ? dot + ".manifest.json" : ""));
        } else if (*er_cmd) {
            rc.params["n"] = er_n;
            rc.params["m"] = er_m;
            rc.params["seed"] = seed;
            rc.params["directed"] = directed;
            auto graph = er_generate(er_n, er_m, seed, directed);
            write_edges(output, graph);
            rc.output(output);
            std::cout << "nodes=" << graph.node_count() << " directed_edges=" << graph.edge_count()
                      << '\n';
            rc.write(output + ".manifest.json");
        } else if (*shuffle_cmd) {
            rc.input(input);
            rc.input(metadata_path);
            rc.params["seed"] = seed;
            rc.params["swaps_per_edge"] = swaps_per_edge;
            auto graph = load_graph(input, comma);
            auto meta = load_metadata(metadata_path, graph);
            ShuffleConfig cfg;
            cfg.seed = seed;
            cfg.swap_multiplier = swaps_per_edge;
            auto result = shuffle_configuration(graph, meta, cfg);
            write_edges(output, result.graph);
            rc.output(output);
            if (!report.empty()) {
                write_shuffle_report_json(report, result.report);
                rc.output(report);
            }
            std::cout << "strata=" << result.report.strata
                      << " attempts=" << result.report.attempts
                      << " accepted=" << result.report.accepted << '\n';
            rc.write(output + ".manifest.json");
        } else if (*validate_cmd) {
            return run_validate(input, comma, clusters_path, k, summary);
        } else if (*pipeline_cmd) {
            rc.input(config_path);
            auto settings = pipeline_settings(read_config(config_path));
            if (!ov_input.empty()) settings.input = ov_input;
            if (!ov_output_dir.empty()) settings.output_dir = ov_output_dir;
            if (ov_k) settings.k = ov_k;
            if (!ov_criterion.empty()) settings.criterion = ov_criterion;
            if (!ov_candidates.empty()) settings.candidates = ov_candidates;
            if (ov_threads) settings.threads = ov_threads;
            if (!ov_stages.empty()) {
                settings.stages.clear();
                std::string rest = ov_stages;
                while (!rest.empty()) {
                    std::size_t at = rest.find(',');
                    std::string stage = rest.substr(0, at);
                    if (!stage.empty()) settings.stages.push_back(stage);
                    if (at == std::string::npos) break;
                    rest = rest.substr(at + 1);
                }
            }
            if (settings.threads == 0) settings.threads = default_threads();
            return run_pipeline(settings, rc);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
