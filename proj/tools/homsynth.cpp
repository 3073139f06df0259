#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "homsynth/homsynth.hpp"

using namespace homsynth;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInputError = 2, kCapacity = 3 };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes through a temporary file in the same directory, then renames it into place.
void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write '" + path + "'");
        out << content;
        if (!out.flush()) throw InputError("cannot write '" + path + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw InputError("cannot write '" + path + "': " + ec.message());
    }
}

/// A graph argument is a file path if such a file exists, else graph text or a generator expression.
Graph load_graph(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) return parse_graph(read_file(arg));
    return parse_graph(arg);
}

Json load_json(const std::string& path) { return detail::parse_json_text(read_file(path)); }

struct LoadedCircuit {
    Circuit circuit;
    bool from_abp = false;
};

LoadedCircuit load_circuit(const std::string& path) {
    Json j = load_json(path);
    if (j.contains("edges") && j.contains("source")) return {abp_to_circuit(abp_from_json(j)), true};
    return {circuit_from_json(j), false};
}

std::vector<int> parse_int_list(const std::string& s, const std::string& flag) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError(flag + ": '" + tok + "' is not an integer");
        }
    }
    if (out.empty()) throw InputError(flag + ": empty list");
    return out;
}

Json metrics_json(const Circuit& c) {
    auto m = metrics(c);
    return Json{{"size", m.size},       {"depth", m.depth},   {"product_depth", m.product_depth},
                {"monotone", m.monotone}, {"skew", m.skew},   {"alternating", m.alternating},
                {"formal_degree", m.formal_degree}, {"inputs", m.inputs}, {"constants", m.constants},
                {"adds", m.adds},       {"muls", m.muls}};
}

/// Plain-text rendering: scalars as "key value", nested objects with dotted keys,
/// arrays of objects as whitespace-separated tables.
void render_text(std::ostream& os, const Json& j, const std::string& prefix = "") {
    for (auto& [key, val] : j.items()) {
        std::string name = prefix.empty() ? key : prefix + "." + key;
        if (val.is_object()) {
            render_text(os, val, name);
        } else if (val.is_array() && !val.empty() && val.front().is_object()) {
            os << name << ":\n";
            std::vector<std::string> cols;
            for (auto& [k, v] : val.front().items()) cols.push_back(k);
            os << " ";
            for (auto& c : cols) os << " " << c;
            os << "\n";
            for (auto& row : val) {
                os << " ";
                for (auto& c : cols) os << " " << (row.contains(c) ? row[c].dump() : "-");
                os << "\n";
            }
        } else {
            os << name << " " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
        }
    }
}

struct Common {
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    std::string report;
    long long gate_cap = -1;
};

std::size_t resolve_gate_cap(const Common& c) {
    if (c.gate_cap > 0) return static_cast<std::size_t>(c.gate_cap);
    if (c.gate_cap == 0) throw InputError("--gate-cap must be positive");
    return gate_cap_from_env(kDefaultGateCap);
}

Json header(const std::string& sub, const Common& c, Json inputs) {
    return Json{{"tool", "homsynth"}, {"version", kVersion}, {"subcommand", sub}, {"seed", c.seed}, {"inputs", std::move(inputs)}};
}

void emit(const Common& c, const Json& report) {
    if (!c.report.empty()) write_atomic(c.report, report.dump(2) + "\n");
    render_text(std::cout, report);
}

void write_artifact(const Common& c, const std::string& json_text, const std::string& dot_text, const std::string& text) {
    if (c.out.empty()) return;
    if (c.format == "json")
        write_atomic(c.out, json_text);
    else if (c.format == "dot")
        write_atomic(c.out, dot_text);
    else
        write_atomic(c.out, text);
}

void add_common(CLI::App* sub, Common& c, bool artifact) {
    sub->add_option("--seed", c.seed, "random seed recorded in the report")->capture_default_str();
    sub->add_option("--report", c.report, "write the JSON report to this file");
    sub->add_option("--gate-cap", c.gate_cap, "gate cap (default 10^7, or HOMSYNTH_GATE_CAP)");
    if (artifact) {
        sub->add_option("--out", c.out, "write the artifact to this file");
        sub->add_option("--format", c.format, "artifact format")->check(CLI::IsMember({"json", "dot", "text"}))->capture_default_str();
    }
}

// ---------------------------------------------------------------------------

int cmd_param(const Common& c, const std::string& graph_arg, int delta, bool pruned, bool path) {
    Graph h = load_graph(graph_arg);
    WidthCertificate cert = path ? pw_delta(h, delta, pruned) : tw_delta(h, delta, pruned);
    Json inputs{{"graph", graph_arg}, {"delta", delta}, {"pruned", pruned}, {"path", path}};
    Json report = header("param", c, inputs);
    report["graph"] = graph_to_json(h);
    report["disconnected"] = !h.is_connected();
    report["parameter"] = to_string(cert.parameter);
    report["value"] = cert.value;
    RootedTreeDecomposition t = cert.is_path() ? cert.path().as_tree() : cert.tree();
    report["height"] = t.height();
    if (!c.out.empty()) report["certificate_path"] = c.out;
    report["certificate"] = certificate_to_json(cert);
    std::ostringstream text;
    text << "value " << cert.value << "\n";
    write_artifact(c, certificate_to_json(cert).dump(2) + "\n", decomposition_to_dot(t), text.str());
    emit(c, report);
    return kOk;
}

int cmd_synth(const Common& c, const std::string& graph_arg, int n, int delta, const std::string& poly, bool abp) {
    Graph h = load_graph(graph_arg);
    PolyKind kind = parse_poly_kind(poly);
    std::size_t cap = resolve_gate_cap(c);
    Json inputs{{"graph", graph_arg}, {"n", n}, {"delta", delta}, {"poly", poly}, {"abp", abp}};
    Json report = header("synth", c, inputs);
    report["graph"] = graph_to_json(h);
    report["disconnected"] = !h.is_connected();
    if (abp) {
        auto res = synth_abp(h, n, delta, kind, cap);
        Circuit sc = abp_to_circuit(res.abp);
        report["delta"] = delta;
        report["width"] = res.certificate.value;
        report["length"] = res.length;
        report["abp_size"] = res.abp.size();
        report["abp_edges"] = res.abp.edges.size();
        report["actual_size"] = sc.size();
        report["skew_circuit"] = metrics_json(sc);
        report["certificate"] = certificate_to_json(res.certificate);
        report["layers"] = res.layers.bags;
        std::ostringstream text;
        text << "length " << res.length << "\nnodes " << res.abp.size() << "\nedges " << res.abp.edges.size() << "\n";
        write_artifact(c, abp_to_json(res.abp).dump() + "\n", abp_to_dot(res.abp), text.str());
    } else {
        auto res = synth_circuit(h, n, delta, kind, cap);
        const SynthPlan& p = res.plan;
        report["delta"] = delta;
        report["width"] = p.certificate.value;
        report["max_bag"] = p.max_bag;
        report["rep_height"] = p.rep_height;
        report["predicted_size_bound"] = p.predicted_size_bound;
        report["actual_size"] = res.circuit.size();
        report["metrics"] = metrics_json(res.circuit);
        report["warnings"] = p.warnings;
        report["certificate"] = certificate_to_json(p.certificate);
        report["decomposition"] = decomposition_to_json(p.tree, &p.rep);
        std::ostringstream text;
        text << "size " << res.circuit.size() << "\nproduct_depth " << metrics(res.circuit).product_depth << "\n";
        write_artifact(c, circuit_to_json(res.circuit).dump() + "\n", circuit_to_dot(res.circuit), text.str());
    }
    emit(c, report);
    return kOk;
}

int cmd_verify(const Common& c, const std::string& circuit_path, const std::string& graph_arg, int n,
               const std::string& poly, int trials, bool exact) {
    Graph h = load_graph(graph_arg);
    PolySpec spec{h, n, parse_poly_kind(poly)};
    auto loaded = load_circuit(circuit_path);
    Json inputs{{"circuit", circuit_path}, {"graph", graph_arg}, {"n", n}, {"poly", poly}, {"trials", trials}, {"exact", exact}};
    Json report = header("verify", c, inputs);
    report["from_abp"] = loaded.from_abp;
    report["metrics"] = metrics_json(loaded.circuit);
    bool equal;
    if (exact) {
        auto got = expand(loaded.circuit);
        auto want = brute_polynomial(spec);
        equal = got == want;
        report["method"] = "expansion";
        report["monomials"] = got.size();
        report["oracle_monomials"] = want.size();
    } else {
        auto v = pit_equal(loaded.circuit, spec, trials, c.seed);
        equal = v.equal;
        report["method"] = "pit mod 2^61-1";
        report["trials_run"] = v.trials;
        if (!v.equal) {
            Json point = Json::object();
            for (auto& [x, val] : v.point) point[to_string(x)] = val;
            report["mismatch"] = Json{{"trial", v.mismatch_trial}, {"circuit_value", v.circuit_value},
                                      {"oracle_value", v.oracle_value}, {"point", point}};
        }
    }
    report["equal"] = equal;
    emit(c, report);
    return equal ? kOk : kMismatch;
}

int cmd_extract(const Common& c, const std::string& circuit_path, const std::string& graph_arg, long long index,
                std::uint64_t max_trees) {
    Graph h = load_graph(graph_arg);
    Circuit circ = load_circuit(circuit_path).circuit;
    PrunedGraph pg = prune(h);
    const int pd = metrics(circ).product_depth;
    ParseTreeEnumerator en(circ, max_trees);
    Json inputs{{"circuit", circuit_path}, {"graph", graph_arg}, {"index", index}, {"max_trees", max_trees}};
    Json report = header("extract", c, inputs);
    report["parse_trees"] = en.count();
    report["product_depth"] = pd;
    std::uint64_t valid = 0, invalid = 0;
    int max_height = 0;
    Json failures = Json::array();
    std::uint64_t lo = 0, hi = en.count();
    if (index >= 0) {
        if (static_cast<std::uint64_t>(index) >= en.count()) throw InputError("--index out of range");
        lo = static_cast<std::uint64_t>(index);
        hi = lo + 1;
    }
    Json selected;
    for (std::uint64_t i = lo; i < hi; ++i) {
        auto ex = extract_td_from_parse_tree(h, circ, en.at(i));
        auto rel = to_pruned_labels(pg, ex.tree);
        auto v = validate(pg.graph, rel);
        int height = ex.tree.height();
        bool height_ok = height <= std::max(pd, 1);
        max_height = std::max(max_height, height);
        if (v.valid && height_ok) {
            ++valid;
        } else {
            ++invalid;
            if (failures.size() < 10)
                failures.push_back(Json{{"index", i}, {"height", height}, {"violations", v.violations}});
        }
        if (i == lo) selected = decomposition_to_json(ex.tree);
    }
    report["checked"] = hi - lo;
    report["valid"] = valid;
    report["invalid"] = invalid;
    report["max_height"] = max_height;
    report["failures"] = failures;
    if (!selected.is_null()) {
        report["first_decomposition"] = selected;
        write_artifact(c, selected.dump(2) + "\n", decomposition_to_dot(decomposition_from_json(selected)), selected.dump() + "\n");
    }
    emit(c, report);
    return invalid == 0 ? kOk : kMismatch;
}

int cmd_census(const Common& c, const std::string& circuit_path, const std::string& graph_arg, int n) {
    Graph h = load_graph(graph_arg);
    Circuit circ = load_circuit(circuit_path).circuit;
    auto r = gate_support_census(circ, h, n);
    Json inputs{{"circuit", circuit_path}, {"graph", graph_arg}, {"n", n}};
    Json report = header("census", c, inputs);
    report["parse_trees"] = r.parse_trees;
    report["distinct_monomials"] = r.distinct_monomials;
    report["violations"] = r.violations;
    Json rows = Json::array();
    for (auto& e : r.entries)
        rows.push_back(Json{{"gate", e.gate}, {"kind", to_string(e.kind)}, {"monomials", e.monomials},
                            {"max_bag", e.max_bag}, {"bound", e.bound}, {"ok", e.ok}});
    report["gates"] = rows;
    emit(c, report);
    return r.violations == 0 ? kOk : kMismatch;
}

int cmd_reduce(const Common& c, const std::string& direction, const std::string& circuit_path, const std::string& graph_arg,
               int n, const std::string& diagonal) {
    Graph h = load_graph(graph_arg);
    Circuit circ = load_circuit(circuit_path).circuit;
    Json inputs{{"direction", direction}, {"circuit", circuit_path}, {"graph", graph_arg}, {"n", n}, {"diagonal", diagonal}};
    Json report = header("reduce", c, inputs);
    report["before"] = metrics_json(circ);
    Circuit out;
    if (direction == "colsub-to-hom") {
        out = reduce_colsub_to_hom(circ, h, parse_diagonal_mode(diagonal));
    } else if (direction == "hom-to-colsub") {
        if (n < 1) throw InputError("--n is required for hom-to-colsub");
        auto r = reduce_hom_to_colsub(circ, h, n, resolve_gate_cap(c));
        report["automorphisms"] = r.automorphisms;
        report["stage_sizes"] = r.stage_sizes;
        report["integrality_checked"] = r.integrality_checked;
        out = std::move(r.circuit);
    } else {
        throw InputError("--direction must be colsub-to-hom or hom-to-colsub");
    }
    report["after"] = metrics_json(out);
    std::ostringstream text;
    text << "size " << out.size() << "\n";
    write_artifact(c, circuit_to_json(out).dump() + "\n", circuit_to_dot(out), text.str());
    emit(c, report);
    return kOk;
}

int cmd_scale(const Common& c, const std::string& graph_arg, int delta, const std::string& poly, const std::string& n_list) {
    Graph h = load_graph(graph_arg);
    auto ns = parse_int_list(n_list, "--n-list");
    auto r = scaling_experiment(h, delta, parse_poly_kind(poly), ns, resolve_gate_cap(c));
    Json inputs{{"graph", graph_arg}, {"delta", delta}, {"poly", poly}, {"n_list", ns}};
    Json report = header("scale", c, inputs);
    report["width"] = r.width;
    report["slope"] = r.slope;
    report["tolerance"] = r.tolerance;
    report["within_tolerance"] = r.within_tolerance;
    Json rows = Json::array();
    for (auto& row : r.rows)
        rows.push_back(Json{{"n", row.n}, {"gate_count", row.gate_count}, {"size", row.size},
                            {"predicted_size_bound", row.predicted_size_bound}, {"product_depth", row.product_depth}});
    report["table"] = rows;
    report["certificate"] = certificate_to_json(r.certificate);
    emit(c, report);
    return kOk;
}

int cmd_hierarchy(const Common& c, int d, int delta, const std::string& n_list, const std::string& poly) {
    auto ns = parse_int_list(n_list, "--n-list");
    auto r = hierarchy_report(d, delta, ns, parse_poly_kind(poly), resolve_gate_cap(c));
    Json inputs{{"d", d}, {"delta", delta}, {"n_list", ns}, {"poly", poly}};
    Json report = header("hierarchy", c, inputs);
    report["note"] = "measured sizes of the depth-(delta+1) circuit beside n^(ptw_delta+1); no asymptotic claim is tested";
    report["vertices"] = r.graph.vertex_count();
    report["ptw_delta_plus_1"] = r.upper.value;
    report["ptw_delta"] = r.lower.value;
    Json rows = Json::array();
    for (auto& row : r.rows)
        rows.push_back(Json{{"n", row.n}, {"size", row.size}, {"product_depth", row.product_depth}, {"lower_bound", row.lower_bound}});
    report["table"] = rows;
    report["certificate_upper"] = certificate_to_json(r.upper);
    report["certificate_lower"] = certificate_to_json(r.lower);
    emit(c, report);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homsynth: monotone bounded-depth circuits for homomorphism polynomials"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("homsynth ") + kVersion);

    Common common;
    std::string graph, poly = "hom", circuit, direction, diagonal = "keep", n_list;
    int delta = 1, n = 0, trials = 20, d = 2;
    bool pruned = false, path = false, abp = false, exact = false;
    long long index = -1;
    std::uint64_t max_trees = 100'000;

    auto* param = app.add_subcommand("param", "exact Delta-treewidth / Delta-pathwidth with certificate");
    param->add_option("--graph", graph, "graph file, graph text or generator expression")->required();
    param->add_option("--delta", delta, "height (tree) or bag count (path) bound")->required();
    param->add_flag("--pruned", pruned, "use the pruned graph");
    param->add_flag("--path", path, "path decompositions instead of trees");
    add_common(param, common, true);

    auto* synth = app.add_subcommand("synth", "compile a monotone circuit or ABP");
    synth->add_option("--graph", graph)->required();
    synth->add_option("--n", n)->required();
    synth->add_option("--delta", delta)->required();
    synth->add_option("--poly", poly)->check(CLI::IsMember({"hom", "colsub"}))->capture_default_str();
    synth->add_flag("--abp", abp, "emit an ABP of length at most delta");
    add_common(synth, common, true);

    auto* verify = app.add_subcommand("verify", "compare a circuit or ABP with the brute-force oracle");
    verify->add_option("--circuit", circuit)->required();
    verify->add_option("--graph", graph)->required();
    verify->add_option("--n", n)->required();
    verify->add_option("--poly", poly)->check(CLI::IsMember({"hom", "colsub"}))->capture_default_str();
    verify->add_option("--trials", trials)->capture_default_str();
    verify->add_flag("--exact", exact, "compare full expansions instead of random points");
    add_common(verify, common, false);

    auto* extract = app.add_subcommand("extract", "tree decompositions from the parse trees of a ColSub circuit");
    extract->add_option("--circuit", circuit)->required();
    extract->add_option("--graph", graph)->required();
    extract->add_option("--index", index, "only this parse tree");
    extract->add_option("--max-trees", max_trees)->capture_default_str();
    add_common(extract, common, true);

    auto* census = app.add_subcommand("census", "per-gate monomial counts against n^(k-t-1)");
    census->add_option("--circuit", circuit)->required();
    census->add_option("--graph", graph)->required();
    census->add_option("--n", n)->required();
    add_common(census, common, false);

    auto* reduce = app.add_subcommand("reduce", "Hom <-> ColSub circuit reductions");
    reduce->add_option("--direction", direction)->required()->check(CLI::IsMember({"colsub-to-hom", "hom-to-colsub"}));
    reduce->add_option("--circuit", circuit)->required();
    reduce->add_option("--graph", graph)->required();
    reduce->add_option("--n", n, "n of the ColSub target (hom-to-colsub)");
    reduce->add_option("--diagonal", diagonal)->check(CLI::IsMember({"keep", "zero"}))->capture_default_str();
    add_common(reduce, common, true);

    auto* scale = app.add_subcommand("scale", "gate counts over n and their log-log slope");
    scale->add_option("--graph", graph)->required();
    scale->add_option("--delta", delta)->required();
    scale->add_option("--poly", poly)->check(CLI::IsMember({"hom", "colsub"}))->capture_default_str();
    scale->add_option("--n-list", n_list, "comma-separated ascending n values")->required();
    add_common(scale, common, false);

    auto* hierarchy = app.add_subcommand("hierarchy", "depth hierarchy on full d-ary trees");
    hierarchy->add_option("--d", d)->required();
    hierarchy->add_option("--delta", delta)->required();
    hierarchy->add_option("--n-list", n_list)->required();
    hierarchy->add_option("--poly", poly)->check(CLI::IsMember({"hom", "colsub"}))->capture_default_str();
    add_common(hierarchy, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*param) return cmd_param(common, graph, delta, pruned, path);
        if (*synth) return cmd_synth(common, graph, n, delta, poly, abp);
        if (*verify) return cmd_verify(common, circuit, graph, n, poly, trials, exact);
        if (*extract) return cmd_extract(common, circuit, graph, index, max_trees);
        if (*census) return cmd_census(common, circuit, graph, n);
        if (*reduce) return cmd_reduce(common, direction, circuit, graph, n, diagonal);
        if (*scale) return cmd_scale(common, graph, delta, poly, n_list);
        if (*hierarchy) return cmd_hierarchy(common, d, delta, n_list, poly);
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapacity;
    } catch (const ConsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
