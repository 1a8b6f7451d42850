// Command-line front end. Every subcommand prints a single JSON document
// (sorted keys, canonical ordering) to stdout; --format table switches to a
// human-oriented rendering. Diagnostics go to stderr, exit code 0 on
// success, 1 on semantic errors, 2 on usage errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lateral/cellgraph.hpp"
#include "lateral/oracle.hpp"
#include "lateral/patterns.hpp"
#include "lateral/reach.hpp"
#include "lateral/robustness.hpp"
#include "lateral/threshold.hpp"
#include "lateral/trapspaces.hpp"

using nlohmann::json;
using namespace lateral;

namespace {

struct Common {
    std::string graph_file;
    std::string model = "full";
    int k = 1;
    int limit = kDefaultOracleLimit;
    bool limit_set = false;
    std::string format = "json";
    bool allow_disconnected = false;
};

ModelKind model_kind(const Common& c) {
    if (c.model == "full") return ModelKind::full;
    if (c.model == "reduced") return ModelKind::reduced;
    throw std::invalid_argument("unknown model '" + c.model + "' (expected full or reduced)");
}

int effective_limit(const Common& c) {
    if (c.limit_set) return c.limit;
    if (const char* env = std::getenv("LATERAL_LIMIT")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw std::invalid_argument("LATERAL_LIMIT must be an integer");
        }
    }
    return c.limit;
}

CellGraph load_graph(const Common& c) {
    std::ifstream in(c.graph_file);
    if (!in) throw std::invalid_argument("cannot open graph file '" + c.graph_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return CellGraph::from_json_text(ss.str(), c.allow_disconnected);
}

CellSet parse_cells(const std::string& text, int L) {
    CellSet s(L);
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        int c = std::stoi(tok);
        if (c < 1 || c > L) throw std::out_of_range("cell index " + tok + " out of range 1.." + std::to_string(L));
        s.set(c - 1, true);
    }
    if (s.none()) throw std::invalid_argument("empty cell list");
    return s;
}

json witness_json(const PathWitness& w, const Network& net) {
    json j;
    j["start"] = w.start.str();
    json flips = json::array();
    for (int p : w.flips) flips.push_back(p + 1);
    j["flips"] = flips;
    j["end"] = w.replay(net).str();
    return j;
}

// Constructive witness to a fixed point without search, where a direct
// construction exists: from a homogeneous corner, or from any state whose
// minimal trap space is the whole space (via the corner). Works at any scale.
std::optional<PathWitness> constructive_witness(const CellGraph& g, const Network& net,
                                                const State& from, const State& to) {
    if (net.k() != 1 || !net.is_fixed_point(to)) return std::nullopt;
    if (from == to) return PathWitness{from, {}};
    ModelKind kind = net.kind();
    std::vector<Corner> corners =
        kind == ModelKind::full
            ? std::vector<Corner>{Corner::all_zeros, Corner::all_ones,
                                  Corner::notch_on_delta_off, Corner::notch_off_delta_on}
            : std::vector<Corner>{Corner::all_zeros, Corner::all_ones};
    for (Corner corner : corners)
        if (corner_state(g, corner, kind) == from)
            return witness_homogeneous_to_pattern(g, to, corner, kind);
    if (kind == ModelKind::full && kappa_net(net, from).is_full()) {
        PathWitness w = witness_to_homogeneous_full(g, from);
        PathWitness tail =
            witness_homogeneous_to_pattern(g, to, Corner::notch_on_delta_off, kind);
        w.flips.insert(w.flips.end(), tail.flips.begin(), tail.flips.end());
        return w;
    }
    return std::nullopt;
}

void emit(const json& j, const Common& c, const std::string& table) {
    if (c.format == "table" && !table.empty())
        std::cout << table;
    else
        std::cout << j.dump(2) << "\n";
}

// Step-by-step rendering of a witness: flipped variable and resulting state.
void witness_table(std::ostream& os, const PathWitness& w, const Network& net) {
    int L = net.cells();
    os << "  start  " << w.start.str() << "\n";
    State cur = w.start;
    int step = 1;
    for (int p : w.flips) {
        cur.flip(p);
        std::string var = net.kind() == ModelKind::full
                              ? (p < L ? "n" + std::to_string(p + 1)
                                       : "d" + std::to_string(p - L + 1))
                              : "x" + std::to_string(p + 1);
        os << "  " << step++ << ". flip " << var << " -> " << cur.str() << "\n";
    }
}

int run_gen(const std::string& kind, int n, int rows, int cols, const std::string& out_file) {
    CellGraph g = [&] {
        if (kind == "path") return CellGraph::path(n);
        if (kind == "cycle") return CellGraph::cycle(n);
        if (kind == "grid") return CellGraph::grid(rows, cols);
        if (kind == "hexgrid") return CellGraph::hexgrid(rows, cols);
        throw std::invalid_argument("unknown generator kind '" + kind + "'");
    }();
    std::string text = g.to_json_text();
    if (out_file.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_file);
        if (!out) throw std::invalid_argument("cannot write '" + out_file + "'");
        out << text << "\n";
    }
    return 0;
}

int run_fixed_points(const Common& c) {
    CellGraph g = load_graph(c);
    PatternSet ps = fixed_points(g, model_kind(c), c.k);
    json arr = json::array();
    std::ostringstream table;
    table << "cover\treduced\tfull\n";
    for (const auto& p : ps.patterns) {
        json item;
        item["cover"] = to_1based(p.cover);
        item["reduced"] = p.reduced.str();
        item["full"] = p.full.str();
        arr.push_back(item);
        table << json(to_1based(p.cover)).dump() << "\t" << p.reduced.str() << "\t"
              << p.full.str() << "\n";
    }
    emit(arr, c, table.str());
    return 0;
}

int run_trap_spaces(const Common& c, const std::string& check, bool enumerate, bool maximal,
                    const std::string& minimal_containing, const std::string& cells_text,
                    bool dot) {
    CellGraph g = load_graph(c);
    ModelKind kind = model_kind(c);
    if (!check.empty()) {
        Subspace s = Subspace::parse(check);
        TrapSpaceCheck result = kind == ModelKind::full ? is_trap_space_full(g, s, c.k)
                                                        : is_trap_space_reduced(g, s, c.k);
        json j;
        j["subspace"] = s.str();
        j["is_trap_space"] = result.is_trap;
        if (result.representative) j["representative"] = result.representative->str();
        j["clauses"] = result.clauses;
        std::ostringstream table;
        table << s.str() << (result.is_trap ? " is" : " is NOT") << " a trap space\n";
        for (const auto& cl : result.clauses) table << "  - " << cl << "\n";
        emit(j, c, table.str());
        return 0;
    }
    if (!minimal_containing.empty()) {
        State fp = State::parse(minimal_containing);
        CellSet h = parse_cells(cells_text, g.cell_count());
        json j;
        if (c.k == 1) {
            Subspace s = minimal_trap_space_around(g, fp, h, kind);
            j["subspace"] = s.str();
            j["method"] = "closed-form";
        } else {
            // No closed form at higher thresholds; closure of the freed subspace.
            Network net = build_network(g, kind, c.k);
            net.check_dim(fp);
            Bits freed(net.dim());
            h.for_each([&](int cell) {
                freed.set(cell, true);
                if (kind == ModelKind::full) freed.set(g.cell_count() + cell, true);
            });
            Subspace s = kappa_of_subspace(net, Subspace(fp, freed));
            j["subspace"] = s.str();
            j["method"] = "closure-derived";
        }
        emit(j, c, j["subspace"].get<std::string>() + " (" + j["method"].get<std::string>() + ")\n");
        return 0;
    }
    if (!maximal && !enumerate && !dot)
        throw std::invalid_argument(
            "trap-spaces needs one of --check/--enumerate/--maximal/--minimal-containing");
    std::vector<Subspace> spaces = maximal ? maximal_trap_spaces(g, kind)
                                           : enumerate_trap_spaces(g, kind, c.k, effective_limit(c));
    if (dot) {
        std::cout << hasse_dot(spaces);
        return 0;
    }
    json j;
    json arr = json::array();
    std::ostringstream table;
    for (const auto& s : spaces) {
        arr.push_back(s.str());
        table << s.str() << "\n";
    }
    j[maximal ? "maximal_trap_spaces" : "trap_spaces"] = arr;
    j["count"] = spaces.size();
    emit(j, c, table.str());
    return 0;
}

int run_reach(const Common& c, const std::string& from_text, const std::string& to_text,
              bool want_witness) {
    CellGraph g = load_graph(c);
    ModelKind kind = model_kind(c);
    Network net = build_network(g, kind, c.k);
    State from = State::parse(from_text);
    net.check_dim(from);
    json j;
    j["from"] = from.str();
    std::ostringstream table;
    if (!to_text.empty()) {
        State to = State::parse(to_text);
        net.check_dim(to);
        j["to"] = to.str();
        bool reachable;
        std::optional<PathWitness> witness;
        if (c.k == 1 && net.is_fixed_point(to)) {
            auto reached = kind == ModelKind::reduced ? reachable_fixed_points_reduced(g, from)
                                                      : reachable_fixed_points_full(g, from);
            reachable = std::find(reached.begin(), reached.end(), to) != reached.end();
            j["method"] = "closed-form";
        } else {
            witness = find_path_bfs(net, from, to, effective_limit(c));
            reachable = witness.has_value();
            j["method"] = "bfs";
        }
        j["reachable"] = reachable;
        table << (reachable ? "reachable" : "not reachable") << "\n";
        if (want_witness && reachable) {
            if (!witness) witness = constructive_witness(g, net, from, to);
            if (!witness) witness = find_path_bfs(net, from, to, effective_limit(c));
            j["witness"] = witness_json(*witness, net);
            witness_table(table, *witness, net);
        }
        emit(j, c, table.str());
        return 0;
    }
    json arr = json::array();
    if (c.k == 1) {
        auto reached = kind == ModelKind::reduced ? reachable_fixed_points_reduced(g, from)
                                                  : reachable_fixed_points_full(g, from);
        j["method"] = "closed-form";
        for (const auto& s : reached) {
            json item;
            item["pattern"] = s.str();
            table << s.str() << "\n";
            if (want_witness) {
                auto w = constructive_witness(g, net, from, s);
                if (!w) w = find_path_bfs(net, from, s, effective_limit(c));
                if (w) {
                    item["witness"] = witness_json(*w, net);
                    witness_table(table, *w, net);
                }
            }
            arr.push_back(item);
        }
    } else {
        // No closed reachability form at higher thresholds: patterns come
        // from the transversal enumeration, reachability from search.
        j["method"] = "oracle";
        auto reach_set = forward_reachable(net, from, effective_limit(c));
        for (const auto& fp : fixed_points(g, kind, c.k).states()) {
            if (!std::binary_search(reach_set.begin(), reach_set.end(), Stg::pack(fp))) continue;
            json item;
            item["pattern"] = fp.str();
            if (want_witness) {
                auto w = find_path_bfs(net, from, fp, effective_limit(c));
                if (w) item["witness"] = witness_json(*w, net);
            }
            arr.push_back(item);
            table << fp.str() << "\n";
        }
    }
    j["reachable_fixed_points"] = arr;
    emit(j, c, table.str());
    return 0;
}

int run_basins(const Common& c, const std::string& fp_text, const std::string& mode_text,
               bool enumerate) {
    CellGraph g = load_graph(c);
    ModelKind kind = model_kind(c);
    if (c.k != 1) throw std::invalid_argument("basin formulas hold for k=1 only; use stg/reach for k>=2");
    BasinMode mode = mode_text == "strong" ? BasinMode::strong : BasinMode::weak;
    if (mode_text != "weak" && mode_text != "strong")
        throw std::invalid_argument("mode must be weak or strong");
    State fp = State::parse(fp_text);
    BasinReport report = basin(g, fp, mode, kind, enumerate, effective_limit(c));
    json j;
    j["fixed_point"] = fp.str();
    j["mode"] = mode_text;
    j["predicate"] = report.predicate;
    std::ostringstream table;
    table << mode_text << " basin of " << fp.str() << "\n";
    if (report.states) {
        json arr = json::array();
        for (const auto& s : *report.states) {
            arr.push_back(s.str());
            table << s.str() << "\n";
        }
        j["states"] = arr;
        j["size"] = report.states->size();
    }
    emit(j, c, table.str());
    return 0;
}

int run_perturb(const Common& c, const std::string& pattern_text, const std::string& cells_text,
                const std::string& vars_text, bool dot) {
    CellGraph g = load_graph(c);
    ModelKind kind = model_kind(c);
    State pattern = State::parse(pattern_text);
    CellSet h = parse_cells(cells_text, g.cell_count());
    VarChoice vars = VarChoice::both;
    if (vars_text == "notch") vars = VarChoice::notch;
    else if (vars_text == "delta") vars = VarChoice::delta;
    else if (vars_text != "both") throw std::invalid_argument("vars must be notch, delta or both");
    PerturbationReport report = analyze_perturbation(g, pattern, h, vars, kind, c.k);
    if (dot) {
        // Containment diagram of the trap spaces below the report's one.
        std::vector<Subspace> below;
        for (const auto& s : enumerate_trap_spaces(g, kind, c.k, effective_limit(c)))
            if (report.trap_space.contains(s)) below.push_back(s);
        std::cout << hasse_dot(below);
        return 0;
    }
    json j;
    j["pattern"] = report.pattern.str();
    j["cells"] = to_1based(report.cells);
    j["vars"] = vars_text;
    j["perturbed"] = report.perturbed.str();
    j["trap_space"] = report.trap_space.str();
    j["trap_space_method"] = report.trap_space_closed_form ? "closed-form" : "closure-derived";
    json arr = json::array();
    for (const auto& s : report.reachable_patterns) arr.push_back(s.str());
    j["reachable_patterns"] = arr;
    j["reachable_exact"] = report.reachable_exact;
    j["returns_only_to_original"] = report.returns_only_to_original;
    j["cycle_exposed"] = report.cycle_exposed;
    j["radius"] = report.radius;
    std::ostringstream table;
    table << "pattern " << report.pattern.str() << ", cells " << json(to_1based(report.cells)).dump()
          << ", vars " << vars_text << "\n"
          << "trap space " << report.trap_space.str() << " ("
          << j["trap_space_method"].get<std::string>() << "), radius " << report.radius << "\n"
          << "reachable patterns: " << arr.dump() << "\n"
          << (report.returns_only_to_original ? "returns only to the original pattern\n"
                                              : "can settle elsewhere\n");
    emit(j, c, table.str());
    return 0;
}

int run_stg(const Common& c, const std::string& out_format) {
    CellGraph g = load_graph(c);
    Network net = build_network(g, model_kind(c), c.k);
    Stg stg = build_stg(net, effective_limit(c));
    if (out_format == "dot") std::cout << stg_to_dot(stg);
    else if (out_format == "json") std::cout << stg_to_json(stg) << "\n";
    else throw std::invalid_argument("stg --out must be dot or json");
    return 0;
}

int run_energy_check(const Common& c) {
    CellGraph g = load_graph(c);
    EnergyReport report = verify_energy_decrease(g, c.k, effective_limit(c));
    json j;
    j["k"] = c.k;
    j["transitions"] = report.transition_count;
    j["violations"] = report.violation_count;
    j["min_gap"] = report.any_transition ? report.min_gap.str() : "n/a";
    j["strictly_decreasing"] = report.violation_count == 0;
    std::ostringstream table;
    table << report.transition_count << " transitions, " << report.violation_count
          << " violations, min gap " << j["min_gap"].get<std::string>() << "\n";
    emit(j, c, table.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delta-Notch pattern analysis over cell graphs"};
    app.require_subcommand(1);

    Common common;
    std::string gen_kind, gen_out;
    int gen_n = 0, gen_rows = 0, gen_cols = 0;
    std::string ts_check, ts_minimal_fp, ts_cells;
    bool ts_enumerate = false, ts_maximal = false, ts_dot = false;
    std::string reach_from, reach_to;
    bool reach_witness = false;
    std::string basin_fp, basin_mode = "weak";
    bool basin_enumerate = false;
    std::string pt_pattern, pt_cells, pt_vars = "both";
    bool pt_dot = false;
    std::string stg_out = "json";

    auto add_common = [&](CLI::App* sub, bool needs_graph = true) {
        if (needs_graph) sub->add_option("--graph", common.graph_file, "graph JSON file")->required();
        sub->add_option("--model", common.model, "full or reduced (default full)");
        sub->add_option("--k", common.k, "activation threshold (default 1)");
        auto* lim = sub->add_option("--limit", common.limit, "dimension cap for exhaustive work");
        lim->each([&](const std::string&) { common.limit_set = true; });
        sub->add_option("--format", common.format, "json or table (default json)");
        sub->add_flag("--allow-disconnected", common.allow_disconnected,
                      "accept disconnected graphs; analyses act per component");
    };

    auto* gen = app.add_subcommand("gen", "generate a cell graph");
    gen->add_option("--kind", gen_kind, "path, cycle, grid or hexgrid")->required();
    gen->add_option("--n", gen_n, "cell count (path/cycle)");
    gen->add_option("--rows", gen_rows, "rows (grid/hexgrid)");
    gen->add_option("--cols", gen_cols, "columns (grid/hexgrid)");
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");

    auto* fp_cmd = app.add_subcommand("fixed-points", "stable patterns via covers/transversals");
    add_common(fp_cmd);

    auto* ts_cmd = app.add_subcommand("trap-spaces", "trap-space checks and enumeration");
    add_common(ts_cmd);
    ts_cmd->add_option("--check", ts_check, "subspace string to test");
    ts_cmd->add_flag("--enumerate", ts_enumerate, "list all trap spaces");
    ts_cmd->add_flag("--maximal", ts_maximal, "list maximal proper trap spaces");
    ts_cmd->add_option("--minimal-containing", ts_minimal_fp, "fixed point to wrap");
    ts_cmd->add_option("--cells", ts_cells, "comma-separated perturbed cells");
    ts_cmd->add_flag("--dot", ts_dot, "containment diagram in DOT");

    auto* reach_cmd = app.add_subcommand("reach", "reachable patterns and paths");
    add_common(reach_cmd);
    reach_cmd->add_option("--from", reach_from, "start state")->required();
    reach_cmd->add_option("--to", reach_to, "target state");
    reach_cmd->add_flag("--witness", reach_witness, "attach replayable flip sequences");

    auto* basins_cmd = app.add_subcommand("basins", "weak/strong basins of a pattern");
    add_common(basins_cmd);
    basins_cmd->add_option("--fixed-point", basin_fp, "pattern state")->required();
    basins_cmd->add_option("--mode", basin_mode, "weak or strong")->required();
    basins_cmd->add_flag("--enumerate", basin_enumerate, "list member states");

    auto* perturb_cmd = app.add_subcommand("perturb", "perturbation analysis of a pattern");
    add_common(perturb_cmd);
    perturb_cmd->add_option("--pattern", pt_pattern, "fixed point to perturb")->required();
    perturb_cmd->add_option("--cells", pt_cells, "comma-separated cells")->required();
    perturb_cmd->add_option("--vars", pt_vars, "notch, delta or both (default both)");
    perturb_cmd->add_flag("--dot", pt_dot, "containment diagram around the trap space");

    auto* stg_cmd = app.add_subcommand("stg", "export the asynchronous transition graph");
    add_common(stg_cmd);
    stg_cmd->add_option("--out", stg_out, "dot or json (default json)");

    auto* energy_cmd = app.add_subcommand("energy-check", "energy decrease along transitions");
    add_common(energy_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(gen_kind, gen_n, gen_rows, gen_cols, gen_out);
        if (fp_cmd->parsed()) return run_fixed_points(common);
        if (ts_cmd->parsed())
            return run_trap_spaces(common, ts_check, ts_enumerate, ts_maximal, ts_minimal_fp,
                                   ts_cells, ts_dot);
        if (reach_cmd->parsed()) return run_reach(common, reach_from, reach_to, reach_witness);
        if (basins_cmd->parsed()) return run_basins(common, basin_fp, basin_mode, basin_enumerate);
        if (perturb_cmd->parsed()) return run_perturb(common, pt_pattern, pt_cells, pt_vars, pt_dot);
        if (stg_cmd->parsed()) return run_stg(common, stg_out);
        if (energy_cmd->parsed()) return run_energy_check(common);
    } catch (const LimitError& e) {
        json err{{"error", {{"type", "limit"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err{{"error", {{"type", "invalid"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
