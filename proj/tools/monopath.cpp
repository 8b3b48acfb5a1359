// monopath command-line tool: solve / sweep / verify / omega / gen /
// colourings.  Exit codes: 0 success, 1 verification or bound violation,
// 2 invalid input, 3 unverifiable (horizon exhausted).
//
// Every subcommand that emits a witness or certificate re-verifies it before
// exiting 0, and all outputs are byte-stable given identical inputs and flags.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "monopath/colourings.hpp"
#include "monopath/json_io.hpp"
#include "monopath/omega.hpp"
#include "monopath/oracle.hpp"
#include "monopath/solver.hpp"
#include "monopath/sweep.hpp"
#include "monopath/verify.hpp"
#include "monopath/version.hpp"

namespace {

using namespace monopath;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUnverifiable = 3;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

int report_exit(const Report& rep) {
    switch (rep.status) {
        case VerifyStatus::ok: return kExitOk;
        case VerifyStatus::violation: return kExitViolation;
        case VerifyStatus::unverifiable: return kExitUnverifiable;
    }
    return kExitViolation;
}

PartitionMode parse_mode(const std::string& s) {
    auto m = partition_mode_from(s);
    if (!m) throw std::invalid_argument("mode must be 'distinct' or 'any'");
    return *m;
}

/// --oracle congruence[:r1-r2-...] | density
std::unique_ptr<LargeSetOracle> make_oracle(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    if (name == "congruence") {
        std::vector<std::uint64_t> residues;
        if (colon != std::string::npos) {
            std::istringstream in(spec.substr(colon + 1));
            std::string tok;
            while (std::getline(in, tok, '-')) residues.push_back(std::stoull(tok));
        }
        if (residues.empty()) residues = {0};
        return make_congruence_oracle(residues);
    }
    if (name == "density") return std::make_unique<DensityOracle>();
    throw std::invalid_argument("unknown oracle '" + spec + "'");
}

/// H-type graph with the named colouring on index pairs.
HTypeGraph make_htype(const std::string& kind, const std::string& colouring) {
    BuiltColouring b = build_colouring(parse_colouring_spec(colouring));
    HTypeGraph h = (kind == "identified")
                       ? HTypeGraph::identified_complete(b.r, b.pair_colour)
                       : HTypeGraph::disjoint_standard(b.r, b.pair_colour);
    if (kind != "identified" && kind != "disjoint")
        throw std::invalid_argument("htype must be 'disjoint' or 'identified'");
    if (b.period) h.set_cross_period_hint(*b.period, b.period_offset);
    h.set_name(b.canonical_name);
    return h;
}

nlohmann::json meta_object(const std::string& command) {
    nlohmann::json meta;
    meta["tool"] = "monopath";
    meta["version"] = kVersion;
    meta["command"] = command;
    return meta;
}

std::vector<Colour> parse_colour_list(const std::string& text) {
    std::vector<Colour> out;
    if (text.empty()) return out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

int run_solve(const std::string& input, const std::string& mode_s, int cap,
              const std::string& out_path) {
    FiniteColouredGraph g = load_graph_file(input);
    PartitionMode mode = parse_mode(mode_s);
    SolverConfig cfg;
    cfg.exact_cap = cap;
    SolveResult res = min_partition(g, mode, cfg);

    nlohmann::json j;
    auto meta = meta_object("solve");
    meta["input"] = input;
    meta["mode"] = mode_s;
    meta["cap"] = cap;
    j["meta"] = meta;
    j["result"] = to_json(res);
    Report rep;
    if (res.feasible) rep = verify_partition(g, res.witness);
    j["verification"] = to_json(rep);
    write_output(j.dump(2) + "\n", out_path);
    if (!res.feasible) return kExitOk; // an honest "no partition exists" answer
    return report_exit(rep);
}

int run_sweep(int n, int r, const std::string& mode_s, int jobs, bool canonical,
              std::uint64_t budget, const std::string& state_file, const std::string& format,
              const std::string& out_path) {
    SweepRequest req;
    req.n = n;
    req.r = r;
    req.mode = parse_mode(mode_s);
    req.jobs = jobs;
    req.canonical = canonical;
    req.budget = budget;
    req.state_file = state_file;
    SweepSummary sum = sweep_colourings(req);
    if (format == "json") {
        nlohmann::json j;
        auto meta = meta_object("sweep");
        meta["jobs"] = jobs;
        j["meta"] = meta;
        j["summary"] = sweep_to_json(sum);
        if (sum.max_optimum >= 0) {
            std::ostringstream argmax;
            save_graph(colouring_from_index(n, r, sum.argmax_index), argmax);
            j["argmax_colouring"] = argmax.str();
        }
        write_output(j.dump(2) + "\n", out_path);
    } else {
        write_output(sweep_to_csv(sum, jobs), out_path);
    }
    return kExitOk;
}

int run_verify(const std::string& graph_path, const std::string& partition_path,
               const std::string& colouring, const std::string& certificate_path) {
    if (!partition_path.empty()) {
        if (graph_path.empty()) throw std::invalid_argument("--partition needs --graph");
        FiniteColouredGraph g = load_graph_file(graph_path);
        std::ifstream in(partition_path);
        if (!in) throw std::invalid_argument("cannot open partition file");
        PathPartition part = partition_from_json(nlohmann::json::parse(in));
        Report rep = verify_partition(g, part);
        std::cout << to_json(rep).dump(2) << "\n";
        return report_exit(rep);
    }
    if (!certificate_path.empty()) {
        if (colouring.empty()) throw std::invalid_argument("--certificate needs --colouring");
        LazyColouredGraph g = build_lazy(colouring);
        std::ifstream in(certificate_path);
        if (!in) throw std::invalid_argument("cannot open certificate file");
        PrefixCertificate cert = certificate_from_json(nlohmann::json::parse(in));
        Report rep = verify_certificate(g, cert);
        std::cout << to_json(rep).dump(2) << "\n";
        return report_exit(rep);
    }
    throw std::invalid_argument("verify needs --partition or --certificate");
}

int run_omega(const std::string& construction, const std::string& colouring,
              const std::string& oracle_spec, const std::string& htype, std::uint64_t steps,
              std::uint64_t horizon, int witness, std::uint64_t seed, Colour colour, Vertex start,
              const std::string& colour_list, std::uint64_t k, const std::string& out_path) {
    OmegaConfig cfg;
    cfg.horizon = horizon;
    cfg.witness_count = witness;
    cfg.seed = seed;

    auto meta = meta_object("omega run");
    meta["construction"] = construction;
    meta["colouring"] = colouring;
    meta["oracle"] = oracle_spec;
    meta["steps"] = steps;
    meta["horizon"] = cfg.horizon_or(steps);
    meta["witness_count"] = witness;
    meta["seed"] = seed;

    if (construction == "rado") {
        LazyColouredGraph g = build_lazy(colouring);
        auto oracle = make_oracle(oracle_spec);
        PrefixCertificate cert = rado_cover(g, *oracle, steps, cfg);
        Report rep = verify_certificate(g, cert);
        nlohmann::json j = to_json(cert);
        j["meta"] = meta;
        j["verification"] = to_json(rep);
        write_output(j.dump(2) + "\n", out_path);
        if (!cert.params.unverified_steps.empty()) return kExitUnverifiable;
        return report_exit(rep);
    }
    if (construction == "uftrick") {
        LazyColouredGraph g = build_lazy(colouring);
        auto oracle = make_oracle(oracle_spec);
        UftrickResult res =
            uftrick_partition(g, [](Vertex) { return true; }, *oracle, steps, cfg);
        nlohmann::json j;
        j["meta"] = meta;
        j["labels"] = res.labels;
        j["concentration_colour"] = res.concentration_colour;
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& chk : res.witness_checks) {
            nlohmann::json cj;
            cj["colour"] = chk.colour;
            cj["F"] = chk.F;
            cj["found"] = chk.found;
            cj["pass"] = chk.pass;
            checks.push_back(cj);
        }
        j["witness_checks"] = checks;
        j["unverified"] = res.unverified;
        write_output(j.dump(2) + "\n", out_path);
        return res.unverified.empty() ? kExitOk : kExitUnverifiable;
    }
    if (construction == "zigzag") {
        HTypeGraph h = make_htype(htype, "constant:c=0");
        OmegaPathStream stream = zigzag_htype(h);
        PrefixCertificate cert =
            stream_certificate(h, stream, steps, cfg, "zigzag", "htype-" + htype, "none");
        Report rep = verify_certificate(h, cert);
        nlohmann::json j = to_json(cert);
        j["meta"] = meta;
        j["verification"] = to_json(rep);
        write_output(j.dump(2) + "\n", out_path);
        return report_exit(rep);
    }
    if (construction == "config") {
        HTypeGraph h = make_htype(htype, colouring);
        auto I = parse_colour_list(colour_list);
        auto found = find_configuration(h, I, k, cfg.horizon_or(steps), cfg);
        nlohmann::json j;
        j["meta"] = meta;
        j["meta"]["k"] = k;
        j["meta"]["colours"] = I;
        j["found"] = found.has_value();
        if (found) {
            j["a_sets"] = found->a_sets;
            j["y_points"] = found->y_points;
        }
        write_output(j.dump(2) + "\n", out_path);
        return kExitOk;
    }
    if (construction == "split") {
        HTypeGraph h = make_htype(htype, colouring);
        auto I = parse_colour_list(colour_list);
        auto oracle = make_oracle(oracle_spec);
        SplitResult res =
            ultrafilter_split(h, [](Vertex) { return true; }, I, *oracle, steps, cfg);
        nlohmann::json j;
        j["meta"] = meta;
        j["meta"]["colours"] = I;
        nlohmann::json classes = nlohmann::json::object();
        for (auto& [c, xs] : res.classes) classes[std::to_string(c)] = xs;
        j["classes"] = classes;
        j["unverified"] = res.unverified;
        write_output(j.dump(2) + "\n", out_path);
        return res.unverified.empty() ? kExitOk : kExitUnverifiable;
    }
    if (construction == "cover") {
        LazyColouredGraph g = build_lazy(colouring);
        OmegaPathStream stream =
            cover_from(g, [](Vertex) { return true; }, colour, start, steps, cfg);
        PrefixCertificate cert = stream_certificate(g, stream, steps, cfg, "cover",
                                                    g.name(), "none");
        Report rep = verify_certificate(g, cert);
        nlohmann::json j = to_json(cert);
        j["meta"] = meta;
        j["meta"]["colour"] = colour;
        j["meta"]["start"] = start;
        j["verification"] = to_json(rep);
        write_output(j.dump(2) + "\n", out_path);
        return report_exit(rep);
    }
    throw std::invalid_argument("unknown construction '" + construction + "'");
}

int run_gen(const std::string& colouring, int n, const std::string& out_path) {
    FiniteColouredGraph g = build_finite(colouring, n);
    std::ostringstream os;
    save_graph(g, os);
    write_output(os.str(), out_path);
    return kExitOk;
}

int run_colourings_list() {
    for (const auto& e : colouring_registry())
        std::cout << e.synopsis << (e.eventually_periodic ? "" : "   [density oracle]") << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"monochromatic path partition toolkit"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "exact minimum partition of a finite instance");
    std::string solve_input, solve_mode = "any", solve_out;
    int solve_cap = 12;
    solve->add_option("--input", solve_input, "graph file")->required();
    solve->add_option("--mode", solve_mode, "distinct|any");
    solve->add_option("--cap", solve_cap, "exact-solver vertex cap");
    solve->add_option("--out", solve_out, "output file (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "exhaustive sweep over all colourings of K_n");
    int sweep_n = 4, sweep_r = 2, sweep_jobs = 1;
    std::string sweep_mode = "any", sweep_format = "csv", sweep_out, sweep_state;
    bool sweep_canonical = false;
    std::uint64_t sweep_budget = 1ull << 26;
    sweep->add_option("--n", sweep_n, "vertex count")->required();
    sweep->add_option("--r", sweep_r, "colour count")->required();
    sweep->add_option("--mode", sweep_mode, "distinct|any");
    sweep->add_option("--jobs", sweep_jobs, "worker count")->envname("MONOPATH_JOBS");
    sweep->add_flag("--canonical", sweep_canonical, "canonical representatives only");
    sweep->add_option("--budget", sweep_budget, "max colourings to enumerate");
    sweep->add_option("--state", sweep_state, "checkpoint state file");
    sweep->add_option("--format", sweep_format, "csv|json");
    sweep->add_option("--out", sweep_out, "output file (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "verify a partition or certificate");
    std::string verify_graph, verify_partition_path, verify_colouring, verify_certificate_path;
    verify->add_option("--graph", verify_graph, "graph file (for --partition)");
    verify->add_option("--partition", verify_partition_path, "partition JSON");
    verify->add_option("--colouring", verify_colouring, "lazy colouring (for --certificate)");
    verify->add_option("--certificate", verify_certificate_path, "certificate JSON");

    // omega run
    auto* omega = app.add_subcommand("omega", "depth-bounded countable constructions");
    auto* omega_run = omega->add_subcommand("run", "run a construction");
    std::string om_construction, om_colouring = "constant:c=0", om_oracle = "congruence";
    std::string om_htype = "disjoint", om_colours, om_out;
    std::uint64_t om_steps = 100, om_horizon = 0, om_seed = 0, om_k = 3;
    int om_witness = 8;
    Colour om_colour = 0;
    Vertex om_start = 0;
    omega_run->add_option("--construction", om_construction, "uftrick|rado|zigzag|config|split|cover")
        ->required();
    omega_run->add_option("--colouring", om_colouring, "colouring spec NAME[:k=v,...]");
    omega_run->add_option("--oracle", om_oracle, "congruence[:r1-r2-...]|density");
    omega_run->add_option("--htype", om_htype, "disjoint|identified (H-type constructions)");
    omega_run->add_option("--steps", om_steps, "steps / depth");
    omega_run->add_option("--horizon", om_horizon, "search horizon (default 10*steps)");
    omega_run->add_option("--witness", om_witness, "witness count W");
    omega_run->add_option("--seed", om_seed, "sampling seed");
    omega_run->add_option("--colour", om_colour, "path colour (cover)");
    omega_run->add_option("--start", om_start, "first vertex (cover)");
    omega_run->add_option("--colours", om_colours, "colour set I, comma separated (config/split)");
    omega_run->add_option("--k", om_k, "configuration length (config)");
    omega_run->add_option("--out", om_out, "output file (default stdout)");

    // gen
    auto* gen = app.add_subcommand("gen", "materialize a builtin colouring as a graph file");
    std::string gen_colouring = "constant:c=0", gen_out;
    int gen_n = 6;
    gen->add_option("--colouring", gen_colouring, "colouring spec");
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // colourings
    auto* cols = app.add_subcommand("colourings", "builtin colouring registry");
    auto* cols_list = cols->add_subcommand("list", "print the registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*solve) return run_solve(solve_input, solve_mode, solve_cap, solve_out);
        if (*sweep)
            return run_sweep(sweep_n, sweep_r, sweep_mode, sweep_jobs, sweep_canonical,
                             sweep_budget, sweep_state, sweep_format, sweep_out);
        if (*verify)
            return run_verify(verify_graph, verify_partition_path, verify_colouring,
                              verify_certificate_path);
        if (*omega) {
            if (!*omega_run) throw std::invalid_argument("usage: omega run --construction ...");
            return run_omega(om_construction, om_colouring, om_oracle, om_htype, om_steps,
                             om_horizon, om_witness, om_seed, om_colour, om_start, om_colours,
                             om_k, om_out);
        }
        if (*gen) return run_gen(gen_colouring, gen_n, gen_out);
        if (*cols) {
            if (!*cols_list) throw std::invalid_argument("usage: colourings list");
            return run_colourings_list();
        }
    } catch (const monopath::OracleIncoherence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const monopath::UndecidedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitInvalid;
}
