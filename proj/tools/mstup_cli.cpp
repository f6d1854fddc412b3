// Command-line front end: instance ingestion, solver dispatch, exact-rational
// result serialization, curve emission and gadget generation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mstup/approx.hpp"
#include "mstup/decompose.hpp"
#include "mstup/flows.hpp"
#include "mstup/io.hpp"
#include "mstup/oracle.hpp"
#include "mstup/raise.hpp"
#include "mstup/uniform.hpp"

namespace {

using namespace mstup;

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string wstar;
    std::string budget;
    long long target = 0;
    std::string eps;
    int clique_size = 2;
    std::string format = "json";
    bool check = false;
};

WeightedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    return parse_instance(in);
}

FlowNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    return parse_flow_instance(in);
}

Rat rational_flag(const std::string& text, const std::string& name) {
    try {
        Rat r = parse_rat(text);
        if (r < Rat(0)) throw std::invalid_argument("negative");
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("flag " + name + " expects a non-negative rational, got '" + text + "'");
    }
}

long long integer_flag(const std::string& text, const std::string& name) {
    Rat r = rational_flag(text, name);
    if (!is_integer(r)) throw ParseError("flag " + name + " expects an integer, got '" + text + "'");
    return rat_to_long(r);
}

void emit(const ResultRecord& rec) { std::cout << to_json(rec).dump(2) << "\n"; }

/// Runs fn and reports an oracle-guard skip instead of failing --check on
/// instances too large for the brute-force comparison.
template <typename Fn>
void checked(Fn&& fn) {
    try {
        fn();
    } catch (const OracleGuardError& e) {
        std::cerr << "note: check skipped, " << e.what() << "\n";
    }
}

int run_curve(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    std::optional<Rat> limit;
    if (!opt.budget.empty()) limit = rational_flag(opt.budget, "--budget");
    BreakpointCurve cv = curve(g, limit);
    if (opt.check) {
        for (std::size_t i = 0; i + 1 < cv.points.size(); ++i)
            if (cv.points[i].slope_after < cv.points[i + 1].slope_after)
                throw CheckFailure("curve slopes increase between breakpoints");
        if (limit) checked([&] {
            Rat oracle = oracle_continuous_increase(g, *limit);
            if (cv.value_at(*limit) - cv.base_mst() != oracle)
                throw CheckFailure("curve value differs from the oracle greedy increase");
        });
    }
    if (opt.format == "csv-curve") {
        std::cout << curve_csv(cv.points);
        return 0;
    }
    ResultRecord rec;
    rec.solver = "curve";
    rec.parameters["input"] = opt.input;
    if (limit) rec.parameters["budget"] = format_rat(*limit);
    rec.parameters["end"] = cv.end == CurveEnd::unbounded ? "unbounded"
                            : cv.end == CurveEnd::capped  ? "capped"
                                                          : "truncated";
    rec.increase = cv.end_mst - cv.base_mst();
    rec.cost = cv.end_budget;
    rec.curve = cv.points;
    emit(rec);
    return 0;
}

int run_raise(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    Rat budget = rational_flag(opt.budget, "--budget");
    Trace tr = raise_mst(g, budget);
    if (opt.check) {
        checked([&] {
            if (oracle_continuous_increase(g, budget) != tr.increase)
                throw CheckFailure("raise increase differs from the oracle greedy");
        });
    }
    ResultRecord rec = make_record("raise", g, tr.final_perturbation);
    rec.parameters["input"] = opt.input;
    rec.parameters["budget"] = format_rat(budget);
    rec.trace_summary = summarize_trace(tr);
    emit(rec);
    return 0;
}

int run_budgeted(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    long long budget = integer_flag(opt.budget, "--budget");
    DiscreteSolution sol = budgeted_approx(g, budget);
    if (opt.check) {
        checked([&] {
            Perturbation best = brute_budgeted(g, budget);
            Rat opt_inc = mst_weight(g, best) - mst_weight(g, Perturbation::zero(g));
            if (Rat(2 * sol.achieved_increase) < opt_inc - Rat(2))
                throw CheckFailure("budgeted increase fell below half the optimum minus one");
            if (sol.cost > budget) throw CheckFailure("budgeted solution exceeds the budget");
        });
    }
    ResultRecord rec = make_record("budgeted", g, sol.perturbation);
    rec.parameters["input"] = opt.input;
    rec.parameters["budget"] = std::to_string(budget);
    if (sol.continuous_bound) rec.parameters["continuous_bound"] = format_rat(*sol.continuous_bound);
    emit(rec);
    return 0;
}

int run_targeted(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    DiscreteSolution sol = targeted_approx(g, opt.target);
    if (opt.check) {
        checked([&] {
            Perturbation best = brute_targeted(g, opt.target);
            Rat opt_cost = best.total_cost(g);
            Rat bound = Rat(2) * (Rat(1) - Rat(1, g.vertex_count())) * opt_cost;
            if (Rat(sol.cost) > bound) throw CheckFailure("targeted cost exceeds twice the optimum");
            if (sol.achieved_increase < opt.target) throw CheckFailure("targeted increase misses the target");
        });
    }
    ResultRecord rec = make_record("targeted", g, sol.perturbation);
    rec.parameters["input"] = opt.input;
    rec.parameters["target"] = std::to_string(opt.target);
    if (sol.continuous_bound) rec.parameters["fractional_budget"] = format_rat(*sol.continuous_bound);
    emit(rec);
    return 0;
}

int run_uniform_exact(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    DiscreteSolution sol = uniform_targeted_exact(g, opt.target);
    if (opt.check) {
        checked([&] {
            Perturbation best = brute_targeted(g, opt.target);
            if (Rat(sol.cost) != best.total_cost(g))
                throw CheckFailure("uniform targeted cost differs from the brute-force optimum");
        });
    }
    ResultRecord rec = make_record("uniform-exact", g, sol.perturbation);
    rec.parameters["input"] = opt.input;
    rec.parameters["target"] = std::to_string(opt.target);
    emit(rec);
    return 0;
}

int run_uniform_budgeted(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    long long budget = integer_flag(opt.budget, "--budget");
    std::optional<Rat> eps;
    if (!opt.eps.empty()) eps = rational_flag(opt.eps, "--eps");
    DiscreteSolution sol = eps ? uniform_halfeps_approx(g, budget, *eps) : uniform_budgeted_exact(g, budget);
    if (opt.check) {
        checked([&] {
            Perturbation best = brute_budgeted(g, budget);
            Rat opt_inc = mst_weight(g, best) - mst_weight(g, Perturbation::zero(g));
            if (!eps && Rat(sol.achieved_increase) != opt_inc)
                throw CheckFailure("uniform budgeted increase differs from the brute-force optimum");
            if (eps && Rat(sol.achieved_increase) < (Rat(1, 2) - *eps) * opt_inc)
                throw CheckFailure("hybrid increase fell below its (1/2 - eps) bound");
        });
    }
    ResultRecord rec = make_record(eps ? "uniform-halfeps" : "uniform-budgeted", g, sol.perturbation);
    rec.parameters["input"] = opt.input;
    rec.parameters["budget"] = std::to_string(budget);
    if (eps) rec.parameters["eps"] = format_rat(*eps);
    emit(rec);
    return 0;
}

int run_heuristic_mincut(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    long long budget = integer_flag(opt.budget, "--budget");
    DiscreteSolution sol = mincut_lift_heuristic(g, budget);
    if (opt.check) {
        checked([&] {
            Perturbation best = brute_budgeted(g, budget);
            Rat opt_inc = mst_weight(g, best) - mst_weight(g, Perturbation::zero(g));
            if (Rat(sol.achieved_increase) > opt_inc)
                throw CheckFailure("heuristic reports more than the optimum increase");
        });
    }
    ResultRecord rec = make_record("heuristic-mincut", g, sol.perturbation);
    rec.parameters["input"] = opt.input;
    rec.parameters["budget"] = std::to_string(budget);
    emit(rec);
    return 0;
}

ResultRecord network_record(const std::string& solver, const FlowNetwork& net,
                            const UpgradeResult& up, long long base_value) {
    ResultRecord rec;
    rec.solver = solver;
    rec.increase = Rat(up.value - base_value);
    Rat cost(0);
    for (std::size_t i = 0; i < net.arcs.size(); ++i) cost += Rat(up.amounts[i] * net.arcs[i].cost);
    rec.cost = cost;
    for (std::size_t i = 0; i < net.arcs.size(); ++i)
        if (up.amounts[i] != 0) rec.perturbation.push_back({static_cast<int>(i), Rat(up.amounts[i])});
    rec.parameters["value"] = std::to_string(up.value);
    return rec;
}

int run_flow_upgrade(const Options& opt) {
    FlowNetwork net = load_network(opt.input);
    long long budget = integer_flag(opt.budget, "--budget");
    UpgradeResult up = mmf_upgrade(net, budget);
    if (opt.check) {
        checked([&] {
            if (up.value != brute_mmf_value(net, budget))
                throw CheckFailure("flow upgrade value differs from exhaustive enumeration");
        });
    }
    ResultRecord rec = network_record("flow-upgrade", net, up, max_flow(net).first);
    rec.parameters["input"] = opt.input;
    rec.parameters["budget"] = std::to_string(budget);
    emit(rec);
    return 0;
}

int run_path_upgrade(const Options& opt) {
    FlowNetwork net = load_network(opt.input);
    long long budget = integer_flag(opt.budget, "--budget");
    UpgradeResult up = msp_upgrade(net, budget);
    if (opt.check) {
        checked([&] {
            if (up.value != brute_msp_value(net, budget))
                throw CheckFailure("path upgrade value differs from exhaustive enumeration");
        });
    }
    const std::vector<long long> zeros(net.arcs.size(), 0);
    ResultRecord rec =
        network_record("path-upgrade", net, up, detail::shortest_path_length(net, zeros));
    rec.parameters["input"] = opt.input;
    rec.parameters["budget"] = std::to_string(budget);
    emit(rec);
    return 0;
}

int run_oracle_budgeted(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    long long budget = integer_flag(opt.budget, "--budget");
    Perturbation best = brute_budgeted(g, budget);
    if (opt.check) {
        StructureCheckReport report = optimality_structure_check(g, best);
        if (!report.pass) throw CheckFailure("optimum violates the cycle structure: " + report.violations.front());
    }
    ResultRecord rec = make_record("oracle-budgeted", g, best);
    rec.parameters["input"] = opt.input;
    rec.parameters["budget"] = std::to_string(budget);
    emit(rec);
    return 0;
}

int run_oracle_targeted(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    Perturbation best = brute_targeted(g, opt.target);
    if (opt.check) {
        StructureCheckReport report = optimality_structure_check(g, best);
        if (!report.pass) throw CheckFailure("optimum violates the cycle structure: " + report.violations.front());
    }
    ResultRecord rec = make_record("oracle-targeted", g, best);
    rec.parameters["input"] = opt.input;
    rec.parameters["target"] = std::to_string(opt.target);
    emit(rec);
    return 0;
}

int run_verify_decomposition(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    Rat budget = rational_flag(opt.budget, "--budget");
    std::ifstream win(opt.wstar);
    if (!win) throw ParseError("cannot open w* file '" + opt.wstar + "'");
    std::vector<Rat> w_star = parse_weight_vector(win, g);
    Trace tr = raise_mst(g, budget);
    nlohmann::json j;
    try {
        DecompositionTrace dec = decompose_and_verify(g, tr, w_star);
        j["ok"] = true;
        for (const Rat& b : dec.breakpoints) j["breakpoints"].push_back(format_rat(b));
        for (const Rat& b : dec.beta) j["beta"].push_back(format_rat(b));
        for (const Rat& d : dec.delta) j["delta"].push_back(format_rat(d));
        j["segments"] = nlohmann::json::array();
        for (const DecompSegment& s : dec.segments)
            j["segments"].push_back({{"from", format_rat(s.from_budget)},
                                     {"to", format_rat(s.to_budget)},
                                     {"set", s.lifted_set},
                                     {"amount", format_rat(s.amount)},
                                     {"phase", s.second_phase ? 2 : 1}});
    } catch (const DecompositionError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_gen_kcut(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    std::cout << write_instance(gen_kcut_gadget(g, opt.clique_size));
    return 0;
}

int run_gen_mmstu(const Options& opt) {
    WeightedGraph g = load_graph(opt.input);
    std::cout << write_instance(gen_mmstu_instance(g));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Budgeted and targeted MST weight raising: continuous greedy, discrete rounding,\n"
                 "uniform-weight exact solvers, flow/path upgrades, and brute-force oracles."};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_input = true) {
        auto* in = sub->add_option("--input", opt.input, "instance file");
        if (needs_input) in->required();
        sub->add_flag("--check", opt.check, "cross-check against the matching oracle (guard sizes permitting)");
    };

    auto* c_curve = app.add_subcommand("curve", "emit the budget -> MST weight breakpoint curve");
    add_common(c_curve);
    c_curve->add_option("--budget", opt.budget, "stop emitting past this budget (rational)");
    c_curve->add_option("--format", opt.format, "json or csv-curve")->check(CLI::IsMember({"json", "csv-curve"}));

    auto* c_raise = app.add_subcommand("raise", "continuous greedy raise at a budget");
    add_common(c_raise);
    c_raise->add_option("--budget", opt.budget, "budget (rational)")->required();

    auto* c_budgeted = app.add_subcommand("budgeted", "discrete budgeted raise (half-optimum minus one)");
    add_common(c_budgeted);
    c_budgeted->add_option("--budget", opt.budget, "budget (integer)")->required();

    auto* c_targeted = app.add_subcommand("targeted", "discrete targeted raise (factor-two cost)");
    add_common(c_targeted);
    c_targeted->add_option("--target", opt.target, "required MST increase")->required();

    auto* c_uexact = app.add_subcommand("uniform-exact", "exact targeted solver for uniform weights");
    add_common(c_uexact);
    c_uexact->add_option("--target", opt.target, "required MST increase")->required();

    auto* c_ubudget = app.add_subcommand("uniform-budgeted", "exact budgeted solver for uniform weights");
    add_common(c_ubudget);
    c_ubudget->add_option("--budget", opt.budget, "budget (integer)")->required();
    c_ubudget->add_option("--eps", opt.eps, "run the (1/2 - eps) hybrid instead of the exact solver");

    auto* c_mincut = app.add_subcommand("heuristic-mincut", "lift one global min cut as far as the budget allows");
    add_common(c_mincut);
    c_mincut->add_option("--budget", opt.budget, "budget (integer)")->required();

    auto* c_flow = app.add_subcommand("flow-upgrade", "budgeted max-flow raise on a directed network");
    add_common(c_flow);
    c_flow->add_option("--budget", opt.budget, "budget (integer)")->required();

    auto* c_path = app.add_subcommand("path-upgrade", "budgeted shortest-path raise on a directed network");
    add_common(c_path);
    c_path->add_option("--budget", opt.budget, "budget (integer)")->required();

    auto* c_ob = app.add_subcommand("oracle-budgeted", "exhaustive budgeted optimum (small instances)");
    add_common(c_ob);
    c_ob->add_option("--budget", opt.budget, "budget (integer)")->required();

    auto* c_ot = app.add_subcommand("oracle-targeted", "exhaustive targeted optimum (small instances)");
    add_common(c_ot);
    c_ot->add_option("--target", opt.target, "required MST increase")->required();

    auto* c_dec = app.add_subcommand("verify-decomposition",
                                     "decompose a final weight vector against the greedy trace");
    add_common(c_dec);
    c_dec->add_option("--budget", opt.budget, "budget the weights spend (rational)")->required();
    c_dec->add_option("--wstar", opt.wstar, "file of 'edge_id final_weight' lines")->required();

    auto* c_gadget = app.add_subcommand("gen-kcut-gadget", "attach cliques to every edge (emits an instance)");
    add_common(c_gadget);
    c_gadget->add_option("--clique-size", opt.clique_size, "vertices per attached clique")->required();

    auto* c_mmstu = app.add_subcommand("gen-mmstu", "unit costs, zero weights, caps one (emits an instance)");
    add_common(c_mmstu);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (c_curve->parsed()) return run_curve(opt);
        if (c_raise->parsed()) return run_raise(opt);
        if (c_budgeted->parsed()) return run_budgeted(opt);
        if (c_targeted->parsed()) return run_targeted(opt);
        if (c_uexact->parsed()) return run_uniform_exact(opt);
        if (c_ubudget->parsed()) return run_uniform_budgeted(opt);
        if (c_mincut->parsed()) return run_heuristic_mincut(opt);
        if (c_flow->parsed()) return run_flow_upgrade(opt);
        if (c_path->parsed()) return run_path_upgrade(opt);
        if (c_ob->parsed()) return run_oracle_budgeted(opt);
        if (c_ot->parsed()) return run_oracle_targeted(opt);
        if (c_dec->parsed()) return run_verify_decomposition(opt);
        if (c_gadget->parsed()) return run_gen_kcut(opt);
        if (c_mmstu->parsed()) return run_gen_mmstu(opt);
    } catch (const CheckFailure& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 2;
    } catch (const UnreachableTargetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
