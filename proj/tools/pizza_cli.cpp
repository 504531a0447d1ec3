#include "pizza/ch_io.hpp"
#include "pizza/etr.hpp"
#include "pizza/instance_io.hpp"
#include "pizza/measure.hpp"
#include "pizza/reductions.hpp"
#include "pizza/render.hpp"
#include "pizza/solver.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace pizza;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInput = 2, kBudget = 3 };

struct Args {
    std::string instance, path, lines, from, meta, output, report, solution;
    std::string eps = "1/1000";
    int turns = -1;
    std::string method = "multistart";
    std::uint64_t seed = 1;
    int seeds = 64;
    int grid_resolution = 16;
    std::string reduction = "overlapping";
    int delta = 0;
    int granularity = 0;
    bool approximate = false;
    int budget = 0;
};

PizzaInstance load_instance(const std::string& file) {
    if (file.empty()) throw InputError("--instance is required");
    auto inst = parse_instance(read_text_file(file));
    return normalize_instance(inst).first;
}

Q parse_eps(const std::string& s) {
    Q e = Q::parse(s);
    if (e < Q(0)) throw InputError("--eps must be non-negative");
    return e;
}

void emit(const std::string& file, const std::string& text) {
    if (file.empty() || file == "-") std::cout << text;
    else write_text_file(file, text);
}

void print_gaps(const VerifyReport& rep) {
    for (std::size_t i = 0; i < rep.gaps.size(); ++i)
        std::cout << "  color " << i << ": plus " << rep.plus[i].str() << "  minus " << rep.minus[i].str() << "  gap "
                  << rep.gaps[i].str() << "\n";
    std::cout << "max gap " << rep.max_gap.str() << " (" << rep.max_gap.to_double() << ")\n";
    for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
}

int cmd_validate(const Args& a) {
    if (!a.from.empty()) {
        auto ch = parse_ch(read_text_file(a.from));
        std::cout << "consensus-halving instance: " << ch.agents.size() << " agents, "
                  << points_of_interest(ch).size() << " points of interest\n";
        return kOk;
    }
    auto raw = parse_instance(read_text_file(a.instance.empty() ? throw InputError("--instance is required") : a.instance));
    auto [inst, tr] = normalize_instance(raw);
    auto ci = compile(inst);
    std::cout << "instance: " << ci.colors() << " colors, " << ci.atom_count() << " atoms\n";
    for (std::size_t i = 0; i < ci.totals.size(); ++i)
        std::cout << "  color " << ci.color_ids[i] << ": total mass " << ci.totals[i].str() << "\n";
    if (tr.scale != Q(1) || !tr.shift_x.is_zero() || !tr.shift_y.is_zero())
        std::cout << "normalization: shift (" << tr.shift_x.str() << ", " << tr.shift_y.str() << "), scale " << tr.scale.str()
                  << "\n";
    if (!a.output.empty()) write_text_file(a.output, serialize_instance(inst));
    return kOk;
}

int cmd_gen(const Args& a) {
    if (a.from.empty()) throw InputError("--from is required");
    auto ch = parse_ch(read_text_file(a.from));
    ReductionOptions opt;
    opt.exact = !a.approximate;
    opt.granularity = a.granularity;
    Q eps = parse_eps(a.eps);
    std::pair<PizzaInstance, ReductionMeta> out;
    switch (parse_reduction_kind(a.reduction)) {
        case ReductionKind::Overlapping: out = reduce_overlapping(ch); break;
        case ReductionKind::Checkerboard: out = reduce_checkerboard(ch, eps, opt); break;
        case ReductionKind::Straight: out = reduce_straight(ch, eps, a.delta, opt); break;
        case ReductionKind::Exact: out = reduce_exact(ch); break;
    }
    emit(a.output, serialize_instance(out.first));
    if (!a.meta.empty()) write_text_file(a.meta, serialize_meta(out.second));
    std::cerr << kind_name(out.second.kind) << ": " << out.first.masses.size() << " colors, "
              << out.second.cells.size() + out.second.tiles.size() << " cells\n";
    return kOk;
}

int cmd_solve(const Args& a) {
    auto inst = load_instance(a.instance);
    auto ci = compile(inst);
    SolverConfig cfg;
    cfg.epsilon = parse_eps(a.eps).to_double();
    cfg.turns = a.turns;
    cfg.rng_seed = a.seed;
    cfg.seeds = a.seeds;
    cfg.grid_resolution = a.grid_resolution;
    if (a.method == "grid") cfg.method = SolveMethod::Grid;
    else if (a.method != "multistart") throw InputError("--method must be multistart or grid");
    auto rep = solve(ci, cfg);
    emit(a.output, serialize_path(rep.point));
    if (!a.report.empty()) write_text_file(a.report, serialize_report(rep));
    std::cerr << "residual " << rep.residual.to_double() << " turns " << turn_count(rep.path) << " evaluations "
              << rep.evaluations << " time " << rep.wall_time << "s " << (rep.verified_exact ? "verified" : "NOT verified")
              << "\n";
    return rep.verified_exact ? kOk : kFailed;
}

int cmd_verify(const Args& a) {
    Q eps = parse_eps(a.eps);
    if (!a.from.empty()) {
        std::string file = a.solution.empty() ? a.path : a.solution;
        if (file.empty()) throw InputError("--solution is required with --from");
        auto ch = parse_ch(read_text_file(a.from));
        auto rep = verify_ch(ch, parse_ch_solution(read_text_file(file)), eps);
        print_gaps(rep);
        return rep.pass ? kOk : kFailed;
    }
    if (a.path.empty()) throw InputError("--path is required");
    auto inst = load_instance(a.instance);
    auto pf = parse_path(read_text_file(a.path));
    ReductionMeta meta;
    bool has_meta = !a.meta.empty();
    if (has_meta) meta = parse_meta(read_text_file(a.meta));
    int budget = a.turns >= 0 ? a.turns : static_cast<int>(inst.masses.size()) - 1;
    auto rep = verify_scpath(inst, pf.solution, eps, budget, has_meta ? &meta : nullptr);
    print_gaps(rep);
    return rep.pass ? kOk : kFailed;
}

int cmd_verify_lines(const Args& a) {
    if (a.lines.empty()) throw InputError("--lines is required");
    auto inst = load_instance(a.instance);
    auto lines = parse_lines(read_text_file(a.lines));
    auto rep = verify_straight(inst, lines, parse_eps(a.eps), static_cast<std::size_t>(std::max(0, a.budget)));
    print_gaps(rep);
    return rep.pass ? kOk : kFailed;
}

int cmd_map_back(const Args& a) {
    if (a.meta.empty()) throw InputError("--meta is required");
    auto meta = parse_meta(read_text_file(a.meta));
    CHSolution sol;
    if (!a.lines.empty()) {
        sol = lines_to_ch_cuts(meta, parse_lines(read_text_file(a.lines)));
    } else if (!a.path.empty()) {
        sol = path_to_ch_cuts(meta, parse_path(read_text_file(a.path)).solution);
    } else {
        throw InputError("--path or --lines is required");
    }
    emit(a.output, serialize_ch_solution(sol));
    if (a.from.empty()) return kOk;
    auto rep = verify_ch(parse_ch(read_text_file(a.from)), sol, parse_eps(a.eps));
    print_gaps(rep);
    return rep.pass ? kOk : kFailed;
}

int cmd_eval(const Args& a) {
    auto inst = load_instance(a.instance);
    auto ci = compile(inst);
    if (a.path.empty()) throw InputError("--path is required");
    auto pf = parse_path(read_text_file(a.path));
    if (!pf.has_point) throw InputError("eval needs a path file with sphere coordinates");
    auto f = bu_eval(ci, pf.point);
    auto g = bu_eval(ci, antipode(pf.point));
    Q r = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::cout << "color " << ci.color_ids[i] << ": f(P) " << f[i].str() << "  f(-P) " << g[i].str() << "\n";
        r = max(r, abs(f[i] - g[i]));
    }
    std::cout << "antipodal residual " << r.str() << " (" << r.to_double() << ")\n";
    return kOk;
}

int cmd_export_etr(const Args& a) {
    auto inst = load_instance(a.instance);
    auto ci = compile(inst);
    int k = a.turns >= 0 ? a.turns : static_cast<int>(ci.colors()) - 1;
    auto f = export_etr(ci, k);
    emit(a.output, f.text);
    std::cerr << "variables " << f.variables.size() << " (max nodes " << f.max_nodes << ", min nodes " << f.min_nodes << ")\n";
    return kOk;
}

int cmd_render(const Args& a) {
    auto inst = load_instance(a.instance);
    RenderOptions opt;
    FeasibleSolution sol;
    StraightCutSet lines;
    if (!a.path.empty()) {
        sol = parse_path(read_text_file(a.path)).solution;
        opt.path = &sol;
    }
    if (!a.lines.empty()) {
        lines = parse_lines(read_text_file(a.lines));
        opt.lines = &lines;
    }
    emit(a.output, render_svg(inst, opt));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact ham-sandwich-style pizza sharing with square-cut paths"};
    app.require_subcommand(1);
    Args a;

    auto add = [&](const std::string& name, const std::string& desc) { return app.add_subcommand(name, desc); };
    auto* validate = add("validate", "Check an instance (or a consensus-halving instance with --from)");
    auto* gen = add("gen", "Reduce a consensus-halving instance to a pizza instance");
    auto* solve_cmd = add("solve", "Find a square-cut path bisecting every color");
    auto* verify = add("verify", "Verify a path (or a consensus-halving solution with --from)");
    auto* verify_lines = add("verify-lines", "Verify a straight-line partition");
    auto* map_back = add("map-back", "Map a path or line set back to consensus-halving cuts");
    auto* eval = add("eval", "Evaluate f(P) and f(-P) at a sphere point");
    auto* export_etr_cmd = add("export-etr", "Write the existential formula for a k-turn solution");
    auto* render = add("render", "Draw an instance with an optional overlay as SVG");

    for (auto* c : {validate, gen, solve_cmd, verify, verify_lines, map_back, eval, export_etr_cmd, render}) {
        c->add_option("--instance", a.instance, "Instance JSON");
        c->add_option("-o,--output", a.output, "Output file (stdout when omitted)");
    }
    for (auto* c : {validate, gen, verify, map_back}) c->add_option("--from", a.from, "Consensus-halving instance JSON");
    for (auto* c : {solve_cmd, verify, verify_lines, map_back, gen}) c->add_option("--eps", a.eps, "Tolerance (rational or decimal)");
    for (auto* c : {verify, map_back, eval, render}) c->add_option("--path", a.path, "Path file");
    for (auto* c : {verify_lines, map_back, render}) c->add_option("--lines", a.lines, "Line set JSON");
    for (auto* c : {gen, verify, map_back}) c->add_option("--meta", a.meta, "Reduction meta JSON");
    for (auto* c : {solve_cmd, verify, export_etr_cmd}) c->add_option("--turns", a.turns, "Turn budget k (default n-1)");

    solve_cmd->add_option("--method", a.method, "multistart or grid")->check(CLI::IsMember({"multistart", "grid"}));
    solve_cmd->add_option("--seed", a.seed, "Random seed");
    solve_cmd->add_option("--seeds", a.seeds, "Number of multistart seeds");
    solve_cmd->add_option("--grid-resolution", a.grid_resolution, "Grid points per unit of the radius");
    solve_cmd->add_option("--report", a.report, "Write the solve report JSON here");
    gen->add_option("--reduction", a.reduction, "overlapping, checkerboard, straight or exact")
        ->check(CLI::IsMember({"overlapping", "checkerboard", "straight", "exact"}));
    gen->add_option("--delta", a.delta, "Extra halvings of the straight-reduction step d");
    gen->add_option("--granularity", a.granularity, "Checkerboard squarelet granularity t_j");
    gen->add_flag("--approximate", a.approximate, "Round irrational side lengths to dyadic rationals");
    verify->add_option("--solution", a.solution, "Consensus-halving solution JSON");
    verify_lines->add_option("--budget", a.budget, "Maximum number of lines (0: unlimited)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*validate) return cmd_validate(a);
        if (*gen) return cmd_gen(a);
        if (*solve_cmd) return cmd_solve(a);
        if (*verify) return cmd_verify(a);
        if (*verify_lines) return cmd_verify_lines(a);
        if (*map_back) return cmd_map_back(a);
        if (*eval) return cmd_eval(a);
        if (*export_etr_cmd) return cmd_export_etr(a);
        if (*render) return cmd_render(a);
    } catch (const SolverBudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
