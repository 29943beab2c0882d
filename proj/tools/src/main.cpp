// Command-line front end: trajectory simulation, curative and palliative
// planning, the dosing-hypothesis diagnostic and reference-table reproduction.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metrodose/closed_form.hpp"
#include "metrodose/config.hpp"
#include "metrodose/nlp.hpp"
#include "metrodose/objective.hpp"
#include "metrodose/pkpd.hpp"
#include "metrodose/scheduler.hpp"
#include "metrodose/tables.hpp"

namespace {

using namespace metrodose;

std::string fmt(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return buf;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    }
    return out;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << text;
}

struct SimulateArgs {
    std::string config_path, pattern, doses_list, times_list, out_path;
    double dose = 0.0;
    int n = 0;
    bool ut = false;
    double step = 0.25;
};

int cmd_simulate(const SimulateArgs& args) {
    RunConfig cfg = load_config_file(args.config_path);
    if (!args.pattern.empty()) cfg.pattern = args.pattern;

    std::vector<double> times, doses;
    if (args.ut) {
        // Usual treatment: 30 doses 5/28d, 150 mg/m^2 in the first cycle,
        // 200 mg/m^2 afterwards.
        times = expand_pattern(Pattern::parse("5/28d"), 30, cfg.t1);
        doses.assign(30, 200.0);
        for (int i = 0; i < 5; ++i) doses[i] = 150.0;
    } else if (!args.doses_list.empty()) {
        doses = parse_list(args.doses_list);
        times = args.times_list.empty()
                    ? expand_pattern(Pattern::parse(cfg.pattern),
                                     static_cast<int>(doses.size()), cfg.t1)
                    : parse_list(args.times_list);
    } else if (args.n > 0 && args.dose > 0.0) {
        times = expand_pattern(Pattern::parse(cfg.pattern), args.n, cfg.t1);
        doses.assign(args.n, args.dose);
    } else {
        std::cerr << "simulate: provide --ut, --doses, or --dose with --n\n";
        return 1;
    }

    if (!(args.step > 0.0)) {
        std::cerr << "simulate: --step must be > 0\n";
        return 1;
    }
    DoseSchedule sched(times, doses, cfg.horizon_T);

    // Sample the closed-form solution on a regular grid plus the dose times,
    // so every concentration jump appears in the output.
    std::vector<double> grid;
    for (double t = 0.0; t < cfg.horizon_T; t += args.step) grid.push_back(t);
    grid.push_back(cfg.horizon_T);
    grid.insert(grid.end(), times.begin(), times.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               grid.end());

    std::ostringstream csv;
    csv << "day,tumor_ratio,concentration\n";
    for (double t : grid)
        csv << fmt(t, 6) << ',' << fmt(tumor_ratio(cfg.tumor, cfg.pk, sched, t), 10) << ','
            << fmt(concentration(cfg.pk, sched, t), 10) << '\n';
    const double final_ratio = tumor_ratio(cfg.tumor, cfg.pk, sched, cfg.horizon_T);
    csv << "# L(T)/theta = " << fmt(final_ratio, 5)
        << ", L(T)/L0 = " << fmt(final_ratio / cfg.tumor.l0_rel, 5) << '\n';
    write_output(csv.str(), args.out_path);
    return 0;
}

struct PlanArgs {
    std::string config_path, pattern, out_path;
    bool exact = false;
    bool optimal_only = false;
};

int cmd_curative(const PlanArgs& args) {
    RunConfig cfg = load_config_file(args.config_path);
    if (!args.pattern.empty()) cfg.pattern = args.pattern;
    if (!cfg.bounds.cumulative_D) {
        std::cerr << "curative: config key 'D' (cumulative dose) is required\n";
        return 1;
    }

    const Pattern pat = Pattern::parse(cfg.pattern);
    const int cap = capacity(pat, cfg.horizon_T, cfg.t1);
    IntRange range = feasible_n_range_curative(cfg.bounds);
    if (range.empty()) {
        std::cerr << "curative: infeasible, no integer N in [D/d_max, D/d_min]\n";
        return 1;
    }
    if (cap < range.lo) {
        std::cerr << "curative: infeasible, schedule capacity " << cap
                  << " is below the minimum dose count " << range.lo << '\n';
        return 1;
    }
    range.hi = std::min(range.hi, cap);
    const CurativePlan best = curative_optimal(cfg.bounds, cfg.pk.k2_tilde(), cap);

    bool all_converged = true;
    std::ostringstream out;
    out << "N,dose,ratio_hat";
    if (args.exact) out << ",dbar_min,dbar_max,ratio";
    out << ",optimal\n";
    for (int n = args.optimal_only ? best.n : range.lo; n <= range.hi; ++n) {
        const CurativePlan plan = curative_fixed_n(cfg.bounds, n, cfg.pk.k2_tilde());
        const std::vector<double> times = expand_pattern(pat, n, cfg.t1);
        DoseSchedule sched(times, std::vector<double>(n, plan.dose), cfg.horizon_T);
        const double ratio_hat =
            tumor_ratio(cfg.tumor, cfg.pk, sched, cfg.horizon_T) / cfg.tumor.l0_rel;
        out << n << ',' << fmt(plan.dose, 2) << ',' << fmt(ratio_hat, 2);
        if (args.exact) {
            const SolveReport sol =
                solve_curative_exact(cfg.pk, times, cfg.horizon_T, cfg.bounds, n, cfg.solver);
            if (!sol.converged) {
                all_converged = false;
                out << ",,,unconverged";
            } else {
                DoseSchedule es(times, sol.doses, cfg.horizon_T);
                out << ',' << fmt(sol.min_dose, 2) << ',' << fmt(sol.max_dose, 2) << ','
                    << fmt(tumor_ratio(cfg.tumor, cfg.pk, es, cfg.horizon_T) / cfg.tumor.l0_rel,
                           2);
            }
        }
        out << ',' << (n == best.n ? "*" : "") << '\n';
    }
    write_output(out.str(), args.out_path);
    return all_converged ? 0 : 2;
}

int cmd_palliative(const PlanArgs& args) {
    RunConfig cfg = load_config_file(args.config_path);
    if (!args.pattern.empty()) cfg.pattern = args.pattern;
    if (!cfg.l_star_rel) {
        std::cerr << "palliative: config key 'l_star_rel' is required\n";
        return 1;
    }

    const Pattern pat = Pattern::parse(cfg.pattern);
    const int cap = capacity(pat, cfg.horizon_T, cfg.t1);
    const PalliativeTarget target =
        make_palliative_target(cfg.tumor, cfg.pk, cfg.horizon_T, *cfg.l_star_rel);

    std::ostringstream out;
    bool all_converged = true;
    if (target.t_r_tilde <= 0.0) {
        const PalliativePlan plan =
            palliative_optimal(target.t_r_tilde, cfg.pk.k2_tilde(), cfg.bounds, cap);
        out << "N,dose,total,optimal\n";
        out << plan.n << ',' << fmt(plan.dose, 2) << ',' << fmt(plan.total, 2) << ",*\n";
        out << "# threshold at or above the untreated endpoint; single minimal dose\n";
        write_output(out.str(), args.out_path);
        return 0;
    }

    IntRange range = palliative_n_bounds(target.t_r_tilde, cfg.pk.k2_tilde(), cfg.bounds);
    if (cap < range.lo) {
        std::cerr << "palliative: infeasible, schedule capacity " << cap
                  << " is below the minimum dose count " << range.lo << '\n';
        return 1;
    }
    const PalliativePlan best =
        palliative_optimal(target.t_r_tilde, cfg.pk.k2_tilde(), cfg.bounds, cap);

    out << "N,dose,total,ratio,slack";
    if (args.exact) out << ",dbar_min,dbar_max,total_exact,ratio_exact";
    out << ",case,optimal\n";
    const int hi = std::min(range.hi, cap);
    for (int n = range.lo; n <= hi; ++n) {
        const bool last = n == range.hi;
        const double dose = last ? cfg.bounds.d_min
                                 : palliative_fixed_n(target.t_r_tilde, cfg.pk.k2_tilde(), n,
                                                      cfg.bounds)
                                       .dose;
        const std::vector<double> times = expand_pattern(pat, n, cfg.t1);
        DoseSchedule sched(times, std::vector<double>(n, dose), cfg.horizon_T);
        const PalliativeFeasibility feas = palliative_feasible(cfg.pk, sched, target);
        out << n << ',' << fmt(dose, 2) << ',' << fmt(n * dose, 2) << ','
            << fmt(tumor_ratio(cfg.tumor, cfg.pk, sched, cfg.horizon_T), 5) << ','
            << fmt(feas.slack, 6);
        if (args.exact) {
            const SolveReport sol = solve_palliative_exact(
                cfg.pk, times, cfg.horizon_T, cfg.bounds, target.t_r_tilde, n, cfg.solver);
            if (!sol.converged) {
                all_converged = false;
                out << ",,,,unconverged";
            } else {
                DoseSchedule es(times, sol.doses, cfg.horizon_T);
                out << ',' << fmt(sol.min_dose, 5) << ',' << fmt(sol.max_dose, 5) << ','
                    << fmt(sol.objective, 2) << ','
                    << fmt(tumor_ratio(cfg.tumor, cfg.pk, es, cfg.horizon_T), 5);
            }
        }
        if (n == best.n)
            out << ',' << (best.case_tag == PalliativeCase::b ? 'b' : 'a') << ",*";
        else
            out << ",,";
        out << '\n';
    }
    write_output(out.str(), args.out_path);
    return all_converged ? 0 : 2;
}

int cmd_check_mh(const std::string& config_path, const std::string& pattern_override) {
    RunConfig cfg = load_config_file(config_path);
    if (!pattern_override.empty()) cfg.pattern = pattern_override;
    const Pattern pat = Pattern::parse(cfg.pattern);
    const double s = pat.min_gap();
    const double lhs = cfg.bounds.d_max * std::exp(-cfg.pk.lambda * s);
    const double k2t = cfg.pk.k2_tilde();
    const double ratio = lhs / k2t;
    std::cout << "d_max * exp(-lambda*s) = " << fmt(lhs, 6) << " (s = " << fmt(s, 2) << ")\n";
    std::cout << "k2_tilde = " << fmt(k2t, 6) << "\n";
    std::cout << "ratio = " << ratio << "\n";
    if (ratio > kHypothesisRatioWarn) {
        std::cout << "WARN: separability hypothesis is doubtful (ratio > "
                  << kHypothesisRatioWarn << "); time-free dose splitting may be inaccurate\n";
        return 0;
    }
    std::cout << "PASS\n";
    return 0;
}

int cmd_reproduce(int table_id, const std::string& out_path) {
    const tables::TableReport rep = tables::reproduce_table(table_id);
    write_output(rep.csv, out_path);
    std::cout << "table " << table_id << " diff report\n";
    int failed = 0;
    for (const tables::Cell& c : rep.cells) {
        if (!c.pass) ++failed;
        std::printf("  %-5s %-10s expected %-12.5f actual %-12.5f |dev| %-10.3g %s\n",
                    c.row.c_str(), c.col.c_str(), c.expected, c.actual, c.deviation(),
                    c.pass ? "pass" : "FAIL");
    }
    for (const std::string& note : rep.notes) std::cout << "  note: " << note << '\n';
    std::cout << (rep.all_pass ? "ALL PASS" : "FAILED CELLS: " + std::to_string(failed))
              << ", max deviation " << rep.max_deviation << '\n';
    return rep.all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impulsive-dosing tumor treatment planning"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Sample a treatment trajectory to CSV");
    simulate->add_option("--config", sim.config_path, "parameter file")->required();
    simulate->add_option("--pattern", sim.pattern, "schedule pattern, e.g. 5/28d");
    simulate->add_option("--doses", sim.doses_list, "comma-separated doses");
    simulate->add_option("--times", sim.times_list, "comma-separated administration days");
    simulate->add_option("--dose", sim.dose, "equal dose, with --n");
    simulate->add_option("--n", sim.n, "number of doses, with --dose");
    simulate->add_flag("--ut", sim.ut, "usual-treatment benchmark schedule");
    simulate->add_option("--step", sim.step, "sampling/integration step, days");
    simulate->add_option("--out", sim.out_path, "output CSV path (default stdout)");

    PlanArgs cur;
    auto* curative = app.add_subcommand("curative", "Fixed-total-dose fractionation plans");
    curative->add_option("--config", cur.config_path, "parameter file")->required();
    curative->add_option("--pattern", cur.pattern, "schedule pattern override");
    curative->add_flag("--exact", cur.exact, "also run the continuous solver per N");
    curative->add_flag("--optimal-only", cur.optimal_only, "emit only the optimal row");
    curative->add_option("--out", cur.out_path, "output CSV path (default stdout)");

    PlanArgs pal;
    auto* palliative = app.add_subcommand("palliative", "Minimal-total-dose threshold plans");
    palliative->add_option("--config", pal.config_path, "parameter file")->required();
    palliative->add_option("--pattern", pal.pattern, "schedule pattern override");
    palliative->add_flag("--exact", pal.exact, "also run the continuous solver per N");
    palliative->add_option("--out", pal.out_path, "output CSV path (default stdout)");

    std::string mh_config, mh_pattern;
    auto* checkmh = app.add_subcommand("check-mh", "Dose-separability diagnostic");
    checkmh->add_option("--config", mh_config, "parameter file")->required();
    checkmh->add_option("--pattern", mh_pattern, "schedule pattern override");

    int table_id = 0;
    std::string rep_out;
    auto* reproduce = app.add_subcommand("reproduce", "Regenerate a reference table and diff it");
    reproduce->add_option("--table", table_id, "table id: 2, 3, 4 or 5")->required();
    reproduce->add_option("--out", rep_out, "output CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) return cmd_simulate(sim);
        if (*curative) return cmd_curative(cur);
        if (*palliative) return cmd_palliative(pal);
        if (*checkmh) return cmd_check_mh(mh_config, mh_pattern);
        if (*reproduce) return cmd_reproduce(table_id, rep_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
