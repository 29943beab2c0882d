#include "metrodose/closed_form.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace metrodose {

IntRange feasible_n_range_curative(const DoseBounds& bounds) {
    if (!bounds.cumulative_D)
        throw std::invalid_argument("feasible_n_range_curative: cumulative_D required");
    const double D = *bounds.cumulative_D;
    IntRange range;
    range.lo = static_cast<int>(std::ceil(D / bounds.d_max - 1e-12));
    range.hi = static_cast<int>(std::floor(D / bounds.d_min + 1e-12));
    if (range.lo < 1) range.lo = 1;
    return range;
}

CurativePlan curative_fixed_n(const DoseBounds& bounds, int n, double k2_tilde) {
    const IntRange range = feasible_n_range_curative(bounds);
    if (n < range.lo)
        throw std::invalid_argument("curative_fixed_n: n = " + std::to_string(n) +
                                    " violates d_max (requires n >= " + std::to_string(range.lo) +
                                    ")");
    if (n > range.hi)
        throw std::invalid_argument("curative_fixed_n: n = " + std::to_string(n) +
                                    " violates d_min (requires n <= " + std::to_string(range.hi) +
                                    ")");
    CurativePlan plan;
    plan.n = n;
    plan.dose = *bounds.cumulative_D / n;
    plan.total = *bounds.cumulative_D;
    plan.objective_log_f1_hat = n * std::log1p(plan.dose / k2_tilde);
    return plan;
}

CurativePlan curative_optimal(const DoseBounds& bounds, double k2_tilde,
                              std::optional<int> n_cap) {
    IntRange range = feasible_n_range_curative(bounds);
    if (n_cap) range.hi = std::min(range.hi, *n_cap);
    if (range.empty())
        throw std::invalid_argument(
            "curative_optimal: no admissible dose count (empty feasible range)");
    // Longest feasible treatment; the objective is increasing in n.
    return curative_fixed_n(bounds, range.hi, k2_tilde);
}

double phi1(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("phi1: x must be > 0");
    return std::exp(x * std::log1p(1.0 / x));
}

double phi2(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("phi2: x must be > 0");
    return x * std::expm1(1.0 / x);
}

IntRange palliative_n_bounds(double t_r_tilde, double k2_tilde, const DoseBounds& bounds) {
    if (!(t_r_tilde > 0.0))
        throw std::invalid_argument("palliative_n_bounds: t_r_tilde must be > 0");
    IntRange range;
    range.lo = static_cast<int>(std::ceil(t_r_tilde / std::log1p(bounds.d_max / k2_tilde) - 1e-12));
    range.hi = static_cast<int>(std::ceil(t_r_tilde / std::log1p(bounds.d_min / k2_tilde) - 1e-12));
    if (range.lo < 1) range.lo = 1;
    if (range.hi < 1) range.hi = 1;
    return range;
}

PalliativePlan palliative_fixed_n(double t_r_tilde, double k2_tilde, int n,
                                  const DoseBounds& bounds) {
    const IntRange range = palliative_n_bounds(t_r_tilde, k2_tilde, bounds);
    if (n < range.lo)
        throw std::invalid_argument("palliative_fixed_n: n = " + std::to_string(n) +
                                    " violates d_max (requires n >= " + std::to_string(range.lo) +
                                    ")");
    if (n > range.hi - 1)
        throw std::invalid_argument("palliative_fixed_n: n = " + std::to_string(n) +
                                    " violates d_min (requires n <= " +
                                    std::to_string(range.hi - 1) + ")");
    PalliativePlan plan;
    plan.n = n;
    plan.dose = k2_tilde * std::expm1(t_r_tilde / n);
    plan.total = n * plan.dose;
    plan.case_tag = PalliativeCase::fixed_n;
    return plan;
}

PalliativePlan palliative_optimal(double t_r_tilde, double k2_tilde, const DoseBounds& bounds,
                                  std::optional<int> n_cap) {
    PalliativePlan plan;
    if (!(t_r_tilde > 0.0)) {
        // Threshold at or above the untreated endpoint: a single minimal dose.
        plan.n = 1;
        plan.dose = bounds.d_min;
        plan.total = bounds.d_min;
        plan.case_tag = PalliativeCase::a;
        return plan;
    }
    const IntRange range = palliative_n_bounds(t_r_tilde, k2_tilde, bounds);
    if (n_cap && *n_cap < range.lo)
        throw std::invalid_argument(
            "palliative_optimal: schedule capacity below the minimum dose count " +
            std::to_string(range.lo));
    if (n_cap && *n_cap < range.hi) {
        // The total is decreasing in n, so the cap binds.
        plan = palliative_fixed_n(t_r_tilde, k2_tilde, *n_cap, bounds);
        plan.case_tag = PalliativeCase::a;
        return plan;
    }
    const int n_max = range.hi;
    if (n_max == 1 || n_max - 1 < range.lo) {
        plan.n = n_max;
        plan.dose = (n_max == 1) ? std::min(k2_tilde * std::expm1(t_r_tilde), bounds.d_max)
                                 : bounds.d_min;
        // n_max == 1 with t_r_tilde > 0: one dose activating the constraint.
        if (n_max == 1 && plan.dose < bounds.d_min) plan.dose = bounds.d_min;
        plan.total = n_max * plan.dose;
        plan.case_tag = PalliativeCase::b;
        return plan;
    }
    const double d_star = k2_tilde * std::expm1(t_r_tilde / (n_max - 1));
    if ((n_max - 1) * d_star <= n_max * bounds.d_min) {
        plan.n = n_max - 1;
        plan.dose = d_star;
        plan.case_tag = PalliativeCase::a;
    } else {
        plan.n = n_max;
        plan.dose = bounds.d_min;
        plan.case_tag = PalliativeCase::b;
    }
    plan.total = plan.n * plan.dose;
    return plan;
}

}  // namespace metrodose
