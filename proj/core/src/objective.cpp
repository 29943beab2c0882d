#include "metrodose/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace metrodose {

DoseBounds::DoseBounds(double d_min_, double d_max_, std::optional<double> D)
    : d_min(d_min_), d_max(d_max_), cumulative_D(D) {
    if (!(d_min > 0.0)) throw std::invalid_argument("DoseBounds: d_min must be > 0");
    if (!(d_min < d_max)) throw std::invalid_argument("DoseBounds: d_min must be < d_max");
    if (cumulative_D && !(*cumulative_D > 0.0))
        throw std::invalid_argument("DoseBounds: cumulative_D must be > 0");
}

double log_f1(const DrugPK& pk, const std::vector<double>& times, double horizon_T,
              const std::vector<double>& doses) {
    // Validates the schedule invariants; doses must be positive here.
    DoseSchedule sched(times, doses, horizon_T);
    const double k2t = pk.k2_tilde();
    const std::size_t n = times.size();
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double next = (i + 1 < n) ? times[i + 1] : horizon_T;
        const double b = (carry + doses[i]) * std::exp(pk.lambda * (times[i] - next));
        sum += std::log(carry + doses[i] + k2t) - std::log(b + k2t);
        carry = b;
    }
    return sum;
}

double log_f1_hat(double k2_tilde, const std::vector<double>& doses) {
    if (!(k2_tilde > 0.0)) throw std::invalid_argument("log_f1_hat: k2_tilde must be > 0");
    double sum = 0.0;
    for (double d : doses) {
        if (d < 0.0) throw std::invalid_argument("log_f1_hat: doses must be >= 0");
        sum += std::log1p(d / k2_tilde);
    }
    return sum;
}

HypothesisDiagnostic check_main_hypothesis(const DrugPK& pk, const DoseSchedule& sched,
                                           double d_max) {
    HypothesisDiagnostic diag;
    diag.lhs = d_max * std::exp(-pk.lambda * sched.min_gap());
    diag.k2_tilde = pk.k2_tilde();
    diag.ratio = diag.lhs / diag.k2_tilde;
    return diag;
}

double rest_time(const TumorModel& tm, double l_star_rel) {
    if (!(l_star_rel > 0.0 && l_star_rel < 1.0))
        throw std::invalid_argument("rest_time: l_star_rel must be in (0,1)");
    return std::log(std::log(l_star_rel) / std::log(tm.l0_rel)) / tm.xi;
}

double t_r_tilde(const DrugPK& pk, double horizon_T, double t_r) {
    if (!(horizon_T > 0.0)) throw std::invalid_argument("t_r_tilde: horizon_T must be > 0");
    return (pk.lambda / pk.k1) * (horizon_T + t_r);
}

PalliativeTarget make_palliative_target(const TumorModel& tm, const DrugPK& pk, double horizon_T,
                                        double l_star_rel) {
    PalliativeTarget target;
    target.l_star_rel = l_star_rel;
    target.t_r = rest_time(tm, l_star_rel);
    target.t_r_tilde = t_r_tilde(pk, horizon_T, target.t_r);
    return target;
}

PalliativeFeasibility palliative_feasible(const DrugPK& pk, const DoseSchedule& sched,
                                          const PalliativeTarget& target) {
    const double lf = log_f1(pk, sched.times(), sched.horizon(), sched.doses());
    PalliativeFeasibility result;
    result.slack = lf - target.t_r_tilde;
    result.feasible = result.slack >= 0.0;
    return result;
}

}  // namespace metrodose
