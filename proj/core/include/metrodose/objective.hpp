#ifndef METRODOSE_OBJECTIVE_HPP
#define METRODOSE_OBJECTIVE_HPP

#include <optional>
#include <vector>

#include "metrodose/pkpd.hpp"

namespace metrodose {

/// Per-dose bounds and, for curative planning, the fixed cumulative dose D.
struct DoseBounds {
    double d_min;
    double d_max;
    std::optional<double> cumulative_D;

    DoseBounds(double d_min_, double d_max_, std::optional<double> D = std::nullopt);
};

/// Palliative threshold in its three equivalent forms: the relative size
/// L*/theta, the rest time T_R and the scaled bound entering the
/// log f1 >= t_r_tilde constraint.
struct PalliativeTarget {
    double l_star_rel;
    double t_r;
    double t_r_tilde;
};

/// Exact log f1: the log of the treatment's cumulative-effect factor.
/// Equals (lambda/k1) * cumulative_effect at the horizon; computed directly
/// in log-sum form.
double log_f1(const DrugPK& pk, const std::vector<double>& times, double horizon_T,
              const std::vector<double>& doses);

/// Time-free approximation: sum_i log(d_i/k2_tilde + 1).
double log_f1_hat(double k2_tilde, const std::vector<double>& doses);

/// Diagnostic for the separability condition d_max * e^{-lambda s} << k2_tilde,
/// with s the minimum inter-dose gap.
struct HypothesisDiagnostic {
    double lhs;       // d_max * exp(-lambda * s)
    double k2_tilde;
    double ratio;     // lhs / k2_tilde
};

HypothesisDiagnostic check_main_hypothesis(const DrugPK& pk, const DoseSchedule& sched,
                                           double d_max);

/// Default warning threshold on HypothesisDiagnostic::ratio; the library
/// always computes the exact objective, this only gates a CLI warning.
inline constexpr double kHypothesisRatioWarn = 0.01;

/// Rest time (1/xi) * log(log(l_star)/log(l0)); positive iff the threshold
/// lies below the initial size. Negative values are legitimate inputs
/// downstream.
double rest_time(const TumorModel& tm, double l_star_rel);

/// Scaled threshold (lambda/k1) * (T + T_R).
double t_r_tilde(const DrugPK& pk, double horizon_T, double t_r);

/// Builds a consistent PalliativeTarget from the model parameters.
PalliativeTarget make_palliative_target(const TumorModel& tm, const DrugPK& pk, double horizon_T,
                                        double l_star_rel);

struct PalliativeFeasibility {
    bool feasible;
    double slack;  // log f1 - t_r_tilde (log-space)
};

/// Whether a schedule meets the end-of-horizon size constraint, with signed
/// log-space slack.
PalliativeFeasibility palliative_feasible(const DrugPK& pk, const DoseSchedule& sched,
                                          const PalliativeTarget& target);

}  // namespace metrodose

#endif
