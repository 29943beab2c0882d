#ifndef METRODOSE_PKPD_HPP
#define METRODOSE_PKPD_HPP

#include <vector>

namespace metrodose {

/// Drug-specific pharmacokinetic/pharmacodynamic constants.
///
/// Units: `lambda` 1/day (clearance), `sigma` m^2/l (dose-to-concentration
/// factor), `k1` dimensionless (maximal Emax effect), `k2` mg/l
/// (half-effect concentration).
struct DrugPK {
    double lambda;
    double sigma;
    double k1;
    double k2;

    DrugPK(double lambda_, double sigma_, double k1_, double k2_);

    /// Half-effect concentration expressed on the dose scale, k2/sigma [mg/m^2].
    double k2_tilde() const { return k2 / sigma; }
};

/// Gompertz tumor model on the relative scale L/theta.
///
/// The absolute carrying capacity is never needed: every quantity the
/// library computes is a ratio L/theta or L/L0.
struct TumorModel {
    double xi;      // growth rate, 1/day
    double l0_rel;  // initial relative size L0/theta, in (0,1)

    TumorModel(double xi_, double l0_rel_);
};

/// Impulsive dosing schedule: strictly increasing administration days,
/// positive doses (mg/m^2) and the treatment horizon T (days).
class DoseSchedule {
  public:
    DoseSchedule(std::vector<double> times, std::vector<double> doses, double horizon_T);

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& doses() const { return doses_; }
    double horizon() const { return horizon_; }
    std::size_t size() const { return times_.size(); }

    /// Minimum gap between consecutive administrations. For a single dose
    /// this is horizon_T - t1.
    double min_gap() const;

    /// As min_gap(), but also counting the final gap t_N .. T.
    double min_gap_with_final() const;

  private:
    std::vector<double> times_;
    std::vector<double> doses_;
    double horizon_;
};

/// Sampled tumor/concentration curves (backs CSV and plot-data output).
struct Trajectory {
    std::vector<double> sample_times;   // days
    std::vector<double> tumor_ratio;    // L(t)/theta
    std::vector<double> concentration;  // mg/l
};

/// Drug concentration c(t) [mg/l]: superposition of exponentially cleared
/// impulses, right-continuous at dose instants (dose i counts at t = t_i).
double concentration(const DrugPK& pk, const DoseSchedule& sched, double t);

/// Emax response k1*c/(k2+c); zero at c = 0 and strictly below k1.
double emax_effect(const DrugPK& pk, double c);

/// Closed-form integral of the Emax response over [0, t] (days).
///
/// Evaluated as a sum of log terms, one per dose interval intersected with
/// [0, t]; every exponential factor has a nonpositive exponent so long
/// schedules cannot overflow.
double cumulative_effect(const DrugPK& pk, const DoseSchedule& sched, double t);

/// Relative tumor size L(t)/theta under treatment, from the closed-form
/// solution of the growth ODE.
double tumor_ratio(const TumorModel& tm, const DrugPK& pk, const DoseSchedule& sched, double t);

/// Untreated Gompertz growth rate on the relative scale: xi * x * log(1/x).
double gompertz_rate(const TumorModel& tm, double l_rel);

/// Fixed-step RK4 integration of the ratio ODE x' = xi x log(1/x) (1 - rho(t)),
/// with rho evaluated from the closed-form concentration. Steps never straddle
/// a dose time. Serves as an independent check of tumor_ratio.
Trajectory simulate_ode_oracle(const TumorModel& tm, const DrugPK& pk, const DoseSchedule& sched,
                               double step);

}  // namespace metrodose

#endif
