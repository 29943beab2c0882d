#include "metrodose/pkpd.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace metrodose {

DrugPK::DrugPK(double lambda_, double sigma_, double k1_, double k2_)
    : lambda(lambda_), sigma(sigma_), k1(k1_), k2(k2_) {
    if (!(lambda > 0.0)) throw std::invalid_argument("DrugPK: lambda must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("DrugPK: sigma must be > 0");
    if (!(k1 > 0.0)) throw std::invalid_argument("DrugPK: k1 must be > 0");
    if (!(k2 > 0.0)) throw std::invalid_argument("DrugPK: k2 must be > 0");
}

TumorModel::TumorModel(double xi_, double l0_rel_) : xi(xi_), l0_rel(l0_rel_) {
    if (!(xi > 0.0)) throw std::invalid_argument("TumorModel: xi must be > 0");
    if (!(l0_rel > 0.0 && l0_rel < 1.0))
        throw std::invalid_argument("TumorModel: l0_rel must be in (0,1)");
}

DoseSchedule::DoseSchedule(std::vector<double> times, std::vector<double> doses, double horizon_T)
    : times_(std::move(times)), doses_(std::move(doses)), horizon_(horizon_T) {
    if (times_.empty()) throw std::invalid_argument("DoseSchedule: at least one dose required");
    if (times_.size() != doses_.size())
        throw std::invalid_argument("DoseSchedule: times and doses must have equal length");
    if (times_.front() < 0.0) throw std::invalid_argument("DoseSchedule: times[0] must be >= 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw std::invalid_argument("DoseSchedule: times must be strictly increasing (index " +
                                        std::to_string(i) + ")");
    if (!(times_.back() < horizon_))
        throw std::invalid_argument("DoseSchedule: last time must be < horizon_T");
    for (std::size_t i = 0; i < doses_.size(); ++i)
        if (!(doses_[i] > 0.0))
            throw std::invalid_argument("DoseSchedule: doses must be > 0 (index " +
                                        std::to_string(i) + ")");
}

double DoseSchedule::min_gap() const {
    if (times_.size() == 1) return horizon_ - times_.front();
    double s = times_[1] - times_[0];
    for (std::size_t i = 2; i < times_.size(); ++i) s = std::min(s, times_[i] - times_[i - 1]);
    return s;
}

double DoseSchedule::min_gap_with_final() const {
    return std::min(min_gap(), horizon_ - times_.back());
}

double concentration(const DrugPK& pk, const DoseSchedule& sched, double t) {
    if (t < 0.0 || t > sched.horizon())
        throw std::invalid_argument("concentration: t outside [0, horizon_T]");
    double sum = 0.0;
    const auto& ts = sched.times();
    const auto& ds = sched.doses();
    for (std::size_t j = 0; j < ts.size() && ts[j] <= t; ++j)
        sum += ds[j] * std::exp(-pk.lambda * (t - ts[j]));
    return pk.sigma * sum;
}

double emax_effect(const DrugPK& pk, double c) {
    if (c < 0.0) throw std::invalid_argument("emax_effect: concentration must be >= 0");
    return pk.k1 * c / (pk.k2 + c);
}

double cumulative_effect(const DrugPK& pk, const DoseSchedule& sched, double t) {
    if (t < 0.0 || t > sched.horizon())
        throw std::invalid_argument("cumulative_effect: t outside [0, horizon_T]");
    const auto& ts = sched.times();
    const auto& ds = sched.doses();
    const double k2t = pk.k2_tilde();
    const std::size_t n = ts.size();

    double sum = 0.0;
    double carry = 0.0;  // A_i: accumulated doses decayed to t_i
    for (std::size_t i = 0; i < n; ++i) {
        if (t <= ts[i]) break;
        const double next = (i + 1 < n) ? ts[i + 1] : sched.horizon();
        const double tend = std::min(next, t);
        const double b = (carry + ds[i]) * std::exp(pk.lambda * (ts[i] - tend));
        sum += std::log(carry + ds[i] + k2t) - std::log(b + k2t);
        carry = (carry + ds[i]) * std::exp(pk.lambda * (ts[i] - next));
    }
    return (pk.k1 / pk.lambda) * sum;
}

double tumor_ratio(const TumorModel& tm, const DrugPK& pk, const DoseSchedule& sched, double t) {
    const double e = cumulative_effect(pk, sched, t);
    return std::exp(std::log(tm.l0_rel) * std::exp(-tm.xi * (t - e)));
}

double gompertz_rate(const TumorModel& tm, double l_rel) {
    if (!(l_rel > 0.0 && l_rel < 1.0))
        throw std::invalid_argument("gompertz_rate: l_rel must be in (0,1)");
    return tm.xi * l_rel * std::log(1.0 / l_rel);
}

namespace {

// Concentration without any impulse administered exactly at t (left limit);
// the integration below treats each segment as closed on the left only, so
// the stage at a segment's right endpoint must not see the next dose.
double concentration_left(const DrugPK& pk, const DoseSchedule& sched, double t) {
    double sum = 0.0;
    const auto& ts = sched.times();
    const auto& ds = sched.doses();
    for (std::size_t j = 0; j < ts.size() && ts[j] < t; ++j)
        sum += ds[j] * std::exp(-pk.lambda * (t - ts[j]));
    return pk.sigma * sum;
}

double growth_rhs(const TumorModel& tm, const DrugPK& pk, const DoseSchedule& sched, double t,
                  double x, double segment_end) {
    const double c = (t >= segment_end) ? concentration_left(pk, sched, segment_end)
                                        : concentration(pk, sched, t);
    const double rho = emax_effect(pk, c);
    return tm.xi * x * std::log(1.0 / x) * (1.0 - rho);
}

}  // namespace

Trajectory simulate_ode_oracle(const TumorModel& tm, const DrugPK& pk, const DoseSchedule& sched,
                               double step) {
    if (!(step > 0.0)) throw std::invalid_argument("simulate_ode_oracle: step must be > 0");

    // Segment boundaries: 0, each dose time, horizon.
    std::vector<double> events;
    events.push_back(0.0);
    for (double t : sched.times())
        if (t > events.back()) events.push_back(t);
    if (sched.horizon() > events.back()) events.push_back(sched.horizon());

    Trajectory traj;
    double x = tm.l0_rel;
    double t = 0.0;
    traj.sample_times.push_back(t);
    traj.tumor_ratio.push_back(x);
    traj.concentration.push_back(concentration(pk, sched, t));

    for (std::size_t s = 0; s + 1 < events.size(); ++s) {
        const double a = events[s];
        const double b = events[s + 1];
        const auto nsteps = static_cast<std::size_t>(std::ceil((b - a) / step - 1e-12));
        const double h = (b - a) / static_cast<double>(nsteps);
        for (std::size_t k = 0; k < nsteps; ++k) {
            const double tk = a + h * static_cast<double>(k);
            const double k1 = growth_rhs(tm, pk, sched, tk, x, b);
            const double k2 = growth_rhs(tm, pk, sched, tk + 0.5 * h, x + 0.5 * h * k1, b);
            const double k3 = growth_rhs(tm, pk, sched, tk + 0.5 * h, x + 0.5 * h * k2, b);
            const double k4 = growth_rhs(tm, pk, sched, tk + h, x + h * k3, b);
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t = (k + 1 == nsteps) ? b : tk + h;
            traj.sample_times.push_back(t);
            traj.tumor_ratio.push_back(x);
            traj.concentration.push_back(concentration(pk, sched, t));
        }
    }
    return traj;
}

}  // namespace metrodose
