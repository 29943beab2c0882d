#ifndef METRODOSE_CLOSED_FORM_HPP
#define METRODOSE_CLOSED_FORM_HPP

#include <optional>

#include "metrodose/objective.hpp"

namespace metrodose {

/// Closed integer interval of admissible dose counts; empty when lo > hi.
struct IntRange {
    int lo;
    int hi;
    bool empty() const { return lo > hi; }
};

/// Equal-dose plan maximizing the approximate objective for a fixed count.
struct CurativePlan {
    int n;
    double dose;                    // mg/m^2, each administration
    double total;                   // n * dose
    double objective_log_f1_hat;
};

enum class PalliativeCase { a, b, fixed_n };

/// Equal-dose plan meeting the size threshold at minimal total dose.
struct PalliativePlan {
    int n;
    double dose;
    double total;
    PalliativeCase case_tag;
};

/// Admissible dose counts for the curative problem:
/// {ceil(D/d_max), ..., floor(D/d_min)}. An empty range means the feasible
/// set is empty for every N.
IntRange feasible_n_range_curative(const DoseBounds& bounds);

/// Equal-dose optimum for a fixed admissible count: dose = D/n.
CurativePlan curative_fixed_n(const DoseBounds& bounds, int n, double k2_tilde);

/// Curative optimum over all admissible counts: the longest feasible
/// treatment, optionally capped by schedule capacity.
CurativePlan curative_optimal(const DoseBounds& bounds, double k2_tilde,
                              std::optional<int> n_cap = std::nullopt);

/// phi1(x) = (1/x + 1)^x, strictly increasing on (0, inf).
double phi1(double x);

/// phi2(x) = x (e^{1/x} - 1), strictly decreasing on (0, inf).
double phi2(double x);

/// Smallest and largest practically useful dose counts for the palliative
/// problem. Requires t_r_tilde > 0. With d_min < d_max the range is nonempty
/// by construction; it can still become empty after intersecting with a
/// schedule-capacity cap (see palliative_optimal).
IntRange palliative_n_bounds(double t_r_tilde, double k2_tilde, const DoseBounds& bounds);

/// Equal-dose plan activating the size constraint for a fixed count
/// n in [n_min, n_max - 1]: dose = k2_tilde (e^{t_r_tilde/n} - 1).
PalliativePlan palliative_fixed_n(double t_r_tilde, double k2_tilde, int n,
                                  const DoseBounds& bounds);

/// Global palliative optimum: case a picks n_max - 1 doses of
/// k2_tilde (e^{t_r_tilde/(n_max-1)} - 1), case b picks n_max doses of d_min,
/// whichever total is smaller (ties go to case a). A nonpositive t_r_tilde
/// yields the trivial single-dose d_min plan. An optional schedule-capacity
/// cap restricts the count from above.
PalliativePlan palliative_optimal(double t_r_tilde, double k2_tilde, const DoseBounds& bounds,
                                  std::optional<int> n_cap = std::nullopt);

}  // namespace metrodose

#endif
