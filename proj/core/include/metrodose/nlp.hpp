#ifndef METRODOSE_NLP_HPP
#define METRODOSE_NLP_HPP

#include <string>
#include <vector>

#include "metrodose/objective.hpp"

namespace metrodose {

struct SolverConfig {
    double optimality_tol = 1e-8;
    int max_iterations = 5000;
    double feasibility_tol = 1e-10;

    void validate() const;
};

/// Outcome of a continuous fixed-N solve. Non-convergence and infeasibility
/// are reported here, never thrown.
struct SolveReport {
    std::vector<double> doses;
    double objective = 0.0;       // log f1 (curative) or total dose (palliative)
    double kkt_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    double min_dose = 0.0;
    double max_dose = 0.0;
    std::string message;
};

/// Analytic gradient of log_f1 with respect to each dose.
std::vector<double> grad_log_f1(const DrugPK& pk, const std::vector<double>& times,
                                double horizon_T, const std::vector<double>& doses);

/// Euclidean projection onto {x : sum x = total, lo <= x_i <= hi}.
/// Exact breakpoint algorithm on the shift multiplier.
std::vector<double> project_simplex_box(const std::vector<double>& v, double total, double lo,
                                        double hi);

/// Maximizes log_f1 over the simplex-box set {sum d = D, d_min <= d_i <= d_max}
/// by projected-gradient ascent with backtracking, warm-started at the
/// equal-dose point. Convergence: unit-step gradient-mapping norm <= tol.
SolveReport solve_curative_exact(const DrugPK& pk, const std::vector<double>& times,
                                 double horizon_T, const DoseBounds& bounds, int n,
                                 const SolverConfig& cfg = {});

/// Minimizes the total dose subject to log_f1 >= t_r_tilde and the box
/// bounds. Two phases: scalar root-finding on the equal-dose level that
/// activates the constraint, then Newton iterations on the KKT system with
/// per-dose deviations.
SolveReport solve_palliative_exact(const DrugPK& pk, const std::vector<double>& times,
                                   double horizon_T, const DoseBounds& bounds, double t_r_tilde,
                                   int n, const SolverConfig& cfg = {});

/// Exhaustive grid optimum of the curative problem for n <= 3 (the equality
/// constraint removes one degree of freedom). Test oracle.
SolveReport brute_force_curative(const DrugPK& pk, const std::vector<double>& times,
                                 double horizon_T, const DoseBounds& bounds, int n,
                                 int points_per_dim);

/// Grid/bisection sweep optimum of the palliative problem for n <= 3: the
/// last dose is resolved by bisection on the active constraint. Test oracle.
SolveReport brute_force_palliative(const DrugPK& pk, const std::vector<double>& times,
                                   double horizon_T, const DoseBounds& bounds, double t_r_tilde,
                                   int n, int points_per_dim);

}  // namespace metrodose

#endif
