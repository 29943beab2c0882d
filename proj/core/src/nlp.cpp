#include "metrodose/nlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace metrodose {

void SolverConfig::validate() const {
    if (!(optimality_tol > 0.0)) throw std::invalid_argument("SolverConfig: optimality_tol <= 0");
    if (max_iterations <= 0) throw std::invalid_argument("SolverConfig: max_iterations <= 0");
    if (!(feasibility_tol > 0.0)) throw std::invalid_argument("SolverConfig: feasibility_tol <= 0");
}

std::vector<double> grad_log_f1(const DrugPK& pk, const std::vector<double>& times,
                                double horizon_T, const std::vector<double>& doses) {
    const std::size_t n = times.size();
    if (doses.size() != n) throw std::invalid_argument("grad_log_f1: size mismatch");
    const double k2t = pk.k2_tilde();

    // Prefix carries A_i and per-interval denominators; exponents stay <= 0.
    std::vector<double> carry(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        carry[i] = (carry[i - 1] + doses[i - 1]) * std::exp(pk.lambda * (times[i - 1] - times[i]));

    std::vector<double> grad(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double g = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            const double next = (i + 1 < n) ? times[i + 1] : horizon_T;
            const double num = carry[i] + doses[i] + k2t;
            const double b = (carry[i] + doses[i]) * std::exp(pk.lambda * (times[i] - next));
            g += std::exp(pk.lambda * (times[k] - times[i])) / num -
                 std::exp(pk.lambda * (times[k] - next)) / (b + k2t);
        }
        grad[k] = g;
    }
    return grad;
}

std::vector<double> project_simplex_box(const std::vector<double>& v, double total, double lo,
                                        double hi) {
    const std::size_t n = v.size();
    if (n == 0) throw std::invalid_argument("project_simplex_box: empty vector");
    if (!(lo < hi)) throw std::invalid_argument("project_simplex_box: lo must be < hi");
    const double eps = 1e-9 * (1.0 + std::abs(total));
    if (total < n * lo - eps || total > n * hi + eps)
        throw std::invalid_argument("project_simplex_box: total incompatible with bounds");

    auto clipped_sum = [&](double tau) {
        double s = 0.0;
        for (double x : v) s += std::clamp(x - tau, lo, hi);
        return s;
    };

    // f(tau) is piecewise linear and nonincreasing; breakpoints at v_i - hi
    // and v_i - lo.
    std::vector<double> bps;
    bps.reserve(2 * n);
    for (double x : v) {
        bps.push_back(x - hi);
        bps.push_back(x - lo);
    }
    std::sort(bps.begin(), bps.end());

    double tau;
    if (total >= clipped_sum(bps.front())) {
        tau = bps.front();
    } else if (total <= clipped_sum(bps.back())) {
        tau = bps.back();
    } else {
        std::size_t a = 0, b = bps.size() - 1;
        while (b - a > 1) {
            const std::size_t m = (a + b) / 2;
            if (clipped_sum(bps[m]) >= total)
                a = m;
            else
                b = m;
        }
        const double fa = clipped_sum(bps[a]);
        const double fb = clipped_sum(bps[b]);
        tau = (fa == fb) ? bps[a] : bps[a] + (total - fa) * (bps[b] - bps[a]) / (fb - fa);
    }

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::clamp(v[i] - tau, lo, hi);
    return out;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

// Gaussian elimination with partial pivoting; m x m, in-place copies.
std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> b) {
    const std::size_t m = b.size();
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (A[piv][col] == 0.0) throw std::runtime_error("solve_dense: singular KKT system");
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const double f = A[r][col] / A[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < m; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(m);
    for (std::size_t i = m; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < m; ++c) s -= A[i][c] * x[c];
        x[i] = s / A[i][i];
    }
    return x;
}

SolveReport make_report(std::vector<double> doses, double objective, double kkt, int iters,
                        bool converged, std::string message) {
    SolveReport rep;
    rep.doses = std::move(doses);
    rep.objective = objective;
    rep.kkt_residual = kkt;
    rep.iterations = iters;
    rep.converged = converged;
    rep.message = std::move(message);
    if (!rep.doses.empty()) {
        rep.min_dose = *std::min_element(rep.doses.begin(), rep.doses.end());
        rep.max_dose = *std::max_element(rep.doses.begin(), rep.doses.end());
    }
    return rep;
}

}  // namespace

SolveReport solve_curative_exact(const DrugPK& pk, const std::vector<double>& times,
                                 double horizon_T, const DoseBounds& bounds, int n,
                                 const SolverConfig& cfg) {
    cfg.validate();
    if (!bounds.cumulative_D)
        throw std::invalid_argument("solve_curative_exact: cumulative_D required");
    if (static_cast<int>(times.size()) != n)
        throw std::invalid_argument("solve_curative_exact: times must have length n");
    const double D = *bounds.cumulative_D;
    if (D < n * bounds.d_min - 1e-12 || D > n * bounds.d_max + 1e-12)
        return make_report({}, 0.0, 0.0, 0, false, "infeasible: n outside [D/d_max, D/d_min]");

    std::vector<double> d(n, D / n);
    d = project_simplex_box(d, D, bounds.d_min, bounds.d_max);

    double alpha = 1e4;
    double pgnorm = 0.0;
    int it = 0;
    for (; it < cfg.max_iterations; ++it) {
        const std::vector<double> g = grad_log_f1(pk, times, horizon_T, d);
        std::vector<double> trial(n);
        for (int i = 0; i < n; ++i) trial[i] = d[i] + g[i];
        pgnorm = norm2_diff(d, project_simplex_box(trial, D, bounds.d_min, bounds.d_max));
        if (pgnorm <= cfg.optimality_tol) break;

        const double f0 = log_f1(pk, times, horizon_T, d);
        double a = alpha;
        bool moved = false;
        while (a > 1e-14) {
            for (int i = 0; i < n; ++i) trial[i] = d[i] + a * g[i];
            std::vector<double> dn =
                project_simplex_box(trial, D, bounds.d_min, bounds.d_max);
            std::vector<double> delta(n);
            for (int i = 0; i < n; ++i) delta[i] = dn[i] - d[i];
            if (log_f1(pk, times, horizon_T, dn) >= f0 + 1e-4 * dot(g, delta)) {
                d = std::move(dn);
                moved = true;
                break;
            }
            a *= 0.5;
        }
        if (!moved) break;      // step collapsed below resolution
        alpha = std::min(a * 2.0, 1e8);
    }

    const bool converged = pgnorm <= cfg.optimality_tol;
    return make_report(d, log_f1(pk, times, horizon_T, d), pgnorm, it, converged,
                       converged ? "" : "projected-gradient tolerance not reached");
}

SolveReport solve_palliative_exact(const DrugPK& pk, const std::vector<double>& times,
                                   double horizon_T, const DoseBounds& bounds, double t_r_tilde,
                                   int n, const SolverConfig& cfg) {
    cfg.validate();
    if (static_cast<int>(times.size()) != n)
        throw std::invalid_argument("solve_palliative_exact: times must have length n");

    auto eval = [&](const std::vector<double>& d) { return log_f1(pk, times, horizon_T, d); };
    const double cscale = std::max(1.0, std::abs(t_r_tilde));

    const std::vector<double> all_hi(n, bounds.d_max);
    if (eval(all_hi) < t_r_tilde - cfg.feasibility_tol * cscale)
        return make_report({}, 0.0, 0.0, 0, false,
                           "infeasible: target unreachable with n doses of d_max");

    const std::vector<double> all_lo(n, bounds.d_min);
    if (eval(all_lo) >= t_r_tilde) {
        // Constraint inactive; every dose sits at its lower bound.
        double total = n * bounds.d_min;
        return make_report(all_lo, total, 0.0, 0, true, "constraint inactive at lower bounds");
    }

    // Phase 1: equal-dose level activating the constraint.
    double lo = bounds.d_min, hi = bounds.d_max;
    for (int k = 0; k < 100; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (eval(std::vector<double>(n, mid)) < t_r_tilde)
            lo = mid;
        else
            hi = mid;
    }
    std::vector<double> d(n, 0.5 * (lo + hi));

    // Phase 2: Newton on the KKT system, free doses only.
    enum class Bound { free, at_lo, at_hi };
    std::vector<Bound> state(n, Bound::free);
    std::vector<double> g = grad_log_f1(pk, times, horizon_T, d);
    double mu = 0.0;
    {
        double s = 0.0;
        for (double gi : g) s += gi;
        mu = n / s;
    }

    const double fd_h = 1e-4;
    double residual = 0.0;
    int it = 0;
    const int newton_iters = std::min(cfg.max_iterations, 50);
    for (; it < newton_iters; ++it) {
        g = grad_log_f1(pk, times, horizon_T, d);
        residual = std::abs(eval(d) - t_r_tilde) / cscale;
        for (int i = 0; i < n; ++i) {
            const double r = mu * g[i] - 1.0;  // stationarity for free doses
            switch (state[i]) {
                case Bound::free: residual = std::max(residual, std::abs(r)); break;
                case Bound::at_lo: residual = std::max(residual, std::max(0.0, r)); break;
                case Bound::at_hi: residual = std::max(residual, std::max(0.0, -r)); break;
            }
        }
        if (residual <= cfg.optimality_tol) break;

        std::vector<int> free_idx;
        for (int i = 0; i < n; ++i)
            if (state[i] == Bound::free) free_idx.push_back(i);
        const std::size_t m = free_idx.size();
        if (m == 0) break;

        // Finite-difference Hessian columns of log_f1 over the free set.
        std::vector<std::vector<double>> H(m, std::vector<double>(m, 0.0));
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<double> dp = d, dm = d;
            dp[free_idx[j]] += fd_h;
            dm[free_idx[j]] -= fd_h;
            const std::vector<double> gp = grad_log_f1(pk, times, horizon_T, dp);
            const std::vector<double> gm = grad_log_f1(pk, times, horizon_T, dm);
            for (std::size_t i = 0; i < m; ++i)
                H[i][j] = (gp[free_idx[i]] - gm[free_idx[i]]) / (2.0 * fd_h);
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const double s = 0.5 * (H[i][j] + H[j][i]);
                H[i][j] = H[j][i] = s;
            }

        std::vector<std::vector<double>> J(m + 1, std::vector<double>(m + 1, 0.0));
        std::vector<double> rhs(m + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) J[i][j] = mu * H[i][j];
            J[i][m] = g[free_idx[i]];
            J[m][i] = g[free_idx[i]];
            rhs[i] = -(mu * g[free_idx[i]] - 1.0);
        }
        rhs[m] = -(eval(d) - t_r_tilde);

        const std::vector<double> step = solve_dense(std::move(J), std::move(rhs));
        for (std::size_t i = 0; i < m; ++i) {
            double nd = d[free_idx[i]] + step[i];
            if (nd <= bounds.d_min) {
                nd = bounds.d_min;
                state[free_idx[i]] = Bound::at_lo;
            } else if (nd >= bounds.d_max) {
                nd = bounds.d_max;
                state[free_idx[i]] = Bound::at_hi;
            }
            d[free_idx[i]] = nd;
        }
        mu += step[m];
    }

    double total = 0.0;
    for (double x : d) total += x;
    const bool feas = eval(d) >= t_r_tilde - cfg.feasibility_tol * cscale;
    const bool converged = residual <= cfg.optimality_tol && feas;
    return make_report(d, total, residual, it, converged,
                       converged ? "" : "KKT tolerance not reached");
}

SolveReport brute_force_curative(const DrugPK& pk, const std::vector<double>& times,
                                 double horizon_T, const DoseBounds& bounds, int n,
                                 int points_per_dim) {
    if (n < 1 || n > 3) throw std::invalid_argument("brute_force_curative: n must be <= 3");
    if (!bounds.cumulative_D)
        throw std::invalid_argument("brute_force_curative: cumulative_D required");
    const double D = *bounds.cumulative_D;
    const double lo = bounds.d_min, hi = bounds.d_max;
    const double points = std::pow(static_cast<double>(points_per_dim),
                                   static_cast<double>(std::max(n - 1, 1)));
    if (points > 1e8) throw std::invalid_argument("brute_force_curative: grid too large");

    double best = -1.0;
    std::vector<double> best_d;
    long evals = 0;
    auto consider = [&](const std::vector<double>& d) {
        for (double x : d)
            if (x < lo - 1e-9 || x > hi + 1e-9) return;
        const double v = log_f1(pk, times, horizon_T, d);
        ++evals;
        if (best_d.empty() || v > best) {
            best = v;
            best_d = d;
        }
    };

    if (n == 1) {
        consider({D});
    } else if (n == 2) {
        const double a = std::max(lo, D - hi), b = std::min(hi, D - lo);
        for (int i = 0; i < points_per_dim; ++i) {
            const double d1 = a + (b - a) * i / (points_per_dim - 1.0);
            consider({d1, D - d1});
        }
    } else {
        for (int i = 0; i < points_per_dim; ++i)
            for (int j = 0; j < points_per_dim; ++j) {
                const double d1 = lo + (hi - lo) * i / (points_per_dim - 1.0);
                const double d2 = lo + (hi - lo) * j / (points_per_dim - 1.0);
                consider({d1, d2, D - d1 - d2});
            }
    }

    if (best_d.empty()) return make_report({}, 0.0, 0.0, 0, false, "no feasible grid point");
    return make_report(best_d, best, 0.0, static_cast<int>(evals), true, "grid optimum");
}

SolveReport brute_force_palliative(const DrugPK& pk, const std::vector<double>& times,
                                   double horizon_T, const DoseBounds& bounds, double t_r_tilde,
                                   int n, int points_per_dim) {
    if (n < 1 || n > 3) throw std::invalid_argument("brute_force_palliative: n must be <= 3");
    const double lo = bounds.d_min, hi = bounds.d_max;
    const double points = std::pow(static_cast<double>(points_per_dim),
                                   static_cast<double>(std::max(n - 1, 1)));
    if (points > 1e8) throw std::invalid_argument("brute_force_palliative: grid too large");

    // Minimal last dose meeting the constraint, by bisection (log_f1 is
    // increasing in each dose).
    auto min_last = [&](std::vector<double> d) -> double {
        d.back() = hi;
        if (log_f1(pk, times, horizon_T, d) < t_r_tilde) return -1.0;
        d.back() = lo;
        if (log_f1(pk, times, horizon_T, d) >= t_r_tilde) return lo;
        double a = lo, b = hi;
        for (int k = 0; k < 100; ++k) {
            const double mid = 0.5 * (a + b);
            d.back() = mid;
            if (log_f1(pk, times, horizon_T, d) < t_r_tilde)
                a = mid;
            else
                b = mid;
        }
        return b;
    };

    double best_total = 0.0;
    std::vector<double> best_d;
    auto consider = [&](std::vector<double> d) {
        const double last = min_last(d);
        if (last < 0.0) return;
        d.back() = last;
        double total = 0.0;
        for (double x : d) total += x;
        if (best_d.empty() || total < best_total) {
            best_total = total;
            best_d = std::move(d);
        }
    };

    if (n == 1) {
        consider({0.0});
    } else if (n == 2) {
        for (int i = 0; i < points_per_dim; ++i)
            consider({lo + (hi - lo) * i / (points_per_dim - 1.0), 0.0});
    } else {
        for (int i = 0; i < points_per_dim; ++i)
            for (int j = 0; j < points_per_dim; ++j)
                consider({lo + (hi - lo) * i / (points_per_dim - 1.0),
                          lo + (hi - lo) * j / (points_per_dim - 1.0), 0.0});
    }

    if (best_d.empty())
        return make_report({}, 0.0, 0.0, 0, false, "no feasible grid point");
    return make_report(best_d, best_total, 0.0, 0, true, "grid optimum");
}

}  // namespace metrodose
