#ifndef METRODOSE_CONFIG_HPP
#define METRODOSE_CONFIG_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "metrodose/nlp.hpp"
#include "metrodose/objective.hpp"
#include "metrodose/pkpd.hpp"

namespace metrodose {

/// Run parameters loaded from a flat `key = value` file (# comments).
/// Recognized keys: lambda, sigma, k1, k2, xi, l0_rel, T, t1, d_min, d_max,
/// D, pattern, l_star_rel, optimality_tol, max_iterations, feasibility_tol.
/// Unknown keys are rejected by name.
struct RunConfig {
    DrugPK pk;
    TumorModel tumor;
    double horizon_T;
    DoseBounds bounds;
    std::string pattern;
    double t1 = 0.0;
    std::optional<double> l_star_rel;
    SolverConfig solver;

    RunConfig(DrugPK pk_, TumorModel tumor_, double horizon_T_, DoseBounds bounds_,
              std::string pattern_);
};

RunConfig load_config(std::istream& in);
RunConfig load_config_file(const std::string& path);

void save_config(const RunConfig& cfg, std::ostream& out);
void save_config_file(const RunConfig& cfg, const std::string& path);

}  // namespace metrodose

#endif
