#include "metrodose/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace metrodose {

RunConfig::RunConfig(DrugPK pk_, TumorModel tumor_, double horizon_T_, DoseBounds bounds_,
                     std::string pattern_)
    : pk(pk_), tumor(tumor_), horizon_T(horizon_T_), bounds(bounds_),
      pattern(std::move(pattern_)) {
    if (!(horizon_T > 0.0)) throw std::invalid_argument("RunConfig: T must be > 0");
    if (t1 < 0.0) throw std::invalid_argument("RunConfig: t1 must be >= 0");
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' has non-numeric value '" + value +
                                    "'");
    }
    if (used != value.size())
        throw std::invalid_argument("config: key '" + key + "' has trailing characters in '" +
                                    value + "'");
    return x;
}

}  // namespace

RunConfig load_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (kv.count(key))
            throw std::invalid_argument("config: duplicate key '" + key + "'");
        kv[key] = value;
    }

    static const char* known[] = {"lambda", "sigma", "k1", "k2", "xi", "l0_rel",
                                  "T", "t1", "d_min", "d_max", "D", "pattern",
                                  "l_star_rel", "optimality_tol", "max_iterations",
                                  "feasibility_tol"};
    for (const auto& [key, value] : kv) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    auto require = [&](const std::string& key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("config: missing required key '" + key + "'");
        return it->second;
    };
    auto num = [&](const std::string& key) { return to_number(key, require(key)); };

    DrugPK pk(num("lambda"), num("sigma"), num("k1"), num("k2"));
    TumorModel tumor(num("xi"), num("l0_rel"));
    std::optional<double> D;
    if (kv.count("D")) D = to_number("D", kv["D"]);
    DoseBounds bounds(num("d_min"), num("d_max"), D);
    RunConfig cfg(pk, tumor, num("T"), bounds, require("pattern"));
    if (kv.count("t1")) cfg.t1 = to_number("t1", kv["t1"]);
    if (cfg.t1 < 0.0) throw std::invalid_argument("config: t1 must be >= 0");
    if (kv.count("l_star_rel")) {
        cfg.l_star_rel = to_number("l_star_rel", kv["l_star_rel"]);
        if (!(*cfg.l_star_rel > 0.0 && *cfg.l_star_rel < 1.0))
            throw std::invalid_argument("config: l_star_rel must be in (0,1)");
    }
    if (kv.count("optimality_tol"))
        cfg.solver.optimality_tol = to_number("optimality_tol", kv["optimality_tol"]);
    if (kv.count("max_iterations")) {
        const double v = to_number("max_iterations", kv["max_iterations"]);
        if (v < 1.0 || v != std::floor(v))
            throw std::invalid_argument("config: max_iterations must be a positive integer");
        cfg.solver.max_iterations = static_cast<int>(v);
    }
    if (kv.count("feasibility_tol"))
        cfg.solver.feasibility_tol = to_number("feasibility_tol", kv["feasibility_tol"]);
    cfg.solver.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    return load_config(in);
}

void save_config(const RunConfig& cfg, std::ostream& out) {
    out.precision(17);
    out << "lambda = " << cfg.pk.lambda << "\n";
    out << "sigma = " << cfg.pk.sigma << "\n";
    out << "k1 = " << cfg.pk.k1 << "\n";
    out << "k2 = " << cfg.pk.k2 << "\n";
    out << "xi = " << cfg.tumor.xi << "\n";
    out << "l0_rel = " << cfg.tumor.l0_rel << "\n";
    out << "T = " << cfg.horizon_T << "\n";
    out << "t1 = " << cfg.t1 << "\n";
    out << "d_min = " << cfg.bounds.d_min << "\n";
    out << "d_max = " << cfg.bounds.d_max << "\n";
    if (cfg.bounds.cumulative_D) out << "D = " << *cfg.bounds.cumulative_D << "\n";
    out << "pattern = " << cfg.pattern << "\n";
    if (cfg.l_star_rel) out << "l_star_rel = " << *cfg.l_star_rel << "\n";
    out << "optimality_tol = " << cfg.solver.optimality_tol << "\n";
    out << "max_iterations = " << cfg.solver.max_iterations << "\n";
    out << "feasibility_tol = " << cfg.solver.feasibility_tol << "\n";
}

void save_config_file(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("config: cannot open '" + path + "' for writing");
    save_config(cfg, out);
}

}  // namespace metrodose
