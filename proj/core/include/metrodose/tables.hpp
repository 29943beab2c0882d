#ifndef METRODOSE_TABLES_HPP
#define METRODOSE_TABLES_HPP

#include <string>
#include <vector>

#include "metrodose/config.hpp"

namespace metrodose::tables {

/// One compared value of a regenerated reference table.
struct Cell {
    std::string row;
    std::string col;
    double expected = 0.0;
    double actual = 0.0;
    double tol = 0.0;
    bool upper_bound = false;  // pass iff actual <= expected + tol
    bool pass = false;
    double deviation() const;
};

struct TableReport {
    int table_id = 0;
    std::string csv;  // regenerated table
    std::vector<Cell> cells;
    std::vector<std::string> notes;  // solver non-convergence etc.
    bool all_pass = false;
    double max_deviation = 0.0;
};

/// Embedded TMZ benchmark parameters (the configuration behind tables 2-5).
const RunConfig& tmz_reference_config();

/// Regenerates reference table 2, 3, 4 or 5 and diffs it against the
/// embedded expected values at the documented tolerances.
TableReport reproduce_table(int table_id);

/// Expected-value rows as CSV text, for consistency checks against the
/// shipped data/tables/*.csv assets.
std::string expected_csv(int table_id);

}  // namespace metrodose::tables

#endif
