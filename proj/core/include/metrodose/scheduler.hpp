#ifndef METRODOSE_SCHEDULER_HPP
#define METRODOSE_SCHEDULER_HPP

#include <string>
#include <vector>

namespace metrodose {

/// Named oncology administration pattern: `days_on` consecutive dosing days
/// out of every `cycle_length`-day cycle, e.g. "5/28d".
struct Pattern {
    int days_on;
    int cycle_length;
    std::string label;

    Pattern(int days_on_, int cycle_length_);

    /// Parses "<on>/<cycle>d", e.g. "21/28d".
    static Pattern parse(const std::string& text);

    /// Minimum gap between consecutive dosing days: 1 for multi-day
    /// on-blocks, otherwise the cycle length.
    double min_gap() const { return days_on >= 2 ? 1.0 : cycle_length; }
};

/// First n dosing days of the repeating pattern, starting at start_day.
std::vector<double> expand_pattern(const Pattern& p, int n, double start_day = 0.0);

/// Largest n whose dosing days all fall strictly before horizon_T.
int capacity(const Pattern& p, double horizon_T, double start_day = 0.0);

/// Inclusive day count last - first + 1.
double duration(const std::vector<double>& times);

/// Total administered dose divided by the treatment duration.
double dose_intensity(double total, const std::vector<double>& times);

}  // namespace metrodose

#endif
