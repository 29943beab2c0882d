#include "metrodose/scheduler.hpp"

#include <cmath>
#include <stdexcept>

namespace metrodose {

Pattern::Pattern(int days_on_, int cycle_length_)
    : days_on(days_on_), cycle_length(cycle_length_) {
    if (days_on < 1 || days_on > cycle_length)
        throw std::invalid_argument("Pattern: need 1 <= days_on <= cycle_length");
    label = std::to_string(days_on) + "/" + std::to_string(cycle_length) + "d";
}

Pattern Pattern::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("Pattern: missing '/' in \"" + text + "\"");
    if (text.empty() || text.back() != 'd')
        throw std::invalid_argument("Pattern: missing trailing 'd' in \"" + text + "\"");
    int on = 0, cycle = 0;
    try {
        std::size_t used = 0;
        on = std::stoi(text.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("trailing");
        const std::string rest = text.substr(slash + 1, text.size() - slash - 2);
        cycle = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw std::invalid_argument("Pattern: cannot parse \"" + text +
                                    "\" (expected <on>/<cycle>d)");
    }
    return Pattern(on, cycle);
}

std::vector<double> expand_pattern(const Pattern& p, int n, double start_day) {
    if (n < 1) throw std::invalid_argument("expand_pattern: n must be >= 1");
    std::vector<double> days;
    days.reserve(n);
    for (int cycle = 0; static_cast<int>(days.size()) < n; ++cycle)
        for (int d = 0; d < p.days_on && static_cast<int>(days.size()) < n; ++d)
            days.push_back(start_day + cycle * p.cycle_length + d);
    return days;
}

int capacity(const Pattern& p, double horizon_T, double start_day) {
    if (!(horizon_T > start_day))
        throw std::invalid_argument("capacity: horizon_T must exceed start_day");
    int n = 0;
    for (int cycle = 0;; ++cycle) {
        for (int d = 0; d < p.days_on; ++d) {
            if (start_day + cycle * p.cycle_length + d >= horizon_T) return n;
            ++n;
        }
    }
}

double duration(const std::vector<double>& times) {
    if (times.empty()) throw std::invalid_argument("duration: empty time list");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("duration: times must be increasing");
    return times.back() - times.front() + 1.0;
}

double dose_intensity(double total, const std::vector<double>& times) {
    return total / duration(times);
}

}  // namespace metrodose
