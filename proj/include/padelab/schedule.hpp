#ifndef PADELAB_SCHEDULE_HPP
#define PADELAB_SCHEDULE_HPP

#include <string>
#include <vector>

namespace padelab {

enum class GrowthClass { Constant, SublinearOverLog, Sublinear, Unknown };

std::string growth_class_name(GrowthClass g);

struct ScheduleRule {
    enum class Kind { Constant, SqrtFloor, NOverLogSq, Explicit } kind = Kind::Constant;
    long m = 0;          // Constant
    double c = 1.0;      // SqrtFloor / NOverLogSq scale
    std::vector<long> values; // Explicit
};

// Close-to-row ray schedule: m_n <= n and m_n <= m_{n+1} <= m_n + 1.
struct RaySchedule {
    ScheduleRule rule;
    std::vector<long> m; // index n = 0 .. horizon
    GrowthClass growth = GrowthClass::Unknown;

    long horizon() const { return static_cast<long>(m.size()) - 1; }
    long at(long n) const { return m.at(static_cast<size_t>(n)); }
};

// Materializes m_n for n = 0..horizon.  Formula rules are clipped so that
// consecutive values never jump by more than one and never exceed n;
// explicit lists violating the constraints raise ScheduleError.
RaySchedule build_schedule(const ScheduleRule& rule, long horizon);

} // namespace padelab

#endif
