#include "padelab/schedule.hpp"

#include <cmath>

#include "padelab/errors.hpp"

namespace padelab {

std::string growth_class_name(GrowthClass g) {
    switch (g) {
        case GrowthClass::Constant: return "constant";
        case GrowthClass::SublinearOverLog: return "o(n/log n)";
        case GrowthClass::Sublinear: return "o(n)";
        default: return "unknown";
    }
}

RaySchedule build_schedule(const ScheduleRule& rule, long horizon) {
    if (horizon < 1) throw ScheduleError("schedule horizon must be >= 1");
    RaySchedule s;
    s.rule = rule;

    auto raw = [&rule](long n) -> long {
        switch (rule.kind) {
            case ScheduleRule::Kind::Constant:
                return rule.m;
            case ScheduleRule::Kind::SqrtFloor:
                return static_cast<long>(std::floor(rule.c * std::sqrt(static_cast<double>(n))));
            case ScheduleRule::Kind::NOverLogSq: {
                double l = std::log(static_cast<double>(n) + 2.0);
                return static_cast<long>(std::floor(rule.c * static_cast<double>(n) / (l * l)));
            }
            case ScheduleRule::Kind::Explicit:
                if (n >= static_cast<long>(rule.values.size()))
                    throw ScheduleError("explicit schedule shorter than the horizon");
                return rule.values[static_cast<size_t>(n)];
        }
        return 0;
    };

    if (rule.kind == ScheduleRule::Kind::Constant && rule.m < 0)
        throw ScheduleError("constant schedule needs m >= 0");
    if ((rule.kind == ScheduleRule::Kind::SqrtFloor ||
         rule.kind == ScheduleRule::Kind::NOverLogSq) && rule.c <= 0)
        throw ScheduleError("schedule scale c must be positive");

    s.m.resize(static_cast<size_t>(horizon) + 1);
    for (long n = 0; n <= horizon; ++n) {
        long v = raw(n);
        if (rule.kind == ScheduleRule::Kind::Explicit) {
            // explicit lists must already satisfy the constraints
            if (v < 0 || v > n)
                throw ScheduleError("explicit schedule violates 0 <= m_n <= n at n=" +
                                    std::to_string(n));
            if (n > 0) {
                long prev = s.m[static_cast<size_t>(n - 1)];
                if (v < prev || v > prev + 1)
                    throw ScheduleError("explicit schedule violates m_n <= m_{n+1} <= m_n+1 at n=" +
                                        std::to_string(n));
            }
        } else {
            if (n > 0) v = std::min(v, s.m[static_cast<size_t>(n - 1)] + 1);
            v = std::min(v, n);
            if (v < 0) v = 0;
        }
        s.m[static_cast<size_t>(n)] = v;
    }

    switch (rule.kind) {
        case ScheduleRule::Kind::Constant:
            s.growth = GrowthClass::Constant;
            break;
        case ScheduleRule::Kind::SqrtFloor:
        case ScheduleRule::Kind::NOverLogSq:
            s.growth = GrowthClass::SublinearOverLog;
            break;
        case ScheduleRule::Kind::Explicit: {
            // a finite list only certifies constancy; anything else is unknown
            bool flat = true;
            for (size_t i = 1; i < s.m.size(); ++i)
                if (s.m[i] != s.m[0]) flat = false;
            s.growth = flat ? GrowthClass::Constant : GrowthClass::Unknown;
            break;
        }
    }
    return s;
}

} // namespace padelab
