#ifndef PADELAB_RUNNER_HPP
#define PADELAB_RUNNER_HPP

#include <string>
#include <vector>

#include "padelab/config.hpp"

namespace padelab {

inline constexpr const char* kToolVersion = "padelab 0.1.0";
inline constexpr int kSchemaVersion = 1;

// Resolved working radius with provenance (declared | estimated | fixed).
struct WorkingRadius {
    double value = 0.0; // may be +inf
    std::string provenance;
};

// R for the run: a constant-m schedule targets R_m, growing schedules R(f).
WorkingRadius resolve_radius(const RunConfig& cfg, const PowerSeries& f,
                             const RaySchedule& schedule);

// Each command writes its artifacts plus <cmd>_manifest.json under out_dir
// and returns the artifact file names (manifest last).
std::vector<std::string> cmd_table(const RunConfig& cfg);
std::vector<std::string> cmd_ray(const RunConfig& cfg);
std::vector<std::string> cmd_windows(const RunConfig& cfg);
std::vector<std::string> cmd_overconv(const RunConfig& cfg);

// Dispatch by name; unknown command raises ConfigError.
std::vector<std::string> run_command(const std::string& command, const RunConfig& cfg);

// Serialization helpers shared by artifacts and tests: scientific notation,
// round-to-nearest, digit count derived from the working precision.
std::string format_hp(const HPReal& x);
std::string format_double(double x);

} // namespace padelab

#endif
