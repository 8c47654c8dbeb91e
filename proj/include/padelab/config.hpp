#ifndef PADELAB_CONFIG_HPP
#define PADELAB_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "padelab/convergence.hpp"
#include "padelab/schedule.hpp"
#include "padelab/sequence.hpp"
#include "padelab/series.hpp"

namespace padelab {

// Where the working radius R comes from.
enum class RadiusPolicy { Auto, Declared, Estimated, Fixed };

struct RadiusConfig {
    RadiusPolicy policy = RadiusPolicy::Auto;
    double value = 0.0; // Fixed
};

struct DetectorConfig {
    double margin = 0.2;
    double min_ratio_gap = 0.05;
    double c1 = 1.0;
    double c4 = 1.0;
    std::string tau_policy = "estimated"; // estimated | fixed
    double tau = 0.5;                     // fixed policy value
    std::vector<long> anchors;            // explicit override
    std::string anchor_source = "auto";   // auto | decay | gaps | explicit
    long min_anchor = 8;
};

struct OverconvConfig {
    bool enabled = false;
    std::string z0 = "auto"; // "auto" or "re,im"
    std::vector<double> radii{0.02, 0.05, 0.1, 0.2};
    double threshold = 1e-6;
    int n_radial = 24;
    int n_angular = 24;
    std::string source = "auto"; // auto | gaps | stationary | decay
};

struct TableConfig {
    long n_max = 4;
    long m_max = 2;
};

// Fully validated run configuration; together with the tool version it
// determines every artifact byte.
struct RunConfig {
    nlohmann::ordered_json echo; // parsed config, for the manifest

    std::string function_kind;
    RationalCatalogParams rational;
    BranchCatalogParams branch;
    LacunaryCatalogParams lacunary;
    TaylorGapParams taylor_gap;

    ScheduleRule schedule;
    long horizon = 40;
    int precision_bits = 256;
    double eps = 0.1;
    RadiusConfig radius;
    GridSpec grid;
    TableConfig table;
    DetectorConfig detectors;
    OverconvConfig overconv;
    std::vector<std::pair<Rational, Rational>> probes; // optional (re, im)
    double rates_tolerance = 0.05;
    uint64_t seed = 0;
    int threads = 1;
    std::string out_dir = "out";
};

// Parses and validates; unknown keys are errors naming the offending path.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const nlohmann::ordered_json& j);

PowerSeries build_series(const RunConfig& cfg);

} // namespace padelab

#endif
