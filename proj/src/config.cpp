#include "padelab/config.hpp"

#include <fstream>
#include <set>

#include "padelab/errors.hpp"

namespace padelab {

namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(path + ": unknown key '" + it.key() + "'");
}

double get_num(const json& j, const std::string& key, double dflt, const std::string& path) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number()) throw ConfigError(path + "." + key + ": expected a number");
    return j[key].get<double>();
}

long get_int(const json& j, const std::string& key, long dflt, const std::string& path) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number_integer()) throw ConfigError(path + "." + key + ": expected an integer");
    return j[key].get<long>();
}

std::string get_str(const json& j, const std::string& key, const std::string& dflt,
                    const std::string& path) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_string()) throw ConfigError(path + "." + key + ": expected a string");
    return j[key].get<std::string>();
}

Rational get_rat(const json& v, const std::string& path) {
    if (v.is_string()) return rational_from_string(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw ConfigError(path + ": expected an exact rational string");
}

std::pair<Rational, Rational> get_complex_rat(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2)
        throw ConfigError(path + ": expected [re, im] with exact rational strings");
    return {get_rat(v[0], path + "[0]"), get_rat(v[1], path + "[1]")};
}

Polynomial get_poly(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path + ": expected a coefficient array");
    std::vector<Rational> c;
    for (size_t i = 0; i < v.size(); ++i)
        c.push_back(get_rat(v[i], path + "[" + std::to_string(i) + "]"));
    return Polynomial(std::move(c));
}

void parse_function(const json& f, RunConfig& cfg) {
    const std::string path = "function";
    cfg.function_kind = get_str(f, "kind", "", path);
    if (cfg.function_kind == "rational" || cfg.function_kind == "geometric") {
        check_keys(f, {"kind", "poles", "residues", "polynomial"}, path);
        if (cfg.function_kind == "geometric") {
            cfg.rational.pole_re = {Rational(1)};
            cfg.rational.pole_im = {Rational(0)};
            cfg.rational.residue_re = {Rational(1)};
            cfg.rational.residue_im = {Rational(0)};
            return;
        }
        if (!f.contains("poles") || !f.contains("residues"))
            throw ConfigError("function: rational kind needs poles and residues");
        for (size_t i = 0; i < f["poles"].size(); ++i) {
            auto [re, im] = get_complex_rat(f["poles"][i], "function.poles");
            cfg.rational.pole_re.push_back(re);
            cfg.rational.pole_im.push_back(im);
        }
        for (size_t i = 0; i < f["residues"].size(); ++i) {
            auto [re, im] = get_complex_rat(f["residues"][i], "function.residues");
            cfg.rational.residue_re.push_back(re);
            cfg.rational.residue_im.push_back(im);
        }
        if (f.contains("polynomial"))
            cfg.rational.polynomial_part = get_poly(f["polynomial"], "function.polynomial");
    } else if (cfg.function_kind == "log-branch" || cfg.function_kind == "algebraic-branch") {
        check_keys(f, {"kind", "b", "alpha"}, path);
        if (f.contains("b")) cfg.branch.b = get_rat(f["b"], "function.b");
        if (f.contains("alpha")) cfg.branch.alpha = get_rat(f["alpha"], "function.alpha");
    } else if (cfg.function_kind == "lacunary-lemniscate") {
        check_keys(f, {"kind", "p", "gap_base", "c"}, path);
        if (!f.contains("p")) throw ConfigError("function: lacunary kind needs p");
        cfg.lacunary.p = get_poly(f["p"], "function.p");
        cfg.lacunary.gap_base = get_int(f, "gap_base", 2, path);
        if (f.contains("c")) cfg.lacunary.c = get_rat(f["c"], "function.c");
    } else if (cfg.function_kind == "taylor-gap") {
        check_keys(f, {"kind", "rate", "gaps"}, path);
        if (f.contains("rate")) cfg.taylor_gap.rate = get_rat(f["rate"], "function.rate");
        if (f.contains("gaps")) {
            for (const auto& g : f["gaps"]) {
                if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() ||
                    !g[1].is_number_integer())
                    throw ConfigError("function.gaps: expected [lo, hi] integer pairs");
                cfg.taylor_gap.gaps.emplace_back(g[0].get<long>(), g[1].get<long>());
            }
        }
    } else if (cfg.function_kind == "exp") {
        check_keys(f, {"kind"}, path);
    } else {
        throw ConfigError("function.kind: unknown kind '" + cfg.function_kind + "'");
    }
}

void parse_schedule(const json& s, RunConfig& cfg) {
    const std::string path = "schedule";
    check_keys(s, {"rule", "m", "c", "values"}, path);
    std::string rule = get_str(s, "rule", "constant", path);
    if (rule == "constant") {
        cfg.schedule.kind = ScheduleRule::Kind::Constant;
        cfg.schedule.m = get_int(s, "m", 1, path);
    } else if (rule == "sqrt") {
        cfg.schedule.kind = ScheduleRule::Kind::SqrtFloor;
        cfg.schedule.c = get_num(s, "c", 1.0, path);
    } else if (rule == "n-over-log2") {
        cfg.schedule.kind = ScheduleRule::Kind::NOverLogSq;
        cfg.schedule.c = get_num(s, "c", 1.0, path);
    } else if (rule == "explicit") {
        cfg.schedule.kind = ScheduleRule::Kind::Explicit;
        if (!s.contains("values")) throw ConfigError("schedule: explicit rule needs values");
        for (const auto& v : s["values"]) {
            if (!v.is_number_integer()) throw ConfigError("schedule.values: integers only");
            cfg.schedule.values.push_back(v.get<long>());
        }
    } else {
        throw ConfigError("schedule.rule: unknown rule '" + rule + "'");
    }
}

void parse_grid(const json& g, RunConfig& cfg) {
    const std::string path = "grid";
    check_keys(g,
               {"shape", "center", "radius", "inner_radius", "theta", "x", "y", "na", "nb",
                "jitter"},
               path);
    std::string shape = get_str(g, "shape", "disk", path);
    if (shape == "disk")
        cfg.grid.shape = GridShape::Disk;
    else if (shape == "annulus")
        cfg.grid.shape = GridShape::Annulus;
    else if (shape == "annular-sector")
        cfg.grid.shape = GridShape::AnnularSector;
    else if (shape == "rectangle")
        cfg.grid.shape = GridShape::Rectangle;
    else
        throw ConfigError("grid.shape: unknown shape '" + shape + "'");
    if (g.contains("center")) {
        auto [re, im] = get_complex_rat(g["center"], "grid.center");
        cfg.grid.center_re = re.get_d();
        cfg.grid.center_im = im.get_d();
    }
    cfg.grid.radius = get_num(g, "radius", 0.5, path);
    cfg.grid.inner_radius = get_num(g, "inner_radius", 0.0, path);
    if (g.contains("theta")) {
        if (!g["theta"].is_array() || g["theta"].size() != 2)
            throw ConfigError("grid.theta: expected [lo, hi]");
        cfg.grid.theta_lo = g["theta"][0].get<double>();
        cfg.grid.theta_hi = g["theta"][1].get<double>();
    }
    if (g.contains("x")) {
        cfg.grid.x_lo = g["x"][0].get<double>();
        cfg.grid.x_hi = g["x"][1].get<double>();
    }
    if (g.contains("y")) {
        cfg.grid.y_lo = g["y"][0].get<double>();
        cfg.grid.y_hi = g["y"][1].get<double>();
    }
    cfg.grid.n_a = static_cast<int>(get_int(g, "na", 64, path));
    cfg.grid.n_b = static_cast<int>(get_int(g, "nb", 64, path));
    cfg.grid.jitter = get_num(g, "jitter", 0.0, path);
}

} // namespace

RunConfig parse_config(const json& j) {
    RunConfig cfg;
    cfg.echo = j;
    check_keys(j,
               {"schema_version", "function", "schedule", "horizon", "precision_bits", "eps",
                "radius", "grid", "table", "detectors", "overconv", "probes",
                "rates_tolerance", "seed", "threads", "out_dir"},
               "config");
    if (get_int(j, "schema_version", 1, "config") != 1)
        throw ConfigError("schema_version: only version 1 is understood");

    if (!j.contains("function")) throw ConfigError("config: missing 'function'");
    parse_function(j["function"], cfg);
    if (j.contains("schedule")) parse_schedule(j["schedule"], cfg);

    cfg.horizon = get_int(j, "horizon", 40, "config");
    if (cfg.horizon < 1) throw ConfigError("horizon: must be >= 1");
    cfg.precision_bits = static_cast<int>(get_int(j, "precision_bits", 256, "config"));
    if (cfg.precision_bits < 64) throw ConfigError("precision_bits: must be >= 64");
    cfg.eps = get_num(j, "eps", 0.1, "config");
    if (!(cfg.eps > 0)) throw ConfigError("eps: must be positive");

    if (j.contains("radius")) {
        check_keys(j["radius"], {"policy", "value"}, "radius");
        std::string pol = get_str(j["radius"], "policy", "auto", "radius");
        if (pol == "auto")
            cfg.radius.policy = RadiusPolicy::Auto;
        else if (pol == "declared")
            cfg.radius.policy = RadiusPolicy::Declared;
        else if (pol == "estimated")
            cfg.radius.policy = RadiusPolicy::Estimated;
        else if (pol == "fixed")
            cfg.radius.policy = RadiusPolicy::Fixed;
        else
            throw ConfigError("radius.policy: unknown policy '" + pol + "'");
        cfg.radius.value = get_num(j["radius"], "value", 0.0, "radius");
        if (cfg.radius.policy == RadiusPolicy::Fixed && !(cfg.radius.value > 0))
            throw ConfigError("radius.value: fixed policy needs a positive value");
    }

    if (j.contains("grid")) parse_grid(j["grid"], cfg);
    cfg.grid.seed = cfg.seed;

    if (j.contains("table")) {
        check_keys(j["table"], {"n_max", "m_max"}, "table");
        cfg.table.n_max = get_int(j["table"], "n_max", 4, "table");
        cfg.table.m_max = get_int(j["table"], "m_max", 2, "table");
        if (cfg.table.n_max < 1 || cfg.table.m_max < 1)
            throw ConfigError("table: n_max and m_max must be >= 1");
    }

    if (j.contains("detectors")) {
        const json& d = j["detectors"];
        check_keys(d,
                   {"margin", "min_ratio_gap", "c1", "c4", "tau_policy", "tau", "anchors",
                    "anchor_source", "min_anchor"},
                   "detectors");
        cfg.detectors.margin = get_num(d, "margin", 0.2, "detectors");
        if (!(cfg.detectors.margin > 0 && cfg.detectors.margin < 1))
            throw ConfigError("detectors.margin: must lie in (0,1)");
        cfg.detectors.min_ratio_gap = get_num(d, "min_ratio_gap", 0.05, "detectors");
        cfg.detectors.c1 = get_num(d, "c1", 1.0, "detectors");
        cfg.detectors.c4 = get_num(d, "c4", 1.0, "detectors");
        cfg.detectors.tau_policy = get_str(d, "tau_policy", "estimated", "detectors");
        if (cfg.detectors.tau_policy != "estimated" && cfg.detectors.tau_policy != "fixed")
            throw ConfigError("detectors.tau_policy: must be 'estimated' or 'fixed'");
        cfg.detectors.tau = get_num(d, "tau", 0.5, "detectors");
        cfg.detectors.anchor_source = get_str(d, "anchor_source", "auto", "detectors");
        cfg.detectors.min_anchor = get_int(d, "min_anchor", 8, "detectors");
        if (d.contains("anchors"))
            for (const auto& a : d["anchors"]) cfg.detectors.anchors.push_back(a.get<long>());
    }

    if (j.contains("overconv")) {
        const json& o = j["overconv"];
        check_keys(o, {"z0", "radii", "threshold", "nr", "ntheta", "source"}, "overconv");
        cfg.overconv.enabled = true;
        if (o.contains("z0")) {
            if (o["z0"].is_string())
                cfg.overconv.z0 = o["z0"].get<std::string>();
            else {
                auto [re, im] = get_complex_rat(o["z0"], "overconv.z0");
                cfg.overconv.z0 = rational_to_string(re) + "," + rational_to_string(im);
            }
        }
        if (o.contains("radii")) {
            cfg.overconv.radii.clear();
            for (const auto& r : o["radii"]) cfg.overconv.radii.push_back(r.get<double>());
        }
        cfg.overconv.threshold = get_num(o, "threshold", 1e-6, "overconv");
        cfg.overconv.n_radial = static_cast<int>(get_int(o, "nr", 24, "overconv"));
        cfg.overconv.n_angular = static_cast<int>(get_int(o, "ntheta", 24, "overconv"));
        cfg.overconv.source = get_str(o, "source", "auto", "overconv");
    }

    if (j.contains("probes"))
        for (const auto& p : j["probes"])
            cfg.probes.push_back(get_complex_rat(p, "probes"));

    cfg.rates_tolerance = get_num(j, "rates_tolerance", 0.05, "config");
    cfg.seed = static_cast<uint64_t>(get_int(j, "seed", 0, "config"));
    cfg.grid.seed = cfg.seed;
    cfg.threads = static_cast<int>(get_int(j, "threads", 1, "config"));
    cfg.out_dir = get_str(j, "out_dir", "out", "config");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in, nullptr, true, true); // allow comments
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

PowerSeries build_series(const RunConfig& cfg) {
    if (cfg.function_kind == "rational" || cfg.function_kind == "geometric")
        return make_rational_series(cfg.rational);
    if (cfg.function_kind == "log-branch") return make_log_branch(cfg.branch);
    if (cfg.function_kind == "algebraic-branch") return make_algebraic_branch(cfg.branch);
    if (cfg.function_kind == "lacunary-lemniscate") return make_lacunary_lemniscate(cfg.lacunary);
    if (cfg.function_kind == "taylor-gap") return make_taylor_gap(cfg.taylor_gap);
    if (cfg.function_kind == "exp") return make_exp_series();
    throw ConfigError("function.kind: unknown kind '" + cfg.function_kind + "'");
}

} // namespace padelab
