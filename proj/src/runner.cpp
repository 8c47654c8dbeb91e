#include "padelab/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "padelab/errors.hpp"
#include "padelab/stats.hpp"

namespace padelab {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_hp(const HPReal& x) {
    if (x.is_nan()) return "nan";
    if (x.is_inf()) return x.sgn() > 0 ? "inf" : "-inf";
    int digits = static_cast<int>(std::ceil(default_precision() * 0.30102999566398)) + 2;
    return x.str(digits);
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17e", x);
    return std::string(buf);
}

namespace {

// Collects phases and artifact digests; written once at start (running) and
// once finalized.  Timing fields vary run to run; the data artifacts do not.
class ManifestWriter {
public:
    ManifestWriter(const fs::path& dir, const std::string& command, const json& echo)
        : dir_(dir), file_(dir / (command + "_manifest.json")) {
        j_["schema_version"] = kSchemaVersion;
        j_["tool_version"] = kToolVersion;
        j_["command"] = command;
        j_["status"] = "running";
        j_["config"] = echo;
        j_["phases"] = json::array();
        j_["artifacts"] = json::array();
        flush();
    }

    void begin_phase(const std::string& name) {
        phase_name_ = name;
        phase_start_ = std::chrono::steady_clock::now();
    }

    void end_phase(const std::string& status = "ok") {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - phase_start_)
                      .count();
        j_["phases"].push_back(
            {{"name", phase_name_}, {"wall_ms", ms}, {"status", status}});
    }

    // Writes the artifact and records its content digest.
    void add_artifact(const std::string& name, const std::string& bytes) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw ConfigError("cannot write artifact: " + (dir_ / name).string());
        out << bytes;
        j_["artifacts"].push_back({{"name", name}, {"fnv1a64", fnv1a64_hex(bytes)}});
        names_.push_back(name);
    }

    std::vector<std::string> finalize() {
        j_["status"] = "complete";
        flush();
        names_.push_back(file_.filename().string());
        return names_;
    }

private:
    void flush() {
        std::ofstream out(file_, std::ios::binary);
        if (!out) throw ConfigError("cannot write manifest: " + file_.string());
        out << j_.dump(2) << "\n";
    }

    fs::path dir_, file_;
    json j_;
    std::string phase_name_;
    std::chrono::steady_clock::time_point phase_start_;
    std::vector<std::string> names_;
};

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

// Digest of the semantic config payload: execution-only keys (out_dir,
// threads) do not change artifact bytes and stay out of the digest.
std::string config_digest(const RunConfig& cfg) {
    json j = cfg.echo;
    j.erase("out_dir");
    j.erase("threads");
    return fnv1a64_hex(j.dump());
}

std::string csv_header(const RunConfig& cfg, const std::string& columns_doc) {
    std::ostringstream os;
    os << "# " << kToolVersion << "\n";
    os << "# config fnv1a64 (out_dir/threads excluded): " << config_digest(cfg) << "\n";
    os << "# precision bits: " << cfg.precision_bits
       << "; floats: scientific, round-to-nearest, "
       << (static_cast<int>(std::ceil(cfg.precision_bits * 0.30102999566398)) + 2)
       << " digits for HP, 17 for double\n";
    os << "# " << columns_doc << "\n";
    return os.str();
}

// ---- shared ray pipeline ---------------------------------------------------

struct RayData {
    RaySchedule schedule;
    WorkingRadius radius;
    std::vector<PadeEntry> entries; // n = 0..horizon, normalized
};

RayData compute_ray(const RunConfig& cfg, const PowerSeries& f) {
    RayData d;
    d.schedule = build_schedule(cfg.schedule, cfg.horizon);
    d.radius = resolve_radius(cfg, f, d.schedule);
    long h = cfg.horizon;
    (void)f.taylor(h + d.schedule.m.back() + 1); // warm the coefficient cache
    d.entries.resize(static_cast<size_t>(h) + 1);
    parallel_for(static_cast<size_t>(h) + 1, cfg.threads, [&](size_t i) {
        long n = static_cast<long>(i);
        PadeEntry e = pade(f, n, d.schedule.at(n));
        e.normalized = normalize_denominator(e, d.radius.value, d.radius.provenance);
        d.entries[i] = std::move(e);
    });
    return d;
}

// |kappa_n kappa_{n+1} A_exact|^{1/n}: the paper-frame A_n magnitude profile.
struct DiffStat {
    bool defined = false;
    bool monomial = false;
    long exponent = 0;
    double abs_A_pow = 0.0;
};

DiffStat diff_stat(const PadeEntry& a, const PadeEntry& b) {
    DiffStat s;
    if (!a.normalized || !b.normalized) return s;
    DifferenceMonomial d = exact_difference_coefficient(a, b);
    s.defined = true;
    s.monomial = d.is_monomial;
    s.exponent = d.exponent;
    if (is_zero(d.coefficient)) {
        s.abs_A_pow = 0.0;
        return s;
    }
    double l2 = log2_abs(d.coefficient);
    HPReal k = abs(a.normalized->kappa() * b.normalized->kappa());
    if (!k.is_zero()) l2 += log2(k).to_double();
    s.abs_A_pow = a.n >= 1 ? std::exp2(l2 / static_cast<double>(a.n)) : 0.0;
    return s;
}

std::vector<HPComplex> probe_points(const RunConfig& cfg, double R) {
    std::vector<HPComplex> pts;
    for (auto& [re, im] : cfg.probes) pts.emplace_back(HPReal(re), HPReal(im));
    if (!pts.empty()) return pts;
    double s = std::isfinite(R) ? 0.6 * R : 0.6;
    pts.emplace_back(0.5 * s, 0.0);
    pts.emplace_back(0.25 * s, 0.33 * s);
    pts.emplace_back(-0.4 * s, -0.2 * s);
    return pts;
}

json window_json(const Window& w) {
    return {{"n_lo", w.n_lo}, {"n_hi", w.n_hi}, {"ratio", w.ratio}};
}

std::vector<long> select_anchors(const RunConfig& cfg, const GapScanReport& gaps,
                                 const DecayScanReport& decay) {
    std::vector<long> anchors;
    const std::string& src = cfg.detectors.anchor_source;
    if (src == "explicit" || !cfg.detectors.anchors.empty()) {
        anchors = cfg.detectors.anchors;
    } else if (src == "gaps") {
        for (const auto& w : gaps.windows) anchors.push_back(w.n_hi);
    } else if (src == "decay") {
        for (const auto& w : decay.windows) anchors.push_back(w.n_hi);
    } else { // auto: prefer decay evidence, fall back to gap ends
        for (const auto& w : decay.windows) anchors.push_back(w.n_hi);
        if (anchors.empty())
            for (const auto& w : gaps.windows) anchors.push_back(w.n_hi);
    }
    std::vector<long> out;
    for (long a : anchors)
        if (a >= cfg.detectors.min_anchor && a <= cfg.horizon) out.push_back(a);
    return out;
}

} // namespace

WorkingRadius resolve_radius(const RunConfig& cfg, const PowerSeries& f,
                             const RaySchedule& schedule) {
    if (cfg.radius.policy == RadiusPolicy::Fixed)
        return {cfg.radius.value, "fixed"};

    bool row = schedule.growth == GrowthClass::Constant;
    long m_row = schedule.m.empty() ? 0 : schedule.m.back();

    auto declared = [&]() -> std::optional<double> {
        if (row) return f.meta().radius_for_m(m_row);
        if (f.meta().r_meromorphy) return f.meta().r_meromorphy;
        return std::nullopt;
    };
    auto estimated = [&]() -> double {
        long N = std::max<long>(64, cfg.horizon);
        RadiusEstimate e = row ? estimate_rm(f, m_row, N)
                               : estimate_r_meromorphy(f, m_row + 4, N);
        return e.value.is_inf() ? kInfRadius : e.value.to_double();
    };

    switch (cfg.radius.policy) {
        case RadiusPolicy::Declared: {
            auto d = declared();
            if (!d) throw CapabilityError("radius policy 'declared' but no declared radius");
            return {*d, "declared"};
        }
        case RadiusPolicy::Estimated:
            return {estimated(), "estimated"};
        default: { // Auto
            auto d = declared();
            if (d) return {*d, "declared"};
            return {estimated(), "estimated"};
        }
    }
}

// ---- table -------------------------------------------------------------------

std::vector<std::string> cmd_table(const RunConfig& cfg) {
    set_default_precision(cfg.precision_bits);
    fs::path dir = prepare_out_dir(cfg);
    ManifestWriter man(dir, "table", cfg.echo);

    man.begin_phase("scan");
    PowerSeries f = build_series(cfg);
    TableScan scan = block_scan(f, cfg.table.n_max, cfg.table.m_max, cfg.threads);
    man.end_phase();

    man.begin_phase("write");
    // block anchor lookup per cell
    std::ostringstream csv;
    csv << csv_header(cfg, "columns: n,m,deg_p,deg_q,tau,a_lead,anchor_n,anchor_m");
    csv << "n,m,deg_p,deg_q,tau,a_lead,anchor_n,anchor_m\n";
    for (long n = 0; n <= cfg.table.n_max; ++n)
        for (long m = 0; m <= cfg.table.m_max; ++m) {
            const PadeEntry& e = scan.at(n, m);
            const Block* owner = nullptr;
            for (const auto& b : scan.blocks)
                if (b.contains(n, m)) owner = &b;
            csv << n << "," << m << "," << e.deg_p() << "," << e.q.degree() << ","
                << e.defect << "," << rational_to_string(e.a_lead) << ","
                << (owner ? owner->n0 : n) << "," << (owner ? owner->m0 : m) << "\n";
        }
    man.add_artifact("table.csv", csv.str());

    json jb;
    jb["schema_version"] = kSchemaVersion;
    jb["tool_version"] = kToolVersion;
    jb["n_max"] = cfg.table.n_max;
    jb["m_max"] = cfg.table.m_max;
    jb["blocks"] = json::array();
    for (const auto& b : scan.blocks)
        jb["blocks"].push_back({{"anchor_n", b.n0},
                                {"anchor_m", b.m0},
                                {"extent_n", b.extent_n},
                                {"extent_m", b.extent_m},
                                {"extent", b.extent()},
                                {"clipped", b.clipped},
                                {"cells", b.members.size()}});
    man.add_artifact("blocks.json", jb.dump(2) + "\n");
    man.end_phase();
    return man.finalize();
}

// ---- ray ----------------------------------------------------------------------

std::vector<std::string> cmd_ray(const RunConfig& cfg) {
    set_default_precision(cfg.precision_bits);
    fs::path dir = prepare_out_dir(cfg);
    ManifestWriter man(dir, "ray", cfg.echo);

    man.begin_phase("entries");
    PowerSeries f = build_series(cfg);
    RayData ray = compute_ray(cfg, f);
    man.end_phase();

    man.begin_phase("identities");
    DecayProfile prof = decay_profile(ray.entries, ray.radius.value, ray.radius.provenance);
    std::vector<HPComplex> probes = probe_points(cfg, ray.radius.value);
    long h = cfg.horizon;

    std::ostringstream csv;
    csv << csv_header(cfg,
                      "columns: n,m_n,tau_n,abs_a_pow (|[z^n]P_n kappa_n|^{1/n}; empty when "
                      "flagged),a_flag,abs_A_pow (paper-frame |A_n|^{1/n}),A_monomial,"
                      "resid_1,resid_2,resid_3 (|difference-identity residual| at the probes; "
                      "empty when tau pair nonzero or probe near a pole)");
    csv << "# radius R = " << format_double(ray.radius.value) << " (" << ray.radius.provenance
        << ")\n";
    for (size_t i = 0; i < probes.size(); ++i)
        csv << "# probe_" << (i + 1) << " = " << format_hp(probes[i].re) << " + "
            << format_hp(probes[i].im) << " i\n";
    csv << "n,m_n,tau_n,abs_a_pow,a_flag,abs_A_pow,A_monomial,resid_1,resid_2,resid_3\n";

    std::ostringstream plot;
    plot << "# x: n; y1: |a_n|^{1/n} (0 when flagged); y2: paper-frame |A_n|^{1/n}\n";
    plot << "n,abs_a_pow,abs_A_pow\n";

    for (long n = 0; n <= h; ++n) {
        const PadeEntry& e = ray.entries[static_cast<size_t>(n)];
        const char* flag = prof.flags[static_cast<size_t>(n)] == ProfileFlag::Ok          ? "ok"
                           : prof.flags[static_cast<size_t>(n)] == ProfileFlag::ZeroCoeff ? "zero"
                           : prof.flags[static_cast<size_t>(n)] == ProfileFlag::BlockRepeat
                               ? "block"
                               : "skip";
        csv << n << "," << ray.schedule.at(n) << "," << e.defect << ",";
        if (prof.flags[static_cast<size_t>(n)] == ProfileFlag::Ok)
            csv << format_double(prof.values[static_cast<size_t>(n)]);
        csv << "," << flag << ",";

        DiffStat ds;
        if (n < h) ds = diff_stat(e, ray.entries[static_cast<size_t>(n + 1)]);
        if (ds.defined) csv << format_double(ds.abs_A_pow);
        csv << "," << (ds.defined ? (ds.monomial ? "1" : "0") : "");

        for (const auto& z : probes) {
            csv << ",";
            if (n >= h) continue;
            const PadeEntry& e1 = ray.entries[static_cast<size_t>(n + 1)];
            if (e.defect != 0 || e1.defect != 0) continue; // identity stated for tau = 0
            try {
                HPComplex A = A_coefficient(e, e1, *e.normalized, *e1.normalized);
                HPComplex r =
                    difference_identity_residual(e, e1, *e.normalized, *e1.normalized, A, z);
                csv << format_hp(abs(r));
            } catch (const DomainError&) {
                // probe too close to a free pole: leave the cell empty
            }
        }
        csv << "\n";
        plot << n << "," << format_double(prof.values[static_cast<size_t>(n)]) << ","
             << format_double(ds.defined ? ds.abs_A_pow : 0.0) << "\n";
    }
    man.end_phase();

    man.begin_phase("write");
    man.add_artifact("ray.csv", csv.str());
    man.add_artifact("ray_decay.plot.csv", plot.str());
    man.end_phase();
    return man.finalize();
}

// ---- windows --------------------------------------------------------------------

std::vector<std::string> cmd_windows(const RunConfig& cfg) {
    set_default_precision(cfg.precision_bits);
    fs::path dir = prepare_out_dir(cfg);
    ManifestWriter man(dir, "windows", cfg.echo);

    man.begin_phase("entries");
    PowerSeries f = build_series(cfg);
    RayData ray = compute_ray(cfg, f);
    man.end_phase();

    man.begin_phase("detectors");
    DecayProfile prof = decay_profile(ray.entries, ray.radius.value, ray.radius.provenance);
    GapScanReport gaps = detect_coeff_gaps(f, cfg.horizon);
    DecayScanReport decay =
        detect_decay_windows(prof, cfg.detectors.margin, cfg.detectors.min_ratio_gap);
    StationaryScanReport stat = detect_stationary_runs(ray.entries);

    json jw;
    jw["schema_version"] = kSchemaVersion;
    jw["tool_version"] = kToolVersion;
    jw["radius"] = {{"value", ray.radius.value}, {"provenance", ray.radius.provenance}};
    jw["coeff_gaps"] = {{"windows", json::array()},
                        {"case_a_ratio_to_zero", gaps.case_a},
                        {"case_b_limsup_lt_1", gaps.case_b},
                        {"max_ratio", gaps.max_ratio},
                        {"last_ratio", gaps.last_ratio},
                        {"in_window_decay", gaps.in_window_decay}};
    for (const auto& w : gaps.windows) jw["coeff_gaps"]["windows"].push_back(window_json(w));
    jw["decay"] = {{"windows", json::array()}, {"min_ratio", decay.min_ratio}};
    for (const auto& w : decay.windows) jw["decay"]["windows"].push_back(window_json(w));
    jw["stationary"] = {{"windows", json::array()},
                        {"case_a_ratio_to_zero", stat.case_a},
                        {"case_b_limsup_lt_1", stat.case_b}};
    for (const auto& w : stat.windows) jw["stationary"]["windows"].push_back(window_json(w));

    // Theorem 6 conclusion on the decay-window union, against both radii
    {
        std::vector<long> lambda;
        for (const auto& w : decay.windows)
            for (long n = w.n_lo; n <= w.n_hi; ++n) lambda.push_back(n);
        if (!lambda.empty()) {
            double rf = f.meta().r_meromorphy.value_or(ray.radius.value);
            Theorem6Report t6 = theorem6_conclusion_check(prof, lambda, ray.radius.value, rf);
            jw["theorem6"] = {{"limsup_estimate", t6.limsup_estimate},
                              {"below_inv_rm", t6.below_inv_rm},
                              {"below_inv_rf", t6.below_inv_rf},
                              {"samples", t6.samples},
                              {"note", "hypothesis names R_m, conclusion R(f); both reported"}};
        } else {
            jw["theorem6"] = {{"status", "no decay windows"}};
        }
    }
    man.end_phase();

    man.begin_phase("psi");
    std::ostringstream psi_csv;
    psi_csv << csv_header(cfg, "columns: n_k,l_k,psi_at_l,skipped,skip_reason,profile_agrees");
    psi_csv << "n_k,l_k,psi_at_l,skipped,skip_reason,profile_agrees\n";
    std::vector<long> anchors = select_anchors(cfg, gaps, decay);
    if (anchors.empty() || !std::isfinite(ray.radius.value) || !(ray.radius.value > 0)) {
        jw["theorem9"] = {{"status", anchors.empty()
                                         ? "no anchors found"
                                         : "R_m not finite; psi windows undefined"}};
    } else {
        PsiParams prm{cfg.detectors.c1, cfg.detectors.c4, ray.schedule.m.back(),
                      cfg.detectors.tau_policy == "fixed" ? cfg.detectors.tau : 0.0};
        try {
            Theorem9Report t9 = theorem9_window_search(prof, anchors, prm, ray.radius.value);
            json ja = json::array();
            for (const auto& w : t9.windows) {
                ja.push_back({{"n_k", w.n_k},
                              {"l_k", w.l_k},
                              {"psi_at_l", w.psi_at_l},
                              {"skipped", w.skipped},
                              {"profile_agrees", w.profile_agrees}});
                psi_csv << w.n_k << "," << w.l_k << "," << format_double(w.psi_at_l) << ","
                        << (w.skipped ? 1 : 0) << "," << w.skip_reason << ","
                        << (w.profile_agrees ? 1 : 0) << "\n";
            }
            jw["theorem9"] = {{"tau", t9.tau}, {"tau_source", t9.tau_source}, {"anchors", ja}};
            // constant sensitivity: C1, C4 scaled by 10 and 0.1 (clamped to >= 1)
            json sens = json::array();
            for (double scale : {10.0, 0.1}) {
                PsiParams sp = prm;
                sp.c1 = std::max(1.0, cfg.detectors.c1 * scale);
                sp.c4 = std::max(1.0, cfg.detectors.c4 * scale);
                sp.tau = t9.tau;
                Theorem9Report ts = theorem9_window_search(prof, anchors, sp, ray.radius.value);
                json jl = json::array();
                for (const auto& w : ts.windows)
                    jl.push_back({{"n_k", w.n_k}, {"l_k", w.l_k}, {"skipped", w.skipped}});
                sens.push_back({{"scale", scale},
                                {"c1", sp.c1},
                                {"c4", sp.c4},
                                {"anchors", jl}});
            }
            jw["theorem9"]["sensitivity"] = sens;
        } catch (const DomainError& e) {
            jw["theorem9"] = {{"status", std::string("skipped: ") + e.what()}};
        }
    }
    man.end_phase();

    man.begin_phase("write");
    man.add_artifact("windows.json", jw.dump(2) + "\n");
    man.add_artifact("psi.csv", psi_csv.str());
    man.end_phase();
    return man.finalize();
}

// ---- overconv -------------------------------------------------------------------

std::vector<std::string> cmd_overconv(const RunConfig& cfg) {
    set_default_precision(cfg.precision_bits);
    fs::path dir = prepare_out_dir(cfg);
    ManifestWriter man(dir, "overconv", cfg.echo);

    man.begin_phase("entries");
    PowerSeries f = build_series(cfg);
    if (!f.has_reference())
        throw CapabilityError("overconv: the function has no reference evaluator");
    RayData ray = compute_ray(cfg, f);
    ExclusionSet excl = omega_disks(ray.entries, cfg.eps);
    man.end_phase();

    man.begin_phase("grid-errors");
    GridSpec gspec = cfg.grid;
    gspec.seed = cfg.seed;
    CompactGrid grid = make_grid(gspec, &excl);
    ConvergenceReport rep = grid_errors(f, ray.entries, grid, ray.radius.value,
                                        ray.radius.provenance, cfg.rates_tolerance,
                                        cfg.threads);

    std::ostringstream conv;
    conv << csv_header(cfg,
                       "columns: n,log2_sup_err (-inf when exact),sup_err_approx (double, may "
                       "underflow to 0),retained,skipped");
    conv << "# sigma_bound = " << format_double(excl.sigma_bound) << " < eps = "
         << format_double(excl.eps) << "; exclusion disks truncated at n = "
         << excl.n_truncation << " (computed entries only)\n";
    conv << "n,log2_sup_err,sup_err_approx,retained,skipped\n";
    std::ostringstream plot;
    plot << "# x: n; y: log10 sup-error over the retained grid\n";
    plot << "n,log10_sup_err\n";
    for (size_t i = 0; i < rep.n.size(); ++i) {
        conv << rep.n[i] << "," << format_double(rep.log2_sup_err[i]) << ","
             << format_double(std::exp2(rep.log2_sup_err[i])) << "," << rep.retained[i] << ","
             << rep.skipped[i] << "\n";
        plot << rep.n[i] << "," << format_double(rep.log2_sup_err[i] * 0.30102999566398) << "\n";
    }
    man.add_artifact("convergence.csv", conv.str());
    man.add_artifact("convergence.plot.csv", plot.str());

    json jr;
    jr["schema_version"] = kSchemaVersion;
    jr["tool_version"] = kToolVersion;
    jr["fitted_rate"] = rep.fitted_rate;
    jr["exact"] = rep.exact;
    jr["theory_rate"] = rep.theory_rate;
    jr["radius"] = {{"value", ray.radius.value}, {"provenance", ray.radius.provenance}};
    jr["residual"] = rep.residual;
    jr["tolerance"] = rep.tolerance;
    jr["verdict"] = rep.verdict;
    jr["sigma_bound"] = excl.sigma_bound;
    jr["eps"] = excl.eps;
    man.add_artifact("rates.json", jr.dump(2) + "\n");
    man.end_phase();

    if (cfg.overconv.enabled) {
        man.begin_phase("overconvergence-scan");
        GapScanReport gaps = detect_coeff_gaps(f, cfg.horizon);
        DecayProfile prof = decay_profile(ray.entries, ray.radius.value, ray.radius.provenance);
        DecayScanReport decay =
            detect_decay_windows(prof, cfg.detectors.margin, cfg.detectors.min_ratio_gap);
        StationaryScanReport stat = detect_stationary_runs(ray.entries);

        std::vector<Window> windows;
        const std::string& src = cfg.overconv.source;
        if (src == "gaps" || (src == "auto" && !gaps.windows.empty()))
            windows = gaps.windows;
        else if (src == "stationary" || (src == "auto" && !stat.windows.empty()))
            windows = stat.windows;
        else if (src == "decay" || src == "auto")
            windows = decay.windows;

        json jo;
        jo["schema_version"] = kSchemaVersion;
        jo["tool_version"] = kToolVersion;
        if (windows.empty()) {
            jo["status"] = "no detector windows; nothing to scan";
        } else {
            HPComplex z0(0.0, 0.0);
            if (cfg.overconv.z0 == "auto") {
                if (f.meta().regular_boundary_points.empty())
                    throw CapabilityError("overconv: no declared regular boundary point");
                z0 = f.meta().regular_boundary_points.front();
            } else {
                auto comma = cfg.overconv.z0.find(',');
                if (comma == std::string::npos)
                    throw ConfigError("overconv.z0: expected 're,im' or 'auto'");
                z0 = HPComplex(HPReal(rational_from_string(cfg.overconv.z0.substr(0, comma))),
                               HPReal(rational_from_string(cfg.overconv.z0.substr(comma + 1))));
            }
            double r_scan = abs(z0).to_double(); // the circle the regular point sits on
            OverconvergenceScan scan = overconvergence_scan(
                f, ray.entries, windows, z0, cfg.overconv.radii, excl, r_scan,
                cfg.overconv.threshold, cfg.overconv.n_radial, cfg.overconv.n_angular);
            jo["z0"] = {{"re", z0.re.to_double()}, {"im", z0.im.to_double()}};
            jo["scan_radius"] = r_scan;
            jo["window_source"] = src;
            jo["subsequence"] = scan.subsequence;
            jo["alpha"] = scan.alpha;
            jo["phi_delta0"] = scan.phi_delta0;
            jo["threshold"] = cfg.overconv.threshold;
            json jv = json::array();
            for (const auto& v : scan.verdicts) {
                json le = json::array();
                for (double e : v.log2_errors) le.push_back(e);
                jv.push_back({{"radius", v.radius},
                              {"retained", v.retained},
                              {"log2_errors", le},
                              {"decreasing", v.decreasing},
                              {"terminal_error", v.terminal_error},
                              {"success", v.success}});
            }
            jo["verdicts"] = jv;
            if (scan.largest_success_radius)
                jo["largest_success_radius"] = *scan.largest_success_radius;
            else
                jo["largest_success_radius"] = nullptr;
        }
        man.add_artifact("overconv.json", jo.dump(2) + "\n");
        man.end_phase();
    }

    return man.finalize();
}

std::vector<std::string> run_command(const std::string& command, const RunConfig& cfg) {
    if (command == "table") return cmd_table(cfg);
    if (command == "ray") return cmd_ray(cfg);
    if (command == "windows") return cmd_windows(cfg);
    if (command == "overconv") return cmd_overconv(cfg);
    throw ConfigError("unknown command: " + command);
}

} // namespace padelab
