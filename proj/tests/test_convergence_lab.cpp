#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "padelab/convergence.hpp"
#include "padelab/errors.hpp"
#include "padelab/pade.hpp"
#include "padelab/series.hpp"

using namespace padelab;

namespace {

PowerSeries rational_poles_1_2() {
    RationalCatalogParams p;
    p.pole_re = {Rational(1), Rational(2)};
    p.pole_im = {Rational(0), Rational(0)};
    p.residue_re = {Rational(1), Rational(1)};
    p.residue_im = {Rational(0), Rational(0)};
    return make_rational_series(p);
}

PowerSeries lacunary_z2_1mz() {
    LacunaryCatalogParams p;
    p.p = Polynomial{Rational(0), Rational(0), Rational(1), Rational(-1)};
    p.gap_base = 2;
    p.c = Rational(1);
    return make_lacunary_lemniscate(p);
}

std::vector<PadeEntry> ray(const PowerSeries& f, const RaySchedule& s, double R) {
    std::vector<PadeEntry> out;
    for (long n = 0; n <= s.horizon(); ++n) {
        PadeEntry e = pade(f, n, s.at(n));
        e.normalized = normalize_denominator(e, R, "declared");
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace

TEST_CASE("omega disks and the sigma bound") {
    // single entry, n = 1, mu = 1, eps = 0.6: radius 0.6/6 = 0.1
    PadeEntry e;
    e.n = 1;
    e.m = 1;
    e.q = Polynomial{Rational(1), Rational(-1)};
    e.mu = 1;
    e.normalized = normalize_denominator(e, 1.0);
    std::vector<PadeEntry> one{e};
    ExclusionSet s1 = omega_disks(one, 0.6);
    REQUIRE(s1.disks.size() == 1);
    CHECK(s1.disks[0].radius == doctest::Approx(0.1));
    CHECK(s1.sigma_bound == doctest::Approx(0.2));

    // mu = 0 entries contribute nothing; n = 0 entries are skipped
    PadeEntry triv;
    triv.n = 2;
    triv.q = Polynomial{Rational(1)};
    triv.mu = 0;
    triv.normalized = normalize_denominator(triv, 1.0);
    std::vector<PadeEntry> two{triv};
    CHECK(omega_disks(two, 0.6).disks.empty());

    // a real run: sigma_bound < eps and <= eps pi^2/18 (1 + 1e-3)
    set_default_precision(192);
    PowerSeries rat = rational_poles_1_2();
    RaySchedule ones = build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 24);
    auto entries = ray(rat, ones, 2.0);
    ExclusionSet full = omega_disks(entries, 0.1);
    CHECK(full.sigma_bound < 0.1);
    CHECK(full.sigma_bound <= 0.1 * (M_PI * M_PI / 18.0) * (1.0 + 1e-3));
    CHECK_THROWS_AS(omega_disks(entries, 0.0), DomainError);
}

TEST_CASE("grids and exclusion correctness") {
    GridSpec spec;
    spec.shape = GridShape::Disk;
    spec.radius = 0.5;
    spec.n_a = 16;
    spec.n_b = 24;
    CompactGrid plain = make_grid(spec, nullptr);
    CHECK(plain.max_abs == doctest::Approx(0.5));
    for (const auto& z : plain.points) CHECK(abs(z).to_double() <= 0.5 + 1e-12);

    ExclusionSet excl;
    excl.eps = 0.5;
    excl.disks.push_back({HPComplex(0.25, 0.0), 0.05, 1});
    CompactGrid cut = make_grid(spec, &excl);
    CHECK(cut.points.size() + cut.excluded_count == plain.points.size());
    CHECK(cut.excluded_count > 0);
    for (const auto& z : cut.points) CHECK_FALSE(excl.contains(z));

    GridSpec rect;
    rect.shape = GridShape::Rectangle;
    rect.x_lo = -1;
    rect.x_hi = 1;
    rect.y_lo = 0;
    rect.y_hi = 0.5;
    rect.n_a = 9;
    rect.n_b = 5;
    CHECK(make_grid(rect, nullptr).points.size() == 45);

    GridSpec ann;
    ann.shape = GridShape::Annulus;
    ann.inner_radius = 0.3;
    ann.radius = 0.6;
    ann.n_a = 4;
    ann.n_b = 8;
    CompactGrid ag = make_grid(ann, nullptr);
    CHECK(ag.points.size() == 32);
    for (const auto& z : ag.points) {
        CHECK(abs(z).to_double() >= 0.3 - 1e-12);
        CHECK(abs(z).to_double() <= 0.6 + 1e-12);
    }

    GridSpec sec;
    sec.shape = GridShape::AnnularSector;
    sec.inner_radius = 0.4;
    sec.radius = 0.8;
    sec.theta_lo = 0.0;
    sec.theta_hi = M_PI / 2;
    sec.n_a = 3;
    sec.n_b = 5;
    CompactGrid sg = make_grid(sec, nullptr);
    CHECK(sg.points.size() == 15); // sectors keep both angular endpoints
    for (const auto& z : sg.points) {
        CHECK(z.re.to_double() >= -1e-12);
        CHECK(z.im.to_double() >= -1e-12);
    }

    // jitter is a pure function of the seed
    GridSpec j1 = spec;
    j1.jitter = 0.3;
    j1.seed = 7;
    GridSpec j2 = j1;
    CompactGrid g1 = make_grid(j1, nullptr), g2 = make_grid(j2, nullptr);
    REQUIRE(g1.points.size() == g2.points.size());
    for (size_t i = 0; i < g1.points.size(); ++i)
        CHECK(abs(g1.points[i] - g2.points[i]).to_double() == 0.0);
    GridSpec j3 = j1;
    j3.seed = 8;
    CompactGrid g3 = make_grid(j3, nullptr);
    bool any_moved = false;
    for (size_t i = 0; i < std::min(g1.points.size(), g3.points.size()); ++i)
        if (abs(g1.points[i] - g3.points[i]).to_double() != 0.0) any_moved = true;
    CHECK(any_moved);
}

TEST_CASE("grid errors: exact case and the Montessus rate") {
    set_default_precision(256);

    // geometric on any compact inside |z| < 2: errors exactly zero
    PowerSeries geo = make_geometric();
    RaySchedule ones = build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 10);
    auto ge = ray(geo, ones, kInfRadius);
    std::vector<PadeEntry> tail(ge.begin() + 1, ge.end()); // drop the (0,0) Taylor seed
    GridSpec spec;
    spec.radius = 0.5;
    spec.n_a = 12;
    spec.n_b = 12;
    CompactGrid grid = make_grid(spec, nullptr);
    ConvergenceReport rg = grid_errors(geo, tail, grid, kInfRadius, "declared", 0.05);
    CHECK(rg.exact);
    CHECK(rg.verdict);
    for (double le : rg.log2_sup_err) CHECK(le == -std::numeric_limits<double>::infinity());

    // rational poles {1,2}, row m = 1: fitted rate near 0.25 = 0.5 / R_1
    PowerSeries rat = rational_poles_1_2();
    RaySchedule row = build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 40);
    auto entries = ray(rat, row, 2.0);
    ExclusionSet excl = omega_disks(entries, 0.1);
    GridSpec kspec;
    kspec.radius = 0.5;
    kspec.n_a = 24;
    kspec.n_b = 32;
    CompactGrid K = make_grid(kspec, &excl);
    ConvergenceReport rep = grid_errors(rat, entries, K, 2.0, "declared", 0.05);
    CHECK_FALSE(rep.exact);
    CHECK(rep.theory_rate == doctest::Approx(0.25));
    CHECK(rep.fitted_rate == doctest::Approx(0.25).epsilon(0.2));
    CHECK(rep.verdict); // |fitted - theory| <= 0.05
}

TEST_CASE("monotone grid refinement") {
    set_default_precision(192);
    PowerSeries rat = rational_poles_1_2();
    RaySchedule row = build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 12);
    auto entries = ray(rat, row, 2.0);

    GridSpec coarse;
    coarse.radius = 0.5;
    coarse.n_a = 9;
    coarse.n_b = 16;
    GridSpec fine = coarse;
    fine.n_a = 2 * coarse.n_a - 1; // nested radii
    fine.n_b = 2 * coarse.n_b;     // nested angles
    CompactGrid gc = make_grid(coarse, nullptr), gf = make_grid(fine, nullptr);
    ConvergenceReport rc = grid_errors(rat, entries, gc, 2.0, "declared", 0.05);
    ConvergenceReport rf = grid_errors(rat, entries, gf, 2.0, "declared", 0.05);
    for (size_t i = 0; i < rc.log2_sup_err.size(); ++i) {
        // nested refinement can only raise the measured sup; and the rise is
        // bounded by a crude Lipschitz x mesh product (undersampling check)
        CHECK(rf.log2_sup_err[i] >= rc.log2_sup_err[i] - 1e-9);
        CHECK(std::exp2(rf.log2_sup_err[i]) <=
              std::exp2(rc.log2_sup_err[i]) + 60.0 * (0.5 / 8.0));
    }
}

TEST_CASE("overconvergence scan at the lacunary regular point") {
    set_default_precision(256);
    PowerSeries lac = lacunary_z2_1mz();
    RaySchedule taylor = build_schedule({ScheduleRule::Kind::Constant, 0, 1.0, {}}, 64);
    auto entries = ray(lac, taylor, *lac.meta().r0);
    GapScanReport gaps = detect_coeff_gaps(lac, 64);
    std::vector<Window> windows = gaps.windows;
    REQUIRE_FALSE(windows.empty());
    ExclusionSet excl = omega_disks(entries, 0.05);
    double r0 = *lac.meta().r0;
    HPComplex z0 = lac.meta().regular_boundary_points.at(0);

    OverconvergenceScan scan = overconvergence_scan(lac, entries, windows, z0,
                                                    {0.02, 0.05, 0.1, 0.2}, excl, r0, 1e-6);
    CHECK(scan.subsequence == std::vector<long>{8, 16, 32, 64});
    CHECK(scan.alpha == doctest::Approx(1.0 / 3.0));
    CHECK(scan.phi_delta0 > 0.0);
    bool any_success = false;
    for (const auto& v : scan.verdicts)
        if (v.success) {
            any_success = true;
            CHECK(v.terminal_error < 1e-6);
        }
    CHECK(any_success);
    REQUIRE(scan.largest_success_radius.has_value());

    // geometric degenerate success: approximants agree with f exactly
    PowerSeries geo = make_geometric();
    RaySchedule ones = build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 12);
    auto ge = ray(geo, ones, kInfRadius);
    StationaryScanReport st = detect_stationary_runs(ge);
    REQUIRE_FALSE(st.windows.empty());
    ExclusionSet gx = omega_disks(ge, 0.1);
    OverconvergenceScan gs = overconvergence_scan(geo, ge, st.windows, HPComplex(-1.0, 0.0),
                                                  {0.1}, gx, 1.0, 1e-6);
    REQUIRE(gs.verdicts.size() == 1);
    CHECK(gs.verdicts[0].success);
    CHECK(gs.verdicts[0].terminal_error == 0.0);
}

TEST_CASE("overconvergence scan for the Montessus row near a regular point") {
    set_default_precision(192);
    PowerSeries rat = rational_poles_1_2();
    RaySchedule row = build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 40);
    auto entries = ray(rat, row, 2.0);
    DecayProfile prof = decay_profile(entries, 1.0, "fixed"); // baseline vs R_0
    DecayScanReport dec = detect_decay_windows(prof, 0.2, 0.05);
    REQUIRE_FALSE(dec.windows.empty());
    ExclusionSet excl = omega_disks(entries, 0.1);
    OverconvergenceScan scan = overconvergence_scan(rat, entries, dec.windows,
                                                    HPComplex(-1.0, 0.0), {0.1, 0.3}, excl,
                                                    1.0, 1e-6);
    bool ok = false;
    for (const auto& v : scan.verdicts)
        if (v.success) ok = true;
    CHECK(ok);
}

TEST_CASE("pole proximity") {
    set_default_precision(192);
    PowerSeries rat = rational_poles_1_2();
    RaySchedule row = build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 40);
    auto entries = ray(rat, row, 2.0);
    std::vector<HPComplex> truth{HPComplex(1.0, 0.0)}; // poles inside D_{R_1}
    auto rows = pole_proximity(entries, truth);
    REQUIRE(rows.size() == entries.size());
    // fit C on n <= 20, verify |zeta_n - 1| <= C 0.55^n on 21..40
    double C = 0.0;
    for (long n = 1; n <= 20; ++n)
        C = std::max(C, rows[static_cast<size_t>(n)].max_matched_distance / std::pow(0.55, n));
    REQUIRE(C > 0.0);
    for (long n = 21; n <= 40; ++n)
        CHECK(rows[static_cast<size_t>(n)].max_matched_distance <= C * std::pow(0.55, n));

    // geometric: the single root is exactly 1
    PowerSeries geo = make_geometric();
    auto ge = ray(geo, build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 10),
                  kInfRadius);
    auto grows = pole_proximity(ge, truth);
    for (long n = 1; n <= 10; ++n)
        CHECK(grows[static_cast<size_t>(n)].max_matched_distance == 0.0);

    // exp: no true poles, deficit-free empty matching
    PowerSeries ex = make_exp_series();
    auto ee = ray(ex, build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 6),
                  kInfRadius);
    auto erows = pole_proximity(ee, {});
    for (const auto& r : erows) {
        CHECK(r.deficit == 0);
        CHECK(r.max_matched_distance == 0.0);
    }
}
