#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "padelab/errors.hpp"
#include "padelab/pade.hpp"
#include "padelab/sequence.hpp"
#include "padelab/series.hpp"
#include "padelab/stats.hpp"

using namespace padelab;

namespace {

PowerSeries lacunary_z2_1mz() {
    LacunaryCatalogParams p;
    p.p = Polynomial{Rational(0), Rational(0), Rational(1), Rational(-1)};
    p.gap_base = 2;
    p.c = Rational(1);
    return make_lacunary_lemniscate(p);
}

std::vector<PadeEntry> row_entries(const PowerSeries& f, long m, long horizon) {
    RaySchedule s = build_schedule({ScheduleRule::Kind::Constant, m, 1.0, {}}, horizon);
    std::vector<PadeEntry> out;
    for (long n = 0; n <= horizon; ++n) out.push_back(pade(f, n, s.at(n)));
    return out;
}

} // namespace

TEST_CASE("build_schedule clips and validates") {
    RaySchedule c1 = build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 10);
    CHECK(c1.m == std::vector<long>{0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1});
    CHECK(c1.growth == GrowthClass::Constant);

    RaySchedule sq = build_schedule({ScheduleRule::Kind::SqrtFloor, 0, 1.0, {}}, 9);
    CHECK(sq.m == std::vector<long>{0, 1, 1, 1, 2, 2, 2, 2, 2, 3});
    CHECK(sq.growth == GrowthClass::SublinearOverLog);

    CHECK_THROWS_AS(build_schedule({ScheduleRule::Kind::Explicit, 0, 1.0, {0, 2}}, 1),
                    ScheduleError); // jump of 2
    CHECK_THROWS_AS(build_schedule({ScheduleRule::Kind::Explicit, 0, 1.0, {1}}, 0),
                    ScheduleError); // horizon < 1
    CHECK_THROWS_AS(build_schedule({ScheduleRule::Kind::Explicit, 0, 1.0, {1, 1}}, 1),
                    ScheduleError); // m_0 > 0

    // schedule legality property over rules and horizons
    for (long h : {16L, 100L, 999L, 10000L}) {
        for (int kind = 0; kind < 3; ++kind) {
            ScheduleRule r;
            r.kind = kind == 0   ? ScheduleRule::Kind::Constant
                     : kind == 1 ? ScheduleRule::Kind::SqrtFloor
                                 : ScheduleRule::Kind::NOverLogSq;
            r.m = 3;
            r.c = kind == 2 ? 2.5 : 1.0;
            RaySchedule s = build_schedule(r, h);
            for (long n = 0; n <= h; ++n) {
                CHECK(s.at(n) <= n);
                CHECK(s.at(n) >= 0);
                if (n > 0) {
                    CHECK(s.at(n) >= s.at(n - 1));
                    CHECK(s.at(n) <= s.at(n - 1) + 1);
                }
            }
        }
    }
}

TEST_CASE("decay profile flags and row identity") {
    // geometric m=1 row: top coefficients vanish for n >= 1
    PowerSeries geo = make_geometric();
    auto entries = row_entries(geo, 1, 12);
    DecayProfile p = decay_profile(entries, kInfRadius, "declared");
    CHECK(p.flags[0] == ProfileFlag::Skipped);
    for (size_t i = 1; i < p.flags.size(); ++i) CHECK(p.flags[i] == ProfileFlag::ZeroCoeff);
    CHECK(p.baseline == 0.0);

    // Taylor row of the geometric: values are exactly 1
    auto t = row_entries(geo, 0, 12);
    DecayProfile pt = decay_profile(t, 1.0, "declared");
    for (long n = 1; n <= 12; ++n) {
        CHECK(pt.flags[static_cast<size_t>(n)] == ProfileFlag::Ok);
        CHECK(pt.values[static_cast<size_t>(n)] == doctest::Approx(1.0));
    }

    // Taylor row of sum (z/3)^n: values are 1/3
    TaylorGapParams tg;
    tg.rate = Rational(1, 3);
    PowerSeries third = make_taylor_gap(tg);
    auto t3 = row_entries(third, 0, 10);
    DecayProfile p3 = decay_profile(t3, 3.0, "declared");
    for (long n = 1; n <= 10; ++n)
        CHECK(p3.values[static_cast<size_t>(n)] == doctest::Approx(1.0 / 3.0));

    // m == 0 profile identity: equals the Taylor coefficient profile exactly
    PowerSeries lac = lacunary_z2_1mz();
    auto tl = row_entries(lac, 0, 40);
    DecayProfile pl = decay_profile(tl, *lac.meta().r0, "declared");
    for (long n = 1; n <= 40; ++n) {
        Rational c = lac.coeff(n);
        if (is_zero(c))
            CHECK(pl.flags[static_cast<size_t>(n)] == ProfileFlag::ZeroCoeff);
        else
            CHECK(pl.values[static_cast<size_t>(n)] == doctest::Approx(nth_root_abs(c, n)));
    }
}

TEST_CASE("coefficient gap detection") {
    PowerSeries lac = lacunary_z2_1mz();
    GapScanReport rep = detect_coeff_gaps(lac, 64);
    REQUIRE(rep.windows.size() == 4);
    long expect_lo[] = {6, 12, 24, 48};
    long expect_hi[] = {8, 16, 32, 64};
    for (size_t i = 0; i < 4; ++i) {
        CHECK(rep.windows[i].n_lo == expect_lo[i]);
        CHECK(rep.windows[i].n_hi == expect_hi[i]);
        CHECK(rep.windows[i].ratio == doctest::Approx(0.75));
    }
    CHECK(rep.case_b); // limsup ratio < 1, in-gap decay trivially 0
    CHECK(rep.in_window_decay == 0.0);
    // soundness: windows hold only exact zeros
    for (const auto& w : rep.windows)
        for (long n = w.n_lo + 1; n < w.n_hi; ++n) CHECK(is_zero(lac.coeff(n)));

    CHECK(detect_coeff_gaps(make_geometric(), 64).windows.empty());

    // masked series with ratios trending to 1/2
    TaylorGapParams tg;
    tg.gaps = {{4, 9}, {16, 33}, {64, 129}};
    GapScanReport rm = detect_coeff_gaps(make_taylor_gap(tg), 200);
    REQUIRE(rm.windows.size() == 3);
    CHECK(rm.windows[0].ratio == doctest::Approx(4.0 / 9.0));
    CHECK(rm.windows[2].ratio == doctest::Approx(64.0 / 129.0));
}

TEST_CASE("decay window detection") {
    // synthetic: values at half the baseline on [10, 20]
    DecayProfile p;
    p.baseline = 2.0;
    p.baseline_provenance = "fixed";
    p.values.assign(31, 2.0);
    p.flags.assign(31, ProfileFlag::Ok);
    for (long n = 10; n <= 20; ++n) p.values[static_cast<size_t>(n)] = 1.0;
    DecayScanReport rep = detect_decay_windows(p, 0.2, 0.05);
    REQUIRE(rep.windows.size() == 1);
    CHECK(rep.windows[0].n_lo == 10);
    CHECK(rep.windows[0].n_hi == 20);
    CHECK(rep.windows[0].ratio == doctest::Approx(0.5));
    CHECK(rep.min_ratio == doctest::Approx(0.5));

    // flat profile: nothing
    DecayProfile flat;
    flat.baseline = 1.0;
    flat.values.assign(20, 1.0);
    flat.flags.assign(20, ProfileFlag::Ok);
    CHECK(detect_decay_windows(flat, 0.2, 0.05).windows.empty());

    // degenerate baseline: empty result, no throw
    DecayProfile degen;
    degen.baseline = 0.0;
    degen.values.assign(20, 0.0);
    degen.flags.assign(20, ProfileFlag::ZeroCoeff);
    CHECK(detect_decay_windows(degen, 0.2, 0.05).windows.empty());

    // block-marked indices are no data, not decay evidence
    DecayProfile blocks;
    blocks.baseline = 1.0;
    blocks.values.assign(40, 1.0);
    blocks.flags.assign(40, ProfileFlag::Ok);
    for (long n = 5; n <= 35; ++n) blocks.flags[static_cast<size_t>(n)] = ProfileFlag::BlockRepeat;
    CHECK(detect_decay_windows(blocks, 0.2, 0.05).windows.empty());

    // Taylor row of the lacunary series: every coefficient gap is covered
    PowerSeries lac = lacunary_z2_1mz();
    auto tl = row_entries(lac, 0, 64);
    DecayProfile pl = decay_profile(tl, *lac.meta().r0, "declared");
    DecayScanReport dl = detect_decay_windows(pl, 0.2, 0.05);
    GapScanReport gl = detect_coeff_gaps(lac, 64);
    for (const auto& g : gl.windows) {
        bool covered = false;
        for (const auto& d : dl.windows)
            if (d.n_lo <= g.n_lo + 1 && d.n_hi >= g.n_hi - 1) covered = true;
        CHECK(covered);
    }

    CHECK_THROWS_AS(detect_decay_windows(p, 1.5, 0.05), DomainError);
}

TEST_CASE("stationary run detection") {
    PowerSeries geo = make_geometric();
    auto ge = row_entries(geo, 1, 16); // m_0 = 0, then a single stationary run
    StationaryScanReport rg = detect_stationary_runs(ge);
    REQUIRE(rg.windows.size() == 1);
    CHECK(rg.windows[0].n_lo == 1);
    CHECK(rg.windows[0].n_hi == 16);

    PowerSeries ex = make_exp_series();
    auto ee = row_entries(ex, 1, 12);
    CHECK(detect_stationary_runs(ee).windows.empty()); // consecutive entries differ

    // Taylor row of the lacunary series: runs match the coefficient gaps
    PowerSeries lac = lacunary_z2_1mz();
    auto tl = row_entries(lac, 0, 64);
    StationaryScanReport rl = detect_stationary_runs(tl);
    GapScanReport gl = detect_coeff_gaps(lac, 64);
    REQUIRE(rl.windows.size() >= gl.windows.size());
    for (const auto& g : gl.windows) {
        bool matched = false;
        for (const auto& s : rl.windows)
            if (s.n_lo == g.n_lo && s.n_hi == g.n_hi - 1) matched = true;
        CHECK(matched); // S_n stays put while coefficients vanish
    }
    // soundness re-check: runs really are equal reduced fractions
    for (const auto& s : rl.windows)
        for (long n = s.n_lo; n <= s.n_hi; ++n) {
            CHECK(tl[static_cast<size_t>(n)].p == tl[static_cast<size_t>(s.n_lo)].p);
            CHECK(tl[static_cast<size_t>(n)].q == tl[static_cast<size_t>(s.n_lo)].q);
        }
    CHECK(rl.case_b);
}

TEST_CASE("psi formula and monotonicity") {
    PsiParams prm{1.0, 1.0, 0, 0.5};
    CHECK(psi(100, 0.0, prm) == doctest::Approx(-0.49)); // 1/100 - 0.5

    PsiParams p2{1.0, 2.0, 1, 0.5};
    CHECK(psi(100, 10.0, p2) > psi(100, 0.0, p2));

    // x -> n_k: the positive terms dominate
    CHECK(psi(100, 99.9, p2) > 1e2);
    CHECK_THROWS_AS(psi(100, 100.0, p2), DomainError);
    CHECK_THROWS_AS(psi(100, -1.0, p2), DomainError);

    // randomized monotonicity; tau < C4 per the paper's constants
    for (uint64_t s = 0; s < 2000; ++s) {
        auto u = [&](uint64_t k) {
            return static_cast<double>(splitmix64(s * 7 + k) >> 11) * 0x1.0p-53;
        };
        long n = 16 + static_cast<long>(u(0) * 1e6);
        PsiParams q;
        q.c1 = 1.0 + u(1) * 99.0;
        q.c4 = 1.0 + u(2) * 99.0;
        q.m = static_cast<long>(u(3) * 20.0);
        q.tau = u(4) * q.c4;
        if (q.tau <= 0.0) q.tau = 0.5 * q.c4;
        double x1 = u(5) * (n - 1);
        double x2 = u(6) * (n - 1);
        if (x1 > x2) std::swap(x1, x2);
        if (x2 <= x1) continue;
        CHECK(psi(n, x2, q) > psi(n, x1, q));
    }
}

TEST_CASE("theorem 9 window search") {
    DecayProfile p;
    p.baseline = 1.0;
    p.values.assign(451, 1.0);
    p.flags.assign(451, ProfileFlag::Ok);
    std::vector<long> anchors = {50, 100, 200, 400};
    for (long nk : anchors)
        for (long nu = nk - 10; nu <= nk; ++nu)
            p.values[static_cast<size_t>(nu)] = std::exp(-0.5);

    PsiParams prm{1.0, 1.0, 1, 0.0}; // tau estimated from the anchors
    Theorem9Report rep = theorem9_window_search(p, anchors, prm, 1.0);
    CHECK(rep.tau == doctest::Approx(0.5));
    CHECK(rep.tau_source == "estimated");
    REQUIRE(rep.windows.size() == 4);
    for (const auto& w : rep.windows) {
        CHECK_FALSE(w.skipped);
        CHECK(w.l_k >= 1);
        CHECK(w.l_k <= 10);
        CHECK(w.psi_at_l < -rep.tau / 2.0);
        CHECK(w.profile_agrees);
    }
    // frozen oracle: n_k = 100, C1 = C4 = 1, m = 1, tau = 0.5 gives l_k = 2
    CHECK(rep.windows[1].l_k == 2);

    // n_k <= C1/tau: psi(0) >= 0, anchor skipped
    PsiParams fixed{1.0, 1.0, 1, 0.5};
    Theorem9Report skip = theorem9_window_search(p, {2}, fixed, 1.0);
    REQUIRE(skip.windows.size() == 1);
    CHECK(skip.windows[0].skipped);
}

TEST_CASE("theorem 6 conclusion check") {
    DecayProfile p;
    p.baseline = 1.0;
    p.values.assign(41, 0.4);
    p.flags.assign(41, ProfileFlag::Ok);
    Theorem6Report r = theorem6_conclusion_check(p, {10, 20, 30, 40}, 2.0, 1.0);
    CHECK(r.samples == 4);
    CHECK(r.limsup_estimate == doctest::Approx(0.4));
    CHECK(r.below_inv_rm);  // 0.4 < 1/2 is false -> careful: 1/Rm = 0.5, 0.4 < 0.5 true
    CHECK(r.below_inv_rf);  // 0.4 < 1.0
}
