#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "padelab/errors.hpp"
#include "padelab/pade.hpp"
#include "padelab/sequence.hpp"
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

PowerSeries even_geometric() { // 1/(1-z^2)
    RationalCatalogParams p;
    p.pole_re = {Rational(1), Rational(-1)};
    p.pole_im = {Rational(0), Rational(0)};
    p.residue_re = {Rational(1, 2), Rational(-1, 2)};
    p.residue_im = {Rational(0), Rational(0)};
    return make_rational_series(p);
}

PadeEntry entry_with_q(Polynomial q) {
    PadeEntry e;
    e.q = std::move(q);
    e.mu = std::max<long>(e.q.degree(), 0);
    e.m = e.mu;
    return e;
}

std::vector<PadeEntry> ray_entries(const PowerSeries& f, const RaySchedule& s,
                                   std::optional<double> norm_R = std::nullopt) {
    std::vector<PadeEntry> out;
    for (long n = 0; n <= s.horizon(); ++n) {
        PadeEntry e = pade(f, n, s.at(n));
        if (norm_R) e.normalized = normalize_denominator(e, *norm_R, "declared");
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace

TEST_CASE("closed-form oracle entries") {
    PowerSeries ex = make_exp_series();
    // hand oracle for (1,1): q1 = -f2/f1 = -1/2, p = 1 + z/2
    PadeEntry e = pade(ex, 1, 1);
    CHECK(e.p == Polynomial{Rational(1), Rational(1, 2)});
    CHECK(e.q == Polynomial{Rational(1), Rational(-1, 2)});
    CHECK(e.defect == 0);
    CHECK(e.a_lead == Rational(1, 2));

    PowerSeries geo = make_geometric();
    PadeEntry g = pade(geo, 2, 1);
    CHECK(g.p == Polynomial{Rational(1)});
    CHECK(g.q == Polynomial{Rational(1), Rational(-1)});
    CHECK(g.defect == 0);
    CHECK(a_coefficient(g) == Rational(1));

    // evenness forces a block: (1,1) reduces to (0,0)
    PowerSeries ev = even_geometric();
    PadeEntry b = pade(ev, 1, 1);
    CHECK(b.p == Polynomial{Rational(1)});
    CHECK(b.q == Polynomial{Rational(1)});
    CHECK(b.defect == 1);
}

TEST_CASE("order of contact") {
    PowerSeries geo = make_geometric();
    CHECK_FALSE(order_of_contact(geo, pade(geo, 2, 1), 40).has_value()); // exact

    PowerSeries ex = make_exp_series();
    PadeEntry e = pade(ex, 1, 1);
    // oracle: [z^j](f q - p) vanishes for j<=2, equals 1/6 - 1/4 = -1/12 at j=3
    auto c = order_of_contact(ex, e, 10);
    REQUIRE(c.has_value());
    CHECK(*c == 3);

    PowerSeries ev = even_geometric();
    PadeEntry b = pade(ev, 1, 1);
    auto cb = order_of_contact(ev, b, 12);
    CHECK((!cb.has_value() || *cb >= 1 + 1 + 1 - b.defect));
}

TEST_CASE("random-series property: contact, coprimality, oracle agreement") {
    for (uint64_t seed = 1; seed <= 24; ++seed) {
        PowerSeries f = oracle::random_series(seed);
        std::vector<Rational> coeffs;
        for (long j = 0; j <= 30; ++j) coeffs.push_back(f.coeff(j));
        for (long n = 0; n <= 7; ++n) {
            for (long m = 0; m <= 7 - n % 3; ++m) {
                PadeEntry e = pade(f, n, m);
                CHECK(gcd(e.p, e.q).degree() <= 0);
                CHECK(e.q.at0() == Rational(1));
                CHECK(e.defect >= 0);
                auto c = order_of_contact(f, e, n + m + 1);
                if (c) CHECK(*c >= n + m + 1 - e.defect);
                auto [op, oq] = oracle::naive_pade(coeffs, n, m);
                CHECK(e.p == op);
                CHECK(e.q == oq);
            }
        }
    }
}

TEST_CASE("block scan") {
    PowerSeries geo = make_geometric();
    TableScan t = block_scan(geo, 4, 2);
    // the m >= 1 half-plane is one clipped region of identical entries
    bool found = false;
    for (const auto& b : t.blocks)
        if (b.n0 == 0 && b.m0 == 1 && b.extent_n == 5 && b.extent_m == 2 && b.clipped)
            found = true;
    CHECK(found);

    PowerSeries ex = make_exp_series();
    TableScan te = block_scan(ex, 3, 3);
    CHECK(te.blocks.size() == 16); // Hankel determinants of exp never vanish
    for (const auto& b : te.blocks) CHECK(b.extent() == 1);

    PowerSeries ev = even_geometric();
    TableScan tv = block_scan(ev, 2, 2);
    bool sq = false;
    for (const auto& b : tv.blocks)
        if (b.n0 == 0 && b.m0 == 0 && b.extent_n == 2 && b.extent_m == 2) sq = true;
    CHECK(sq);

    // block squareness stands on catalog functions up to 12x12 (the scan
    // itself raises on any non-square interior group)
    TableScan tb = block_scan(ev, 12, 12);
    for (const auto& b : tb.blocks)
        if (!b.clipped) CHECK(b.extent_n == b.extent_m);
    CHECK_NOTHROW(block_scan(make_log_branch({}), 12, 12));
    CHECK_NOTHROW(block_scan(make_exp_series(), 12, 12));
}

TEST_CASE("denominator normalization") {
    set_default_precision(256);
    PadeEntry lin = entry_with_q(Polynomial{Rational(1), Rational(-1)}); // 1 - z
    NormalizedDenominator n1 = normalize_denominator(lin, 1.0);
    REQUIRE(n1.inner_roots.size() == 1);
    CHECK(n1.outer_roots.empty());
    CHECK(abs(n1.inner_roots[0] - HPComplex(Rational(1))).to_double() == 0.0);

    PadeEntry far = entry_with_q(Polynomial{Rational(1), Rational(-1, 10)}); // 1 - z/10
    NormalizedDenominator n2 = normalize_denominator(far, 1.0);
    CHECK(n2.inner_roots.empty());
    REQUIRE(n2.outer_roots.size() == 1);
    CHECK(abs(n2.outer_roots[0] - HPComplex(Rational(10))).to_double() == 0.0);

    // (1-z)(1-z/10) = 1 - 11z/10 + z^2/10
    PadeEntry both = entry_with_q(Polynomial{Rational(1), Rational(-11, 10), Rational(1, 10)});
    NormalizedDenominator n3 = normalize_denominator(both, 1.0);
    REQUIRE(n3.inner_roots.size() == 1);
    REQUIRE(n3.outer_roots.size() == 1);
    CHECK(abs(n3.inner_roots[0] - HPComplex(Rational(1))).to_double() < 1e-60);
    CHECK(abs(n3.outer_roots[0] - HPComplex(Rational(10))).to_double() < 1e-58);

    // reconstruction: Q(z) ~ lead * prod(z - inner) * prod(1 - z/outer)
    HPComplex lead = HPComplex(both.q.leading());
    for (const auto& r : n3.outer_roots) lead = lead * (-r);
    for (double x : {0.3, 1.7, -1.9}) {
        HPComplex z(x, 0.21);
        HPComplex prod = lead;
        for (const auto& r : n3.inner_roots) prod = prod * (z - r);
        for (const auto& r : n3.outer_roots) prod = prod * (HPComplex(Rational(1)) - z * inv(r));
        double bound = 2.0 * n3.residual.to_double() * std::pow(1.0 + std::hypot(x, 0.21), 2) + 1e-70;
        CHECK(abs(both.q.eval(z) - prod).to_double() <= bound);
    }
}

TEST_CASE("A-coefficient formula against the exact difference monomial") {
    set_default_precision(256);
    PowerSeries ex = make_exp_series();

    // Taylor row: A_n = f_{n+1}, no outer roots
    std::vector<PadeEntry> taylor;
    for (long n = 0; n <= 6; ++n) {
        PadeEntry e = pade(ex, n, 0);
        e.normalized = normalize_denominator(e, 1.0);
        taylor.push_back(e);
    }
    for (long n = 0; n < 6; ++n) {
        HPComplex A = A_coefficient(taylor[n], taylor[n + 1], *taylor[n].normalized,
                                    *taylor[n + 1].normalized);
        CHECK(abs(A - HPComplex(ex.coeff(n + 1))).to_double() < 1e-70);
        DifferenceMonomial d = exact_difference_coefficient(taylor[n], taylor[n + 1]);
        CHECK(d.is_monomial);
        CHECK(d.coefficient == ex.coeff(n + 1));
        CHECK(d.exponent == n + 1);
    }

    // geometric block interior: both top coefficients vanish, A = 0
    PowerSeries geo = make_geometric();
    PadeEntry g2 = pade(geo, 2, 1), g3 = pade(geo, 3, 1);
    g2.normalized = normalize_denominator(g2, kInfRadius);
    g3.normalized = normalize_denominator(g3, kInfRadius);
    HPComplex Ag = A_coefficient(g2, g3, *g2.normalized, *g3.normalized);
    CHECK(abs(Ag).to_double() == 0.0);
    DifferenceMonomial dg = exact_difference_coefficient(g2, g3);
    CHECK(is_zero(dg.coefficient));

    // schedule error
    PadeEntry e00 = pade(ex, 0, 0), e13 = pade(ex, 1, 3);
    CHECK_THROWS_AS(A_coefficient(e00, e13, *g2.normalized, *g3.normalized), ScheduleError);
}

TEST_CASE("difference identity residual at probe points") {
    set_default_precision(256);
    const double tol = std::exp2(-128) * 1e6; // 2^(-prec/2) with head room for the scale

    auto check_pair = [&](const PowerSeries& f, long n, long m_n, long m_n1, double R) {
        PadeEntry a = pade(f, n, m_n), b = pade(f, n + 1, m_n1);
        a.normalized = normalize_denominator(a, R);
        b.normalized = normalize_denominator(b, R);
        if (b.defect != 0 || a.defect != 0) return;
        HPComplex A = A_coefficient(a, b, *a.normalized, *b.normalized);
        for (double x : {0.3, -0.22, 0.15}) {
            HPComplex z(x, 0.07);
            HPComplex r = difference_identity_residual(a, b, *a.normalized, *b.normalized, A, z);
            double scale = std::pow(1.0 + std::hypot(x, 0.07), static_cast<double>(n + m_n + 1));
            CHECK(abs(r).to_double() <= tol * scale);
        }
    };

    check_pair(make_exp_series(), 1, 1, 1, kInfRadius);
    check_pair(make_exp_series(), 3, 2, 3, kInfRadius);
    check_pair(rational_poles_1_2(), 4, 1, 1, 2.0);
    check_pair(make_log_branch({}), 5, 2, 2, 1.0);
    check_pair(make_algebraic_branch({}), 4, 1, 2, 1.0);

    // block-interior pair: both sides vanish
    PowerSeries geo = make_geometric();
    PadeEntry g2 = pade(geo, 2, 1), g3 = pade(geo, 3, 1);
    g2.normalized = normalize_denominator(g2, kInfRadius);
    g3.normalized = normalize_denominator(g3, kInfRadius);
    HPComplex A = A_coefficient(g2, g3, *g2.normalized, *g3.normalized);
    HPComplex r = difference_identity_residual(g2, g3, *g2.normalized, *g3.normalized, A,
                                               HPComplex(0.4, 0.1));
    CHECK(abs(r).to_double() == 0.0);

    // probe too close to the free pole at 1
    CHECK_THROWS_AS(difference_identity_residual(g2, g3, *g2.normalized, *g3.normalized, A,
                                                 HPComplex(1.0 + 1e-9, 0.0)),
                    DomainError);
}

TEST_CASE("telescoping tail series") {
    set_default_precision(256);

    // geometric row: every term vanishes and the direct error is zero
    PowerSeries geo = make_geometric();
    RaySchedule ones = build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 24);
    auto geo_entries = ray_entries(geo, ones, kInfRadius);
    TailCheckReport rg = tail_series_check(geo, geo_entries, 4, 10, HPComplex(0.4, 0.0), 0.1,
                                           kInfRadius);
    CHECK(abs(rg.telescoped).to_double() == 0.0);
    CHECK(rg.gap.to_double() < 1e-70);

    // rational poles {1,2}: gap below 2 (|z|/R_1)^{n + N}
    PowerSeries rat = rational_poles_1_2();
    auto rat_entries = ray_entries(rat, build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 22),
                                   2.0);
    TailCheckReport rr = tail_series_check(rat, rat_entries, 5, 15, HPComplex(0.4, 0.0), 0.1, 2.0);
    CHECK(rr.gap.to_double() <= 2.0 * std::pow(0.2, 20));
    CHECK(rr.within_tail);

    // log branch on a sqrt schedule
    PowerSeries lg = make_log_branch({});
    RaySchedule sq = build_schedule({ScheduleRule::Kind::SqrtFloor, 0, 1.0, {}}, 26);
    auto lg_entries = ray_entries(lg, sq, 1.0);
    TailCheckReport rl = tail_series_check(lg, lg_entries, 8, 16, HPComplex(0.3, 0.0), 0.1, 1.0);
    CHECK(rl.within_tail);

    CHECK_THROWS_AS(tail_series_check(rat, rat_entries, 5, 15, HPComplex(1.9, 0.0), 0.1, 2.0),
                    DomainError); // |z| beyond 0.9 R
}

TEST_CASE("Q-norm bound witnesses") {
    set_default_precision(192);
    PowerSeries rat = rational_poles_1_2();
    RaySchedule ones = build_schedule({ScheduleRule::Kind::Constant, 1, 1.0, {}}, 24);
    auto entries = ray_entries(rat, ones, 2.0);

    // ||Qhat_n||_K <= C^{m_n} with C fitted on the first half
    std::vector<HPComplex> pts;
    for (int k = 0; k < 64; ++k)
        pts.emplace_back(0.5 * std::cos(2 * M_PI * k / 64.0), 0.5 * std::sin(2 * M_PI * k / 64.0));
    auto qhat_norm = [&](const PadeEntry& e) {
        HPComplex kap = e.normalized->kappa();
        HPReal mx(0L);
        for (const auto& z : pts) mx = max(mx, abs(kap * e.q.eval(z)));
        return mx.to_double();
    };
    double C = 1.0;
    for (long n = 1; n <= 12; ++n)
        C = std::max(C, std::pow(qhat_norm(entries[n]), 1.0 / std::max<long>(1, entries[n].m)));
    for (long n = 13; n <= 24; ++n)
        CHECK(qhat_norm(entries[n]) <= 1.05 * std::pow(C, entries[n].m));

    // 1/min_K |Qhat_n| <= C e^{n Theta} for each Theta > 0 tested
    auto qhat_min = [&](const PadeEntry& e) {
        HPComplex kap = e.normalized->kappa();
        HPReal mn = HPReal::pos_inf();
        for (const auto& z : pts) mn = min(mn, abs(kap * e.q.eval(z)));
        return mn.to_double();
    };
    for (double theta : {0.05, 0.1, 0.2}) {
        double Cq = 1.0;
        for (long n = 1; n <= 12; ++n)
            Cq = std::max(Cq, (1.0 / qhat_min(entries[n])) * std::exp(-theta * n));
        for (long n = 13; n <= 24; ++n)
            CHECK(1.0 / qhat_min(entries[n]) <= 1.05 * Cq * std::exp(theta * n));
    }
}
