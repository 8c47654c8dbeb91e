#include "padelab/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include "padelab/errors.hpp"
#include "padelab/stats.hpp"

namespace padelab {

std::optional<double> SeriesMeta::radius_for_m(long m) const {
    auto it = rm.find(m);
    if (it != rm.end()) return it->second;
    if (r_meromorphy) return r_meromorphy;
    return r0;
}

PowerSeries::PowerSeries(CoeffRule rule, SeriesMeta meta, RefEval ref, RefDomain ref_domain)
    : rule_(std::move(rule)), meta_(std::move(meta)),
      ref_(std::move(ref)), ref_domain_(std::move(ref_domain)) {
    if (!rule_) throw ConfigError("power series needs a coefficient rule");
}

Rational PowerSeries::coeff(long j) const {
    if (j < 0) throw DomainError("coefficient index must be >= 0");
    size_t idx = static_cast<size_t>(j);
    {
        std::shared_lock lk(mu_);
        if (idx < memo_.size() && memo_[idx]) return *memo_[idx];
    }
    Rational v = rule_(j); // pure, so racing recomputation is harmless
    {
        std::unique_lock lk(mu_);
        if (memo_.size() <= idx) memo_.resize(idx + 1);
        if (!memo_[idx]) memo_[idx] = v;
        return *memo_[idx];
    }
}

bool PowerSeries::in_reference_domain(const HPComplex& z) const {
    if (!ref_) return false;
    return ref_domain_ ? ref_domain_(z) : true;
}

HPComplex PowerSeries::reference(const HPComplex& z) const {
    if (!ref_) throw CapabilityError("series has no reference evaluator");
    if (ref_domain_ && !ref_domain_(z))
        throw DomainError("point outside the declared reference region");
    return ref_(z);
}

Polynomial PowerSeries::taylor(long n_max) const {
    std::vector<Rational> c(static_cast<size_t>(n_max) + 1);
    for (long j = 0; j <= n_max; ++j) c[static_cast<size_t>(j)] = coeff(j);
    return Polynomial(std::move(c));
}

// ---- catalog -------------------------------------------------------------

namespace {

// Exact complex rational scalar, enough for pole power sums.
struct QComplex {
    Rational re, im;
    bool is_real() const { return sgn(im) == 0; }
};

QComplex qc_div(const QComplex& a, const QComplex& b) {
    Rational d = b.re * b.re + b.im * b.im;
    if (sgn(d) == 0) throw DomainError("complex rational division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

double qc_abs(const QComplex& a) {
    return std::hypot(a.re.get_d(), a.im.get_d());
}

HPComplex qc_to_hp(const QComplex& a) { return {HPReal(a.re), HPReal(a.im)}; }

} // namespace

PowerSeries make_rational_series(const RationalCatalogParams& prm) {
    size_t np = prm.pole_re.size();
    if (np != prm.pole_im.size() || np != prm.residue_re.size() || np != prm.residue_im.size())
        throw ConfigError("rational catalog: poles/residues length mismatch");
    std::vector<QComplex> poles(np), res(np);
    for (size_t i = 0; i < np; ++i) {
        poles[i] = {prm.pole_re[i], prm.pole_im[i]};
        res[i] = {prm.residue_re[i], prm.residue_im[i]};
        if (sgn(poles[i].re) == 0 && sgn(poles[i].im) == 0)
            throw ConfigError("rational catalog: pole at 0");
        if (sgn(res[i].re) == 0 && sgn(res[i].im) == 0)
            throw ConfigError("rational catalog: zero residue");
    }
    for (size_t i = 0; i < np; ++i)
        for (size_t j = i + 1; j < np; ++j)
            if (poles[i].re == poles[j].re && poles[i].im == poles[j].im)
                throw ConfigError("rational catalog: duplicate pole");

    // Conjugate symmetry keeps every Taylor coefficient real.
    for (size_t i = 0; i < np; ++i) {
        if (poles[i].is_real()) {
            if (!res[i].is_real())
                throw ConfigError("rational catalog: complex residue at a real pole");
            continue;
        }
        bool matched = false;
        for (size_t j = 0; j < np; ++j) {
            if (j == i) continue;
            if (poles[j].re == poles[i].re && poles[j].im == -poles[i].im &&
                res[j].re == res[i].re && res[j].im == -res[i].im) {
                matched = true;
                break;
            }
        }
        if (!matched)
            throw ConfigError("rational catalog: complex poles need conjugate partners");
    }

    Polynomial poly = prm.polynomial_part;

    // f_j = poly_j + sum_i c_i / p_i^{j+1}; memoized power state per pole.
    struct State {
        std::vector<QComplex> pole_inv_pow; // 1/p_i^{j+1} for current j
        long cur_j = -1;
        std::mutex mu;
    };
    auto st = std::make_shared<State>();
    st->pole_inv_pow.resize(np);

    auto poles_copy = poles;
    auto res_copy = res;
    auto rule = [st, poles_copy, res_copy, poly, np](long j) -> Rational {
        std::lock_guard lk(st->mu);
        if (st->cur_j > j || st->cur_j < 0) {
            for (size_t i = 0; i < np; ++i)
                st->pole_inv_pow[i] = qc_div(QComplex{Rational(1), Rational(0)}, poles_copy[i]);
            st->cur_j = 0;
        }
        while (st->cur_j < j) {
            for (size_t i = 0; i < np; ++i)
                st->pole_inv_pow[i] = qc_div(st->pole_inv_pow[i], poles_copy[i]);
            ++st->cur_j;
        }
        QComplex acc{poly.coeff(j), Rational(0)};
        for (size_t i = 0; i < np; ++i)
            acc = {acc.re + res_copy[i].re * st->pole_inv_pow[i].re -
                       res_copy[i].im * st->pole_inv_pow[i].im,
                   acc.im + res_copy[i].re * st->pole_inv_pow[i].im +
                       res_copy[i].im * st->pole_inv_pow[i].re};
        if (!acc.is_real())
            throw InvariantViolation("rational catalog produced a non-real coefficient");
        return acc.re;
    };

    SeriesMeta meta;
    meta.kind = "rational";
    std::vector<double> mods;
    for (auto& p : poles) {
        mods.push_back(qc_abs(p));
        meta.poles.push_back(qc_to_hp(p));
    }
    std::sort(mods.begin(), mods.end());
    meta.r0 = mods.front();
    for (long m = 0; m < static_cast<long>(np); ++m) meta.rm[m] = mods[static_cast<size_t>(m)];
    for (long m = static_cast<long>(np); m <= static_cast<long>(np) + 2; ++m)
        meta.rm[m] = kInfRadius;
    meta.r_meromorphy = kInfRadius;
    // Candidate regular boundary points on |z| = R_0 away from the poles.
    {
        double r0 = *meta.r0;
        const std::vector<std::pair<double, double>> cands = {
            {-r0, 0.0}, {r0, 0.0}, {0.0, r0}, {0.0, -r0}};
        for (auto [x, y] : cands) {
            bool is_pole = false;
            for (auto& p : poles)
                if (std::abs(p.re.get_d() - x) < 1e-12 && std::abs(p.im.get_d() - y) < 1e-12)
                    is_pole = true;
            if (!is_pole) meta.regular_boundary_points.emplace_back(x, y);
        }
    }

    auto ref = [poles_copy, res_copy, poly](const HPComplex& z) -> HPComplex {
        HPComplex acc = poly.eval(z);
        for (size_t i = 0; i < poles_copy.size(); ++i)
            acc = acc + qc_to_hp(res_copy[i]) / (qc_to_hp(poles_copy[i]) - z);
        return acc;
    };
    auto dom = [poles_copy](const HPComplex& z) -> bool {
        for (auto& p : poles_copy) {
            HPComplex d = qc_to_hp(p) - z;
            if (abs(d).to_double() < 1e-9) return false;
        }
        return true;
    };
    return PowerSeries(rule, meta, ref, dom);
}

PowerSeries make_geometric() {
    RationalCatalogParams p;
    p.pole_re = {Rational(1)};
    p.pole_im = {Rational(0)};
    p.residue_re = {Rational(1)};
    p.residue_im = {Rational(0)};
    return make_rational_series(p);
}

namespace {

// Shared domain for the principal branch of log(1 - z/b) / (1 - z/b)^alpha:
// the plane minus a sliver around the cut {z = t*b, t >= 1}.
PowerSeries::RefDomain branch_cut_domain(const Rational& b) {
    return [b](const HPComplex& z) -> bool {
        HPComplex w = HPComplex(Rational(1)) - z / HPComplex(b);
        double wr = w.re.to_double(), wi = w.im.to_double();
        return !(wr < 1e-12 && std::abs(wi) < 1e-12);
    };
}

SeriesMeta branch_meta(const std::string& kind, const Rational& b) {
    SeriesMeta meta;
    meta.kind = kind;
    double ab = std::abs(b.get_d());
    meta.r0 = ab;
    for (long m = 0; m <= 4; ++m) meta.rm[m] = ab;
    meta.r_meromorphy = ab;
    meta.branch_points.emplace_back(HPReal(b), HPReal(0L));
    meta.multivalued_on_boundary = true;
    double bd = b.get_d();
    meta.regular_boundary_points.emplace_back(-bd, 0.0);
    meta.regular_boundary_points.emplace_back(0.0, ab);
    meta.regular_boundary_points.emplace_back(0.0, -ab);
    return meta;
}

} // namespace

PowerSeries make_log_branch(const BranchCatalogParams& prm) {
    if (sgn(prm.b) == 0) throw ConfigError("log-branch: b must be nonzero");
    Rational b = prm.b;
    auto rule = [b](long j) -> Rational {
        if (j == 0) return Rational(0);
        // [z^j] log(1/(1 - z/b)) = 1 / (j b^j)
        return Rational(1) / (Rational(j) * pow_rational(b, static_cast<unsigned long>(j)));
    };
    auto ref = [b](const HPComplex& z) -> HPComplex {
        HPComplex w = HPComplex(Rational(1)) - z / HPComplex(b);
        return -log(w);
    };
    return PowerSeries(rule, branch_meta("log-branch", b), ref, branch_cut_domain(b));
}

PowerSeries make_algebraic_branch(const BranchCatalogParams& prm) {
    if (sgn(prm.b) == 0) throw ConfigError("algebraic-branch: b must be nonzero");
    if (prm.alpha.get_den() == 1)
        throw ConfigError("algebraic-branch: alpha must be non-integer");
    Rational b = prm.b, alpha = prm.alpha;

    // binom(alpha, j) (-1/b)^j by the ratio recurrence, memoized.
    struct State {
        std::vector<Rational> vals{Rational(1)};
        std::mutex mu;
    };
    auto st = std::make_shared<State>();
    auto rule = [st, alpha, b](long j) -> Rational {
        std::lock_guard lk(st->mu);
        while (static_cast<long>(st->vals.size()) <= j) {
            long k = static_cast<long>(st->vals.size()) - 1;
            Rational next = st->vals.back() * (alpha - Rational(k)) / Rational(k + 1) *
                            (Rational(-1) / b);
            st->vals.push_back(next);
        }
        return st->vals[static_cast<size_t>(j)];
    };
    auto ref = [b, alpha](const HPComplex& z) -> HPComplex {
        HPComplex w = HPComplex(Rational(1)) - z / HPComplex(b);
        return pow(w, HPComplex(alpha));
    };
    return PowerSeries(rule, branch_meta("algebraic-branch", b), ref, branch_cut_domain(b));
}

namespace {

// Term table for f = sum_t (c P)^{g^t}; grown on demand under a lock.
struct LacunaryState {
    Polynomial cp;
    long g = 2;
    long low = 1;  // lowest nonzero degree of cP
    std::vector<Polynomial> terms;
    std::mutex mu;

    const Polynomial& term(size_t t) {
        while (terms.size() <= t) {
            if (terms.empty())
                terms.push_back(cp);
            else
                terms.push_back(pow(terms.back(), static_cast<unsigned long>(g)));
        }
        return terms[t];
    }
};

double circle_max_abs(const Polynomial& p, double r) {
    // max principle: the circle maximum is increasing in r
    const int samples = 8192;
    double best = 0.0;
    std::vector<std::complex<double>> c;
    for (const auto& q : p.coeffs()) c.emplace_back(q.get_d(), 0.0);
    for (int k = 0; k < samples; ++k) {
        double th = 2.0 * M_PI * static_cast<double>(k) / samples;
        std::complex<double> z = std::polar(r, th), acc(0.0, 0.0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
        best = std::max(best, std::abs(acc));
    }
    return best;
}

} // namespace

PowerSeries make_lacunary_lemniscate(const LacunaryCatalogParams& prm) {
    if (prm.gap_base < 2) throw ConfigError("lacunary-lemniscate: gap base g must be >= 2");
    if (sgn(prm.c) == 0) throw ConfigError("lacunary-lemniscate: c must be nonzero");
    if (prm.p.is_zero()) throw ConfigError("lacunary-lemniscate: P must be nonzero");
    if (!is_zero(prm.p.coeff(0))) throw ConfigError("lacunary-lemniscate: P(0) must be 0");

    Polynomial cp = prm.p.scaled(prm.c);
    long low = 0;
    while (is_zero(cp.coeff(low))) ++low;
    long d = cp.degree();
    // gap condition: top degree of term t stays below bottom of term t+1,
    // i.e. q < (g-1) p for P = z^p (unit + ... + z^q)
    if (d - low >= (prm.gap_base - 1) * low)
        throw ConfigError("lacunary-lemniscate: gap condition violated (deg P - p >= (g-1) p)");

    auto st = std::make_shared<LacunaryState>();
    st->cp = cp;
    st->g = prm.gap_base;
    st->low = low;

    auto rule = [st](long j) -> Rational {
        if (j == 0) return Rational(0);
        Rational acc(0);
        std::lock_guard lk(st->mu);
        long span = 1; // g^t
        for (size_t t = 0;; ++t) {
            if (span * st->low > j) break;
            if (j <= span * st->cp.degree()) acc += st->term(t).coeff(j);
            if (span > (1L << 56) / st->g) break;
            span *= st->g;
        }
        return acc;
    };

    SeriesMeta meta;
    meta.kind = "lacunary-lemniscate";
    // R_0: the radius where max_{|z|=r} |cP| reaches 1 (bisection).
    double hi = 1.0;
    while (circle_max_abs(cp, hi) <= 1.0 && hi < 1e12) hi *= 2.0;
    double lo_r = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo_r + hi);
        if (circle_max_abs(cp, mid) <= 1.0)
            lo_r = mid;
        else
            hi = mid;
        if (hi - lo_r < 1e-15 * hi) break;
    }
    double r0 = lo_r;
    meta.r0 = r0;
    for (long m = 0; m <= 4; ++m) meta.rm[m] = r0; // natural boundary: poles do not help
    meta.r_meromorphy = r0;
    {
        // +R_0 is regular when the lemniscate boundary is not met there
        std::complex<double> z(r0, 0.0), acc(0.0, 0.0);
        std::vector<std::complex<double>> c;
        for (const auto& q : cp.coeffs()) c.emplace_back(q.get_d(), 0.0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
        if (std::abs(acc) < 1.0 - 1e-9)
            meta.regular_boundary_points.emplace_back(r0, 0.0);
    }

    long g = prm.gap_base;
    auto ref = [cp, g](const HPComplex& z) -> HPComplex {
        HPComplex w = cp.eval(z);
        HPReal aw = abs(w);
        if (!(aw < HPReal(1.0 - 1e-6)))
            throw DomainError("lacunary reference: |cP(z)| too close to 1");
        // sum w^{g^j}; the tail after exponent E is bounded by |w|^E/(1-|w|)
        int prec = default_precision();
        HPReal tol = exp2i(-(prec + 4));
        HPComplex acc = HPComplex::zero();
        HPComplex termv = w;
        HPReal one_minus = HPReal(1.0) - aw;
        for (int j = 0; j < 4096; ++j) {
            acc = acc + termv;
            HPComplex next = pow(termv, g);
            HPReal tail = abs(next) / one_minus;
            if (tail < tol * (abs(acc) + HPReal(1.0))) break;
            termv = next;
        }
        return acc;
    };
    auto dom = [cp](const HPComplex& z) -> bool {
        HPComplex w = cp.eval(z);
        return abs(w).to_double() < 1.0 - 1e-6;
    };
    return PowerSeries(rule, meta, ref, dom);
}

PowerSeries make_taylor_gap(const TaylorGapParams& prm) {
    if (sgn(prm.rate) == 0) throw ConfigError("taylor-gap: rate must be nonzero");
    auto gaps = prm.gaps;
    std::sort(gaps.begin(), gaps.end());
    for (size_t i = 0; i < gaps.size(); ++i) {
        if (gaps[i].first < 0 || gaps[i].second <= gaps[i].first + 1)
            throw ConfigError("taylor-gap: gap needs lo >= 0 and hi > lo+1");
        if (i > 0 && gaps[i].first < gaps[i - 1].second)
            throw ConfigError("taylor-gap: overlapping gaps");
    }
    Rational rate = prm.rate;
    auto rule = [rate, gaps](long j) -> Rational {
        for (auto& [lo, hi] : gaps)
            if (lo < j && j < hi) return Rational(0);
        return pow_rational(rate, static_cast<unsigned long>(j));
    };
    SeriesMeta meta;
    meta.kind = "taylor-gap";
    meta.r0 = 1.0 / std::abs(rate.get_d());
    return PowerSeries(rule, meta);
}

PowerSeries make_exp_series() {
    struct State {
        std::vector<Rational> vals{Rational(1)};
        std::mutex mu;
    };
    auto st = std::make_shared<State>();
    auto rule = [st](long j) -> Rational {
        std::lock_guard lk(st->mu);
        while (static_cast<long>(st->vals.size()) <= j) {
            long k = static_cast<long>(st->vals.size());
            st->vals.push_back(st->vals.back() / Rational(k));
        }
        return st->vals[static_cast<size_t>(j)];
    };
    SeriesMeta meta;
    meta.kind = "exp";
    meta.r0 = kInfRadius;
    for (long m = 0; m <= 4; ++m) meta.rm[m] = kInfRadius;
    meta.r_meromorphy = kInfRadius;
    auto ref = [](const HPComplex& z) -> HPComplex { return exp(z); };
    return PowerSeries(rule, meta, ref);
}

// ---- radius estimation ---------------------------------------------------

RadiusEstimate estimate_r0(const PowerSeries& f, long N) {
    if (N < 16) throw DomainError("estimate_r0 needs N >= 16");
    long lo = std::max<long>(1, N / 2);
    RadiusEstimate est;
    est.window_lo = lo;
    est.window_hi = N;
    est.method = RadiusMethod::CauchyHadamard;
    double best = 0.0;
    for (long n = lo; n <= N; ++n) {
        Rational c = f.coeff(n);
        double s = is_zero(c) ? 0.0 : nth_root_abs(c, n);
        est.diagnostics.push_back(s);
        best = std::max(best, s);
    }
    if (best == 0.0) {
        est.value = HPReal::pos_inf();
        est.degenerate = true;
    } else {
        est.value = HPReal(1.0 / best);
    }
    return est;
}

Rational hankel_det(const PowerSeries& f, long k, long n) {
    if (k < 0) throw DomainError("hankel_det: k must be >= 0");
    if (k == 0) return Rational(1);
    std::vector<std::vector<Rational>> a(static_cast<size_t>(k),
                                         std::vector<Rational>(static_cast<size_t>(k)));
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) a[i][j] = f.coeff(n + i + j);
    // exact Gaussian elimination with first-nonzero pivoting
    Rational det(1);
    for (long c = 0; c < k; ++c) {
        long piv = -1;
        for (long r = c; r < k; ++r)
            if (!is_zero(a[r][c])) {
                piv = r;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != c) {
            std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(c)]);
            det = -det;
        }
        det *= a[c][c];
        for (long r = c + 1; r < k; ++r) {
            if (is_zero(a[r][c])) continue;
            Rational fctr = a[r][c] / a[c][c];
            for (long j = c; j < k; ++j) a[r][j] -= fctr * a[c][j];
        }
    }
    return det;
}

namespace {

// Fitted slope of log2|H_k(n)| over the trailing window, or nullopt when the
// level is degenerate (fewer than two nonzero determinants).
std::optional<double> hankel_level_slope(const PowerSeries& f, long k, long lo, long hi,
                                         std::vector<double>* diagnostics) {
    if (k == 0) return 0.0;
    std::vector<double> xs, ys;
    for (long n = lo; n <= hi; ++n) {
        Rational h = hankel_det(f, k, n);
        if (diagnostics)
            diagnostics->push_back(is_zero(h) ? 0.0 : nth_root_abs(h, std::max<long>(n, 1)));
        if (!is_zero(h)) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(log2_abs(h));
        }
    }
    if (xs.size() < 2) return std::nullopt;
    return fit_slope(xs, ys);
}

} // namespace

RadiusEstimate estimate_rm(const PowerSeries& f, long m, long N) {
    if (m < 0) throw DomainError("estimate_rm: m must be >= 0");
    if (N < 16) throw DomainError("estimate_rm needs N >= 16");
    long lo = std::max<long>(1, N / 2);
    RadiusEstimate est;
    est.window_lo = lo;
    est.window_hi = N;
    est.method = RadiusMethod::HankelRatio;

    auto sm = hankel_level_slope(f, m, lo, N, nullptr);
    auto sm1 = hankel_level_slope(f, m + 1, lo, N, &est.diagnostics);
    if (!sm || !sm1) {
        est.value = HPReal::pos_inf();
        est.degenerate = true;
        return est;
    }
    est.value = HPReal(std::exp2(*sm - *sm1));
    return est;
}

RadiusEstimate estimate_r_meromorphy(const PowerSeries& f, long m_max, long N) {
    RadiusEstimate best = estimate_rm(f, 0, N);
    for (long m = 1; m <= m_max; ++m) {
        RadiusEstimate e = estimate_rm(f, m, N);
        bool better = e.value.is_inf() || (!best.value.is_inf() && best.value < e.value);
        if (better) best = e;
        if (best.value.is_inf()) break;
    }
    return best;
}

} // namespace padelab
