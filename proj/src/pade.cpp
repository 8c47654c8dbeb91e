#include "padelab/pade.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "padelab/errors.hpp"
#include "padelab/stats.hpp"

namespace padelab {

namespace {

// Minimal-degree nonzero solution of the m x (m+1) homogeneous Toeplitz
// system sum_i q_i f_{n+k-i} = 0, k = 1..m.  Fraction-free (Bareiss)
// elimination on the integer-scaled matrix; columns are processed left to
// right, so the first pivotless column d yields the unique (up to scale)
// solution of degree exactly d.
std::vector<Rational> solve_denominator(const PowerSeries& f, long n, long m) {
    if (m == 0) return {Rational(1)};

    // scale the coefficient window to integers
    long j_lo = std::max<long>(0, n + 1 - m);
    long j_hi = n + m;
    Integer lcm(1);
    for (long j = j_lo; j <= j_hi; ++j)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), f.coeff(j).get_den().get_mpz_t());
    auto scaled = [&](long j) -> Integer {
        if (j < 0) return Integer(0);
        Rational v = f.coeff(j) * Rational(lcm);
        return v.get_num(); // exact: denominator divides lcm
    };

    size_t rows = static_cast<size_t>(m), cols = static_cast<size_t>(m) + 1;
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            a[r][c] = scaled(n + 1 + static_cast<long>(r) - static_cast<long>(c));

    Integer prev(1);
    size_t row = 0;
    size_t free_col = cols - 1;
    for (size_t c = 0; c < cols; ++c) {
        size_t piv = row;
        while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
        if (piv == rows || row == rows) {
            free_col = c;
            break;
        }
        if (piv != row) std::swap(a[piv], a[row]);
        for (size_t i = row + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                Integer t = a[i][j] * a[row][c] - a[i][c] * a[row][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[row][c];
        ++row;
    }

    // pivot rows 0..free_col-1 carry pivots at columns 0..free_col-1
    std::vector<Rational> q(free_col + 1, Rational(0));
    q[free_col] = Rational(1);
    for (size_t i = free_col; i-- > 0;) {
        Rational acc(0);
        for (size_t j = i + 1; j <= free_col; ++j)
            acc += Rational(a[i][j]) * q[j];
        q[i] = -acc / Rational(a[i][i]);
    }
    return q;
}

} // namespace

PadeEntry pade(const PowerSeries& f, long n, long m) {
    if (n < 0 || m < 0) throw DomainError("pade: order indices must be >= 0");

    Polynomial q(solve_denominator(f, n, m));
    Polynomial taylor_n = f.taylor(n);
    Polynomial p = (taylor_n * q).truncated(n);

    Polynomial g = gcd(p, q); // monic; gcd(0, q) = monic q
    Polynomial P = p.is_zero() ? Polynomial() : exact_div(p, g);
    Polynomial Q = exact_div(q, g);
    Rational q0 = Q.at0();
    if (is_zero(q0))
        throw InvariantViolation("reduced Pade denominator vanishes at 0");
    P = P.scaled(Rational(1) / q0);
    Q = Q.scaled(Rational(1) / q0);

    PadeEntry e;
    e.n = n;
    e.m = m;
    e.p = P;
    e.q = Q;
    e.mu = std::max<long>(Q.degree(), 0);
    // deg(0) counts as -inf in the defect, else the contact bound breaks
    e.defect = P.is_zero() ? m - Q.degree() : std::min(n - P.degree(), m - Q.degree());
    e.a_lead = P.is_zero() ? Rational(0) : P.leading();

    // contact must reach n+m+1-tau: [z^j](f Q - P) = 0 for j <= n+m-tau
    long need = n + m - e.defect;
    for (long j = 0; j <= need; ++j) {
        Rational conv(0);
        for (long i = 0; i <= std::min<long>(j, Q.degree()); ++i)
            conv += Q.coeff(i) * f.coeff(j - i);
        conv -= P.coeff(j);
        if (!is_zero(conv))
            throw InvariantViolation("Pade contact order fails at coefficient " +
                                     std::to_string(j));
    }
    return e;
}

std::optional<long> order_of_contact(const PowerSeries& f, const PadeEntry& e, long cap) {
    if (cap < e.n + e.m + 1) throw DomainError("order_of_contact: cap below n+m+1");
    for (long j = 0; j <= cap; ++j) {
        Rational conv(0);
        for (long i = 0; i <= std::min<long>(j, e.q.degree()); ++i)
            conv += e.q.coeff(i) * f.coeff(j - i);
        conv -= e.p.coeff(j);
        if (!is_zero(conv)) return j;
    }
    return std::nullopt;
}

Rational a_coefficient(const PadeEntry& e) { return e.a_lead; }

// ---- block scan -------------------------------------------------------------

const PadeEntry& TableScan::at(long n, long m) const {
    if (n < 0 || n > n_max || m < 0 || m > m_max)
        throw DomainError("table index out of range");
    return entries[static_cast<size_t>(n) * static_cast<size_t>(m_max + 1) +
                   static_cast<size_t>(m)];
}

TableScan block_scan(const PowerSeries& f, long n_max, long m_max, int threads) {
    if (n_max < 1 || m_max < 1) throw DomainError("block_scan needs n_max, m_max >= 1");
    TableScan scan;
    scan.n_max = n_max;
    scan.m_max = m_max;
    size_t count = static_cast<size_t>(n_max + 1) * static_cast<size_t>(m_max + 1);
    scan.entries.resize(count);
    // warm the coefficient cache once so workers only read
    (void)f.taylor(n_max + m_max);
    parallel_for(count, threads, [&](size_t idx) {
        long n = static_cast<long>(idx) / (m_max + 1);
        long m = static_cast<long>(idx) % (m_max + 1);
        scan.entries[idx] = pade(f, n, m);
    });

    std::map<std::string, std::vector<std::pair<long, long>>> groups;
    for (long n = 0; n <= n_max; ++n)
        for (long m = 0; m <= m_max; ++m) {
            const PadeEntry& e = scan.at(n, m);
            groups[e.p.str() + " | " + e.q.str()].emplace_back(n, m);
        }

    for (auto& [key, cells] : groups) {
        Block b;
        long n_lo = n_max, n_hi = 0, m_lo = m_max, m_hi = 0;
        for (auto [n, m] : cells) {
            n_lo = std::min(n_lo, n);
            n_hi = std::max(n_hi, n);
            m_lo = std::min(m_lo, m);
            m_hi = std::max(m_hi, m);
        }
        b.n0 = n_lo;
        b.m0 = m_lo;
        b.extent_n = n_hi - n_lo + 1;
        b.extent_m = m_hi - m_lo + 1;
        b.clipped = (n_hi == n_max) || (m_hi == m_max);
        b.members = cells;
        if (static_cast<long>(cells.size()) != b.extent_n * b.extent_m)
            throw InvariantViolation("block members do not fill their bounding box");
        if (!b.clipped && b.extent_n != b.extent_m)
            throw InvariantViolation("interior block is not square");
        scan.blocks.push_back(std::move(b));
    }
    std::sort(scan.blocks.begin(), scan.blocks.end(), [](const Block& x, const Block& y) {
        return std::tie(x.n0, x.m0) < std::tie(y.n0, y.m0);
    });
    return scan;
}

// ---- denominator normalization -----------------------------------------------

HPComplex NormalizedDenominator::kappa() const {
    HPComplex k(HPReal(1L), HPReal(0L));
    for (const auto& z : inner_roots) k = k * (-z);
    return k;
}

HPComplex NormalizedDenominator::outer_leading() const {
    HPComplex k(HPReal(1L), HPReal(0L));
    for (const auto& z : outer_roots) k = k * (-inv(z));
    return k;
}

namespace {

struct RootLess {
    bool operator()(const HPComplex& a, const HPComplex& b) const {
        HPReal aa = abs(a), ab = abs(b);
        if (aa < ab) return true;
        if (ab < aa) return false;
        if (a.re < b.re) return true;
        if (b.re < a.re) return false;
        return a.im < b.im;
    }
};

} // namespace

NormalizedDenominator normalize_denominator(const PadeEntry& e, double R,
                                            const std::string& provenance) {
    if (!(R > 0)) throw DomainError("normalize_denominator needs R > 0");
    NormalizedDenominator nd;
    nd.r_used = R;
    nd.r_provenance = provenance;
    nd.residual = HPReal(0L);

    long mu = e.q.degree();
    if (mu <= 0) return nd;

    int prec = default_precision();
    HPReal target = exp2i(-(prec / 2));

    if (mu == 1) {
        // exact root of a linear denominator
        HPComplex root(HPReal(-e.q.coeff(0) / e.q.coeff(1)), HPReal(0L));
        nd.residual = abs(e.q.eval(root));
        HPReal tie = exp2i(-(prec / 4));
        if (std::isinf(R) || abs(root) < HPReal(2.0 * R) - tie) {
            nd.inner_roots.push_back(root);
        } else {
            if (abs(abs(root) - HPReal(2.0 * R)) < tie) ++nd.boundary_flagged;
            nd.outer_roots.push_back(root);
        }
        return nd;
    }

    HPPoly qh(e.q), dq(e.q.derivative());

    // Cauchy bound on |roots| from exact coefficient magnitudes
    double lead_log = log2_abs(e.q.leading());
    double maxr = 0.0;
    for (long i = 0; i < mu; ++i) {
        const Rational& c = e.q.coeff(i);
        if (is_zero(c)) continue;
        maxr = std::max(maxr, std::exp2(std::min(500.0, log2_abs(c) - lead_log)));
    }
    double rho = 1.0 + maxr;

    std::vector<HPComplex> z;
    z.reserve(static_cast<size_t>(mu));
    for (long k = 0; k < mu; ++k) {
        double th = 2.0 * M_PI * (static_cast<double>(k) + 0.3) / static_cast<double>(mu) + 0.42;
        z.emplace_back(0.7 * rho * std::cos(th), 0.7 * rho * std::sin(th));
    }

    HPReal best_res = HPReal::pos_inf();
    bool converged = false;
    for (int iter = 0; iter < 400; ++iter) {
        std::vector<HPComplex> qv(z.size());
        HPReal res(0L);
        for (size_t i = 0; i < z.size(); ++i) {
            qv[i] = qh.eval(z[i]);
            res = max(res, abs(qv[i]));
        }
        best_res = min(best_res, res);
        if (res < target) {
            converged = true;
            break;
        }
        for (size_t i = 0; i < z.size(); ++i) {
            HPComplex dv = dq.eval(z[i]);
            if (abs(dv).is_zero()) {
                z[i] = z[i] + HPComplex(1e-8 * (1.0 + static_cast<double>(i)), 1e-8);
                continue;
            }
            HPComplex w = qv[i] / dv;
            HPComplex s = HPComplex::zero();
            for (size_t j = 0; j < z.size(); ++j) {
                if (j == i) continue;
                HPComplex d = z[i] - z[j];
                if (abs(d).is_zero()) {
                    d = HPComplex(1e-12, 1e-12);
                }
                s = s + inv(d);
            }
            HPComplex denom = HPComplex(Rational(1)) - w * s;
            if (abs(denom).is_zero()) denom = HPComplex(Rational(1));
            z[i] = z[i] - w / denom;
        }
    }
    if (!converged)
        throw NumericFailure("Aberth refinement missed the residual target",
                             best_res.to_double());

    { // final residual
        HPReal res(0L);
        for (auto& zi : z) res = max(res, abs(qh.eval(zi)));
        nd.residual = res;
    }

    std::sort(z.begin(), z.end(), RootLess{});
    if (std::isinf(R)) {
        nd.inner_roots = std::move(z);
        return nd;
    }
    HPReal tie = exp2i(-(prec / 4));
    HPReal thr = HPReal(2.0 * R);
    for (auto& zi : z) {
        HPReal a = abs(zi);
        if (a < thr - tie) {
            nd.inner_roots.push_back(zi);
        } else {
            if (abs(a - thr) < tie) ++nd.boundary_flagged;
            nd.outer_roots.push_back(zi);
        }
    }
    return nd;
}

// ---- difference identity -----------------------------------------------------

DifferenceMonomial exact_difference_coefficient(const PadeEntry& e_n, const PadeEntry& e_next) {
    Polynomial d = e_next.p * e_n.q - e_n.p * e_next.q;
    DifferenceMonomial out;
    if (d.is_zero()) {
        out.coefficient = Rational(0);
        out.exponent = e_n.n + e_n.m + 1 - e_n.defect;
        out.is_monomial = true;
        return out;
    }
    long s = 0;
    while (is_zero(d.coeff(s))) ++s;
    out.exponent = s;
    out.coefficient = d.coeff(s);
    out.is_monomial = (d.degree() == s);
    return out;
}

HPComplex A_coefficient(const PadeEntry& e_n, const PadeEntry& e_next,
                        const NormalizedDenominator& norm_n,
                        const NormalizedDenominator& norm_next) {
    if (e_next.n != e_n.n + 1)
        throw ScheduleError("A_coefficient: entries must sit at consecutive n");
    if (e_next.m != e_n.m && e_next.m != e_n.m + 1)
        throw ScheduleError("A_coefficient: m_{n+1} must be m_n or m_n+1");
    if (!(norm_n.r_used == norm_next.r_used) &&
        !(std::isinf(norm_n.r_used) && std::isinf(norm_next.r_used)))
        throw DomainError("A_coefficient: normalizations use different radii");

    // top coefficients in the product-normalized frame
    HPComplex a_next = norm_next.kappa() * HPComplex(e_next.top_coefficient());
    HPComplex a_cur = norm_n.kappa() * HPComplex(e_n.top_coefficient());

    HPComplex t1 = HPComplex::zero();
    if (e_n.mu == e_n.m) t1 = a_next * norm_n.outer_leading();
    HPComplex t2 = HPComplex::zero();
    if (e_next.mu == e_n.m + 1) t2 = a_cur * norm_next.outer_leading();
    return t1 - t2;
}

HPComplex difference_identity_residual(const PadeEntry& e_n, const PadeEntry& e_next,
                                       const NormalizedDenominator& norm_n,
                                       const NormalizedDenominator& norm_next,
                                       const HPComplex& A, const HPComplex& z) {
    auto too_close = [&z](const NormalizedDenominator& nd) {
        for (const auto& r : nd.inner_roots)
            if (abs(z - r).to_double() <= 1e-6) return true;
        for (const auto& r : nd.outer_roots)
            if (abs(z - r).to_double() <= 1e-6) return true;
        return false;
    };
    if (too_close(norm_n) || too_close(norm_next))
        throw DomainError("difference identity probe too close to a free pole");

    HPComplex lhs = e_next.eval(z) - e_n.eval(z);
    HPComplex qhat_n = norm_n.kappa() * e_n.q.eval(z);
    HPComplex qhat_next = norm_next.kappa() * e_next.q.eval(z);
    long s = e_n.n + e_n.m + 1 - e_n.defect;
    HPComplex rhs = A * pow(z, s) / (qhat_n * qhat_next);
    return lhs - rhs;
}

TailCheckReport tail_series_check(const PowerSeries& f, std::span<const PadeEntry> entries,
                                  long n, long n_terms, const HPComplex& z, double eps,
                                  double R) {
    if (!f.has_reference()) throw CapabilityError("tail_series_check needs a reference evaluator");
    long last = n + n_terms + 1;
    if (entries.empty() || entries.front().n != 0 ||
        static_cast<long>(entries.size()) <= last)
        throw DomainError("tail_series_check: entries must cover n = 0.." +
                          std::to_string(last));
    HPReal az = abs(z);
    if (std::isfinite(R) && !(az.to_double() < 0.9 * R))
        throw DomainError("tail_series_check: |z| must stay below 0.9 R");
    // z must avoid the truncated exclusion set Omega(eps)
    for (long k = 1; k <= last; ++k) {
        const auto& e = entries[static_cast<size_t>(k)];
        if (!e.normalized || e.mu == 0) continue;
        double rad = eps / (6.0 * static_cast<double>(e.mu) * static_cast<double>(k) *
                            static_cast<double>(k));
        auto check = [&](const std::vector<HPComplex>& roots) {
            for (const auto& r : roots)
                if (abs(z - r).to_double() < rad)
                    throw DomainError("tail_series_check: z inside Omega(eps)");
        };
        check(e.normalized->inner_roots);
        check(e.normalized->outer_roots);
    }

    TailCheckReport rep;
    rep.direct = f.reference(z) - entries[static_cast<size_t>(n)].eval(z);
    HPComplex acc = HPComplex::zero();
    for (long k = n; k <= n + n_terms; ++k) {
        const PadeEntry& ek = entries[static_cast<size_t>(k)];
        const PadeEntry& ek1 = entries[static_cast<size_t>(k + 1)];
        Polynomial d = ek1.p * ek.q - ek.p * ek1.q;
        if (d.is_zero()) continue;
        acc = acc + d.eval(z) / (ek.q.eval(z) * ek1.q.eval(z));
    }
    rep.telescoped = acc;
    rep.gap = abs(rep.direct - rep.telescoped);
    if (std::isfinite(R)) {
        HPReal ratio = az / HPReal(R);
        rep.tail_estimate = pow(ratio, n + n_terms);
    } else {
        rep.tail_estimate = HPReal(0L);
    }
    rep.within_tail = std::isfinite(R) ? (rep.gap <= HPReal(2.0) * rep.tail_estimate)
                                       : (rep.gap.to_double() < 1e-20);
    return rep;
}

} // namespace padelab
