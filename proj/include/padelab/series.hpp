#ifndef PADELAB_SERIES_HPP
#define PADELAB_SERIES_HPP

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "padelab/hp.hpp"
#include "padelab/polynomial.hpp"
#include "padelab/rational.hpp"

namespace padelab {

constexpr double kInfRadius = std::numeric_limits<double>::infinity();

// Declared analytic metadata.  Only validators and theory-rate reports read
// these; the estimators below never do.
struct SeriesMeta {
    std::string kind;
    std::optional<double> r0;              // radius of convergence
    std::map<long, double> rm;             // radius of m-meromorphy, by m
    std::optional<double> r_meromorphy;    // R(f) = sup_m R_m
    std::vector<HPComplex> poles;          // known poles (within the declared radii)
    std::vector<HPComplex> branch_points;
    std::vector<HPComplex> regular_boundary_points; // on |z| = R(f), f regular there
    bool multivalued_on_boundary = false;

    // Declared R_m falling back to R(f) and then R_0; nullopt when unknown.
    std::optional<double> radius_for_m(long m) const;
};

// Formal power series with an exact, pure coefficient rule.  Coefficients
// are memoized; lookups are safe under concurrent readers with exclusive
// insertion.  An optional closed-form evaluator serves as ground truth on a
// declared region.
class PowerSeries {
public:
    using CoeffRule = std::function<Rational(long)>;
    using RefEval = std::function<HPComplex(const HPComplex&)>;
    using RefDomain = std::function<bool(const HPComplex&)>;

    PowerSeries(CoeffRule rule, SeriesMeta meta = {},
                RefEval ref = nullptr, RefDomain ref_domain = nullptr);

    // f_j, exact.  j >= 0.
    Rational coeff(long j) const;

    const SeriesMeta& meta() const { return meta_; }

    bool has_reference() const { return static_cast<bool>(ref_); }
    bool in_reference_domain(const HPComplex& z) const;
    // Ground-truth f(z); throws CapabilityError / DomainError.
    HPComplex reference(const HPComplex& z) const;

    // Exact truncated Taylor sum of degree <= N.
    Polynomial taylor(long n_max) const;

private:
    CoeffRule rule_;
    SeriesMeta meta_;
    RefEval ref_;
    RefDomain ref_domain_;
    mutable std::vector<std::optional<Rational>> memo_;
    mutable std::shared_mutex mu_;
};

// ---- catalog -------------------------------------------------------------

struct RationalCatalogParams {
    // f(z) = polynomial(z) + sum_i residues[i] / (poles[i] - z)
    std::vector<Rational> pole_re, pole_im;
    std::vector<Rational> residue_re, residue_im;
    Polynomial polynomial_part;
};

struct BranchCatalogParams {
    Rational b{1};           // branch point; nonzero
    Rational alpha{1, 2};    // algebraic-branch exponent, non-integer
};

struct LacunaryCatalogParams {
    Polynomial p;            // P(0) = 0, gap condition q < (g-1) p_low
    long gap_base = 2;       // g >= 2
    Rational c{1};
};

struct TaylorGapParams {
    Rational rate{1};                        // f_n = rate^n outside the gaps
    std::vector<std::pair<long, long>> gaps; // f_n = 0 for lo < n < hi
};

PowerSeries make_rational_series(const RationalCatalogParams& p);
PowerSeries make_log_branch(const BranchCatalogParams& p);
PowerSeries make_algebraic_branch(const BranchCatalogParams& p);
PowerSeries make_lacunary_lemniscate(const LacunaryCatalogParams& p);
PowerSeries make_taylor_gap(const TaylorGapParams& p);
PowerSeries make_exp_series();

// Convenience: 1/(1-z).
PowerSeries make_geometric();

// ---- radius estimation ---------------------------------------------------

enum class RadiusMethod { CauchyHadamard, HankelRatio };

struct RadiusEstimate {
    HPReal value;              // >= 0, may be +inf
    long window_lo = 0, window_hi = 0;
    RadiusMethod method = RadiusMethod::CauchyHadamard;
    bool degenerate = false;   // exact-zero determinant run on the window
    std::vector<double> diagnostics; // per-n root-magnitude samples
};

// 1 / max_{n in [N/2, N]} |f_n|^{1/n}; +inf when the window is all zero.
RadiusEstimate estimate_r0(const PowerSeries& f, long N);

// Hankel-determinant ratio estimate of the radius of m-meromorphy.
RadiusEstimate estimate_rm(const PowerSeries& f, long m, long N);

// H_k(n) = det(f_{n+i+j}), 0 <= i,j < k; H_0 = 1.  Exact.
Rational hankel_det(const PowerSeries& f, long k, long n);

// sup_{m <= m_max} estimate_rm, used when R(f) is not declared.
RadiusEstimate estimate_r_meromorphy(const PowerSeries& f, long m_max, long N);

} // namespace padelab

#endif
