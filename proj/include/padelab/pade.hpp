#ifndef PADELAB_PADE_HPP
#define PADELAB_PADE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padelab/polynomial.hpp"
#include "padelab/schedule.hpp"
#include "padelab/series.hpp"

namespace padelab {

// Denominator root data in the paper's product normalization
//   Q(z) = prod (z - zeta*) prod (1 - z/zeta~),   |zeta*| < 2R <= |zeta~|.
struct NormalizedDenominator {
    std::vector<HPComplex> inner_roots; // |zeta| <  2R
    std::vector<HPComplex> outer_roots; // |zeta| >= 2R
    double r_used = 0.0;                // the R supplied by the caller
    std::string r_provenance;           // declared | estimated | fixed
    HPReal residual;                    // max |Q(root)| after refinement
    int boundary_flagged = 0;           // roots within 2^(-prec/4) of |z| = 2R

    size_t total_roots() const { return inner_roots.size() + outer_roots.size(); }
    // kappa = prod over inner roots of (-zeta*): Qhat = kappa * Q for our
    // Q(0) = 1 representative.  Empty product = 1.
    HPComplex kappa() const;
    // prod over outer roots of (-1/zeta~): top coefficient of Qhat when the
    // denominator has full degree.
    HPComplex outer_leading() const;
};

// One Pade table entry in reduced form: P/Q coprime, Q(0) = 1.
struct PadeEntry {
    long n = 0, m = 0;       // order indices
    Polynomial p, q;         // coprime; q(0) = 1
    long defect = 0;         // tau = min(n - deg P, m - deg Q)
    long mu = 0;             // exact degree of Q
    Rational a_lead;         // leading coefficient of P (0 if P == 0)
    std::optional<NormalizedDenominator> normalized;

    long deg_p() const { return p.degree(); }
    // [z^n] P: the paper's a_n under its standing deg P_n = n assumption;
    // zero whenever the entry sits short of full numerator degree.
    Rational top_coefficient() const { return p.coeff(n); }
    HPComplex eval(const HPComplex& z) const { return p.eval(z) / q.eval(z); }
};

// Exact Pade approximant of order (n, m): solves the homogeneous Toeplitz
// conditions on q by fraction-free (Bareiss) elimination, picks the
// minimal-degree q in the null space, truncates p = (f q) mod z^{n+1},
// reduces to coprime form and scales Q(0) = 1.  Verifies the contact order
// before returning.
PadeEntry pade(const PowerSeries& f, long n, long m);

// Smallest j <= cap with [z^j](f Q - P) != 0; nullopt when the difference
// vanishes through cap ("exact" sentinel).
std::optional<long> order_of_contact(const PowerSeries& f, const PadeEntry& e, long cap);

// Leading coefficient of P (0 for P == 0); Eq. (a2)'s a_n.
Rational a_coefficient(const PadeEntry& e);

// ---- table blocks ----------------------------------------------------------

struct Block {
    long n0 = 0, m0 = 0;     // anchor (minimal indices)
    long extent_n = 1, extent_m = 1;
    bool clipped = false;    // touches the scanned rectangle's border
    std::vector<std::pair<long, long>> members;

    long extent() const { return extent_n > extent_m ? extent_n : extent_m; }
    bool contains(long n, long m) const {
        return n >= n0 && n < n0 + extent_n && m >= m0 && m < m0 + extent_m;
    }
};

struct TableScan {
    std::vector<PadeEntry> entries; // row-major over (n, m), m fastest
    std::vector<Block> blocks;
    long n_max = 0, m_max = 0;

    const PadeEntry& at(long n, long m) const;
};

// Computes the full rectangle [0..n_max] x [0..m_max] and groups equal
// reduced fractions into maximal blocks.  Interior groups that fail to be
// square raise InvariantViolation (the cited block structure forbids them).
TableScan block_scan(const PowerSeries& f, long n_max, long m_max, int threads = 1);

// ---- denominator normalization ---------------------------------------------

// Finds all mu roots of Q by Aberth-Ehrlich simultaneous iteration in HP
// floats, refines until max |Q(root)| < 2^(-precision/2), splits at |z| < 2R.
// Roots within 2^(-precision/4) of the threshold are classified outer and
// counted in boundary_flagged.
NormalizedDenominator normalize_denominator(const PadeEntry& e, double R,
                                            const std::string& provenance = "fixed");

// ---- difference identity and telescoping tail ------------------------------

// Exact data of P_{n+1} Q_n - P_n Q_{n+1}: under tau_n = tau_{n+1} = 0 this
// is the single monomial A z^{n+m_n+1} of Eq. (b2) (zero inside blocks).
struct DifferenceMonomial {
    Rational coefficient;    // A_n in the Q(0)=1 frame; 0 when entries equal
    long exponent = 0;       // index of the lowest nonzero coefficient
    bool is_monomial = true; // false when defects spread the difference out
};
DifferenceMonomial exact_difference_coefficient(const PadeEntry& e_n, const PadeEntry& e_next);

// A_n per the paper's two-case product formula, evaluated in the product
// normalization frame.  Requires m_next in {m, m+1}; throws ScheduleError
// otherwise.  Degenerate degrees (mu short of full) contribute zero factors.
HPComplex A_coefficient(const PadeEntry& e_n, const PadeEntry& e_next,
                        const NormalizedDenominator& norm_n,
                        const NormalizedDenominator& norm_next);

// (pi_{n+1}(z) - pi_n(z)) - A z^{n+m_n+1-tau_n} / (Qhat_n Qhat_{n+1})(z),
// with Qhat the product-normalized denominators.  Throws DomainError when z
// is within 1e-6 of a computed root of either denominator.
HPComplex difference_identity_residual(const PadeEntry& e_n, const PadeEntry& e_next,
                                       const NormalizedDenominator& norm_n,
                                       const NormalizedDenominator& norm_next,
                                       const HPComplex& A, const HPComplex& z);

struct TailCheckReport {
    HPComplex direct;        // f(z) - pi_n(z) via the reference evaluator
    HPComplex telescoped;    // partial sum of A_k z^{k+m_k+1-tau_k}/(Q_k Q_{k+1})
    HPReal gap;              // |direct - telescoped|
    HPReal tail_estimate;    // (|z|/R)^{n+N_terms}
    bool within_tail = false;
};

// Compares f - pi_n against the partial telescoping series over
// k = n .. n+N_terms.  entries must cover indices n .. n+N_terms+1 of one
// schedule and carry normalizations (for the exclusion check at z).
TailCheckReport tail_series_check(const PowerSeries& f, std::span<const PadeEntry> entries,
                                  long n, long n_terms, const HPComplex& z, double eps,
                                  double R);

} // namespace padelab

#endif
