#ifndef PADELAB_SEQUENCE_HPP
#define PADELAB_SEQUENCE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padelab/pade.hpp"
#include "padelab/schedule.hpp"
#include "padelab/series.hpp"

namespace padelab {

// Per-index state of the |a_n|^{1/n} profile.  BlockRepeat marks entries
// with positive defect; detectors treat those as "no data" so table blocks
// cannot masquerade as coefficient decay.
enum class ProfileFlag { Ok, ZeroCoeff, BlockRepeat, Skipped };

struct DecayProfile {
    std::vector<double> values;      // |a_n|^{1/n}; 0 where flagged
    std::vector<ProfileFlag> flags;
    double baseline = 0.0;           // 1/R
    std::string baseline_provenance; // declared | estimated | fixed

    long horizon() const { return static_cast<long>(values.size()) - 1; }
};

// a_n = [z^n] P_n, so on m == 0 schedules this is exactly the Taylor
// coefficient profile.
DecayProfile decay_profile(std::span<const PadeEntry> entries, double R,
                           const std::string& provenance);

enum class WindowKind { CoeffGap, Decay, Stationary, Psi };

struct Window {
    long n_lo = 0, n_hi = 0;
    WindowKind kind = WindowKind::CoeffGap;
    double ratio = 0.0; // n_lo / n_hi

    // CoeffGap: f_n = 0 for n_lo < n < n_hi, endpoints at nonzero coeffs.
    // Decay / Stationary: inclusive run [n_lo, n_hi].
};

struct GapScanReport {
    std::vector<Window> windows;
    // Ostrowski criteria, finite-horizon surrogates:
    double last_ratio = 1.0;       // ratio of the final window
    double max_ratio = 1.0;        // limsup surrogate over windows
    bool ratios_decreasing = false;
    bool case_a = false;           // ratio -> 0 surrogate
    bool case_b = false;           // limsup ratio < 1 (in-gap decay is 0 by construction)
    double in_window_decay = 0.0;  // limsup surrogate of |f_n|^{1/n} inside the windows
};

// Maximal runs of exactly-zero Taylor coefficients between nonzero ones.
GapScanReport detect_coeff_gaps(const PowerSeries& f, long horizon);

struct DecayScanReport {
    std::vector<Window> windows;
    double min_ratio = 1.0; // liminf surrogate for the Theorem-7 side condition
};

// Runs where values[n] <= (1-margin) * baseline; nearby runs (< 3 apart)
// merge; runs with n_lo/n_hi > 1 - min_ratio_gap are dropped.
DecayScanReport detect_decay_windows(const DecayProfile& p, double margin,
                                     double min_ratio_gap);

struct StationaryScanReport {
    std::vector<Window> windows; // runs of identical reduced (P,Q), length >= 2
    bool case_a = false;         // n_k/n_k' -> 0 surrogate
    bool case_b = false;         // limsup n_k/n_k' < 1
};

StationaryScanReport detect_stationary_runs(std::span<const PadeEntry> entries);

// ---- Theorem-9 psi machinery ----------------------------------------------

struct PsiParams {
    double c1 = 1.0;  // >= 1
    double c4 = 1.0;  // >= 1
    long m = 0;       // row index, >= 0
    double tau = 0.0; // > 0
};

// psi_{n_k}(x) = (C4 x + C1)/(n_k - x) + 2 m x log(n_k)/(n_k - x)
//              - tau n_k/(n_k - x); strictly increasing in x on [0, n_k)
// whenever tau < C4 + 2 m log n_k.  Throws DomainError for x >= n_k.
double psi(long n_k, double x, const PsiParams& prm);

struct PsiWindow {
    long n_k = 0;
    long l_k = 0;              // largest integer with psi(x) < -tau/2 on (0, l_k]
    double psi_at_l = 0.0;
    bool skipped = false;      // psi(0) >= 0: anchor too small
    std::string skip_reason;
    bool profile_agrees = false; // values[nu] < 1/R_m for nu in [n_k - l_k, n_k]
};

struct Theorem9Report {
    std::vector<PsiWindow> windows;
    double tau = 0.0;
    std::string tau_source; // estimated | fixed
};

// For each anchor, binary-searches the largest l_k with psi_{n_k} < -tau/2
// on (0, l_k], then verifies the profile against 1/R_m on [n_k-l_k, n_k].
// tau <= 0 means "estimate from the anchors": tau = -log(max values[n_k] R_m).
Theorem9Report theorem9_window_search(const DecayProfile& p, const std::vector<long>& anchors,
                                      PsiParams prm, double r_m);

// Theorem-6 conclusion check on a candidate subsequence: trailing limsup
// surrogate of |a_n|^{1/n} compared against both 1/R_m and 1/R(f) (the
// hypothesis names R_m where the conclusion uses R(f); we report both).
struct Theorem6Report {
    double limsup_estimate = 0.0;
    bool below_inv_rm = false;
    bool below_inv_rf = false;
    long samples = 0;
};

Theorem6Report theorem6_conclusion_check(const DecayProfile& p,
                                         const std::vector<long>& lambda,
                                         double r_m, double r_f);

} // namespace padelab

#endif
