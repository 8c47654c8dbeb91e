#ifndef PADELAB_CONVERGENCE_HPP
#define PADELAB_CONVERGENCE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padelab/pade.hpp"
#include "padelab/sequence.hpp"
#include "padelab/series.hpp"

namespace padelab {

// Omega(eps): for each computed n >= 1, a disk of radius eps/(6 mu_n n^2)
// around every free pole of pi_n.  sigma_bound sums the diameters and stays
// below eps (the series sum_n 1/n^2 caps it at eps pi^2/18).
struct ExclusionDisk {
    HPComplex center;
    double radius = 0.0;
    long n = 0;
};

struct ExclusionSet {
    std::vector<ExclusionDisk> disks;
    double eps = 0.0;
    double sigma_bound = 0.0; // sum of diameters
    long n_truncation = 0;    // disks exist only for computed n <= this

    bool contains(const HPComplex& z) const;
};

// Entries must carry normalizations; entries with n = 0 or mu_n = 0
// contribute no disks.
ExclusionSet omega_disks(std::span<const PadeEntry> entries, double eps);

// ---- sample grids -----------------------------------------------------------

enum class GridShape { Disk, Annulus, AnnularSector, Rectangle };

struct GridSpec {
    GridShape shape = GridShape::Disk;
    double center_re = 0.0, center_im = 0.0;
    double radius = 0.5;          // Disk / outer radius
    double inner_radius = 0.0;    // Annulus / AnnularSector
    double theta_lo = 0.0, theta_hi = 0.0; // AnnularSector
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0; // Rectangle
    int n_a = 64, n_b = 64;       // radial x angular (or x-y) sample counts
    double jitter = 0.0;          // fraction of the mesh, seeded
    uint64_t seed = 0;
};

struct CompactGrid {
    GridSpec spec;
    std::vector<HPComplex> points;   // retained points
    size_t excluded_count = 0;       // removed by the exclusion set
    double max_abs = 0.0;            // max |z| over the full shape (for rates)
};

CompactGrid make_grid(const GridSpec& spec, const ExclusionSet* excl);

// ---- convergence reports ------------------------------------------------------

struct ConvergenceReport {
    std::vector<long> n;              // entry indices measured
    std::vector<double> log2_sup_err; // log2 of per-n sup errors (-inf when exact 0)
    std::vector<size_t> retained;     // evaluable grid points per n
    std::vector<size_t> skipped;      // reference-domain skips per n
    double fitted_rate = 0.0;         // exp of the trailing-half log-error slope
    bool exact = false;               // all trailing errors are exactly zero
    double theory_rate = 0.0;         // max_K |z| / R
    std::string rate_provenance;      // where R came from
    double residual = 0.0;            // |fitted - theory|
    bool verdict = false;             // residual <= tolerance
    double tolerance = 0.0;
};

// Sup of |f - pi_n| over the retained grid per n; fits the trailing-half
// geometric rate and compares against max_K |z| / R.
ConvergenceReport grid_errors(const PowerSeries& f, std::span<const PadeEntry> entries,
                              const CompactGrid& grid, double R,
                              const std::string& r_provenance, double tolerance,
                              int threads = 1);

// ---- overconvergence scan ------------------------------------------------------

struct RadiusVerdict {
    double radius = 0.0;
    size_t retained = 0;
    std::vector<double> log2_errors; // per subsequence index
    bool decreasing = false;
    double terminal_error = 0.0;
    bool success = false; // decreasing and terminal below the threshold
};

struct OverconvergenceScan {
    std::vector<long> subsequence;      // window-end indices n_k'
    std::vector<RadiusVerdict> verdicts;
    std::optional<double> largest_success_radius;
    double alpha = 0.0;   // liminf n_k'/n_k - 1 surrogate from the windows
    double phi_delta0 = 0.0; // analytic delta_0 with phi(1/2 + delta_0) = 1
};

// phi(R) = (1/(4R) + 1/2)^{1+alpha} (R + 1/2); delta_0 > 0 solves the first
// return of phi to 1 beyond R = 1/2.
double phi_neighborhood(double R, double alpha);
double phi_delta0(double alpha);

// Evaluates the window-end subsequence on disks around the declared regular
// point z0, keeping only points outside D_R and the exclusion set.  Reports
// the per-radius error monotonicity and terminal error.
OverconvergenceScan overconvergence_scan(const PowerSeries& f,
                                         std::span<const PadeEntry> entries,
                                         const std::vector<Window>& windows,
                                         const HPComplex& z0,
                                         const std::vector<double>& radii,
                                         const ExclusionSet& excl, double R,
                                         double success_threshold,
                                         int n_radial = 24, int n_angular = 24);

// ---- pole attraction -----------------------------------------------------------

struct PoleProximityRow {
    long n = 0;
    double max_matched_distance = 0.0; // nearest-neighbor assignment, max over poles
    long deficit = 0;                  // true poles minus available inner roots
};

// Distances from each entry's inner roots to the true poles inside D_{R_m}.
std::vector<PoleProximityRow> pole_proximity(std::span<const PadeEntry> entries,
                                             const std::vector<HPComplex>& true_poles);

} // namespace padelab

#endif
