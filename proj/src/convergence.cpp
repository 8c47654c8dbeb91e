#include "padelab/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "padelab/errors.hpp"
#include "padelab/stats.hpp"

namespace padelab {

bool ExclusionSet::contains(const HPComplex& z) const {
    for (const auto& d : disks)
        if (abs(z - d.center).to_double() < d.radius) return true;
    return false;
}

ExclusionSet omega_disks(std::span<const PadeEntry> entries, double eps) {
    if (!(eps > 0.0)) throw DomainError("omega_disks needs eps > 0");
    ExclusionSet set;
    set.eps = eps;
    for (const auto& e : entries) {
        if (e.n < 1) continue; // the radius formula starts at n = 1
        set.n_truncation = std::max(set.n_truncation, e.n);
        if (e.mu == 0 || !e.normalized) continue;
        double rad = eps / (6.0 * static_cast<double>(e.mu) * static_cast<double>(e.n) *
                            static_cast<double>(e.n));
        auto add = [&](const std::vector<HPComplex>& roots) {
            for (const auto& r : roots) {
                set.disks.push_back({r, rad, e.n});
                set.sigma_bound += 2.0 * rad;
            }
        };
        add(e.normalized->inner_roots);
        add(e.normalized->outer_roots);
    }
    return set;
}

CompactGrid make_grid(const GridSpec& spec, const ExclusionSet* excl) {
    CompactGrid g;
    g.spec = spec;
    auto push = [&](double x, double y) {
        HPComplex z(x, y);
        if (excl && excl->contains(z)) {
            ++g.excluded_count;
            return;
        }
        g.points.push_back(z);
    };
    auto jit = [&spec](uint64_t idx, double mesh) -> double {
        if (spec.jitter <= 0.0) return 0.0;
        uint64_t h = splitmix64(spec.seed * 0x9e3779b97f4a7c15ULL + idx);
        double u = static_cast<double>(h >> 11) * 0x1.0p-53 - 0.5;
        return spec.jitter * mesh * u;
    };

    switch (spec.shape) {
        case GridShape::Disk:
        case GridShape::Annulus:
        case GridShape::AnnularSector: {
            double r0 = spec.shape == GridShape::Disk ? 0.0 : spec.inner_radius;
            double r1 = spec.radius;
            if (!(r1 > r0) || r0 < 0) throw ConfigError("grid: radii must satisfy 0 <= r0 < r1");
            double t0 = 0.0, t1 = 2.0 * M_PI;
            bool full_circle = spec.shape != GridShape::AnnularSector;
            if (!full_circle) {
                t0 = spec.theta_lo;
                t1 = spec.theta_hi;
                if (!(t1 > t0)) throw ConfigError("grid: sector needs theta_hi > theta_lo");
            }
            int na = std::max(2, spec.n_a), nb = std::max(2, spec.n_b);
            double dr = (r1 - r0) / static_cast<double>(na - 1);
            for (int i = 0; i < na; ++i) {
                double r = r0 + dr * i;
                if (r == 0.0) {
                    push(spec.center_re, spec.center_im);
                    continue;
                }
                // full circles drop the closing duplicate; sectors keep both ends
                for (int k = 0; k < nb; ++k) {
                    double span = t1 - t0;
                    double th = full_circle
                                    ? t0 + span * static_cast<double>(k) / nb
                                    : t0 + span * static_cast<double>(k) / (nb - 1);
                    uint64_t idx = static_cast<uint64_t>(i) * 100003ULL + static_cast<uint64_t>(k);
                    double rr = r + jit(idx, dr);
                    push(spec.center_re + rr * std::cos(th), spec.center_im + rr * std::sin(th));
                }
            }
            double cr = std::hypot(spec.center_re, spec.center_im);
            g.max_abs = cr + r1;
            if (spec.shape != GridShape::Disk && cr == 0.0) g.max_abs = r1;
            break;
        }
        case GridShape::Rectangle: {
            if (!(spec.x_hi > spec.x_lo) || !(spec.y_hi > spec.y_lo))
                throw ConfigError("grid: rectangle needs x_lo < x_hi and y_lo < y_hi");
            int na = std::max(2, spec.n_a), nb = std::max(2, spec.n_b);
            double dx = (spec.x_hi - spec.x_lo) / (na - 1);
            double dy = (spec.y_hi - spec.y_lo) / (nb - 1);
            for (int i = 0; i < na; ++i)
                for (int k = 0; k < nb; ++k) {
                    uint64_t idx = static_cast<uint64_t>(i) * 100003ULL + static_cast<uint64_t>(k);
                    push(spec.x_lo + dx * i + jit(idx, dx),
                         spec.y_lo + dy * k + jit(2 * idx + 1, dy));
                }
            double cx = std::max(std::abs(spec.x_lo), std::abs(spec.x_hi));
            double cy = std::max(std::abs(spec.y_lo), std::abs(spec.y_hi));
            g.max_abs = std::hypot(cx, cy);
            break;
        }
    }
    return g;
}

ConvergenceReport grid_errors(const PowerSeries& f, std::span<const PadeEntry> entries,
                              const CompactGrid& grid, double R,
                              const std::string& r_provenance, double tolerance,
                              int threads) {
    if (!f.has_reference()) throw CapabilityError("grid_errors needs a reference evaluator");
    if (grid.points.size() < 50)
        throw DomainError("grid_errors needs at least 50 retained points");

    ConvergenceReport rep;
    rep.rate_provenance = r_provenance;
    rep.tolerance = tolerance;

    // reference values once per point
    std::vector<std::optional<HPComplex>> fz(grid.points.size());
    parallel_for(grid.points.size(), threads, [&](size_t i) {
        if (f.in_reference_domain(grid.points[i])) fz[i] = f.reference(grid.points[i]);
    });

    rep.n.reserve(entries.size());
    std::vector<HPReal> sup_errs(entries.size());
    std::vector<size_t> kept(entries.size(), 0), skip(entries.size(), 0);
    parallel_for(entries.size(), threads, [&](size_t t) {
        const PadeEntry& e = entries[t];
        HPPoly ph(e.p), qh(e.q);
        HPReal sup(0L);
        for (size_t i = 0; i < grid.points.size(); ++i) {
            if (!fz[i]) {
                ++skip[t];
                continue;
            }
            HPComplex approx = ph.eval(grid.points[i]) / qh.eval(grid.points[i]);
            sup = max(sup, abs(*fz[i] - approx));
            ++kept[t];
        }
        sup_errs[t] = sup;
    });

    for (size_t t = 0; t < entries.size(); ++t) {
        if (kept[t] == 0) throw DomainError("grid_errors: all points skipped for one entry");
        rep.n.push_back(entries[t].n);
        rep.retained.push_back(kept[t]);
        rep.skipped.push_back(skip[t]);
        rep.log2_sup_err.push_back(sup_errs[t].is_zero()
                                       ? -std::numeric_limits<double>::infinity()
                                       : log2(sup_errs[t]).to_double());
    }

    // fit the trailing half on finite log-errors
    size_t half = entries.size() / 2;
    std::vector<double> xs, ys;
    bool all_zero = true;
    for (size_t t = half; t < entries.size(); ++t) {
        if (std::isfinite(rep.log2_sup_err[t])) {
            all_zero = false;
            xs.push_back(static_cast<double>(rep.n[t]));
            ys.push_back(rep.log2_sup_err[t]);
        }
    }
    rep.exact = all_zero;
    if (!all_zero && xs.size() >= 2) rep.fitted_rate = std::exp2(fit_slope(xs, ys));

    rep.theory_rate = (std::isfinite(R) && R > 0) ? grid.max_abs / R : 0.0;
    rep.residual = rep.exact ? rep.theory_rate : std::abs(rep.fitted_rate - rep.theory_rate);
    rep.verdict = rep.exact || rep.residual <= tolerance;
    return rep;
}

double phi_neighborhood(double R, double alpha) {
    return std::pow(1.0 / (4.0 * R) + 0.5, 1.0 + alpha) * (R + 0.5);
}

double phi_delta0(double alpha) {
    // phi(1/2) = 1 and phi dips below 1 just beyond; find the return to 1
    double lo = 0.5 + 1e-9;
    if (phi_neighborhood(lo, alpha) >= 1.0) return 0.0;
    double hi = 1.0;
    while (phi_neighborhood(hi, alpha) < 1.0 && hi < 1e12) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (phi_neighborhood(mid, alpha) < 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo - 0.5;
}

OverconvergenceScan overconvergence_scan(const PowerSeries& f,
                                         std::span<const PadeEntry> entries,
                                         const std::vector<Window>& windows,
                                         const HPComplex& z0,
                                         const std::vector<double>& radii,
                                         const ExclusionSet& excl, double R,
                                         double success_threshold,
                                         int n_radial, int n_angular) {
    if (windows.empty()) throw DomainError("overconvergence_scan needs detector windows");
    if (!f.has_reference())
        throw CapabilityError("overconvergence_scan needs a reference evaluator");

    OverconvergenceScan scan;
    long base = entries.empty() ? 0 : entries[0].n;
    long top = base + static_cast<long>(entries.size()) - 1;
    for (const auto& w : windows)
        if (w.n_hi >= base && w.n_hi <= top) scan.subsequence.push_back(w.n_hi);
    std::sort(scan.subsequence.begin(), scan.subsequence.end());
    scan.subsequence.erase(std::unique(scan.subsequence.begin(), scan.subsequence.end()),
                           scan.subsequence.end());
    if (scan.subsequence.empty())
        throw DomainError("overconvergence_scan: no window ends inside the horizon");

    // alpha from the windows: liminf surrogate of n_hi/n_lo - 1
    double a = std::numeric_limits<double>::infinity();
    for (const auto& w : windows)
        if (w.n_lo > 0)
            a = std::min(a, static_cast<double>(w.n_hi) / static_cast<double>(w.n_lo) - 1.0);
    scan.alpha = std::isfinite(a) ? a : 0.0;
    scan.phi_delta0 = scan.alpha > 0 ? phi_delta0(scan.alpha) : 0.0;

    for (double r : radii) {
        RadiusVerdict v;
        v.radius = r;
        // points of the disk around z0, outside D_R and the exclusion set,
        // inside the reference domain
        std::vector<HPComplex> pts;
        double zr = z0.re.to_double(), zi = z0.im.to_double();
        for (int i = 1; i <= n_radial; ++i) {
            double rr = r * static_cast<double>(i) / n_radial;
            for (int k = 0; k < n_angular; ++k) {
                double th = 2.0 * M_PI * static_cast<double>(k) / n_angular;
                HPComplex z(zr + rr * std::cos(th), zi + rr * std::sin(th));
                if (abs(z).to_double() < R) continue; // already covered inside D_R
                if (excl.contains(z)) continue;
                if (!f.in_reference_domain(z)) continue;
                pts.push_back(z);
            }
        }
        v.retained = pts.size();
        if (pts.empty()) {
            scan.verdicts.push_back(v);
            continue;
        }
        bool ok = true;
        std::vector<HPReal> sups;
        for (long nk : scan.subsequence) {
            size_t idx = static_cast<size_t>(nk - base);
            if (idx >= entries.size()) {
                ok = false;
                break;
            }
            const PadeEntry& e = entries[idx];
            HPPoly ph(e.p), qh(e.q);
            HPReal sup(0L);
            for (const auto& z : pts)
                sup = max(sup, abs(f.reference(z) - ph.eval(z) / qh.eval(z)));
            sups.push_back(sup);
        }
        if (!ok || sups.empty()) {
            scan.verdicts.push_back(v);
            continue;
        }
        v.decreasing = true;
        bool all_zero = true;
        for (size_t i = 0; i < sups.size(); ++i) {
            v.log2_errors.push_back(sups[i].is_zero()
                                        ? -std::numeric_limits<double>::infinity()
                                        : log2(sups[i]).to_double());
            if (!sups[i].is_zero()) all_zero = false;
            if (i > 0 && !(sups[i] < sups[i - 1])) v.decreasing = false;
        }
        if (all_zero) v.decreasing = true; // exact agreement, degenerate success
        v.terminal_error = sups.back().to_double();
        v.success = v.decreasing && v.terminal_error < success_threshold;
        scan.verdicts.push_back(v);
    }

    for (const auto& v : scan.verdicts)
        if (v.success)
            scan.largest_success_radius =
                std::max(scan.largest_success_radius.value_or(0.0), v.radius);
    return scan;
}

std::vector<PoleProximityRow> pole_proximity(std::span<const PadeEntry> entries,
                                             const std::vector<HPComplex>& true_poles) {
    std::vector<PoleProximityRow> rows;
    rows.reserve(entries.size());
    for (const auto& e : entries) {
        PoleProximityRow row;
        row.n = e.n;
        if (!e.normalized) {
            row.deficit = static_cast<long>(true_poles.size());
            rows.push_back(row);
            continue;
        }
        std::vector<HPComplex> roots = e.normalized->inner_roots;
        long deficit = static_cast<long>(true_poles.size()) - static_cast<long>(roots.size());
        row.deficit = deficit > 0 ? deficit : 0;
        // nearest-neighbor assignment, greedy over poles
        double worst = 0.0;
        std::vector<bool> used(roots.size(), false);
        for (const auto& p : true_poles) {
            double best = std::numeric_limits<double>::infinity();
            size_t best_i = roots.size();
            for (size_t i = 0; i < roots.size(); ++i) {
                if (used[i]) continue;
                double d = abs(p - roots[i]).to_double();
                if (d < best) {
                    best = d;
                    best_i = i;
                }
            }
            if (best_i == roots.size()) break; // ran out of roots
            used[best_i] = true;
            worst = std::max(worst, best);
        }
        row.max_matched_distance = worst;
        rows.push_back(row);
    }
    return rows;
}

} // namespace padelab
