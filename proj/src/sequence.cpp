#include "padelab/sequence.hpp"

#include <algorithm>
#include <cmath>

#include "padelab/errors.hpp"

namespace padelab {

DecayProfile decay_profile(std::span<const PadeEntry> entries, double R,
                           const std::string& provenance) {
    DecayProfile p;
    p.baseline = (std::isfinite(R) && R > 0) ? 1.0 / R : 0.0;
    p.baseline_provenance = provenance;
    p.values.resize(entries.size(), 0.0);
    p.flags.resize(entries.size(), ProfileFlag::Ok);
    for (size_t i = 0; i < entries.size(); ++i) {
        const PadeEntry& e = entries[i];
        if (e.n == 0) {
            p.flags[i] = ProfileFlag::Skipped;
            continue;
        }
        if (e.defect > 0) {
            p.flags[i] = ProfileFlag::BlockRepeat;
            continue;
        }
        Rational a = e.top_coefficient();
        if (is_zero(a)) {
            p.flags[i] = ProfileFlag::ZeroCoeff;
            continue;
        }
        p.values[i] = nth_root_abs(a, e.n);
    }
    return p;
}

GapScanReport detect_coeff_gaps(const PowerSeries& f, long horizon) {
    if (horizon < 4) throw DomainError("detect_coeff_gaps needs horizon >= 4");
    GapScanReport rep;
    long prev_nonzero = -1;
    for (long n = 0; n <= horizon; ++n) {
        if (is_zero(f.coeff(n))) continue;
        if (prev_nonzero >= 0 && n - prev_nonzero >= 2) {
            Window w;
            w.kind = WindowKind::CoeffGap;
            w.n_lo = prev_nonzero;
            w.n_hi = n;
            w.ratio = static_cast<double>(w.n_lo) / static_cast<double>(w.n_hi);
            rep.windows.push_back(w);
        }
        prev_nonzero = n;
    }
    if (rep.windows.empty()) return rep;

    rep.max_ratio = 0.0;
    rep.ratios_decreasing = true;
    double prev = -1.0;
    for (const auto& w : rep.windows) {
        rep.max_ratio = std::max(rep.max_ratio, w.ratio);
        if (prev >= 0 && w.ratio >= prev) rep.ratios_decreasing = false;
        prev = w.ratio;
    }
    rep.last_ratio = rep.windows.back().ratio;
    rep.in_window_decay = 0.0; // gap interiors are exactly zero
    rep.case_a = rep.ratios_decreasing && rep.last_ratio < 0.5;
    rep.case_b = rep.max_ratio < 1.0;
    return rep;
}

DecayScanReport detect_decay_windows(const DecayProfile& p, double margin,
                                     double min_ratio_gap) {
    if (!(margin > 0.0 && margin < 1.0))
        throw DomainError("detect_decay_windows: margin must lie in (0,1)");
    DecayScanReport rep;
    if (!(p.baseline > 0.0) || !std::isfinite(p.baseline)) return rep; // degenerate baseline
    double thr = (1.0 - margin) * p.baseline;

    auto satisfies = [&](long n) {
        size_t i = static_cast<size_t>(n);
        if (p.flags[i] == ProfileFlag::ZeroCoeff) return true;
        if (p.flags[i] != ProfileFlag::Ok) return false; // no data
        return p.values[i] <= thr;
    };

    std::vector<std::pair<long, long>> runs;
    long h = p.horizon();
    long start = -1;
    for (long n = 1; n <= h; ++n) {
        if (satisfies(n)) {
            if (start < 0) start = n;
        } else if (start >= 0) {
            runs.emplace_back(start, n - 1);
            start = -1;
        }
    }
    if (start >= 0) runs.emplace_back(start, h);

    // merge runs separated by fewer than 3 indices
    std::vector<std::pair<long, long>> merged;
    for (auto& r : runs) {
        if (!merged.empty() && r.first - merged.back().second < 3)
            merged.back().second = r.second;
        else
            merged.push_back(r);
    }

    rep.min_ratio = 1.0;
    for (auto& [lo, hi] : merged) {
        double ratio = static_cast<double>(lo) / static_cast<double>(hi);
        if (ratio > 1.0 - min_ratio_gap) continue;
        Window w;
        w.kind = WindowKind::Decay;
        w.n_lo = lo;
        w.n_hi = hi;
        w.ratio = ratio;
        rep.windows.push_back(w);
        rep.min_ratio = std::min(rep.min_ratio, ratio);
    }
    return rep;
}

StationaryScanReport detect_stationary_runs(std::span<const PadeEntry> entries) {
    StationaryScanReport rep;
    if (entries.size() < 2) return rep;
    size_t start = 0;
    auto flush = [&](size_t s, size_t e) { // inclusive run [s, e]
        if (e <= s) return;
        Window w;
        w.kind = WindowKind::Stationary;
        w.n_lo = entries[s].n;
        w.n_hi = entries[e].n;
        w.ratio = static_cast<double>(w.n_lo) / static_cast<double>(w.n_hi);
        rep.windows.push_back(w);
    };
    for (size_t i = 1; i < entries.size(); ++i) {
        bool same = entries[i].p == entries[start].p && entries[i].q == entries[start].q;
        if (!same) {
            flush(start, i - 1);
            start = i;
        }
    }
    flush(start, entries.size() - 1);

    if (!rep.windows.empty()) {
        double last = rep.windows.back().ratio, mx = 0.0;
        bool dec = true;
        double prev = -1.0;
        for (auto& w : rep.windows) {
            mx = std::max(mx, w.ratio);
            if (prev >= 0 && w.ratio >= prev) dec = false;
            prev = w.ratio;
        }
        rep.case_a = dec && last < 0.5;
        rep.case_b = mx < 1.0;
    }
    return rep;
}

double psi(long n_k, double x, const PsiParams& prm) {
    if (!(x >= 0.0) || x >= static_cast<double>(n_k))
        throw DomainError("psi: need 0 <= x < n_k");
    double nk = static_cast<double>(n_k);
    double den = nk - x;
    return (prm.c4 * x + prm.c1) / den +
           (x * 2.0 * static_cast<double>(prm.m) * std::log(nk)) / den -
           prm.tau * nk / den;
}

Theorem9Report theorem9_window_search(const DecayProfile& p, const std::vector<long>& anchors,
                                      PsiParams prm, double r_m) {
    Theorem9Report rep;
    if (!(r_m > 0.0) || !std::isfinite(r_m))
        throw DomainError("theorem9_window_search needs finite R_m > 0");

    if (prm.tau > 0.0) {
        rep.tau_source = "fixed";
    } else {
        // tau = -log(max over anchors of values[n_k] * R_m)
        double mx = 0.0;
        for (long nk : anchors) {
            if (nk < 1 || nk > p.horizon()) continue;
            mx = std::max(mx, p.values[static_cast<size_t>(nk)] * r_m);
        }
        if (!(mx > 0.0) || mx >= 1.0)
            throw DomainError("theorem9: anchors show no decay, tau estimate not positive");
        prm.tau = -std::log(mx);
        rep.tau_source = "estimated";
    }
    rep.tau = prm.tau;

    for (long nk : anchors) {
        PsiWindow w;
        w.n_k = nk;
        if (nk < 2) {
            w.skipped = true;
            w.skip_reason = "anchor below 2";
            rep.windows.push_back(w);
            continue;
        }
        if (psi(nk, 0.0, prm) >= 0.0) {
            w.skipped = true;
            w.skip_reason = "psi(0) >= 0: anchor too small for the given constants";
            rep.windows.push_back(w);
            continue;
        }
        double bound = -prm.tau / 2.0;
        // psi is increasing on the admissible range, so binary search works
        long lo = 0, hi = nk - 1;
        if (psi(nk, 1.0, prm) >= bound) {
            w.l_k = 0;
        } else {
            lo = 1;
            while (lo < hi) {
                long mid = lo + (hi - lo + 1) / 2;
                if (psi(nk, static_cast<double>(mid), prm) < bound)
                    lo = mid;
                else
                    hi = mid - 1;
            }
            w.l_k = lo;
        }
        w.psi_at_l = w.l_k >= 1 ? psi(nk, static_cast<double>(w.l_k), prm)
                                : psi(nk, 0.0, prm);
        // verify |a_nu|^{1/nu} < 1/R_m on [n_k - l_k, n_k] against the profile
        w.profile_agrees = true;
        for (long nu = nk - w.l_k; nu <= nk; ++nu) {
            if (nu < 1 || nu > p.horizon()) {
                w.profile_agrees = false;
                break;
            }
            size_t i = static_cast<size_t>(nu);
            if (p.flags[i] == ProfileFlag::ZeroCoeff) continue;
            if (p.flags[i] != ProfileFlag::Ok || !(p.values[i] < 1.0 / r_m)) {
                w.profile_agrees = false;
                break;
            }
        }
        rep.windows.push_back(w);
    }
    return rep;
}

Theorem6Report theorem6_conclusion_check(const DecayProfile& p,
                                         const std::vector<long>& lambda,
                                         double r_m, double r_f) {
    Theorem6Report rep;
    double mx = 0.0;
    for (long n : lambda) {
        if (n < 1 || n > p.horizon()) continue;
        size_t i = static_cast<size_t>(n);
        if (p.flags[i] == ProfileFlag::BlockRepeat || p.flags[i] == ProfileFlag::Skipped)
            continue;
        mx = std::max(mx, p.values[i]);
        ++rep.samples;
    }
    rep.limsup_estimate = mx;
    rep.below_inv_rm = std::isfinite(r_m) && r_m > 0 ? mx < 1.0 / r_m : true;
    rep.below_inv_rf = std::isfinite(r_f) && r_f > 0 ? mx < 1.0 / r_f : true;
    return rep;
}

} // namespace padelab
