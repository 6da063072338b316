#include "cifs/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cifs {

namespace {

constexpr double kGuardBand = 1e-9;

// Counts the integers m >= 1 satisfying `pred`, given that they form a single run
// and that [lo, hi] approximates it to within rounding.
template <typename Pred>
std::int64_t count_run(Pred &&pred, double lo, double hi) {
    if (!(hi >= lo - 2.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
        return 0;
    }
    const auto a = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(lo)) - 1);
    const auto b = static_cast<std::int64_t>(std::ceil(hi)) + 1;
    if (b < a) {
        return 0;
    }
    std::int64_t first = a;
    while (first <= b && !pred(first)) {
        ++first;
    }
    if (first > b) {
        return 0;
    }
    while (first > 1 && pred(first - 1)) {
        --first;
    }
    std::int64_t last = b;
    while (last > first && !pred(last)) {
        --last;
    }
    while (pred(last + 1)) {
        ++last;
    }
    return last - first + 1;
}

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

// Geometric extent of the rows for points with Im b = n v <= limit.
std::int64_t last_row(double v, double limit) {
    return static_cast<std::int64_t>(std::floor(limit * (1.0 + 2.0 * kGuardBand) / v)) + 1;
}

} // namespace

Side compare_squared(double value, double limit, BoundaryTally *tally) {
    const double tol = kGuardBand * std::max(1.0, std::abs(limit));
    if (std::abs(value - limit) <= tol) {
        if (tally != nullptr) {
            ++tally->near_boundary;
        }
        return Side::OnBoundary;
    }
    return value < limit ? Side::Inside : Side::Outside;
}

IndexSet enumerate_indices(const TauParam &tau, double bound, BoundaryTally *tally) {
    IndexSet out{tau, {}, bound};
    if (bound > 0.0 && std::isfinite(bound)) {
        const double limit = bound * bound;
        const double u     = tau.u();
        const double v     = tau.v();
        for (std::int64_t n = 1; n <= last_row(v, bound); ++n) {
            const double y = static_cast<double>(n) * v;
            for (std::int64_t m = 1;; ++m) {
                const double x = static_cast<double>(m) + static_cast<double>(n) * u;
                if (compare_squared(x * x + y * y, limit, tally) == Side::Outside) {
                    break;
                }
                out.indices.push_back({m, n});
            }
        }
    }
    if (out.indices.empty()) {
        throw EmptySetError("enumerate_indices: no lattice point m + n tau with |b| <= " + std::to_string(bound));
    }
    std::sort(out.indices.begin(), out.indices.end(), [&tau](LatticeIndex a, LatticeIndex b) {
        const double na = std::norm(lattice_value(tau, a));
        const double nb = std::norm(lattice_value(tau, b));
        if (na != nb) {
            return na < nb;
        }
        return a.m != b.m ? a.m < b.m : a.n < b.n;
    });
    return out;
}

IndexSet smallest_indices(const TauParam &tau, std::size_t count) {
    if (count == 0) {
        throw EmptySetError("smallest_indices: requested an empty truncation");
    }
    // Area of the sector between arg 0 and arg tau, divided by the cell area v.
    const double angle = std::arg(tau.value());
    double bound = std::sqrt(2.0 * tau.v() * static_cast<double>(count) / angle) + std::abs(1.0 + tau.value()) + 2.0;
    IndexSet all = enumerate_indices(tau, bound);
    while (all.size() < count) {
        bound *= 1.5;
        all = enumerate_indices(tau, bound);
    }
    const double cut = std::norm(lattice_value(tau, all.indices[count - 1]));
    std::size_t  end = count;
    while (end < all.size() &&
           compare_squared(std::norm(lattice_value(tau, all.indices[end])), cut) != Side::Outside) {
        ++end;
    }
    all.indices.resize(end);
    all.bound = std::sqrt(cut);
    return all;
}

std::int64_t count_shifted_quarter_disk(double z1, double z2, double l, BoundaryTally *tally) {
    if (!(l > 0.0)) {
        return 0;
    }
    const double limit = l * l;
    std::int64_t total = 0;
    const auto   n_lo  = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(z2 - l)) - 1);
    const auto   n_hi  = static_cast<std::int64_t>(std::ceil(z2 + l)) + 1;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        const double dy   = static_cast<double>(n) - z2;
        const double half = safe_sqrt(limit - dy * dy);
        auto         pred = [&](std::int64_t m) {
            const double dx = static_cast<double>(m) - z1;
            return compare_squared(dx * dx + dy * dy, limit, tally) != Side::Outside;
        };
        if (dy * dy > limit * (1.0 + 2.0 * kGuardBand) + 1.0) {
            continue;
        }
        total += count_run(pred, z1 - half, z1 + half);
    }
    return total;
}

std::int64_t count_quarter_disk(double r, BoundaryTally *tally) {
    return count_shifted_quarter_disk(0.0, 0.0, r, tally);
}

std::int64_t count_annulus_between(const TauParam &tau, double r, double outer, BoundaryTally *tally) {
    if (!(r > 0.0)) {
        throw DomainError("count_annulus: radius must be positive");
    }
    if (!(outer > r)) {
        return 0;
    }
    const double inner2 = r * r;
    const double outer2 = outer * outer;
    const double u      = tau.u();
    const double v      = tau.v();
    std::int64_t total  = 0;
    for (std::int64_t n = 1; n <= last_row(v, outer); ++n) {
        const double y     = static_cast<double>(n) * v;
        const double shift = static_cast<double>(n) * u;
        auto         pred  = [&](std::int64_t m) {
            const double x  = static_cast<double>(m) + shift;
            const double n2 = x * x + y * y;
            return compare_squared(n2, inner2, tally) == Side::Outside &&
                   compare_squared(n2, outer2, tally) != Side::Outside;
        };
        total += count_run(pred, safe_sqrt(inner2 - y * y) - shift, safe_sqrt(outer2 - y * y) - shift);
    }
    return total;
}

std::int64_t count_annulus(const TauParam &tau, double r, BoundaryTally *tally) {
    return count_annulus_between(tau, r, spectral_data(tau).n_tau * r, tally);
}

std::int64_t count_lens(const TauParam &tau, ComplexPoint w, double r_prime, BoundaryTally *tally) {
    const double w_abs = std::abs(w);
    if (!(r_prime > 0.0) || !(w_abs > r_prime)) {
        throw DomainError("count_lens: requires |w| > r' > 0");
    }
    const double outer2 = w_abs * w_abs;
    const double lens2  = r_prime * r_prime;
    const double u      = tau.u();
    const double v      = tau.v();
    const auto   n_lo   = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor((w.imag() - r_prime) / v)) - 1);
    const auto   n_hi   = static_cast<std::int64_t>(std::ceil((w.imag() + r_prime) / v)) + 1;
    std::int64_t total  = 0;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        const double y     = static_cast<double>(n) * v;
        const double dy    = y - w.imag();
        const double shift = static_cast<double>(n) * u;
        auto         pred  = [&](std::int64_t m) {
            const double x  = static_cast<double>(m) + shift;
            const double dx = x - w.real();
            return compare_squared(x * x + y * y, outer2, tally) == Side::Inside &&
                   compare_squared(dx * dx + dy * dy, lens2, tally) == Side::Inside;
        };
        const double half_outer = safe_sqrt(outer2 - y * y);
        const double half_lens  = safe_sqrt(lens2 - dy * dy);
        const double lo         = std::max(-half_outer, w.real() - half_lens) - shift;
        const double hi         = std::min(half_outer, w.real() + half_lens) - shift;
        total += count_run(pred, lo, hi);
    }
    return total;
}

GrowthEstimate fit_growth_constants(const TauParam &tau, std::span<const double> r_grid) {
    if (r_grid.empty() || r_grid.front() < 1.0 || !std::is_sorted(r_grid.begin(), r_grid.end()) ||
        std::adjacent_find(r_grid.begin(), r_grid.end()) != r_grid.end()) {
        throw DomainError("fit_growth_constants: grid must be nonempty, strictly increasing, with min >= 1");
    }
    constexpr std::size_t kMinTail = 3;

    const double        n_tau = spectral_data(tau).n_tau;
    std::vector<double> counts(r_grid.size());
    std::vector<double> ratios(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        counts[i] = static_cast<double>(count_annulus_between(tau, r_grid[i], n_tau * r_grid[i]));
        ratios[i] = counts[i] / (r_grid[i] * r_grid[i]);
    }

    // suffix_min[i] = min(ratios[i..]); positivity of the whole tail is part of stability.
    std::vector<double> suffix_min(r_grid.size());
    double              running = std::numeric_limits<double>::infinity();
    for (std::size_t i = r_grid.size(); i-- > 0;) {
        running       = std::min(running, ratios[i]);
        suffix_min[i] = running;
    }

    std::size_t start = r_grid.size();
    for (std::size_t i = 0; i + kMinTail <= r_grid.size(); ++i) {
        if (suffix_min[i] > 0.0 && (ratios[i] - suffix_min[i]) / ratios[i] < 0.5) {
            start = i;
            break;
        }
    }
    if (start == r_grid.size()) {
        throw EstimationError("fit_growth_constants: count/R^2 never stabilizes on the given grid");
    }

    GrowthEstimate est;
    est.c_hat = r_grid[start];
    // Strictly below the observed minimum so the audited inequality is strict.
    est.q_hat = suffix_min[start] * (1.0 - 1e-6);

    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = start; i < r_grid.size(); ++i) {
        const double r2 = r_grid[i] * r_grid[i];
        num += counts[i] * r2;
        den += r2 * r2;
        est.radii.push_back(r_grid[i]);
        est.ratios.push_back(ratios[i]);
    }
    const double slope = num / den;
    est.fit_residual   = 0.0;
    for (std::size_t i = start; i < r_grid.size(); ++i) {
        const double model = slope * r_grid[i] * r_grid[i];
        est.fit_residual   = std::max(est.fit_residual, std::abs(counts[i] - model) / model);
    }
    return est;
}

} // namespace cifs
