#pragma once

#include "cifs/geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cifs {

struct LatticeIndex {
    std::int64_t m;
    std::int64_t n;

    friend bool operator==(const LatticeIndex &, const LatticeIndex &) = default;
};

/// b = m + n tau.
inline ComplexPoint lattice_value(const TauParam &tau, LatticeIndex idx) {
    return {static_cast<double>(idx.m) + static_cast<double>(idx.n) * tau.u(),
            static_cast<double>(idx.n) * tau.v()};
}

struct IndexSet {
    TauParam                  tau;
    std::vector<LatticeIndex> indices; // ordered by (|b|, m, n)
    double                    bound;

    std::size_t size() const { return indices.size(); }
    bool        empty() const { return indices.empty(); }
};

struct GrowthEstimate {
    double              q_hat;
    double              c_hat;
    double              fit_residual;
    std::vector<double> radii;  // audited grid values >= c_hat
    std::vector<double> ratios; // count_annulus(R) / R^2 on `radii`
};

/// Counts lattice points whose squared modulus landed within the 1e-9 relative
/// guard band of a region boundary. Those points are classified as lying exactly on it.
struct BoundaryTally {
    std::int64_t near_boundary = 0;
};

/// Three-way comparison of a squared modulus against a squared radius with the guard band.
enum class Side { Inside, OnBoundary, Outside };
Side compare_squared(double value, double limit, BoundaryTally *tally = nullptr);

/// All b = m + n tau with |b| <= bound, ordered by (|b|, m, n).
IndexSet enumerate_indices(const TauParam &tau, double bound, BoundaryTally *tally = nullptr);

/// The `count` smallest-modulus indices, extended to include every tie with the last one.
IndexSet smallest_indices(const TauParam &tau, std::size_t count);

/// |{(m, n) in N^2 : m^2 + n^2 <= r^2}|.
std::int64_t count_quarter_disk(double r, BoundaryTally *tally = nullptr);

/// |{(m, n) in N^2 : (m - z1)^2 + (n - z2)^2 <= l^2}| for real offsets.
std::int64_t count_shifted_quarter_disk(double z1, double z2, double l, BoundaryTally *tally = nullptr);

/// |I_tau ∩ {r < |z| <= outer}|; `count_annulus` uses outer = N_tau r.
std::int64_t count_annulus_between(const TauParam &tau, double r, double outer, BoundaryTally *tally = nullptr);
std::int64_t count_annulus(const TauParam &tau, double r, BoundaryTally *tally = nullptr);

/// |I_tau ∩ B(0, |w|) ∩ B(w, r')| with both balls open. Requires |w| > r' > 0.
std::int64_t count_lens(const TauParam &tau, ComplexPoint w, double r_prime, BoundaryTally *tally = nullptr);

/// Empirical Q, C for |I_tau ∩ D2(tau, R)| > Q R^2 on an increasing grid.
GrowthEstimate fit_growth_constants(const TauParam &tau, std::span<const double> r_grid);

} // namespace cifs
