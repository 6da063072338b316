#pragma once

#include "cifs/lattice.hpp"
#include "cifs/moebius.hpp"
#include "cifs/pressure.hpp"
#include "cifs/words.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace cifs {

struct CylinderEntry {
    Word   word;
    double weight_low;
    double weight_mid;
    double weight_high;
    Diskd  image;
};

/// Unnormalized cylinder masses: inf|phi_w'|^h, |phi_w'(0)|^h and sup|phi_w'|^h over X.
struct RawWeights {
    double low  = 0.0;
    double mid  = 0.0;
    double high = 0.0;

    RawWeights &operator+=(const RawWeights &o) {
        low += o.low;
        mid += o.mid;
        high += o.high;
        return *this;
    }
};

RawWeights raw_weights(const MoebiusMapd &map, double h);

/// Cylinder approximation of the h-conformal measure on a truncation. Words of every
/// length 1..level are weighted by |phi_w'(0)|^h and normalized per length so that
/// the mid weights of each length sum to 1.
class CylinderMeasure {
  public:
    const TauParam &tau() const { return letters_.tau; }
    double          h() const { return h_; }
    int             level() const { return level_; }
    double          truncation_bound() const { return letters_.bound; }
    const IndexSet &letters() const { return letters_; }

    /// Sum of unnormalized weights over all words of length k.
    const RawWeights &totals(int k) const { return totals_.at(static_cast<std::size_t>(k - 1)); }

    /// Materializes every word of length k (defaults to the top level).
    std::vector<CylinderEntry> entries(int k = 0, std::size_t max_entries = 5'000'000) const;

    /// Normalized mid mass at length k of all words extending the level-1 letter.
    double child_mass(std::size_t letter, int k) const;

    /// Normalized mid weight of the level-1 letter.
    double letter_mass(std::size_t letter) const { return raw1_[letter].mid / totals_[0].mid; }

    friend CylinderMeasure build_measure(const IndexSet &, double, int, const EnumerationCap &);
    friend struct BallMassWalker;

  private:
    CylinderMeasure(IndexSet letters, double h, int level) : letters_(std::move(letters)), h_(h), level_(level) {}

    IndexSet                 letters_;
    double                   h_;
    int                      level_;
    std::vector<MoebiusMapd> gens_;
    std::vector<Diskd>       images1_;
    std::vector<RawWeights>  raw1_;
    std::vector<RawWeights>  totals_; // [k-1]
    // subtree_[j-1][code] holds, for a word of length j, the raw sums over its
    // extensions of length k at slot k-1 (slots <= j-1 unused).
    std::vector<std::vector<std::array<RawWeights, kMaxWordLength>>> subtree_;
};

CylinderMeasure build_measure(const IndexSet &letters, double h, int level, const EnumerationCap &cap = {});
CylinderMeasure build_measure(const TauParam &tau, double h, double truncation_bound, int level,
                              const EnumerationCap &cap = {});

struct BallMassEstimate {
    double              lower = 0.0;
    double              upper = 0.0;
    std::int64_t        contained_words    = 0; // top-level words with image inside the ball
    std::int64_t        intersecting_words = 0; // top-level words with image meeting the closed ball
    std::vector<double> level_lower;            // per word length, before combining
    std::vector<double> level_upper;
    std::vector<double> contained_low; // per word length: sum of normalized low weights of contained words
};

/// Lower and upper bounds on the measure of `ball`. Each word length k gives
///   lower_k = max(sum of low over contained words, 1 - sum of high over the rest)
///   upper_k = min(sum of high over intersecting words, 1 - sum of low over disjoint words)
/// and the estimate takes the best bound over k <= level.
BallMassEstimate ball_mass(const CylinderMeasure &measure, const Diskd &ball);

struct PackingConstants {
    double k;
    double r0;
    double xi;
    double gamma;
    double r_big0;
    double l_prime;
    double l;
    double q;
    double q_prime;
    double c;
    double c_prime;
    double h;
    double n_tau;
    double lambda2;
};

/// Constants of the ball-mass lower bound from K, h and the annulus growth fit (q, c).
PackingConstants packing_constants(const TauParam &tau, double k, double h, double q, double c);

struct Case1Sets {
    IndexSet by_image;     // a with phi_a(X) inside B(x, r)
    IndexSet by_inversion; // a with B(a + 1/2, 1/2) inside B(w, R) = 1 / B(x, r)
    IndexSet first_ring;   // by_image filtered by |a| <= |w|
    Diskd    inverted;     // B(w, R)
};

/// Requires 0 < r < |x|.
Case1Sets index_set_case1(const TauParam &tau, ComplexPoint x, double r);

/// { a : r_bar / N_tau <= k / |a| < r_bar }, i.e. the lattice points of D2(tau, k / r_bar).
IndexSet index_set_case3(const TauParam &tau, double r_bar, double k);

struct CaseReport {
    int          case_id;
    std::int64_t scanned     = 0;
    double       min_ratio   = std::numeric_limits<double>::infinity();
    LatticeIndex witness_b   = {0, 0};
    double       witness_r   = 0.0;
    std::int64_t below_floor = 0; // pairs with ratio < L
};

struct ScanRecord {
    LatticeIndex b;
    double       r;
    int          case_id;
    double       lower;
    double       ratio;
};

struct ClaimStarScan {
    std::array<CaseReport, 3> cases{CaseReport{1}, CaseReport{2}, CaseReport{3}};
    std::vector<ScanRecord>   records;
    std::vector<LatticeIndex> skipped; // b whose radius range [gamma diam, xi] is empty
    double                    h;
};

/// 1 for r <= |x|/2, 2 for |x|/2 < r <= 2|x|, 3 for r > 2|x|.
int classify_case(double x_abs, double r);

/// The `small` smallest-modulus indices plus `random` further ones drawn with `seed`.
std::vector<LatticeIndex> default_b_sample(const IndexSet &set, std::size_t small = 32, std::size_t random = 32,
                                           std::uint64_t seed = 0);

ClaimStarScan claim_star_scan(const CylinderMeasure &measure, const PackingConstants &constants,
                              const std::vector<LatticeIndex> &b_sample, int r_per_b = 16);

struct ExponentFit {
    double              exponent;
    std::vector<double> slopes;    // per retained center
    std::vector<double> residuals; // RMS residual of each center's log-log fit
    std::vector<std::size_t> centers_used;
};

/// Mean over centers of the least-squares slope of log(lower mass) against log r.
ExponentFit scaling_exponent_fit(const CylinderMeasure &measure, const std::vector<ComplexPoint> &centers,
                                 const std::vector<double> &r_grid);

} // namespace cifs
