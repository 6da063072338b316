#include "cifs/measure.hpp"
#include "cifs/parallel.hpp"
#include "cifs/words.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <string>

namespace cifs {

RawWeights raw_weights(const MoebiusMapd &map, double h) {
    const auto   range   = derivative_range(map);
    const double det_abs = std::abs(map.determinant());
    const double at_zero = det_abs / std::norm(map.d());
    return {std::exp(h * std::log(range.min)), std::exp(h * std::log(at_zero)), std::exp(h * std::log(range.max))};
}

namespace {

using SubtreeSums = std::array<RawWeights, kMaxWordLength>;

struct LevelAccumulator {
    CompensatedSum low;
    CompensatedSum mid;
    CompensatedSum high;

    void add(const RawWeights &w) {
        low.add(w.low);
        mid.add(w.mid);
        high.add(w.high);
    }
    void add(const LevelAccumulator &o) {
        low.add(o.low);
        mid.add(o.mid);
        high.add(o.high);
    }
};

std::uint64_t ipow(std::size_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= base;
    }
    return out;
}

} // namespace

CylinderMeasure build_measure(const IndexSet &letters, double h, int level, const EnumerationCap &cap) {
    if (!(h > 1.0 && h < 2.0)) {
        throw DomainError("build_measure: h must lie in (1, 2)");
    }
    if (level < 1 || level > kMaxWordLength) {
        throw DomainError("build_measure: level must be in [1, " + std::to_string(kMaxWordLength) + "]");
    }
    cap.check(letters.size(), level);

    CylinderMeasure   measure(letters, h, level);
    const std::size_t n = letters.size();
    measure.gens_       = generators_of(letters);
    measure.images1_.reserve(n);
    measure.raw1_.reserve(n);
    for (const MoebiusMapd &g : measure.gens_) {
        measure.images1_.push_back(image_disk(g));
        measure.raw1_.push_back(raw_weights(g, h));
    }
    for (int j = 1; j < level; ++j) {
        measure.subtree_.emplace_back(ipow(n, j));
    }

    const auto &gens = measure.gens_;
    auto       &tree = measure.subtree_;
    std::vector<std::array<LevelAccumulator, kMaxWordLength>> blocks(n);

    // Depth-first over the words extending `code`; returns the raw sums per length.
    auto descend = [&](auto &&self, int depth, std::uint64_t code, const MoebiusMapd &map,
                       std::array<LevelAccumulator, kMaxWordLength> &acc) -> SubtreeSums {
        SubtreeSums sums{};
        const RawWeights own = depth == 1 ? measure.raw1_[code] : raw_weights(map, h);
        acc[static_cast<std::size_t>(depth - 1)].add(own);
        sums[static_cast<std::size_t>(depth - 1)] = own;
        if (depth < level) {
            for (std::size_t c = 0; c < n; ++c) {
                const SubtreeSums child = self(self, depth + 1, code * n + c, map * gens[c], acc);
                for (int k = depth + 1; k <= level; ++k) {
                    sums[static_cast<std::size_t>(k - 1)] += child[static_cast<std::size_t>(k - 1)];
                }
            }
            tree[static_cast<std::size_t>(depth - 1)][code] = sums;
        }
        return sums;
    };
    parallel_for(n, [&](std::size_t first) { descend(descend, 1, first, gens[first], blocks[first]); });

    std::array<LevelAccumulator, kMaxWordLength> total{};
    for (const auto &block : blocks) {
        for (int k = 0; k < level; ++k) {
            total[static_cast<std::size_t>(k)].add(block[static_cast<std::size_t>(k)]);
        }
    }
    for (int k = 0; k < level; ++k) {
        const auto &t = total[static_cast<std::size_t>(k)];
        measure.totals_.push_back({t.low.value(), t.mid.value(), t.high.value()});
    }
    return measure;
}

CylinderMeasure build_measure(const TauParam &tau, double h, double truncation_bound, int level,
                              const EnumerationCap &cap) {
    return build_measure(enumerate_indices(tau, truncation_bound), h, level, cap);
}

std::vector<CylinderEntry> CylinderMeasure::entries(int k, std::size_t max_entries) const {
    if (k == 0) {
        k = level_;
    }
    if (k < 1 || k > level_) {
        throw DomainError("CylinderMeasure::entries: length outside [1, level]");
    }
    const std::size_t n = letters_.size();
    if (word_count(n, k) > static_cast<double>(max_entries)) {
        throw ResourceError("CylinderMeasure::entries: " + std::to_string(n) + "^" + std::to_string(k) +
                            " entries exceed the cap of " + std::to_string(max_entries));
    }
    const RawWeights          &z = totals(k);
    std::vector<CylinderEntry> out;
    out.reserve(static_cast<std::size_t>(word_count(n, k)));
    for (std::size_t first = 0; first < n; ++first) {
        visit_words_from(std::span<const MoebiusMapd>(gens_), first, k,
                         [&](std::span<const std::size_t> letters, const MoebiusMapd &map) {
                             Word word{letters_.tau, {}};
                             for (const std::size_t l : letters) {
                                 word.letters.push_back(letters_.indices[l]);
                             }
                             const RawWeights raw = raw_weights(map, h_);
                             out.push_back({std::move(word), raw.low / z.mid, raw.mid / z.mid, raw.high / z.mid,
                                            image_disk(map)});
                         });
    }
    return out;
}

double CylinderMeasure::child_mass(std::size_t letter, int k) const {
    if (k < 1 || k > level_) {
        throw DomainError("CylinderMeasure::child_mass: length outside [1, level]");
    }
    if (k == 1) {
        return letter_mass(letter);
    }
    return subtree_[0][letter][static_cast<std::size_t>(k - 1)].mid / totals(k).mid;
}

namespace {

/// A disk or the complement of a closed disk.
struct Region {
    Diskd disk;
    bool  exterior;
};

Region affine_region(const Region &r, std::complex<double> scale, std::complex<double> shift) {
    return {{scale * r.disk.center + shift, std::abs(scale) * r.disk.radius}, r.exterior};
}

/// Image of a region under z -> 1/z; empty when the boundary circle passes (nearly) through 0.
std::optional<Region> invert_region(const Region &r) {
    const double modulus = std::abs(r.disk.center);
    const double radius  = r.disk.radius;
    if (std::abs(modulus - radius) <= 1e-12 * (modulus + radius)) {
        return std::nullopt;
    }
    const double denom = (modulus - radius) * (modulus + radius);
    return Region{{std::conj(r.disk.center) / denom, radius / std::abs(denom)}, r.exterior != (radius > modulus)};
}

/// map^{-1}(ball), computed by the same factorization as image_disk.
std::optional<Region> preimage_region(const MoebiusMapd &map, const Diskd &ball) {
    // Inverse coefficients (d, -b; -c, a).
    const std::complex<double> a = map.d();
    const std::complex<double> b = -map.b();
    const std::complex<double> c = -map.c();
    const std::complex<double> d = map.a();
    const Region               start{ball, false};
    if (c == std::complex<double>(0.0)) {
        return affine_region(start, a / d, b / d);
    }
    const auto inverted = invert_region(affine_region(start, c, d));
    if (!inverted) {
        return std::nullopt;
    }
    return affine_region(*inverted, -map.determinant() / c, a / c);
}

enum class Placement { Inside, Outside, Band };

Placement place(const Diskd &small, const Region &region, double margin) {
    const double gap   = std::abs(small.center - region.disk.center);
    const double inner = gap + small.radius;
    const double outer = gap - small.radius;
    const double big   = region.disk.radius;
    if (!region.exterior) {
        if (inner <= big - margin) {
            return Placement::Inside;
        }
        if (outer >= big + margin) {
            return Placement::Outside;
        }
    } else {
        if (outer >= big + margin) {
            return Placement::Inside;
        }
        if (inner <= big - margin) {
            return Placement::Outside;
        }
    }
    return Placement::Band;
}

} // namespace

/// Walks the word tree below the cylinders meeting one ball. Contained cylinders add their
/// precomputed subtree sums; partially covered ones are refined one letter further.
struct BallMassWalker {
    const CylinderMeasure &m;
    Diskd                  ball;  // widened by the containment slack of disk_contains
    std::size_t            n;
    int                    level;
    std::array<RawWeights, kMaxWordLength> contained{};
    std::array<RawWeights, kMaxWordLength> partial{};
    std::int64_t                            contained_words = 0;
    std::int64_t                            partial_words   = 0;

    BallMassWalker(const CylinderMeasure &measure, const Diskd &b)
        : m(measure), ball{b.center, b.radius + 1e-12}, n(measure.letters_.size()), level(measure.level_) {}

    std::int64_t leaves_below(int depth) const { return static_cast<std::int64_t>(ipow(n, level - depth)); }

    void add_contained(int depth, std::uint64_t code, const RawWeights &own) {
        contained[static_cast<std::size_t>(depth - 1)] += own;
        add_deeper(depth, code);
        contained_words += leaves_below(depth);
    }

    // Subtree sums at lengths > depth for a contained word.
    void add_deeper(int depth, std::uint64_t code) {
        if (depth >= level) {
            return;
        }
        const SubtreeSums &sums = m.subtree_[static_cast<std::size_t>(depth - 1)][code];
        for (int k = depth + 1; k <= level; ++k) {
            contained[static_cast<std::size_t>(k - 1)] += sums[static_cast<std::size_t>(k - 1)];
        }
    }

    void add_partial(int depth, std::uint64_t code, const MoebiusMapd &map, const RawWeights &own) {
        partial[static_cast<std::size_t>(depth - 1)] += own;
        if (depth == level) {
            ++partial_words;
        } else {
            refine(depth, code, map);
        }
    }

    void run() {
        const Diskd exact{ball.center, ball.radius - 1e-12};
        for (std::size_t a = 0; a < n; ++a) {
            const Diskd &img = m.images1_[a];
            if (disk_contains(exact, img)) {
                add_contained(1, a, m.raw1_[a]);
            } else if (disks_intersect(exact, img)) {
                add_partial(1, a, m.gens_[a], m.raw1_[a]);
            }
        }
    }

    // Classifies the children of a partially covered word of length `depth`.
    void refine(int depth, std::uint64_t code, const MoebiusMapd &map) {
        const Diskd                 exact{ball.center, ball.radius - 1e-12};
        const std::optional<Region> pulled = preimage_region(map, ball);
        double                      margin = 0.0;
        if (pulled) {
            margin = 1e-7 * std::max({1.0, pulled->disk.radius, std::abs(pulled->disk.center)});
        }
        std::vector<std::size_t> inside;
        std::vector<std::size_t> outside;
        RawWeights               band_total{};
        for (std::size_t c = 0; c < n; ++c) {
            const Placement p = pulled ? place(m.images1_[c], *pulled, margin) : Placement::Band;
            if (p == Placement::Inside) {
                inside.push_back(c);
                continue;
            }
            if (p == Placement::Outside) {
                outside.push_back(c);
                continue;
            }
            const MoebiusMapd   child      = map * m.gens_[c];
            const Diskd         img        = image_disk(child);
            const RawWeights    own        = raw_weights(child, m.h_);
            const std::uint64_t child_code = code * n + c;
            band_total += own;
            if (disk_contains(exact, img)) {
                add_contained(depth + 1, child_code, own);
            } else if (disks_intersect(exact, img)) {
                add_partial(depth + 1, child_code, child, own);
            }
        }
        if (inside.empty()) {
            return;
        }
        const auto slot = static_cast<std::size_t>(depth);
        for (const std::size_t c : inside) {
            add_deeper(depth + 1, code * n + c);
        }
        contained_words += static_cast<std::int64_t>(inside.size()) * leaves_below(depth + 1);
        if (inside.size() <= outside.size()) {
            for (const std::size_t c : inside) {
                contained[slot] += raw_weights(map * m.gens_[c], m.h_);
            }
            return;
        }
        // Most children are inside: take the parent's child sum minus every other child.
        RawWeights rest = band_total;
        for (const std::size_t c : outside) {
            rest += raw_weights(map * m.gens_[c], m.h_);
        }
        const RawWeights &all = m.subtree_[static_cast<std::size_t>(depth - 1)][code][slot];
        contained[slot] += {std::max(0.0, all.low - rest.low), std::max(0.0, all.mid - rest.mid),
                            std::max(0.0, all.high - rest.high)};
    }
};

BallMassEstimate ball_mass(const CylinderMeasure &measure, const Diskd &ball) {
    BallMassWalker walker(measure, ball);
    walker.run();
    BallMassEstimate est;
    est.lower = 0.0;
    est.upper = 1.0;
    for (int k = 1; k <= measure.level(); ++k) {
        const auto        slot = static_cast<std::size_t>(k - 1);
        const RawWeights &z    = measure.totals(k);
        const RawWeights &in   = walker.contained[slot];
        const RawWeights &part = walker.partial[slot];
        const double      lo   = std::max(in.low, z.mid - (z.high - in.high)) / z.mid;
        const double      hi   = std::min(in.high + part.high, z.mid - (z.low - in.low - part.low)) / z.mid;
        est.level_lower.push_back(std::clamp(lo, 0.0, 1.0));
        est.level_upper.push_back(std::clamp(hi, 0.0, 1.0));
        est.contained_low.push_back(in.low / z.mid);
        est.lower = std::max(est.lower, est.level_lower.back());
        est.upper = std::min(est.upper, est.level_upper.back());
    }
    est.contained_words    = walker.contained_words;
    est.intersecting_words = walker.contained_words + walker.partial_words;
    return est;
}


PackingConstants packing_constants(const TauParam &tau, double k, double h, double q, double c) {
    if (!(k >= 1.0) || !(h > 0.0) || !(q > 0.0) || !(c > 0.0)) {
        throw DomainError("packing_constants: requires k >= 1 and positive h, q, c");
    }
    const SpectralData spec = spectral_data(tau);
    const double       l2   = spec.lambda2;
    PackingConstants   pc{};
    pc.k       = k;
    pc.h       = h;
    pc.q       = q;
    pc.c       = c;
    pc.n_tau   = spec.n_tau;
    pc.lambda2 = l2;
    pc.q_prime = 1.0 / (32.0 * l2);
    pc.c_prime = 34.0 * std::sqrt(l2);
    // The lens count needs (R' - 2 sqrt(2 l2))^2 / (16 l2) - R'^2 / (32 l2) > 0 from c_prime on.
    auto side = [l2](double r) {
        const double s = r - 2.0 * std::sqrt(2.0 * l2);
        return s * s / (16.0 * l2) - r * r / (32.0 * l2);
    };
    while (!(side(pc.c_prime) > 0.0)) {
        pc.c_prime *= 1.01;
    }
    pc.r0      = std::min(1.0 / 8.0, k / c);
    pc.xi      = pc.r0 * pc.r0;
    pc.gamma   = k;
    pc.r_big0  = std::max(pc.c_prime, 2.0);
    pc.l_prime = std::min(pc.q_prime / 4.0, 1.0 / ((pc.r_big0 + 1.0) * (pc.r_big0 + 1.0)));
    pc.l       = std::min(pc.l_prime * std::pow(8.0 * k, -h),
                          q * std::pow(k, 2.0 - 3.0 * h) * std::pow(pc.n_tau, -2.0 * h) * std::pow(2.0, 2.0 - 2.0 * h));
    return pc;
}

namespace {

IndexSet indices_up_to(const TauParam &tau, double bound) {
    if (!(bound >= std::abs(1.0 + tau.value()) * (1.0 - 1e-12))) {
        return {tau, {}, bound};
    }
    // Roughly pi/4 bound^2 / v points.
    if (bound * bound / tau.v() > 4.0e6) {
        throw ResourceError("index set: bound " + std::to_string(bound) + " needs too many lattice points");
    }
    try {
        return enumerate_indices(tau, bound);
    } catch (const EmptySetError &) {
        return {tau, {}, bound};
    }
}

} // namespace

Case1Sets index_set_case1(const TauParam &tau, ComplexPoint x, double r) {
    const double x_abs = std::abs(x);
    if (!(r > 0.0) || !(x_abs > r)) {
        throw DomainError("index_set_case1: requires 0 < r < |x|");
    }
    const Diskd ball{x, r};
    Case1Sets   out{{tau, {}, 0.0}, {tau, {}, 0.0}, {tau, {}, 0.0}, invert_disk(ball)};
    const Diskd &inv  = out.inverted;
    const double w2   = std::norm(inv.center);
    const IndexSet candidates = indices_up_to(tau, std::abs(inv.center) + inv.radius);
    out.by_image.bound = out.by_inversion.bound = out.first_ring.bound = candidates.bound;
    for (const LatticeIndex idx : candidates.indices) {
        const ComplexPoint a = lattice_value(tau, idx);
        if (disk_contains(ball, image_disk(generator(tau, idx)))) {
            out.by_image.indices.push_back(idx);
            if (std::norm(a) <= w2) {
                out.first_ring.indices.push_back(idx);
            }
        }
        if (disk_contains(inv, Diskd{a + 0.5, 0.5})) {
            out.by_inversion.indices.push_back(idx);
        }
    }
    return out;
}

IndexSet index_set_case3(const TauParam &tau, double r_bar, double k) {
    if (!(r_bar > 0.0) || !(k >= 1.0)) {
        throw DomainError("index_set_case3: requires r_bar > 0 and k >= 1");
    }
    const double r_big = k / r_bar;
    const double outer = spectral_data(tau).n_tau * r_big;
    IndexSet     all   = indices_up_to(tau, outer);
    IndexSet     out{tau, {}, outer};
    for (const LatticeIndex idx : all.indices) {
        const double n2 = std::norm(lattice_value(tau, idx));
        if (compare_squared(n2, r_big * r_big) == Side::Outside && compare_squared(n2, outer * outer) != Side::Outside) {
            out.indices.push_back(idx);
        }
    }
    return out;
}

int classify_case(double x_abs, double r) {
    if (r <= x_abs / 2.0) {
        return 1;
    }
    if (r <= 2.0 * x_abs) {
        return 2;
    }
    return 3;
}

std::vector<LatticeIndex> default_b_sample(const IndexSet &set, std::size_t small, std::size_t random,
                                           std::uint64_t seed) {
    const std::size_t         head = std::min(small, set.size());
    std::vector<LatticeIndex> out(set.indices.begin(), set.indices.begin() + static_cast<std::ptrdiff_t>(head));
    std::vector<std::size_t>  rest(set.size() - head);
    std::iota(rest.begin(), rest.end(), head);
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates with explicit index draws keeps the sample reproducible.
    const std::size_t take = std::min(random, rest.size());
    for (std::size_t i = 0; i < take; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, rest.size() - 1);
        std::swap(rest[i], rest[pick(rng)]);
        out.push_back(set.indices[rest[i]]);
    }
    return out;
}

ClaimStarScan claim_star_scan(const CylinderMeasure &measure, const PackingConstants &constants,
                              const std::vector<LatticeIndex> &b_sample, int r_per_b) {
    if (b_sample.empty() || r_per_b < 1) {
        throw DomainError("claim_star_scan: needs a nonempty b sample and r_per_b >= 1");
    }
    const TauParam &tau = measure.tau();
    ClaimStarScan   scan;
    scan.h = measure.h();

    struct Pair {
        LatticeIndex b;
        double       r;
    };
    std::vector<Pair> pairs;
    for (const LatticeIndex b : b_sample) {
        const double lo = constants.gamma * image_disk(generator(tau, b)).diameter();
        const double hi = constants.xi;
        if (lo > hi) {
            scan.skipped.push_back(b);
            continue;
        }
        for (int i = 0; i < r_per_b; ++i) {
            const double frac = r_per_b == 1 ? 0.0 : static_cast<double>(i) / (r_per_b - 1);
            pairs.push_back({b, lo * std::pow(hi / lo, frac)});
        }
    }

    scan.records.resize(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        const ComplexPoint x     = 1.0 / lattice_value(tau, pairs[i].b);
        const double       r     = pairs[i].r;
        const double       lower = ball_mass(measure, Diskd{x, r}).lower;
        scan.records[i]          = {pairs[i].b, r, classify_case(std::abs(x), r), lower,
                                    lower / std::pow(r, measure.h())};
    });
    for (const ScanRecord &rec : scan.records) {
        CaseReport &report = scan.cases[static_cast<std::size_t>(rec.case_id - 1)];
        ++report.scanned;
        if (rec.ratio < report.min_ratio) {
            report.min_ratio = rec.ratio;
            report.witness_b = rec.b;
            report.witness_r = rec.r;
        }
        if (rec.ratio < constants.l) {
            ++report.below_floor;
        }
    }
    return scan;
}

ExponentFit scaling_exponent_fit(const CylinderMeasure &measure, const std::vector<ComplexPoint> &centers,
                                 const std::vector<double> &r_grid) {
    if (r_grid.size() < 3 || !(r_grid.front() > 0.0) ||
        std::adjacent_find(r_grid.begin(), r_grid.end(), std::greater_equal<>()) != r_grid.end()) {
        throw EstimationError("scaling_exponent_fit: need at least 3 positive increasing radii");
    }
    if (r_grid.back() / r_grid.front() < 100.0) {
        throw EstimationError("scaling_exponent_fit: radius grid must span at least two decades");
    }
    ExponentFit fit{0.0, {}, {}, {}};
    for (std::size_t ci = 0; ci < centers.size(); ++ci) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (const double r : r_grid) {
            const double lower = ball_mass(measure, Diskd{centers[ci], r}).lower;
            if (lower > 0.0) {
                xs.push_back(std::log(r));
                ys.push_back(std::log(lower));
            }
        }
        if (xs.size() < 3) {
            continue;
        }
        const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
        const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
        double       sxx = 0.0;
        double       sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        const double slope = sxy / sxx;
        double       ss    = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e = ys[i] - (my + slope * (xs[i] - mx));
            ss += e * e;
        }
        fit.slopes.push_back(slope);
        fit.residuals.push_back(std::sqrt(ss / static_cast<double>(xs.size())));
        fit.centers_used.push_back(ci);
    }
    if (fit.slopes.empty()) {
        throw EstimationError("scaling_exponent_fit: no center has three radii with positive mass");
    }
    fit.exponent = std::accumulate(fit.slopes.begin(), fit.slopes.end(), 0.0) / static_cast<double>(fit.slopes.size());
    return fit;
}

} // namespace cifs
