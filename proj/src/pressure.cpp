#include "cifs/pressure.hpp"
#include "cifs/parallel.hpp"
#include "cifs/words.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cifs {

void EnumerationCap::check(std::size_t indices, int length) const {
    if (length < 1) {
        throw DomainError("word length must be >= 1");
    }
    if (indices > max_indices || length > std::min(max_length, kMaxWordLength) ||
        word_count(indices, length) > max_words) {
        throw ResourceError("word space " + std::to_string(indices) + "^" + std::to_string(length) +
                            " exceeds the enumeration cap (" + std::to_string(max_indices) + " indices, length " +
                            std::to_string(max_length) + ", " + std::to_string(max_words) + " words)");
    }
}

SupNormTable::SupNormTable(const IndexSet &set, int word_length, const EnumerationCap &cap)
    : length_(word_length) {
    cap.check(set.size(), word_length);
    const std::vector<MoebiusMapd> gens = generators_of(set);
    log_sup_.resize(gens.size());
    parallel_for(gens.size(), [&](std::size_t first) {
        auto &block = log_sup_[first];
        block.reserve(static_cast<std::size_t>(word_count(gens.size(), word_length - 1)));
        visit_words_from(std::span<const MoebiusMapd>(gens), first, word_length,
                         [&](std::span<const std::size_t>, const MoebiusMapd &map) {
                             block.push_back(std::log(derivative_range(map).max));
                         });
    });
}

std::int64_t SupNormTable::words() const {
    std::int64_t total = 0;
    for (const auto &block : log_sup_) {
        total += static_cast<std::int64_t>(block.size());
    }
    return total;
}

double SupNormTable::psi(double t) const {
    std::vector<CompensatedSum> partial(log_sup_.size());
    parallel_for(log_sup_.size(), [&](std::size_t i) {
        for (const double ls : log_sup_[i]) {
            partial[i].add(std::exp(t * ls));
        }
    });
    CompensatedSum total;
    for (const auto &p : partial) {
        total.add(p);
    }
    return total.value();
}

PressureSample psi(const IndexSet &set, double t, int word_length, const EnumerationCap &cap) {
    if (!(t >= 0.0)) {
        throw DomainError("psi: t must be >= 0");
    }
    const SupNormTable table(set, word_length, cap);
    return {set.tau, t, word_length, set.bound, table.psi(t), table.words()};
}

PressureSample psi(const TauParam &tau, double t, double truncation_bound, int word_length,
                   const EnumerationCap &cap) {
    return psi(enumerate_indices(tau, truncation_bound), t, word_length, cap);
}

const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::Diverges:
        return "diverges";
    case Verdict::Converges:
        return "converges";
    case Verdict::Indeterminate:
        break;
    }
    return "indeterminate";
}

ThetaProbe theta_probe(const TauParam &tau, double t, const std::vector<double> &bound_grid) {
    if (bound_grid.empty() || !std::is_sorted(bound_grid.begin(), bound_grid.end()) || !(bound_grid.front() > 0.0)) {
        throw DomainError("theta_probe: bound grid must be positive and increasing");
    }
    constexpr double kTailTolerance = 1e-3;
    constexpr double kDecayRatio    = 0.75;

    // Bucket every index by the first grid bound that covers it; |b| is enumerated row by row.
    std::vector<CompensatedSum> buckets(bound_grid.size());
    const double                top = bound_grid.back();
    const IndexSet              all = enumerate_indices(tau, top);
    for (const LatticeIndex idx : all.indices) {
        const double modulus = std::abs(lattice_value(tau, idx));
        const auto   slot =
            static_cast<std::size_t>(std::lower_bound(bound_grid.begin(), bound_grid.end(), modulus * (1.0 - 1e-15)) -
                                     bound_grid.begin());
        if (slot < buckets.size()) {
            buckets[slot].add(std::pow(derivative_range(generator(tau, idx)).max, t));
        }
    }

    ThetaProbe probe{Verdict::Indeterminate, bound_grid, {}, {}};
    CompensatedSum running;
    for (std::size_t i = 0; i < buckets.size(); ++i) {
        running.add(buckets[i]);
        probe.partial_sums.push_back(running.value());
        if (i > 0) {
            probe.increments.push_back(probe.partial_sums[i] - probe.partial_sums[i - 1]);
        }
    }

    const auto &inc = probe.increments;
    if (inc.size() >= 2) {
        const double last       = inc.back();
        const double prev       = inc[inc.size() - 2];
        const double last_ratio = prev > 0.0 ? last / prev : 0.0;
        bool         decaying   = last_ratio < kDecayRatio;
        if (inc.size() >= 3 && inc[inc.size() - 3] > 0.0) {
            decaying = decaying && prev / inc[inc.size() - 3] < kDecayRatio;
        }
        if (last > kTailTolerance && last_ratio >= kDecayRatio) {
            probe.verdict = Verdict::Diverges;
        } else if (decaying) {
            probe.verdict = Verdict::Converges;
        }
    }
    return probe;
}

DimensionEstimate bowen_root(const IndexSet &set, int word_length, double tol, const EnumerationCap &cap) {
    if (!(tol > 0.0)) {
        throw DomainError("bowen_root: tolerance must be positive");
    }
    const SupNormTable table(set, word_length, cap);
    auto               f = [&table](double t) { return table.psi(t) - 1.0; };

    double lo = 1.0;
    double hi = 2.0;
    if (!(f(lo) > 0.0) || !(f(hi) < 0.0)) {
        throw BracketError("bowen_root: psi(1) > 1 > psi(2) fails on this truncation; enlarge it");
    }
    DimensionEstimate est{0.0, lo, hi, word_length, set.bound, tol, 0.0, 0};
    double            mid = lo;
    double            fm  = 0.0;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        fm  = f(mid);
        ++est.iterations;
        if (fm > 0.0) {
            lo = mid;
        } else if (fm < 0.0) {
            hi = mid;
        } else {
            lo = hi = mid;
        }
        const bool narrow = hi - lo <= 1e-12 || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi;
        if ((std::abs(fm) <= tol && narrow) || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            break;
        }
    }
    est.h          = mid;
    est.bracket_lo = lo;
    est.bracket_hi = hi;
    est.residual   = std::abs(fm);
    return est;
}

DimensionEstimate bowen_root(const TauParam &tau, double truncation_bound, int word_length, double tol,
                             const EnumerationCap &cap) {
    return bowen_root(enumerate_indices(tau, truncation_bound), word_length, tol, cap);
}

SubmultiplicativityReport submultiplicativity_audit(const TauParam &tau, double t, double truncation_bound, int m,
                                                    int n, std::optional<double> k_hat, const EnumerationCap &cap) {
    if (m < 1 || n < 1) {
        throw DomainError("submultiplicativity_audit: m, n must be >= 1");
    }
    const IndexSet set = enumerate_indices(tau, truncation_bound);
    cap.check(set.size(), m + n);

    SubmultiplicativityReport r{};
    r.psi_sum = SupNormTable(set, m + n, cap).psi(t);
    r.psi_m   = SupNormTable(set, m, cap).psi(t);
    r.psi_n   = m == n ? r.psi_m : SupNormTable(set, n, cap).psi(t);
    r.product = r.psi_m * r.psi_n;

    if (k_hat) {
        r.k_hat = *k_hat;
    } else {
        const SystemConfig config{tau, truncation_bound, std::max(m, n)};
        r.k_hat = distortion_audit(config, std::max(m, n), static_cast<std::size_t>(cap.max_words)).k_hat;
    }
    r.lower_bound = std::pow(r.k_hat, -2.0 * t) * r.product;
    r.upper_slack = r.product - r.psi_sum;
    r.lower_slack = r.psi_sum - r.lower_bound;
    r.upper_holds = r.psi_sum <= r.product * (1.0 + 1e-9);
    r.lower_holds = r.psi_sum >= r.lower_bound * (1.0 - 1e-9);
    return r;
}

} // namespace cifs
