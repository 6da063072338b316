#include "cifs/moebius.hpp"
#include "cifs/parallel.hpp"
#include "cifs/words.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cifs {

void SystemConfig::validate() const {
    const Diskd x = domain_x();
    if (x_domain.center != x.center || x_domain.radius != x.radius) {
        throw DomainError("SystemConfig: X must be B(1/2, 1/2)");
    }
    if (!(std::abs(v_domain.center - x.center) + x.radius < v_domain.radius)) {
        throw DomainError("SystemConfig: X must lie strictly inside V");
    }
    if (max_word_length < 1) {
        throw DomainError("SystemConfig: word length must be >= 1");
    }
    if (indices().size() < 2) {
        throw DomainError("SystemConfig: truncation must contain at least 2 indices");
    }
}

MoebiusMapd generator(const TauParam &tau, LatticeIndex idx) {
    if (idx.m < 1 || idx.n < 1) {
        throw DomainError("generator: lattice index requires m, n >= 1");
    }
    return MoebiusMapd::continued_fraction(lattice_value(tau, idx));
}

MoebiusMapd compose(const Word &word) {
    if (word.letters.empty()) {
        throw DomainError("compose: empty word");
    }
    MoebiusMapd map = generator(word.tau, word.letters.front());
    for (std::size_t i = 1; i < word.letters.size(); ++i) {
        map = map * generator(word.tau, word.letters[i]);
    }
    return map;
}

std::vector<MoebiusMapd> generators_of(const IndexSet &set) {
    std::vector<MoebiusMapd> gens;
    gens.reserve(set.size());
    for (const LatticeIndex idx : set.indices) {
        gens.push_back(generator(set.tau, idx));
    }
    return gens;
}

double contraction_bound(const TauParam &tau) { return derivative_range(generator(tau, {1, 1})).max; }

CodedPoint coding_point(const Word &word) {
    const MoebiusMapd map = compose(word);
    const double      c   = contraction_bound(word.tau);
    return {map(ComplexPoint(0.0, 0.0)), std::pow(c, static_cast<double>(word.letters.size())) * domain_x().diameter()};
}

std::vector<IndexPair> osc_audit(const IndexSet &set) {
    std::vector<Diskd> images;
    images.reserve(set.size());
    for (const LatticeIndex idx : set.indices) {
        images.push_back(image_disk(generator(set.tau, idx)));
    }
    std::vector<IndexPair> violations;
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) {
            const double gap = std::abs(images[i].center - images[j].center);
            if (gap < images[i].radius + images[j].radius - 1e-12) {
                violations.emplace_back(set.indices[i], set.indices[j]);
            }
        }
    }
    return violations;
}

std::vector<IndexPair> osc_audit(const SystemConfig &config) {
    config.validate();
    return osc_audit(config.indices());
}

namespace {

// Decodes `code` as a base-`radix` word of the given length (most significant letter first).
void decode_word(std::uint64_t code, std::size_t radix, int length, std::vector<std::size_t> &out) {
    out.resize(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = code % radix;
        code /= radix;
    }
}

double word_space(std::size_t radix, int length) { return std::pow(static_cast<double>(radix), length); }

} // namespace

DistortionReport distortion_audit(const SystemConfig &config, int word_length, std::size_t max_samples,
                                  std::uint64_t seed) {
    if (word_length < 1) {
        throw DomainError("distortion_audit: word length must be >= 1");
    }
    config.validate();
    const IndexSet           set = config.indices();
    std::vector<MoebiusMapd> gens;
    gens.reserve(set.size());
    for (const LatticeIndex idx : set.indices) {
        gens.push_back(generator(set.tau, idx));
    }

    DistortionReport report{1.0, 0.0, 0, {}};
    for (const MoebiusMapd &g : gens) {
        report.contraction_hat = std::max(report.contraction_hat, derivative_range(g).max);
    }

    std::mt19937_64                            rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::vector<std::size_t>                   letters;
    for (int length = 1; length <= word_length; ++length) {
        const bool exhaustive = word_space(gens.size(), length) <= static_cast<double>(max_samples);
        const auto total =
            exhaustive ? static_cast<std::uint64_t>(word_space(gens.size(), length)) : std::uint64_t{max_samples};
        for (std::uint64_t code = 0; code < total; ++code) {
            if (exhaustive) {
                decode_word(code, gens.size(), length, letters);
            } else {
                letters.resize(static_cast<std::size_t>(length));
                for (auto &l : letters) {
                    l = pick(rng);
                }
            }
            MoebiusMapd map = gens[letters[0]];
            for (std::size_t i = 1; i < letters.size(); ++i) {
                map = map * gens[letters[i]];
            }
            const auto   range = derivative_range(map);
            const double ratio = range.max / range.min;
            ++report.samples;
            if (ratio > report.k_hat) {
                report.k_hat = ratio;
                report.worst_word.clear();
                for (const std::size_t l : letters) {
                    report.worst_word.push_back(set.indices[l]);
                }
            }
        }
    }
    return report;
}

std::vector<ComplexPoint> sample_limit_set(const SystemConfig &config, std::size_t max_points) {
    config.validate();
    const IndexSet set    = config.indices();
    const int      length = config.max_word_length;
    if (word_space(set.size(), length) > static_cast<double>(max_points)) {
        throw ResourceError("sample_limit_set: " + std::to_string(set.size()) + "^" + std::to_string(length) +
                            " words exceed the cap of " + std::to_string(max_points));
    }
    std::vector<MoebiusMapd> gens;
    for (const LatticeIndex idx : set.indices) {
        gens.push_back(generator(set.tau, idx));
    }
    const std::size_t tail_count = static_cast<std::size_t>(word_space(set.size(), length - 1));
    std::vector<ComplexPoint> points(gens.size() * tail_count);
    // One block per first letter; each block fills its own slice.
    parallel_for(gens.size(), [&](std::size_t first) {
        std::vector<std::size_t> letters;
        for (std::size_t code = 0; code < tail_count; ++code) {
            MoebiusMapd map = gens[first];
            if (length > 1) {
                decode_word(code, gens.size(), length - 1, letters);
                for (const std::size_t l : letters) {
                    map = map * gens[l];
                }
            }
            points[first * tail_count + code] = map(ComplexPoint(0.0, 0.0));
        }
    });
    return points;
}

} // namespace cifs
