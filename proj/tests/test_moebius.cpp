#include "cifs/moebius.hpp"
#include "cifs/words.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cifs;

namespace {

const std::vector<std::pair<double, double>> kTaus{{0, 1}, {1, 1}, {0, 2}, {0.5, 1.5}};

Word random_word(const TauParam &tau, std::mt19937_64 &rng, int length, int max_index = 6) {
    std::uniform_int_distribution<int> pick(1, max_index);
    Word                               w{tau, {}};
    for (int i = 0; i < length; ++i) {
        w.letters.push_back({pick(rng), pick(rng)});
    }
    return w;
}

std::vector<oracle::C> values(const Word &w) {
    std::vector<oracle::C> out;
    for (const LatticeIndex idx : w.letters) {
        out.push_back(lattice_value(w.tau, idx));
    }
    return out;
}

} // namespace

TEST(Moebius, CompositionMatchesNestedFraction) {
    std::mt19937_64                        rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto [u, v] : kTaus) {
        const TauParam tau(u, v);
        for (int trial = 0; trial < 200; ++trial) {
            const Word         w   = random_word(tau, rng, 1 + trial % 4);
            const MoebiusMapd  map = compose(w);
            const ComplexPoint z   = oracle::on_circle(ComplexPoint(0.5, 0), 0.5 * unit(rng), unit(rng));
            const auto         ref = oracle::nested_fraction(values(w), z);
            EXPECT_NEAR(std::abs(map(z) - ref), 0.0, 1e-13 * std::abs(ref));
            EXPECT_NEAR(std::abs(map.derivative(z)), oracle::nested_derivative(values(w), z),
                        1e-11 * oracle::nested_derivative(values(w), z));
        }
    }
}

TEST(Moebius, DerivativeMatchesFiniteDifference) {
    const MoebiusMapd  map = MoebiusMapd::continued_fraction({2.0, 3.0}) * MoebiusMapd::continued_fraction({1.0, 1.0});
    const ComplexPoint z(0.3, 0.2);
    const double       eps = 1e-6;
    const auto         fd  = (map(z + eps) - map(z - eps)) / (2 * eps);
    EXPECT_NEAR(std::abs(fd - map.derivative(z)), 0.0, 1e-8);
}

TEST(Moebius, SingularMatrixRejected) {
    EXPECT_THROW(MoebiusMapd(1.0, 2.0, 2.0, 4.0), DomainError);
    EXPECT_THROW(MoebiusMapd(0.0, 0.0, 0.0, 0.0), DomainError);
}

TEST(DerivativeRange, FrozenValuesAtOnePlusI) {
    // Dense-boundary oracle, frozen: min 0.188580484696445, max 0.589197293081333.
    const auto r = derivative_range(generator(TauParam(0, 1), {1, 1}));
    EXPECT_NEAR(r.min, 0.18858048469644504, 1e-14);
    EXPECT_NEAR(r.max, 0.5891972930813327, 1e-14);
    const auto s = oracle::sampled_range({{1.0, 1.0}});
    EXPECT_NEAR(r.min, s.min, 1e-8);
    EXPECT_NEAR(r.max, s.max, 1e-8);
}

TEST(DerivativeRange, MatchesBoundarySamplingOnWords) {
    std::mt19937_64 rng(23);
    for (const auto [u, v] : kTaus) {
        const TauParam tau(u, v);
        for (int trial = 0; trial < 30; ++trial) {
            const Word w     = random_word(tau, rng, 1 + trial % 3);
            const auto range = derivative_range(compose(w));
            const auto ref   = oracle::sampled_range(values(w), 4000);
            EXPECT_LE(ref.max, range.max * (1 + 1e-12));
            EXPECT_GE(ref.min, range.min * (1 - 1e-12));
            EXPECT_NEAR(ref.max, range.max, 1e-5 * range.max);
            EXPECT_NEAR(ref.min, range.min, 1e-5 * range.min);
        }
    }
}

TEST(DerivativeRange, PoleInsideXRejected) {
    // z -> 1 / (z - 1/2) has its pole at the centre of X.
    EXPECT_THROW(derivative_range(MoebiusMapd(0.0, 1.0, 1.0, -0.5)), DomainError);
    EXPECT_THROW(image_disk(MoebiusMapd(0.0, 1.0, 1.0, -0.5)), DomainError);
}

TEST(ImageDisk, MatchesCircumcircleAndContainsImages) {
    std::mt19937_64                        rng(29);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto [u, v] : kTaus) {
        const TauParam tau(u, v);
        for (int trial = 0; trial < 100; ++trial) {
            const Word        w   = random_word(tau, rng, 1 + trial % 3);
            const MoebiusMapd map = compose(w);
            const Diskd       img = image_disk(map);
            // Boundary images in long double; double map values err by ~1e-6 of the radius at length 3.
            auto boundary = [&](double turn) {
                const oracle::C p = oracle::on_circle({0.5, 0}, 0.5, turn);
                return oracle::nested_fraction_ld(values(w), oracle::CL(p.real(), p.imag()));
            };
            const auto ref = oracle::circumcircle(boundary(0.0), boundary(1.0 / 3), boundary(2.0 / 3));
            EXPECT_NEAR(img.radius, ref.radius, 1e-9 * ref.radius);
            EXPECT_NEAR(std::abs(img.center - ref.center), 0.0, 1e-9 * ref.radius);
            const ComplexPoint inner = map(oracle::on_circle({0.5, 0}, 0.5 * unit(rng), unit(rng)));
            EXPECT_LE(std::abs(inner - img.center), img.radius * (1 + 1e-12));
            EXPECT_TRUE(disk_contains(domain_x(), img));
        }
    }
}

TEST(Cifs, OpenSetConditionOnTruncations) {
    for (const auto [u, v] : kTaus) {
        const SystemConfig config{TauParam(u, v), 20.0, 1};
        EXPECT_TRUE(osc_audit(config).empty()) << u << " " << v;
    }
}

TEST(Cifs, OverlapIsDetected) {
    // Two copies of the same index overlap completely.
    const TauParam tau(0, 1);
    IndexSet       set{tau, {{1, 1}, {1, 1}}, 2.0};
    EXPECT_EQ(osc_audit(set).size(), 1u);
}

TEST(Cifs, UniformContraction) {
    for (const auto [u, v] : kTaus) {
        const TauParam tau(u, v);
        const double   c = contraction_bound(tau);
        EXPECT_LT(c, 1.0);
        for (const LatticeIndex idx : enumerate_indices(tau, 20.0).indices) {
            EXPECT_LE(derivative_range(generator(tau, idx)).max, c * (1 + 1e-15));
        }
    }
}

TEST(Cifs, DistortionAtSquareLatticeIsExtremalOverGenerators) {
    // Extremal oracle: max over generators of sampled sup/inf, attained at b = 1 + i;
    // frozen value 3.12438105156933 (closed form ((|b+1/2|+1/2)/(|b+1/2|-1/2))^2).
    const TauParam tau(0, 1);
    double         ref = 0.0;
    for (const LatticeIndex idx : enumerate_indices(tau, 6.0).indices) {
        const auto s = oracle::sampled_range({lattice_value(tau, idx)}, 4000);
        ref          = std::max(ref, s.max / s.min);
    }
    const DistortionReport d = distortion_audit(SystemConfig{tau, 20.0, 1}, 1);
    EXPECT_NEAR(d.k_hat, 3.124381051569329, 1e-12);
    EXPECT_NEAR(d.k_hat, ref, 1e-5);
    ASSERT_EQ(d.worst_word.size(), 1u);
    EXPECT_EQ(d.worst_word.front(), (LatticeIndex{1, 1}));
    EXPECT_NEAR(d.contraction_hat, 0.5891972930813327, 1e-14);
}

TEST(Cifs, DistortionGrowsBoundedlyWithLength) {
    const TauParam         tau(0, 1);
    const DistortionReport one = distortion_audit(SystemConfig{tau, 6.0, 1}, 1);
    const DistortionReport two = distortion_audit(SystemConfig{tau, 6.0, 2}, 2);
    EXPECT_GE(two.k_hat, one.k_hat);
    EXPECT_LT(two.k_hat, one.k_hat * one.k_hat);
    // Sampled mode is reproducible.
    const auto a = distortion_audit(SystemConfig{tau, 10.0, 3}, 3, 5000, 4);
    const auto b = distortion_audit(SystemConfig{tau, 10.0, 3}, 3, 5000, 4);
    EXPECT_EQ(a.k_hat, b.k_hat);
}

TEST(Cifs, GeneratorDerivativeBounds) {
    // K^{-1} |a|^{-2} <= |phi_a'(z)| <= K |a|^{-2} with K the audited distortion.
    std::mt19937_64                        rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto [u, v] : kTaus) {
        const TauParam tau(u, v);
        const double   k = distortion_audit(SystemConfig{tau, 30.0, 1}, 1).k_hat;
        for (const LatticeIndex idx : enumerate_indices(tau, 30.0).indices) {
            const ComplexPoint a = lattice_value(tau, idx);
            const ComplexPoint z = oracle::on_circle({0.5, 0}, 0.5 * std::sqrt(unit(rng)), unit(rng));
            const double       d = std::abs(generator(tau, idx).derivative(z)) * std::norm(a);
            EXPECT_GE(d, 1 / k);
            EXPECT_LE(d, k);
            EXPECT_TRUE(disk_contains(Diskd{{0, 0}, k / std::abs(a)}, image_disk(generator(tau, idx))));
        }
    }
}

TEST(Coding, PointsOfExtensionsStayWithinErrorRadius) {
    std::mt19937_64 rng(37);
    const TauParam  tau(0.5, 1.5);
    for (int trial = 0; trial < 50; ++trial) {
        Word             w  = random_word(tau, rng, 3);
        const CodedPoint cp = coding_point(w);
        Word             longer = w;
        for (const LatticeIndex idx : random_word(tau, rng, 3).letters) {
            longer.letters.push_back(idx);
        }
        EXPECT_LE(std::abs(coding_point(longer).point - cp.point), cp.error_radius);
    }
    EXPECT_THROW(compose(Word{tau, {}}), DomainError);
    EXPECT_THROW(generator(tau, {0, 1}), DomainError);
}

TEST(LimitSet, SamplesStayInsideXDeterministically) {
    const SystemConfig config{TauParam(0, 1), 8.0, 2};
    const auto         pts = sample_limit_set(config);
    const auto         n   = config.indices().size();
    EXPECT_EQ(pts.size(), n * n);
    for (const ComplexPoint p : pts) {
        EXPECT_LE(std::abs(p - 0.5), 0.5 + 1e-12);
    }
    EXPECT_EQ(pts, sample_limit_set(config));
    EXPECT_THROW(sample_limit_set(config, 10), ResourceError);
}

TEST(SystemConfig, Validation) {
    EXPECT_THROW((SystemConfig{TauParam(0, 1), 1.5, 1}.validate()), DomainError);
    EXPECT_THROW((SystemConfig{TauParam(0, 1), 5.0, 0}.validate()), DomainError);
    SystemConfig bad{TauParam(0, 1), 5.0, 1};
    bad.v_domain = Diskd{{0.5, 0}, 0.5};
    EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Words, VisitorEnumeratesLexicographically) {
    const IndexSet                  set  = enumerate_indices(TauParam(0, 1), 3.0);
    const auto                      gens = generators_of(set);
    std::vector<std::vector<std::size_t>> seen;
    visit_words_from(std::span<const MoebiusMapd>(gens), 1, 3, [&](std::span<const std::size_t> l, const MoebiusMapd &m) {
        seen.emplace_back(l.begin(), l.end());
        Word w{set.tau, {}};
        for (const auto i : l) {
            w.letters.push_back(set.indices[i]);
        }
        EXPECT_NEAR(std::abs(m(0.25) - compose(w)(0.25)), 0.0, 1e-15);
    });
    EXPECT_EQ(seen.size(), gens.size() * gens.size());
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    EXPECT_EQ(seen.front().front(), 1u);
}
