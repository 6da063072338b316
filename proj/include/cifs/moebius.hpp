#pragma once

#include "cifs/geometry.hpp"
#include "cifs/lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace cifs {

/// z -> (a z + b) / (c z + d), stored as a 2x2 complex matrix scaled so that the
/// largest coefficient has modulus 1. The determinant is carried through products
/// instead of recomputed as ad - bc, which cancels badly for long words.
template <typename Scalar>
class MoebiusMap {
  public:
    using Complex = std::complex<Scalar>;
    using Matrix  = Eigen::Matrix<Complex, 2, 2>;

    MoebiusMap() : m_(Matrix::Identity()), det_(1) {}

    explicit MoebiusMap(const Matrix &m) : m_(m), det_(m.determinant()) { normalize(); }

    MoebiusMap(Complex a, Complex b, Complex c, Complex d) : det_(a * d - b * c) {
        m_ << a, b, c, d;
        normalize();
    }

    /// phi_b(z) = 1 / (z + b).
    static MoebiusMap continued_fraction(Complex b) { return MoebiusMap(Complex(0), Complex(1), Complex(1), b); }

    const Matrix &matrix() const { return m_; }
    Complex       a() const { return m_(0, 0); }
    Complex       b() const { return m_(0, 1); }
    Complex       c() const { return m_(1, 0); }
    Complex       d() const { return m_(1, 1); }
    Complex       determinant() const { return det_; }

    Complex operator()(Complex z) const { return (a() * z + b()) / (c() * z + d()); }

    Complex derivative(Complex z) const {
        const Complex denom = c() * z + d();
        return determinant() / (denom * denom);
    }

    /// Composition (*this) o rhs.
    MoebiusMap operator*(const MoebiusMap &rhs) const { return MoebiusMap(Matrix(m_ * rhs.m_), det_ * rhs.det_); }

  private:
    MoebiusMap(const Matrix &m, Complex det) : m_(m), det_(det) { normalize(); }

    void normalize() {
        const Scalar scale = m_.cwiseAbs().maxCoeff();
        if (!(scale > 0) || !std::isfinite(scale)) {
            throw DomainError("MoebiusMap: coefficients must be finite and not all zero");
        }
        m_ /= Complex(scale);
        det_ /= Complex(scale * scale);
        if (!(std::abs(det_) > Scalar(1e-300))) {
            throw DomainError("MoebiusMap: singular coefficient matrix");
        }
    }

    Matrix  m_;
    Complex det_;
};

using MoebiusMapd = MoebiusMap<double>;

template <typename Scalar>
struct DerivativeRange {
    Scalar min;
    Scalar max;
};

namespace detail {
// |c/2 + d| and |c|/2: the distances from the pole scaled so that
// min_X |cz + d| = q - s and max_X |cz + d| = q + s.
template <typename Scalar>
std::pair<Scalar, Scalar> pole_offsets(const MoebiusMap<Scalar> &map) {
    using Complex   = typename MoebiusMap<Scalar>::Complex;
    const Scalar q  = std::abs(map.c() * Complex(0.5) + map.d());
    const Scalar s  = std::abs(map.c()) / 2;
    if (!(q > s)) {
        throw DomainError("Moebius map has its pole inside the closed domain X");
    }
    return {q, s};
}
} // namespace detail

/// Exact min and max of |phi'| over X = B(1/2, 1/2).
template <typename Scalar>
DerivativeRange<Scalar> derivative_range(const MoebiusMap<Scalar> &map) {
    const auto [q, s]     = detail::pole_offsets(map);
    const Scalar det_abs = std::abs(map.determinant());
    return {det_abs / ((q + s) * (q + s)), det_abs / ((q - s) * (q - s))};
}

/// Exact image of X: z -> cz + d, then 1/z, then the affine map w -> a/c - (det/c) w.
template <typename Scalar>
Disk<Scalar> image_disk(const MoebiusMap<Scalar> &map) {
    using Complex = typename MoebiusMap<Scalar>::Complex;
    detail::pole_offsets(map);
    const Complex half(0.5);
    if (map.c() == Complex(0)) {
        return {(map.a() * half + map.b()) / map.d(), std::abs(map.a() / map.d()) / 2};
    }
    const Disk<Scalar> shifted{map.c() * half + map.d(), std::abs(map.c()) / 2};
    const Disk<Scalar> inverted = invert_disk(shifted);
    const Complex      scale    = -map.determinant() / map.c();
    return {map.a() / map.c() + scale * inverted.center, std::abs(scale) * inverted.radius};
}

struct Word {
    TauParam                  tau;
    std::vector<LatticeIndex> letters;
};

struct SystemConfig {
    TauParam    tau;
    double      truncation_bound;
    int         max_word_length = 1;
    Diskd       x_domain        = domain_x();
    Diskd       v_domain        = domain_v();

    /// Throws DomainError unless the truncation has >= 2 indices, the length is >= 1,
    /// and X is the fixed disk strictly inside V.
    void     validate() const;
    IndexSet indices() const { return enumerate_indices(tau, truncation_bound); }
};

struct DistortionReport {
    double          k_hat;           // max over audited words of sup|phi'| / inf|phi'| on X
    double          contraction_hat; // max generator sup|phi'| on X
    std::int64_t    samples;
    std::vector<LatticeIndex> worst_word;
};

struct CodedPoint {
    ComplexPoint point;
    double       error_radius;
};

using IndexPair = std::pair<LatticeIndex, LatticeIndex>;

MoebiusMapd generator(const TauParam &tau, LatticeIndex idx);

/// Product of generator matrices in word order.
MoebiusMapd compose(const Word &word);

/// sup over all of X and all generators of |phi_b'|, attained at b = 1 + tau.
double contraction_bound(const TauParam &tau);

/// phi_{w|n}(0) with radius contraction^n * diam X.
CodedPoint coding_point(const Word &word);

/// Index pairs whose open image disks overlap by more than 1e-12.
std::vector<IndexPair> osc_audit(const IndexSet &indices);
std::vector<IndexPair> osc_audit(const SystemConfig &config);

/// Distortion over every word of length 1..word_length when that space has at most
/// `max_samples` words per length, otherwise over `max_samples` seeded random words.
DistortionReport distortion_audit(const SystemConfig &config, int word_length, std::size_t max_samples = 200000,
                                  std::uint64_t seed = 0);

/// phi_w(0) for every word of length config.max_word_length over the truncation.
std::vector<ComplexPoint> sample_limit_set(const SystemConfig &config, std::size_t max_points = 50'000'000);

} // namespace cifs
