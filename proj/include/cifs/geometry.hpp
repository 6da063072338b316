#pragma once

#include "cifs/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace cifs {

using ComplexPoint = std::complex<double>;

template <typename Scalar>
struct Disk {
    std::complex<Scalar> center{};
    Scalar               radius{0};

    Scalar diameter() const { return 2 * radius; }
};

using Diskd = Disk<double>;

/// The closed unit-diameter disk B(1/2, 1/2) on which every system acts.
inline Diskd domain_x() { return {ComplexPoint(0.5, 0.0), 0.5}; }

/// Open extension domain B(1/2, 3/4).
inline Diskd domain_v() { return {ComplexPoint(0.5, 0.0), 0.75}; }

/// Point u + iv of the half-strip u >= 0, v >= 1 selecting one system.
class TauParam {
  public:
    TauParam(double u, double v);

    double               u() const { return u_; }
    double               v() const { return v_; }
    std::complex<double> value() const { return {u_, v_}; }

  private:
    double u_;
    double v_;
};

struct SpectralData {
    Eigen::Matrix2d e_matrix; // maps (m, n) to (Re b, Im b)
    Eigen::Matrix2d f_matrix; // transpose(E) * E
    double          lambda1;
    double          lambda2;
    Eigen::Matrix2d v_matrix; // orthogonal, columns are eigenvectors for lambda1, lambda2
    double          n_tau;    // sqrt(2 lambda2 / lambda1) + 1
};

/// Image of an open disk under z -> 1/z. Requires 0 strictly outside the closed disk.
template <typename Scalar>
Disk<Scalar> invert_disk(const Disk<Scalar> &d) {
    const Scalar modulus = std::abs(d.center);
    if (!(d.radius >= 0) || !(d.radius < modulus) || !std::isfinite(modulus)) {
        throw DomainError("invert_disk: the pole 0 must lie strictly outside the closed disk");
    }
    // |x|^2 - r^2 factored to avoid cancellation when r is close to |x|.
    const Scalar denom = (modulus - d.radius) * (modulus + d.radius);
    return {std::conj(d.center) / denom, d.radius / denom};
}

/// True iff `inner` lies inside `outer` up to an absolute slack of 1e-12.
template <typename Scalar>
bool disk_contains(const Disk<Scalar> &outer, const Disk<Scalar> &inner) {
    return std::abs(outer.center - inner.center) + inner.radius <= outer.radius + Scalar(1e-12);
}

/// True iff the two closed disks share at least one point (same 1e-12 slack).
template <typename Scalar>
bool disks_intersect(const Disk<Scalar> &a, const Disk<Scalar> &b) {
    return std::abs(a.center - b.center) <= a.radius + b.radius + Scalar(1e-12);
}

SpectralData spectral_data(const TauParam &tau);

inline Eigen::Vector2d to_vector(ComplexPoint z) { return {z.real(), z.imag()}; }
inline ComplexPoint    to_complex(const Eigen::Vector2d &p) { return {p.x(), p.y()}; }

/// B(E^{-1} x, R / sqrt(lambda2)); its E-image lies in B(x, R).
Diskd preimage_probe_ball(const TauParam &tau, ComplexPoint x_tilde, double r_tilde);

/// B(E^{-1}(w - R w / (M |w|)), R / (sqrt(lambda2) M)); its E-image lies in the lens
/// B(0, |w|) ∩ B(w, R). Requires |w| > R > 0 and M >= 2.
Diskd case1_probe_ball(const TauParam &tau, ComplexPoint w, double r_bar, double m);

} // namespace cifs
