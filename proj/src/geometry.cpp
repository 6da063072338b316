#include "cifs/geometry.hpp"

#include <string>

namespace cifs {

TauParam::TauParam(double u, double v) : u_(u), v_(v) {
    if (!std::isfinite(u) || !std::isfinite(v) || u < 0.0 || v < 1.0) {
        throw DomainError("tau = " + std::to_string(u) + " + " + std::to_string(v) +
                          "i is outside A0 (requires u >= 0 and v >= 1)");
    }
}

SpectralData spectral_data(const TauParam &tau) {
    const double u = tau.u();
    const double v = tau.v();

    SpectralData s;
    s.e_matrix << 1.0, u, 0.0, v;
    s.f_matrix << 1.0, u, u, u * u + v * v;

    // Characteristic polynomial lambda^2 - trace*lambda + det with det = v^2.
    const double trace = 1.0 + u * u + v * v;
    const double det   = v * v;
    const double disc  = std::max(0.0, (trace - 2.0 * v) * (trace + 2.0 * v));
    s.lambda2          = 0.5 * (trace + std::sqrt(disc));
    s.lambda1          = det / s.lambda2;

    if (disc == 0.0) {
        s.v_matrix.setIdentity();
    } else if (u == 0.0) {
        // F is diag(1, v^2) with v > 1.
        s.v_matrix.setIdentity();
    } else {
        Eigen::Vector2d first(u, s.lambda1 - 1.0);
        first.normalize();
        s.v_matrix.col(0) = first;
        s.v_matrix.col(1) = Eigen::Vector2d(-first.y(), first.x());
    }

    s.n_tau = std::sqrt(2.0 * s.lambda2 / s.lambda1) + 1.0;
    return s;
}

Diskd preimage_probe_ball(const TauParam &tau, ComplexPoint x_tilde, double r_tilde) {
    if (!(r_tilde > 0.0)) {
        throw DomainError("preimage_probe_ball: radius must be positive");
    }
    const SpectralData    s      = spectral_data(tau);
    const Eigen::Vector2d center = s.e_matrix.triangularView<Eigen::Upper>().solve(to_vector(x_tilde));
    return {to_complex(center), r_tilde / std::sqrt(s.lambda2)};
}

Diskd case1_probe_ball(const TauParam &tau, ComplexPoint w, double r_bar, double m) {
    const double w_abs = std::abs(w);
    if (!(r_bar > 0.0) || !(w_abs > r_bar) || !(m >= 2.0)) {
        throw DomainError("case1_probe_ball: requires |w| > r_bar > 0 and M >= 2");
    }
    const ComplexPoint shifted = w - (r_bar / (m * w_abs)) * w;
    return preimage_probe_ball(tau, shifted, r_bar / m);
}

} // namespace cifs
