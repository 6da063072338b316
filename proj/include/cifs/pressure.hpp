#pragma once

#include "cifs/lattice.hpp"
#include "cifs/moebius.hpp"

#include <optional>
#include <vector>

namespace cifs {

/// Limits on exhaustive word enumeration.
struct EnumerationCap {
    std::size_t max_indices = 5000;
    int         max_length  = 3;
    double      max_words   = 3.0e7;

    void check(std::size_t indices, int length) const;
};

struct PressureSample {
    TauParam     tau;
    double       t;
    int          word_length;
    double       truncation_bound;
    double       value;
    std::int64_t words;
};

/// log sup_X |phi_w'| for every word of one length over a truncation, kept in
/// per-first-letter blocks so that repeated evaluation of psi(t) is cheap and
/// sums merge in a fixed order.
class SupNormTable {
  public:
    SupNormTable(const IndexSet &set, int word_length, const EnumerationCap &cap = {});

    /// Sum over words of sup|phi_w'|^t with compensated summation.
    double psi(double t) const;

    int          word_length() const { return length_; }
    std::int64_t words() const;

  private:
    int                              length_;
    std::vector<std::vector<double>> log_sup_; // [first letter][rest of the word, lexicographic]
};

PressureSample psi(const TauParam &tau, double t, double truncation_bound, int word_length,
                   const EnumerationCap &cap = {});
PressureSample psi(const IndexSet &set, double t, int word_length, const EnumerationCap &cap = {});

enum class Verdict { Diverges, Converges, Indeterminate };

const char *to_string(Verdict v);

struct ThetaProbe {
    Verdict             verdict;
    std::vector<double> bounds;
    std::vector<double> partial_sums; // psi^1(t) over |b| <= bound
    std::vector<double> increments;   // partial_sums[i] - partial_sums[i-1]
};

/// Heuristic divergence test for psi^1(t) over a geometric grid of truncation bounds.
ThetaProbe theta_probe(const TauParam &tau, double t, const std::vector<double> &bound_grid);

struct DimensionEstimate {
    double h;
    double bracket_lo;
    double bracket_hi;
    int    word_length;
    double truncation_bound;
    double tolerance;
    double residual; // |psi(h) - 1|
    int    iterations;
};

/// Bisection root of psi^n(t) = 1 on [1, 2].
DimensionEstimate bowen_root(const TauParam &tau, double truncation_bound, int word_length, double tol,
                             const EnumerationCap &cap = {});
DimensionEstimate bowen_root(const IndexSet &set, int word_length, double tol, const EnumerationCap &cap = {});

struct SubmultiplicativityReport {
    double psi_sum;     // psi^{m+n}
    double psi_m;
    double psi_n;
    double product;     // psi^m psi^n
    double lower_bound; // k_hat^{-2t} psi^m psi^n
    double k_hat;
    double upper_slack; // product - psi_sum
    double lower_slack; // psi_sum - lower_bound
    bool   upper_holds; // psi_sum <= product within 1e-9 relative
    bool   lower_holds;
};

/// Audits psi^{m+n} <= psi^m psi^n and the distortion lower bound. When `k_hat` is not
/// given it is taken from an exhaustive distortion audit over words of length <= max(m, n).
SubmultiplicativityReport submultiplicativity_audit(const TauParam &tau, double t, double truncation_bound, int m,
                                                    int n, std::optional<double> k_hat = std::nullopt,
                                                    const EnumerationCap &cap = {});

} // namespace cifs
