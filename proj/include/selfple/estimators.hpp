#pragma once

// The PLE estimators: SVD-based total least squares, the closed-form TLS
// solution, the closed-form weighted TLS, and the neighborhood-cardinality
// baseline (C-PLE). The TLS family regresses pairwise power differences
// on rank-ratio estimates, both of which carry errors, and always selects
// the positive root of the orthogonal-residual cost.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfple/regress.hpp"

namespace selfple::estimators {

enum class Method { TlsSvd, TlsClosed, Wtls, CPle };

const char* method_name(Method method);

struct EstimateReport {
    Method method = Method::TlsClosed;
    double gamma_hat = 0.0; // meaningful only when !degenerate
    std::size_t sample_count = 0;
    std::optional<double> eta; // closed-form diagnostic; absent for SVD and C-PLE
    bool degenerate = false;
    std::string degenerate_reason;
};

// Per-sample positive weights aligned with PairSampleSet order.
struct WeightSet {
    std::vector<double> weights;
};

// Running inner products of the two sample columns; the whole closed-form
// path reduces to one pass of these sums (3 multiply-adds per sample,
// no N x N object). Templated so tests can count scalar operations.
template <typename Scalar = double>
struct GramAccumulator {
    Scalar ratio_ratio{}; // sum w l^2
    Scalar diff_diff{};   // sum w p^2
    Scalar ratio_diff{};  // sum w l p
    void add(Scalar ratio, Scalar diff) {
        ratio_ratio += ratio * ratio;
        diff_diff += diff * diff;
        ratio_diff += ratio * diff;
    }
    void add(Scalar ratio, Scalar diff, Scalar weight) {
        const Scalar wr = weight * ratio;
        ratio_ratio += wr * ratio;
        diff_diff += weight * diff * diff;
        ratio_diff += wr * diff;
    }
};

// Positive root of the orthogonal-residual stationarity condition,
// evaluated in the numerically stable branch: eta + sqrt(1 + eta^2).
double positive_tls_root(double eta);

// Both stationary points (positive, negative); their product is -1.
std::pair<double, double> tls_stationary_points(double eta);

// Orthogonal-residual cost J(gamma) = ||P - gamma L||^2 / (1 + gamma^2),
// optionally weighted. Exposed for diagnostics and tests.
double tls_cost(const regress::PairSampleSet& samples, double gamma, const WeightSet* weights = nullptr);

// Closed-form TLS: eta = (P'P - L'L) / (2 L'P), gamma = positive root.
// Flags a degenerate result when L'P == 0.
EstimateReport tls_closed_form(const regress::PairSampleSet& samples);

// TLS via the singular value decomposition of the N x 2 matrix [L P]
// (one-sided Jacobi). Returns the estimate from the right singular
// vector of the smallest singular value, sign-normalized to the positive
// root. Flags vertical solutions, rank-0 input and singular-value ties.
EstimateReport tls_svd(const regress::PairSampleSet& samples);

// Rank-mismatch weights: w = 1 / max{(n/i + j - 2)^2, (n/j + i - 2)^2}.
// The estimate is invariant to uniform weight scaling, so no prefactor
// is applied.
WeightSet build_weights(const regress::PairSampleSet& samples);

// Weighted closed-form TLS; weights enter as per-sample multipliers.
EstimateReport wtls(const regress::PairSampleSet& samples, const WeightSet& weights);

// Cardinality baseline: gamma = 2 ln(P2/P1) / ln(n1/n2) with the
// threshold ratio taken in linear power (thresholds given in dBm).
// n1 == n2 is an error; a non-positive estimate is flagged degenerate.
EstimateReport c_ple(int n1_hat, int n2_hat, double p_thres1_dbm, double p_thres2_dbm);

} // namespace selfple::estimators
