#include "selfple/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace selfple::estimators {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

const char* method_name(Method method) {
    switch (method) {
    case Method::TlsSvd: return "tls_svd";
    case Method::TlsClosed: return "tls";
    case Method::Wtls: return "wtls";
    case Method::CPle: return "c_ple";
    }
    return "unknown";
}

double positive_tls_root(double eta) {
    const double s = std::sqrt(1.0 + eta * eta);
    return eta >= 0.0 ? eta + s : 1.0 / (s - eta);
}

std::pair<double, double> tls_stationary_points(double eta) {
    const double pos = positive_tls_root(eta);
    return {pos, -1.0 / pos};
}

double tls_cost(const regress::PairSampleSet& samples, double gamma, const WeightSet* weights) {
    double acc = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double r = samples.power_diff_db[i] - gamma * samples.rank_ratio_db[i];
        acc += (weights ? weights->weights[i] : 1.0) * r * r;
    }
    return acc / (1.0 + gamma * gamma);
}

namespace {

EstimateReport closed_form_from_gram(Method method, std::size_t count, const GramAccumulator<>& gram) {
    EstimateReport report;
    report.method = method;
    report.sample_count = count;
    if (gram.ratio_diff == 0.0) {
        report.degenerate = true;
        report.degenerate_reason = "ratio-difference inner product is zero; eta undefined";
        report.gamma_hat = kNan;
        return report;
    }
    const double eta = (gram.diff_diff - gram.ratio_ratio) / (2.0 * gram.ratio_diff);
    report.eta = eta;
    report.gamma_hat = positive_tls_root(eta);
    return report;
}

} // namespace

EstimateReport tls_closed_form(const regress::PairSampleSet& samples) {
    if (samples.size() < 1)
        throw std::invalid_argument("tls_closed_form: need at least one sample");
    GramAccumulator<> gram;
    for (std::size_t i = 0; i < samples.size(); ++i)
        gram.add(samples.rank_ratio_db[i], samples.power_diff_db[i]);
    return closed_form_from_gram(Method::TlsClosed, samples.size(), gram);
}

EstimateReport tls_svd(const regress::PairSampleSet& samples) {
    const std::size_t n = samples.size();
    if (n < 1)
        throw std::invalid_argument("tls_svd: need at least one sample");

    EstimateReport report;
    report.method = Method::TlsSvd;
    report.sample_count = n;

    // One-sided Jacobi on the two columns of [L P]: a single plane
    // rotation orthogonalizes them; the rotated column norms are the
    // singular values and the rotation is V.
    double ll = 0.0, pp = 0.0, lp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double l = samples.rank_ratio_db[i];
        const double p = samples.power_diff_db[i];
        ll += l * l;
        pp += p * p;
        lp += l * p;
    }
    if (ll == 0.0 && pp == 0.0) {
        report.degenerate = true;
        report.degenerate_reason = "rank-0 input";
        report.gamma_hat = kNan;
        return report;
    }

    // Rotation V = [[c, s], [-s, c]] chosen to orthogonalize the columns
    // of [L P] V (Jacobi pair for the 2x2 Gram matrix).
    double cos_t = 1.0, sin_t = 0.0;
    if (lp != 0.0) {
        const double tau = (pp - ll) / (2.0 * lp);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        cos_t = 1.0 / std::sqrt(1.0 + t * t);
        sin_t = t * cos_t;
    }

    // Squared norms of the rotated columns w1 = L c - P s, w2 = L s + P c.
    const double s1 = cos_t * cos_t * ll - 2.0 * cos_t * sin_t * lp + sin_t * sin_t * pp;
    const double s2 = sin_t * sin_t * ll + 2.0 * cos_t * sin_t * lp + cos_t * cos_t * pp;

    // V columns (ratio component, diff component): col1 = (c, -s),
    // col2 = (s, c); keep the one for the smaller singular value.
    double v_small_ratio, v_small_diff;
    if (s1 >= s2) {
        v_small_ratio = sin_t;
        v_small_diff = cos_t;
    } else {
        v_small_ratio = cos_t;
        v_small_diff = -sin_t;
    }

    const double sigma_hi = std::max(s1, s2);
    const double sigma_lo = std::min(s1, s2);
    if (sigma_hi > 0.0 && (sigma_hi - sigma_lo) <= 1e-12 * sigma_hi) {
        report.degenerate = true;
        report.degenerate_reason = "singular-value tie; direction undetermined";
        report.gamma_hat = kNan;
        return report;
    }
    if (v_small_diff == 0.0) {
        report.degenerate = true;
        report.degenerate_reason = "vertical solution";
        report.gamma_hat = kNan;
        return report;
    }
    double gamma = -v_small_ratio / v_small_diff;
    if (gamma == 0.0) {
        report.degenerate = true;
        report.degenerate_reason = "orthogonal columns; zero-slope solution";
        report.gamma_hat = kNan;
        return report;
    }
    // The positive root is always reported; the two candidate slopes are
    // negative reciprocals of each other.
    if (gamma < 0.0) gamma = -1.0 / gamma;
    report.gamma_hat = gamma;
    return report;
}

WeightSet build_weights(const regress::PairSampleSet& samples) {
    if (samples.n_hat < 2)
        throw std::invalid_argument("build_weights: need n_hat >= 2");
    WeightSet out;
    out.weights.reserve(samples.size());
    const double n = samples.n_hat;
    for (const auto& [i, j] : samples.rank_pairs) {
        const double a = n / i + j - 2.0;
        const double b = n / j + i - 2.0;
        out.weights.push_back(1.0 / std::max(a * a, b * b));
    }
    return out;
}

EstimateReport wtls(const regress::PairSampleSet& samples, const WeightSet& weights) {
    if (samples.size() < 1)
        throw std::invalid_argument("wtls: need at least one sample");
    if (weights.weights.size() != samples.size())
        throw std::invalid_argument("wtls: weight count must match sample count");
    GramAccumulator<> gram;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(weights.weights[i] > 0.0))
            throw std::invalid_argument("wtls: weights must be positive");
        gram.add(samples.rank_ratio_db[i], samples.power_diff_db[i], weights.weights[i]);
    }
    EstimateReport report = closed_form_from_gram(Method::Wtls, samples.size(), gram);
    report.method = Method::Wtls;
    return report;
}

EstimateReport c_ple(int n1_hat, int n2_hat, double p_thres1_dbm, double p_thres2_dbm) {
    if (n1_hat < 1 || n2_hat < 1)
        throw std::invalid_argument("c_ple: neighborhood sizes must be >= 1");
    if (p_thres1_dbm == p_thres2_dbm)
        throw std::invalid_argument("c_ple: thresholds must be distinct");
    if (n1_hat == n2_hat)
        throw std::invalid_argument("c_ple: equal neighborhood sizes leave the estimate undefined");

    EstimateReport report;
    report.method = Method::CPle;
    report.sample_count = 2;
    // Threshold ratio in linear power: ln(P2/P1) = (dBm difference) ln(10)/10.
    const double ln_thres_ratio = (p_thres2_dbm - p_thres1_dbm) * std::log(10.0) / 10.0;
    const double gamma = 2.0 * ln_thres_ratio /
                         std::log(static_cast<double>(n1_hat) / static_cast<double>(n2_hat));
    report.gamma_hat = gamma;
    if (!(gamma > 0.0)) {
        report.degenerate = true;
        report.degenerate_reason = "non-positive estimate (neighborhood sizes moved against the threshold)";
    }
    return report;
}

} // namespace selfple::estimators
