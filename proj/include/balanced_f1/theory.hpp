#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "balanced_f1/rng.hpp"

namespace balanced_f1 {

enum class NoiseKind : std::uint8_t { Uniform, TruncatedGaussian, Empirical };

/// Score distribution of a label-independent random detector on [0, 1].
/// Exposes the CDF N(gamma) used by the closed forms and a sampler used by
/// the Monte-Carlo harness.
class NoiseModel {
public:
    static NoiseModel uniform() { return NoiseModel(NoiseKind::Uniform, 0.0, 0.0, {}); }

    static NoiseModel truncated_gaussian(double mu, double sigma) {
        if (sigma < 0.0) throw std::invalid_argument("NoiseModel: sigma must be >= 0");
        return NoiseModel(NoiseKind::TruncatedGaussian, mu, sigma, {});
    }

    static NoiseModel empirical(std::vector<double> samples) {
        if (samples.empty()) throw std::invalid_argument("NoiseModel: empirical sample is empty");
        std::sort(samples.begin(), samples.end());
        return NoiseModel(NoiseKind::Empirical, 0.0, 0.0, std::move(samples));
    }

    NoiseKind kind() const { return kind_; }

    /// N(gamma) = Pr(score <= gamma).
    double cdf(double gamma) const {
        if (gamma < 0.0) return 0.0;
        if (gamma >= 1.0) return 1.0;
        switch (kind_) {
            case NoiseKind::Uniform:
                return gamma;
            case NoiseKind::TruncatedGaussian: {
                if (sigma_ == 0.0) return gamma < mu_ ? 0.0 : 1.0;
                const double lo = phi((0.0 - mu_) / sigma_);
                const double hi = phi((1.0 - mu_) / sigma_);
                const double at = phi((gamma - mu_) / sigma_);
                return (at - lo) / (hi - lo);
            }
            case NoiseKind::Empirical: {
                // Step CDF with midpoint weight on ties.
                const auto lower =
                    std::lower_bound(samples_.begin(), samples_.end(), gamma);
                const auto upper =
                    std::upper_bound(samples_.begin(), samples_.end(), gamma);
                const double below = static_cast<double>(lower - samples_.begin());
                const double equal = static_cast<double>(upper - lower);
                return (below + 0.5 * equal) / static_cast<double>(samples_.size());
            }
        }
        throw std::logic_error("NoiseModel: unknown kind");
    }

    double sample(Rng& rng) const {
        switch (kind_) {
            case NoiseKind::Uniform:
                return rng.uniform01();
            case NoiseKind::TruncatedGaussian:
                return rng.truncated_normal01(mu_, sigma_);
            case NoiseKind::Empirical:
                return samples_[rng.uniform_int(0, samples_.size() - 1)];
        }
        throw std::logic_error("NoiseModel: unknown kind");
    }

private:
    NoiseModel(NoiseKind kind, double mu, double sigma, std::vector<double> samples)
        : kind_(kind), mu_(mu), sigma_(sigma), samples_(std::move(samples)) {}

    static double phi(double z) { return 0.5 * (1.0 + std::erf(z / std::sqrt(2.0))); }

    NoiseKind kind_;
    double mu_;
    double sigma_;
    std::vector<double> samples_;
};

/// Parameters of the single-event asymptotic regime: anomaly ratio
/// q = |S_a| / T, anomaly width, island width, and the detection threshold.
struct TheoryParams {
    double q = 0.2;
    std::size_t anomaly_width = 100;
    std::size_t island_width = 100;
    double gamma = 0.5;
};

struct TheoryMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

namespace detail {

inline void require_theory_params(const TheoryParams& p) {
    if (!(p.q > 0.0 && p.q < 1.0)) throw std::invalid_argument("TheoryParams: q must be in (0,1)");
    if (p.anomaly_width < 1 || p.island_width < 1)
        throw std::invalid_argument("TheoryParams: widths must be >= 1");
}

/// Shared core of the PA/BA closed forms. `alpha_pow` is the miss
/// probability of a whole event (alpha^{w_a}); `beta_pow` the probability a
/// width-w_N island stays silent (beta^{w_N}). PA is the case w_N = 1.
inline TheoryMetrics closed_form(double alpha_pow, double beta_pow, double q) {
    TheoryMetrics m;
    m.recall = 1.0 - alpha_pow;
    const double p_den = (1.0 - beta_pow) + q * (beta_pow - alpha_pow);
    m.precision = p_den > 0.0 ? q * m.recall / p_den : 1.0;  // no positive mass at all
    const double f_den = (1.0 - beta_pow) + q * (1.0 + beta_pow - alpha_pow);
    m.f1 = f_den > 0.0 ? 2.0 * q * m.recall / f_den : 0.0;
    return m;
}

}  // namespace detail

/// Theoretical point-adjusted metrics of a random scorer (single event,
/// large T): recall = 1 - N(gamma)^{w_a} with the matching precision.
inline TheoryMetrics f1_pa_noise(const TheoryParams& p, const NoiseModel& noise) {
    detail::require_theory_params(p);
    const double n = noise.cdf(p.gamma);
    const double a = std::pow(n, static_cast<double>(p.anomaly_width));
    return detail::closed_form(a, n, p.q);
}

/// Theoretical balanced-adjusted metrics of a random scorer. Identical
/// recall to PA; the island width enters the precision through N(gamma)^{w_N}.
inline TheoryMetrics f1_ba_noise(const TheoryParams& p, const NoiseModel& noise) {
    detail::require_theory_params(p);
    const double n = noise.cdf(p.gamma);
    const double a = std::pow(n, static_cast<double>(p.anomaly_width));
    const double b = std::pow(n, static_cast<double>(p.island_width));
    return detail::closed_form(a, b, p.q);
}

/// Generalized closed form for a detector with miss rate alpha on anomalous
/// timesteps and silence rate beta on regular ones. alpha = beta = N(gamma)
/// recovers f1_ba_noise; island width is exposed independently of the
/// anomaly width.
inline TheoryMetrics f1_ba_closed(double alpha, double beta, const TheoryParams& p) {
    detail::require_theory_params(p);
    if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0))
        throw std::invalid_argument("f1_ba_closed: alpha and beta must be in [0,1]");
    const double a = std::pow(alpha, static_cast<double>(p.anomaly_width));
    const double b = std::pow(beta, static_cast<double>(p.island_width));
    return detail::closed_form(a, b, p.q);
}

/// dF1_BA/dgamma under uniform noise with w_N = w_a:
/// -2 q^2 w_a gamma^{w_a - 1} / (1 + q - gamma^{w_a})^2. Nonpositive, and
/// vanishing for wide events, which is the threshold-agnostic regime.
inline double threshold_sensitivity(const TheoryParams& p) {
    detail::require_theory_params(p);
    const double w = static_cast<double>(p.anomaly_width);
    const double g = p.gamma;
    const double num = 2.0 * p.q * p.q * w * std::pow(g, w - 1.0);
    const double den = 1.0 + p.q - std::pow(g, w);
    return -num / (den * den);
}

}  // namespace balanced_f1
