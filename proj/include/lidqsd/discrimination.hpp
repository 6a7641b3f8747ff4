// discrimination.hpp
// Optimal figures of merit for telling two pure states apart:
//   - unambiguous discrimination (Jaeger–Shimony success probability),
//   - minimum-error discrimination (Helstrom error probability),
// both as functions of (p1, p2, |β|) and of a |γ|-decomposition (λ1, |γ|).

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "lidqsd/decomposition.hpp"
#include "lidqsd/errors.hpp"

namespace lidqsd {

enum class DiscriminationRegime { BothConclusive, OnlyState1, OnlyState2 };

inline const char* to_string(DiscriminationRegime r) {
    switch (r) {
        case DiscriminationRegime::BothConclusive: return "BothConclusive";
        case DiscriminationRegime::OnlyState1: return "OnlyState1";
        case DiscriminationRegime::OnlyState2: return "OnlyState2";
    }
    return "?";
}

struct DiscriminationMetrics {
    double p_success;
    double p_error_min;
    DiscriminationRegime regime;
};

namespace detail {

inline void check_priors(double p1, double p2, const char* who) {
    if (!(p1 >= 0.0 && p2 >= 0.0 && p1 <= 1.0 && p2 <= 1.0)) {
        throw DomainError(std::string(who) + ": priors must lie in [0, 1]");
    }
    if (std::abs(p1 + p2 - 1.0) > tol::probability_sum) {
        throw DomainError(std::string(who) + ": p1 + p2 must equal 1");
    }
}

inline double check_overlap_modulus(double beta_mod, const char* who) {
    if (!(beta_mod >= 0.0 && beta_mod <= 1.0 + tol::probability_sum)) {
        throw DomainError(std::string(who) + ": |beta| must lie in [0, 1]");
    }
    return std::min(beta_mod, 1.0);
}

// Values within 1e-12 of [0, 1] are snapped; anything further out is a bug.
inline double clamp_probability(double p, const char* who) {
    if (p < -tol::construction || p > 1.0 + tol::construction || std::isnan(p)) {
        throw InconsistentInputs(std::string(who) + ": result " + std::to_string(p) +
                                 " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace detail

/// min{√(p1/p2), √(p2/p1)}, with 0 when either prior vanishes.
inline double conclusive_threshold(double p1, double p2) {
    const double hi = std::max(p1, p2), lo = std::min(p1, p2);
    return std::sqrt(lo / hi);
}

/// |β| at or below the threshold → both states identifiable; above it only the
/// more probable one is. The boundary itself counts as BothConclusive.
inline DiscriminationRegime classify_regime(double p1, double p2, double beta_mod) {
    detail::check_priors(p1, p2, "classify_regime");
    beta_mod = detail::check_overlap_modulus(beta_mod, "classify_regime");
    if (beta_mod <= conclusive_threshold(p1, p2)) return DiscriminationRegime::BothConclusive;
    if (p1 > p2) return DiscriminationRegime::OnlyState1;
    if (p2 > p1) return DiscriminationRegime::OnlyState2;
    return DiscriminationRegime::BothConclusive;
}

/// p_s = 1 − 2√(p1p2)|β| (BothConclusive), otherwise (1 − |β|²)·max{p1, p2}.
inline double jaeger_shimony_ps(double p1, double p2, double beta_mod) {
    const DiscriminationRegime regime = classify_regime(p1, p2, beta_mod);
    beta_mod = std::min(beta_mod, 1.0);
    const double ps = regime == DiscriminationRegime::BothConclusive
                          ? 1.0 - 2.0 * std::sqrt(p1 * p2) * beta_mod
                          : (1.0 - beta_mod * beta_mod) * std::max(p1, p2);
    return detail::clamp_probability(ps, "jaeger_shimony_ps");
}

/// p_e = (1 − √(1 − 4p1p2|β|²)) / 2.
inline double helstrom_pe(double p1, double p2, double beta_mod) {
    detail::check_priors(p1, p2, "helstrom_pe");
    beta_mod = detail::check_overlap_modulus(beta_mod, "helstrom_pe");
    const double radicand = 1.0 - 4.0 * p1 * p2 * beta_mod * beta_mod;
    if (radicand < -tol::round_trip) {
        throw InconsistentInputs("helstrom_pe: 1 - 4 p1 p2 |beta|^2 is negative");
    }
    return detail::clamp_probability(0.5 * (1.0 - std::sqrt(std::max(0.0, radicand))), "helstrom_pe");
}

inline DiscriminationMetrics discrimination_metrics(double p1, double p2, double beta_mod) {
    return {jaeger_shimony_ps(p1, p2, beta_mod), helstrom_pe(p1, p2, beta_mod),
            classify_regime(p1, p2, beta_mod)};
}

// Closed forms in (λ1, |γ|). They are written out directly rather than routed
// through decomposition_probabilities / decomposition_overlap so that the two
// paths can be checked against each other.

/// Optimal unambiguous success probability for the |γ|-decomposition states.
inline double ps_of_gamma(double lambda1, double gamma_mod) {
    detail::check_lambda(lambda1, "ps_of_gamma");
    detail::check_modulus(gamma_mod, "ps_of_gamma");
    const double lambda2 = 1.0 - lambda1;
    const double g_sq = std::min(gamma_mod * gamma_mod, 1.0);
    const double den = detail::prior_denominator(lambda1, g_sq);
    const double n_sq = detail::beta2_norm_sq(lambda1, g_sq);
    if (!(den > 0.0) || !(n_sq > 0.0)) {
        throw DegenerateError("ps_of_gamma: degenerate decomposition (zero denominator)");
    }
    const double diff = std::abs(lambda1 - lambda2);
    const double l12 = lambda1 * lambda2;
    // |β|² and the squared threshold min{p1/p2, p2/p1}, with p1/p2 = λ1λ2 / n².
    const double beta_sq = diff * diff * g_sq * (1.0 - g_sq) / n_sq;
    const double threshold_sq = l12 <= n_sq ? l12 / n_sq : n_sq / l12;

    double ps;
    if (beta_sq <= threshold_sq) {
        ps = 1.0 - 2.0 * diff * std::sqrt(g_sq) * std::sqrt(l12 * (1.0 - g_sq)) / den;
    } else {
        ps = (1.0 - diff * diff * g_sq * (1.0 - g_sq) / n_sq) * std::max(l12, n_sq) / den;
    }
    return detail::clamp_probability(ps, "ps_of_gamma");
}

/// Helstrom error probability for the |γ|-decomposition states.
inline double pe_of_gamma(double lambda1, double gamma_mod) {
    detail::check_lambda(lambda1, "pe_of_gamma");
    detail::check_modulus(gamma_mod, "pe_of_gamma");
    const double lambda2 = 1.0 - lambda1;
    const double g_sq = std::min(gamma_mod * gamma_mod, 1.0);
    const double den = detail::prior_denominator(lambda1, g_sq);
    if (!(den > 0.0)) throw DegenerateError("pe_of_gamma: degenerate decomposition (zero denominator)");
    const double diff = lambda1 - lambda2;
    const double radicand =
        1.0 - 4.0 * lambda1 * lambda2 * diff * diff * g_sq * (1.0 - g_sq) / (den * den);
    if (radicand < -tol::round_trip) throw InconsistentInputs("pe_of_gamma: negative radicand");
    return detail::clamp_probability(0.5 * (1.0 - std::sqrt(std::max(0.0, radicand))), "pe_of_gamma");
}

}  // namespace lidqsd
