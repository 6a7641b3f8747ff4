// decomposition.hpp
// The γ-parametrized family of two-state pure decompositions
//     ρ = p1|β1⟩⟨β1| + p2|β2⟩⟨β2|
// of a rank-two mixed state ρ = λ1|λ1⟩⟨λ1| + λ2|λ2⟩⟨λ2|, indexed by
// γ = ⟨λ1|β1⟩ = |γ|e^{iθ}.
//
// All β states produced here are in eigen coordinates (Basis::eigen); use
// RankTwoMixedState::from_eigen_coordinates to move them into the
// eigenvectors' own representation.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "lidqsd/errors.hpp"
#include "lidqsd/qcore.hpp"

namespace lidqsd {

/// γ = |γ|e^{iθ}. The phase is reduced to [0, 2π) and forced to 0 when the
/// modulus is 0, where it carries no meaning.
class DecompositionParameter {
public:
    DecompositionParameter(double modulus, double phase) : modulus_(modulus), phase_(phase) {
        if (!(modulus >= 0.0 && modulus <= 1.0 + tol::construction)) {
            throw DomainError("DecompositionParameter: |gamma| must lie in [0, 1]");
        }
        if (!std::isfinite(phase)) throw DomainError("DecompositionParameter: phase is not finite");
        modulus_ = std::min(modulus_, 1.0);
        phase_ = modulus_ == 0.0 ? 0.0 : reduce_phase(phase_);
    }

    static DecompositionParameter from_modulus_squared(double gamma_sq, double phase = 0.0) {
        if (!(gamma_sq >= 0.0 && gamma_sq <= 1.0)) {
            throw DomainError("DecompositionParameter: |gamma|^2 must lie in [0, 1]");
        }
        return DecompositionParameter(std::sqrt(gamma_sq), phase);
    }

    static DecompositionParameter from_complex(cplx gamma) {
        return DecompositionParameter(std::abs(gamma), std::arg(gamma));
    }

    double modulus() const { return modulus_; }
    double phase() const { return phase_; }
    cplx value() const { return std::polar(modulus_, phase_); }

    static double reduce_phase(double phase) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double r = std::fmod(phase, two_pi);
        if (r < 0.0) r += two_pi;
        return r >= two_pi ? 0.0 : r;
    }

private:
    double modulus_;
    double phase_;
};

struct Decomposition {
    DecompositionParameter gamma;
    double p1;
    double p2;
    PureState beta1;  // eigen coordinates
    PureState beta2;  // eigen coordinates
    cplx overlap;     // ⟨β1|β2⟩

    /// p1|β1⟩⟨β1| + p2|β2⟩⟨β2| in eigen coordinates.
    Matrix2 reconstruct() const {
        const Matrix2 a = outer(beta1), b = outer(beta2);
        Matrix2 m{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m[i][j] = p1 * a[i][j] + p2 * b[i][j];
        return m;
    }
};

namespace detail {

inline void check_lambda(double lambda1, const char* who) {
    if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) {
        throw DomainError(std::string(who) + ": lambda1 must lie in [0, 1]");
    }
}

inline void check_modulus(double g, const char* who) {
    if (!(g >= 0.0 && g <= 1.0 + tol::construction)) {
        throw DomainError(std::string(who) + ": |gamma| must lie in [0, 1]");
    }
}

// λ1 + (λ2 − λ1)|γ|²
inline double prior_denominator(double lambda1, double g_sq) {
    return lambda1 + (1.0 - 2.0 * lambda1) * g_sq;
}

// λ1² + (λ2 − λ1)|γ|², the squared norm of the unnormalized β2.
inline double beta2_norm_sq(double lambda1, double g_sq) {
    return lambda1 * lambda1 + (1.0 - 2.0 * lambda1) * g_sq;
}

inline bool is_degenerate_spectrum(double lambda1, double lambda2) {
    return std::abs(lambda1 - lambda2) <= tol::construction;
}

}  // namespace detail

/// a priori probabilities (p1, p2) of the |γ|-decomposition.
inline std::pair<double, double> decomposition_probabilities(double lambda1, double gamma_modulus) {
    detail::check_lambda(lambda1, "decomposition_probabilities");
    detail::check_modulus(gamma_modulus, "decomposition_probabilities");
    const double lambda2 = 1.0 - lambda1;
    const double g_sq = std::min(gamma_modulus * gamma_modulus, 1.0);
    const double den = detail::prior_denominator(lambda1, g_sq);
    if (!(den > 0.0)) {
        throw DegenerateError("decomposition_probabilities: lambda1 + (lambda2 - lambda1)|gamma|^2 is zero");
    }
    const double p1 = lambda1 * lambda2 / den;
    const double p2 = (lambda1 * lambda1 + (lambda2 - lambda1) * g_sq) / den;
    return {p1, p2};
}

/// ⟨β1|β2⟩ = (λ1 − λ2)|γ|√(1−|γ|²) e^{−iθ} / √(λ1² + (λ2 − λ1)|γ|²).
inline cplx decomposition_overlap(double lambda1, const DecompositionParameter& gamma) {
    detail::check_lambda(lambda1, "decomposition_overlap");
    const double lambda2 = 1.0 - lambda1;
    const double g = gamma.modulus();
    const double g_sq = g * g;
    const double n_sq = detail::beta2_norm_sq(lambda1, g_sq);
    if (!(n_sq > 0.0)) {
        throw DegenerateError("decomposition_overlap: lambda1^2 + (lambda2 - lambda1)|gamma|^2 is zero");
    }
    const double mod = (lambda1 - lambda2) * g * std::sqrt(std::max(0.0, 1.0 - g_sq)) / std::sqrt(n_sq);
    return mod * std::polar(1.0, -gamma.phase());
}

/// β1 = γ|λ1⟩ + √(1−|γ|²)|λ2⟩,
/// β2 = (λ1√(1−|γ|²)|λ1⟩ − λ2γ*|λ2⟩) / √(λ1² + (λ2 − λ1)|γ|²).
///
/// Rejects λ1 = λ2; that case is covered by degenerate_decomposition.
inline Decomposition decomposition_states(const RankTwoMixedState& state,
                                          const DecompositionParameter& gamma) {
    const double l1 = state.lambda1(), l2 = state.lambda2();
    if (detail::is_degenerate_spectrum(l1, l2)) {
        throw DegenerateError(
            "decomposition_states: lambda1 == lambda2, use degenerate_decomposition instead");
    }
    const auto [p1, p2] = decomposition_probabilities(l1, gamma.modulus());
    const cplx gam = gamma.value();
    const double g_sq = gamma.modulus() * gamma.modulus();
    const double c = std::sqrt(std::max(0.0, 1.0 - g_sq));
    const double n = std::sqrt(detail::beta2_norm_sq(l1, g_sq));

    PureState beta1(gam, c, Basis::eigen);
    PureState beta2(l1 * c / n, -l2 * std::conj(gam) / n, Basis::eigen);
    const cplx ov = inner_product(beta1, beta2);
    return Decomposition{gamma, p1, p2, beta1, beta2, ov};
}

/// Equal-prior member of the family, i.e. decomposition_states at |γ| = √λ1,
/// written in the simplified form
///     β1 = √λ1 e^{iθ}|λ1⟩ + √λ2|λ2⟩,   β2 = √λ1|λ1⟩ − √λ2 e^{−iθ}|λ2⟩
/// which stays defined for every λ1 ∈ [0, 1], including λ1 = λ2.
/// The overlap is (λ1 − λ2)e^{−iθ}.
inline Decomposition balanced_decomposition(const RankTwoMixedState& state, double theta) {
    const double l1 = state.lambda1(), l2 = state.lambda2();
    const double s1 = std::sqrt(std::max(0.0, l1)), s2 = std::sqrt(std::max(0.0, l2));
    const DecompositionParameter gamma(s1, theta);
    const cplx e = std::polar(1.0, gamma.phase());
    PureState beta1(s1 * e, s2, Basis::eigen, tol::round_trip);
    PureState beta2(s1, -s2 * std::conj(e), Basis::eigen, tol::round_trip);
    return Decomposition{gamma, 0.5, 0.5, beta1, beta2, inner_product(beta1, beta2)};
}

/// Orthogonal family for ρ = I/2:
///     β1 = |γ|e^{−iθ}|λ1⟩ + √(1−|γ|²)|λ2⟩,   β2 = √(1−|γ|²)|λ1⟩ − |γ|e^{iθ}|λ2⟩.
/// Note ⟨λ1|β1⟩ is γ* here, not γ.
inline Decomposition degenerate_decomposition(const DecompositionParameter& gamma) {
    const double g = gamma.modulus();
    const double c = std::sqrt(std::max(0.0, 1.0 - g * g));
    const cplx e = std::polar(1.0, gamma.phase());
    PureState beta1(g * std::conj(e), c, Basis::eigen);
    PureState beta2(c, -g * e, Basis::eigen);
    return Decomposition{gamma, 0.5, 0.5, beta1, beta2, inner_product(beta1, beta2)};
}

/// |⟨β1|β2⟩| recovered from the two projector expectations through
///     ⟨β1|ρ|β1⟩ + ⟨β2|ρ|β2⟩ = 1 + |⟨β1|β2⟩|².
///
/// Before applying the identity the priors are recovered from the dual basis
/// and the decomposition is rebuilt; a mismatch above 1e-8 means the states do
/// not decompose ρ and InconsistentInputs is thrown.
inline double overlap_from_projections(const DensityMatrix2& rho, const PureState& beta1,
                                       const PureState& beta2) {
    if (beta1.basis() != beta2.basis()) {
        throw DomainError("overlap_from_projections: beta states use different bases");
    }
    constexpr double consistency = 1e-8;
    const Matrix2 proj1 = outer(beta1), proj2 = outer(beta2);

    // β2⊥ annihilates β2, so ⟨β2⊥|ρ|β2⊥⟩ = p1 |⟨β2⊥|β1⟩|².
    const PureState perp2(-std::conj(beta2.amp1()), std::conj(beta2.amp0()), beta2.basis());
    const double w = std::norm(inner_product(perp2, beta1));
    double p1 = 0.0;
    if (w > consistency) {
        p1 = rho.expectation(perp2) / w;
    } else if (max_abs_diff(rho.entries(), proj1) > consistency) {
        throw InconsistentInputs("overlap_from_projections: parallel states but rho is not their projector");
    }
    if (p1 < -consistency || p1 > 1.0 + consistency) {
        throw InconsistentInputs("overlap_from_projections: implied prior outside [0, 1]");
    }
    Matrix2 rebuilt{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rebuilt[i][j] = p1 * proj1[i][j] + (1.0 - p1) * proj2[i][j];
    if (max_abs_diff(rebuilt, rho.entries()) > consistency) {
        throw InconsistentInputs("overlap_from_projections: states do not decompose rho");
    }

    const double excess = rho.expectation(beta1) + rho.expectation(beta2) - 1.0;
    if (excess < -tol::round_trip) {
        throw InconsistentInputs("overlap_from_projections: projector sum below 1");
    }
    return std::sqrt(std::max(0.0, excess));
}

/// γ = ⟨λ1|β1⟩, after removing the global phase that makes the |λ2⟩
/// component of β1 real and positive (the family's convention). β1 may be in
/// eigen coordinates or in the same basis as the state's eigenvectors.
inline DecompositionParameter gamma_from_state(const RankTwoMixedState& state, const PureState& beta1) {
    cplx c1, c2;
    if (beta1.basis() == Basis::eigen) {
        c1 = beta1.amp0();
        c2 = beta1.amp1();
    } else {
        c1 = inner_product(state.eigvec1(), beta1);
        c2 = inner_product(state.eigvec2(), beta1);
    }
    const double r2 = std::abs(c2);
    const cplx gamma = r2 > 0.0 ? c1 * std::conj(c2) / r2 : c1;
    return DecompositionParameter(std::min(std::abs(gamma), 1.0), std::arg(gamma));
}

}  // namespace lidqsd
