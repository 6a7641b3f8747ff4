// qcore.hpp
// Two-level states, 2x2 density matrices and the two-photon polarization state
// used for heralded preparation.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lidqsd/errors.hpp"

namespace lidqsd {

using cplx = std::complex<double>;

namespace tol {
/// Construction invariants (norms, traces, Hermiticity).
inline constexpr double construction = 1e-12;
/// Round trips through several closed forms.
inline constexpr double round_trip = 1e-10;
/// Probability sums supplied by callers.
inline constexpr double probability_sum = 1e-9;
}  // namespace tol

/// Representation a 2-component amplitude vector is written in.
/// `eigen` means components over {|λ1⟩, |λ2⟩}; `polarization` over {|h⟩, |v⟩}.
enum class Basis { eigen, polarization };

inline const char* to_string(Basis b) {
    return b == Basis::eigen ? "eigen" : "polarization";
}

/// Normalized qubit state. Throws DomainError when the norm is off by more
/// than `tolerance`.
class PureState {
public:
    PureState(cplx amp0, cplx amp1, Basis basis, double tolerance = tol::construction)
        : amp0_(amp0), amp1_(amp1), basis_(basis) {
        const double n = std::norm(amp0) + std::norm(amp1);
        if (!(std::abs(n - 1.0) <= tolerance)) {
            throw DomainError("PureState: squared norm " + std::to_string(n) + " is not 1");
        }
    }

    /// Rescales (a0, a1) to unit norm.
    static PureState normalized(cplx a0, cplx a1, Basis basis) {
        const double n = std::sqrt(std::norm(a0) + std::norm(a1));
        if (!(n > 0.0)) throw DomainError("PureState: cannot normalize the zero vector");
        return PureState(a0 / n, a1 / n, basis);
    }

    static PureState basis_vector(int index, Basis basis) {
        return index == 0 ? PureState(1.0, 0.0, basis) : PureState(0.0, 1.0, basis);
    }

    cplx amp0() const { return amp0_; }
    cplx amp1() const { return amp1_; }
    cplx operator[](int i) const { return i == 0 ? amp0_ : amp1_; }
    Basis basis() const { return basis_; }

    PureState with_phase(double phase) const {
        const cplx f = std::polar(1.0, phase);
        return PureState(f * amp0_, f * amp1_, basis_);
    }

private:
    cplx amp0_;
    cplx amp1_;
    Basis basis_;
};

/// ⟨a|b⟩. Both states must be written in the same basis.
inline cplx inner_product(const PureState& a, const PureState& b) {
    if (a.basis() != b.basis()) {
        throw DomainError(std::string("inner_product: basis mismatch (") + to_string(a.basis()) +
                          " vs " + to_string(b.basis()) + ")");
    }
    return std::conj(a.amp0()) * b.amp0() + std::conj(a.amp1()) * b.amp1();
}

/// Plain 2x2 complex matrix, row major.
using Matrix2 = std::array<std::array<cplx, 2>, 2>;

inline Matrix2 outer(const PureState& psi) {
    Matrix2 m{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = psi[i] * std::conj(psi[j]);
    return m;
}

inline double max_abs_diff(const Matrix2& a, const Matrix2& b) {
    double d = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
    return d;
}

inline double hermiticity_defect(const Matrix2& m) {
    return std::max({std::abs(m[0][0].imag()), std::abs(m[1][1].imag()),
                     std::abs(m[0][1] - std::conj(m[1][0]))});
}

/// Unit-trace positive semidefinite Hermitian 2x2 matrix.
class DensityMatrix2 {
public:
    explicit DensityMatrix2(const Matrix2& entries, double tolerance = tol::construction)
        : m_(entries) {
        if (hermiticity_defect(m_) > tolerance) throw DomainError("DensityMatrix2: not Hermitian");
        const double tr = m_[0][0].real() + m_[1][1].real();
        if (std::abs(tr - 1.0) > tolerance) {
            throw DomainError("DensityMatrix2: trace " + std::to_string(tr) + " is not 1");
        }
        // Smaller eigenvalue of a Hermitian 2x2: mean − radius.
        const double half_gap = 0.5 * (m_[0][0].real() - m_[1][1].real());
        const double lo = 0.5 * tr - std::hypot(half_gap, std::abs(m_[0][1]));
        if (lo < -tolerance) throw DomainError("DensityMatrix2: negative eigenvalue");
    }

    static DensityMatrix2 diagonal(double d0, double d1) {
        return DensityMatrix2(Matrix2{{{d0, 0.0}, {0.0, d1}}});
    }

    const Matrix2& entries() const { return m_; }
    cplx operator()(int i, int j) const { return m_[i][j]; }

    /// ⟨ψ|ρ|ψ⟩ (real for Hermitian ρ).
    double expectation(const PureState& psi) const {
        cplx acc = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) acc += std::conj(psi[i]) * m_[i][j] * psi[j];
        return acc.real();
    }

    double trace() const { return m_[0][0].real() + m_[1][1].real(); }

private:
    Matrix2 m_;
};

/// Spectral form λ1|λ1⟩⟨λ1| + λ2|λ2⟩⟨λ2|. The (λ1, λ2) labeling is kept as
/// given; nothing is sorted here.
class RankTwoMixedState {
public:
    RankTwoMixedState(double lambda1, double lambda2, PureState eigvec1, PureState eigvec2,
                      double tolerance = tol::construction)
        : lambda1_(lambda1), lambda2_(lambda2), v1_(eigvec1), v2_(eigvec2) {
        if (lambda1 < -tolerance || lambda1 > 1.0 + tolerance || lambda2 < -tolerance ||
            lambda2 > 1.0 + tolerance) {
            throw DomainError("RankTwoMixedState: eigenvalues must lie in [0, 1]");
        }
        if (std::abs(lambda1 + lambda2 - 1.0) > tolerance) {
            throw DomainError("RankTwoMixedState: lambda1 + lambda2 must equal 1");
        }
        if (std::abs(inner_product(v1_, v2_)) > tolerance) {
            throw DomainError("RankTwoMixedState: eigenvectors are not orthogonal");
        }
    }

    /// Diagonal state with |λ1⟩ = first basis vector, |λ2⟩ = second.
    static RankTwoMixedState canonical(double lambda1, Basis basis = Basis::eigen) {
        if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) {
            throw DomainError("RankTwoMixedState: lambda1 must lie in [0, 1]");
        }
        return RankTwoMixedState(lambda1, 1.0 - lambda1, PureState::basis_vector(0, basis),
                                 PureState::basis_vector(1, basis));
    }

    double lambda1() const { return lambda1_; }
    double lambda2() const { return lambda2_; }
    const PureState& eigvec1() const { return v1_; }
    const PureState& eigvec2() const { return v2_; }
    Basis basis() const { return v1_.basis(); }

    Matrix2 matrix() const {
        const Matrix2 a = outer(v1_), b = outer(v2_);
        Matrix2 m{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m[i][j] = lambda1_ * a[i][j] + lambda2_ * b[i][j];
        return m;
    }

    DensityMatrix2 density() const { return DensityMatrix2(matrix()); }

    /// Maps coordinates over {|λ1⟩, |λ2⟩} into the eigenvectors' own basis.
    PureState from_eigen_coordinates(const PureState& psi) const {
        if (psi.basis() != Basis::eigen) {
            throw DomainError("from_eigen_coordinates: state must be in eigen coordinates");
        }
        return PureState(psi.amp0() * v1_.amp0() + psi.amp1() * v2_.amp0(),
                         psi.amp0() * v1_.amp1() + psi.amp1() * v2_.amp1(), v1_.basis(),
                         tol::round_trip);
    }

private:
    double lambda1_;
    double lambda2_;
    PureState v1_;
    PureState v2_;
};

/// Σ p_i |ψ_i⟩⟨ψ_i|.
inline DensityMatrix2 density_from_ensemble(std::span<const std::pair<double, PureState>> pairs) {
    if (pairs.empty()) throw DomainError("density_from_ensemble: empty ensemble");
    const Basis basis = pairs.front().second.basis();
    double total = 0.0;
    Matrix2 m{};
    for (const auto& [p, psi] : pairs) {
        if (p < 0.0) throw DomainError("density_from_ensemble: negative probability");
        if (psi.basis() != basis) throw DomainError("density_from_ensemble: mixed bases");
        total += p;
        const Matrix2 proj = outer(psi);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m[i][j] += p * proj[i][j];
    }
    if (std::abs(total - 1.0) > tol::probability_sum) {
        throw DomainError("density_from_ensemble: probabilities sum to " + std::to_string(total));
    }
    return DensityMatrix2(m, tol::round_trip);
}

inline DensityMatrix2 density_from_ensemble(std::initializer_list<std::pair<double, PureState>> pairs) {
    const std::vector<std::pair<double, PureState>> v(pairs);
    return density_from_ensemble(std::span<const std::pair<double, PureState>>(v));
}

/// Closed-form spectral decomposition of a Hermitian 2x2 matrix.
///
/// The returned lambda1 is the smaller eigenvalue. Eigenvectors are written in
/// `basis`. If the input is diagonal, eigvec1 is the canonical basis vector
/// carrying the smaller entry, so diag(0.7, 0.3) comes back as
/// (0.3, |1⟩; 0.7, |0⟩). For a degenerate spectrum the eigenvectors are not
/// unique; the canonical basis is returned and only the reconstruction is
/// meaningful.
inline RankTwoMixedState eigendecompose(const Matrix2& m, Basis basis = Basis::eigen) {
    if (hermiticity_defect(m) > tol::construction) {
        throw DomainError("eigendecompose: input is not Hermitian");
    }
    const double a = m[0][0].real(), d = m[1][1].real();
    const cplx b = m[0][1];
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    const double lo = mean - radius, hi = mean + radius;

    if (std::abs(b) == 0.0 || radius == 0.0) {
        const bool swap = radius > 0.0 && a > d;
        const int i_lo = swap ? 1 : 0;
        return RankTwoMixedState(swap ? d : a, swap ? a : d, PureState::basis_vector(i_lo, basis),
                                 PureState::basis_vector(1 - i_lo, basis));
    }

    // (b, λ − a) and (λ − d, b*) both solve (M − λ)v = 0; take the longer one.
    auto eigvec = [&](double lambda) {
        const cplx u0 = b, u1 = lambda - a;
        const cplx w0 = lambda - d, w1 = std::conj(b);
        if (std::norm(u0) + std::norm(u1) >= std::norm(w0) + std::norm(w1)) {
            return PureState::normalized(u0, u1, basis);
        }
        return PureState::normalized(w0, w1, basis);
    };
    PureState v_lo = eigvec(lo);
    // Second vector built as the exact orthogonal complement of the first.
    PureState v_hi(-std::conj(v_lo.amp1()), std::conj(v_lo.amp0()), basis);
    return RankTwoMixedState(lo, hi, v_lo, v_hi, tol::round_trip);
}

inline RankTwoMixedState eigendecompose(const DensityMatrix2& rho, Basis basis = Basis::eigen) {
    return eigendecompose(rho.entries(), basis);
}

/// Signal ⊗ idler polarization state, amplitudes over {hh, hv, vh, vv}
/// (signal first).
class TwoQubitPure {
public:
    explicit TwoQubitPure(const std::array<cplx, 4>& amps, double tolerance = tol::construction)
        : amps_(amps) {
        double n = 0.0;
        for (const auto& z : amps_) n += std::norm(z);
        if (std::abs(n - 1.0) > tolerance) throw DomainError("TwoQubitPure: state is not normalized");
    }

    const std::array<cplx, 4>& amps() const { return amps_; }
    cplx amp(int signal, int idler) const { return amps_[2 * signal + idler]; }

private:
    std::array<cplx, 4> amps_;
};

/// Reduced state of the signal photon: ρ_ij = Σ_k ψ_ik ψ*_jk.
inline DensityMatrix2 partial_trace_idler(const TwoQubitPure& psi) {
    Matrix2 m{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) m[i][j] += psi.amp(i, k) * std::conj(psi.amp(j, k));
    return DensityMatrix2(m);
}

/// √λ1|hh⟩ + √(1−λ1)|vv⟩, the down-converted pair.
inline TwoQubitPure prepare_spdc(double lambda1) {
    if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) {
        throw DomainError("prepare_spdc: lambda1 must lie in [0, 1]");
    }
    return TwoQubitPure({std::sqrt(lambda1), 0.0, 0.0, std::sqrt(1.0 - lambda1)});
}

}  // namespace lidqsd
