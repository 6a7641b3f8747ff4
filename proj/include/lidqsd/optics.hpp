// optics.hpp
// Single-photon state-vector model of the polarization/path discrimination
// setup, its analytic optimization, and a seeded detection experiment.
//
// Layout of the circuit (all elements ideal and lossless):
//
//   PBS1 (paths 1|2)   splits the input polarization state,
//   WP1 on path 1      rotation R(φ),
//   WP2 on path 2      R(φ′ + π) = −R(φ′), so |v⟩ → sin φ′|h⟩ − cos φ′|v⟩,
//   PBS2 (paths 1|2′)  sends WP1's |v⟩ component to path 2′,
//   PBS3 (paths 2|2′)  recombines onto path 2, leaving the η states there,
//   WP3 on path 2      quarter-wave retarder (|v⟩ → −i|v⟩) then R(ξ),
//   PBS4 (paths 2|2″)  |h⟩ stays on path 2 → PD(2); |v⟩ goes to 2″ → PD(1).
//
// Path 1 feeds the inconclusive detector PD(?); path 2′ is the leak port,
// empty at φ′ = ±π/2.
//
// R(θ) is the real rotation |h⟩ → cos θ|h⟩ + sin θ|v⟩, |v⟩ → −sin θ|h⟩ + cos θ|v⟩.
// A PBS leaves |h⟩ on its path and swaps |v⟩ between its two paths with a
// factor i.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "lidqsd/discrimination.hpp"
#include "lidqsd/errors.hpp"
#include "lidqsd/qcore.hpp"

namespace lidqsd::optics {

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_pi = std::numbers::pi / 2.0;
inline constexpr cplx I{0.0, 1.0};

enum class Path : int { P1 = 0, P2 = 1, P2prime = 2, P2doubleprime = 3 };
enum class Pol : int { h = 0, v = 1 };
enum class InputState { State1, State2 };

inline const char* to_string(Path p) {
    switch (p) {
        case Path::P1: return "1";
        case Path::P2: return "2";
        case Path::P2prime: return "2'";
        case Path::P2doubleprime: return "2''";
    }
    return "?";
}

/// Amplitudes over path ⊗ polarization, 4 paths × {h, v}.
class CircuitState {
public:
    CircuitState() = default;

    /// A polarization state entering on `path`.
    CircuitState(const PureState& pol, Path path) {
        if (pol.basis() != Basis::polarization) {
            throw DomainError("CircuitState: input must be a polarization state");
        }
        at(path, Pol::h) = pol.amp0();
        at(path, Pol::v) = pol.amp1();
    }

    cplx amp(Path p, Pol s) const { return amps_[index(p, s)]; }
    cplx& at(Path p, Pol s) { return amps_[index(p, s)]; }
    const std::array<cplx, 8>& amps() const { return amps_; }

    double norm_squared() const {
        double n = 0.0;
        for (const auto& z : amps_) n += std::norm(z);
        return n;
    }

    double path_probability(Path p) const {
        return std::norm(amp(p, Pol::h)) + std::norm(amp(p, Pol::v));
    }

    double max_abs_diff(const CircuitState& other) const {
        double d = 0.0;
        for (std::size_t k = 0; k < amps_.size(); ++k) d = std::max(d, std::abs(amps_[k] - other.amps_[k]));
        return d;
    }

private:
    static std::size_t index(Path p, Pol s) {
        return static_cast<std::size_t>(2 * static_cast<int>(p) + static_cast<int>(s));
    }
    std::array<cplx, 8> amps_{};
};

/// Polarizing beam splitter coupling two paths.
inline CircuitState apply_pbs(CircuitState state, Path transmit, Path reflect) {
    if (transmit == reflect) throw DomainError("apply_pbs: the two ports must be distinct paths");
    const cplx vt = state.amp(transmit, Pol::v);
    const cplx vr = state.amp(reflect, Pol::v);
    state.at(transmit, Pol::v) = I * vr;
    state.at(reflect, Pol::v) = I * vt;
    return state;
}

/// Real polarization rotation R(angle) on one path.
inline CircuitState apply_wp(CircuitState state, Path path, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    const cplx h = state.amp(path, Pol::h), v = state.amp(path, Pol::v);
    state.at(path, Pol::h) = c * h - s * v;
    state.at(path, Pol::v) = s * h + c * v;
    return state;
}

/// Phase retarder on one path: |v⟩ → e^{i·phase}|v⟩.
inline CircuitState apply_retarder(CircuitState state, Path path, double phase) {
    state.at(path, Pol::v) *= std::polar(1.0, phase);
    return state;
}

/// Angles of the setup. `xi` is the WP3 rotation angle of the detection stage.
struct SetupConfig {
    double alpha;   // angle between the two input polarization states
    double x;       // asymmetry of the inputs about |h⟩
    double phi;     // WP1
    double varphi;  // WP2
    double xi;      // WP3

    SetupConfig(double alpha_, double x_, double phi_, double varphi_, double xi_ = 0.0)
        : alpha(alpha_), x(x_), phi(phi_), varphi(varphi_), xi(xi_) {
        constexpr double eps = tol::construction;
        if (!(x >= -eps && x <= alpha + eps && alpha <= half_pi + eps)) {
            throw DomainError("SetupConfig: requires 0 <= x <= alpha <= pi/2");
        }
        x = std::clamp(x, 0.0, alpha);
    }
};

/// cos x|h⟩ + sin x|v⟩ (State1) or cos(α−x)|h⟩ − sin(α−x)|v⟩ (State2) on path 1.
inline PureState input_polarization(double alpha, double x, InputState which) {
    if (!(x >= -tol::construction && x <= alpha + tol::construction)) {
        throw DomainError("input_state: x must lie in [0, alpha]");
    }
    if (which == InputState::State1) return PureState(std::cos(x), std::sin(x), Basis::polarization);
    return PureState(std::cos(alpha - x), -std::sin(alpha - x), Basis::polarization);
}

inline CircuitState input_state(double alpha, double x, InputState which) {
    return CircuitState(input_polarization(alpha, x, which), Path::P1);
}

/// Intermediate states of the pre-detection chain.
struct EvolutionTrace {
    CircuitState input;
    CircuitState after_pbs1;
    CircuitState after_wps;
    CircuitState after_pbs2;
    CircuitState after_pbs3;
};

inline EvolutionTrace evolve_trace(const SetupConfig& cfg, InputState which) {
    EvolutionTrace t;
    t.input = input_state(cfg.alpha, cfg.x, which);
    t.after_pbs1 = apply_pbs(t.input, Path::P1, Path::P2);
    t.after_wps = apply_wp(apply_wp(t.after_pbs1, Path::P1, cfg.phi), Path::P2, cfg.varphi + pi);
    t.after_pbs2 = apply_pbs(t.after_wps, Path::P1, Path::P2prime);
    t.after_pbs3 = apply_pbs(t.after_pbs2, Path::P2, Path::P2prime);
    return t;
}

/// State just before the detection stage.
inline CircuitState evolve(const SetupConfig& cfg, InputState which) {
    return evolve_trace(cfg, which).after_pbs3;
}

/// WP3 followed by PBS4.
inline CircuitState apply_detection_stage(CircuitState state, double xi) {
    state = apply_retarder(state, Path::P2, -half_pi);
    state = apply_wp(state, Path::P2, xi);
    return apply_pbs(state, Path::P2, Path::P2doubleprime);
}

struct EtaPair {
    PureState eta1;
    PureState eta2;
    double q_s1;
    double q_s2;
};

inline double q_s1(double x, double phi, double varphi) {
    const double a = std::cos(x) * std::sin(phi), b = std::sin(x) * std::sin(varphi);
    return a * a + b * b;
}

inline double q_s2(double alpha, double x, double phi, double varphi) {
    const double y = alpha - x;
    const double a = std::cos(y) * std::sin(phi), b = std::sin(y) * std::sin(varphi);
    return a * a + b * b;
}

/// Normalized path-2 polarization states
///     η1 = (sin x sin φ′|h⟩ + i cos x sin φ|v⟩)/√q_s1,
///     η2 = (sin(α−x) sin φ′|h⟩ − i cos(α−x) sin φ|v⟩)/√q_s2.
inline EtaPair eta_pair(const SetupConfig& cfg) {
    const double q1 = q_s1(cfg.x, cfg.phi, cfg.varphi);
    const double q2 = q_s2(cfg.alpha, cfg.x, cfg.phi, cfg.varphi);
    if (q1 < 1e-30 || q2 < 1e-30) {
        throw DomainError("eta_pair: q_s1 or q_s2 vanishes, eta state undefined");
    }
    const double y = cfg.alpha - cfg.x;
    const double r1 = std::sqrt(q1), r2 = std::sqrt(q2);
    PureState eta1(std::sin(cfg.x) * std::sin(cfg.varphi) / r1,
                   I * std::cos(cfg.x) * std::sin(cfg.phi) / r1, Basis::polarization);
    PureState eta2(std::sin(y) * std::sin(cfg.varphi) / r2, -I * std::cos(y) * std::sin(cfg.phi) / r2,
                   Basis::polarization);
    return EtaPair{eta1, eta2, q1, q2};
}

/// φ solving sin²φ = tan x · tan(α−x) · sin²φ′, the condition ⟨η1|η2⟩ = 0.
inline double orthogonality_phi(double alpha, double x, double varphi) {
    if (!(x >= -tol::construction && x <= alpha + tol::construction)) {
        throw DomainError("orthogonality_phi: x must lie in [0, alpha]");
    }
    x = std::clamp(x, 0.0, alpha);
    const double s = std::sin(varphi);
    const double rhs = std::tan(x) * std::tan(alpha - x) * s * s;
    if (!(rhs >= -tol::construction && rhs <= 1.0 + tol::construction)) {
        throw InfeasibleGeometry("orthogonality_phi: tan x tan(alpha - x) sin^2(varphi) = " +
                                 std::to_string(rhs) + " is outside [0, 1]");
    }
    return std::asin(std::sqrt(std::clamp(rhs, 0.0, 1.0)));
}

/// p_s(x) = [p1 sin x / cos(α−x) + p2 sin(α−x) / cos x] · sin α · sin²φ′,
/// the success probability once φ satisfies the orthogonality condition.
inline double success_probability_x(double alpha, double x, double varphi, double p1, double p2) {
    lidqsd::detail::check_priors(p1, p2, "success_probability_x");
    orthogonality_phi(alpha, x, varphi);  // feasibility
    x = std::clamp(x, 0.0, alpha);
    const double s = std::sin(varphi);
    const double ps =
        (p1 * std::sin(x) / std::cos(alpha - x) + p2 * std::sin(alpha - x) / std::cos(x)) *
        std::sin(alpha) * s * s;
    return lidqsd::detail::clamp_probability(ps, "success_probability_x");
}

namespace detail {
inline void check_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0)) {
        throw DomainError(std::string(who) + ": alpha must be positive (alpha = 0 means identical states)");
    }
    if (!(alpha <= half_pi + tol::construction)) {
        throw DomainError(std::string(who) + ": alpha must not exceed pi/2");
    }
}

// cos α within the threshold min{√(p1/p2), √(p2/p1)}: optimum inside (0, α).
inline bool interior_optimum(double alpha, double p1, double p2) {
    return std::cos(alpha) <= conclusive_threshold(p1, p2);
}
}  // namespace detail

/// Maximizer of p_s(x) over [0, α]. Interior solution
///     cos x = √p2 sin α / √(1 − 2√(p1p2) cos α)
/// when cos α does not exceed the conclusive threshold, else x = 0 (p1 < p2)
/// or x = α (p1 > p2).
inline double optimal_x(double alpha, double p1, double p2) {
    lidqsd::detail::check_priors(p1, p2, "optimal_x");
    detail::check_alpha(alpha, "optimal_x");
    alpha = std::min(alpha, half_pi);
    if (detail::interior_optimum(alpha, p1, p2)) {
        const double c = std::sqrt(p2) * std::sin(alpha) /
                         std::sqrt(1.0 - 2.0 * std::sqrt(p1 * p2) * std::cos(alpha));
        return std::clamp(std::acos(std::clamp(c, -1.0, 1.0)), 0.0, alpha);
    }
    return p1 < p2 ? 0.0 : alpha;
}

/// Maximum of p_s(x):
///     (1 − 2√(p1p2) cos α) sin²φ′        interior optimum,
///     (1 − cos²α) max{p1, p2} sin²φ′      boundary optimum.
inline double ps_max(double alpha, double p1, double p2, double varphi) {
    lidqsd::detail::check_priors(p1, p2, "ps_max");
    detail::check_alpha(alpha, "ps_max");
    const double s = std::sin(varphi);
    const double c = std::cos(std::min(alpha, half_pi));
    const double ps = detail::interior_optimum(alpha, p1, p2)
                          ? (1.0 - 2.0 * std::sqrt(p1 * p2) * c) * s * s
                          : (1.0 - c * c) * std::max(p1, p2) * s * s;
    return lidqsd::detail::clamp_probability(ps, "ps_max");
}

/// η states at the optimum (φ′ = π/2), in the real-rotation form
///     η1 = cos ξ|h⟩ + sin ξ|v⟩,  η2 = −sin ξ|h⟩ + cos ξ|v⟩,
///     cos ξ = √(p1 − √(p1p2) cos α) / √(1 − 2√(p1p2) cos α);
/// for a boundary optimum (i|v⟩, |h⟩) when p1 < p2 and (|h⟩, −i|v⟩) when p1 > p2.
/// These equal eta_pair's states after WP3's retarder, up to phases.
inline EtaPair optimal_eta(double alpha, double p1, double p2) {
    lidqsd::detail::check_priors(p1, p2, "optimal_eta");
    detail::check_alpha(alpha, "optimal_eta");
    const double x = optimal_x(alpha, p1, p2);
    const double phi = orthogonality_phi(alpha, x, half_pi);
    const double q1 = q_s1(x, phi, half_pi), q2 = q_s2(alpha, x, phi, half_pi);
    if (detail::interior_optimum(alpha, p1, p2)) {
        const double sc = std::sqrt(p1 * p2) * std::cos(alpha);
        const double cos_xi = std::sqrt(std::max(0.0, p1 - sc)) / std::sqrt(1.0 - 2.0 * sc);
        const double sin_xi = std::sqrt(std::max(0.0, 1.0 - cos_xi * cos_xi));
        return EtaPair{PureState(cos_xi, sin_xi, Basis::polarization, tol::round_trip),
                       PureState(-sin_xi, cos_xi, Basis::polarization, tol::round_trip), q1, q2};
    }
    if (p1 < p2) {
        return EtaPair{PureState(0.0, I, Basis::polarization), PureState(1.0, 0.0, Basis::polarization),
                       q1, q2};
    }
    return EtaPair{PureState(1.0, 0.0, Basis::polarization), PureState(0.0, -I, Basis::polarization), q1,
                   q2};
}

/// WP3 rotation sending η1 to |v⟩ (and so η2 to |h⟩) after the retarder.
/// Falls back to η2 when η1 is undefined, and to 0 when both are.
inline double wp3_angle(double alpha, double x, double phi, double varphi) {
    const double y = alpha - x;
    if (q_s1(x, phi, varphi) > 1e-24) {
        // Retarded η1 ∝ (sin x sin φ′, cos x sin φ).
        const double angle = std::atan2(std::cos(x) * std::sin(phi), std::sin(x) * std::sin(varphi));
        return half_pi - angle;
    }
    if (q_s2(alpha, x, phi, varphi) > 1e-24) {
        // Retarded η2 ∝ (sin y sin φ′, −cos y sin φ).
        const double angle = std::atan2(-std::cos(y) * std::sin(phi), std::sin(y) * std::sin(varphi));
        return -angle;
    }
    return 0.0;
}

/// Optimal x, the φ making η1 ⟂ η2, and the matching WP3 angle.
inline SetupConfig optimal_config(double alpha, double p1, double p2, double varphi = half_pi) {
    const double x = optimal_x(alpha, p1, p2);
    const double phi = orthogonality_phi(alpha, x, varphi);
    return SetupConfig(alpha, x, phi, varphi, wp3_angle(alpha, x, phi, varphi));
}

struct DetectorDistribution {
    double p_pd1;           // path 2″
    double p_pd2;           // path 2
    double p_inconclusive;  // path 1, PD(?)
    double p_leak;          // path 2′

    double total() const { return p_pd1 + p_pd2 + p_inconclusive + p_leak; }
};

/// Outcome probabilities after the full circuit, including the detection stage.
inline DetectorDistribution detection_distribution(const SetupConfig& cfg, InputState which) {
    const CircuitState out = apply_detection_stage(evolve(cfg, which), cfg.xi);
    return DetectorDistribution{out.path_probability(Path::P2doubleprime), out.path_probability(Path::P2),
                                out.path_probability(Path::P1), out.path_probability(Path::P2prime)};
}

struct MonteCarloReport {
    std::uint64_t n_trials = 0;
    std::uint64_t n_pd1 = 0;
    std::uint64_t n_pd2 = 0;
    std::uint64_t n_inconclusive = 0;
    std::uint64_t n_leak = 0;
    std::uint64_t n_errors = 0;  // PD(1) on State2 plus PD(2) on State1
    std::uint64_t seed = 0;

    bool operator==(const MonteCarloReport&) const = default;
};

/// Stateless stream: the k-th uniform of trial t depends only on (seed, t, k),
/// so results do not depend on how trials are scheduled.
class CounterStream {
public:
    explicit CounterStream(std::uint64_t seed) : seed_(seed) {}

    double uniform(std::uint64_t trial, std::uint64_t lane) const {
        std::uint64_t z = mix(seed_ ^ mix(trial * 0x9E3779B97F4A7C15ULL + lane + 1));
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

private:
    // SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::uint64_t seed_;
};

namespace detail {

enum class Outcome { PD1, PD2, Inconclusive, Leak };

// Probabilities below the sampler's 2^-53 resolution are round-off of exact
// zeros and are never sampled.
inline Outcome sample_outcome(const DetectorDistribution& d, double u) {
    constexpr double floor = 0x1.0p-53;
    const std::array<double, 4> p{d.p_pd1, d.p_pd2, d.p_inconclusive, d.p_leak};
    const std::array<Outcome, 4> label{Outcome::PD1, Outcome::PD2, Outcome::Inconclusive, Outcome::Leak};
    double total = 0.0;
    for (double q : p) total += q > floor ? q : 0.0;
    double acc = 0.0;
    int last = -1;
    for (int k = 0; k < 4; ++k) {
        if (p[k] <= floor) continue;
        last = k;
        acc += p[k] / total;
        if (u < acc) return label[k];
    }
    return label[last < 0 ? 2 : last];
}

inline void run_trials(const DetectorDistribution& d1, const DetectorDistribution& d2, double p1,
                       const CounterStream& rng, std::uint64_t begin, std::uint64_t end,
                       MonteCarloReport& r) {
    for (std::uint64_t t = begin; t < end; ++t) {
        const bool first = rng.uniform(t, 0) < p1;
        switch (sample_outcome(first ? d1 : d2, rng.uniform(t, 1))) {
            case Outcome::PD1:
                ++r.n_pd1;
                if (!first) ++r.n_errors;
                break;
            case Outcome::PD2:
                ++r.n_pd2;
                if (first) ++r.n_errors;
                break;
            case Outcome::Inconclusive: ++r.n_inconclusive; break;
            case Outcome::Leak: ++r.n_leak; break;
        }
    }
}

}  // namespace detail

/// Prepares State1 with probability p1 (else State2) and samples one detector
/// click per trial. Trials may be split over `threads` workers; the report is
/// identical for any thread count.
inline MonteCarloReport monte_carlo(const SetupConfig& cfg, double p1, std::uint64_t n_trials,
                                    std::uint64_t seed, unsigned threads = 1) {
    if (n_trials < 1) throw DomainError("monte_carlo: n_trials must be at least 1");
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw DomainError("monte_carlo: p1 must lie in [0, 1]");
    const DetectorDistribution d1 = detection_distribution(cfg, InputState::State1);
    const DetectorDistribution d2 = detection_distribution(cfg, InputState::State2);
    const CounterStream rng(seed);

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(n_trials, 64))));
    std::vector<MonteCarloReport> parts(threads);
    const std::uint64_t chunk = (n_trials + threads - 1) / threads;
    auto work = [&](unsigned w) {
        const std::uint64_t b = std::min(n_trials, w * chunk), e = std::min(n_trials, b + chunk);
        detail::run_trials(d1, d2, p1, rng, b, e, parts[w]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    MonteCarloReport r;
    r.n_trials = n_trials;
    r.seed = seed;
    for (const auto& p : parts) {
        r.n_pd1 += p.n_pd1;
        r.n_pd2 += p.n_pd2;
        r.n_inconclusive += p.n_inconclusive;
        r.n_leak += p.n_leak;
        r.n_errors += p.n_errors;
    }
    return r;
}

}  // namespace lidqsd::optics
