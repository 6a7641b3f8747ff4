#include "lidqsd/optics.hpp"

#include <random>

#include "gtest/gtest.h"
#include "oracle.hpp"

using namespace lidqsd;
using namespace lidqsd::optics;

namespace {

// Frozen from a 40-digit evaluation at α = π/4, p1 = 0.6.
constexpr double kPsMax = 0.3071796769724491;
constexpr double kXOpt = 0.6319143123750713;
constexpr double kCosXi = 0.9085936219306135;

const PureState kH = PureState::basis_vector(0, Basis::polarization);
const PureState kV = PureState::basis_vector(1, Basis::polarization);

// Hand-built circuit state from (path, pol, amplitude) triples.
CircuitState make(std::initializer_list<std::tuple<Path, Pol, cplx>> terms) {
    CircuitState s;
    for (const auto& [p, q, a] : terms) s.at(p, q) += a;
    return s;
}

double ket_overlap(const PureState& a, const PureState& b) { return std::abs(inner_product(a, b)); }

}  // namespace

TEST(optics, input_states) {
    const auto a = input_state(0.7, 0.0, InputState::State1);
    EXPECT_EQ(a.amp(Path::P1, Pol::h), cplx(1.0));
    EXPECT_NEAR(a.norm_squared(), 1.0, 1e-15);

    const auto s1 = input_polarization(pi / 3, pi / 6, InputState::State1);
    const auto s2 = input_polarization(pi / 3, pi / 6, InputState::State2);
    EXPECT_NEAR(inner_product(s1, s2).real(), 0.5, 1e-15);
    EXPECT_NEAR(inner_product(input_polarization(pi / 4, 0.1, InputState::State1),
                              input_polarization(pi / 4, 0.1, InputState::State2))
                    .real(),
                std::cos(pi / 4), 1e-15);
    EXPECT_THROW(input_state(0.5, 0.6, InputState::State1), DomainError);
    EXPECT_THROW(input_state(0.5, -0.1, InputState::State2), DomainError);
}

TEST(optics, pbs_examples) {
    const auto v = apply_pbs(CircuitState(kV, Path::P1), Path::P1, Path::P2);
    EXPECT_LT(v.max_abs_diff(make({{Path::P2, Pol::v, I}})), 1e-16);

    const auto h = apply_pbs(CircuitState(kH, Path::P1), Path::P1, Path::P2);
    EXPECT_LT(h.max_abs_diff(make({{Path::P1, Pol::h, 1.0}})), 1e-16);

    const double r = 1 / std::sqrt(2.0);
    const auto d = apply_pbs(CircuitState(PureState(r, r, Basis::polarization), Path::P1), Path::P1, Path::P2);
    EXPECT_LT(d.max_abs_diff(make({{Path::P1, Pol::h, r}, {Path::P2, Pol::v, I * r}})), 1e-16);

    EXPECT_THROW(apply_pbs(CircuitState(), Path::P1, Path::P1), DomainError);
}

TEST(optics, wave_plate_examples) {
    const auto s = CircuitState(PureState(0.6, cplx(0.0, 0.8), Basis::polarization), Path::P2);
    EXPECT_LT(apply_wp(s, Path::P2, 0.0).max_abs_diff(s), 1e-16);
    EXPECT_LT(apply_wp(s, Path::P1, 0.9).max_abs_diff(s), 1e-16);  // other paths untouched

    const double phi = 0.4;
    const auto h = apply_wp(CircuitState(kH, Path::P1), Path::P1, phi);
    EXPECT_LT(h.max_abs_diff(make({{Path::P1, Pol::h, std::cos(phi)}, {Path::P1, Pol::v, std::sin(phi)}})), 1e-16);

    // WP2 as used in the chain: |v⟩ → sin φ′|h⟩ − cos φ′|v⟩.
    const double vp = 1.1;
    const auto v = apply_wp(CircuitState(kV, Path::P2), Path::P2, vp + pi);
    EXPECT_LT(v.max_abs_diff(make({{Path::P2, Pol::h, std::sin(vp)}, {Path::P2, Pol::v, -std::cos(vp)}})), 1e-15);
}

TEST(optics_property, unitarity) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ang(-pi, pi);
    std::uniform_int_distribution<int> path(0, 3);
    for (int k = 0; k < 10000; ++k) {
        CircuitState s;
        std::normal_distribution<double> n(0.0, 1.0);
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 2; ++q) s.at(Path(p), Pol(q)) = cplx(n(rng), n(rng));
        const double norm = std::sqrt(s.norm_squared());
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 2; ++q) s.at(Path(p), Pol(q)) /= norm;

        const Path a = Path(path(rng));
        Path b = Path(path(rng));
        if (a == b) b = Path((int(a) + 1) % 4);
        ASSERT_NEAR(apply_pbs(s, a, b).norm_squared(), 1.0, 1e-12);
        ASSERT_NEAR(apply_wp(s, a, ang(rng)).norm_squared(), 1.0, 1e-12);
        ASSERT_NEAR(apply_retarder(s, b, ang(rng)).norm_squared(), 1.0, 1e-12);
    }
}

TEST(optics_property, chain_fidelity) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double alpha = half_pi * u(rng), x = alpha * u(rng);
        const double phi = 2 * pi * u(rng), vp = 2 * pi * u(rng);
        const SetupConfig cfg(alpha, x, phi, vp);
        for (auto which : {InputState::State1, InputState::State2}) {
            // Input a|h⟩ + b|v⟩ on path 1.
            const double a = which == InputState::State1 ? std::cos(x) : std::cos(alpha - x);
            const double b = which == InputState::State1 ? std::sin(x) : -std::sin(alpha - x);
            const auto t = evolve_trace(cfg, which);
            ASSERT_LT(t.after_pbs1.max_abs_diff(make({{Path::P1, Pol::h, a}, {Path::P2, Pol::v, I * b}})), 1e-12);
            ASSERT_LT(t.after_wps.max_abs_diff(make({{Path::P1, Pol::h, a * std::cos(phi)},
                                                     {Path::P1, Pol::v, a * std::sin(phi)},
                                                     {Path::P2, Pol::h, I * b * std::sin(vp)},
                                                     {Path::P2, Pol::v, -I * b * std::cos(vp)}})),
                      1e-12);
            ASSERT_LT(t.after_pbs2.max_abs_diff(make({{Path::P1, Pol::h, a * std::cos(phi)},
                                                      {Path::P2prime, Pol::v, I * a * std::sin(phi)},
                                                      {Path::P2, Pol::h, I * b * std::sin(vp)},
                                                      {Path::P2, Pol::v, -I * b * std::cos(vp)}})),
                      1e-12);
            ASSERT_LT(t.after_pbs3.max_abs_diff(make({{Path::P1, Pol::h, a * std::cos(phi)},
                                                      {Path::P2, Pol::v, -a * std::sin(phi)},
                                                      {Path::P2, Pol::h, I * b * std::sin(vp)},
                                                      {Path::P2prime, Pol::v, b * std::cos(vp)}})),
                      1e-12);
            ASSERT_EQ(t.after_pbs3.path_probability(Path::P2doubleprime), 0.0);
            for (const auto* s : {&t.input, &t.after_pbs1, &t.after_wps, &t.after_pbs2, &t.after_pbs3})
                ASSERT_NEAR(s->norm_squared(), 1.0, 1e-12);
        }
    }
}

TEST(optics, evolve_path_two_matches_eta) {
    // Path-2 amplitude is i√q_s1 η1 for State1 and −i√q_s2 η2 for State2.
    const double alpha = pi / 3, x = pi / 4, vp = half_pi;
    const double phi = orthogonality_phi(alpha, x, vp);
    const SetupConfig cfg(alpha, x, phi, vp);
    const auto eta = eta_pair(cfg);
    const auto o1 = evolve(cfg, InputState::State1), o2 = evolve(cfg, InputState::State2);
    const double r1 = std::sqrt(eta.q_s1), r2 = std::sqrt(eta.q_s2);
    EXPECT_NEAR(std::abs(o1.amp(Path::P2, Pol::h) - I * r1 * eta.eta1.amp0()), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(o1.amp(Path::P2, Pol::v) - I * r1 * eta.eta1.amp1()), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(o2.amp(Path::P2, Pol::h) + I * r2 * eta.eta2.amp0()), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(o2.amp(Path::P2, Pol::v) + I * r2 * eta.eta2.amp1()), 0.0, 1e-12);
    EXPECT_NEAR(o1.path_probability(Path::P2), eta.q_s1, 1e-12);
    EXPECT_NEAR(o2.path_probability(Path::P2), eta.q_s2, 1e-12);
}

TEST(optics, evolve_degenerate_plates) {
    const SetupConfig cfg(pi / 3, 0.4, 0.0, 0.0);
    for (auto which : {InputState::State1, InputState::State2})
        EXPECT_NEAR(evolve(cfg, which).path_probability(Path::P2), 0.0, 1e-15);
    EXPECT_EQ(q_s1(0.4, 0.0, 0.0), 0.0);
    EXPECT_EQ(q_s2(pi / 3, 0.4, 0.0, 0.0), 0.0);

    // x = 0: State1 is |h⟩ and only the φ branches carry amplitude.
    const auto h = evolve(SetupConfig(pi / 3, 0.0, 0.5, 1.0), InputState::State1);
    EXPECT_NEAR(std::abs(h.amp(Path::P1, Pol::h)), std::cos(0.5), 1e-15);
    EXPECT_NEAR(std::abs(h.amp(Path::P2, Pol::v)), std::sin(0.5), 1e-15);
    EXPECT_NEAR(std::abs(h.amp(Path::P2, Pol::h)), 0.0, 1e-15);
    EXPECT_NEAR(h.path_probability(Path::P2prime), 0.0, 1e-15);
}

TEST(optics, setup_config_validation) {
    EXPECT_THROW(SetupConfig(0.5, 0.6, 0.0, 0.0), DomainError);
    EXPECT_THROW(SetupConfig(2.0, 0.5, 0.0, 0.0), DomainError);
    EXPECT_NO_THROW(SetupConfig(half_pi, half_pi, 0.0, 0.0));
}

TEST(optics, eta_pair_examples) {
    const double x = 0.3;
    const auto e = eta_pair(SetupConfig(pi / 3, x, half_pi, half_pi));
    EXPECT_NEAR(e.q_s1, 1.0, 1e-15);
    EXPECT_NEAR(std::abs(e.eta1.amp0() - std::sin(x)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e.eta1.amp1() - I * std::cos(x)), 0.0, 1e-15);
    EXPECT_THROW(eta_pair(SetupConfig(pi / 3, 0.4, 0.0, 0.0)), DomainError);
}

TEST(optics, orthogonality_phi_examples) {
    EXPECT_EQ(orthogonality_phi(pi / 3, 0.0, half_pi), 0.0);
    EXPECT_NEAR(orthogonality_phi(pi / 3, pi / 6, half_pi), 0.6154797086703873, 1e-15);
    EXPECT_NEAR(orthogonality_phi(1.0, 0.5, half_pi), std::asin(std::tan(0.5)), 1e-15);
    const double phi = orthogonality_phi(pi / 3, pi / 6, pi / 4);
    EXPECT_NEAR(phi, std::asin(std::tan(pi / 6) * std::sqrt(0.5)), 1e-15);
    const auto e = eta_pair(SetupConfig(pi / 3, pi / 6, phi, pi / 4));
    EXPECT_LT(std::abs(inner_product(e.eta1, e.eta2)), 1e-12);

    EXPECT_THROW(orthogonality_phi(2.0, 1.0, half_pi), InfeasibleGeometry);
    EXPECT_THROW(orthogonality_phi(1.0, 1.2, half_pi), DomainError);
}

TEST(optics_property, orthogonality_grid) {
    int checked = 0;
    for (double alpha = 0.01; alpha <= half_pi; alpha += 0.01) {
        for (double x = 0.0; x <= alpha; x += 0.01) {
            for (double vp = 0.0; vp <= pi; vp += 0.01) {
                double phi;
                try {
                    phi = orthogonality_phi(alpha, x, vp);
                } catch (const InfeasibleGeometry&) {
                    continue;
                }
                const SetupConfig cfg(alpha, x, phi, vp);
                if (q_s1(x, phi, vp) < 1e-30 || q_s2(alpha, x, phi, vp) < 1e-30) continue;
                const auto e = eta_pair(cfg);
                ASSERT_LT(std::abs(inner_product(e.eta1, e.eta2)), 1e-12) << alpha << " " << x << " " << vp;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 100000);
}

TEST(optics, success_probability_examples) {
    const double a = pi / 3;
    EXPECT_NEAR(success_probability_x(a, 0.0, half_pi, 0.3, 0.7), 0.7 * std::tan(a) * std::sin(a) * std::cos(a),
                1e-15);
    const double mid = success_probability_x(a, a / 2, half_pi, 0.1, 0.9);
    for (double p1 : {0.0, 0.3, 0.6, 1.0}) EXPECT_NEAR(success_probability_x(a, a / 2, half_pi, p1, 1 - p1), mid, 1e-15);
    EXPECT_NEAR(success_probability_x(pi / 4, 0.631, half_pi, 0.6, 0.4), 0.30717944938, 1e-10);
    EXPECT_THROW(success_probability_x(2.0, 1.0, half_pi, 0.5, 0.5), InfeasibleGeometry);
}

TEST(optics_property, formula_matches_circuit) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int n = 0;
    while (n < 2000) {
        const double alpha = half_pi * u(rng), x = alpha * u(rng), vp = pi * u(rng), p1 = u(rng);
        double phi;
        try {
            phi = orthogonality_phi(alpha, x, vp);
        } catch (const InfeasibleGeometry&) {
            continue;
        }
        const SetupConfig cfg(alpha, x, phi, vp);
        const double q1 = evolve(cfg, InputState::State1).path_probability(Path::P2);
        const double q2 = evolve(cfg, InputState::State2).path_probability(Path::P2);
        ASSERT_NEAR(success_probability_x(alpha, x, vp, p1, 1 - p1), p1 * q1 + (1 - p1) * q2, 1e-12);
        ++n;
    }
}

TEST(optics, optimal_x_examples) {
    for (double a : {0.3, pi / 4, 1.2}) EXPECT_NEAR(optimal_x(a, 0.5, 0.5), a / 2, 1e-12);
    EXPECT_EQ(optimal_x(pi / 3, 0.1, 0.9), 0.0);
    EXPECT_EQ(optimal_x(pi / 4, 0.8, 0.2), pi / 4);
    EXPECT_NEAR(optimal_x(pi / 4, 0.6, 0.4), kXOpt, 1e-12);
    EXPECT_NEAR(std::cos(optimal_x(pi / 4, 0.6, 0.4)),
                std::sqrt(0.4) * std::sin(pi / 4) / std::sqrt(1 - 2 * std::sqrt(0.24) * std::cos(pi / 4)), 1e-12);
    EXPECT_THROW(optimal_x(0.0, 0.5, 0.5), DomainError);
}

TEST(optics_property, optimal_x_against_grid) {
    const std::vector<std::pair<double, double>> cases{
        {pi / 4, 0.6}, {pi / 3, 0.1}, {pi / 3, 0.3}, {pi / 4, 0.8}, {1.0, 0.5}, {0.4, 0.45}, {1.4, 0.02}};
    for (const auto& [alpha, p1] : cases) {
        const auto [gx, gmax] = oracle::grid_max_px(alpha, p1, half_pi, 1000000);
        const double x = optimal_x(alpha, p1, 1 - p1);
        EXPECT_GE(success_probability_x(alpha, x, half_pi, p1, 1 - p1), gmax - 1e-9) << alpha << " " << p1;
        EXPECT_NEAR(ps_max(alpha, p1, 1 - p1, half_pi), gmax, 1e-6);
        EXPECT_LE(std::abs(x - gx), 2 * alpha / 999999 + 1e-6) << alpha << " " << p1;
    }
}

TEST(optics, ps_max_examples) {
    EXPECT_NEAR(ps_max(half_pi, 0.3, 0.7, half_pi), 1.0, 1e-15);
    EXPECT_NEAR(ps_max(pi / 3, 0.1, 0.9, half_pi), 0.675, 1e-12);
    EXPECT_NEAR(ps_max(pi / 4, 0.6, 0.4, half_pi), kPsMax, 1e-12);
    EXPECT_NEAR(ps_max(pi / 4, 0.6, 0.4, pi / 4), 0.5 * kPsMax, 1e-12);
}

TEST(optics_property, ps_max_is_jaeger_shimony) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double alpha = 1e-3 + (half_pi - 1e-3) * u(rng), p1 = u(rng);
        ASSERT_NEAR(ps_max(alpha, p1, 1 - p1, half_pi), jaeger_shimony_ps(p1, 1 - p1, std::cos(alpha)), 1e-12);
    }
}

TEST(optics, optimal_eta_examples) {
    for (double a : {0.5, 1.0}) {
        const auto e = optimal_eta(a, 0.5, 0.5);
        EXPECT_NEAR(e.eta1.amp0().real(), 1 / std::sqrt(2.0), 1e-12);
    }
    const auto b = optimal_eta(pi / 3, 0.1, 0.9);
    EXPECT_NEAR(std::abs(b.eta1.amp1() - I), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b.eta2.amp0() - 1.0), 0.0, 1e-15);

    const auto c = optimal_eta(pi / 4, 0.6, 0.4);
    EXPECT_NEAR(c.eta1.amp0().real(), kCosXi, 1e-12);
    EXPECT_LT(std::abs(inner_product(c.eta1, c.eta2)), 1e-12);
}

TEST(optics, optimal_eta_matches_circuit_eta) {
    // After the retarder, eta_pair's states at the optimum are optimal_eta's up to phase.
    for (const auto& [alpha, p1] : std::vector<std::pair<double, double>>{{pi / 4, 0.6}, {pi / 3, 0.3}, {1.0, 0.5}}) {
        const auto cfg = optimal_config(alpha, p1, 1 - p1);
        const auto circuit = eta_pair(cfg);
        const auto closed = optimal_eta(alpha, p1, 1 - p1);
        auto retard = [](const PureState& s) { return PureState(s.amp0(), -I * s.amp1(), Basis::polarization); };
        EXPECT_NEAR(ket_overlap(retard(circuit.eta1), closed.eta1), 1.0, 1e-12);
        EXPECT_NEAR(ket_overlap(retard(circuit.eta2), closed.eta2), 1.0, 1e-12);
    }
}

TEST(optics, wp3_angle_boundaries) {
    const auto lo = optimal_config(pi / 3, 0.1, 0.9);
    EXPECT_EQ(lo.x, 0.0);
    EXPECT_NEAR(lo.xi, 0.0, 1e-15);
    const auto hi = optimal_config(pi / 4, 0.8, 0.2);
    EXPECT_EQ(hi.x, pi / 4);
    EXPECT_NEAR(hi.xi, half_pi, 1e-15);
    EXPECT_EQ(wp3_angle(0.5, 0.2, 0.0, 0.0), 0.0);
}

TEST(optics, detection_distribution_at_optimum) {
    const std::vector<std::pair<double, double>> cases{
        {pi / 4, 0.6}, {pi / 3, 0.1}, {pi / 3, 0.3}, {pi / 4, 0.8}, {1.0, 0.5}, {half_pi, 0.3}};
    for (const auto& [alpha, p1] : cases) {
        const auto cfg = optimal_config(alpha, p1, 1 - p1);
        const auto d1 = detection_distribution(cfg, InputState::State1);
        const auto d2 = detection_distribution(cfg, InputState::State2);
        EXPECT_NEAR(d1.p_pd2, 0.0, 1e-12) << alpha << " " << p1;
        EXPECT_NEAR(d2.p_pd1, 0.0, 1e-12) << alpha << " " << p1;
        EXPECT_NEAR(d1.p_leak, 0.0, 1e-12);
        EXPECT_NEAR(d2.p_leak, 0.0, 1e-12);
        EXPECT_NEAR(d1.total(), 1.0, 1e-12);
        EXPECT_NEAR(d2.total(), 1.0, 1e-12);
        EXPECT_NEAR(d1.p_inconclusive, std::pow(std::cos(cfg.x) * std::cos(cfg.phi), 2), 1e-12);
        EXPECT_NEAR(p1 * d1.p_pd1 + (1 - p1) * d2.p_pd2, ps_max(alpha, p1, 1 - p1, half_pi), 1e-12);
    }
}

TEST(optics, detection_distribution_generic) {
    // Non-optimal settings: leak and cross terms follow the closed forms.
    const SetupConfig cfg(1.0, 0.3, 0.7, 1.1, 0.4);
    const auto d = detection_distribution(cfg, InputState::State1);
    EXPECT_NEAR(d.total(), 1.0, 1e-12);
    EXPECT_NEAR(d.p_inconclusive, std::pow(std::cos(0.3) * std::cos(0.7), 2), 1e-12);
    EXPECT_NEAR(d.p_leak, std::pow(std::sin(0.3) * std::cos(1.1), 2), 1e-12);
    EXPECT_NEAR(d.p_pd1 + d.p_pd2, q_s1(0.3, 0.7, 1.1), 1e-12);
}

TEST(optics_property, probability_closure) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 5000; ++k) {
        const double alpha = half_pi * u(rng);
        const SetupConfig cfg(alpha, alpha * u(rng), 2 * pi * u(rng), 2 * pi * u(rng), 2 * pi * u(rng));
        for (auto which : {InputState::State1, InputState::State2})
            ASSERT_NEAR(detection_distribution(cfg, which).total(), 1.0, 1e-12);
    }
}

TEST(optics, counter_stream_is_stateless) {
    const CounterStream a(5), b(5), c(6);
    EXPECT_EQ(a.uniform(10, 1), b.uniform(10, 1));
    EXPECT_NE(a.uniform(10, 1), c.uniform(10, 1));
    EXPECT_NE(a.uniform(10, 0), a.uniform(10, 1));
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const double v = a.uniform(t, 0);
        ASSERT_GE(v, 0.0);
        ASSERT_LT(v, 1.0);
    }
}

TEST(optics, monte_carlo_deterministic_and_thread_invariant) {
    const auto cfg = optimal_config(pi / 4, 0.6, 0.4);
    const auto r1 = monte_carlo(cfg, 0.6, 100000, 42);
    const auto r2 = monte_carlo(cfg, 0.6, 100000, 42);
    const auto r4 = monte_carlo(cfg, 0.6, 100000, 42, 4);
    const auto r7 = monte_carlo(cfg, 0.6, 100000, 42, 7);
    EXPECT_EQ(r1, r2);
    EXPECT_EQ(r1, r4);
    EXPECT_EQ(r1, r7);
    EXPECT_NE(r1, monte_carlo(cfg, 0.6, 100000, 43));
    EXPECT_EQ(r1.n_pd1 + r1.n_pd2 + r1.n_inconclusive + r1.n_leak, 100000u);
}

TEST(optics, monte_carlo_statistics) {
    for (const auto& [alpha, p1] : std::vector<std::pair<double, double>>{{pi / 4, 0.6}, {pi / 3, 0.1}, {pi / 4, 0.8}}) {
        const auto cfg = optimal_config(alpha, p1, 1 - p1);
        const std::uint64_t n = 200000;
        const auto r = monte_carlo(cfg, p1, n, 7, 2);
        EXPECT_EQ(r.n_errors, 0u);
        EXPECT_EQ(r.n_leak, 0u);
        const double ps = ps_max(alpha, p1, 1 - p1, half_pi);
        const double sigma = std::sqrt(n * ps * (1 - ps));
        EXPECT_LE(std::abs(double(r.n_pd1 + r.n_pd2) - n * ps), 4 * sigma);
    }
}

TEST(optics, monte_carlo_errors_counted_off_optimum) {
    const SetupConfig cfg(1.0, 0.5, 0.3, 1.2, 0.9);
    const auto r = monte_carlo(cfg, 0.5, 50000, 3);
    EXPECT_GT(r.n_errors, 0u);
    EXPECT_THROW(monte_carlo(cfg, 0.5, 0, 3), DomainError);
    EXPECT_THROW(monte_carlo(cfg, 1.5, 10, 3), DomainError);
}
