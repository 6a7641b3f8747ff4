// sweeps.hpp
// Parameter sweeps behind the figure-data commands, plus their CSV form.

#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lidqsd/decomposition.hpp"
#include "lidqsd/discrimination.hpp"
#include "lidqsd/errors.hpp"
#include "lidqsd/optics.hpp"

namespace lidqsd {

/// Fixed-width textual form used in every CSV: 12 significant digits.
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

struct SweepSpec {
    enum class Variable { gamma_sq, x };

    Variable variable;
    double start;
    double stop;
    int steps;
    std::map<std::string, double> fixed_params;

    void validate() const {
        if (steps < 2) throw DomainError("sweep: steps must be at least 2");
        if (!(start < stop)) throw DomainError("sweep: start must be below stop");
        if (variable == Variable::gamma_sq && (start < 0.0 || stop > 1.0)) {
            throw DomainError("sweep: |gamma|^2 range must lie in [0, 1]");
        }
        if (variable == Variable::x && start < 0.0) throw DomainError("sweep: x must be non-negative");
    }

    /// i-th grid point; the last one is exactly `stop`.
    double value(int i) const {
        if (i == steps - 1) return stop;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
};

struct GammaRow {
    double gamma_sq;
    double p1;
    double beta_mod;
    double p_s;
    double p_e;
};

/// p1, |β|, p_s and p_e across |γ|² ∈ [0, 1] for a fixed λ1 ∈ (0, 1).
inline std::vector<GammaRow> sweep_gamma(double lambda1, int steps) {
    if (!(lambda1 > 0.0 && lambda1 < 1.0)) {
        throw DomainError("sweep-gamma: lambda1 must lie in (0, 1)");
    }
    const SweepSpec spec{SweepSpec::Variable::gamma_sq, 0.0, 1.0, steps, {{"lambda1", lambda1}}};
    spec.validate();
    std::vector<GammaRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double g_sq = spec.value(i);
        const double g = std::sqrt(g_sq);
        const auto [p1, p2] = decomposition_probabilities(lambda1, g);
        const double b = std::abs(decomposition_overlap(lambda1, DecompositionParameter(g, 0.0)));
        (void)p2;
        rows.push_back({g_sq, p1, b, ps_of_gamma(lambda1, g), pe_of_gamma(lambda1, g)});
    }
    return rows;
}

struct RegionCell {
    double gamma_sq;
    double lambda1;
    std::optional<DiscriminationRegime> regime;  // empty on degenerate corners
    std::optional<double> p_s;
};

/// resolution × resolution grid over (|γ|², λ1) ∈ [0, 1]². The two corners
/// (0, 0) and (1, 1) have no decomposition and are left empty.
inline std::vector<RegionCell> region_map(int resolution) {
    if (resolution < 10) throw DomainError("region-map: resolution must be at least 10");
    const SweepSpec axis{SweepSpec::Variable::gamma_sq, 0.0, 1.0, resolution, {}};
    std::vector<RegionCell> cells;
    cells.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
    for (int j = 0; j < resolution; ++j) {
        const double l1 = axis.value(j);
        for (int i = 0; i < resolution; ++i) {
            const double g_sq = axis.value(i);
            RegionCell cell{g_sq, l1, std::nullopt, std::nullopt};
            try {
                const double g = std::sqrt(g_sq);
                const auto [p1, p2] = decomposition_probabilities(l1, g);
                const double b = std::abs(decomposition_overlap(l1, DecompositionParameter(g, 0.0)));
                cell.regime = classify_regime(p1, p2, b);
                cell.p_s = ps_of_gamma(l1, g);
            } catch (const DegenerateError&) {
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

struct XRow {
    double x;
    bool feasible;
    double p_s;
    double q_s1;
    double q_s2;
};

/// p_s(x), q_s1 and q_s2 across x ∈ [0, α] with φ from the orthogonality
/// condition at each x.
inline std::vector<XRow> sweep_x(double alpha, double p1, double varphi, int steps) {
    if (!(alpha > 0.0 && alpha < optics::pi)) throw DomainError("sweep-x: alpha must lie in (0, pi)");
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw DomainError("sweep-x: p1 must lie in [0, 1]");
    const SweepSpec spec{SweepSpec::Variable::x, 0.0, alpha, steps, {{"alpha", alpha}, {"p1", p1}, {"varphi", varphi}}};
    spec.validate();
    std::vector<XRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double x = spec.value(i);
        try {
            const double phi = optics::orthogonality_phi(alpha, x, varphi);
            rows.push_back({x, true, optics::success_probability_x(alpha, x, varphi, p1, 1.0 - p1),
                            optics::q_s1(x, phi, varphi), optics::q_s2(alpha, x, phi, varphi)});
        } catch (const InfeasibleGeometry&) {
            rows.push_back({x, false, 0.0, 0.0, 0.0});
        }
    }
    return rows;
}

inline void write_csv(std::ostream& os, const std::vector<GammaRow>& rows) {
    os << "gamma_sq,p1,beta_mod,p_s,p_e\n";
    for (const auto& r : rows) {
        os << format_number(r.gamma_sq) << ',' << format_number(r.p1) << ',' << format_number(r.beta_mod)
           << ',' << format_number(r.p_s) << ',' << format_number(r.p_e) << '\n';
    }
}

inline void write_csv(std::ostream& os, const std::vector<RegionCell>& cells) {
    os << "gamma_sq,lambda1,regime,p_s\n";
    for (const auto& c : cells) {
        os << format_number(c.gamma_sq) << ',' << format_number(c.lambda1) << ','
           << (c.regime ? to_string(*c.regime) : "Degenerate") << ','
           << (c.p_s ? format_number(*c.p_s) : std::string()) << '\n';
    }
}

inline void write_csv(std::ostream& os, const std::vector<XRow>& rows) {
    os << "x,p_s,q_s1,q_s2,feasible\n";
    for (const auto& r : rows) {
        os << format_number(r.x) << ',';
        if (r.feasible) {
            os << format_number(r.p_s) << ',' << format_number(r.q_s1) << ',' << format_number(r.q_s2);
        } else {
            os << ",,";
        }
        os << ',' << (r.feasible ? 1 : 0) << '\n';
    }
}

}  // namespace lidqsd
