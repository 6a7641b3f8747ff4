// lidqsd: command-line driver for decompositions, discrimination figures of
// merit, and the optical discrimination setup.
//
// Exit codes: 0 success, 2 validation error, 3 infeasible geometry, 4 I/O error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lidqsd/lidqsd.hpp"

namespace {

using namespace lidqsd;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kInfeasible = 3;
constexpr int kIo = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    double lambda1 = 0.3;
    double gamma_sq = 0.5;
    double theta = 0.0;
    double alpha = std::numbers::pi / 4;
    std::optional<double> x;
    double p1 = 0.5;
    double varphi = std::numbers::pi / 2;
    int steps = 1001;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string svg;
    bool degrees = false;
};

// Writes `body` to `path`, or to stdout when `path` is empty.
void emit(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << body;
    if (!os) throw IoError("write to '" + path + "' failed");
}

std::string record_path(const Options& o) {
    const fs::path dir = o.out.empty() ? fs::current_path() : fs::absolute(o.out).parent_path();
    return (dir / "runs.jsonl").string();
}

void write_record(const Options& o, const RunRecord& rec, bool always) {
    if (o.out.empty() && !always) return;
    if (!append_run_record(record_path(o), rec)) throw IoError("cannot append run record to " + record_path(o));
}

std::string state_str(const PureState& s) {
    std::ostringstream os;
    auto c = [](cplx z) { return "(" + format_number(z.real()) + (z.imag() < 0 ? "" : "+") + format_number(z.imag()) + "i)"; };
    os << c(s.amp0()) << "|0> + " << c(s.amp1()) << "|1>";
    return os.str();
}

int cmd_decompose(const Options& o) {
    const double theta = o.theta;
    if (!(o.lambda1 >= 0.0 && o.lambda1 <= 1.0)) throw DomainError("--lambda1 must lie in [0, 1]");
    if (!(o.gamma_sq >= 0.0 && o.gamma_sq <= 1.0)) throw DomainError("--gamma-sq must lie in [0, 1]");
    const auto state = RankTwoMixedState::canonical(o.lambda1);
    const auto gamma = DecompositionParameter::from_modulus_squared(o.gamma_sq, theta);

    const bool degenerate = std::abs(2.0 * o.lambda1 - 1.0) <= tol::construction;
    const Decomposition d = degenerate ? degenerate_decomposition(gamma) : decomposition_states(state, gamma);

    std::ostringstream os;
    if (degenerate) os << "note = lambda1 == lambda2: rho = I/2, every decomposition is an orthogonal pair\n";
    os << "lambda1 = " << format_number(o.lambda1) << "\n"
       << "gamma_sq = " << format_number(o.gamma_sq) << "\n"
       << "theta = " << format_number(gamma.phase()) << "\n"
       << "p1 = " << format_number(d.p1) << "\n"
       << "p2 = " << format_number(d.p2) << "\n"
       << "beta1 = " << state_str(d.beta1) << "\n"
       << "beta2 = " << state_str(d.beta2) << "\n"
       << "overlap = " << format_number(d.overlap.real()) << (d.overlap.imag() < 0 ? "" : "+")
       << format_number(d.overlap.imag()) << "i\n"
       << "overlap_mod = " << format_number(std::abs(d.overlap)) << "\n";
    const auto m = discrimination_metrics(d.p1, d.p2, std::min(1.0, std::abs(d.overlap)));
    os << "p_s = " << format_number(m.p_success) << "\n"
       << "p_e = " << format_number(m.p_error_min) << "\n"
       << "regime = " << to_string(m.regime) << "\n";
    emit(o.out, os.str());

    RunRecord rec{"decompose", {{"lambda1", o.lambda1}, {"gamma_sq", o.gamma_sq}, {"theta", theta}}};
    rec.outputs["p1"] = d.p1;
    rec.outputs["overlap_mod"] = std::abs(d.overlap);
    rec.timestamp = iso8601_now();
    write_record(o, rec, false);
    return kOk;
}

int cmd_sweep_gamma(const Options& o) {
    const auto rows = sweep_gamma(o.lambda1, o.steps);
    std::ostringstream os;
    write_csv(os, rows);
    emit(o.out, os.str());
    if (!o.svg.empty()) {
        std::vector<double> x;
        PlotSeries p1{"p1", {}}, b{"|beta|", {}}, ps{"p_s", {}}, pe{"p_e", {}};
        for (const auto& r : rows) {
            x.push_back(r.gamma_sq);
            p1.y.push_back(r.p1);
            b.y.push_back(r.beta_mod);
            ps.y.push_back(r.p_s);
            pe.y.push_back(r.p_e);
        }
        std::ostringstream svg;
        write_svg_plot(svg, "lambda1 = " + format_number(o.lambda1), "|gamma|^2", x, {p1, b, ps, pe});
        emit(o.svg, svg.str());
    }
    RunRecord rec{"sweep-gamma", {{"lambda1", o.lambda1}, {"steps", static_cast<double>(o.steps)}}};
    rec.outputs["rows"] = rows.size();
    rec.timestamp = iso8601_now();
    write_record(o, rec, false);
    return kOk;
}

int cmd_region_map(const Options& o) {
    const auto cells = region_map(o.steps);
    std::ostringstream os;
    write_csv(os, cells);
    emit(o.out, os.str());
    RunRecord rec{"region-map", {{"resolution", static_cast<double>(o.steps)}}};
    rec.outputs["cells"] = cells.size();
    rec.timestamp = iso8601_now();
    write_record(o, rec, false);
    return kOk;
}

int cmd_sweep_x(const Options& o) {
    const double alpha = o.alpha, varphi = o.varphi;
    const auto rows = sweep_x(alpha, o.p1, varphi, o.steps);
    std::ostringstream os;
    write_csv(os, rows);
    emit(o.out, os.str());
    if (!o.svg.empty()) {
        std::vector<double> x;
        PlotSeries ps{"p_s(x)", {}}, q1{"q_s1", {}}, q2{"q_s2", {}};
        for (const auto& r : rows) {
            x.push_back(r.x);
            const double nan = std::nan("");
            ps.y.push_back(r.feasible ? r.p_s : nan);
            q1.y.push_back(r.feasible ? r.q_s1 : nan);
            q2.y.push_back(r.feasible ? r.q_s2 : nan);
        }
        std::ostringstream svg;
        write_svg_plot(svg, "alpha = " + format_number(alpha) + ", p1 = " + format_number(o.p1), "x", x, {ps, q1, q2});
        emit(o.svg, svg.str());
    }
    RunRecord rec{"sweep-x", {{"alpha", alpha}, {"p1", o.p1}, {"varphi", varphi}, {"steps", static_cast<double>(o.steps)}}};
    rec.outputs["rows"] = rows.size();
    rec.timestamp = iso8601_now();
    write_record(o, rec, false);
    return kOk;
}

int cmd_optics(const Options& o) {
    using namespace lidqsd::optics;
    const double alpha = o.alpha, varphi = o.varphi;
    if (!(o.p1 >= 0.0 && o.p1 <= 1.0)) throw DomainError("--p1 must lie in [0, 1]");
    if (!(alpha > 0.0 && alpha < pi)) throw DomainError("--alpha must lie in (0, pi)");
    const double p1 = o.p1, p2 = 1.0 - o.p1;

    double x;
    if (o.x) {
        x = *o.x;
        if (!(x >= 0.0 && x <= alpha)) throw DomainError("--x must lie in [0, alpha]");
    } else {
        x = optimal_x(alpha, p1, p2);
    }
    const double phi = orthogonality_phi(alpha, x, varphi);
    const SetupConfig cfg(alpha, x, phi, varphi, wp3_angle(alpha, x, phi, varphi));
    const double ps_x = success_probability_x(alpha, x, varphi, p1, p2);
    const double ps_opt = ps_max(alpha, p1, p2, varphi);
    const auto d1 = detection_distribution(cfg, InputState::State1);
    const auto d2 = detection_distribution(cfg, InputState::State2);

    std::ostringstream rep;
    rep << "alpha = " << format_number(alpha) << "\n"
        << "p1 = " << format_number(p1) << "\n"
        << "varphi = " << format_number(varphi) << "\n"
        << "x = " << format_number(x) << (o.x ? " (given)" : " (optimal)") << "\n"
        << "phi = " << format_number(phi) << "\n"
        << "xi = " << format_number(cfg.xi) << "\n"
        << "p_s(x) = " << format_number(ps_x) << "\n"
        << "ps_max = " << format_number(ps_opt) << "\n";
    auto dist = [&](const char* name, const DetectorDistribution& d) {
        rep << name << ": PD(1) = " << format_number(d.p_pd1) << ", PD(2) = " << format_number(d.p_pd2)
            << ", PD(?) = " << format_number(d.p_inconclusive) << ", path 2' = " << format_number(d.p_leak) << "\n";
    };
    dist("State1", d1);
    dist("State2", d2);

    RunRecord rec{"optics", {{"alpha", alpha}, {"p1", p1}, {"varphi", varphi}, {"x", x},
                             {"trials", static_cast<double>(o.trials)}}};
    rec.outputs["phi"] = phi;
    rec.outputs["xi"] = cfg.xi;
    rec.outputs["p_s_x"] = ps_x;
    rec.outputs["ps_max"] = ps_opt;

    std::ostringstream csv;
    csv << "state,prior,p_pd1,p_pd2,p_inconclusive,p_leak\n";
    csv << "State1," << format_number(p1) << ',' << format_number(d1.p_pd1) << ',' << format_number(d1.p_pd2) << ','
        << format_number(d1.p_inconclusive) << ',' << format_number(d1.p_leak) << '\n';
    csv << "State2," << format_number(p2) << ',' << format_number(d2.p_pd1) << ',' << format_number(d2.p_pd2) << ','
        << format_number(d2.p_inconclusive) << ',' << format_number(d2.p_leak) << '\n';

    if (o.trials > 0) {
        const auto mc = monte_carlo(cfg, p1, o.trials, o.seed);
        const double n = static_cast<double>(mc.n_trials);
        const double freq = static_cast<double>(mc.n_pd1 + mc.n_pd2) / n;
        const double expected = p1 * d1.p_pd1 + p2 * d2.p_pd2;
        const double sigma = std::sqrt(expected * (1.0 - expected) / n);
        rep << "monte_carlo: trials = " << mc.n_trials << ", seed = " << mc.seed << "\n"
            << "  PD(1) = " << mc.n_pd1 << ", PD(2) = " << mc.n_pd2 << ", PD(?) = " << mc.n_inconclusive
            << ", path 2' = " << mc.n_leak << "\n"
            << "  errors = " << mc.n_errors << "\n"
            << "  conclusive frequency = " << format_number(freq) << " (expected " << format_number(expected)
            << ", sigma " << format_number(sigma) << ", z = "
            << format_number(sigma > 0 ? (freq - expected) / sigma : 0.0) << ")\n";
        rec.seed = mc.seed;
        rec.outputs["n_pd1"] = mc.n_pd1;
        rec.outputs["n_pd2"] = mc.n_pd2;
        rec.outputs["n_inconclusive"] = mc.n_inconclusive;
        rec.outputs["n_leak"] = mc.n_leak;
        rec.outputs["n_errors"] = mc.n_errors;
    }
    std::cout << rep.str();
    if (!o.out.empty()) emit(o.out, csv.str());
    rec.timestamp = iso8601_now();
    write_record(o, rec, true);
    return kOk;
}

int cmd_spdc(const Options& o) {
    const auto psi = prepare_spdc(o.lambda1);
    const auto rho = partial_trace_idler(psi);
    std::ostringstream os;
    os << "component,re,im\n";
    static const char* labels[] = {"hh", "hv", "vh", "vv"};
    for (int k = 0; k < 4; ++k) {
        os << labels[k] << ',' << format_number(psi.amps()[k].real()) << ',' << format_number(psi.amps()[k].imag())
           << '\n';
    }
    static const char* rho_labels[2][2] = {{"rho_hh", "rho_hv"}, {"rho_vh", "rho_vv"}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            os << rho_labels[i][j] << ',' << format_number(rho(i, j).real()) << ','
               << format_number(rho(i, j).imag()) << '\n';
    emit(o.out, os.str());
    RunRecord rec{"spdc-prepare", {{"lambda1", o.lambda1}}};
    rec.outputs["rho_hh"] = rho(0, 0).real();
    rec.outputs["rho_vv"] = rho(1, 1).real();
    rec.timestamp = iso8601_now();
    write_record(o, rec, false);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pure-state decompositions of rank-two mixed states and their discrimination"};
    app.require_subcommand(1);
    Options o;
    std::vector<std::pair<CLI::Option*, double*>> angles;  // converted by --degrees when given
    auto angle_option = [&](CLI::App* sub, const char* name, double& target, const char* help) {
        angles.emplace_back(sub->add_option(name, target, help), &target);
    };

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "Output file (stdout when omitted)");
        sub->add_flag("--degrees", o.degrees, "Read angles in degrees");
    };

    auto* dec = app.add_subcommand("decompose", "Print one |gamma|-decomposition and its figures of merit");
    dec->add_option("--lambda1", o.lambda1, "Eigenvalue lambda1");
    dec->add_option("--gamma-sq", o.gamma_sq, "|gamma|^2");
    angle_option(dec, "--theta", o.theta, "Phase of gamma");
    add_common(dec);

    auto* sg = app.add_subcommand("sweep-gamma", "CSV of p1, |beta|, p_s, p_e over |gamma|^2");
    sg->add_option("--lambda1", o.lambda1, "Eigenvalue lambda1");
    sg->add_option("--steps", o.steps, "Grid points");
    sg->add_option("--svg", o.svg, "Also write an SVG plot");
    add_common(sg);

    auto* rm = app.add_subcommand("region-map", "CSV of discrimination regimes over (|gamma|^2, lambda1)");
    rm->add_option("--steps", o.steps, "Grid points per axis")->default_val(101);
    add_common(rm);

    auto* op = app.add_subcommand("optics", "Optimize the optical setup and simulate detection");
    angle_option(op, "--alpha", o.alpha, "Angle between the input states");
    op->add_option("--p1", o.p1, "Prior of state 1");
    angle_option(op, "--varphi", o.varphi, "WP2 angle");
    auto* x_opt = op->add_option("--x", o.x, "Input asymmetry (optimal when omitted)");
    op->add_option("--trials", o.trials, "Monte Carlo trials (0 skips)");
    op->add_option("--seed", o.seed, "Monte Carlo seed");
    add_common(op);

    auto* sx = app.add_subcommand("sweep-x", "CSV of p_s(x), q_s1, q_s2 over x in [0, alpha]");
    angle_option(sx, "--alpha", o.alpha, "Angle between the input states");
    sx->add_option("--p1", o.p1, "Prior of state 1");
    angle_option(sx, "--varphi", o.varphi, "WP2 angle");
    sx->add_option("--steps", o.steps, "Grid points");
    sx->add_option("--svg", o.svg, "Also write an SVG plot");
    add_common(sx);

    auto* sp = app.add_subcommand("spdc-prepare", "Two-photon state and the heralded signal state");
    sp->add_option("--lambda1", o.lambda1, "Eigenvalue lambda1");
    add_common(sp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }
    if (o.degrees) {
        constexpr double rad = std::numbers::pi / 180.0;
        for (auto& [opt, target] : angles)
            if (opt->count() > 0) *target *= rad;
        if (x_opt->count() > 0) *o.x *= rad;
    }

    try {
        if (*dec) return cmd_decompose(o);
        if (*sg) return cmd_sweep_gamma(o);
        if (*rm) return cmd_region_map(o);
        if (*op) return cmd_optics(o);
        if (*sx) return cmd_sweep_x(o);
        if (*sp) return cmd_spdc(o);
    } catch (const InfeasibleGeometry& e) {
        std::cerr << "error: infeasible geometry: " << e.what() << "\n";
        return kInfeasible;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kValidation;
}
