// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: operator evaluation, the nonlinear solve, and the
// symmetry / maximum-principle / decay experiments, with CSV and SVG output.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logschrod/grid.hpp"
#include "logschrod/io.hpp"
#include "logschrod/moving_planes.hpp"
#include "logschrod/quadrature.hpp"
#include "logschrod/solver.hpp"
#include "logschrod/special.hpp"
#include "logschrod/spectral.hpp"

namespace ls = logschrod;

namespace {

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(std::stod(csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw ls::DomainError("empty list argument");
    return out;
}

std::string joined(const std::string& dir, const std::string& name) {
    if (name.empty()) return name;
    std::filesystem::path p(name);
    if (p.is_absolute() || dir.empty() || dir == ".") return name;
    return (std::filesystem::path(dir) / p).string();
}

std::vector<ls::Direction> fan_directions(int dim, int count) {
    std::vector<ls::Direction> dirs;
    if (dim == 1) {
        dirs.push_back({1.0, 0.0, 0.0});
        if (count >= 2) dirs.push_back({-1.0, 0.0, 0.0});
        return dirs;
    }
    const double pi = 3.14159265358979323846;
    for (int j = 0; j < count; ++j) {
        const double th = pi * j / count;
        dirs.push_back({std::cos(th), std::sin(th), 0.0});
    }
    return dirs;
}

double fitted_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct GlobalOpts {
    std::string out_dir = ".";
    uint64_t seed = 42;
};

int run_bessel(double nu, double r, bool scaled) {
    const double v = scaled ? ls::bessel_k_scaled(nu, r) : ls::bessel_k(nu, r);
    std::printf("%s\n", ls::format_double(v, 10).c_str());
    return 0;
}

int run_apply(const GlobalOpts& g, const std::string& method, const std::string& in,
              const std::string& xs, double s, const std::string& out, double eps, double R,
              double tol) {
    const ls::GridFunction u = ls::read_lsgf(in);
    ls::QuadratureParams qp;
    qp.eps = eps;
    qp.R = R;
    qp.tol = tol;
    if (method == "quad") {
        if (xs.empty()) throw ls::DomainError("apply --method quad requires --x");
        const ls::Point x = ls::make_point(parse_list(xs));
        double v;
        if (s > 0.0)
            v = ls::apply_s_pointwise(u, x, ls::FractionalSpec::make(u.dim(), s), qp);
        else
            v = ls::apply_log_pointwise(u, x, ls::KernelSpec::make(u.dim()), qp);
        std::printf("%s\n", ls::format_double(v, 10).c_str());
        return 0;
    }
    if (method != "spectral") throw ls::DomainError("apply: method must be quad or spectral");
    const ls::GridFunction result =
        s > 0.0 ? ls::apply_symbol_s(u, s) : ls::apply_symbol_log(u);
    if (!xs.empty()) {
        const ls::Point x = ls::make_point(parse_list(xs));
        std::printf("%s\n", ls::format_double(result.value_at(x), 10).c_str());
    }
    if (!out.empty()) ls::write_lsgf(result, joined(g.out_dir, out));
    return 0;
}

int run_taylor(const GlobalOpts& g, int N, int n, double L, const std::string& ladder,
               const std::string& out, const std::string& svg) {
    const auto svals = parse_list(ladder);
    const ls::GridFunction u =
        ls::GridFunction::sample(N, n, L, true, [&](const ls::Point& x) {
            double r2 = 0.0;
            for (int d = 0; d < N; ++d) r2 += x[static_cast<size_t>(d)] * x[static_cast<size_t>(d)];
            return std::exp(-0.5 * r2);
        });
    std::vector<double> residuals;
    for (double s : svals) residuals.push_back(ls::taylor_residual(u, s));
    const double slope = fitted_loglog_slope(svals, residuals);

    ls::CsvTable table;
    table.columns = {"s", "residual", "fitted_slope"};
    for (size_t i = 0; i < svals.size(); ++i)
        table.add_row({svals[i], residuals[i], slope});
    ls::emit_csv(table, joined(g.out_dir, out));
    if (!svg.empty()) {
        ls::SvgSeries series;
        series.label = "taylor residual";
        for (size_t i = 0; i < svals.size(); ++i)
            series.points.emplace_back(std::log10(svals[i]), std::log10(residuals[i]));
        ls::emit_svg({series}, joined(g.out_dir, svg));
    }
    std::printf("fitted_slope %s\n", ls::format_double(slope, 6).c_str());
    return 0;
}

void write_history_csv(const std::vector<ls::IterRecord>& history, const std::string& path) {
    if (history.empty()) return;
    ls::CsvTable table;
    table.columns = {"iter", "residual", "max_u", "quotient"};
    for (const auto& rec : history)
        table.add_row({static_cast<double>(rec.iter), rec.residual, rec.max_u, rec.quotient});
    ls::emit_csv(table, path);
}

int run_solve(const GlobalOpts& g, const ls::EquationParams& params, ls::SolveConfig cfg,
              const std::string& out, const std::string& history_path,
              const std::string& svg) {
    std::vector<ls::IterRecord> history;
    auto finish_artifacts = [&]() {
        if (!history_path.empty()) write_history_csv(history, joined(g.out_dir, history_path));
        if (!svg.empty() && !history.empty()) {
            ls::SvgSeries series;
            series.label = "residual";
            for (const auto& rec : history)
                series.points.emplace_back(rec.iter, std::log10(rec.residual));
            ls::emit_svg({series}, joined(g.out_dir, svg));
        }
    };
    try {
        ls::SolveResult result = ls::solve(params, cfg);
        history = result.history;
        finish_artifacts();
        if (!out.empty()) ls::write_lsgf(result.u, joined(g.out_dir, out));
        const ls::C2Report c2 = ls::check_c2(result.u, params);
        std::printf("converged iters %zu residual %s max_u %s\n", history.size(),
                    ls::format_double(history.back().residual, 6).c_str(),
                    ls::format_double(history.back().max_u, 6).c_str());
        std::printf("far_field a %s threshold %s admissible %d\n",
                    ls::format_double(c2.a, 6).c_str(),
                    ls::format_double(c2.threshold, 6).c_str(), c2.satisfied ? 1 : 0);
        return 0;
    } catch (const ls::NonconvergenceError& e) {
        // Reconstruct the partial history for the artifacts.
        history.clear();
        for (size_t i = 0; i < e.residual_history.size(); ++i) {
            const double mu = i < e.max_u_history.size() ? e.max_u_history[i] : 0.0;
            const double q = i < e.quotient_history.size() ? e.quotient_history[i] : 0.0;
            history.push_back({static_cast<int>(i + 1), e.residual_history[i], mu, q});
        }
        finish_artifacts();
        std::fprintf(stderr, "solve: %s (%zu iterations recorded)\n", e.what(),
                     e.residual_history.size());
        return 2;
    }
}

int run_symmetry(const GlobalOpts& g, const std::string& in, int dirs, double tol,
                 const std::string& out) {
    const ls::GridFunction u = ls::read_lsgf(in);
    const auto directions = fan_directions(u.dim(), dirs);
    const double floor = tol > 0.0 ? tol : 1e-8 * std::max(1.0, u.max_abs());

    ls::CsvTable table;
    table.columns = {"direction", "e1", "e2", "lambda0", "min_omega", "asymmetry"};
    const ls::SymmetryReport report = ls::symmetry_report(u, directions);
    for (size_t i = 0; i < directions.size(); ++i) {
        const auto& [e, l0] = report.lambda0_per_direction[i];
        std::array<double, 3> dir{e[0], e[1], e[2]};
        const double mo = ls::omega_min_halfspace(
            u, std::span<const double>(dir.data(), static_cast<size_t>(u.dim())), l0);
        ls::ReflectionSpec rs;
        rs.e = e;
        double lc = 0.0;
        for (int d = 0; d < u.dim(); ++d)
            lc += e[static_cast<size_t>(d)] * report.center[static_cast<size_t>(d)];
        rs.lambda = lc;
        const double asym = ls::omega(u, rs).max_abs();
        table.add_row({static_cast<double>(i), e[0], e[1], l0, mo, asym});
    }
    ls::emit_csv(table, joined(g.out_dir, out));
    std::printf("center");
    for (int d = 0; d < u.dim(); ++d)
        std::printf(" %s", ls::format_double(report.center[static_cast<size_t>(d)], 6).c_str());
    std::printf(" max_asymmetry %s radial_monotone %d tol %s\n",
                ls::format_double(report.max_asymmetry, 6).c_str(),
                report.radial_monotone ? 1 : 0, ls::format_double(floor, 3).c_str());
    return 0;
}

int run_probe_maxprin(const GlobalOpts& g, int count, int N, int n, double L, double lambda,
                      const std::string& out) {
    const auto spec = ls::ReflectionSpec::make(std::vector<double>{1.0}, lambda);
    ls::CsvTable table;
    table.columns = {"probe", "omega_min", "value", "admissible"};
    int negative = 0, admissible = 0;
    for (int i = 0; i < count; ++i) {
        const ls::GridFunction w =
            ls::random_antisym_field(N, n, L, spec, g.seed + static_cast<uint64_t>(i));
        const ls::ProbeResult pr = ls::antisym_min_probe(w, spec);
        if (pr.admissible) {
            ++admissible;
            if (pr.value < 0.0) ++negative;
        }
        table.add_row({static_cast<double>(i), pr.omega_min, pr.value,
                       pr.admissible ? 1.0 : 0.0});
    }
    ls::emit_csv(table, joined(g.out_dir, out));
    std::printf("negative %d/%d admissible %d\n", negative, admissible, admissible);
    return negative == admissible ? 0 : 2;
}

int run_probe_decay(const GlobalOpts& g, int N, double lambda, const std::string& range,
                    const std::string& out) {
    const auto dists = parse_list(range);
    const ls::KernelSpec spec = ls::KernelSpec::make(N);
    ls::CsvTable table;
    table.columns = {"x0_abs", "lhs", "rhs", "ratio", "satisfied"};
    bool all_ok = true;
    for (double v : dists) {
        ls::Point x0{-v, 0.0, 0.0};
        const ls::DecayProbe probe = ls::decay_bound_check(x0, lambda, spec);
        table.add_row({v, probe.lhs_integral, probe.rhs_bound,
                       probe.lhs_integral / probe.rhs_bound, probe.satisfied ? 1.0 : 0.0});
        all_ok = all_ok && probe.satisfied;
    }
    ls::emit_csv(table, joined(g.out_dir, out));
    std::printf("%s\n", all_ok ? "bound holds" : "bound violated");
    return all_ok ? 0 : 2;
}

int run_convergence(const GlobalOpts& g, int N, double L, double m, double p,
                    const std::string& nlist, double tol, int max_iter,
                    const std::string& out) {
    const auto ns = parse_list(nlist);
    ls::CsvTable table;
    table.columns = {"n", "converged", "iterations", "residual", "max_u", "rel_change_max_u"};
    double prev_max = 0.0;
    bool any_fail = false;
    for (double nd : ns) {
        ls::SolveConfig cfg;
        cfg.dim = N;
        cfg.n = static_cast<int>(nd);
        cfg.half_width = L;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        double residual = 0.0, max_u = 0.0;
        double iters = 0.0, converged = 0.0;
        try {
            ls::SolveResult result = ls::solve(ls::EquationParams::make(m, p), cfg);
            residual = result.history.back().residual;
            max_u = result.history.back().max_u;
            iters = static_cast<double>(result.history.size());
            converged = 1.0;
        } catch (const ls::NonconvergenceError& e) {
            residual = e.residual_history.empty() ? 0.0 : e.residual_history.back();
            iters = static_cast<double>(e.residual_history.size());
            any_fail = true;
        }
        const double rel =
            prev_max > 0.0 && max_u > 0.0 ? std::abs(max_u - prev_max) / max_u : 0.0;
        table.add_row({nd, converged, iters, residual, max_u, rel});
        prev_max = max_u;
    }
    ls::emit_csv(table, joined(g.out_dir, out));
    return any_fail ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"logschrod: numerics for the logarithmic Schrodinger operator"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--out-dir", g.out_dir, "directory for output artifacts");
    app.add_option("--seed", g.seed, "seed for randomized suites");

    // bessel
    auto* sb = app.add_subcommand("bessel", "evaluate K_nu(r)");
    double nu = 0.5, r = 1.0;
    bool scaled = false;
    sb->add_option("--nu", nu, "order")->required();
    sb->add_option("--r", r, "argument")->required();
    sb->add_flag("--scaled", scaled, "print e^r K_nu(r)");

    // apply
    auto* sa = app.add_subcommand("apply", "apply the operator to a grid file");
    std::string method, in_file, xs, out_file;
    double s_order = 0.0, eps = 0.0, radius = 30.0, qtol = 1e-9;
    sa->add_option("--method", method, "quad or spectral")->required();
    sa->add_option("--in", in_file, "input .lsgf file")->required();
    sa->add_option("--x", xs, "evaluation point, comma separated");
    sa->add_option("--s", s_order, "fractional order in (0,1); omit for the log operator");
    sa->add_option("--out", out_file, "output .lsgf (spectral method)");
    sa->add_option("--eps", eps, "singular-ball radius (0 selects 2h)");
    sa->add_option("--R", radius, "far-field truncation radius");
    sa->add_option("--tol", qtol, "truncation tolerance");

    // taylor
    auto* st = app.add_subcommand("taylor", "small-s expansion residual ladder");
    int tN = 1, tn = 512;
    double tL = 12.0;
    std::string ladder = "0.1,0.05,0.025,0.0125", taylor_out = "taylor.csv", taylor_svg;
    st->add_option("--N", tN, "dimension");
    st->add_option("--n", tn, "points per axis");
    st->add_option("--L", tL, "box half width");
    st->add_option("--s-ladder", ladder, "comma separated s values");
    st->add_option("--out", taylor_out, "CSV path");
    st->add_option("--svg", taylor_svg, "optional SVG path");

    // solve
    auto* ss = app.add_subcommand("solve", "nonlinear ground-state iteration");
    ls::SolveConfig cfg;
    double m = 1.0, p = 3.0;
    std::string solve_out, history_out = "solve_history.csv", solve_svg;
    ss->add_option("--N", cfg.dim, "dimension");
    ss->add_option("--n", cfg.n, "points per axis");
    ss->add_option("--L", cfg.half_width, "box half width");
    ss->add_option("--m", m, "mass parameter")->required();
    ss->add_option("--p", p, "nonlinearity power")->required();
    ss->add_option("--tol", cfg.tol, "relative residual target");
    ss->add_option("--max-iter", cfg.max_iter, "iteration budget");
    ss->add_option("--gamma", cfg.gamma, "stabilization exponent (0 selects p/(p-1))");
    ss->add_option("--offset-cells", cfg.init_offset_cells, "initial off-center shift");
    ss->add_option("--out", solve_out, "converged field .lsgf");
    ss->add_option("--history", history_out, "iteration CSV");
    ss->add_option("--svg", solve_svg, "optional residual SVG");

    // symmetry
    auto* sy = app.add_subcommand("symmetry", "critical planes and asymmetry report");
    std::string sym_in, sym_out = "symmetry.csv";
    int dirs = 4;
    double sym_tol = 0.0;
    sy->add_option("--in", sym_in, "input .lsgf file")->required();
    sy->add_option("--dirs", dirs, "number of directions");
    sy->add_option("--tol", sym_tol, "nonnegativity floor (0 selects 1e-8 max)");
    sy->add_option("--out", sym_out, "CSV path");

    // probe-maxprin
    auto* sm = app.add_subcommand("probe-maxprin", "antisymmetric minimum probes");
    int count = 100, pN = 1, pn = 1024;
    double pL = 12.0, plambda = 0.0;
    std::string probe_out = "probe_maxprin.csv";
    sm->add_option("--count", count, "number of probes");
    sm->add_option("--N", pN, "dimension");
    sm->add_option("--n", pn, "points per axis");
    sm->add_option("--L", pL, "box half width");
    sm->add_option("--lambda", plambda, "plane offset");
    sm->add_option("--out", probe_out, "CSV path");

    // probe-decay
    auto* sd = app.add_subcommand("probe-decay", "half-space kernel mass bound");
    int dN = 1;
    double dlambda = 0.0;
    std::string drange = "4,5,6,8,10", decay_out = "probe_decay.csv";
    sd->add_option("--N", dN, "dimension");
    sd->add_option("--lambda", dlambda, "plane offset");
    sd->add_option("--x0-range", drange, "comma separated |x0| values");
    sd->add_option("--out", decay_out, "CSV path");

    // convergence
    auto* sc = app.add_subcommand("convergence", "solver grid-refinement study");
    int cN = 1;
    double cL = 12.0, cm = 1.0, cp = 3.0, ctol = 1e-6;
    int cmax = 500;
    std::string cnlist = "256,512,1024", conv_out = "convergence.csv";
    sc->add_option("--N", cN, "dimension");
    sc->add_option("--L", cL, "box half width");
    sc->add_option("--m", cm, "mass parameter");
    sc->add_option("--p", cp, "nonlinearity power");
    sc->add_option("--n-list", cnlist, "comma separated grid sizes");
    sc->add_option("--tol", ctol, "relative residual target");
    sc->add_option("--max-iter", cmax, "iteration budget");
    sc->add_option("--out", conv_out, "CSV path");

    // Global options (--seed, --out-dir) may be given after the subcommand.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough(true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sb) return run_bessel(nu, r, scaled);
        if (*sa) return run_apply(g, method, in_file, xs, s_order, out_file, eps, radius, qtol);
        if (*st) return run_taylor(g, tN, tn, tL, ladder, taylor_out, taylor_svg);
        if (*ss) {
            return run_solve(g, ls::EquationParams::make(m, p), cfg, solve_out, history_out,
                             solve_svg);
        }
        if (*sy) return run_symmetry(g, sym_in, dirs, sym_tol, sym_out);
        if (*sm) return run_probe_maxprin(g, count, pN, pn, pL, plambda, probe_out);
        if (*sd) return run_probe_decay(g, dN, dlambda, drange, decay_out);
        if (*sc) return run_convergence(g, cN, cL, cm, cp, cnlist, ctol, cmax, conv_out);
    } catch (const ls::TrivialSolutionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ls::NonconvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ls::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ls::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const ls::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
