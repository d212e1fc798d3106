// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "cattaneo/boundary.hpp"
#include "cattaneo/cli.hpp"
#include "cattaneo/errors.hpp"
#include "cattaneo/experiments.hpp"
#include "cattaneo/modal.hpp"
#include "cattaneo/oracle.hpp"
#include "cattaneo/parallel.hpp"
#include "cattaneo/solver.hpp"
#include "cattaneo/spectrum.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cattaneo;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
        o.pass = false;
        o.detail += ", over the " + fmt("%.0f", budget_s) + " s budget";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s  %-34s %s (%.2f s)\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

double mode_oracle_error(const ParameterSet& p, double lsq, ModalInitialData init) {
    const auto sol = solve_mode(p, lsq, init);
    const auto eq = ModeEquation::from(p, lsq);
    const auto traj = oracle::integrate_mode({eq.leading, eq.damping, eq.stiffness, init, 1.0}, 1e-12, 1e-14);
    double sup = 0.0, err = 0.0;
    for (int i = 0; i <= 50; ++i) sup = std::max(sup, std::abs(traj(i / 50.0)[0]));
    for (int i = 0; i <= 50; ++i) {
        const auto v = eval_mode(sol, i / 50.0);
        if (!v.saturated) err = std::max(err, std::abs(v.value - traj(i / 50.0)[0]));
    }
    return sup == 0.0 ? err : err / sup;
}

Outcome compatibility_dichotomy() {
    const double a = 1.3, b = 0.8;
    const double lsq = interval_modes(kPi, 3)[2].lambda_sq;
    const auto p = ParameterSet::from_coefficients(a, b, 1.0 / lsq);
    const double ratio = -(b / a) * lsq;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    int rejected = 0;
    for (int i = 0; i < 1000; ++i) {
        const double alpha = u(rng);
        double beta = u(rng);
        if (std::abs(beta - ratio * alpha) <= 1e-6 * (1 + std::abs(ratio * alpha))) beta += 1.0;
        try {
            solve_mode(p, lsq, {alpha, beta});
        } catch (const UnsolvableMode&) {
            ++rejected;
        }
    }
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double alpha = u(rng);
        const auto sol = solve_mode(p, lsq, {alpha, ratio * alpha});
        if (!std::holds_alternative<FirstOrder>(sol.form)) return {false, "compatible data not first order"};
        for (int s = 0; s < 10; ++s) {
            const double t = 0.1 * (s + 1);
            const double want = alpha * std::exp(-(b * lsq / a) * t);
            worst = std::max(worst, std::abs(eval_mode(sol, t).value - want) / std::abs(want));
        }
    }
    return {rejected == 1000 && worst <= 1e-12,
            "rejected " + std::to_string(rejected) + "/1000, worst rel " + fmt("%.1e", worst)};
}

Outcome closed_form_vs_oracle() {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> u(0.1, 3.0), d(-1.0, 1.0);
    std::uniform_int_distribution<int> mode(1, 5);
    int counts[3] = {0, 0, 0};
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng), b = u(rng);
        const int n = mode(rng);
        const double lsq = static_cast<double>(n * n);
        double c;
        if (i % 3 == 2) {
            // Double root: a² = 4bλ²(1 − cλ²), needs a² < 4bλ².
            const double bb = std::max(b, a * a / (4 * lsq) * 1.5);
            c = (1.0 - a * a / (4 * bb * lsq)) / lsq;
            const auto p = ParameterSet::from_coefficients(a, bb, c);
            const auto sol = solve_mode(p, lsq, {d(rng), d(rng)});
            ++counts[std::holds_alternative<DoubleRoot>(sol.form) ? 2 : 0];
            worst = std::max(worst, mode_oracle_error(p, lsq, sol.init));
            continue;
        }
        do c = u(rng) / 2; while (std::abs(1 - c * lsq) < 1e-2);
        const auto p = ParameterSet::from_coefficients(a, b, c);
        const ModalInitialData init{d(rng), d(rng)};
        const auto sol = solve_mode(p, lsq, init);
        if (std::holds_alternative<RealDistinct>(sol.form)) ++counts[0];
        if (std::holds_alternative<ComplexPair>(sol.form)) ++counts[1];
        worst = std::max(worst, mode_oracle_error(p, lsq, init));
    }
    const bool all_regimes = counts[0] > 0 && counts[1] > 0 && counts[2] > 0;
    return {all_regimes && worst <= 1e-8, "real/complex/double " + std::to_string(counts[0]) + "/" +
                                              std::to_string(counts[1]) + "/" + std::to_string(counts[2]) +
                                              ", worst rel " + fmt("%.1e", worst)};
}

Outcome semigroup_identity() {
    const auto p = ParameterSet::from_coefficients(0.9, 1.2, 0.013);
    const auto spectrum_blocks = build_blocks(p, BasisDescriptor{{kPi, 2.0}, 500}, DirichletDatum{});
    double eig = 0.0;
    for (const auto& b : spectrum_blocks) {
        const auto ev = block_eigenvalues(b);
        const auto rc = characteristic_roots(p, b.lambda_sq);
        const double hi = std::max(rc.r_plus, rc.r_minus), lo = std::min(rc.r_plus, rc.r_minus);
        eig = std::max({eig, std::abs(ev.first - hi) / std::max(1.0, std::abs(hi)),
                        std::abs(ev.second - lo) / std::max(1.0, std::abs(lo)),
                        std::abs(ev.imag - rc.imag) / std::max(1.0, rc.imag)});
    }

    const auto basis = BasisDescriptor::interval(kPi, 32);
    const auto q = ParameterSet::from_coefficients(1.0, 1.0, 0.3);
    const DirichletDatum g = DirichletDatum::interval(1.0, -0.5);
    const auto blocks = build_blocks(q, basis, g);
    const FieldPair rest{Field::zero(basis), Field::zero(basis)};
    double mild = 0.0;
    for (const TimeProfile& tp : {TimeProfile::sine(2.0), TimeProfile::polynomial({0.5, -1.0, 0.0, 0.7}),
                                  TimeProfile::smoothed_step(0.5, 0.2)}) {
        const BoundarySignal sig{g, tp, 1.0};
        const auto w = evolve_with_boundary(blocks, rest, sig, 1.0, 1e-3);
        for (std::size_t n = 0; n < blocks.size(); ++n) {
            const auto ref = oracle::integrate_block(blocks[n], {0.0, 0.0}, tp, 1.0, 1e-12, 1e-14)(1.0);
            const double scale = std::max(1.0, std::abs(ref[0]) + std::abs(ref[1]));
            mild = std::max({mild, std::abs(w.theta.coefficients[n] - ref[0]) / scale,
                             std::abs(w.theta_prime.coefficients[n] - ref[1]) / scale});
        }
    }
    return {eig <= 1e-10 && mild <= 1e-7, "eigenvalues " + fmt("%.1e", eig) + ", mild formula " + fmt("%.1e", mild)};
}

Outcome dirichlet_map() {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> uc(0.05, 2.0), ug(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        double c;
        do c = uc(rng); while (std::abs(std::sin(kPi / std::sqrt(c))) < 1e-3);
        const double g0 = ug(rng), g1 = ug(rng);
        const auto u = dirichlet_map_interval(c, kPi, DirichletDatum::interval(g0, g1)).map;
        const double s = 1.0 / std::sqrt(c), den = std::sin(kPi * s);
        worst = std::max({worst, std::abs(u.value(0.0) - g0), std::abs(u.value(kPi) - g1)});
        for (int j = 1; j <= 100; ++j) {
            const double x = kPi * j / 101.0;
            // Second derivative of the closed form, term by term.
            const double uxx = -s * s * (g0 * std::sin((kPi - x) * s) + g1 * std::sin(x * s)) / den;
            worst = std::max(worst, std::abs(u.value(x) + c * uxx) / std::max(1.0, std::abs(u.value(x))));
        }
    }
    int raised = 0;
    for (double c : {0.25, 1.0 / 9, 1.0}) {
        try {
            dirichlet_map_interval(c, kPi, DirichletDatum::interval(1.0, 0.0));
        } catch (const ExceptionalParameter&) {
            ++raised;
        }
    }
    return {worst <= 1e-10 && raised == 3, "residual " + fmt("%.1e", worst) + ", errors raised " + std::to_string(raised) + "/3"};
}

Outcome propagation() {
    PropagationConfig cfg;
    std::vector<double> ns;
    for (int j = 1; j <= 12; ++j) ns.push_back(std::ldexp(1.0, j));
    const auto res = propagation_burst(ParameterSet::from_coefficients(1, 1, 0.5), cfg, ns);
    const double last = res.rows.back().ratio;
    const bool ok = res.threshold_n && *res.threshold_n <= 4096 && last > 0.9 && res.derivative_check;
    return {ok, "N(T) = " + (res.threshold_n ? fmt("%.0f", *res.threshold_n) : std::string("none")) +
                    ", ratio at 4096 " + fmt("%.4f", last) + (res.monotone_after_crossing ? ", monotone" : "")};
}

Outcome whole_line(ScanSide side) {
    const auto rows = whole_line_scan(1.0, 1.0, 0.5, 1.0, 1.0, 20, side);
    const double grow = rows[19].mode.log_abs_second - rows[9].mode.log_abs_second;
    double first_max = -INFINITY;
    for (const auto& r : rows) first_max = std::max(first_max, r.mode.log_abs_first);
    const bool bounded = first_max <= 0.0;  // |first| ≤ 1
    return {grow >= std::log(10.0) && bounded,
            "log|second| j=10 " + fmt("%.4g", rows[9].mode.log_abs_second) + ", j=20 " +
                fmt("%.4g", rows[19].mode.log_abs_second) + ", max |first| " + fmt("%.2e", std::exp(first_max))};
}

Outcome limit1() {
    const auto rows = limit1_scan(1, 1, 1, 1, limit1_c_values(1.0, 2, 6));
    bool signs = true;
    for (const auto& r : rows) signs = signs && ((r.c < 1) == (r.exp_second < 0));
    double a_err = 0.0, b_err = 0.0;
    for (const auto& r : rows) {
        const double off = std::abs(r.c - 1.0);
        if (std::abs(off - 1e-5) <= 1e-9) a_err = std::max(a_err, std::abs(r.A + 1.0));
        if (std::abs(off - 1e-4) <= 1e-9) b_err = std::max(b_err, std::abs(r.B / ((1 - r.c) * (1 - r.c)) - 1.0));
    }
    return {signs && a_err <= 1e-4 && b_err <= 0.05,
            "|A + 1| " + fmt("%.1e", a_err) + ", B ratio off by " + fmt("%.1e", b_err) + (signs ? ", signs ok" : ", sign mismatch")};
}

Outcome limit2() {
    const auto res = limit2_scan_auto_gamma(1, 1, 1, interval_modes(kPi, 40), 4, 40, 0.1);
    const bool ok = res.growth_exponent_fit >= 1.40 && res.growth_exponent_fit <= 1.60 &&
                    res.coefficient_exponent_fit >= -2.6 && res.coefficient_exponent_fit <= -2.4;
    return {ok, "growth " + fmt("%.3f", res.growth_exponent_fit) + " (3/2), coefficient " +
                    fmt("%.3f", res.coefficient_exponent_fit) + " (-5/2)"};
}

Outcome limit3() {
    const auto res = limit3_scan(1, 12, 0.1);
    double oracle_err = 0.0, init_err = 0.0;
    bool bounded = true;
    for (const auto& r : res.rows) {
        const double k = static_cast<double>(r.k), k4 = k * k * k * k;
        const auto p = ParameterSet::from_physical_m2(kLimit3Chi, r.parameter, kLimit3GammaRho);
        const auto init = limit3_initial_data(r.k);
        const auto eq = ModeEquation::from(p, k * k);
        const auto traj = oracle::integrate_mode({eq.leading, eq.damping, eq.stiffness, init, 0.1}, 1e-12, 1e-14);
        // Addenda recovered from the trajectory: θ = c₁e^{r₁t} + c₂e^{r₂t} with known exponents.
        const auto y = traj(0.0);
        const double c1 = (y[1] - r.exp_second * y[0]) / (r.exp_first - r.exp_second);
        const double c2 = y[0] - c1;
        oracle_err = std::max({oracle_err, std::abs(c1 - r.coeff_first) / std::abs(r.coeff_first),
                               std::abs(c2 - r.coeff_second) / std::abs(r.coeff_second)});
        const auto sol = solve_mode(p, k * k, init);
        double sup = 0.0, gap = 0.0;
        for (int i = 0; i <= 20; ++i) sup = std::max(sup, std::abs(traj(0.005 * i)[0]));
        for (int i = 0; i <= 20; ++i) gap = std::max(gap, std::abs(traj(0.005 * i)[0] - eval_mode(sol, 0.005 * i).value));
        oracle_err = std::max(oracle_err, gap / sup);
        init_err = std::max(init_err, std::abs(eval_mode(sol, 0.0).value - 1.0 / k4));
        for (double t : {1e-4, 1e-2, 0.1, 1.0, 10.0})
            bounded = bounded && std::abs(r.coeff_second) * std::exp(r.exp_second * t) < 2.0 / k4;
    }
    bool stable = res.first_k_exceeding.has_value();
    for (int rep = 0; rep < 3 && stable; ++rep) stable = limit3_scan(1, 12, 0.1).first_k_exceeding == res.first_k_exceeding;
    bool compatible = res.heat_compatible;
    for (std::size_t n = 1; n <= 12; ++n) compatible = compatible && limit3_heat_compatible(n);
    const bool ok = oracle_err <= 1e-8 && init_err <= 1e-12 && bounded && stable && compatible;
    return {ok, "oracle " + fmt("%.1e", oracle_err) + ", theta(0) " + fmt("%.1e", init_err) + ", first k with |theta|>k: " +
                    (res.first_k_exceeding ? std::to_string(*res.first_k_exceeding) : std::string("none"))};
}

double fd_gap(std::size_t nx, double dt) {
    const auto p = ParameterSet::from_coefficients(3.0, 1.0, 0.5);
    const double T = 0.7;
    const auto basis = BasisDescriptor::interval(kPi, 1);
    const auto spec = evolve_homogeneous(p, Field::zero(basis), Field::unit(basis, 1), T);
    std::vector<double> th0(nx, 0.0), th1(nx);
    for (std::size_t i = 0; i < nx; ++i) th1[i] = std::sqrt(2.0 / kPi) * std::sin(kPi * i / (nx - 1.0));
    const auto g = oracle::fd_solve(p, kPi, nx, dt, th0, th1, std::nullopt, T);
    const auto exact = reconstruct(spec.theta, std::span<const double>(g.x));
    const double h = kPi / (nx - 1.0);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        const double w = (i == 0 || i + 1 == nx) ? 0.5 * h : h;
        num += w * std::pow(g.snapshots.back()[i] - exact[i], 2);
        den += w * exact[i] * exact[i];
    }
    return std::sqrt(num / den);
}

Outcome spectral_vs_fd() {
    const double e1 = fd_gap(2000, 1e-4), e2 = fd_gap(4000, 5e-5);
    return {e1 <= 1e-2 && e1 / e2 >= 3.0, "nx=2000 " + fmt("%.2e", e1) + ", nx=4000 " + fmt("%.2e", e2) +
                                                 ", improvement " + fmt("%.2f", e1 / e2) + "x"};
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> runs = {
        {"spectrum", "--L", "pi", "pi", "--N", "200"},
        {"exceptional", "--L", "3.14159265358979", "--N", "10", "--kind", "c"},
        {"solve", "--a", "1", "--b", "1", "--c", "0.26", "--N", "128", "--theta0", "1,0.5,0.25", "--theta1", "0,1"},
        {"boundary", "--a", "1", "--b", "1", "--c", "0.3", "--N", "64"},
        {"limit1"},
        {"limit2"},
        {"limit3", "--kmax", "12", "--t", "0.1"},
        {"heatcmp"},
        {"propagation"},
        {"wholeline"},
        {"verify", "--seed", "7", "--count", "20"},
    };
    auto capture = [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return std::to_string(code) + "\n" + out.str();
    };
    std::size_t checked = 0;
    for (const auto& args : runs) {
        std::vector<std::string> seen;
        for (const char* threads : {"1", "4"}) {
            setenv(kThreadsEnv, threads, 1);
            for (int rep = 0; rep < 3; ++rep) seen.push_back(capture(args));
        }
        for (const auto& s : seen)
            if (s != seen.front()) {
                unsetenv(kThreadsEnv);
                return {false, "differs: " + args.front()};
            }
        if (seen.front().rfind("0\n", 0) != 0) {
            unsetenv(kThreadsEnv);
            return {false, "nonzero exit: " + args.front()};
        }
        ++checked;
    }
    unsetenv(kThreadsEnv);
    return {true, std::to_string(checked) + " subcommands x 3 runs x threads {1,4}"};
}

}  // namespace

int main() {
    criterion(1, "compatibility dichotomy", 1, compatibility_dichotomy);
    criterion(2, "closed form vs ODE oracle", 10, closed_form_vs_oracle);
    criterion(3, "semigroup identity", 30, semigroup_identity);
    criterion(4, "Dirichlet map", 1, dirichlet_map);
    criterion(5, "propagation speed", 120, propagation);
    criterion(6, "whole-line singularity", 1, [] { return whole_line(ScanSide::below); });
    {
        const auto o = whole_line(ScanSide::above);
        std::printf("   supplementary %s  %-34s %s\n", o.pass ? "PASS" : "FAIL", "whole-line scan from above 1/sqrt(c)",
                    o.detail.c_str());
    }
    criterion(7, "limit 1", 1, limit1);
    criterion(8, "limit 2", 1, limit2);
    criterion(9, "limit 3", 1, limit3);
    criterion(10, "spectral vs finite differences", 120, spectral_vs_fd);
    criterion(11, "determinism", 60, determinism);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
