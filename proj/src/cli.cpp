#include "cattaneo/cli.hpp"

#include "cattaneo/boundary.hpp"
#include "cattaneo/errors.hpp"
#include "cattaneo/experiments.hpp"
#include "cattaneo/modal.hpp"
#include "cattaneo/oracle.hpp"
#include "cattaneo/solver.hpp"
#include "cattaneo/spectrum.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

namespace cattaneo::cli {

double parse_length(const std::string& token) {
    if (token == "pi") return kPi;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("length is not a number: " + token);
    }
    if (used != token.size() || !std::isfinite(v)) throw InvalidArgument("length is not a finite decimal: " + token);
    return v;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

class Csv {
public:
    explicit Csv(std::initializer_list<std::string> header) { row_strings(header); }

    template <typename... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        ((emit(cells, first)), ...);
        buf_ << '\n';
    }
    std::string str() const { return buf_.str(); }

private:
    void row_strings(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const auto& c : cells) emit(c, first);
        buf_ << '\n';
    }
    void sep(bool& first) {
        if (!first) buf_ << ',';
        first = false;
    }
    void emit(double x, bool& first) {
        sep(first);
        buf_ << format_double(x);
    }
    void emit(std::size_t x, bool& first) {
        sep(first);
        buf_ << x;
    }
    void emit(int x, bool& first) {
        sep(first);
        buf_ << x;
    }
    void emit(const std::string& s, bool& first) {
        sep(first);
        buf_ << s;
    }
    void emit(std::string_view s, bool& first) { emit(std::string(s), first); }
    void emit(const char* s, bool& first) { emit(std::string(s), first); }

    std::ostringstream buf_;
};

struct Domain {
    std::vector<std::string> lengths{"pi"};
    std::size_t truncation = 16;

    void add(CLI::App* sub, std::size_t default_n) {
        truncation = default_n;
        sub->add_option("--L", lengths, "box side lengths (decimal or pi)")->capture_default_str();
        sub->add_option("--N", truncation, "number of retained modes")->capture_default_str();
    }
    BasisDescriptor basis() const {
        BasisDescriptor b;
        for (const auto& s : lengths) b.lengths.push_back(parse_length(s));
        b.truncation = truncation;
        validate(b);
        return b;
    }
};

struct Coefficients {
    std::optional<double> a, b, c, chi, sigma, gamma_rho;
    std::string map = "m1";

    void add(CLI::App* sub) {
        auto* oa = sub->add_option("--a", a, "damping");
        auto* ob = sub->add_option("--b", b, "diffusivity");
        auto* oc = sub->add_option("--c", c, "fourth-order coefficient");
        auto* ox = sub->add_option("--chi", chi);
        auto* os = sub->add_option("--sigma", sigma);
        auto* og = sub->add_option("--gamma-rho", gamma_rho);
        sub->add_option("--map", map)->check(CLI::IsMember({"m1", "m2"}))->capture_default_str();
        for (auto* raw : {oa, ob, oc})
            for (auto* phys : {ox, os, og}) raw->excludes(phys);
    }
    ParameterSet build() const {
        const bool raw = a || b || c;
        if (raw) {
            if (!(a && b && c)) throw CLI::ValidationError("coefficients", "--a, --b and --c must be given together");
            return ParameterSet::from_coefficients(*a, *b, *c);
        }
        if (!(chi && sigma && gamma_rho))
            throw CLI::ValidationError("coefficients", "give --a/--b/--c or --chi/--sigma/--gamma-rho");
        return map == "m1" ? ParameterSet::from_physical_m1(*chi, *sigma, *gamma_rho)
                           : ParameterSet::from_physical_m2(*chi, *sigma, *gamma_rho);
    }
};

std::vector<double> padded(const std::vector<double>& xs, std::size_t n, const char* name) {
    if (xs.size() > n) throw CLI::ValidationError(name, "more coefficients than retained modes");
    std::vector<double> out(xs);
    out.resize(n, 0.0);
    return out;
}

std::string join_index(const std::vector<int>& mi) {
    std::string s;
    for (std::size_t i = 0; i < mi.size(); ++i) {
        if (i) s += ':';
        s += std::to_string(mi[i]);
    }
    return s;
}

struct Outcome {
    std::string csv;
    std::string summary;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral solver and experiments for the fourth-order Cattaneo heat equation", "cattaneo"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write CSV here instead of stdout");

    std::function<Outcome()> action;

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "Dirichlet-Laplacian eigenvalues of a box");
    Domain sp_dom;
    sp_dom.add(sp, 16);
    sp->callback([&] {
        action = [&] {
            const auto basis = sp_dom.basis();
            const auto modes = box_modes(basis);
            Csv csv{"index", "lambda_sq", "multi_index"};
            for (const auto& m : modes) csv.row(m.index, m.lambda_sq, join_index(m.multi_index));
            std::string summary = std::to_string(modes.size()) + " modes";
            if (modes.size() >= 16)
                summary += ", weyl fit " + format_double(weyl_exponent_fit(modes, basis.dimension()));
            return Outcome{csv.str(), summary};
        };
    });

    // exceptional
    auto* ex = app.add_subcommand("exceptional", "exceptional set for c or sigma");
    Domain ex_dom;
    ex_dom.add(ex, 16);
    std::string ex_kind = "c";
    double ex_gamma_rho = 0.0;
    ex->add_option("--kind", ex_kind)->check(CLI::IsMember({"c", "sigma"}))->capture_default_str();
    ex->add_option("--gamma-rho", ex_gamma_rho, "required for --kind sigma");
    ex->callback([&] {
        action = [&] {
            const auto modes = box_modes(ex_dom.basis());
            if (ex_kind == "sigma" && !(ex_gamma_rho > 0.0))
                throw CLI::ValidationError("--gamma-rho", "must be positive for --kind sigma");
            const auto set = ex_kind == "c" ? exceptional_for_c(modes) : exceptional_for_sigma(modes, ex_gamma_rho);
            Csv csv{"index", "value"};
            for (std::size_t i = 0; i < set.values.size(); ++i) csv.row(i + 1, set.values[i]);
            return Outcome{csv.str(), std::to_string(set.values.size()) + " exceptional values"};
        };
    });

    // solve
    auto* so = app.add_subcommand("solve", "homogeneous-boundary evolution");
    Domain so_dom;
    so_dom.add(so, 16);
    Coefficients so_coef;
    so_coef.add(so);
    double so_t = 1.0;
    std::vector<double> so_theta0{1.0}, so_theta1;
    bool so_allow = false;
    so->add_option("--t", so_t)->capture_default_str();
    so->add_option("--theta0", so_theta0, "initial modal coefficients")->delimiter(',');
    so->add_option("--theta1", so_theta1, "initial modal velocity coefficients")->delimiter(',');
    so->add_flag("--allow-exceptional", so_allow);
    so->callback([&] {
        action = [&] {
            const auto basis = so_dom.basis();
            const ParameterSet p = so_coef.build();
            const Field th0 = Field::from_coefficients(basis, padded(so_theta0, basis.truncation, "--theta0"));
            const Field th1 = Field::from_coefficients(basis, padded(so_theta1, basis.truncation, "--theta1"));
            const FieldPair res = evolve_homogeneous(p, th0, th1, so_t, EvolveOptions{so_allow});
            const auto modes = box_modes(basis);
            const ParameterSet e = p.effective();
            Csv csv{"n", "lambda_sq", "theta", "theta_prime", "flag"};
            for (std::size_t n = 0; n < modes.size(); ++n) {
                const double th = res.theta.coefficients[n], tp = res.theta_prime.coefficients[n];
                const double lead = 1.0 - e.c * modes[n].lambda_sq;
                const bool degenerate = std::abs(lead) <= default_degenerate_tolerance(e, modes[n].lambda_sq);
                const RowFlag flag = degenerate ? RowFlag::exceptional
                                     : (std::isinf(th) || std::isinf(tp)) ? RowFlag::saturated
                                                                          : RowFlag::ok;
                csv.row(n + 1, modes[n].lambda_sq, th, tp, to_string(flag));
            }
            return Outcome{csv.str(), "norm " + format_double(field_norm(res.theta))};
        };
    });

    // boundary
    auto* bo = app.add_subcommand("boundary", "inhomogeneous Dirichlet evolution on an interval");
    Domain bo_dom;
    bo_dom.add(bo, 64);
    Coefficients bo_coef;
    bo_coef.add(bo);
    double bo_g0 = 1.0, bo_g1 = 0.0, bo_T = 1.0, bo_rate = 1.0;
    std::optional<double> bo_t;
    std::string bo_signal = "sine";
    bo->add_option("--g0", bo_g0)->capture_default_str();
    bo->add_option("--g1", bo_g1)->capture_default_str();
    bo->add_option("--T", bo_T, "horizon")->capture_default_str();
    bo->add_option("--t", bo_t, "evaluation time (default T)");
    bo->add_option("--signal", bo_signal)->check(CLI::IsMember({"constant", "sine", "burst", "step"}))->capture_default_str();
    bo->add_option("--rate", bo_rate, "sine frequency, burst rate or step width")->capture_default_str();
    bo->callback([&] {
        action = [&] {
            const auto basis = bo_dom.basis();
            if (basis.dimension() != 1) throw CLI::ValidationError("--L", "boundary runs on an interval");
            const ParameterSet p = bo_coef.build();
            const DirichletDatum g = DirichletDatum::interval(bo_g0, bo_g1);
            // Rejects c with sin(L/√c) = 0.
            dirichlet_map_interval(p.effective().c, basis.lengths[0], g, basis.truncation);
            TimeProfile time = bo_signal == "constant" ? TimeProfile::constant()
                               : bo_signal == "sine"   ? TimeProfile::sine(bo_rate)
                               : bo_signal == "burst"  ? TimeProfile::burst(bo_rate, bo_T)
                                                       : TimeProfile::smoothed_step(0.5 * bo_T, bo_rate);
            const BoundarySignal signal{g, time, bo_T};
            const auto blocks = build_blocks(p, basis, g);
            const FieldPair rest{Field::zero(basis), Field::zero(basis)};
            const double t = bo_t.value_or(bo_T);
            const FieldPair res = evolve_with_boundary(blocks, rest, signal, t);
            Csv csv{"n", "lambda_sq", "d", "theta", "theta_prime"};
            for (std::size_t n = 0; n < blocks.size(); ++n)
                csv.row(n + 1, blocks[n].lambda_sq, blocks[n].d, res.theta.coefficients[n],
                        res.theta_prime.coefficients[n]);
            return Outcome{csv.str(), "norm " + format_double(field_norm(res.theta))};
        };
    });

    // limit1
    auto* l1 = app.add_subcommand("limit1", "c approaching 1/lambda^2 from both sides");
    double l1_a = 1.0, l1_b = 1.0, l1_lsq = 1.0, l1_t = 1.0;
    int l1_jmin = 2, l1_jmax = 6;
    l1->add_option("--a", l1_a)->capture_default_str();
    l1->add_option("--b", l1_b)->capture_default_str();
    l1->add_option("--lambda-sq", l1_lsq)->capture_default_str();
    l1->add_option("--t", l1_t)->capture_default_str();
    l1->add_option("--jmin", l1_jmin)->capture_default_str();
    l1->add_option("--jmax", l1_jmax)->capture_default_str();
    l1->callback([&] {
        action = [&] {
            const auto rows = limit1_scan(l1_a, l1_b, l1_lsq, l1_t, limit1_c_values(l1_lsq, l1_jmin, l1_jmax));
            Csv csv{"c", "A", "B", "delta", "exp1", "exp2", "addendum1", "log_addendum1", "addendum2",
                    "log_addendum2", "flag"};
            for (const auto& r : rows)
                csv.row(r.c, r.A, r.B, r.delta, r.exp_first, r.exp_second, r.first.value, r.first.log.log_abs,
                        r.second.value, r.second.log.log_abs, to_string(r.flag));
            return Outcome{csv.str(), std::to_string(rows.size()) + " rows"};
        };
    });

    // limit2
    auto* l2 = app.add_subcommand("limit2", "c_k = 1/lambda_k^2 + gamma/lambda_k^3");
    std::vector<std::string> l2_L{"pi"};
    double l2_a = 1.0, l2_b = 1.0, l2_gamma = 1.0, l2_t = 0.1, l2_bound = 1e3;
    std::size_t l2_kmin = 4, l2_kmax = 40;
    l2->add_option("--L", l2_L)->capture_default_str();
    l2->add_option("--a", l2_a)->capture_default_str();
    l2->add_option("--b", l2_b)->capture_default_str();
    l2->add_option("--gamma", l2_gamma)->capture_default_str();
    l2->add_option("--t", l2_t)->capture_default_str();
    l2->add_option("--bound", l2_bound)->capture_default_str();
    l2->add_option("--kmin", l2_kmin)->capture_default_str();
    l2->add_option("--kmax", l2_kmax)->capture_default_str();
    l2->callback([&] {
        action = [&] {
            BasisDescriptor basis;
            for (const auto& s : l2_L) basis.lengths.push_back(parse_length(s));
            basis.truncation = l2_kmax;
            validate(basis);
            const auto res = limit2_scan_auto_gamma(l2_a, l2_b, l2_gamma, box_modes(basis), l2_kmin, l2_kmax, l2_t,
                                                    l2_bound);
            Csv csv{"k", "c", "coeff1", "exp1", "coeff2", "exp2", "value", "logvalue", "flag"};
            for (const auto& r : res.rows)
                csv.row(r.k, r.parameter, r.coeff_first, r.exp_first, r.coeff_second, r.exp_second, r.value.value,
                        r.value.log.log_abs, to_string(r.flag));
            std::string summary = "gamma " + format_double(res.gamma) + ", growth fit " +
                                  format_double(res.growth_exponent_fit) + ", coefficient fit " +
                                  format_double(res.coefficient_exponent_fit) + ", first k over bound " +
                                  (res.first_k_exceeding ? std::to_string(*res.first_k_exceeding) : "none");
            return Outcome{csv.str(), summary};
        };
    });

    // limit3
    auto* l3 = app.add_subcommand("limit3", "sigma_k = 5/k^2 with chi = 2, gamma*rho = 4");
    std::size_t l3_kmin = 1, l3_kmax = 12;
    double l3_t = 0.1;
    l3->add_option("--kmin", l3_kmin)->capture_default_str();
    l3->add_option("--kmax", l3_kmax)->capture_default_str();
    l3->add_option("--t", l3_t)->capture_default_str();
    l3->callback([&] {
        action = [&] {
            const auto res = limit3_scan(l3_kmin, l3_kmax, l3_t);
            Csv csv{"k", "sigma", "coeff1", "exp1", "coeff2", "exp2", "logvalue", "flag"};
            for (const auto& r : res.rows)
                csv.row(r.k, r.parameter, r.coeff_first, r.exp_first, r.coeff_second, r.exp_second,
                        r.value.log.log_abs, to_string(r.flag));
            std::string summary = std::string("first k with |theta| > k: ") +
                                  (res.first_k_exceeding ? std::to_string(*res.first_k_exceeding) : "none") +
                                  ", heat compatible " + (res.heat_compatible ? "yes" : "no");
            return Outcome{csv.str(), summary};
        };
    });

    // heatcmp
    auto* hc = app.add_subcommand("heatcmp", "distance to the heat solution as sigma -> 0");
    double hc_chi = kLimit3Chi, hc_gr = kLimit3GammaRho, hc_t = 0.1;
    std::size_t hc_kmin = 1, hc_kmax = 12, hc_N = 32;
    std::vector<double> hc_sigmas;
    hc->add_option("--chi", hc_chi)->capture_default_str();
    hc->add_option("--gamma-rho", hc_gr)->capture_default_str();
    hc->add_option("--t", hc_t)->capture_default_str();
    hc->add_option("--kmin", hc_kmin)->capture_default_str();
    hc->add_option("--kmax", hc_kmax)->capture_default_str();
    hc->add_option("--N", hc_N, "modes of (0, pi)")->capture_default_str();
    hc->add_option("--sigma", hc_sigmas, "explicit sigma values (default 5/k^2)")->delimiter(',');
    hc->callback([&] {
        action = [&] {
            const auto basis = BasisDescriptor::interval(kPi, hc_N);
            std::vector<double> c0(hc_N), c1(hc_N);
            for (std::size_t n = 1; n <= hc_N; ++n) {
                const auto d = limit3_initial_data(n);
                c0[n - 1] = d.alpha;
                c1[n - 1] = d.beta;
            }
            std::vector<double> sigmas = hc_sigmas;
            if (sigmas.empty())
                for (std::size_t k = hc_kmin; k <= hc_kmax; ++k) sigmas.push_back(limit3_sigma(k));
            PhysicalParameters phys{hc_chi, 1.0, hc_gr, CoefficientMap::m2};
            const auto rows = heat_comparison(phys, sigmas, Field::from_coefficients(basis, c0),
                                              Field::from_coefficients(basis, c1), hc_t);
            Csv csv{"sigma", "distance", "logdistance", "flag"};
            for (const auto& r : rows) csv.row(r.sigma, r.distance, r.log_distance, to_string(r.flag));
            return Outcome{csv.str(), std::to_string(rows.size()) + " rows"};
        };
    });

    // propagation
    auto* pr = app.add_subcommand("propagation", "boundary burst reaching an interior subregion");
    double pr_a = 1.0, pr_b = 1.0, pr_c = 0.5;
    PropagationConfig pr_cfg;
    std::string pr_L = "pi";
    double pr_g0 = 1.0, pr_g1 = 0.0;
    int pr_jmin = 1, pr_jmax = 12;
    pr->add_option("--a", pr_a)->capture_default_str();
    pr->add_option("--b", pr_b)->capture_default_str();
    pr->add_option("--c", pr_c)->capture_default_str();
    pr->add_option("--L", pr_L)->capture_default_str();
    pr->add_option("--N", pr_cfg.truncation)->capture_default_str();
    pr->add_option("--T", pr_cfg.horizon)->capture_default_str();
    pr->add_option("--lo", pr_cfg.sub_lo)->capture_default_str();
    pr->add_option("--hi", pr_cfg.sub_hi)->capture_default_str();
    pr->add_option("--g0", pr_g0)->capture_default_str();
    pr->add_option("--g1", pr_g1)->capture_default_str();
    pr->add_option("--jmin", pr_jmin, "n = 2^j")->capture_default_str();
    pr->add_option("--jmax", pr_jmax)->capture_default_str();
    pr->callback([&] {
        action = [&] {
            pr_cfg.length = parse_length(pr_L);
            pr_cfg.profile = DirichletDatum::interval(pr_g0, pr_g1);
            std::vector<double> ns;
            for (int j = pr_jmin; j <= pr_jmax; ++j) ns.push_back(std::ldexp(1.0, j));
            const auto res = propagation_burst(ParameterSet::from_coefficients(pr_a, pr_b, pr_c), pr_cfg, ns);
            Csv csv{"n", "mass", "target", "ratio"};
            for (const auto& r : res.rows) csv.row(r.n, r.mass_in_subregion, r.target_mass, r.ratio);
            std::string summary = "N(T) " + (res.threshold_n ? format_double(*res.threshold_n) : std::string("none"));
            return Outcome{csv.str(), summary};
        };
    });

    // wholeline
    auto* wl = app.add_subcommand("wholeline", "Fourier-mode scan near lambda = 1/sqrt(c)");
    double wl_a = 1.0, wl_b = 1.0, wl_c = 0.5, wl_t = 1.0, wl_w1 = 1.0;
    int wl_jmax = 20;
    std::string wl_side = "below";
    wl->add_option("--a", wl_a)->capture_default_str();
    wl->add_option("--b", wl_b)->capture_default_str();
    wl->add_option("--c", wl_c)->capture_default_str();
    wl->add_option("--t", wl_t)->capture_default_str();
    wl->add_option("--w1", wl_w1)->capture_default_str();
    wl->add_option("--jmax", wl_jmax)->capture_default_str();
    wl->add_option("--side", wl_side)->check(CLI::IsMember({"below", "above"}))->capture_default_str();
    wl->callback([&] {
        action = [&] {
            const auto rows = whole_line_scan(wl_a, wl_b, wl_c, wl_t, wl_w1, wl_jmax,
                                              wl_side == "below" ? ScanSide::below : ScanSide::above);
            Csv csv{"j", "lambda", "abs_first", "log_abs_first", "abs_second", "log_abs_second", "flag"};
            for (const auto& r : rows)
                csv.row(r.j, r.lambda, std::abs(r.mode.first), r.mode.log_abs_first, std::abs(r.mode.second),
                        r.mode.log_abs_second, to_string(r.mode.saturated ? RowFlag::saturated : RowFlag::ok));
            return Outcome{csv.str(), std::to_string(rows.size()) + " rows"};
        };
    });

    // verify
    auto* ve = app.add_subcommand("verify", "seeded closed-form vs ODE oracle property run");
    std::uint64_t ve_seed = 1;
    std::size_t ve_count = 20;
    ve->add_option("--seed", ve_seed)->capture_default_str();
    ve->add_option("--count", ve_count)->capture_default_str();
    ve->callback([&] {
        action = [&] {
            std::mt19937_64 rng(ve_seed);
            std::uniform_real_distribution<double> coef(0.2, 3.0), cdist(0.01, 2.0), init(-1.0, 1.0);
            std::uniform_int_distribution<int> mode(1, 6);
            Csv csv{"draw", "a", "b", "c", "lambda_sq", "regime", "max_rel_error", "flag"};
            std::size_t failures = 0;
            for (std::size_t i = 0; i < ve_count; ++i) {
                double a, b, c, lsq;
                do {
                    a = coef(rng);
                    b = coef(rng);
                    c = cdist(rng);
                    const int n = mode(rng);
                    lsq = static_cast<double>(n * n);
                } while (std::abs(1.0 - c * lsq) < 1e-2);
                const ModalInitialData d{init(rng), init(rng)};
                const ParameterSet p = ParameterSet::from_coefficients(a, b, c);
                const ModalSolution sol = solve_mode(p, lsq, d);
                const ModeEquation eq = ModeEquation::from(p, lsq);
                const auto traj = oracle::integrate_mode(oracle::OdeProblem{eq.leading, eq.damping, eq.stiffness, d, 1.0},
                                                         1e-12, 1e-14);
                double sup = 0.0, worst = 0.0;
                for (int s = 0; s <= 20; ++s) sup = std::max(sup, std::abs(traj(s / 20.0)[0]));
                for (int s = 0; s <= 20; ++s) {
                    const double tt = s / 20.0;
                    worst = std::max(worst, std::abs(eval_mode(sol, tt).value - traj(tt)[0]) / std::max(sup, 1e-300));
                }
                const auto regime = characteristic_roots(eq).regime;
                const char* rname = regime == RootRegime::real_distinct ? "real"
                                    : regime == RootRegime::complex_pair ? "complex"
                                                                          : "double";
                const bool ok = worst <= 1e-8;
                if (!ok) ++failures;
                csv.row(i + 1, a, b, c, lsq, rname, worst, ok ? "ok" : "fail");
            }
            return Outcome{csv.str(), std::to_string(ve_count - failures) + "/" + std::to_string(ve_count) +
                                          " draws within 1e-8"};
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    Outcome result;
    try {
        result = action();
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnsolvableMode& e) {
        err << "unsolvable mode " << e.mode_index() << ": " << e.what() << '\n';
        return kUnsolvable;
    } catch (const ExceptionalParameter& e) {
        err << "exceptional parameter " << format_double(e.value()) << " (nearest " << format_double(e.nearest())
            << "): " << e.what() << '\n';
        return kExceptional;
    } catch (const ConfigurationError& e) {
        err << "exceptional configuration: " << e.what() << '\n';
        return kExceptional;
    } catch (const SingularParameter& e) {
        err << "singular parameter: " << e.what() << '\n';
        return kExceptional;
    } catch (const DiscreteExceptional& e) {
        err << "exceptional parameter: " << e.what() << '\n';
        return kExceptional;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    if (out_path.empty()) {
        out << result.csv;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "cannot open " << out_path << '\n';
            return kUsage;
        }
        f << result.csv;
    }
    err << result.summary << '\n';
    return kSuccess;
}

}  // namespace cattaneo::cli
