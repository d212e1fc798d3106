#include "cattaneo/experiments.hpp"

#include "cattaneo/errors.hpp"
#include "cattaneo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace cattaneo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

Addendum from_log(LogValue lv) {
    Addendum out;
    out.log = lv;
    if (lv.sign == 0) return out;
    if (lv.log_abs > kSaturationExponent) {
        out.saturated = true;
        out.value = lv.sign * kInf;
    } else {
        out.value = lv.sign * std::exp(lv.log_abs);
    }
    return out;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

RowFlag flag_of(const Addendum& v) { return v.saturated ? RowFlag::saturated : RowFlag::ok; }

}  // namespace

std::string_view to_string(RowFlag flag) {
    switch (flag) {
        case RowFlag::ok: return "ok";
        case RowFlag::saturated: return "saturated";
        case RowFlag::exceptional: return "exceptional";
    }
    return "ok";
}

Addendum make_addendum(double coeff, double exponent_times_t) {
    if (coeff == 0.0) return Addendum{0.0, LogValue{-kInf, 0}, false};
    return from_log(LogValue{std::log(std::abs(coeff)) + exponent_times_t, coeff > 0.0 ? 1 : -1});
}

// ---------------------------------------------------------------------------

std::vector<double> limit1_c_values(double lambda_sq, int j_min, int j_max) {
    if (!positive_finite(lambda_sq) || j_min > j_max)
        throw InvalidArgument("limit1_c_values: need lambda_sq > 0 and j_min <= j_max");
    const double centre = 1.0 / lambda_sq;
    std::vector<double> out;
    for (int j = j_min; j <= j_max; ++j) out.push_back(centre - std::pow(10.0, -j));
    for (int j = j_min; j <= j_max; ++j) out.push_back(centre + std::pow(10.0, -j));
    return out;
}

std::vector<Limit1Row> limit1_scan(double a, double b, double lambda_sq, double t,
                                   const std::vector<double>& c_values) {
    if (!positive_finite(a) || !positive_finite(b) || !positive_finite(lambda_sq) || !positive_finite(t))
        throw InvalidArgument("limit1_scan: a, b, lambda_sq and t must be positive");
    const ModalInitialData init{-a / (b * lambda_sq), 1.0};
    const double exceptional = 1.0 / lambda_sq;

    std::vector<Limit1Row> rows;
    rows.reserve(c_values.size());
    for (double c : c_values) {
        Limit1Row row;
        row.c = c;
        if (!positive_finite(c)) {
            row.flag = RowFlag::exceptional;
            row.error = "c must be positive";
            rows.push_back(row);
            continue;
        }
        if (std::abs(c - exceptional) <= exceptional_gate(c, exceptional)) {
            row.flag = RowFlag::exceptional;
            row.error = "c = 1/lambda^2 is exceptional";
            rows.push_back(row);
            continue;
        }
        const ModalSolution sol = solve_mode(ParameterSet::from_coefficients(a, b, c), lambda_sq, init);
        const auto* f = std::get_if<RealDistinct>(&sol.form);
        if (f == nullptr)
            throw InvalidArgument("limit1_scan: c = " + std::to_string(c) + " gives non-real roots");
        row.A = f->A;
        row.B = f->B;
        row.delta = discriminant_delta(ParameterSet::from_coefficients(a, b, c), lambda_sq).magnitude;
        row.exp_first = f->r_plus;
        row.exp_second = f->r_minus;
        row.first = make_addendum(f->A, f->r_plus * t);
        row.second = make_addendum(f->B, f->r_minus * t);
        row.flag = (row.first.saturated || row.second.saturated) ? RowFlag::saturated : RowFlag::ok;
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------

Limit2Result limit2_scan(double a, double b, double gamma, const std::vector<EigenMode>& modes,
                         std::size_t k_first, std::size_t k_last, double t, double bound) {
    if (!positive_finite(a) || !positive_finite(b) || !positive_finite(gamma) || !positive_finite(t) ||
        !positive_finite(bound))
        throw InvalidArgument("limit2_scan: a, b, gamma, t and bound must be positive");
    if (k_first == 0 || k_first > k_last || k_last > modes.size())
        throw InvalidArgument("limit2_scan: k range must lie within the enumerated modes");

    const ExceptionalSet e = exceptional_for_c(modes);
    Limit2Result out;
    out.gamma = gamma;
    out.bound = bound;
    const double log_bound = std::log(bound);

    std::vector<double> log_k, log_exp, log_coeff;
    for (std::size_t k = k_first; k <= k_last; ++k) {
        const double lsq = modes[k - 1].lambda_sq;
        const double lam = std::sqrt(lsq);
        const double c = 1.0 / lsq + gamma / (lsq * lam);
        const Nearest near = distance_to_exceptional(c, e);
        if (near.distance <= exceptional_gate(c, near.nearest))
            throw ConfigurationError("limit2_scan: c_k collides with the exceptional set at k = " +
                                     std::to_string(k));

        const double kd = static_cast<double>(k);
        const ModalSolution sol =
            solve_mode(ParameterSet::from_coefficients(a, b, c), lsq, ModalInitialData{0.0, 1.0 / kd});
        const auto& f = std::get<RealDistinct>(sol.form);

        LimitScanRow row;
        row.k = k;
        row.parameter = c;
        row.coeff_first = f.A;
        row.coeff_second = f.B;
        row.exp_first = f.r_plus;
        row.exp_second = f.r_minus;
        row.value = from_log(eval_mode_log(sol, t));
        row.log_lower_bound = row.value.log.log_abs;
        row.lower_bound_norm = std::abs(row.value.value);
        row.flag = flag_of(row.value);
        if (!out.first_k_exceeding && row.log_lower_bound > log_bound) out.first_k_exceeding = k;

        log_k.push_back(std::log(kd));
        log_exp.push_back(std::log(f.r_minus * t));
        log_coeff.push_back(std::log(std::abs(f.A)));
        out.rows.push_back(row);
    }
    if (log_k.size() >= 2) {
        out.growth_exponent_fit = slope(log_k, log_exp);
        out.coefficient_exponent_fit = slope(log_k, log_coeff);
    } else {
        out.growth_exponent_fit = std::numeric_limits<double>::quiet_NaN();
        out.coefficient_exponent_fit = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

Limit2Result limit2_scan_auto_gamma(double a, double b, double gamma, const std::vector<EigenMode>& modes,
                                    std::size_t k_first, std::size_t k_last, double t, double bound,
                                    int max_retries) {
    for (int attempt = 0;; ++attempt) {
        try {
            return limit2_scan(a, b, gamma, modes, k_first, k_last, t, bound);
        } catch (const ConfigurationError&) {
            if (attempt >= max_retries) throw;
            gamma += 1e-3;
        }
    }
}

// ---------------------------------------------------------------------------

double limit3_sigma(std::size_t k) {
    if (k == 0) throw InvalidArgument("limit3_sigma: k must be positive");
    const double kd = static_cast<double>(k);
    return 5.0 / (kd * kd);
}

ModalInitialData limit3_initial_data(std::size_t n) {
    if (n == 0) throw InvalidArgument("limit3_initial_data: n must be positive");
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    return ModalInitialData{1.0 / (n2 * n2), -1.0 / (2.0 * n2)};
}

bool limit3_heat_compatible(std::size_t n) {
    if (n == 0 || n > 30000) throw InvalidArgument("limit3_heat_compatible: n must lie in 1..30000");
    // θ₀ = 1/n⁴, θ₁ = −1/(2n²); compare 2θ₁ and −n²θ₀ as fractions.
    const std::int64_t n2 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n);
    const std::int64_t lhs_num = -2, lhs_den = 2 * n2;
    const std::int64_t rhs_num = -n2, rhs_den = n2 * n2;
    return lhs_num * rhs_den == rhs_num * lhs_den;
}

Limit3Result limit3_scan(std::size_t k_first, std::size_t k_last, double t) {
    if (!positive_finite(t)) throw InvalidArgument("limit3_scan: t must be positive");
    if (k_first == 0 || k_first > k_last) throw InvalidArgument("limit3_scan: invalid k range");

    Limit3Result out;
    for (std::size_t k = k_first; k <= k_last; ++k) {
        const double kd = static_cast<double>(k);
        const double sigma = limit3_sigma(k);
        const ParameterSet p = ParameterSet::from_physical_m2(kLimit3Chi, sigma, kLimit3GammaRho);
        const ModalSolution sol = solve_mode(p, kd * kd, limit3_initial_data(k));
        const auto& f = std::get<RealDistinct>(sol.form);

        LimitScanRow row;
        row.k = k;
        row.parameter = sigma;
        const bool plus_first = f.r_plus >= f.r_minus;
        row.coeff_first = plus_first ? f.A : f.B;
        row.exp_first = plus_first ? f.r_plus : f.r_minus;
        row.coeff_second = plus_first ? f.B : f.A;
        row.exp_second = plus_first ? f.r_minus : f.r_plus;
        row.value = from_log(eval_mode_log(sol, t));
        row.log_lower_bound = row.value.log.log_abs;
        row.lower_bound_norm = std::abs(row.value.value);
        row.flag = flag_of(row.value);

        if (!out.first_k_exceeding && row.log_lower_bound > std::log(kd)) out.first_k_exceeding = k;
        out.heat_compatible = out.heat_compatible && limit3_heat_compatible(k);
        const double k4 = kd * kd * kd * kd;
        const double second = std::abs(row.coeff_second) * std::exp(row.exp_second * t);
        out.second_addendum_bounded = out.second_addendum_bounded && second < 2.0 / k4;
        out.rows.push_back(row);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<HeatComparisonRow> heat_comparison(const PhysicalParameters& physical,
                                               const std::vector<double>& sigmas, const Field& theta0,
                                               const Field& theta1, double t) {
    if (!positive_finite(physical.chi) || !positive_finite(physical.gamma_rho))
        throw InvalidArgument("heat_comparison: chi and gamma_rho must be positive");
    if (!positive_finite(t)) throw InvalidArgument("heat_comparison: t must be positive");
    if (!(theta0.basis == theta1.basis)) throw InvalidArgument("heat_comparison: fields use different bases");

    const auto modes = box_modes(theta0.basis);
    const ExceptionalSet z = exceptional_for_sigma(modes, physical.gamma_rho);
    for (double sigma : sigmas) {
        if (!positive_finite(sigma)) throw InvalidArgument("heat_comparison: sigma must be positive");
        const Nearest near = distance_to_exceptional(sigma, z);
        if (near.distance <= exceptional_gate(sigma, near.nearest))
            throw ConfigurationError("heat_comparison: sigma = " + std::to_string(sigma) +
                                     " lies in the exceptional set");
    }

    std::vector<HeatComparisonRow> rows;
    rows.reserve(sigmas.size());
    for (double sigma : sigmas) {
        const ParameterSet p = ParameterSet::from_physical_m2(physical.chi, sigma, physical.gamma_rho);
        const double rate = p.b / p.a;

        std::vector<double> diff(modes.size(), 0.0);
        std::vector<double> log_diff(modes.size(), -kInf);
        bool saturated = false;
        for (std::size_t n = 0; n < modes.size(); ++n) {
            const ModalInitialData init{theta0.coefficients[n], theta1.coefficients[n]};
            const double heat = init.alpha * std::exp(-rate * modes[n].lambda_sq * t);
            const ModalSolution sol = solve_mode(p, modes[n].lambda_sq, init);
            const LogValue lv = eval_mode_log(sol, t);
            if (lv.sign != 0 && lv.log_abs > 600.0) {
                // |heat| ≤ |α| is negligible against the divergent mode.
                saturated = saturated || lv.log_abs > kSaturationExponent;
                log_diff[n] = lv.log_abs;
                diff[n] = lv.log_abs > kSaturationExponent ? kInf : lv.sign * std::exp(lv.log_abs);
            } else {
                const double value = lv.sign == 0 ? 0.0 : lv.sign * std::exp(lv.log_abs);
                diff[n] = value - heat;
                log_diff[n] = diff[n] == 0.0 ? -kInf : std::log(std::abs(diff[n]));
            }
        }

        HeatComparisonRow row;
        row.sigma = sigma;
        if (!saturated) {
            row.distance = field_norm(Field::from_coefficients(theta0.basis, diff));
            row.log_distance = row.distance == 0.0 ? -kInf : std::log(row.distance);
        } else {
            double m = -kInf;
            for (double l : log_diff) m = std::max(m, 2.0 * l);
            CompensatedSum s;
            for (double l : log_diff)
                if (std::isfinite(l)) s += std::exp(2.0 * l - m);
            row.log_distance = 0.5 * (m + std::log(s.value()));
            row.distance = kInf;
            row.flag = RowFlag::saturated;
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------

WholeLineValue whole_line_mode(double a, double b, double c, double lambda, double t, double w1_hat) {
    if (!positive_finite(a) || !positive_finite(b) || !positive_finite(c) || !positive_finite(t) ||
        !std::isfinite(lambda) || !std::isfinite(w1_hat))
        throw InvalidArgument("whole_line_mode: a, b, c, t must be positive and lambda, w1_hat finite");
    using cplx = std::complex<double>;
    const double lsq = lambda * lambda;
    const double lead = 1.0 - c * lsq;
    if (std::abs(lead) <= 1e-14 * std::max(1.0, c * lsq))
        throw SingularParameter("whole_line_mode: 1 - c*lambda^2 vanishes");
    const cplx delta = std::sqrt(cplx(a * a - 4.0 * b * lsq * lead, 0.0));
    if (std::abs(delta) <= 1e-14 * a) throw SingularParameter("whole_line_mode: double root, A(lambda) is singular");

    // r₊ = −2bλ²/(a + δ) avoids cancellation; Re δ ≥ 0.
    const cplx r_plus = -2.0 * b * lsq / (a + delta);
    const cplx r_minus = -(a + delta) / (2.0 * lead);
    const cplx amp = lead / delta * w1_hat;

    WholeLineValue out;
    const auto term = [&](cplx coeff, cplx r, double& log_abs) {
        if (coeff == cplx(0.0, 0.0)) {
            log_abs = -kInf;
            return cplx(0.0, 0.0);
        }
        log_abs = std::log(std::abs(coeff)) + r.real() * t;
        if (log_abs > kSaturationExponent) {
            out.saturated = true;
            return cplx(kInf, 0.0);
        }
        if (coeff.imag() == 0.0 && r.imag() == 0.0) return cplx(std::copysign(std::exp(log_abs), coeff.real()), 0.0);
        return std::polar(std::exp(log_abs), std::arg(coeff) + r.imag() * t);
    };
    out.first = term(amp, r_plus, out.log_abs_first);
    out.second = term(-amp, r_minus, out.log_abs_second);
    out.value = out.saturated ? cplx(kInf, 0.0) : out.first + out.second;
    return out;
}

std::vector<WholeLineRow> whole_line_scan(double a, double b, double c, double t, double w1_hat, int j_max,
                                          ScanSide side) {
    if (!positive_finite(c)) throw InvalidArgument("whole_line_scan: c must be positive");
    if (j_max < 1) throw InvalidArgument("whole_line_scan: j_max must be at least 1");
    const double centre = 1.0 / std::sqrt(c);
    std::vector<WholeLineRow> rows;
    for (int j = 1; j <= j_max; ++j) {
        const double step = std::ldexp(1.0, -j);
        const double lambda = side == ScanSide::below ? centre - step : centre + step;
        rows.push_back(WholeLineRow{j, lambda, whole_line_mode(a, b, c, lambda, t, w1_hat)});
    }
    return rows;
}

// ---------------------------------------------------------------------------

PropagationResult propagation_burst(const ParameterSet& p, const PropagationConfig& config,
                                    const std::vector<double>& n_values) {
    if (!positive_finite(config.horizon)) throw InvalidArgument("propagation_burst: T must be positive");
    if (!(config.sub_lo > 0.0 && config.sub_lo < config.sub_hi && config.sub_hi < config.length))
        throw InvalidArgument("propagation_burst: subregion must lie strictly inside the interval");
    if (config.quadrature_points < 3 || config.quadrature_points % 2 == 0)
        throw InvalidArgument("propagation_burst: quadrature needs an odd number (>= 3) of points");

    const BasisDescriptor basis = BasisDescriptor::interval(config.length, config.truncation);
    const auto blocks = build_blocks(p, basis, config.profile);
    if (std::all_of(blocks.begin(), blocks.end(), [](const SemigroupBlock& b) { return b.d == 0.0; }))
        throw InvalidArgument("propagation_burst: the boundary lift of f0 is zero");

    const std::size_t m = config.quadrature_points;
    const double hx = (config.sub_hi - config.sub_lo) / static_cast<double>(m - 1);
    std::vector<double> xs(m);
    for (std::size_t i = 0; i < m; ++i) xs[i] = config.sub_lo + hx * static_cast<double>(i);
    const auto w = simpson_weights(m, hx);

    const DirichletMap dmap =
        dirichlet_map_interval(p.effective().c, config.length, config.profile, config.truncation).map;
    CompensatedSum target_sum;
    for (std::size_t i = 0; i < m; ++i) {
        const double v = dmap.value(xs[i]);
        target_sum += w[i] * v * v;
    }
    const double target = target_sum.value();

    const FieldPair rest{Field::zero(basis), Field::zero(basis)};
    const double quad_step = config.quad_step > 0.0 ? config.quad_step : 1e-3 * config.horizon;

    PropagationResult out;
    for (double n : n_values) {
        if (!positive_finite(n)) throw InvalidArgument("propagation_burst: n must be positive");
        const BoundarySignal signal{config.profile, TimeProfile::burst(n, config.horizon), config.horizon};
        out.derivative_check = out.derivative_check && signal.time.first(config.horizon) == 1.0;

        const FieldPair state = evolve_with_boundary(blocks, rest, signal, config.horizon, quad_step);
        const auto vel = reconstruct(state.theta_prime, std::span<const double>(xs));
        CompensatedSum mass;
        for (std::size_t i = 0; i < m; ++i) mass += w[i] * vel[i] * vel[i];

        PropagationRow row;
        row.n = n;
        row.mass_in_subregion = mass.value();
        row.target_mass = target;
        row.ratio = target > 0.0 ? row.mass_in_subregion / target : 0.0;
        if (!out.threshold_n && row.ratio >= 0.5) out.threshold_n = n;
        if (out.threshold_n && !out.rows.empty() && row.ratio < out.rows.back().ratio &&
            out.rows.back().ratio >= 0.5)
            out.monotone_after_crossing = false;
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace cattaneo
