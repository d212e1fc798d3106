#include "cattaneo/modal.hpp"

#include "cattaneo/errors.hpp"
#include "cattaneo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cattaneo {

namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

// Discriminants within this fraction of the coefficient scale are treated as
// a double root; the distinct-root coefficients lose ~eps/δ otherwise.
constexpr double kDoubleRootGate = 1e-10;

}  // namespace

ParameterSet ParameterSet::from_coefficients(double a, double b, double c) {
    if (!positive_finite(a) || !positive_finite(b) || !positive_finite(c))
        throw InvalidArgument("ParameterSet: a, b, c must be positive and finite");
    return ParameterSet{a, b, c, std::nullopt};
}

ParameterSet ParameterSet::from_physical_m1(double chi, double sigma, double gamma_rho) {
    if (!positive_finite(chi) || !positive_finite(sigma) || !positive_finite(gamma_rho))
        throw InvalidArgument("ParameterSet: chi, sigma, gamma_rho must be positive and finite");
    ParameterSet p = from_coefficients(chi / sigma, chi * chi / (sigma * gamma_rho), sigma / gamma_rho);
    p.physical = PhysicalParameters{chi, sigma, gamma_rho, CoefficientMap::m1};
    return p;
}

ParameterSet ParameterSet::from_physical_m2(double chi, double sigma, double gamma_rho) {
    if (!positive_finite(chi) || !positive_finite(sigma) || !positive_finite(gamma_rho))
        throw InvalidArgument("ParameterSet: chi, sigma, gamma_rho must be positive and finite");
    ParameterSet p = from_coefficients(chi, chi * chi / gamma_rho, 1.0 / gamma_rho);
    p.physical = PhysicalParameters{chi, sigma, gamma_rho, CoefficientMap::m2};
    return p;
}

ParameterSet ParameterSet::effective() const {
    if (physical && physical->map == CoefficientMap::m2) {
        const double s = physical->sigma;
        return ParameterSet{a / s, b / s, s * c, physical};
    }
    return *this;
}

ModeEquation ModeEquation::from(const ParameterSet& p, double lambda_sq) {
    const ParameterSet e = p.effective();
    return ModeEquation{1.0 - e.c * lambda_sq, e.a, e.b * lambda_sq};
}

Discriminant discriminant_delta(const ModeEquation& eq) {
    const double dsq = eq.damping * eq.damping - 4.0 * eq.leading * eq.stiffness;
    return Discriminant{dsq, std::sqrt(std::abs(dsq)), dsq < 0.0};
}

Discriminant discriminant_delta(const ParameterSet& p, double lambda_sq) {
    return discriminant_delta(ModeEquation::from(p, lambda_sq));
}

double default_degenerate_tolerance(const ParameterSet& p, double lambda_sq) {
    return 1e-12 * std::max(1.0, p.effective().c * lambda_sq);
}

namespace {

struct StableRoots {
    double r_plus, r_minus;
    double lead_r_plus, lead_r_minus;  // leading·r±, without cancellation
};

// Real distinct roots of L r² + D r + S via the cancellation-free pair
// q/L and S/q. Near L → 0 one root stays finite and the other diverges.
StableRoots stable_real_roots(const ModeEquation& eq, double delta) {
    const double L = eq.leading, D = eq.damping, S = eq.stiffness;
    StableRoots r{};
    if (D >= 0.0) {
        const double q = -(D + delta) / 2.0;
        r.lead_r_minus = q;
        r.r_minus = q / L;
        r.r_plus = S / q;
        r.lead_r_plus = L * S / q;
    } else {
        const double q = (delta - D) / 2.0;
        r.lead_r_plus = q;
        r.r_plus = q / L;
        r.r_minus = S / q;
        r.lead_r_minus = L * S / q;
    }
    return r;
}

RootRegime classify(const ModeEquation& eq, const Discriminant& disc) {
    const double scale = std::max(eq.damping * eq.damping, std::abs(4.0 * eq.leading * eq.stiffness));
    if (std::abs(disc.delta_sq) <= kDoubleRootGate * scale) return RootRegime::double_root;
    return disc.imaginary ? RootRegime::complex_pair : RootRegime::real_distinct;
}

}  // namespace

RootClassification characteristic_roots(const ModeEquation& eq, double tol_degenerate) {
    if (!(std::abs(eq.leading) > tol_degenerate) || eq.leading == 0.0)
        throw DegenerateMode("characteristic_roots: leading coefficient vanishes; use the first-order branch");
    RootClassification rc;
    rc.delta = discriminant_delta(eq);
    rc.regime = classify(eq, rc.delta);
    switch (rc.regime) {
    case RootRegime::real_distinct: {
        const StableRoots r = stable_real_roots(eq, rc.delta.magnitude);
        rc.r_plus = r.r_plus;
        rc.r_minus = r.r_minus;
        break;
    }
    case RootRegime::double_root:
        rc.r_plus = rc.r_minus = -eq.damping / (2.0 * eq.leading);
        break;
    case RootRegime::complex_pair:
        rc.r_plus = rc.r_minus = -eq.damping / (2.0 * eq.leading);
        rc.imag = rc.delta.magnitude / (2.0 * std::abs(eq.leading));
        break;
    }
    return rc;
}

RootClassification characteristic_roots(const ParameterSet& p, double lambda_sq) {
    return characteristic_roots(ModeEquation::from(p, lambda_sq), default_degenerate_tolerance(p, lambda_sq));
}

CompatibilityReport check_compatibility(double a, double b, double lambda_sq, ModalInitialData init,
                                        double tolerance) {
    CompatibilityReport rep;
    rep.required_ratio = -(b / a) * lambda_sq;
    rep.tolerance_used = tolerance;
    if (init.alpha == 0.0) {
        rep.satisfied = (init.beta == 0.0);
        return rep;
    }
    rep.actual_ratio = init.beta / init.alpha;
    rep.satisfied = std::abs(*rep.actual_ratio - rep.required_ratio) <=
                    tolerance * std::max(1.0, std::abs(rep.required_ratio));
    return rep;
}

ModalSolution solve_second_order(const ModeEquation& eq, ModalInitialData init) {
    const RootClassification rc = characteristic_roots(eq, 0.0);
    const double alpha = init.alpha, beta = init.beta;
    switch (rc.regime) {
    case RootRegime::real_distinct: {
        const double delta = rc.delta.magnitude;
        const StableRoots r = stable_real_roots(eq, delta);
        // A + B = α and A·r₊ + B·r₋ = β, scaled by the leading coefficient.
        const double A = (eq.leading * beta - alpha * r.lead_r_minus) / delta;
        const double B = (alpha * r.lead_r_plus - eq.leading * beta) / delta;
        return ModalSolution{RealDistinct{A, B, r.r_plus, r.r_minus}, init};
    }
    case RootRegime::double_root: {
        const double r = rc.r_plus;
        return ModalSolution{DoubleRoot{alpha, beta - r * alpha, r}, init};
    }
    case RootRegime::complex_pair: {
        const double mu = rc.r_plus, omega = rc.imag;
        const double s = (beta - mu * alpha) / omega;
        const double amplitude = std::hypot(alpha, s);
        const double phase = amplitude == 0.0 ? 0.0 : std::atan2(-s, alpha);
        return ModalSolution{ComplexPair{amplitude, mu, omega, phase}, init};
    }
    }
    return {};
}

ModalSolution solve_mode(const ParameterSet& p, double lambda_sq, ModalInitialData init,
                         std::optional<double> tol_degenerate) {
    if (!std::isfinite(lambda_sq) || !std::isfinite(init.alpha) || !std::isfinite(init.beta))
        throw InvalidArgument("solve_mode: non-finite input");
    const ParameterSet e = p.effective();
    const ModeEquation eq = ModeEquation::from(p, lambda_sq);
    const double tol = tol_degenerate.value_or(default_degenerate_tolerance(p, lambda_sq));
    if (std::abs(eq.leading) > tol) return solve_second_order(eq, init);

    const CompatibilityReport rep = check_compatibility(e.a, e.b, lambda_sq, init);
    if (!rep.satisfied)
        throw UnsolvableMode("solve_mode: c = 1/λ² and the data violate β/α = −(b/a)λ²", rep);
    return ModalSolution{FirstOrder{init.alpha, -e.b * lambda_sq / e.a}, init};
}

namespace {

struct Term {
    double coeff;
    double exponent;  // already multiplied by t
};

// Σ coeff·e^{exponent} in log form, robust to overflow of individual terms.
LogValue log_sum(std::initializer_list<Term> terms) {
    double m = -std::numeric_limits<double>::infinity();
    for (const Term& t : terms)
        if (t.coeff != 0.0) m = std::max(m, std::log(std::abs(t.coeff)) + t.exponent);
    if (!std::isfinite(m)) return LogValue{-std::numeric_limits<double>::infinity(), 0};
    double s = 0.0;
    for (const Term& t : terms)
        if (t.coeff != 0.0) s += std::copysign(std::exp(std::log(std::abs(t.coeff)) + t.exponent - m), t.coeff);
    if (s == 0.0) return LogValue{-std::numeric_limits<double>::infinity(), 0};
    return LogValue{m + std::log(std::abs(s)), s > 0.0 ? 1 : -1};
}

double signed_inf(double sign_source) {
    return std::copysign(std::numeric_limits<double>::infinity(), sign_source);
}

}  // namespace

ModeValue eval_mode(const ModalSolution& sol, double t) {
    if (t == 0.0) return ModeValue{sol.init.alpha, sol.init.beta, false};

    if (const auto* f = std::get_if<RealDistinct>(&sol.form)) {
        const double x1 = f->r_plus * t, x2 = f->r_minus * t;
        const bool big1 = f->A != 0.0 && x1 > kSaturationExponent;
        const bool big2 = f->B != 0.0 && x2 > kSaturationExponent;
        if (big1 || big2) {
            // Dominant term decides the sign.
            const bool first = big1 && (!big2 || x1 + std::log(std::abs(f->A)) >= x2 + std::log(std::abs(f->B)));
            const double coeff = first ? f->A : f->B;
            const double rate = first ? f->r_plus : f->r_minus;
            return ModeValue{signed_inf(coeff), signed_inf(coeff * rate), true};
        }
        const double e1 = f->A == 0.0 ? 0.0 : f->A * std::exp(x1);
        const double e2 = f->B == 0.0 ? 0.0 : f->B * std::exp(x2);
        return ModeValue{e1 + e2, f->r_plus * e1 + f->r_minus * e2, false};
    }
    if (const auto* f = std::get_if<ComplexPair>(&sol.form)) {
        const double x = f->decay * t;
        const double arg = f->frequency * t + f->phase;
        const double cs = std::cos(arg), sn = std::sin(arg);
        if (x > kSaturationExponent && f->amplitude != 0.0)
            return ModeValue{signed_inf(cs), signed_inf(f->decay * cs - f->frequency * sn), true};
        const double env = f->amplitude * std::exp(x);
        return ModeValue{env * cs, env * (f->decay * cs - f->frequency * sn), false};
    }
    if (const auto* f = std::get_if<DoubleRoot>(&sol.form)) {
        const double x = f->r * t;
        const double poly = f->A + f->B * t;
        if (x > kSaturationExponent && poly != 0.0)
            return ModeValue{signed_inf(poly), signed_inf(f->B + f->r * poly), true};
        const double e = std::exp(x);
        return ModeValue{poly * e, (f->B + f->r * poly) * e, false};
    }
    const auto& f = std::get<FirstOrder>(sol.form);
    const double x = f.rate * t;
    if (x > kSaturationExponent && f.alpha != 0.0)
        return ModeValue{signed_inf(f.alpha), signed_inf(f.alpha * f.rate), true};
    const double v = f.alpha * std::exp(x);
    return ModeValue{v, f.rate * v, false};
}

LogValue eval_mode_log(const ModalSolution& sol, double t) {
    if (t == 0.0) return log_sum({Term{sol.init.alpha, 0.0}});
    if (const auto* f = std::get_if<RealDistinct>(&sol.form))
        return log_sum({Term{f->A, f->r_plus * t}, Term{f->B, f->r_minus * t}});
    if (const auto* f = std::get_if<ComplexPair>(&sol.form))
        return log_sum({Term{f->amplitude * std::cos(f->frequency * t + f->phase), f->decay * t}});
    if (const auto* f = std::get_if<DoubleRoot>(&sol.form))
        return log_sum({Term{f->A + f->B * t, f->r * t}});
    const auto& f = std::get<FirstOrder>(sol.form);
    return log_sum({Term{f.alpha, f.rate * t}});
}

ReferenceSolution solve_mode_reference(ReferenceKind kind, double a, double b, double tau,
                                       double lambda_sq, ModalInitialData init) {
    if (!positive_finite(a) || !positive_finite(b))
        throw InvalidArgument("solve_mode_reference: a and b must be positive");
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw InvalidArgument("solve_mode_reference: tau must be nonnegative");
    if (kind == ReferenceKind::heat) {
        ReferenceSolution out{ModalSolution{FirstOrder{init.alpha, -(b / a) * lambda_sq}, init},
                              check_compatibility(a, b, lambda_sq, init)};
        // The heat equation fixes θ′(0) from θ(0); β is only reported.
        out.solution.init.beta = -(b / a) * lambda_sq * init.alpha;
        return out;
    }
    if (tau == 0.0)
        throw InvalidArgument("solve_mode_reference: classical Cattaneo needs tau > 0");
    return ReferenceSolution{solve_second_order(ModeEquation{tau, a, b * lambda_sq}, init), std::nullopt};
}

}  // namespace cattaneo
