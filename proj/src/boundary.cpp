#include "cattaneo/boundary.hpp"

#include "cattaneo/errors.hpp"
#include "cattaneo/numerics.hpp"
#include "cattaneo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace cattaneo {

DirichletDatum DirichletDatum::interval(double g0, double g1) {
    if (!std::isfinite(g0) || !std::isfinite(g1))
        throw InvalidArgument("DirichletDatum: boundary values must be finite");
    DirichletDatum g;
    g.faces.push_back(FaceProfile{0, false, {{{}, g0}}});
    g.faces.push_back(FaceProfile{0, true, {{{}, g1}}});
    return g;
}

namespace {

double face_value(const DirichletDatum& g, bool upper) {
    double v = 0.0;
    for (const auto& f : g.faces)
        if (f.axis == 0 && f.upper == upper)
            for (const auto& [idx, coeff] : f.coefficients)
                if (idx.empty()) v += coeff;
    return v;
}

}  // namespace

double DirichletDatum::left() const { return face_value(*this, false); }
double DirichletDatum::right() const { return face_value(*this, true); }

bool DirichletDatum::is_zero() const {
    for (const auto& f : faces)
        for (const auto& entry : f.coefficients)
            if (entry.second != 0.0) return false;
    return true;
}

TimeProfile TimeProfile::constant(double level) {
    return TimeProfile{[level](double) { return level; }, [](double) { return 0.0; },
                       [](double) { return 0.0; }};
}

TimeProfile TimeProfile::polynomial(std::vector<double> coeffs) {
    auto horner = [](const std::vector<double>& c, double t) {
        double v = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
        return v;
    };
    std::vector<double> d1, d2;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d1.push_back(static_cast<double>(i) * coeffs[i]);
    for (std::size_t i = 1; i < d1.size(); ++i) d2.push_back(static_cast<double>(i) * d1[i]);
    return TimeProfile{[=](double t) { return horner(coeffs, t); }, [=](double t) { return horner(d1, t); },
                       [=](double t) { return horner(d2, t); }};
}

TimeProfile TimeProfile::sine(double omega, double amplitude) {
    return TimeProfile{[=](double t) { return amplitude * std::sin(omega * t); },
                       [=](double t) { return amplitude * omega * std::cos(omega * t); },
                       [=](double t) { return -amplitude * omega * omega * std::sin(omega * t); }};
}

TimeProfile TimeProfile::burst(double n, double horizon) {
    return TimeProfile{[=](double t) { return std::exp(-n * (horizon - t)) / n; },
                       [=](double t) { return std::exp(-n * (horizon - t)); },
                       [=](double t) { return n * std::exp(-n * (horizon - t)); }};
}

TimeProfile TimeProfile::smoothed_step(double t0, double width) {
    return TimeProfile{[=](double t) { return 0.5 * (1.0 + std::tanh((t - t0) / width)); },
                       [=](double t) {
                           const double th = std::tanh((t - t0) / width);
                           return 0.5 * (1.0 - th * th) / width;
                       },
                       [=](double t) {
                           const double th = std::tanh((t - t0) / width);
                           return -th * (1.0 - th * th) / (width * width);
                       }};
}

double DirichletMap::value(double x) const {
    const double s = 1.0 / std::sqrt(c);
    const double den = std::sin(length * s);
    return (g0 * std::sin((length - x) * s) + g1 * std::sin(x * s)) / den;
}

double DirichletMap::second_derivative(double x) const { return -value(x) / c; }

std::vector<double> lift_coefficients(double c, const BasisDescriptor& basis, const DirichletDatum& g) {
    validate(basis);
    if (!(c > 0.0) || !std::isfinite(c))
        throw InvalidArgument("lift_coefficients: c must be positive");
    const std::size_t dim = basis.dimension();

    struct Face {
        std::size_t axis;
        bool upper;
        std::map<std::vector<int>, double> coeffs;
    };
    std::vector<Face> faces;
    for (const auto& f : g.faces) {
        if (f.axis >= dim)
            throw InvalidArgument("lift_coefficients: face axis outside the box dimension");
        Face face{f.axis, f.upper, {}};
        for (const auto& [idx, coeff] : f.coefficients) {
            if (idx.size() + 1 != dim)
                throw InvalidArgument("lift_coefficients: face multi-index must have d-1 entries");
            for (int i : idx)
                if (i < 1) throw InvalidArgument("lift_coefficients: face indices are 1-based");
            if (!std::isfinite(coeff)) throw InvalidArgument("lift_coefficients: non-finite coefficient");
            face.coeffs[idx] += coeff;
        }
        faces.push_back(std::move(face));
    }

    const auto modes = box_modes(basis);
    std::vector<double> d(modes.size(), 0.0);
    for (std::size_t n = 0; n < modes.size(); ++n) {
        const auto& m = modes[n];
        const double lead = 1.0 - c * m.lambda_sq;
        if (std::abs(lead) <= 1e-12 * std::max(1.0, c * m.lambda_sq))
            throw ExceptionalParameter("lift_coefficients: c = 1/λ² for mode " + std::to_string(m.index), c,
                                       1.0 / m.lambda_sq);
        // Σ over faces of ∫ g ∂_νφ_n; ∂_νφ_n on a face is ±√(2/L)(n_iπ/L)·φ_face.
        CompensatedSum flux;
        for (const auto& face : faces) {
            std::vector<int> rest;
            for (std::size_t j = 0; j < dim; ++j)
                if (j != face.axis) rest.push_back(m.multi_index[j]);
            const auto it = face.coeffs.find(rest);
            if (it == face.coeffs.end()) continue;
            const int ni = m.multi_index[face.axis];
            const double li = basis.lengths[face.axis];
            const double slope = std::sqrt(2.0 / li) * (ni * kPi / li);
            const double sign = face.upper ? (ni % 2 == 0 ? 1.0 : -1.0) : -1.0;
            flux += sign * slope * it->second;
        }
        d[n] = c * flux.value() / lead;
    }
    return d;
}

DirichletMapResult dirichlet_map_interval(double c, double length, const DirichletDatum& g,
                                          std::size_t truncation) {
    if (!(c > 0.0) || !std::isfinite(c) || !(length > 0.0) || !std::isfinite(length))
        throw InvalidArgument("dirichlet_map_interval: c and L must be positive");
    const double arg = length / std::sqrt(c);
    if (std::abs(std::sin(arg)) <= 1e-12) {
        const double n = std::max(1.0, std::round(arg / kPi));
        throw ExceptionalParameter("dirichlet_map_interval: sin(L/sqrt(c)) = 0, c is in the exceptional set", c,
                                   (length / (n * kPi)) * (length / (n * kPi)));
    }
    const auto basis = BasisDescriptor::interval(length, truncation);
    DirichletMapResult out{DirichletMap{c, length, g.left(), g.right()},
                           Field::from_coefficients(basis, lift_coefficients(c, basis, g))};
    return out;
}

BlockEigenvalues block_eigenvalues(const SemigroupBlock& block) {
    // μ² + hμ − k = 0
    const RootClassification rc = characteristic_roots(ModeEquation{1.0, block.h, -block.k}, 0.0);
    BlockEigenvalues ev;
    ev.regime = rc.regime;
    ev.first = std::max(rc.r_plus, rc.r_minus);
    ev.second = std::min(rc.r_plus, rc.r_minus);
    ev.imag = rc.imag;
    return ev;
}

namespace {

BlockExponential exponential_from(const BlockEigenvalues& ev, double t) {
    switch (ev.regime) {
    case RootRegime::real_distinct: {
        const double e2 = std::exp(ev.second * t);
        const double gap = ev.first - ev.second;
        const double a1 = e2 * std::expm1(gap * t) / gap;
        return BlockExponential{e2 - a1 * ev.second, a1};
    }
    case RootRegime::complex_pair: {
        const double env = std::exp(ev.first * t);
        const double s = std::sin(ev.imag * t) / ev.imag;
        return BlockExponential{env * (std::cos(ev.imag * t) - ev.first * s), env * s};
    }
    case RootRegime::double_root: {
        const double e = std::exp(ev.first * t);
        return BlockExponential{e * (1.0 - ev.first * t), t * e};
    }
    }
    return {};
}

struct Vec2 {
    double x, y;
};

Vec2 apply_block(const SemigroupBlock& b, Vec2 v) { return Vec2{v.y, b.k * v.x - b.h * v.y}; }

Vec2 apply_exp(const SemigroupBlock& b, const BlockExponential& e, Vec2 v) {
    const Vec2 mv = apply_block(b, v);
    return Vec2{e.a0 * v.x + e.a1 * mv.x, e.a0 * v.y + e.a1 * mv.y};
}

}  // namespace

BlockExponential block_exponential(const SemigroupBlock& block, double t) {
    return exponential_from(block_eigenvalues(block), t);
}

std::vector<SemigroupBlock> build_blocks(const ParameterSet& p, const BasisDescriptor& basis,
                                         const DirichletDatum& profile) {
    const ParameterSet e = p.effective();
    const auto modes = box_modes(basis);
    const auto d = lift_coefficients(e.c, basis, profile);
    std::vector<SemigroupBlock> blocks;
    blocks.reserve(modes.size());
    for (std::size_t n = 0; n < modes.size(); ++n) {
        const double lead = 1.0 - e.c * modes[n].lambda_sq;
        blocks.push_back(SemigroupBlock{modes[n].index, modes[n].lambda_sq, e.a / lead,
                                        -e.b * modes[n].lambda_sq / lead, d[n], e.b / e.c});
    }
    return blocks;
}

FieldPair evolve_with_boundary(const std::vector<SemigroupBlock>& blocks, const FieldPair& initial,
                               const BoundarySignal& signal, double t, double quad_step) {
    const BasisDescriptor& basis = initial.theta.basis;
    if (!(initial.theta_prime.basis == basis))
        throw InvalidArgument("evolve_with_boundary: initial fields use different bases");
    if (blocks.size() != basis.truncation || initial.theta.coefficients.size() != blocks.size() ||
        initial.theta_prime.coefficients.size() != blocks.size())
        throw InvalidArgument("evolve_with_boundary: block count does not match the basis");
    if (!(t >= 0.0) || t > signal.horizon * (1.0 + 1e-12))
        throw InvalidArgument("evolve_with_boundary: t outside [0, T]");
    if (!(quad_step > 0.0))
        throw InvalidArgument("evolve_with_boundary: quad_step must be positive");

    const auto& tf = signal.time;
    const double f0 = tf.value(0.0), f1_0 = tf.first(0.0);
    const double ft = tf.value(t), f1_t = tf.first(t);

    std::size_t intervals = 0;
    std::vector<double> nodes, weighted_f;
    if (t > 0.0) {
        intervals = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(t / quad_step)));
        if (intervals % 2 == 1) ++intervals;
        const double hq = t / static_cast<double>(intervals);
        const auto w = simpson_weights(intervals + 1, hq);
        nodes.resize(intervals + 1);
        weighted_f.resize(intervals + 1);
        for (std::size_t j = 0; j <= intervals; ++j) {
            nodes[j] = j == intervals ? t : static_cast<double>(j) * hq;
            weighted_f[j] = w[j] * tf.value(nodes[j]);
        }
    }

    std::vector<double> theta(blocks.size()), velocity(blocks.size());
    parallel_for(blocks.size(), [&](std::size_t n) {
        const SemigroupBlock& b = blocks[n];
        const BlockEigenvalues ev = block_eigenvalues(b);
        const Vec2 w0{initial.theta.coefficients[n], initial.theta_prime.coefficients[n]};

        // e^{𝔸t}[W(0) − 𝔻f′(0) − 𝔸𝔻f(0)]
        const Vec2 start{w0.x - b.d * f0, w0.y - b.d * f1_0 + b.h * b.d * f0};
        const Vec2 free = apply_exp(b, exponential_from(ev, t), start);

        // 𝔻f′(t) + 𝔸𝔻f(t)
        const Vec2 trace{b.d * ft, b.d * f1_t - b.h * b.d * ft};

        // ∫ e^{𝔸(t−s)} v f(s) ds with v = (−βI + 𝔸²)𝔻 = I0·v + I1·𝔸v
        Vec2 conv{0.0, 0.0};
        if (intervals > 0 && b.d != 0.0) {
            CompensatedSum i0, i1;
            for (std::size_t j = 0; j <= intervals; ++j) {
                const BlockExponential e = exponential_from(ev, t - nodes[j]);
                i0 += e.a0 * weighted_f[j];
                i1 += e.a1 * weighted_f[j];
            }
            const Vec2 v{-b.h * b.d, (b.k + b.h * b.h - b.beta) * b.d};
            const Vec2 mv = apply_block(b, v);
            conv = Vec2{i0.value() * v.x + i1.value() * mv.x, i0.value() * v.y + i1.value() * mv.y};
        }
        theta[n] = free.x + trace.x + conv.x;
        velocity[n] = free.y + trace.y + conv.y;
    });
    return FieldPair{Field::from_coefficients(basis, std::move(theta)),
                     Field::from_coefficients(basis, std::move(velocity))};
}

FieldPair evolve_with_boundary(const std::vector<SemigroupBlock>& blocks, const FieldPair& initial,
                               const BoundarySignal& signal, double t) {
    return evolve_with_boundary(blocks, initial, signal, t, t > 0.0 ? 1e-3 * t : 1.0);
}

MildSolutionReport mild_solution_check(const std::vector<SemigroupBlock>& blocks, const FieldPair& initial,
                                       const BoundarySignal& signal, const std::vector<double>& t_grid,
                                       double quad_step) {
    const double horizon = signal.horizon;
    const double q = quad_step > 0.0 ? quad_step : 1e-4 * horizon;
    const double hf = std::min(2e-3, horizon / 100.0);
    const auto& tf = signal.time;

    MildSolutionReport rep;
    for (double t : t_grid) {
        if (t - 2.0 * hf < 0.0 || t + 2.0 * hf > horizon) {
            ++rep.points_skipped;
            continue;
        }
        std::vector<FieldPair> stencil;
        for (int j = -2; j <= 2; ++j) stencil.push_back(evolve_with_boundary(blocks, initial, signal, t + j * hf, q));
        const double f = tf.value(t), f2 = tf.second(t);

        for (std::size_t n = 0; n < blocks.size(); ++n) {
            const SemigroupBlock& b = blocks[n];
            auto th = [&](int j) { return stencil[j + 2].theta.coefficients[n]; };
            auto vel = [&](int j) { return stencil[j + 2].theta_prime.coefficients[n]; };
            const double theta = th(0), velocity = vel(0);

            const double second_formula = b.k * theta - b.h * velocity - b.beta * b.d * f + b.d * f2;
            const double second_fd =
                (-th(2) + 16.0 * th(1) - 30.0 * th(0) + 16.0 * th(-1) - th(-2)) / (12.0 * hf * hf);
            const double res2 = std::abs(second_fd - second_formula) / std::max(1.0, std::abs(second_formula));

            const double lead = b.beta / (b.beta - b.k);
            const double a = b.h * lead;
            const double accel = (-vel(2) + 8.0 * vel(1) - 8.0 * vel(-1) + vel(-2)) / (12.0 * hf);
            const double y = theta - b.d * f;
            const double y2 = accel - b.d * f2;
            const double rhs = -b.beta * theta - a * velocity;
            const double resl = std::abs(lead * (y2 - b.beta * y) - rhs) /
                                std::max(1.0, std::abs(b.beta * theta) + std::abs(a * velocity));

            if (res2 > rep.second_derivative_residual || resl > rep.lifted_relation_residual) rep.worst_mode = b.mode_index;
            rep.second_derivative_residual = std::max(rep.second_derivative_residual, res2);
            rep.lifted_relation_residual = std::max(rep.lifted_relation_residual, resl);
        }
        ++rep.points_checked;
    }
    rep.passed = rep.points_checked > 0 && rep.second_derivative_residual <= kSecondDerivativeTolerance &&
                 rep.lifted_relation_residual <= kLiftedRelationTolerance;
    return rep;
}

}  // namespace cattaneo
