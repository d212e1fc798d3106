#include "cattaneo/solver.hpp"

#include "cattaneo/errors.hpp"
#include "cattaneo/numerics.hpp"
#include "cattaneo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cattaneo {

Field Field::zero(const BasisDescriptor& basis) {
    validate(basis);
    return Field{basis, std::vector<double>(basis.truncation, 0.0), false};
}

Field Field::unit(const BasisDescriptor& basis, std::size_t n) {
    Field f = zero(basis);
    if (n == 0 || n > basis.truncation)
        throw InvalidArgument("Field::unit: mode index out of range");
    f.coefficients[n - 1] = 1.0;
    return f;
}

Field Field::from_coefficients(const BasisDescriptor& basis, std::vector<double> coefficients) {
    validate(basis);
    if (coefficients.size() != basis.truncation)
        throw InvalidArgument("Field: coefficient count must equal the truncation");
    bool saturated = false;
    for (double c : coefficients)
        if (!std::isfinite(c)) saturated = true;
    return Field{basis, std::move(coefficients), saturated};
}

GridSamples sample_on_grid(const BasisDescriptor& basis, std::size_t points_per_axis,
                           const std::function<double(std::span<const double>)>& f) {
    validate(basis);
    if (points_per_axis < 3)
        throw InvalidArgument("sample_on_grid: need at least 3 points per axis");
    const std::size_t d = basis.dimension();
    GridSamples g;
    g.shape.assign(d, points_per_axis);
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= points_per_axis;
    g.values.resize(total);
    std::vector<double> x(d);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t i = d; i-- > 0;) {
            const std::size_t p = rem % points_per_axis;
            rem /= points_per_axis;
            x[i] = basis.lengths[i] * static_cast<double>(p) / static_cast<double>(points_per_axis - 1);
        }
        g.values[flat] = f(x);
    }
    return g;
}

double basis_function(const BasisDescriptor& basis, const EigenMode& mode, std::span<const double> x) {
    double v = 1.0;
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        const double l = basis.lengths[i];
        v *= std::sqrt(2.0 / l) * std::sin(mode.multi_index[i] * kPi * x[i] / l);
    }
    return v;
}

Field project_samples(const GridSamples& samples, const BasisDescriptor& basis) {
    validate(basis);
    const std::size_t d = basis.dimension();
    if (samples.shape.size() != d)
        throw InvalidArgument("project_samples: grid dimension does not match the basis");
    const auto modes = box_modes(basis);

    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        int max_index = 0;
        for (const auto& m : modes) max_index = std::max(max_index, m.multi_index[i]);
        const std::size_t n = samples.shape[i];
        if (n < 3 || n % 2 == 0)
            throw InvalidArgument("project_samples: each axis needs an odd number (>= 3) of points");
        if (n - 1 < 4 * static_cast<std::size_t>(max_index))
            throw InvalidArgument("project_samples: grid too coarse for the truncation (axis " +
                                  std::to_string(i) + ")");
        total *= n;
    }
    if (samples.values.size() != total)
        throw InvalidArgument("project_samples: value count does not match the grid shape");

    // Per-axis tables weight·φ_{axis,n}(x_p).
    std::vector<std::vector<std::vector<double>>> tables(d);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t n = samples.shape[i];
        const double l = basis.lengths[i];
        const auto w = simpson_weights(n, l / static_cast<double>(n - 1));
        int max_index = 0;
        for (const auto& m : modes) max_index = std::max(max_index, m.multi_index[i]);
        tables[i].assign(static_cast<std::size_t>(max_index) + 1, std::vector<double>(n));
        for (int k = 1; k <= max_index; ++k)
            for (std::size_t p = 0; p < n; ++p) {
                const double x = l * static_cast<double>(p) / static_cast<double>(n - 1);
                tables[i][k][p] = w[p] * std::sqrt(2.0 / l) * std::sin(k * kPi * x / l);
            }
    }

    std::vector<double> coeffs(modes.size());
    parallel_for(modes.size(), [&](std::size_t m) {
        CompensatedSum s;
        std::vector<std::size_t> idx(d, 0);
        for (std::size_t flat = 0; flat < total; ++flat) {
            double w = samples.values[flat];
            for (std::size_t i = 0; i < d; ++i) w *= tables[i][modes[m].multi_index[i]][idx[i]];
            s += w;
            for (std::size_t i = d; i-- > 0;) {
                if (++idx[i] < samples.shape[i]) break;
                idx[i] = 0;
            }
        }
        coeffs[m] = s.value();
    });
    return Field::from_coefficients(basis, std::move(coeffs));
}

double exceptional_gate(double c, double nearest) {
    return 1e-12 * std::max(c, nearest);
}

WellPosednessReport check_wellposed(double c, const BasisDescriptor& basis, double threshold) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw InvalidArgument("check_wellposed: c must be positive");
    const auto modes = box_modes(basis);
    const ExceptionalSet set = exceptional_for_c(modes);
    const Nearest near = distance_to_exceptional(c, set);

    WellPosednessReport rep;
    rep.c_value = c;
    rep.distance = near.distance;
    rep.nearest_exceptional = near.nearest;
    rep.threshold = threshold;
    // Members of ℰ beyond the truncation are all below min(set).
    rep.tail_undecidable = c < set.values.front();
    if (near.distance <= exceptional_gate(c, near.nearest))
        rep.verdict = Verdict::exceptional;
    else if (near.distance <= threshold || rep.tail_undecidable)
        rep.verdict = Verdict::near_exceptional;
    else
        rep.verdict = Verdict::well_posed;
    return rep;
}

FieldPair evolve_homogeneous(const ParameterSet& p, const Field& theta0, const Field& theta1, double t,
                             EvolveOptions options) {
    if (!(theta0.basis == theta1.basis))
        throw InvalidArgument("evolve_homogeneous: theta0 and theta1 use different bases");
    if (theta0.coefficients.size() != theta0.basis.truncation ||
        theta1.coefficients.size() != theta1.basis.truncation)
        throw InvalidArgument("evolve_homogeneous: coefficient count does not match the basis");
    if (!std::isfinite(t))
        throw InvalidArgument("evolve_homogeneous: t must be finite");

    const ParameterSet e = p.effective();
    if (!options.allow_exceptional) {
        const auto rep = check_wellposed(e.c, theta0.basis, 0.0);
        if (rep.verdict == Verdict::exceptional)
            throw ExceptionalParameter("evolve_homogeneous: c is in the exceptional set", e.c,
                                       rep.nearest_exceptional);
    }

    const auto modes = box_modes(theta0.basis);
    std::vector<double> value(modes.size()), deriv(modes.size());
    std::vector<char> saturated(modes.size(), 0);
    parallel_for(modes.size(), [&](std::size_t n) {
        try {
            const auto sol = solve_mode(p, modes[n].lambda_sq,
                                        ModalInitialData{theta0.coefficients[n], theta1.coefficients[n]});
            const auto v = eval_mode(sol, t);
            value[n] = v.value;
            deriv[n] = v.derivative;
            saturated[n] = v.saturated;
        } catch (const UnsolvableMode& err) {
            throw UnsolvableMode("evolve_homogeneous: mode " + std::to_string(modes[n].index) +
                                     " is degenerate and its data are incompatible",
                                 err.report(), modes[n].index);
        }
    });

    FieldPair out{Field{theta0.basis, std::move(value), false}, Field{theta0.basis, std::move(deriv), false}};
    const bool any = std::any_of(saturated.begin(), saturated.end(), [](char s) { return s != 0; });
    out.theta.saturated = out.theta_prime.saturated = any;
    return out;
}

double field_norm(const Field& f) {
    CompensatedSum s;
    for (double c : f.coefficients) s += c * c;
    return std::sqrt(s.value());
}

std::vector<double> reconstruct(const Field& f, const std::vector<std::vector<double>>& points) {
    validate(f.basis);
    const std::size_t d = f.basis.dimension();
    for (const auto& x : points) {
        if (x.size() != d)
            throw InvalidArgument("reconstruct: point dimension does not match the basis");
        for (std::size_t i = 0; i < d; ++i)
            if (!(x[i] >= 0.0 && x[i] <= f.basis.lengths[i]))
                throw InvalidArgument("reconstruct: point outside the domain");
    }
    const auto modes = box_modes(f.basis);
    std::vector<double> out(points.size());
    parallel_for(points.size(), [&](std::size_t j) {
        CompensatedSum s;
        for (std::size_t n = 0; n < modes.size(); ++n)
            if (f.coefficients[n] != 0.0) s += f.coefficients[n] * basis_function(f.basis, modes[n], points[j]);
        out[j] = s.value();
    });
    return out;
}

std::vector<double> reconstruct(const Field& f, std::span<const double> xs) {
    if (f.basis.dimension() != 1)
        throw InvalidArgument("reconstruct: scalar points need a one-dimensional basis");
    std::vector<std::vector<double>> points;
    points.reserve(xs.size());
    for (double x : xs) points.push_back({x});
    return reconstruct(f, points);
}

}  // namespace cattaneo
