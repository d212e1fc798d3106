#include "cattaneo/spectrum.hpp"

#include "cattaneo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace cattaneo {

void validate(const BasisDescriptor& basis) {
    if (basis.lengths.empty())
        throw InvalidArgument("basis: dimension must be at least 1");
    for (double l : basis.lengths)
        if (!(l > 0.0) || !std::isfinite(l))
            throw InvalidArgument("basis: side lengths must be positive and finite");
    if (basis.truncation == 0)
        throw InvalidArgument("basis: truncation must be at least 1");
}

std::vector<EigenMode> interval_modes(double length, std::size_t count) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw InvalidArgument("interval_modes: length must be positive");
    if (count == 0)
        throw InvalidArgument("interval_modes: need at least one mode");
    std::vector<EigenMode> modes;
    modes.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) {
        const double k = static_cast<double>(n) * kPi / length;
        modes.push_back(EigenMode{n, k * k, {static_cast<int>(n)}});
    }
    return modes;
}

double box_lambda_sq(const std::vector<double>& lengths, const std::vector<int>& multi_index) {
    std::vector<double> terms(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const double k = static_cast<double>(multi_index[i]) * kPi / lengths[i];
        terms[i] = k * k;
    }
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

namespace {

// All multi-indices with λ² ≤ bound, depth-first over axes.
void enumerate_below(const std::vector<double>& lengths, double bound, std::vector<int>& current,
                     double partial, std::vector<std::pair<double, std::vector<int>>>& out) {
    const std::size_t axis = current.size();
    if (axis == lengths.size()) {
        out.emplace_back(box_lambda_sq(lengths, current), current);
        return;
    }
    for (int n = 1;; ++n) {
        const double k = n * kPi / lengths[axis];
        // Remaining axes contribute at least (π/L_j)² each.
        double rest = 0.0;
        for (std::size_t j = axis + 1; j < lengths.size(); ++j) {
            const double kj = kPi / lengths[j];
            rest += kj * kj;
        }
        if (partial + k * k + rest > bound * (1.0 + 1e-12)) break;
        current.push_back(n);
        enumerate_below(lengths, bound, current, partial + k * k, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<EigenMode> box_modes(const BasisDescriptor& basis) {
    validate(basis);
    const std::size_t d = basis.dimension();
    const std::size_t n = basis.truncation;

    // Grow the λ² bound until at least n tuples fall below it.
    double lowest = 0.0;
    for (double l : basis.lengths) lowest += (kPi / l) * (kPi / l);
    double bound = lowest * std::pow(static_cast<double>(n), 2.0 / static_cast<double>(d)) * 1.5 + lowest;

    std::vector<std::pair<double, std::vector<int>>> found;
    for (;;) {
        found.clear();
        std::vector<int> current;
        current.reserve(d);
        enumerate_below(basis.lengths, bound, current, 0.0, found);
        if (found.size() >= n) break;
        bound *= 2.0;
    }

    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        return std::tie(x.first, x.second) < std::tie(y.first, y.second);
    });

    std::vector<EigenMode> modes;
    modes.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        modes.push_back(EigenMode{i + 1, found[i].first, std::move(found[i].second)});
    return modes;
}

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

ExceptionalSet exceptional_for_c(const std::vector<EigenMode>& modes) {
    if (modes.empty())
        throw InvalidArgument("exceptional_for_c: no modes");
    std::vector<double> v;
    v.reserve(modes.size());
    for (const auto& m : modes) v.push_back(1.0 / m.lambda_sq);
    return ExceptionalSet{ExceptionalKind::for_c, sorted_unique(std::move(v)), 0.0};
}

ExceptionalSet exceptional_for_sigma(const std::vector<EigenMode>& modes, double gamma_rho) {
    if (!(gamma_rho > 0.0) || !std::isfinite(gamma_rho))
        throw InvalidArgument("exceptional_for_sigma: gamma_rho must be positive");
    // Built from ℰ so that 𝒵 = γρ·ℰ holds elementwise in floating point.
    ExceptionalSet set = exceptional_for_c(modes);
    for (double& x : set.values) x *= gamma_rho;
    set.kind = ExceptionalKind::for_sigma;
    set.gamma_rho = gamma_rho;
    return set;
}

Nearest distance_to_exceptional(double value, const ExceptionalSet& set) {
    if (set.values.empty())
        throw InvalidArgument("distance_to_exceptional: empty set");
    if (!(value > 0.0))
        throw InvalidArgument("distance_to_exceptional: value must be positive");
    Nearest best{std::abs(value - set.values.front()), set.values.front()};
    for (double e : set.values) {
        const double dist = std::abs(value - e);
        if (dist < best.distance) best = Nearest{dist, e};
    }
    return best;
}

double weyl_exponent_fit(const std::vector<EigenMode>& modes, std::size_t dimension) {
    if (dimension == 0)
        throw InvalidArgument("weyl_exponent_fit: dimension must be positive");
    if (modes.size() < 16)
        throw InvalidArgument("weyl_exponent_fit: need at least 16 modes");
    const double count = static_cast<double>(modes.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        sx += std::log(static_cast<double>(k + 1));
        sy += 0.5 * std::log(modes[k].lambda_sq);
    }
    const double mx = sx / count, my = sy / count;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const double dx = std::log(static_cast<double>(k + 1)) - mx;
        sxy += dx * (0.5 * std::log(modes[k].lambda_sq) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace cattaneo
