#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace cattaneo {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// One Dirichlet-Laplacian eigenpair, Aφ = −λ²φ. Only the positive
/// quantity λ² is stored.
struct EigenMode {
    std::size_t index = 0;              ///< 1-based enumeration order
    double lambda_sq = 0.0;
    std::vector<int> multi_index;       ///< per-axis indices, length d
};

/// Axis-aligned box (0,L_1)×…×(0,L_d) with the first `truncation` modes.
struct BasisDescriptor {
    std::vector<double> lengths;
    std::size_t truncation = 1;

    std::size_t dimension() const noexcept { return lengths.size(); }

    static BasisDescriptor interval(double length, std::size_t truncation) {
        return BasisDescriptor{{length}, truncation};
    }

    bool operator==(const BasisDescriptor&) const = default;
};

/// Throws InvalidArgument unless every length is positive and finite and
/// truncation ≥ 1.
void validate(const BasisDescriptor& basis);

enum class ExceptionalKind { for_c, for_sigma };

/// ℰ = {1/λ²} or 𝒵 = {γρ/λ²} over a truncated spectrum, sorted ascending
/// and deduplicated by exact equality.
struct ExceptionalSet {
    ExceptionalKind kind = ExceptionalKind::for_c;
    std::vector<double> values;
    double gamma_rho = 0.0;     ///< meaningful only for for_sigma
};

struct Nearest {
    double distance = 0.0;
    double nearest = 0.0;
};

/// Modes n = 1..N of (0,L): λ² = (nπ/L)².
std::vector<EigenMode> interval_modes(double length, std::size_t count);

/// First N modes of the box, λ² = Σ (n_iπ/L_i)², ordered by λ² and then
/// lexicographically by multi-index. Degenerate eigenvalues repeat.
std::vector<EigenMode> box_modes(const BasisDescriptor& basis);

/// λ² for one multi-index. Per-axis terms are summed in ascending order so
/// permuted indices on a cube give bit-identical values.
double box_lambda_sq(const std::vector<double>& lengths, const std::vector<int>& multi_index);

ExceptionalSet exceptional_for_c(const std::vector<EigenMode>& modes);
ExceptionalSet exceptional_for_sigma(const std::vector<EigenMode>& modes, double gamma_rho);

/// Closest element of `set` to `value`; ties go to the smaller element.
Nearest distance_to_exceptional(double value, const ExceptionalSet& set);

/// Least-squares slope of log λ_k against log k (Weyl diagnostic; ≈ 1/d).
double weyl_exponent_fit(const std::vector<EigenMode>& modes, std::size_t dimension);

}  // namespace cattaneo
