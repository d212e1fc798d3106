#pragma once

#include "cattaneo/modal.hpp"
#include "cattaneo/spectrum.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cattaneo {

/// Truncated eigen-series Σ coefficients[n−1]·φ_n over an orthonormal box
/// sine basis. Coefficient order follows box_modes(basis).
struct Field {
    BasisDescriptor basis;
    std::vector<double> coefficients;
    bool saturated = false;  ///< some coefficient overflowed to ±∞

    static Field zero(const BasisDescriptor& basis);
    /// Unit vector e_n (1-based).
    static Field unit(const BasisDescriptor& basis, std::size_t n);
    static Field from_coefficients(const BasisDescriptor& basis, std::vector<double> coefficients);
};

/// Values on the uniform grid that includes the box faces. Axis 0 varies
/// slowest; shape[i] points along axis i.
struct GridSamples {
    std::vector<std::size_t> shape;
    std::vector<double> values;
};

/// Samples f on a uniform grid with `points_per_axis` nodes per axis.
GridSamples sample_on_grid(const BasisDescriptor& basis, std::size_t points_per_axis,
                           const std::function<double(std::span<const double>)>& f);

/// Orthonormal basis function φ for one mode at a point of the box.
double basis_function(const BasisDescriptor& basis, const EigenMode& mode, std::span<const double> x);

/// ⟨f, φ_n⟩ by tensor-product composite Simpson. Each axis needs an odd
/// number of points with at least 4 intervals per retained axis index.
Field project_samples(const GridSamples& samples, const BasisDescriptor& basis);

enum class Verdict { well_posed, exceptional, near_exceptional };

struct WellPosednessReport {
    double c_value = 0.0;
    double distance = 0.0;
    double nearest_exceptional = 0.0;
    Verdict verdict = Verdict::well_posed;
    double threshold = 0.0;
    /// c lies below every enumerated 1/λ², so unenumerated modes could
    /// still collide with it.
    bool tail_undecidable = false;
};

/// Distance gate below which c counts as a member of ℰ.
double exceptional_gate(double c, double nearest);

WellPosednessReport check_wellposed(double c, const BasisDescriptor& basis, double threshold);

struct EvolveOptions {
    /// Permit c ∈ ℰ; degenerate modes must then satisfy the compatibility
    /// condition or UnsolvableMode is thrown.
    bool allow_exceptional = false;
};

struct FieldPair {
    Field theta;
    Field theta_prime;
};

/// (θ(t), θ′(t)) for homogeneous Dirichlet data, mode by mode.
FieldPair evolve_homogeneous(const ParameterSet& p, const Field& theta0, const Field& theta1, double t,
                             EvolveOptions options = {});

/// L² norm via Parseval.
double field_norm(const Field& f);

/// Pointwise evaluation of the series; each point has `dimension()` coordinates.
std::vector<double> reconstruct(const Field& f, const std::vector<std::vector<double>>& points);
std::vector<double> reconstruct(const Field& f, std::span<const double> xs);

}  // namespace cattaneo
