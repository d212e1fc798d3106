#pragma once

#include "cattaneo/modal.hpp"
#include "cattaneo/solver.hpp"

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace cattaneo {

/// Dirichlet data on one face x_axis = 0 (lower) or x_axis = L_axis (upper),
/// expanded in the orthonormal sine basis of the face. Each entry pairs the
/// face multi-index (the other axes, in order) with its coefficient. On an
/// interval the face is a point and the multi-index is empty.
struct FaceProfile {
    std::size_t axis = 0;
    bool upper = false;
    std::vector<std::pair<std::vector<int>, double>> coefficients;
};

/// Spatial boundary profile f₀ (the g of (I + cΔ)u = 0, γ₀u = g).
struct DirichletDatum {
    std::vector<FaceProfile> faces;

    /// g0 at x = 0 and g1 at x = L.
    static DirichletDatum interval(double g0, double g1);
    /// Interval end values; zero for faces that are not given.
    double left() const;
    double right() const;
    bool is_zero() const;
};

/// Scalar time factor with two analytic derivatives.
struct TimeProfile {
    std::function<double(double)> value;
    std::function<double(double)> first;
    std::function<double(double)> second;

    static TimeProfile constant(double level = 1.0);
    /// Σ coeffs[i]·tⁱ
    static TimeProfile polynomial(std::vector<double> coeffs);
    /// amplitude·sin(omega·t)
    static TimeProfile sine(double omega, double amplitude = 1.0);
    /// (1/n)·e^{−n(T−t)}; its derivative at T is exactly 1.
    static TimeProfile burst(double n, double horizon);
    /// ½(1 + tanh((t − t0)/width))
    static TimeProfile smoothed_step(double t0, double width);
};

/// f(t) = time(t)·profile on [0, T].
struct BoundarySignal {
    DirichletDatum profile;
    TimeProfile time;
    double horizon = 1.0;
};

/// Interval solution of (1 + c∂ₓₓ)u = 0, u(0) = g0, u(L) = g1.
struct DirichletMap {
    double c = 0.0;
    double length = 0.0;
    double g0 = 0.0;
    double g1 = 0.0;

    double value(double x) const;
    double second_derivative(double x) const;
};

struct DirichletMapResult {
    DirichletMap map;
    Field projection;  ///< ⟨Dg, φ_n⟩, n = 1..truncation
};

/// Throws ExceptionalParameter when |sin(L/√c)| ≤ 1e-12.
DirichletMapResult dirichlet_map_interval(double c, double length, const DirichletDatum& g,
                                          std::size_t truncation = 128);

/// ⟨Dg, φ_n⟩ = c/(1 − cλ_n²)·∫_Γ g ∂_νφ_n for every retained box mode.
std::vector<double> lift_coefficients(double c, const BasisDescriptor& basis, const DirichletDatum& g);

/// One mode of the first-order system W′ = 𝔸W − β𝔻f + 𝔻f″, with
/// 𝔸 = [[0, 1], [k, −h]] and 𝔻 = (0, d).
struct SemigroupBlock {
    std::size_t mode_index = 0;
    double lambda_sq = 0.0;
    double h = 0.0;     ///< a/(1 − cλ²)
    double k = 0.0;     ///< −bλ²/(1 − cλ²)
    double d = 0.0;     ///< ⟨Df₀, φ_n⟩
    double beta = 0.0;  ///< b/c
};

/// e^{𝔸t} = a0·I + a1·𝔸 for a 2×2 block.
struct BlockExponential {
    double a0 = 0.0;
    double a1 = 0.0;
};

struct BlockEigenvalues {
    RootRegime regime = RootRegime::real_distinct;
    double first = 0.0;   ///< larger real eigenvalue, or real part
    double second = 0.0;
    double imag = 0.0;
};

BlockEigenvalues block_eigenvalues(const SemigroupBlock& block);
BlockExponential block_exponential(const SemigroupBlock& block, double t);

std::vector<SemigroupBlock> build_blocks(const ParameterSet& p, const BasisDescriptor& basis,
                                         const DirichletDatum& profile);

/// Mild solution after integrating the f″ convolution by parts twice:
/// W(t) = e^{𝔸t}[W(0) − 𝔻f′(0) − 𝔸𝔻f(0)] + 𝔻f′(t) + 𝔸𝔻f(t)
///        + ∫₀ᵗ e^{𝔸(t−s)}(−βI + 𝔸²)𝔻f(s) ds,
/// the convolution by composite Simpson with step ≤ quad_step.
FieldPair evolve_with_boundary(const std::vector<SemigroupBlock>& blocks, const FieldPair& initial,
                               const BoundarySignal& signal, double t, double quad_step);

/// Same, with the default step 1e-3·t.
FieldPair evolve_with_boundary(const std::vector<SemigroupBlock>& blocks, const FieldPair& initial,
                               const BoundarySignal& signal, double t);

struct MildSolutionReport {
    /// max |θ″_fd − θ″_formula| / max(1, |θ″|) over modes and times
    double second_derivative_residual = 0.0;
    /// max |(1−cλ²)(y″ − βy) + βθ + aθ′| / scale, with y = θ − d·f
    double lifted_relation_residual = 0.0;
    std::size_t worst_mode = 0;
    std::size_t points_checked = 0;
    std::size_t points_skipped = 0;  ///< stencil would leave [0, T]
    bool passed = false;
};

inline constexpr double kSecondDerivativeTolerance = 1e-5;
inline constexpr double kLiftedRelationTolerance = 1e-7;

/// Numerical check of the classical-solution clauses on the truncated system.
/// Per mode, 1 − cλ² = β/(β − k) and a = h·(1 − cλ²) are recovered from the block.
/// quad_step = 0 selects 1e-4·T; time derivatives use 5-point stencils of
/// step min(2e-3, T/100).
MildSolutionReport mild_solution_check(const std::vector<SemigroupBlock>& blocks,
                                       const FieldPair& initial, const BoundarySignal& signal,
                                       const std::vector<double>& t_grid, double quad_step = 0.0);

}  // namespace cattaneo
