#pragma once

#include "cattaneo/boundary.hpp"
#include "cattaneo/modal.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cattaneo::oracle {

/// leading·θ″ + damping·θ′ + stiffness·θ = 0 on [0, horizon].
struct OdeProblem {
    double leading = 1.0;
    double damping = 0.0;
    double stiffness = 0.0;
    ModalInitialData init;
    double horizon = 1.0;
};

using State = std::array<double, 2>;

/// Accepted RK steps with cubic Hermite dense output.
class Trajectory {
public:
    Trajectory(std::vector<double> times, std::vector<State> states, std::vector<State> slopes);

    /// (θ, θ′) at t ∈ [0, horizon].
    State operator()(double t) const;
    std::size_t steps() const noexcept { return times_.size() - 1; }
    double horizon() const noexcept { return times_.back(); }

private:
    std::vector<double> times_;
    std::vector<State> states_;
    std::vector<State> slopes_;
};

/// Adaptive Dormand–Prince 5(4) for y′ = rhs(t, y) on [0, horizon].
/// Throws StiffnessError when the step size underflows.
Trajectory integrate(const std::function<State(double, const State&)>& rhs, State y0, double horizon,
                     double rel_tol, double abs_tol);

/// Integrates the mode ODE as a first-order system. With leading = 0 the
/// equation is first order and the data must satisfy damping·β + stiffness·α = 0.
Trajectory integrate_mode(const OdeProblem& prob, double rel_tol, double abs_tol);

/// One semigroup block in its un-integrated form
/// θ′ = v, v′ = kθ − hv − βd·f(t) + d·f″(t).
Trajectory integrate_block(const SemigroupBlock& block, State w0, const TimeProfile& time, double horizon,
                           double rel_tol, double abs_tol);

enum class QuadRule { simpson };

/// Composite rule over uniformly spaced samples (odd count ≥ 3).
double quad_integrate(std::span<const double> samples, double step, QuadRule rule = QuadRule::simpson);

struct GridSolution {
    std::size_t nx = 0;
    double dt = 0.0;
    double length = 0.0;
    std::vector<double> x;
    std::vector<double> times;                    ///< snapshot times
    std::vector<std::vector<double>> snapshots;   ///< θ on the full grid
    std::vector<std::vector<double>> velocities;  ///< θ′ on the full grid
    std::string scheme;
};

struct FdOptions {
    /// Extra snapshot times; the initial and final states are always kept.
    std::vector<double> snapshot_times;
};

/// Values 1/μ_j with μ_j the eigenvalues of the negative discrete Dirichlet
/// Laplacian; the finite-difference analogue of ℰ.
std::vector<double> discrete_exceptional_values(double length, std::size_t nx);

/// Crank–Nicolson finite differences for (I + cΔ_h)θ″ = −aθ′ + bΔ_hθ on
/// (0, L), nx nodes including both ends. theta0/theta1 are nodal values.
/// With no signal the boundary is homogeneous.
GridSolution fd_solve(const ParameterSet& p, double length, std::size_t nx, double dt,
                      std::span<const double> theta0, std::span<const double> theta1,
                      const std::optional<BoundarySignal>& signal, double horizon, const FdOptions& options = {});

}  // namespace cattaneo::oracle
