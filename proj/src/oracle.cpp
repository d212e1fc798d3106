#include "cattaneo/oracle.hpp"

#include "cattaneo/errors.hpp"
#include "cattaneo/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace cattaneo::oracle {

Trajectory::Trajectory(std::vector<double> times, std::vector<State> states, std::vector<State> slopes)
    : times_(std::move(times)), states_(std::move(states)), slopes_(std::move(slopes)) {}

State Trajectory::operator()(double t) const {
    if (t <= times_.front()) return states_.front();
    if (t >= times_.back()) return states_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
    const double h = times_[i + 1] - times_[i];
    const double s = (t - times_[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    State out{};
    for (int k = 0; k < 2; ++k)
        out[k] = h00 * states_[i][k] + h10 * h * slopes_[i][k] + h01 * states_[i + 1][k] +
                 h11 * h * slopes_[i + 1][k];
    return out;
}

Trajectory integrate(const std::function<State(double, const State&)>& rhs, State y0, double horizon,
                     double rel_tol, double abs_tol) {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2) || !(abs_tol > 0.0 && abs_tol <= 1e-2))
        throw InvalidArgument("integrate: tolerances must lie in (0, 1e-2]");
    if (!(horizon > 0.0))
        throw InvalidArgument("integrate: horizon must be positive");

    // Dormand–Prince 5(4) tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    auto axpy = [](const State& y, std::initializer_list<std::pair<double, const State*>> terms, double h) {
        State out = y;
        for (const auto& [coef, k] : terms)
            for (int i = 0; i < 2; ++i) out[i] += h * coef * (*k)[i];
        return out;
    };

    std::vector<double> times{0.0};
    std::vector<State> states{y0};
    State k1 = rhs(0.0, y0);
    std::vector<State> slopes{k1};

    double t = 0.0;
    State y = y0;
    double h = std::min(horizon, 1e-3 * horizon);
    const double h_min = 1e-14 * horizon;
    std::size_t guard = 0;
    while (t < horizon) {
        if (++guard > 50'000'000) throw StiffnessError("integrate: step budget exhausted");
        if (t + h > horizon) h = horizon - t;
        const State k2 = rhs(t + c2 * h, axpy(y, {{a21, &k1}}, h));
        const State k3 = rhs(t + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
        const State k4 = rhs(t + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
        const State k5 = rhs(t + c5 * h, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
        const State k6 =
            rhs(t + h, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
        const State y_new = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
        const State k7 = rhs(t + h, y_new);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        if (!std::isfinite(err)) err = 1e10;

        if (err <= 1.0) {
            t = (horizon - (t + h) <= 1e-15 * horizon) ? horizon : t + h;
            y = y_new;
            k1 = k7;
            times.push_back(t);
            states.push_back(y);
            slopes.push_back(k7);
        }
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= factor;
        if (h < h_min && t < horizon) throw StiffnessError("integrate: step size underflow");
    }
    return Trajectory(std::move(times), std::move(states), std::move(slopes));
}

Trajectory integrate_mode(const OdeProblem& prob, double rel_tol, double abs_tol) {
    if (prob.leading == 0.0) {
        if (prob.damping == 0.0)
            throw InvalidArgument("integrate_mode: both leading and damping vanish");
        const double slope = -prob.stiffness / prob.damping;
        if (std::abs(prob.init.beta - slope * prob.init.alpha) >
            1e-9 * std::max(1.0, std::abs(slope * prob.init.alpha)))
            throw InvalidArgument("integrate_mode: first-order mode with incompatible initial slope");
        // Carry θ′ = slope·θ as the second component.
        return integrate([slope](double, const State& y) { return State{slope * y[0], slope * y[1]}; },
                         State{prob.init.alpha, slope * prob.init.alpha}, prob.horizon, rel_tol, abs_tol);
    }
    const double L = prob.leading, D = prob.damping, S = prob.stiffness;
    return integrate([=](double, const State& y) { return State{y[1], -(D * y[1] + S * y[0]) / L}; },
                     State{prob.init.alpha, prob.init.beta}, prob.horizon, rel_tol, abs_tol);
}

Trajectory integrate_block(const SemigroupBlock& b, State w0, const TimeProfile& time, double horizon,
                           double rel_tol, double abs_tol) {
    return integrate(
        [&](double t, const State& y) {
            return State{y[1], b.k * y[0] - b.h * y[1] - b.beta * b.d * time.value(t) + b.d * time.second(t)};
        },
        w0, horizon, rel_tol, abs_tol);
}

double quad_integrate(std::span<const double> samples, double step, QuadRule rule) {
    (void)rule;
    if (samples.size() < 3 || samples.size() % 2 == 0)
        throw InvalidArgument("quad_integrate: Simpson needs an odd number (>= 3) of samples");
    double ends = samples.front() + samples.back();
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) (i % 2 ? odd : even) += samples[i];
    return step / 3.0 * (ends + 4.0 * odd + 2.0 * even);
}

std::vector<double> discrete_exceptional_values(double length, std::size_t nx) {
    if (nx < 3) throw InvalidArgument("discrete_exceptional_values: need at least 3 nodes");
    const double h = length / static_cast<double>(nx - 1);
    std::vector<double> out;
    for (std::size_t j = 1; j + 1 < nx; ++j) {
        const double s = std::sin(static_cast<double>(j) * kPi / (2.0 * static_cast<double>(nx - 1)));
        out.push_back(1.0 / (4.0 / (h * h) * s * s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Thomas algorithm for a constant-coefficient tridiagonal system, in
// extended precision: the entries scale like c/h².
using Real = long double;

class ConstantTridiagonal {
public:
    ConstantTridiagonal(std::size_t n, Real diag, Real off) : off_(off), cprime_(n), denom_(n) {
        Real prev = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const Real den = diag - (i == 0 ? 0.0L : off * prev);
            if (std::abs(den) <= 1e-13L * (std::abs(diag) + 2.0L * std::abs(off)))
                throw DiscreteExceptional("fd_solve: singular tridiagonal system");
            denom_[i] = den;
            prev = off / den;
            cprime_[i] = prev;
        }
    }

    void solve(std::vector<Real>& rhs) const {
        const std::size_t n = rhs.size();
        rhs[0] /= denom_[0];
        for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - off_ * rhs[i - 1]) / denom_[i];
        for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cprime_[i] * rhs[i + 1];
    }

private:
    Real off_;
    std::vector<Real> cprime_, denom_;
};

}  // namespace

GridSolution fd_solve(const ParameterSet& p, double length, std::size_t nx, double dt,
                      std::span<const double> theta0, std::span<const double> theta1,
                      const std::optional<BoundarySignal>& signal, double horizon, const FdOptions& options) {
    if (nx < 64) throw InvalidArgument("fd_solve: need nx >= 64");
    if (!(length > 0.0)) throw InvalidArgument("fd_solve: length must be positive");
    if (!(horizon > 0.0) || !(dt > 0.0) || dt > horizon)
        throw InvalidArgument("fd_solve: need 0 < dt <= T");
    if (theta0.size() != nx || theta1.size() != nx)
        throw InvalidArgument("fd_solve: initial data must have nx nodal values");

    const ParameterSet e = p.effective();
    const double a = e.a, b = e.b, c = e.c;
    const double h = length / static_cast<double>(nx - 1);
    const std::size_t m = nx - 2;

    for (double v : discrete_exceptional_values(length, nx))
        if (std::abs(1.0 - c / v) <= 1e-12)
            throw DiscreteExceptional("fd_solve: c matches a discrete Dirichlet eigenvalue");

    const std::size_t steps = static_cast<std::size_t>(std::llround(horizon / dt));
    const double k = horizon / static_cast<double>(std::max<std::size_t>(steps, 1));
    const Real ih2 = 1.0L / (static_cast<Real>(h) * h);
    const Real kk = k;

    // [B + (a k/2) I − (b k²/4)Δ] v⁺ = [B − (a k/2) I + (b k²/4)Δ] v + b k Δθ + k·ē,  B = I + cΔ
    const Real lhs_diag = 1.0L - 2.0L * c * ih2 + 0.5L * a * kk + 0.5L * b * kk * kk * ih2;
    const Real lhs_off = c * ih2 - 0.25L * b * kk * kk * ih2;
    const ConstantTridiagonal lhs(m, lhs_diag, lhs_off);
    const Real rhs_self = 1.0L - 0.5L * a * kk;
    const Real rhs_lap = c + 0.25L * b * kk * kk;

    const double g_left = signal ? signal->profile.left() : 0.0;
    const double g_right = signal ? signal->profile.right() : 0.0;
    // Boundary nodes enter bΔθ and cΔθ″ of the first and last interior rows.
    auto edge_term = [&](double t, double g) -> Real {
        if (!signal) return 0.0L;
        return (static_cast<Real>(b) * g * signal->time.value(t) - static_cast<Real>(c) * g * signal->time.second(t)) * ih2;
    };
    auto boundary_value = [&](double t, double g) { return signal ? g * signal->time.value(t) : 0.0; };
    auto boundary_velocity = [&](double t, double g) { return signal ? g * signal->time.first(t) : 0.0; };

    std::vector<Real> theta(theta0.begin() + 1, theta0.end() - 1);
    std::vector<Real> vel(theta1.begin() + 1, theta1.end() - 1);

    GridSolution out;
    out.nx = nx;
    out.dt = k;
    out.length = length;
    out.scheme = "crank-nicolson, second-order central differences, Thomas solves";
    out.x.resize(nx);
    for (std::size_t i = 0; i < nx; ++i) out.x[i] = length * static_cast<double>(i) / static_cast<double>(nx - 1);

    auto store = [&](double t) {
        std::vector<double> full(nx), fullv(nx);
        full.front() = boundary_value(t, g_left);
        full.back() = boundary_value(t, g_right);
        fullv.front() = boundary_velocity(t, g_left);
        fullv.back() = boundary_velocity(t, g_right);
        std::transform(theta.begin(), theta.end(), full.begin() + 1, [](Real v) { return static_cast<double>(v); });
        std::transform(vel.begin(), vel.end(), fullv.begin() + 1, [](Real v) { return static_cast<double>(v); });
        out.times.push_back(t);
        out.snapshots.push_back(std::move(full));
        out.velocities.push_back(std::move(fullv));
    };

    std::vector<std::size_t> snapshot_steps;
    for (double ts : options.snapshot_times) {
        if (ts > 0.0 && ts < horizon) snapshot_steps.push_back(static_cast<std::size_t>(std::llround(ts / k)));
    }
    std::sort(snapshot_steps.begin(), snapshot_steps.end());

    store(0.0);
    std::vector<Real> rhs(m);
    std::size_t next_snap = 0;
    for (std::size_t n = 0; n < steps; ++n) {
        const double t0 = static_cast<double>(n) * k, t1 = static_cast<double>(n + 1) * k;
        for (std::size_t i = 0; i < m; ++i) {
            const Real vl = i > 0 ? vel[i - 1] : 0.0L, vr = i + 1 < m ? vel[i + 1] : 0.0L;
            const Real tl = i > 0 ? theta[i - 1] : 0.0L, tr = i + 1 < m ? theta[i + 1] : 0.0L;
            rhs[i] = rhs_self * vel[i] + rhs_lap * ih2 * (vl - 2.0L * vel[i] + vr) +
                     b * kk * ih2 * (tl - 2.0L * theta[i] + tr);
        }
        rhs.front() += 0.5L * kk * (edge_term(t0, g_left) + edge_term(t1, g_left));
        rhs.back() += 0.5L * kk * (edge_term(t0, g_right) + edge_term(t1, g_right));
        std::vector<Real> new_vel = rhs;
        lhs.solve(new_vel);
        for (std::size_t i = 0; i < m; ++i) theta[i] += 0.5L * kk * (new_vel[i] + vel[i]);
        vel = std::move(new_vel);

        while (next_snap < snapshot_steps.size() && snapshot_steps[next_snap] == n + 1) {
            store(t1);
            ++next_snap;
        }
        if (n + 1 == steps && (out.times.back() != t1)) store(t1);
    }
    if (steps == 0) store(0.0);
    return out;
}

}  // namespace cattaneo::oracle
