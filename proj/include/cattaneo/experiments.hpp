#pragma once

#include "cattaneo/boundary.hpp"
#include "cattaneo/modal.hpp"
#include "cattaneo/solver.hpp"
#include "cattaneo/spectrum.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cattaneo {

enum class RowFlag { ok, saturated, exceptional };
std::string_view to_string(RowFlag flag);

/// An exponential term kept both directly and in log form, so divergent
/// values stay representable. `value` is ±∞ when saturated.
struct Addendum {
    double value = 0.0;
    LogValue log;
    bool saturated = false;
};

Addendum make_addendum(double coeff, double exponent_times_t);

// ---------------------------------------------------------------------------
// c → 1/λ² with the compatible data θ(0) = −a/(bλ²), θ′(0) = 1.

struct Limit1Row {
    double c = 0.0;
    double A = 0.0;
    double B = 0.0;
    double delta = 0.0;
    double exp_first = 0.0;   ///< (−a + δ)/(2(1 − cλ²))
    double exp_second = 0.0;  ///< −(a + δ)/(2(1 − cλ²))
    Addendum first;           ///< A·e^{exp_first·t}
    Addendum second;          ///< B·e^{exp_second·t}
    RowFlag flag = RowFlag::ok;
    std::string error;        ///< set for rows with c in the exceptional set
};

/// c = 1/λ² ± 10⁻ʲ for j = j_min..j_max, below then above, nearest last.
std::vector<double> limit1_c_values(double lambda_sq, int j_min, int j_max);

/// Throws InvalidArgument if some c gives non-real roots.
std::vector<Limit1Row> limit1_scan(double a, double b, double lambda_sq, double t,
                                   const std::vector<double>& c_values);

// ---------------------------------------------------------------------------

struct LimitScanRow {
    std::size_t k = 0;
    double parameter = 0.0;     ///< c_k or σ_k
    double coeff_first = 0.0;
    double coeff_second = 0.0;
    double exp_first = 0.0;
    double exp_second = 0.0;
    Addendum value;             ///< θ value at t (scaled by 1/k for limit 2)
    double lower_bound_norm = 0.0;  ///< ‖θ(t)‖ lower bound; ∞ when saturated
    double log_lower_bound = 0.0;
    RowFlag flag = RowFlag::ok;
};

/// c_k = 1/λ_k² + γ/λ_k³ with θ₀ = 0, θ₁ = Σ(1/n)φ_n; rows hold the k-th mode.
struct Limit2Result {
    std::vector<LimitScanRow> rows;
    double gamma = 0.0;
    double growth_exponent_fit = 0.0;       ///< slope of log(exp_second·t) vs log k
    double coefficient_exponent_fit = 0.0;  ///< slope of log|coefficient| vs log k
    std::optional<std::size_t> first_k_exceeding;  ///< smallest k with |θ_k(t)|/k > bound
    double bound = 1e3;
};

/// Throws ConfigurationError naming k when some c_k lies in ℰ.
Limit2Result limit2_scan(double a, double b, double gamma, const std::vector<EigenMode>& modes,
                         std::size_t k_first, std::size_t k_last, double t, double bound = 1e3);

/// Retries with γ += 1e-3 until no c_k collides (at most `max_retries` times).
Limit2Result limit2_scan_auto_gamma(double a, double b, double gamma, const std::vector<EigenMode>& modes,
                                    std::size_t k_first, std::size_t k_last, double t, double bound = 1e3,
                                    int max_retries = 1000);

// ---------------------------------------------------------------------------
// σ_k = 5/k² on (0, π) with χ = 2, γρ = 4: σθ″ = −2θ′ + Δθ − (σ²/4)Δθ″,
// θ(0) = Σ n⁻⁴φ_n, θ′(0) = −Σ (2n²)⁻¹φ_n. "first" is the growing addendum.

inline constexpr double kLimit3Chi = 2.0;
inline constexpr double kLimit3GammaRho = 4.0;

double limit3_sigma(std::size_t k);
ModalInitialData limit3_initial_data(std::size_t n);

/// 2θ₁ₙ = −n²θ₀ₙ checked in exact integer arithmetic.
bool limit3_heat_compatible(std::size_t n);

struct Limit3Result {
    std::vector<LimitScanRow> rows;
    std::optional<std::size_t> first_k_exceeding;  ///< smallest k with |θ_k(t)| > k
    bool heat_compatible = true;                   ///< every scanned mode
    bool second_addendum_bounded = true;           ///< |second| < 2/k⁴ at t
};

Limit3Result limit3_scan(std::size_t k_first, std::size_t k_last, double t);

// ---------------------------------------------------------------------------

struct HeatComparisonRow {
    double sigma = 0.0;
    double distance = 0.0;       ///< ∞ when saturated
    double log_distance = 0.0;
    RowFlag flag = RowFlag::ok;
};

/// ‖θ_σ(t) − θ_heat(t)‖ for each σ, θ_σ under map m2 and θ_heat solving
/// aθ′ = bΔθ from theta0. `physical` supplies χ and γρ (its σ is ignored).
/// Throws ConfigurationError if some σ lies in 𝒵.
std::vector<HeatComparisonRow> heat_comparison(const PhysicalParameters& physical,
                                               const std::vector<double>& sigmas, const Field& theta0,
                                               const Field& theta1, double t);

// ---------------------------------------------------------------------------

struct WholeLineValue {
    std::complex<double> first;   ///< A(λ)·e^{r₊t}
    std::complex<double> second;  ///< −A(λ)·e^{r₋t}
    std::complex<double> value;
    double log_abs_first = 0.0;
    double log_abs_second = 0.0;
    bool saturated = false;  ///< a term exceeded e^700 and is stored as ∞
};

/// Fourier mode of the whole-line problem with ŵ₀ = 0, ŵ₁(λ) = w1_hat.
/// Throws SingularParameter when 1 − cλ² or the discriminant vanishes.
WholeLineValue whole_line_mode(double a, double b, double c, double lambda, double t, double w1_hat);

enum class ScanSide { below, above };

struct WholeLineRow {
    int j = 0;
    double lambda = 0.0;
    WholeLineValue mode;
};

/// λ = 1/√c ∓ 2⁻ʲ for j = 1..j_max.
std::vector<WholeLineRow> whole_line_scan(double a, double b, double c, double t, double w1_hat, int j_max,
                                          ScanSide side);

// ---------------------------------------------------------------------------

struct PropagationRow {
    double n = 0.0;
    double mass_in_subregion = 0.0;
    double target_mass = 0.0;
    double ratio = 0.0;
};

struct PropagationResult {
    std::vector<PropagationRow> rows;
    std::optional<double> threshold_n;   ///< smallest n with ratio ≥ 1/2
    bool derivative_check = true;        ///< f_n′(T) = 1 for every n
    bool monotone_after_crossing = true;  ///< observed, not asserted
};

struct PropagationConfig {
    double length = kPi;
    DirichletDatum profile = DirichletDatum::interval(1.0, 0.0);
    double horizon = 0.05;
    double sub_lo = 1.0;
    double sub_hi = 2.0;
    std::size_t truncation = 256;
    std::size_t quadrature_points = 2049;  ///< Simpson nodes on the subregion
    double quad_step = 0.0;                ///< 0 → 1e-3·T
};

/// Bursts f_n(t) = (1/n)e^{−n(T−t)}f₀ from rest; mass of θ′_n(T) on the
/// subregion against ∫|Df₀|².
PropagationResult propagation_burst(const ParameterSet& p, const PropagationConfig& config,
                                    const std::vector<double>& n_values);

}  // namespace cattaneo
