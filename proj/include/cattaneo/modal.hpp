#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace cattaneo {

/// Which physical-to-coefficient map produced a ParameterSet.
///   m1: a = χ/σ, b = χ²/(σγρ), c = σ/(γρ); equation θ″ = −aθ′ + bΔθ − cΔθ″.
///   m2: a = χ, b = χ²/(γρ), c = 1/(γρ); equation σθ″ + aθ′ = bΔθ − σ²cΔθ″.
enum class CoefficientMap { m1, m2 };

struct PhysicalParameters {
    double chi = 0.0;
    double sigma = 0.0;
    double gamma_rho = 0.0;
    CoefficientMap map = CoefficientMap::m1;
};

struct ParameterSet {
    double a = 0.0;  ///< damping
    double b = 0.0;  ///< diffusivity
    double c = 0.0;  ///< fourth-order coefficient
    std::optional<PhysicalParameters> physical;

    /// Validates a, b, c > 0 and finite.
    static ParameterSet from_coefficients(double a, double b, double c);
    static ParameterSet from_physical_m1(double chi, double sigma, double gamma_rho);
    static ParameterSet from_physical_m2(double chi, double sigma, double gamma_rho);

    /// Coefficients of the equivalent equation with unit θ″ coefficient:
    /// identity for m1 and raw sets, (a/σ, b/σ, σc) for m2.
    ParameterSet effective() const;
};

/// leading·θ″ + damping·θ′ + stiffness·θ = 0 for one mode.
struct ModeEquation {
    double leading = 1.0;
    double damping = 0.0;
    double stiffness = 0.0;

    /// (1 − cλ², a, bλ²) for the effective coefficients of p.
    static ModeEquation from(const ParameterSet& p, double lambda_sq);
};

struct ModalInitialData {
    double alpha = 0.0;  ///< θ(0)
    double beta = 0.0;   ///< θ′(0)
};

struct RealDistinct {
    double A = 0.0;        ///< coefficient of e^{r_plus t}
    double B = 0.0;        ///< coefficient of e^{r_minus t}
    double r_plus = 0.0;   ///< (−damping + δ)/(2·leading)
    double r_minus = 0.0;  ///< (−damping − δ)/(2·leading)
};

/// amplitude·e^{decay·t}·cos(frequency·t + phase)
struct ComplexPair {
    double amplitude = 0.0;
    double decay = 0.0;
    double frequency = 0.0;
    double phase = 0.0;
};

/// (A + B·t)·e^{r·t}
struct DoubleRoot {
    double A = 0.0;
    double B = 0.0;
    double r = 0.0;
};

/// alpha·e^{rate·t}; the degenerate c = 1/λ² case.
struct FirstOrder {
    double alpha = 0.0;
    double rate = 0.0;
};

struct ModalSolution {
    std::variant<RealDistinct, ComplexPair, DoubleRoot, FirstOrder> form;
    ModalInitialData init;  ///< data the solution was built from
};

struct CompatibilityReport {
    double required_ratio = 0.0;         ///< −(b/a)λ²
    std::optional<double> actual_ratio;  ///< β/α; empty when α = 0
    bool satisfied = false;
    double tolerance_used = 0.0;
};

/// Thrown by solve_mode when a degenerate mode receives incompatible data.
class UnsolvableMode : public std::domain_error {
public:
    UnsolvableMode(const std::string& what, CompatibilityReport report, std::size_t mode_index = 0)
        : std::domain_error(what), report_(report), mode_index_(mode_index) {}
    const CompatibilityReport& report() const noexcept { return report_; }
    std::size_t mode_index() const noexcept { return mode_index_; }

private:
    CompatibilityReport report_;
    std::size_t mode_index_;
};

struct Discriminant {
    double delta_sq = 0.0;
    double magnitude = 0.0;  ///< √|delta_sq|
    bool imaginary = false;  ///< delta_sq < 0
};

enum class RootRegime { real_distinct, double_root, complex_pair };

struct RootClassification {
    RootRegime regime = RootRegime::real_distinct;
    Discriminant delta;
    double r_plus = 0.0;   ///< real root, or real part for complex pairs
    double r_minus = 0.0;
    double imag = 0.0;     ///< |Im r| for complex pairs
};

struct ModeValue {
    double value = 0.0;
    double derivative = 0.0;
    bool saturated = false;  ///< an exponent exceeded the saturation threshold
};

/// log|θ(t)| and sign(θ(t)); finite even where the value overflows.
struct LogValue {
    double log_abs = 0.0;
    int sign = 0;
};

inline constexpr double kCompatibilityTolerance = 1e-9;

/// δ² = damping² − 4·leading·stiffness, i.e. a² − 4bλ²(1−cλ²).
Discriminant discriminant_delta(const ModeEquation& eq);
Discriminant discriminant_delta(const ParameterSet& p, double lambda_sq);

/// Roots of leading·r² + damping·r + stiffness; throws DegenerateMode if
/// |leading| is within the degeneracy gate.
RootClassification characteristic_roots(const ModeEquation& eq, double tol_degenerate = 0.0);
RootClassification characteristic_roots(const ParameterSet& p, double lambda_sq);

/// Default gate 1e-12·max(1, cλ²) on |1 − cλ²|.
double default_degenerate_tolerance(const ParameterSet& p, double lambda_sq);

CompatibilityReport check_compatibility(double a, double b, double lambda_sq, ModalInitialData init,
                                        double tolerance = kCompatibilityTolerance);

/// Closed-form solution of a non-degenerate second-order mode equation.
ModalSolution solve_second_order(const ModeEquation& eq, ModalInitialData init);

/// Solves (1−cλ²)θ″ + aθ′ + bλ²θ = 0. When |1−cλ²| is within the gate the
/// θ″ terms cancel and the mode is first order; incompatible data then
/// throws UnsolvableMode.
ModalSolution solve_mode(const ParameterSet& p, double lambda_sq, ModalInitialData init,
                         std::optional<double> tol_degenerate = std::nullopt);

/// Value and time derivative. t = 0 returns the stored initial data.
ModeValue eval_mode(const ModalSolution& sol, double t);

LogValue eval_mode_log(const ModalSolution& sol, double t);

enum class ReferenceKind { heat, classical_cattaneo };

struct ReferenceSolution {
    ModalSolution solution;
    /// heat only: whether β agrees with the first-order slope −(b/a)λ²α.
    std::optional<CompatibilityReport> heat_consistency;
};

/// heat: aθ′ = −bλ²θ. classical_cattaneo: τθ″ + aθ′ + bλ²θ = 0, τ > 0.
ReferenceSolution solve_mode_reference(ReferenceKind kind, double a, double b, double tau,
                                       double lambda_sq, ModalInitialData init);

}  // namespace cattaneo
