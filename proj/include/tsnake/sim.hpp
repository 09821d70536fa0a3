#ifndef TSNAKE_SIM_HPP
#define TSNAKE_SIM_HPP

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsnake/trident.hpp"
#include "tsnake/vector_field.hpp"

namespace tsnake {

inline constexpr double kDefaultAmplitude = 0.1;
inline constexpr double kDefaultOmega = 1.0;
inline constexpr int kDefaultStepsPerPeriod = 2000;

/// Bracket-exciting input shapes plus an escape hatch for custom signals.
enum class InputKind { Bracket12, Bracket23, Bracket13, Custom };

std::string input_kind_name(InputKind kind);

/// Channel pair (1-based) excited by a bracket input.
std::array<int, 2> bracket_pair(InputKind kind);

/// Bracket field [g_i, g_j] matching an input kind.
VectorField bracket_field(std::span<const VectorField> fields, InputKind kind);

/// Time-dependent control u(t) in R^3.
struct ControlInput {
    InputKind kind = InputKind::Custom;
    double amplitude = 0.0;
    double omega = kDefaultOmega;
    std::array<std::function<double(double)>, 3> u{};

    Eigen::Vector3d evaluate(double t) const;
    double period() const { return 2.0 * M_PI / omega; }
    std::string name() const;
};

/// Loop input for [g_i, g_j]: u_i = -A w sin(w t), u_j = A w cos(w t), third
/// channel zero.  Over one period the displacement from the origin is
/// pi A^2 [g_i, g_j](0) + O(A^3).  Throws std::invalid_argument for
/// non-positive amplitude or frequency, or for InputKind::Custom.
ControlInput periodic_input(InputKind kind, double amplitude, double omega);

/// The all-zero input (degenerate amplitude-0 loop).
ControlInput zero_input(InputKind kind, double omega);

struct NonFiniteState : std::runtime_error {
    explicit NonFiniteState(double t);
    double time;
};

/// Integrated trajectory samples plus the provenance needed to label output
/// files: which model, which input, what step size and integrator.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec6> states;
    std::string model = "exact";
    std::string input;
    double dt = 0.0;
    std::string integrator = "rk4";

    const Vec6& endpoint() const { return states.back(); }
};

/// Classical fixed-step RK4 for q' = sum_i u_i(t) g_i(q) on [0, horizon]
/// with `steps` uniform steps.  Throws NonFiniteState if the state leaves
/// the finite range, std::invalid_argument for steps < 1 or horizon <= 0.
Trajectory integrate(std::span<const VectorField> fields, const ControlInput& input,
                     const Vec6& q0, double horizon, int steps);

/// Net effect of one bracket loop from q0.
struct BracketDisplacement {
    Vec6 endpoint = Vec6::Zero();
    Vec6 displacement = Vec6::Zero();  // endpoint - q0
    double direction_cosine = 0.0;     // displacement against [g_i, g_j](q0)
    double magnitude = 0.0;            // |displacement|
};

BracketDisplacement bracket_displacement(std::span<const VectorField> fields, InputKind kind,
                                         double amplitude, double omega, int steps,
                                         const Vec6& q0 = Vec6::Zero());

/// Exact-vs-nilpotent comparison along one bracket loop.
struct ComparisonReport {
    double max_dev = 0.0;            // max_t |q_exact - q_hat|
    double endpoint_dev = 0.0;       // |q_exact(T) - q_hat(T)|
    std::array<double, 3> wheel_dev{};  // per-wheel max planar deviation
    double max_slip = 0.0;           // nilpotent model, max over wheels and time
    double max_slip_exact = 0.0;     // exact model (diagnostic, ~0)
    double direction_cosine = 0.0;   // exact endpoint vs [g_i, g_j](0)
    double magnitude = 0.0;          // |exact endpoint|
    Trajectory exact;
    Trajectory nilpotent;
};

/// Runs both models from q0 under the same bracket loop.  The hat fields
/// are expected in the same coordinates as `fields` (pulled back from
/// privileged coordinates around q0).  amplitude == 0 degenerates to the
/// zero input and flat trajectories.
ComparisonReport compare(std::span<const VectorField> fields, std::span<const VectorField> hat_fields,
                         InputKind kind, double amplitude, double omega, int steps,
                         Parametrization par, const Vec6& q0 = Vec6::Zero());

/// Largest |slip component| over a trajectory, with qdot reconstructed from
/// the generating fields and input.
double max_slip(const Trajectory& traj, std::span<const VectorField> fields,
                const ControlInput& input, Parametrization par);

}  // namespace tsnake

#endif  // TSNAKE_SIM_HPP
