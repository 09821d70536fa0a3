#include "tsnake/sim.hpp"

#include <cmath>

#include "tsnake/expr.hpp"

namespace tsnake {

std::string input_kind_name(InputKind kind) {
    switch (kind) {
        case InputKind::Bracket12: return "bracket12";
        case InputKind::Bracket23: return "bracket23";
        case InputKind::Bracket13: return "bracket13";
        case InputKind::Custom: return "custom";
    }
    return "custom";
}

std::array<int, 2> bracket_pair(InputKind kind) {
    switch (kind) {
        case InputKind::Bracket12: return {1, 2};
        case InputKind::Bracket23: return {2, 3};
        case InputKind::Bracket13: return {1, 3};
        case InputKind::Custom: break;
    }
    throw std::invalid_argument("custom input has no bracket pair");
}

VectorField bracket_field(std::span<const VectorField> fields, InputKind kind) {
    const auto [i, j] = bracket_pair(kind);
    return lie_bracket(fields[i - 1], fields[j - 1]);
}

Eigen::Vector3d ControlInput::evaluate(double t) const {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (int i = 0; i < 3; ++i)
        if (u[i]) v[i] = u[i](t);
    return v;
}

std::string ControlInput::name() const {
    if (kind == InputKind::Custom) return "custom";
    return input_kind_name(kind) + " A=" + format_double(amplitude) +
           " omega=" + format_double(omega);
}

ControlInput periodic_input(InputKind kind, double amplitude, double omega) {
    if (kind == InputKind::Custom)
        throw std::invalid_argument("periodic_input requires a bracket kind");
    if (amplitude <= 0.0) throw std::invalid_argument("amplitude must be positive");
    if (omega <= 0.0) throw std::invalid_argument("omega must be positive");
    const auto [i, j] = bracket_pair(kind);
    ControlInput in;
    in.kind = kind;
    in.amplitude = amplitude;
    in.omega = omega;
    in.u[i - 1] = [amplitude, omega](double t) { return -amplitude * omega * std::sin(omega * t); };
    in.u[j - 1] = [amplitude, omega](double t) { return amplitude * omega * std::cos(omega * t); };
    return in;
}

ControlInput zero_input(InputKind kind, double omega) {
    ControlInput in;
    in.kind = kind;
    in.amplitude = 0.0;
    in.omega = omega;
    return in;
}

NonFiniteState::NonFiniteState(double t)
    : std::runtime_error("non-finite state at t=" + format_double(t)), time(t) {}

Trajectory integrate(std::span<const VectorField> fields, const ControlInput& input,
                     const Vec6& q0, double horizon, int steps) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");

    const auto rhs = [&](double t, const Vec6& q) {
        const Eigen::Vector3d u = input.evaluate(t);
        Vec6 dq = Vec6::Zero();
        for (std::size_t i = 0; i < fields.size(); ++i)
            if (u[static_cast<int>(i)] != 0.0) dq += u[static_cast<int>(i)] * fields[i].evaluate(q);
        return dq;
    };

    const double dt = horizon / steps;
    Trajectory traj;
    traj.dt = dt;
    traj.input = input.name();
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(q0);

    Vec6 q = q0;
    for (int n = 0; n < steps; ++n) {
        const double t = n * dt;
        const Vec6 k1 = rhs(t, q);
        const Vec6 k2 = rhs(t + 0.5 * dt, q + 0.5 * dt * k1);
        const Vec6 k3 = rhs(t + 0.5 * dt, q + 0.5 * dt * k2);
        const Vec6 k4 = rhs(t + dt, q + dt * k3);
        q += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double tn = (n + 1) * dt;
        if (!q.allFinite()) throw NonFiniteState(tn);
        traj.times.push_back(tn);
        traj.states.push_back(q);
    }
    return traj;
}

BracketDisplacement bracket_displacement(std::span<const VectorField> fields, InputKind kind,
                                         double amplitude, double omega, int steps,
                                         const Vec6& q0) {
    const ControlInput input =
        amplitude == 0.0 ? zero_input(kind, omega) : periodic_input(kind, amplitude, omega);
    const Trajectory traj = integrate(fields, input, q0, input.period(), steps);

    BracketDisplacement d;
    d.endpoint = traj.endpoint();
    d.displacement = d.endpoint - q0;
    d.magnitude = d.displacement.norm();
    const Vec6 b = bracket_field(fields, kind).evaluate(q0);
    const double denom = d.magnitude * b.norm();
    d.direction_cosine = denom > 0.0 ? d.displacement.dot(b) / denom : 0.0;
    return d;
}

double max_slip(const Trajectory& traj, std::span<const VectorField> fields,
                const ControlInput& input, Parametrization par) {
    double worst = 0.0;
    for (std::size_t n = 0; n < traj.times.size(); ++n) {
        const Eigen::Vector3d u = input.evaluate(traj.times[n]);
        Vec6 qdot = Vec6::Zero();
        for (std::size_t i = 0; i < fields.size(); ++i)
            qdot += u[static_cast<int>(i)] * fields[i].evaluate(traj.states[n]);
        const auto s = slip(Configuration::from_vec(traj.states[n]), qdot, par);
        for (double si : s) worst = std::max(worst, std::abs(si));
    }
    return worst;
}

ComparisonReport compare(std::span<const VectorField> fields, std::span<const VectorField> hat_fields,
                         InputKind kind, double amplitude, double omega, int steps,
                         Parametrization par, const Vec6& q0) {
    const ControlInput input =
        amplitude == 0.0 ? zero_input(kind, omega) : periodic_input(kind, amplitude, omega);

    ComparisonReport rep;
    rep.exact = integrate(fields, input, q0, input.period(), steps);
    rep.nilpotent = integrate(hat_fields, input, q0, input.period(), steps);
    rep.exact.model = "exact";
    rep.nilpotent.model = "nilpotent";

    for (std::size_t n = 0; n < rep.exact.states.size(); ++n) {
        const Vec6& qe = rep.exact.states[n];
        const Vec6& qh = rep.nilpotent.states[n];
        rep.max_dev = std::max(rep.max_dev, (qe - qh).norm());
        const BodyPose pe = kinematics(Configuration::from_vec(qe), par);
        const BodyPose ph = kinematics(Configuration::from_vec(qh), par);
        for (int w = 0; w < 3; ++w)
            rep.wheel_dev[w] = std::max(rep.wheel_dev[w], (pe.wheels[w] - ph.wheels[w]).norm());
    }
    rep.endpoint_dev = (rep.exact.endpoint() - rep.nilpotent.endpoint()).norm();
    rep.max_slip = max_slip(rep.nilpotent, hat_fields, input, par);
    rep.max_slip_exact = max_slip(rep.exact, fields, input, par);

    const Vec6 disp = rep.exact.endpoint() - q0;
    rep.magnitude = disp.norm();
    const Vec6 b = bracket_field(fields, kind).evaluate(q0);
    const double denom = rep.magnitude * b.norm();
    rep.direction_cosine = denom > 0.0 ? disp.dot(b) / denom : 0.0;
    return rep;
}

}  // namespace tsnake
