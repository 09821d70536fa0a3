#ifndef TSNAKE_EMIT_HPP
#define TSNAKE_EMIT_HPP

#include <json.hpp>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tsnake/polynomial.hpp"
#include "tsnake/sim.hpp"
#include "tsnake/trident.hpp"
#include "tsnake/vector_field.hpp"

namespace tsnake {

/// Fixed 17-significant-digit decimal form; identical inputs always yield
/// identical bytes, and the value round-trips exactly.
std::string format_sig(double v);

/// Header t,x1..x6; one row per sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Planar kinematics along a trajectory: root, vertices, wheels (15 columns).
void write_kinematics_csv(std::ostream& os, const Trajectory& traj, Parametrization par);

/// Side-by-side states of two trajectories on the same time grid.
void write_compare_csv(std::ostream& os, const Trajectory& exact, const Trajectory& nilpotent);

struct SvgPath {
    std::vector<Eigen::Vector2d> points;
    std::string stroke = "#000000";
    bool dashed = false;
};

/// Standalone SVG with auto-fitted viewport (y axis up).
std::string render_svg(std::span<const SvgPath> paths, int width = 640, int height = 640);

/// Root + wheel polylines of one trajectory, all in `stroke`.
std::vector<SvgPath> pose_paths(const Trajectory& traj, Parametrization par,
                                const std::string& stroke, bool dashed);

nlohmann::json comparison_json(const ComparisonReport& rep);
nlohmann::json matrix_json(const Mat6& m);
std::string matrix_text(const Mat6& m);
nlohmann::json vec_json(const Vec6& v);
nlohmann::json polynomial_json(const Polynomial& p);

}  // namespace tsnake

#endif  // TSNAKE_EMIT_HPP
