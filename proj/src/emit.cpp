#include "tsnake/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace tsnake {

std::string format_sig(double v) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,x1,x2,x3,x4,x5,x6\n";
    for (std::size_t n = 0; n < traj.times.size(); ++n) {
        os << format_sig(traj.times[n]);
        for (int k = 0; k < kDim; ++k) os << ',' << format_sig(traj.states[n][k]);
        os << '\n';
    }
}

void write_kinematics_csv(std::ostream& os, const Trajectory& traj, Parametrization par) {
    os << "t,root_x,root_y";
    for (int i = 1; i <= 3; ++i) os << ",v" << i << "_x,v" << i << "_y";
    for (int i = 1; i <= 3; ++i) os << ",w" << i << "_x,w" << i << "_y";
    os << '\n';
    for (std::size_t n = 0; n < traj.times.size(); ++n) {
        const BodyPose pose = kinematics(Configuration::from_vec(traj.states[n]), par);
        os << format_sig(traj.times[n]);
        os << ',' << format_sig(pose.root[0]) << ',' << format_sig(pose.root[1]);
        for (const auto& v : pose.vertices) os << ',' << format_sig(v[0]) << ',' << format_sig(v[1]);
        for (const auto& w : pose.wheels) os << ',' << format_sig(w[0]) << ',' << format_sig(w[1]);
        os << '\n';
    }
}

void write_compare_csv(std::ostream& os, const Trajectory& exact, const Trajectory& nilpotent) {
    os << "t";
    for (int k = 1; k <= kDim; ++k) os << ",exact_x" << k;
    for (int k = 1; k <= kDim; ++k) os << ",nilpotent_x" << k;
    os << '\n';
    for (std::size_t n = 0; n < exact.times.size(); ++n) {
        os << format_sig(exact.times[n]);
        for (int k = 0; k < kDim; ++k) os << ',' << format_sig(exact.states[n][k]);
        for (int k = 0; k < kDim; ++k) os << ',' << format_sig(nilpotent.states[n][k]);
        os << '\n';
    }
}

std::string render_svg(std::span<const SvgPath> paths, int width, int height) {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& p : paths) {
        for (const auto& pt : p.points) {
            if (first) {
                xmin = xmax = pt[0];
                ymin = ymax = pt[1];
                first = false;
            } else {
                xmin = std::min(xmin, pt[0]);
                xmax = std::max(xmax, pt[0]);
                ymin = std::min(ymin, pt[1]);
                ymax = std::max(ymax, pt[1]);
            }
        }
    }
    double w = xmax - xmin, h = ymax - ymin;
    const double pad = 0.05 * std::max({w, h, 1e-3});
    xmin -= pad;
    ymin -= pad;
    w += 2.0 * pad;
    h += 2.0 * pad;

    std::ostringstream os;
    // viewBox holds mathematical coordinates; points are emitted with y
    // negated so the y axis points up on screen.
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"" << format_double(xmin) << ' ' << format_double(-(ymin + h)) << ' '
       << format_double(w) << ' ' << format_double(h) << "\">\n";
    const double stroke_w = std::max(w, h) / 320.0;
    for (const auto& p : paths) {
        os << "  <polyline fill=\"none\" stroke=\"" << p.stroke << "\" stroke-width=\""
           << format_double(stroke_w) << "\"";
        if (p.dashed)
            os << " stroke-dasharray=\"" << format_double(4.0 * stroke_w) << ' '
               << format_double(3.0 * stroke_w) << "\"";
        os << " points=\"";
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            if (i) os << ' ';
            os << format_double(p.points[i][0]) << ',' << format_double(-p.points[i][1]);
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<SvgPath> pose_paths(const Trajectory& traj, Parametrization par,
                                const std::string& stroke, bool dashed) {
    std::vector<SvgPath> paths(4);
    for (auto& p : paths) {
        p.stroke = stroke;
        p.dashed = dashed;
        p.points.reserve(traj.states.size());
    }
    for (const auto& q : traj.states) {
        const BodyPose pose = kinematics(Configuration::from_vec(q), par);
        paths[0].points.push_back(pose.root);
        for (int i = 0; i < 3; ++i) paths[1 + i].points.push_back(pose.wheels[i]);
    }
    return paths;
}

nlohmann::json comparison_json(const ComparisonReport& rep) {
    return nlohmann::json{
        {"max_dev", rep.max_dev},
        {"endpoint_dev", rep.endpoint_dev},
        {"wheel_dev", {rep.wheel_dev[0], rep.wheel_dev[1], rep.wheel_dev[2]}},
        {"max_slip", rep.max_slip},
        {"direction_cosine", rep.direction_cosine},
        {"magnitude", rep.magnitude},
    };
}

nlohmann::json matrix_json(const Mat6& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < kDim; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < kDim; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

std::string matrix_text(const Mat6& m) {
    std::array<std::array<std::string, kDim>, kDim> cells;
    std::size_t width = 0;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
            cells[i][j] = format_double(m(i, j));
            width = std::max(width, cells[i][j].size());
        }
    std::string out;
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) {
            if (j) out += "  ";
            out += std::string(width - cells[i][j].size(), ' ') + cells[i][j];
        }
        out += '\n';
    }
    return out;
}

nlohmann::json vec_json(const Vec6& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (int k = 0; k < kDim; ++k) arr.push_back(v[k]);
    return arr;
}

nlohmann::json polynomial_json(const Polynomial& p) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [alpha, coeff] : p.coefficients()) {
        std::string key;
        for (int k = 0; k < kDim; ++k) {
            if (k) key += ',';
            key += std::to_string(alpha[k]);
        }
        obj[key] = coeff;
    }
    return obj;
}

}  // namespace tsnake
