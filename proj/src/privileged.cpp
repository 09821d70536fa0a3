#include "tsnake/privileged.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

namespace tsnake {

namespace {

int numeric_rank(const Eigen::MatrixXd& m, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > tol * sv[0]) ++r;
    return r;
}

}  // namespace

FrameMatrix adapted_frame(std::span<const VectorField> fields, const Vec6& p, double tol,
                          std::span<const std::pair<int, int>> bracket_order) {
    if (fields.size() != 3)
        throw std::invalid_argument("adapted_frame expects exactly three fields");

    Eigen::MatrixXd cols(kDim, 0);
    auto adjoin_if_independent = [&](const Vec6& v) {
        Eigen::MatrixXd trial(kDim, cols.cols() + 1);
        trial << cols, v;
        if (numeric_rank(trial, tol) > cols.cols()) {
            cols = std::move(trial);
            return true;
        }
        return false;
    };

    for (const auto& g : fields)
        adjoin_if_independent(g.evaluate(p));
    if (cols.cols() < 3) throw RankDeficientFrame(static_cast<int>(cols.cols()));

    for (const auto& [i, j] : bracket_order) {
        if (cols.cols() == kDim) break;
        VectorField b = lie_bracket(fields[static_cast<size_t>(i - 1)],
                                    fields[static_cast<size_t>(j - 1)]);
        adjoin_if_independent(b.evaluate(p));
    }
    if (cols.cols() < kDim) throw RankDeficientFrame(static_cast<int>(cols.cols()));

    FrameMatrix frame;
    frame.entries = cols;
    frame.role = MatrixRole::Frame;
    return frame;
}

FrameMatrix privileged_transform(const FrameMatrix& frame) {
    if (frame.role != MatrixRole::Frame)
        throw std::invalid_argument("privileged_transform expects a frame matrix");
    const Mat6& g = frame.entries;

    bool block_form = g.topLeftCorner<3, 3>() == Eigen::Matrix3d::Identity() &&
                      g.topRightCorner<3, 3>() == Eigen::Matrix3d::Zero();

    Mat6 m;
    if (block_form) {
        Eigen::Matrix3d a = g.bottomLeftCorner<3, 3>();
        Eigen::Matrix3d b = g.bottomRightCorner<3, 3>();
        Eigen::PartialPivLU<Eigen::Matrix3d> lu(b);
        Eigen::Matrix3d binv = lu.inverse();
        m.topLeftCorner<3, 3>() = Eigen::Matrix3d::Identity();
        m.topRightCorner<3, 3>() = Eigen::Matrix3d::Zero();
        m.bottomLeftCorner<3, 3>() = -binv * a;
        m.bottomRightCorner<3, 3>() = binv;
    } else {
        m = Eigen::PartialPivLU<Mat6>(g).inverse();
    }

    double residual = (m * g - Mat6::Identity()).cwiseAbs().maxCoeff();
    if (!std::isfinite(residual) || residual > kTransformResidualTol)
        throw std::runtime_error("privileged_transform: frame is numerically singular (residual " +
                                 format_double(residual) + ")");

    FrameMatrix t;
    t.entries = m;
    t.role = MatrixRole::Transform;
    return t;
}

PrivilegedReport verify_privileged(const FrameMatrix& transform,
                                   std::span<const VectorField> fields, const Vec6& p,
                                   std::span<const int> weights, double tol) {
    if (weights.size() != static_cast<size_t>(kDim))
        throw std::invalid_argument("verify_privileged: weights must have 6 entries");
    const Mat6& m = transform.entries;

    PrivilegedReport report;
    report.all_pass = true;
    for (int j = 0; j < kDim; ++j) {
        // y_j = sum_k M_jk (x_k - p_k)
        std::vector<Expr> terms;
        for (int k = 0; k < kDim; ++k) {
            if (m(j, k) == 0.0) continue;
            terms.push_back(Expr::product(
                {Expr::constant(m(j, k)),
                 Expr::sum({Expr::variable(k + 1), Expr::constant(-p[k])})}));
        }
        Expr yj = Expr::sum(std::move(terms));

        CoordinateOrderCheck check;
        check.coordinate = j + 1;
        check.expected_weight = weights[static_cast<size_t>(j)];
        check.computed_order = function_order(yj, p, fields, check.expected_weight, tol);
        check.pass = check.computed_order.has_value() &&
                     *check.computed_order == check.expected_weight;
        report.all_pass = report.all_pass && check.pass;
        report.checks.push_back(check);
    }
    return report;
}

}  // namespace tsnake
