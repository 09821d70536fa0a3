#ifndef TSNAKE_PRIVILEGED_HPP
#define TSNAKE_PRIVILEGED_HPP

#include <span>
#include <utility>
#include <vector>

#include "tsnake/vector_field.hpp"

namespace tsnake {

enum class MatrixRole {
    Frame,      // columns are vector-field values at a point
    Transform,  // maps x-displacements to privileged coordinates y
};

/// 6x6 matrix with its role.  A Frame is invertible by construction; a
/// Transform M built from frame G satisfies M*G = I within
/// kTransformResidualTol.
struct FrameMatrix {
    Mat6 entries = Mat6::Identity();
    MatrixRole role = MatrixRole::Frame;
};

inline constexpr double kTransformResidualTol = 1e-12;

/// Thrown when the adapted frame cannot be completed to full rank.
class RankDeficientFrame : public std::runtime_error {
public:
    explicit RankDeficientFrame(int achieved_rank)
        : std::runtime_error("adapted frame is rank deficient: achieved rank " +
                             std::to_string(achieved_rank) + " of 6"),
          achieved_rank_(achieved_rank) {}

    int achieved_rank() const { return achieved_rank_; }

private:
    int achieved_rank_;
};

/// Default completion order for the bracket columns, mirroring the naming
/// g4 = [g1,g2], g5 = [g2,g3], g6 = [g1,g3] (pairs are 1-based).
inline constexpr std::array<std::pair<int, int>, 3> kDefaultBracketOrder{
    {{1, 2}, {2, 3}, {1, 3}}};

/// Frame at p: columns 1-3 are the field values, columns 4-6 bracket values
/// taken in `bracket_order`, skipping any candidate that does not increase
/// the numeric rank.  Throws RankDeficientFrame when fewer than 6
/// independent columns are found.
FrameMatrix adapted_frame(std::span<const VectorField> fields, const Vec6& p,
                          double tol = kRankTol,
                          std::span<const std::pair<int, int>> bracket_order =
                              kDefaultBracketOrder);

/// Inverse of the frame (role Transform).  When the frame has an identity
/// upper-left 3x3 block and a zero upper-right block, the inverse is
/// assembled blockwise as [[I, 0], [-B^-1 A, B^-1]] so the identity block is
/// exact; otherwise a partial-pivot LU inverse is used.  The product
/// M*G is verified to be the identity within kTransformResidualTol.
FrameMatrix privileged_transform(const FrameMatrix& frame);

struct CoordinateOrderCheck {
    int coordinate = 0;                 // 1-based
    int expected_weight = 0;            // w_j
    std::optional<int> computed_order;  // nullopt: order > expected_weight
    bool pass = false;
};

struct PrivilegedReport {
    std::vector<CoordinateOrderCheck> checks;
    bool all_pass = false;
};

/// Checks ord_p(y_j) == w_j for y_j = (M (x - p))_j, the defining property
/// of privileged coordinates.
PrivilegedReport verify_privileged(const FrameMatrix& transform,
                                   std::span<const VectorField> fields, const Vec6& p,
                                   std::span<const int> weights, double tol = kZeroTol);

}  // namespace tsnake

#endif  // TSNAKE_PRIVILEGED_HPP
