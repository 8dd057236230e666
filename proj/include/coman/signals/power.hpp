#pragma once

#include <utility>

#include "coman/core/errors.hpp"
#include "coman/core/vec2.hpp"

namespace coman::signals {

/// Distance below which the grasp-to-goal direction is considered
/// degenerate (grasp sitting exactly on the goal).
inline constexpr double kDegenerateDirectionEps = 1e-6;

/// Instantaneous interaction power F.v = |F||v|cos(F,v). Negative when
/// the participant is being dragged against their own force.
inline double raw_power(const Vec2& force, const Vec2& velocity) {
    return force.dot(velocity);
}

/// Unit vector from the grasp point toward a goal.
inline Vec2 goal_direction(const Vec2& grasp_pos, const Vec2& goal_pos) {
    const Vec2 d = goal_pos - grasp_pos;
    const double n = d.norm();
    if (n < kDegenerateDirectionEps) {
        throw DegenerateDirectionError("grasp point coincides with goal; projection direction undefined");
    }
    return d / n;
}

/// Signed projection of x onto the grasp-to-goal line.
inline double project_to_goal(const Vec2& x, const Vec2& grasp_pos, const Vec2& goal_pos) {
    return x.dot(goal_direction(grasp_pos, goal_pos));
}

/// Projected interaction power: the portion of power dedicated to the
/// direction of goal i. Product of the two scalar projections, equal to
/// |F||v|cos(F,u)cos(v,u).
inline double projected_power(const Vec2& force, const Vec2& velocity,
                              const Vec2& grasp_pos, const Vec2& goal_pos) {
    const Vec2 u = goal_direction(grasp_pos, goal_pos);
    return force.dot(u) * velocity.dot(u);
}

/// Sum and stretch of the two applied forces. The stretch is "own minus
/// partner", so for participant 1 it matches F1 - F2.
inline std::pair<Vec2, Vec2> pairwise_forces(const Vec2& f_own, const Vec2& f_partner) {
    return {f_own + f_partner, f_own - f_partner};
}

}  // namespace coman::signals
