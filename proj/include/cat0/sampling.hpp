#pragma once

#include <functional>
#include <random>
#include <utility>

#include "cat0/geometry.hpp"

namespace cat0 {

using Rng = std::mt19937_64;

/// Uniform direction in the tangent space at `center`, radius U*[0,radius];
/// the point is exp_center(r * direction). Deterministic given the rng state.
Vec sample_in_ball(const ModelSpace& space, const Vec& center, double radius,
                   Rng& rng);

/// Unit tangent vector at x (model norm 1), uniform direction.
Vec sample_unit_tangent(const ModelSpace& space, const Vec& x, Rng& rng);

using PairSampler = std::function<std::pair<Vec, Vec>(Rng&)>;

/// Pairs of independent samples from the metric ball around `center`.
PairSampler ball_pair_sampler(ModelSpace space, Vec center, double radius);

}  // namespace cat0
