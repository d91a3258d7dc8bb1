#include "cat0/sampling.hpp"

namespace cat0 {

namespace {

Vec gaussian_vec(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec g(n);
  for (int i = 0; i < n; ++i) g[i] = gauss(rng);
  return g;
}

}  // namespace

Vec sample_unit_tangent(const ModelSpace& space, const Vec& x, Rng& rng) {
  if (space.is_flat()) {
    Vec g = gaussian_vec(space.dim, rng);
    double n = g.norm();
    while (n == 0.0) {
      g = gaussian_vec(space.dim, rng);
      n = g.norm();
    }
    return g / n;
  }
  // Project a Gaussian ambient vector onto the tangent space at x, then
  // normalize in the model metric.
  for (;;) {
    Vec g = gaussian_vec(space.ambient_dim(), rng);
    Vec v;
    if (space.kappa < 0.0) {
      v = g + minkowski_inner(x, g) * x;  // <x,x>_L = -1
    } else {
      v = g - x.dot(g) * x;
    }
    const double n = space.tangent_norm(v);
    if (n > 1e-12) return v / n;
  }
}

Vec sample_in_ball(const ModelSpace& space, const Vec& center, double radius,
                   Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Vec dir = sample_unit_tangent(space, center, rng);
  const double r = radius * unif(rng);
  return space.exp_map(center, r * dir);
}

PairSampler ball_pair_sampler(ModelSpace space, Vec center, double radius) {
  return [space, center = std::move(center), radius](Rng& rng) {
    Vec a = sample_in_ball(space, center, radius, rng);
    Vec b = sample_in_ball(space, center, radius, rng);
    return std::make_pair(std::move(a), std::move(b));
  };
}

}  // namespace cat0
