#pragma once

#include <vector>

#include "isoflow/solvable_model.hpp"
#include "isoflow/types.hpp"

namespace isoflow {

struct GeodesicOptions {
  double step = 1e-3;
  /// Record every `stride`-th step (the endpoint is always recorded).
  int stride = 1;
  /// Integrate the group element g' = g·w alongside the velocity.
  bool track_group = true;
};

struct GeodesicSample {
  double s = 0;
  Vec velocity;  // left-trivialized w(s)
  Mat group;     // matrix of γ(s) in the LieModel realization (empty if untracked)
};

/// Geodesic through e with initial velocity v, in left-trivialization
/// w' = −∇_w w = ad(w)*w, integrated with classical RK4 up to parameter s
/// (s may be negative). Throws NumericalError on a non-finite state.
std::vector<GeodesicSample> geodesic_path(const SolvableModel& model, const Vec& v, double s,
                                          const GeodesicOptions& opts = {});

/// Endpoint of geodesic_path.
GeodesicSample geodesic(const SolvableModel& model, const Vec& v, double s,
                        const GeodesicOptions& opts = {});

/// Velocity of the geodesic with unit initial velocity ξ ∈ g_λ:
/// w(s) = ξ/cosh(‖λ‖s) − tanh(‖λ‖s)/‖λ‖ · H_λ. For ξ ∈ 𝔞, w(s) = ξ.
/// Throws UnsupportedArgument for other initial vectors.
Vec geodesic_velocity_closed_form(const SolvableModel& model, const Vec& xi, double s);

struct TransportSample {
  double s = 0;
  Vec velocity;
  Mat transported;  // columns: left-trivialized transported vectors
};

/// Parallel transport of the columns of `vectors` along the geodesic with
/// initial velocity v: u' = −∇_w u, integrated jointly with w by RK4.
std::vector<TransportSample> parallel_transport(const SolvableModel& model, const Vec& v,
                                                const Mat& vectors, double s,
                                                const GeodesicOptions& opts = {});

}  // namespace isoflow
