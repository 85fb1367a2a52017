#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isoflow/foliation_config.hpp"
#include "isoflow/root_data.hpp"
#include "isoflow/types.hpp"

namespace isoflow {

/// Z(u): constant drift in the first m0 slots and −‖λ_j‖·w_j·tanh(‖λ_j‖u_{m0+j})
/// in slot m0+j, where w_j = m_{λ_j} + 2m_{2λ_j}.
Vec vector_field(const MeanCurvatureCoefficients& coeffs, const Vec& u);

/// arcsinh(x) as log(x + √(x²+1)), with a series for |x| < 1e-4 and log(2|x|)
/// asymptotics for huge |x|.
double stable_asinh(double x);

/// One decay slot of the exact solution:
/// (1/L)·arcsinh(e^{−L²wt}·sinh(L·t0)). Works in log-magnitudes when L|t0| > 30.
double decay_slot(double root_norm, int weight, double t0, double t);

/// Exact integral curve of Z through u0 at time t ≥ 0.
Vec closed_form(const MeanCurvatureCoefficients& coeffs, const Vec& u0, double t);

struct FlowTrajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<double> speed;        // ‖Z(c(t))‖
  std::vector<double> dist_to_ref;  // norm of the decay slots of the numeric state
  std::vector<double> residual;     // ‖numeric − closed form‖
  double max_residual() const;
};

struct IntegrateOptions {
  double step = 1e-3;
  /// Record every `stride`-th step (the endpoint is always recorded).
  int stride = 1;
};

/// Classical RK4 with fixed step; the last step is shortened to land on the
/// horizon. Throws IntegrationError carrying the last finite sample.
FlowTrajectory integrate(const MeanCurvatureCoefficients& coeffs, const Vec& u0, double horizon,
                         const IntegrateOptions& opts = {});

/// √(Σ_j decay_slot_j(t)²): distance between the flow of the leaf with
/// offsets t_j and the reference flow through Exp(𝔟).
double leaf_distance(const MeanCurvatureCoefficients& coeffs, const std::vector<double>& offsets,
                     double t);

struct FlowVerdict {
  bool exists_for_all_time = true;
  /// "self_similar", "asymptotes_reference" or "converges_to_minimal".
  std::string regime;
  std::vector<double> decay_exponents;  // ‖λ_j‖²(m_{λ_j} + 2m_{2λ_j})
  bool verified = false;
};

FlowVerdict classify(const FoliationConfig& cfg);

/// The origin when 𝔟 = {0} (Z vanishes only there since tanh is strictly
/// increasing); absent when 𝔟 ≠ {0}, since Z then has a nonzero drift or
/// (with zero drift) a non-isolated zero set.
std::optional<Vec> find_minimal_leaf(const MeanCurvatureCoefficients& coeffs);

}  // namespace isoflow
