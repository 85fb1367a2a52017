#include "isoflow/flow.hpp"

#include <algorithm>
#include <cmath>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

void check_dim(const MeanCurvatureCoefficients& coeffs, const Vec& u) {
  if (u.size() != coeffs.dimension()) {
    throw InputError("state has dimension " + std::to_string(u.size()) + ", expected m0 + k = " +
                     std::to_string(coeffs.dimension()));
  }
}

constexpr double kLogMagnitudeThreshold = 30.0;

}  // namespace

Vec vector_field(const MeanCurvatureCoefficients& coeffs, const Vec& u) {
  check_dim(coeffs, u);
  Vec z(u.size());
  for (int i = 0; i < coeffs.m0(); ++i) z(i) = coeffs.drift[i];
  for (int j = 0; j < coeffs.k(); ++j) {
    const double l = coeffs.root_norm[j];
    z(coeffs.m0() + j) = -l * coeffs.weight[j] * std::tanh(l * u(coeffs.m0() + j));
  }
  return z;
}

double stable_asinh(double x) {
  const double a = std::abs(x);
  double r;
  if (a < 1e-4) {
    const double a2 = a * a;
    r = a * (1.0 - a2 / 6.0 + 3.0 * a2 * a2 / 40.0);
  } else if (a > 1e150) {
    r = std::log(a) + std::log(2.0);
  } else {
    // log(a + √(a²+1)) written as log1p to keep accuracy near zero
    r = std::log1p(a + a * a / (std::sqrt(a * a + 1.0) + 1.0));
  }
  return std::copysign(r, x);
}

double decay_slot(double root_norm, int weight, double t0, double t) {
  const double l = root_norm;
  const double kappa = l * l * weight;
  const double y = l * std::abs(t0);
  if (t0 == 0.0) return 0.0;
  double magnitude;
  if (y <= kLogMagnitudeThreshold) {
    magnitude = stable_asinh(std::exp(-kappa * t) * std::sinh(y));
  } else {
    // log sinh(y) = y − log 2 + log1p(−e^{−2y})
    const double log_x = -kappa * t + y - std::log(2.0) + std::log1p(-std::exp(-2.0 * y));
    if (log_x > kLogMagnitudeThreshold) {
      magnitude = log_x + std::log(2.0) + std::log1p(std::exp(-2.0 * log_x) / 4.0);
    } else {
      magnitude = stable_asinh(std::exp(log_x));
    }
  }
  return std::copysign(magnitude / l, t0);
}

Vec closed_form(const MeanCurvatureCoefficients& coeffs, const Vec& u0, double t) {
  check_dim(coeffs, u0);
  if (!(t >= 0.0)) throw InputError("closed_form needs t >= 0");
  Vec c(u0.size());
  for (int i = 0; i < coeffs.m0(); ++i) c(i) = u0(i) + t * coeffs.drift[i];
  for (int j = 0; j < coeffs.k(); ++j) {
    c(coeffs.m0() + j) = decay_slot(coeffs.root_norm[j], coeffs.weight[j], u0(coeffs.m0() + j), t);
  }
  return c;
}

double FlowTrajectory::max_residual() const {
  return residual.empty() ? 0.0 : *std::max_element(residual.begin(), residual.end());
}

FlowTrajectory integrate(const MeanCurvatureCoefficients& coeffs, const Vec& u0, double horizon,
                         const IntegrateOptions& opts) {
  check_dim(coeffs, u0);
  if (!(horizon > 0) || !std::isfinite(horizon)) throw InputError("horizon must be positive");
  if (!(opts.step > 0)) throw InputError("step must be positive");
  if (opts.stride < 1) throw InputError("stride must be >= 1");
  if (!u0.allFinite()) throw InputError("initial state must be finite");

  const long count = std::max(1L, static_cast<long>(std::ceil(horizon / opts.step - 1e-9)));
  FlowTrajectory traj;
  const auto record = [&](double t, const Vec& u) {
    traj.times.push_back(t);
    traj.states.push_back(u);
    traj.speed.push_back(vector_field(coeffs, u).norm());
    traj.dist_to_ref.push_back(u.tail(coeffs.k()).norm());
    traj.residual.push_back((u - closed_form(coeffs, u0, t)).norm());
  };

  Vec u = u0;
  record(0.0, u);
  double t = 0.0;
  for (long i = 1; i <= count; ++i) {
    const double h = i == count ? horizon - opts.step * static_cast<double>(count - 1) : opts.step;
    const Vec k1 = vector_field(coeffs, u);
    const Vec k2 = vector_field(coeffs, u + 0.5 * h * k1);
    const Vec k3 = vector_field(coeffs, u + 0.5 * h * k2);
    const Vec k4 = vector_field(coeffs, u + h * k3);
    const Vec next = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double tn = i == count ? horizon : opts.step * static_cast<double>(i);
    if (!next.allFinite()) {
      throw IntegrationError("flow state became non-finite at t = " + std::to_string(tn), t,
                             std::vector<double>(u.data(), u.data() + u.size()));
    }
    u = next;
    t = tn;
    if (i % opts.stride == 0 || i == count) record(t, u);
  }
  return traj;
}

double leaf_distance(const MeanCurvatureCoefficients& coeffs, const std::vector<double>& offsets,
                     double t) {
  if (static_cast<int>(offsets.size()) != coeffs.k()) throw InputError("expected k offsets");
  if (!(t >= 0.0)) throw InputError("leaf_distance needs t >= 0");
  double sum = 0;
  for (int j = 0; j < coeffs.k(); ++j) {
    const double c = decay_slot(coeffs.root_norm[j], coeffs.weight[j], offsets[j], t);
    sum += c * c;
  }
  return std::sqrt(sum);
}

FlowVerdict classify(const FoliationConfig& cfg) {
  cfg.validate();
  const MeanCurvatureCoefficients coeffs = cfg.coefficients();
  FlowVerdict v;
  v.decay_exponents = coeffs.decay_rates();
  v.verified = coeffs.verified;
  const bool all_zero =
      std::all_of(cfg.offsets.begin(), cfg.offsets.end(), [](double t) { return t == 0.0; });
  if (cfg.m0() == 0) {
    v.regime = "converges_to_minimal";
  } else if (all_zero) {
    v.regime = "self_similar";
  } else {
    v.regime = "asymptotes_reference";
  }
  return v;
}

std::optional<Vec> find_minimal_leaf(const MeanCurvatureCoefficients& coeffs) {
  if (coeffs.m0() > 0) return std::nullopt;
  if (coeffs.k() == 0) return std::nullopt;
  return Vec::Zero(coeffs.k());
}

}  // namespace isoflow
