#include "isoflow/geodesic.hpp"

#include <cmath>
#include <limits>

#include "isoflow/connection.hpp"
#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

struct Steps {
  long count;
  double h;
};

Steps plan(double s, double step) {
  if (!(step > 0)) throw InputError("step must be positive");
  if (!std::isfinite(s)) throw InputError("geodesic parameter must be finite");
  const long count = std::max(1L, static_cast<long>(std::ceil(std::abs(s) / step - 1e-9)));
  return {count, s / static_cast<double>(count)};
}

Vec geodesic_rhs(const SolvableModel& model, const Vec& w) { return model.ad(w).transpose() * w; }

Mat transport_rhs(const SolvableModel& model, const Vec& w, const Mat& u) {
  Mat out(u.rows(), u.cols());
  for (Eigen::Index c = 0; c < u.cols(); ++c) out.col(c) = -levi_civita(model, w, u.col(c));
  return out;
}

std::vector<Mat> realization(const SolvableModel& model) {
  std::vector<Mat> out;
  for (int i = 0; i < model.dimension(); ++i) out.push_back(model.matrix(Vec::Unit(model.dimension(), i)));
  return out;
}

Mat realize(const std::vector<Mat>& basis, const Vec& w) {
  Mat m = Mat::Zero(basis.front().rows(), basis.front().cols());
  for (int i = 0; i < w.size(); ++i) m += w(i) * basis[i];
  return m;
}

void check_finite(const Vec& w, double s) {
  if (!w.allFinite()) {
    throw NumericalError("geodesic integration produced a non-finite state at s = " +
                         std::to_string(s));
  }
}

}  // namespace

std::vector<GeodesicSample> geodesic_path(const SolvableModel& model, const Vec& v, double s,
                                          const GeodesicOptions& opts) {
  if (v.size() != model.dimension()) throw InputError("initial velocity has wrong dimension");
  if (opts.stride < 1) throw InputError("stride must be >= 1");
  const Steps st = plan(s, opts.step);
  const std::vector<Mat> basis = opts.track_group ? realization(model) : std::vector<Mat>{};
  const int msize = model.lie().matrix_size();

  Vec w = v;
  Mat g = opts.track_group ? Mat::Identity(msize, msize) : Mat();
  std::vector<GeodesicSample> out{{0.0, w, g}};
  const double h = st.h;
  for (long i = 1; i <= st.count; ++i) {
    const Vec k1 = geodesic_rhs(model, w);
    const Vec w2 = w + 0.5 * h * k1;
    const Vec k2 = geodesic_rhs(model, w2);
    const Vec w3 = w + 0.5 * h * k2;
    const Vec k3 = geodesic_rhs(model, w3);
    const Vec w4 = w + h * k3;
    const Vec k4 = geodesic_rhs(model, w4);
    if (opts.track_group) {
      const Mat m1 = realize(basis, w);
      const Mat m2 = realize(basis, w2);
      const Mat m3 = realize(basis, w3);
      const Mat m4 = realize(basis, w4);
      const Mat g1 = g * m1;
      const Mat g2 = (g + 0.5 * h * g1) * m2;
      const Mat g3 = (g + 0.5 * h * g2) * m3;
      const Mat g4 = (g + h * g3) * m4;
      g += h / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
    }
    w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double si = h * static_cast<double>(i);
    check_finite(w, si);
    if (i % opts.stride == 0 || i == st.count) out.push_back({si, w, g});
  }
  return out;
}

GeodesicSample geodesic(const SolvableModel& model, const Vec& v, double s,
                        const GeodesicOptions& opts) {
  GeodesicOptions o = opts;
  o.stride = std::numeric_limits<int>::max();
  return geodesic_path(model, v, s, o).back();
}

Vec geodesic_velocity_closed_form(const SolvableModel& model, const Vec& xi, double s) {
  const auto root = homogeneous_root(model, xi);
  if (!root) throw UnsupportedArgument("closed-form geodesic needs ξ in 𝔞 or in a single g_λ");
  if (*root < 0) return xi;
  if (std::abs(xi.norm() - 1.0) > 1e-9) throw UnsupportedArgument("closed-form geodesic needs a unit ξ");
  const double l = model.datum().norm(*root);
  return xi / std::cosh(l * s) - std::tanh(l * s) / l * model.root_vector(*root);
}

std::vector<TransportSample> parallel_transport(const SolvableModel& model, const Vec& v,
                                                const Mat& vectors, double s,
                                                const GeodesicOptions& opts) {
  if (v.size() != model.dimension() || vectors.rows() != model.dimension()) {
    throw InputError("transport vectors have wrong dimension");
  }
  if (opts.stride < 1) throw InputError("stride must be >= 1");
  const Steps st = plan(s, opts.step);
  const double h = st.h;
  Vec w = v;
  Mat u = vectors;
  std::vector<TransportSample> out{{0.0, w, u}};
  for (long i = 1; i <= st.count; ++i) {
    const Vec k1 = geodesic_rhs(model, w);
    const Mat q1 = transport_rhs(model, w, u);
    const Vec w2 = w + 0.5 * h * k1;
    const Mat u2 = u + 0.5 * h * q1;
    const Vec k2 = geodesic_rhs(model, w2);
    const Mat q2 = transport_rhs(model, w2, u2);
    const Vec w3 = w + 0.5 * h * k2;
    const Mat u3 = u + 0.5 * h * q2;
    const Vec k3 = geodesic_rhs(model, w3);
    const Mat q3 = transport_rhs(model, w3, u3);
    const Vec w4 = w + h * k3;
    const Mat u4 = u + h * q3;
    const Vec k4 = geodesic_rhs(model, w4);
    const Mat q4 = transport_rhs(model, w4, u4);
    w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    u += h / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
    const double si = h * static_cast<double>(i);
    check_finite(w, si);
    if (!u.allFinite()) throw NumericalError("parallel transport produced a non-finite state");
    if (i % opts.stride == 0 || i == st.count) out.push_back({si, w, u});
  }
  return out;
}

}  // namespace isoflow
