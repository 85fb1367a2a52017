#include <gtest/gtest.h>

#include <cmath>

#include "isoflow/block_operator.hpp"
#include "isoflow/connection.hpp"
#include "isoflow/errors.hpp"
#include "isoflow/geodesic.hpp"
#include "isoflow/lie_model.hpp"
#include "support.hpp"

namespace isoflow {
namespace {

using testing::model;
using testing::unit;

class EveryModel : public ::testing::TestWithParam<std::string> {};

TEST_P(EveryModel, RealizationInvariants) {
  const ModelInvariants inv = check_invariants(model(GetParam())->lie());
  EXPECT_LT(inv.jacobi, 1e-12);
  EXPECT_LT(inv.killing_symmetry, 1e-12);
  EXPECT_LT(inv.killing_invariance, 1e-10);
  EXPECT_LT(inv.theta_involution, 1e-12);
  EXPECT_LT(inv.theta_automorphism, 1e-12);
  EXPECT_GT(inv.min_eigen_p, 0);
  EXPECT_LT(inv.max_eigen_k, 0);
  EXPECT_LT(inv.cartan_in_p, 1e-12);
  EXPECT_LT(inv.cartan_abelian, 1e-12);
}

TEST_P(EveryModel, IwasawaDimensionsAddUp) {
  const auto m = model(GetParam());
  EXPECT_EQ(m->dimension() + m->k_dimension(), m->lie().dimension());
  int n_dim = 0;
  for (int r = 0; r < m->datum().size(); ++r) n_dim += m->datum().mult[r];
  EXPECT_EQ(m->dimension(), m->rank() + n_dim);
}

TEST_P(EveryModel, AdaptedBasisIsOrthonormal) {
  const auto m = model(GetParam());
  EXPECT_LT(max_deviation(m->induced_metric(), Mat::Identity(m->dimension(), m->dimension())), 1e-10);
}

TEST_P(EveryModel, RootSpacesAreEigenspaces) {
  const auto m = model(GetParam());
  const int n = m->dimension();
  for (int a = 0; a < m->rank(); ++a) {
    for (int i = m->rank(); i < n; ++i) {
      const double lam = m->root_value(m->root_of(i), unit(n, a));
      EXPECT_LT((m->bracket(unit(n, a), unit(n, i)) - lam * unit(n, i)).norm(), 1e-10);
    }
  }
}

TEST_P(EveryModel, AdStarIsMetricAdjoint) {
  const auto m = model(GetParam());
  const int n = m->dimension();
  for (int i = 0; i < n; ++i) {
    const Mat a = m->ad(unit(n, i));
    EXPECT_LT(max_deviation(ad_star(*m, unit(n, i)), a.transpose()), 1e-12);
    EXPECT_LT(max_deviation(ad_star_table(*m, unit(n, i)), a.transpose()), 1e-10);
  }
}

TEST_P(EveryModel, ConnectionTableMatchesMilnorFormula) {
  const auto m = model(GetParam());
  const int n = m->dimension();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec x = unit(n, i), y = unit(n, j);
      const Vec nab = levi_civita(*m, x, y);
      EXPECT_LT((levi_civita_table(*m, x, y) - nab).cwiseAbs().maxCoeff(), 1e-10) << i << "," << j;
      EXPECT_LT((nab - levi_civita(*m, y, x) - m->bracket(x, y)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST_P(EveryModel, CurvatureSymmetriesAndSign) {
  const auto m = model(GetParam());
  const int n = m->dimension();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Vec r = curvature(*m, unit(n, i), unit(n, j), unit(n, k));
        EXPECT_LT((r + curvature(*m, unit(n, j), unit(n, i), unit(n, k))).norm(), 1e-10);
        const Vec cyc = r + curvature(*m, unit(n, j), unit(n, k), unit(n, i)) +
                        curvature(*m, unit(n, k), unit(n, i), unit(n, j));
        EXPECT_LT(cyc.norm(), 1e-10);
        EXPECT_LT((curvature_table(*m, unit(n, i), unit(n, j), unit(n, k)) - r).norm(), 1e-10);
      }
      if (i != j) EXPECT_LE(curvature(*m, unit(n, i), unit(n, j), unit(n, j))(i), 1e-10);
    }
  }
}

TEST_P(EveryModel, CartanSubalgebraIsFlat) {
  const auto m = model(GetParam());
  const int n = m->dimension();
  for (int a = 0; a < m->rank(); ++a) {
    for (int b = 0; b < m->rank(); ++b) {
      EXPECT_LT(curvature(*m, unit(n, a), unit(n, b), unit(n, b)).norm(), 1e-12);
    }
  }
}

TEST_P(EveryModel, GeodesicMatchesClosedForm) {
  const auto m = model(GetParam());
  GeodesicOptions opts;
  opts.track_group = false;
  opts.stride = 50;
  for (int r = 0; r < m->datum().size(); ++r) {
    for (int idx : m->root_space(r)) {
      const Vec xi = unit(m->dimension(), idx);
      for (double end : {5.0, -5.0}) {
        for (const auto& s : geodesic_path(*m, xi, end, opts)) {
          EXPECT_LT((s.velocity - geodesic_velocity_closed_form(*m, xi, s.s)).cwiseAbs().maxCoeff(), 1e-7);
        }
      }
    }
  }
}

TEST_P(EveryModel, GeodesicSpeedIsConstant) {
  const auto m = model(GetParam());
  const int n = m->dimension();
  Vec v = Vec::LinSpaced(n, 1.0, 2.0);
  v.normalize();
  for (const auto& s : geodesic_path(*m, v, 3.0, {1e-3, 100, false})) EXPECT_NEAR(s.velocity.norm(), 1.0, 1e-10);
}

TEST_P(EveryModel, ParallelTransportIsIsometric) {
  const auto m = model(GetParam());
  const int n = m->dimension();
  Vec v = Vec::LinSpaced(n, -1.0, 1.0);
  v.normalize();
  const Mat frame = Mat::Identity(n, n);
  const auto path = parallel_transport(*m, v, frame, 2.0);
  const Mat& end = path.back().transported;
  EXPECT_LT(max_deviation(end.transpose() * end, Mat::Identity(n, n)), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Models, EveryModel, ::testing::Values("sl2r", "sl3r", "su21", "su31"));

TEST(RootSpaceDecomposition, Sl3rHasThreeRootsOfMultiplicityOne) {
  const auto m = model("sl3r");
  EXPECT_EQ(m->rank(), 2);
  ASSERT_EQ(m->datum().size(), 3);
  for (int r = 0; r < 3; ++r) {
    EXPECT_EQ(m->datum().mult[r], 1);
    EXPECT_NEAR(m->datum().norm(r), 1.0 / std::sqrt(3.0), 1e-12);
    EXPECT_FALSE(m->datum().double_of(r).has_value());
  }
}

TEST(RootSpaceDecomposition, Su21IsNonReduced) {
  const auto m = model("su21");
  EXPECT_EQ(m->rank(), 1);
  ASSERT_EQ(m->datum().size(), 2);
  EXPECT_EQ(m->datum().mult[0], 2);
  EXPECT_EQ(m->datum().mult[1], 1);
  EXPECT_EQ(m->datum().double_of(0), 1);
  EXPECT_NEAR(m->datum().norm(0), 1.0 / (2.0 * std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(m->datum().norm(1), 1.0 / std::sqrt(3.0), 1e-12);
}

TEST(RootSpaceDecomposition, Su31Multiplicities) {
  const auto m = model("su31");
  ASSERT_EQ(m->datum().size(), 2);
  EXPECT_EQ(m->datum().mult[0], 4);
  EXPECT_EQ(m->datum().mult[1], 1);
  EXPECT_NEAR(m->datum().norm(0), 0.25, 1e-12);
  EXPECT_NEAR(m->datum().norm(1), 0.5, 1e-12);
}

TEST(RootSpaceDecomposition, Sl2rRootNorm) {
  EXPECT_NEAR(model("sl2r")->datum().norm(0), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(RootSpaceDecomposition, BracketOfThetaXiWithDoubleHasTwiceRootNorm) {
  for (const char* id : {"su21", "su31"}) {
    const auto m = model(id);
    const int n = m->dimension();
    const Vec xi = unit(n, m->root_space(0).front());
    const Vec x = unit(n, m->root_space(1).front());
    const Vec y = m->require_an(m->lie().bracket(m->theta(xi), m->to_algebra(x)));
    EXPECT_NEAR(y.norm(), 2.0 * m->datum().norm(0), 1e-12) << id;
  }
}

TEST(LieModel, UnknownIdIsRejected) { EXPECT_THROW(make_model("so42"), InputError); }

TEST(SolvableModel, CompactPartIsNotInAN) {
  const auto m = model("sl3r");
  ASSERT_GT(m->k_dimension(), 0);
  const Vec k0 = m->k_basis().col(0);
  EXPECT_THROW(m->require_an(k0), ModelError);
}

TEST(Connection, TableRejectsMixedVectors) {
  const auto m = model("su21");
  const int n = m->dimension();
  const Vec mixed = unit(n, m->root_space(0).front()) + unit(n, m->root_space(1).front());
  EXPECT_THROW(ad_star_table(*m, mixed), UnsupportedArgument);
  EXPECT_FALSE(homogeneous_root(*m, mixed).has_value());
  EXPECT_EQ(homogeneous_root(*m, unit(n, 0)), -1);
}

TEST(Connection, CartanDirectionIsParallel) {
  const auto m = model("su31");
  const int n = m->dimension();
  for (int j = 0; j < n; ++j) EXPECT_LT(levi_civita(*m, unit(n, 0), unit(n, j)).norm(), 1e-12);
}

TEST(Geodesic, ClosedFormRejectsNonUnitInput) {
  const auto m = model("su21");
  EXPECT_THROW(geodesic_velocity_closed_form(*m, 2.0 * unit(m->dimension(), 1), 1.0), UnsupportedArgument);
}

TEST(Geodesic, CartanGeodesicIsOneParameterSubgroup) {
  const auto m = model("sl2r");
  const Vec a = unit(m->dimension(), 0);
  const GeodesicSample end = geodesic(*m, a, 1.5);
  const Mat h = 1.5 * m->matrix(a);
  ASSERT_LT(max_deviation(h, Mat(h.diagonal().asDiagonal())), 1e-14);
  const Mat expected = h.diagonal().array().exp().matrix().asDiagonal();
  EXPECT_LT(max_deviation(end.group, expected), 1e-9);
}

}  // namespace
}  // namespace isoflow
