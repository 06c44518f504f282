// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/sphere.hpp"

using namespace ts;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {

struct Setup {
  std::shared_ptr<SphereGrid> grid = std::make_shared<SphereGrid>(16);
  SphereHarmonics sh{grid};
};

}  // namespace

TEST_CASE("real harmonics are orthonormal under the quadrature") {
  Setup s;
  const int nb = 17 * 17;
  double worst = 0.0;
  for (int k = 0; k < nb; ++k) {
    SphereFunction f = SphereFunction::zero(16);
    f.coeffs(k) = 1.0;
    SphereFunction back = s.sh.analyze(s.sh.synthesize(f));
    back.coeffs(k) -= 1.0;
    worst = std::max(worst, back.coeffs.cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("laplace-beltrami acts by -l(l+1) on each harmonic") {
  Setup s;
  SphereFunction f = SphereFunction::zero(16);
  f.at(3, 1) = 1.0;
  const VectorXd Yt = s.sh.synthesize_dtheta(f);
  const VectorXd Ytt = s.sh.synthesize_dtheta2(f);
  const VectorXd Ypp =
      s.sh.synthesize(SphereHarmonics::dphi(SphereHarmonics::dphi(f)));
  const VectorXd Y = s.sh.synthesize(f);
  for (int it = 0; it < s.grid->n_theta(); ++it) {
    const double th = s.grid->theta()(it);
    for (int ip = 0; ip < s.grid->n_phi(); ++ip) {
      const int i = s.grid->index(it, ip);
      const double lap =
          Ytt(i) + Yt(i) / std::tan(th) + Ypp(i) / (std::sin(th) * std::sin(th));
      CHECK(std::abs(lap - laplace_beltrami_multiplier(3) * Y(i)) < 1e-8);
    }
  }
}

TEST_CASE("exact curvature of a concentric sphere is 1/(1+c)") {
  Setup s;
  SphereFunction rho = SphereFunction::zero(16);
  rho.at(0, 0) = 0.25 * std::sqrt(4.0 * M_PI);  // rho = 0.25 everywhere
  const VectorXd kappa = mean_curvature_nodal(rho, /*exact=*/true, s.sh);
  CHECK((kappa.array() - 1.0 / 1.25).abs().maxCoeff() < 1e-12);
}

TEST_CASE("curvature and normal linearizations are second-order accurate") {
  Setup s;
  SphereFunction base = SphereFunction::zero(16);
  base.at(2, 0) = 1.0;
  base.at(3, 1) = 0.5;
  base.at(4, -2) = 0.3;

  const double eps[3] = {1e-2, 5e-3, 2.5e-3};
  double kerr[3], nerr[3];
  for (int j = 0; j < 3; ++j) {
    SphereFunction rho = base;
    rho.coeffs *= eps[j];
    kerr[j] = (mean_curvature_nodal(rho, true, s.sh) -
               mean_curvature_nodal(rho, false, s.sh))
                  .cwiseAbs()
                  .maxCoeff();
    nerr[j] = (normal_perturbed(rho, true, s.sh) - normal_perturbed(rho, false, s.sh))
                  .cwiseAbs()
                  .maxCoeff();
  }
  CHECK(std::log2(kerr[0] / kerr[1]) >= 1.9);
  CHECK(std::log2(kerr[1] / kerr[2]) >= 1.9);
  CHECK(std::log2(nerr[0] / nerr[1]) >= 1.9);
  CHECK(std::log2(nerr[1] / nerr[2]) >= 1.9);
}

TEST_CASE("degree-one perturbations do not change linearized curvature") {
  Setup s;
  SphereFunction rho = SphereFunction::zero(16);
  rho.at(1, 0) = 2e-3;
  rho.at(1, -1) = -1e-3;
  const VectorXd kappa = mean_curvature_nodal(rho, /*exact=*/false, s.sh);
  CHECK((kappa.array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("cutoff is C^1-flat at the band edges and obeys the slope bound") {
  const double d = 0.07;
  CHECK(hanzawa_chi(0.0, d) == 1.0);
  CHECK(hanzawa_chi(d, d) == 1.0);
  CHECK(hanzawa_chi(3.0 * d, d) == 0.0);
  CHECK(hanzawa_chi(-3.5 * d, d) == 0.0);
  CHECK(hanzawa_chi(2.0 * d, d) == doctest::Approx(0.5).epsilon(1e-12));
  double max_slope = 0.0;
  const int m = 40000;
  for (int i = 1; i < m; ++i) {
    const double t1 = d + 2.0 * d * i / m, t0 = t1 - 2.0 * d / m;
    max_slope = std::max(
        max_slope, std::abs(hanzawa_chi(t1, d) - hanzawa_chi(t0, d)) / (t1 - t0));
  }
  CHECK(max_slope < 2.0 / (3.0 * d));
}

TEST_CASE("hanzawa map is the identity away from the boundary band") {
  Setup s;
  SphereFunction rho = SphereFunction::zero(16);
  rho.at(2, 0) = 0.02;
  HanzawaMapSpec spec{rho, 0.1};
  const Vector3d inner(0.1, -0.2, 0.15);
  CHECK((hanzawa_map(spec, s.sh, inner) - inner).norm() == 0.0);
  const Vector3d outer(1.0, 1.0, 0.5);
  CHECK((hanzawa_map(spec, s.sh, outer) - outer).norm() == 0.0);
  CHECK((hanzawa_map(spec, s.sh, Vector3d::Zero())).norm() == 0.0);
}

TEST_CASE("hanzawa map shifts boundary points by rho along the radius") {
  Setup s;
  SphereFunction rho = SphereFunction::zero(16);
  rho.at(2, 0) = 0.02;
  rho.at(3, -2) = -0.01;
  HanzawaMapSpec spec{rho, 0.1};
  const double th = 1.1, ph = 2.3;
  const Vector3d x(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                   std::cos(th));
  const double val = rho.coeffs.dot(s.sh.basis_at(th, ph));
  CHECK((hanzawa_map(spec, s.sh, x) - (1.0 + val) * x).norm() < 1e-14);
}

TEST_CASE("hanzawa map rejects displacements larger than the band width") {
  Setup s;
  SphereFunction rho = SphereFunction::zero(16);
  rho.at(0, 0) = 0.2 * std::sqrt(4.0 * M_PI);
  HanzawaMapSpec spec{rho, 0.1};
  CHECK_THROWS_AS(hanzawa_map(spec, s.sh, Vector3d(1.0, 0.0, 0.0)), DomainError);
}
