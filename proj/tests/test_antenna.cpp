// SPDX-License-Identifier: Apache-2.0
//
// a2a-mimo: Monte Carlo simulator for aerial mmWave MU-MIMO uplinks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include <a2a_mimo/antenna.hpp>

#include "oracles.hpp"

using namespace a2a;

namespace
{
    const ArrayModel &patch_model(int nx, int ny)
    {
        static const ArrayModel ap = make_array_model({4, 4}, ElementPattern::patch({}));
        static const ArrayModel ue = make_array_model({2, 2}, ElementPattern::patch({}));
        return nx == 4 ? ap : ue;
    }

    BeamWeights random_weights(std::mt19937_64 &rng, Eigen::Index n) { return {oracle::random_complex_vector(rng, n)}; }

    double gain_integral(const ArrayModel &m, const BeamWeights &w)
    {
        return oracle::midpoint_sphere_integral([&](double t, double p)
                                                { return m.gain(w, Bearing{t, p}); },
                                                360, 720);
    }
}

// ---- steering_vector -----------------------------------------------------------------------------

TEST(SteeringVector, BroadsideIsAllOnes)
{
    for (double phi : {0.0, 1.0, 4.0})
    {
        const Eigen::VectorXcd a = steering_vector({2, 2}, Bearing{0.0, phi});
        ASSERT_EQ(a.size(), 4);
        for (Eigen::Index i = 0; i < 4; ++i)
            EXPECT_NEAR(std::abs(a[i] - cdouble(1.0)), 0.0, 1e-15);
    }
}

TEST(SteeringVector, EndfireAlongXAlternatesSign)
{
    const Eigen::VectorXcd a = steering_vector({2, 1}, Bearing{pi / 2, 0.0});
    EXPECT_NEAR(std::abs(a[0] - cdouble(1.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a[1] - cdouble(-1.0)), 0.0, 1e-15);
}

TEST(SteeringVector, UnitModulusAndXMajorOrder)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> th(0.0, pi), ph(0.0, 2 * pi);
    const PlanarArrayGeometry g(3, 5);
    for (int t = 0; t < 200; ++t)
    {
        const Bearing b{th(rng), ph(rng)};
        const Eigen::VectorXcd a = steering_vector(g, b);
        for (int ix = 0; ix < 3; ++ix)
            for (int iy = 0; iy < 5; ++iy)
            {
                const cdouble v = a[ix * 5 + iy];
                EXPECT_NEAR(std::abs(v), 1.0, 1e-14);
                EXPECT_NEAR(std::abs(v - oracle::element_phase(ix, iy, b.theta, b.phi)), 0.0, 1e-12);
            }
    }
}

TEST(PlanarArrayGeometry, RejectsEmptyAxis)
{
    EXPECT_THROW(PlanarArrayGeometry(0, 2), ConfigError);
    EXPECT_THROW(PlanarArrayGeometry(2, -1), ConfigError);
    EXPECT_EQ(PlanarArrayGeometry(4, 4).size(), 16);
    EXPECT_EQ(PlanarArrayGeometry(4, 3).index(2, 1), 7);
}

TEST(Bearing, DirectionRoundTrip)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(1e-3, pi - 1e-3), ph(0.0, 2 * pi);
    for (int i = 0; i < 500; ++i)
    {
        const Bearing b{th(rng), ph(rng)};
        const Bearing c = Bearing::from_direction(b.direction());
        EXPECT_NEAR(c.theta, b.theta, 1e-12);
        EXPECT_NEAR(oracle::azimuth_gap(c.phi, b.phi), 0.0, 1e-12);
    }
}

// ---- element patterns ----------------------------------------------------------------------------

TEST(PatchDesign, ReproducesTextbookExample)
{
    const PatchDimensions d = design_rectangular_patch({oracle::balanis::carrier_hz, oracle::balanis::eps_r, oracle::balanis::height_m});
    // The textbook takes c = 3e8 m/s (0.07% high) and rounds to 0.001 cm.
    EXPECT_NEAR(d.width_m / oracle::balanis::width_m, 1.0, 1e-3);
    EXPECT_NEAR(d.effective_permittivity, oracle::balanis::eps_reff, 0.6e-3);
    EXPECT_NEAR(d.length_extension_m, oracle::balanis::delta_l_m, 0.6e-5);
    EXPECT_NEAR(d.length_m / oracle::balanis::length_m, 1.0, 1e-3);
    EXPECT_NEAR(d.effective_length_m, d.length_m + 2 * d.length_extension_m, 1e-15);
}

TEST(PatchDesign, InvalidSubstrateIsConfigError)
{
    EXPECT_THROW(design_rectangular_patch({0.0, 2.2, 1.588e-3}), ConfigError);
    EXPECT_THROW(design_rectangular_patch({60e9, 0.9, 1.588e-3}), ConfigError);
    EXPECT_THROW(design_rectangular_patch({60e9, 2.2, 0.0}), ConfigError);
    EXPECT_THROW(ElementPattern::patch({60e9, 2.2, -1.0}), ConfigError);
    // Fringing longer than the half-wave: no physical patch.
    EXPECT_THROW(design_rectangular_patch({60e9, 2.2, 2e-2}), ConfigError);
}

TEST(PatchPattern, BoresightIsMaximum)
{
    const ElementPattern p = element_pattern_patch({});
    EXPECT_EQ(p.kind(), ElementKind::patch_two_slot);
    ASSERT_TRUE(p.patch_dimensions().has_value());
    const double peak = p.intensity(Bearing{0.0, 0.0});
    EXPECT_NEAR(peak, 1.0, 1e-15);
    for (int t = 0; t <= 180; ++t)
        for (int f = 0; f < 360; ++f)
            EXPECT_LE(p.intensity(Bearing{t * pi / 180, f * pi / 180}), peak + 1e-12);
}

TEST(PatchPattern, BackHemisphereIsZero)
{
    const ElementPattern p = element_pattern_patch({});
    EXPECT_EQ(p.intensity(Bearing{3 * pi / 4, 0.3}), 0.0);
    for (int f = 0; f < 360; f += 15)
        EXPECT_EQ(p.intensity(Bearing{pi / 2 + 1e-9, f * pi / 180}), 0.0);
}

TEST(PatchPattern, NonnegativeFiniteOnOneDegreeGrid)
{
    for (double f : {38.5e9, 60e9, 68e9})
    {
        const ElementPattern p = element_pattern_patch({f, 2.2, 1.588e-3});
        for (int t = 0; t <= 180; ++t)
            for (int ph = 0; ph < 360; ++ph)
            {
                const double v = p.intensity(Bearing{t * pi / 180, ph * pi / 180});
                ASSERT_TRUE(std::isfinite(v));
                ASSERT_GE(v, 0.0);
            }
    }
}

TEST(PatchPattern, ContinuousOnOpenHemisphere)
{
    const ElementPattern p = element_pattern_patch({});
    for (int ph = 0; ph < 360; ph += 5)
        for (int t = 0; t < 899; ++t)
        {
            const double a = p.intensity(Bearing{t * pi / 1800, ph * pi / 180});
            const double b = p.intensity(Bearing{(t + 1) * pi / 1800, ph * pi / 180});
            ASSERT_LT(std::abs(a - b), 0.01);
        }
}

TEST(ElementPattern, SimpleVariants)
{
    const ElementPattern iso = ElementPattern::isotropic();
    const ElementPattern cosine = ElementPattern::hemispheric_cosine();
    EXPECT_EQ(iso.intensity(Bearing{2.5, 1.0}), 1.0);
    EXPECT_NEAR(cosine.intensity(Bearing{pi / 3, 0.4}), 0.5, 1e-15);
    EXPECT_EQ(cosine.intensity(Bearing{2.0, 0.4}), 0.0);
    EXPECT_FALSE(iso.patch_dimensions().has_value());
    EXPECT_STREQ(to_string(iso.kind()), "isotropic");
    EXPECT_STREQ(to_string(cosine.kind()), "cosine");
    EXPECT_NEAR(iso.scaled(3.0).intensity(Bearing{}), 3.0, 1e-15);
    EXPECT_THROW(iso.scaled(0.0), DomainError);
}

// ---- quadrature ----------------------------------------------------------------------------------

TEST(Quadrature, GaussLegendreIsExactToDegree2nMinus1)
{
    for (int n : {1, 2, 5, 12, 90})
    {
        const QuadratureRule r = gauss_legendre(n);
        for (int deg = 0; deg <= 2 * n - 1 && deg <= 40; ++deg)
        {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += r.weights[i] * std::pow(r.nodes[i], deg);
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            EXPECT_NEAR(s, exact, 1e-13) << "n=" << n << " deg=" << deg;
        }
    }
}

TEST(Quadrature, SphereWeightsSumToSurfaceArea)
{
    double s = 0.0;
    for (const SphereNode &n : sphere_quadrature({}))
        s += n.weight;
    EXPECT_NEAR(s, 4 * pi, 1e-11);
    EXPECT_THROW(sphere_quadrature({1, 10}), DomainError);
}

// ---- coupling_matrix -----------------------------------------------------------------------------

TEST(CouplingMatrix, SingleIsotropicElementIsSurfaceArea)
{
    const CouplingMatrix q = coupling_matrix({1, 1}, ElementPattern::isotropic());
    ASSERT_EQ(q.matrix().rows(), 1);
    EXPECT_NEAR(q.matrix()(0, 0).real(), 4 * pi, 1e-11);
    EXPECT_NEAR(q.matrix()(0, 0).imag(), 0.0, 1e-15);
}

TEST(CouplingMatrix, IsotropicPairIsDiagonal)
{
    const CouplingMatrix q = coupling_matrix({2, 1}, ElementPattern::isotropic());
    const Eigen::MatrixXcd expected = oracle::isotropic_pair_coupling(0.0) * Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_NEAR(oracle::isotropic_pair_coupling(1.0), 0.0, 1e-12);
    EXPECT_LT((q.matrix() - expected).norm(), 1e-10);
}

TEST(CouplingMatrix, IsotropicSquareMatchesSincClosedForm)
{
    const PlanarArrayGeometry g(2, 2);
    const CouplingMatrix q = coupling_matrix(g, ElementPattern::isotropic());
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
        {
            const double dx = a / 2 - b / 2, dy = a % 2 - b % 2;
            const double expected = oracle::isotropic_pair_coupling(std::hypot(dx, dy));
            EXPECT_NEAR(q.matrix()(a, b).real(), expected, 1e-9);
            EXPECT_NEAR(q.matrix()(a, b).imag(), 0.0, 1e-9);
        }
}

TEST(CouplingMatrix, PatchInvariants)
{
    for (int n : {2, 4})
    {
        const CouplingMatrix &q = patch_model(n, n).coupling;
        const Eigen::MatrixXcd &m = q.matrix();
        EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_GT(q.min_eigenvalue(), 0.0);
        const Eigen::VectorXd d = m.diagonal().real();
        EXPECT_LT((d.maxCoeff() - d.minCoeff()) / d.maxCoeff(), 1e-9);
        EXPECT_LT(m.diagonal().imag().cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(CouplingMatrix, DefaultResolutionMatchesDoubledResolution)
{
    const PlanarArrayGeometry g(4, 4);
    const ElementPattern p = ElementPattern::patch({});
    const Eigen::MatrixXcd coarse = integrate_coupling(g, p, {});
    const Eigen::MatrixXcd fine = integrate_coupling(g, p, QuadratureResolution{}.doubled());
    EXPECT_LT((fine - coarse).norm() / fine.norm(), 1e-6);
    EXPECT_EQ(patch_model(4, 4).coupling.resolution(), QuadratureResolution{});
    EXPECT_LT(patch_model(4, 4).coupling.refinement_change(), 1e-6);
}

TEST(CouplingMatrix, AgreesWithBruteForceMidpointIntegration)
{
    const PlanarArrayGeometry g(4, 4);
    const ElementPattern p = ElementPattern::patch({});
    const Eigen::MatrixXcd &q = patch_model(4, 4).coupling.matrix();
    for (auto [a, b] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{0, 5}, std::pair{3, 12}, std::pair{6, 9}})
    {
        const int ax = a / 4, ay = a % 4, bx = b / 4, by = b % 4;
        const auto part = [&](bool imag)
        {
            return oracle::midpoint_sphere_integral(
                [&](double t, double f)
                {
                    const cdouble v = oracle::element_phase(ax, ay, t, f) * std::conj(oracle::element_phase(bx, by, t, f)) *
                                      p.intensity(Bearing{t, f});
                    return imag ? v.imag() : v.real();
                },
                720, 720);
        };
        const cdouble ref(part(false), part(true));
        EXPECT_LT(std::abs(q(a, b) - ref) / std::abs(q(0, 0)), 1e-4) << a << "," << b;
    }
}

TEST(CouplingMatrix, NonConvergenceIsNumericalError)
{
    ConvergenceOptions opts;
    opts.tolerance = 1e-15;
    opts.max_doublings = 0;
    EXPECT_THROW(coupling_matrix({4, 4}, ElementPattern::patch({}), {4, 4}, opts), NumericalError);
}

TEST(CouplingMatrix, SingularIsNumericalError)
{
    EXPECT_THROW(CouplingMatrix({2, 1}, Eigen::MatrixXcd::Zero(2, 2), {}), NumericalError);
    Eigen::MatrixXcd rank_one = Eigen::MatrixXcd::Ones(2, 2);
    EXPECT_THROW(CouplingMatrix({2, 1}, rank_one, {}), NumericalError);
    EXPECT_THROW(CouplingMatrix({2, 2}, Eigen::MatrixXcd::Identity(2, 2), {}), DomainError);
}

// ---- gain ----------------------------------------------------------------------------------------

TEST(Gain, SingleIsotropicElementIsUnity)
{
    const ArrayModel m = make_array_model({1, 1}, ElementPattern::isotropic());
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i)
    {
        const BeamWeights w = random_weights(rng, 1);
        EXPECT_NEAR(m.gain(w, Bearing{i * 0.15, i * 0.3}), 1.0, 1e-12);
    }
}

TEST(Gain, IsotropicPairBroadsideIsTwo)
{
    const ArrayModel m = make_array_model({2, 1}, ElementPattern::isotropic());
    const BeamWeights w = max_directivity_weights(m.coupling, Bearing{});
    EXPECT_NEAR(m.gain(w, Bearing{}), 2.0, 1e-9);
}

TEST(Gain, IntegratesToSurfaceArea)
{
    std::mt19937_64 rng(11);
    for (int n : {2, 4})
    {
        const ArrayModel &m = patch_model(n, n);
        for (int i = 0; i < 3; ++i)
            EXPECT_NEAR(gain_integral(m, random_weights(rng, m.geometry.size())) / (4 * pi), 1.0, 5e-3);
        EXPECT_NEAR(gain_integral(m, max_directivity_weights(m.coupling, Bearing{0.3, 1.0})) / (4 * pi), 1.0, 5e-3);
    }
}

TEST(Gain, ScaleInvariantInWeights)
{
    std::mt19937_64 rng(5);
    const ArrayModel &m = patch_model(4, 4);
    for (int i = 0; i < 50; ++i)
    {
        const BeamWeights w = random_weights(rng, 16);
        const cdouble c = oracle::random_complex(rng, 1, 1)(0, 0) * 1e3;
        const Bearing b{0.02 * i, 0.1 * i};
        const double g1 = m.gain(w, b), g2 = m.gain({c * w.w}, b);
        EXPECT_NEAR(g2, g1, 1e-12 * std::max(1.0, g1));
    }
}

TEST(Gain, InvariantUnderJointPatternAndCouplingScaling)
{
    const PlanarArrayGeometry g(2, 2);
    const ElementPattern p = ElementPattern::patch({});
    const ElementPattern p7 = p.scaled(7.0);
    const ArrayModel &m = patch_model(2, 2);
    const CouplingMatrix q7 = coupling_matrix(g, p7);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 30; ++i)
    {
        const BeamWeights w = random_weights(rng, 4);
        const Bearing b{0.04 * i, 0.2 * i};
        EXPECT_NEAR(gain(g, p7, q7, w, b), m.gain(w, b), 1e-10 * std::max(1.0, m.gain(w, b)));
    }
}

TEST(Gain, ErrorPaths)
{
    const ArrayModel &m = patch_model(2, 2);
    EXPECT_THROW(m.gain({Eigen::VectorXcd::Zero(4)}, Bearing{}), DomainError);
    EXPECT_THROW(m.gain({Eigen::VectorXcd::Ones(3)}, Bearing{}), DomainError);
    EXPECT_THROW(gain({4, 4}, m.pattern, m.coupling, {Eigen::VectorXcd::Ones(16)}, Bearing{}), DomainError);
}

// ---- max_directivity_weights ---------------------------------------------------------------------

TEST(MaxDirectivity, SingleElementGainEqualsElementGain)
{
    const ElementPattern p = ElementPattern::patch({});
    const ArrayModel m = make_array_model({1, 1}, p);
    const double integral = oracle::midpoint_sphere_integral([&](double t, double f)
                                                             { return p.intensity(Bearing{t, f}); },
                                                             720, 720);
    for (const Bearing b : {Bearing{}, Bearing{0.4, 1.1}, Bearing{1.2, 3.0}})
    {
        const BeamWeights w = max_directivity_weights(m.coupling, b);
        ASSERT_EQ(w.w.size(), 1);
        EXPECT_NEAR(m.gain(w, b), 4 * pi * p.intensity(b) / integral, 1e-5 * (1 + m.gain(w, b)));
    }
}

TEST(MaxDirectivity, IsotropicPairIsConjugateBeamforming)
{
    const CouplingMatrix q = coupling_matrix({2, 1}, ElementPattern::isotropic());
    const Eigen::VectorXcd w = max_directivity_weights(q, Bearing{}).w;
    EXPECT_NEAR(std::abs(w[0] - w[1]) / std::abs(w[0]), 0.0, 1e-10);
}

TEST(MaxDirectivity, BeatsRandomSearch)
{
    const ArrayModel &m = patch_model(4, 4);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> th(0.0, pi / 3), ph(0.0, 2 * pi);
    const Bearing b{th(rng), ph(rng)};
    const Eigen::VectorXcd a = steering_vector(m.geometry, b);
    const double best = rayleigh_quotient(m.coupling, max_directivity_weights(m.coupling, b), a);
    for (int i = 0; i < 10000; ++i)
        ASSERT_GE(best * (1 + 1e-12), rayleigh_quotient(m.coupling, random_weights(rng, 16), a));
}

TEST(MaxDirectivity, OptimalOverManyBearings)
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> th(0.0, pi), ph(0.0, 2 * pi);
    for (int n : {2, 4})
    {
        const ArrayModel &m = patch_model(n, n);
        for (int t = 0; t < 1000; ++t)
        {
            const Bearing b{th(rng), ph(rng)};
            const Eigen::VectorXcd a = steering_vector(m.geometry, b);
            const double best = rayleigh_quotient(m.coupling, max_directivity_weights(m.coupling, b), a);
            for (int i = 0; i < 100; ++i)
                ASSERT_GE(best * (1 + 1e-12), rayleigh_quotient(m.coupling, random_weights(rng, m.geometry.size()), a));
        }
    }
}

TEST(MaxDirectivity, MatchesPrincipalEigenvector)
{
    const ArrayModel &m = patch_model(2, 2);
    const Bearing b{0.5, 2.0};
    const Eigen::VectorXcd a = steering_vector(m.geometry, b);
    const Eigen::MatrixXcd qinv_a = m.coupling.matrix().inverse() * (a * a.adjoint());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(qinv_a);
    Eigen::Index top = 0;
    es.eigenvalues().cwiseAbs().maxCoeff(&top);
    const Eigen::VectorXcd v = es.eigenvectors().col(top);
    const Eigen::VectorXcd w = max_directivity_weights(m.coupling, b).w;
    const double cos2 = std::norm(v.dot(w)) / (v.squaredNorm() * w.squaredNorm());
    EXPECT_NEAR(cos2, 1.0, 1e-9);
}

TEST(ArrayDumps, CsvLayouts)
{
    const ArrayModel &m = patch_model(2, 2);
    std::ostringstream q, g;
    write_matrix_csv(q, m.coupling.matrix());
    const std::vector<double> cuts{0.0, 90.0};
    write_gain_cut_csv(g, m, max_directivity_weights(m.coupling, Bearing{}), cuts, 1.0);
    const std::string qs = q.str(), gs = g.str();
    EXPECT_EQ(qs.substr(0, 14), "row,col,re,im\n");
    EXPECT_EQ(std::count(qs.begin(), qs.end(), '\n'), 17);
    EXPECT_EQ(gs.substr(0, 26), "theta_deg,phi_deg,gain_dBi");
    EXPECT_EQ(std::count(gs.begin(), gs.end(), '\n'), 1 + 2 * 181);
}
