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

#ifndef A2A_MIMO_ANTENNA_HPP
#define A2A_MIMO_ANTENNA_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "text.hpp"

/*!SECTION
Planar array antennas
SECTION!*/

namespace a2a
{
    using cdouble = std::complex<double>;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0; // m/s

    // ---------------------------------------------------------------------------------------------
    // Bearing: direction in an array's local frame. theta is measured from the array boresight
    // (local +z), phi from local +x toward local +y.
    struct Bearing
    {
        double theta = 0.0; // [0, pi]
        double phi = 0.0;   // [0, 2 pi)

        static Bearing from_direction(const Eigen::Vector3d &d)
        {
            Bearing b;
            b.theta = std::atan2(std::hypot(d.x(), d.y()), d.z());
            b.phi = std::atan2(d.y(), d.x());
            if (b.phi < 0.0)
                b.phi += 2.0 * pi;
            if (b.phi >= 2.0 * pi)
                b.phi = 0.0;
            return b;
        }

        static Bearing normalized(double theta, double phi) { return from_direction(Bearing{theta, phi}.direction()); }

        Eigen::Vector3d direction() const
        {
            const double st = std::sin(theta);
            return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
        }
    };

    // ---------------------------------------------------------------------------------------------
    // Uniform rectangular array with half-wavelength spacing in the local x-y plane.
    class PlanarArrayGeometry
    {
    public:
        static constexpr double spacing_wavelengths = 0.5;

        PlanarArrayGeometry(int n_x, int n_y) : n_x_(n_x), n_y_(n_y)
        {
            if (n_x < 1 || n_y < 1)
                throw ConfigError("Planar array needs at least one element per axis (got " +
                                  std::to_string(n_x) + "x" + std::to_string(n_y) + ")");
        }

        int n_x() const { return n_x_; }
        int n_y() const { return n_y_; }
        Eigen::Index size() const { return Eigen::Index(n_x_) * n_y_; }

        // x-major (Kronecker) ordering: element (ix, iy) lives at ix * n_y + iy
        Eigen::Index index(int ix, int iy) const { return Eigen::Index(ix) * n_y_ + iy; }

        bool operator==(const PlanarArrayGeometry &) const = default;

    private:
        int n_x_;
        int n_y_;
    };

    // Array steering vector a = a_x (x) a_y. Entry (ix, iy) is exp(+j pi (ix u + iy v)) with
    // u = sin(theta) cos(phi), v = sin(theta) sin(phi).
    inline Eigen::VectorXcd steering_vector(const PlanarArrayGeometry &geom, const Bearing &b)
    {
        const double st = std::sin(b.theta);
        const double phase_x = 2.0 * pi * PlanarArrayGeometry::spacing_wavelengths * st * std::cos(b.phi);
        const double phase_y = 2.0 * pi * PlanarArrayGeometry::spacing_wavelengths * st * std::sin(b.phi);

        Eigen::VectorXcd a(geom.size());
        for (int ix = 0; ix < geom.n_x(); ++ix)
            for (int iy = 0; iy < geom.n_y(); ++iy)
                a[geom.index(ix, iy)] = std::polar(1.0, ix * phase_x + iy * phase_y);
        return a;
    }

    // ---------------------------------------------------------------------------------------------
    // Rectangular microstrip patch, transmission-line design at the carrier frequency.
    struct PatchDesign
    {
        double carrier_hz = 60e9;
        double relative_permittivity = 2.2;
        double substrate_height_m = 1.588e-3;
    };

    struct PatchDimensions
    {
        double width_m = 0.0;              // W, non-resonant edge (local y)
        double length_m = 0.0;             // L, physical resonant length (local x)
        double effective_permittivity = 1; // eps_reff
        double length_extension_m = 0.0;   // fringing extension per edge
        double effective_length_m = 0.0;   // L + 2 dL, slot separation
    };

    inline PatchDimensions design_rectangular_patch(const PatchDesign &d)
    {
        if (!(d.carrier_hz > 0.0))
            throw ConfigError("patch carrier frequency must be > 0 Hz");
        if (!(d.relative_permittivity >= 1.0))
            throw ConfigError("patch substrate relative permittivity must be >= 1");
        if (!(d.substrate_height_m > 0.0))
            throw ConfigError("patch substrate height must be > 0 m");

        const double er = d.relative_permittivity;
        const double h = d.substrate_height_m;
        const double f = d.carrier_hz;

        PatchDimensions p;
        p.width_m = speed_of_light / (2.0 * f) * std::sqrt(2.0 / (er + 1.0));
        p.effective_permittivity = (er + 1.0) / 2.0 + (er - 1.0) / 2.0 / std::sqrt(1.0 + 12.0 * h / p.width_m);

        const double ee = p.effective_permittivity;
        const double wh = p.width_m / h;
        p.length_extension_m = 0.412 * h * (ee + 0.3) * (wh + 0.264) / ((ee - 0.258) * (wh + 0.8));
        p.length_m = speed_of_light / (2.0 * f * std::sqrt(ee)) - 2.0 * p.length_extension_m;
        p.effective_length_m = p.length_m + 2.0 * p.length_extension_m;

        if (!(p.length_m > 0.0))
            throw ConfigError("patch substrate is too thick for the carrier: fringing extension exceeds the "
                              "resonant length (height " +
                              std::to_string(h) + " m at " + std::to_string(f) + " Hz)");
        return p;
    }

    namespace detail
    {
        inline double sinc(double x)
        {
            if (std::abs(x) < 1e-6)
                return 1.0 - x * x / 6.0;
            return std::sin(x) / x;
        }

        struct IsotropicElement
        {
            double intensity(const Bearing &) const { return 1.0; }
        };

        struct HemisphericCosineElement
        {
            double intensity(const Bearing &b) const { return b.theta <= pi / 2 ? std::cos(b.theta) : 0.0; }
        };

        // Two radiating slots along local y, separated by the effective length along local x.
        struct PatchTwoSlotElement
        {
            PatchDimensions dims;
            double substrate_height_m = 0.0;
            double wavenumber = 0.0;

            double intensity(const Bearing &b) const
            {
                if (b.theta > pi / 2)
                    return 0.0;
                const double st = std::sin(b.theta), ct = std::cos(b.theta);
                const double sp = std::sin(b.phi), cp = std::cos(b.phi);

                const double slot_height = sinc(0.5 * wavenumber * substrate_height_m * st * cp);
                const double slot_width = sinc(0.5 * wavenumber * dims.width_m * st * sp);
                const double pair = std::cos(0.5 * wavenumber * dims.effective_length_m * st * cp);
                const double polarization = cp * cp + ct * ct * sp * sp;

                const double e = slot_height * slot_width * pair;
                return polarization * e * e;
            }
        };
    }

    enum class ElementKind
    {
        isotropic,
        hemispheric_cosine,
        patch_two_slot
    };

    inline const char *to_string(ElementKind k)
    {
        switch (k)
        {
        case ElementKind::isotropic:
            return "isotropic";
        case ElementKind::hemispheric_cosine:
            return "cosine";
        case ElementKind::patch_two_slot:
            return "patch";
        }
        return "?";
    }

    // Radiant intensity |F(theta, phi)|^2 of a single radiator.
    class ElementPattern
    {
    public:
        static ElementPattern isotropic() { return ElementPattern(detail::IsotropicElement{}); }
        static ElementPattern hemispheric_cosine() { return ElementPattern(detail::HemisphericCosineElement{}); }

        static ElementPattern patch(const PatchDesign &design)
        {
            detail::PatchTwoSlotElement e;
            e.dims = design_rectangular_patch(design);
            e.wavenumber = 2.0 * pi * design.carrier_hz / speed_of_light;
            e.substrate_height_m = design.substrate_height_m;
            return ElementPattern(e);
        }

        ElementKind kind() const { return static_cast<ElementKind>(model_.index()); }

        double intensity(const Bearing &b) const
        {
            return scale_ * std::visit([&](const auto &m)
                                       { return m.intensity(b); },
                                       model_);
        }

        double amplitude(const Bearing &b) const { return std::sqrt(intensity(b)); }

        // Same shape, intensity multiplied by c > 0.
        ElementPattern scaled(double c) const
        {
            if (!(c > 0.0))
                throw DomainError("element pattern scale must be positive");
            ElementPattern p = *this;
            p.scale_ *= c;
            return p;
        }

        std::optional<PatchDimensions> patch_dimensions() const
        {
            if (auto *p = std::get_if<detail::PatchTwoSlotElement>(&model_))
                return p->dims;
            return std::nullopt;
        }

    private:
        using Model = std::variant<detail::IsotropicElement, detail::HemisphericCosineElement, detail::PatchTwoSlotElement>;
        explicit ElementPattern(Model m) : model_(std::move(m)) {}

        Model model_;
        double scale_ = 1.0;
    };

    inline ElementPattern element_pattern_patch(const PatchDesign &design) { return ElementPattern::patch(design); }

    // ---------------------------------------------------------------------------------------------
    // Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on P_n.
    struct QuadratureRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };

    inline QuadratureRule gauss_legendre(int n)
    {
        if (n < 1)
            throw DomainError("Gauss-Legendre rule needs at least one node");
        QuadratureRule rule;
        rule.nodes.assign(n, 0.0);
        rule.weights.assign(n, 0.0);
        for (int i = 0; i < (n + 1) / 2; ++i)
        {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter)
            {
                double p1 = 1.0, p2 = 0.0;
                for (int j = 1; j <= n; ++j)
                {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
                }
                dp = n * (z * p1 - p2) / (z * z - 1.0);
                const double z_old = z;
                z = z_old - p1 / dp;
                if (std::abs(z - z_old) < 1e-15)
                    break;
            }
            // recompute derivative at the converged node
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j)
            {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);

            rule.nodes[i] = -z;
            rule.nodes[n - 1 - i] = z;
            rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        return rule;
    }

    struct QuadratureResolution
    {
        int n_theta = 180;
        int n_phi = 360;

        QuadratureResolution doubled() const { return {2 * n_theta, 2 * n_phi}; }
        bool operator==(const QuadratureResolution &) const = default;
    };

    // Sphere quadrature: Gauss-Legendre in theta on the two panels [0, pi/2] and [pi/2, pi]
    // (element patterns are cut at the horizon), uniform trapezoid in phi.
    // Weights include the sin(theta) Jacobian.
    struct SphereNode
    {
        Bearing bearing;
        double weight;
    };

    inline std::vector<SphereNode> sphere_quadrature(const QuadratureResolution &res)
    {
        if (res.n_theta < 2 || res.n_phi < 1)
            throw DomainError("sphere quadrature needs n_theta >= 2 and n_phi >= 1");

        const int upper = (res.n_theta + 1) / 2;
        const int lower = res.n_theta - upper;
        const double dphi = 2.0 * pi / res.n_phi;

        std::vector<SphereNode> out;
        out.reserve(std::size_t(res.n_theta) * res.n_phi);
        for (auto [count, begin] : {std::pair{upper, 0.0}, std::pair{lower, pi / 2}})
        {
            const QuadratureRule gl = gauss_legendre(count);
            for (int i = 0; i < count; ++i)
            {
                const double theta = begin + pi / 4 * (gl.nodes[i] + 1.0);
                const double wt = pi / 4 * gl.weights[i] * std::sin(theta);
                for (int j = 0; j < res.n_phi; ++j)
                    out.push_back({Bearing{theta, j * dphi}, wt * dphi});
            }
        }
        return out;
    }

    // Raw Q = sum_nodes a a^H |F|^2 dOmega at one resolution, Hermitian by construction.
    inline Eigen::MatrixXcd integrate_coupling(const PlanarArrayGeometry &geom, const ElementPattern &pattern,
                                               const QuadratureResolution &res)
    {
        const Eigen::Index n = geom.size();
        Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n);
        for (const SphereNode &node : sphere_quadrature(res))
        {
            const double f2 = pattern.intensity(node.bearing);
            if (f2 == 0.0)
                continue;
            const Eigen::VectorXcd a = steering_vector(geom, node.bearing);
            q.selfadjointView<Eigen::Lower>().rankUpdate(a, node.weight * f2);
        }
        Eigen::MatrixXcd full = q.selfadjointView<Eigen::Lower>();
        return full;
    }

    // ---------------------------------------------------------------------------------------------
    // Hermitian positive definite beam-coupling matrix of one array design. Immutable; the
    // Cholesky factor is kept for solves.
    class CouplingMatrix
    {
    public:
        CouplingMatrix(PlanarArrayGeometry geom, Eigen::MatrixXcd q, QuadratureResolution res,
                       double refinement_change = 0.0)
            : geom_(geom), q_(std::move(q)), res_(res), refinement_change_(refinement_change)
        {
            if (q_.rows() != geom_.size() || q_.cols() != geom_.size())
                throw DomainError("coupling matrix dimension does not match the array geometry");
            q_ = (0.5 * (q_ + q_.adjoint())).eval();
            llt_.compute(q_);
            if (llt_.info() != Eigen::Success)
                throw NumericalError("coupling matrix is not positive definite (Cholesky failed)");
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q_, Eigen::EigenvaluesOnly);
            min_eigenvalue_ = es.eigenvalues().minCoeff();
            max_eigenvalue_ = es.eigenvalues().maxCoeff();
            if (!(min_eigenvalue_ > 0.0) || max_eigenvalue_ / min_eigenvalue_ > 1e14)
                throw NumericalError("coupling matrix is numerically singular (eigenvalues " +
                                     std::to_string(min_eigenvalue_) + " .. " + std::to_string(max_eigenvalue_) + ")");
        }

        const PlanarArrayGeometry &geometry() const { return geom_; }
        const Eigen::MatrixXcd &matrix() const { return q_; }
        const QuadratureResolution &resolution() const { return res_; }
        double refinement_change() const { return refinement_change_; }
        double min_eigenvalue() const { return min_eigenvalue_; }
        double max_eigenvalue() const { return max_eigenvalue_; }

        Eigen::VectorXcd solve(const Eigen::VectorXcd &rhs) const { return llt_.solve(rhs); }

        // w^H Q w
        double quadratic_form(const Eigen::VectorXcd &w) const { return std::real(w.dot(q_ * w)); }

    private:
        PlanarArrayGeometry geom_;
        Eigen::MatrixXcd q_;
        QuadratureResolution res_;
        double refinement_change_;
        double min_eigenvalue_ = 0.0;
        double max_eigenvalue_ = 0.0;
        Eigen::LLT<Eigen::MatrixXcd> llt_;
    };

    struct ConvergenceOptions
    {
        double tolerance = 1e-6; // relative Frobenius change against doubled resolution
        int max_doublings = 2;
    };

    /*!MD
    # coupling_matrix
    Beam-coupling matrix Q = integral of a a^H |F|^2 over the unit sphere

    - Product quadrature (see `sphere_quadrature`) at `res`, compared against `2 res`.
    - If the relative Frobenius change exceeds `opts.tolerance`, the resolution is doubled up to
      `opts.max_doublings` times before throwing `NumericalError`.
    - The returned matrix is the coarser of the last compared pair; `refinement_change()` holds
      the measured change.
    MD!*/
    inline CouplingMatrix coupling_matrix(const PlanarArrayGeometry &geom, const ElementPattern &pattern,
                                          QuadratureResolution res = {}, const ConvergenceOptions &opts = {})
    {
        Eigen::MatrixXcd q = integrate_coupling(geom, pattern, res);
        double change = 0.0;
        for (int doubling = 0;; ++doubling)
        {
            Eigen::MatrixXcd fine = integrate_coupling(geom, pattern, res.doubled());
            change = (fine - q).norm() / fine.norm();
            if (change <= opts.tolerance)
                return CouplingMatrix(geom, std::move(q), res, change);
            if (doubling >= opts.max_doublings)
                break;
            res = res.doubled();
            q = std::move(fine);
        }
        throw NumericalError("coupling matrix quadrature did not converge: relative change " + std::to_string(change) +
                             " at n_theta=" + std::to_string(res.n_theta) + ", n_phi=" + std::to_string(res.n_phi) +
                             " (tolerance " + std::to_string(opts.tolerance) + ")");
    }

    // ---------------------------------------------------------------------------------------------
    struct BeamWeights
    {
        Eigen::VectorXcd w;
    };

    // |w^H a|^2 / (w^H Q w)
    inline double rayleigh_quotient(const CouplingMatrix &q, const BeamWeights &w, const Eigen::VectorXcd &a)
    {
        const double den = q.quadratic_form(w.w);
        if (!(den > 0.0))
            throw DomainError("beam weights must be nonzero");
        return std::norm(w.w.dot(a)) / den;
    }

    // Linear array gain toward b.
    inline double gain(const PlanarArrayGeometry &geom, const ElementPattern &pattern, const CouplingMatrix &q,
                       const BeamWeights &w, const Bearing &b)
    {
        if (!(geom == q.geometry()) || w.w.size() != geom.size())
            throw DomainError("gain: geometry, coupling matrix and weights disagree in size");
        if (w.w.isZero(0.0))
            throw DomainError("gain: beam weights must be nonzero");
        return 4.0 * pi * rayleigh_quotient(q, w, steering_vector(geom, b)) * pattern.intensity(b);
    }

    // Maximizer of w^H A(b) w / w^H Q w. A(b) = a a^H has rank one, so the principal eigenvector
    // of Q^-1 A(b) is Q^-1 a(b). Weights are left unnormalized.
    inline BeamWeights max_directivity_weights(const CouplingMatrix &q, const Bearing &b)
    {
        BeamWeights out{q.solve(steering_vector(q.geometry(), b))};
        if (!out.w.allFinite() || out.w.isZero(0.0))
            throw NumericalError("max-directivity solve produced a non-finite or zero weight vector");
        return out;
    }

    // Geometry, element and coupling matrix of one array design, shared read-only.
    struct ArrayModel
    {
        PlanarArrayGeometry geometry;
        ElementPattern pattern;
        CouplingMatrix coupling;

        double gain(const BeamWeights &w, const Bearing &b) const { return a2a::gain(geometry, pattern, coupling, w, b); }
    };

    inline ArrayModel make_array_model(const PlanarArrayGeometry &geom, const ElementPattern &pattern,
                                       const QuadratureResolution &res = {}, const ConvergenceOptions &opts = {})
    {
        return ArrayModel{geom, pattern, coupling_matrix(geom, pattern, res, opts)};
    }

    // ---------------------------------------------------------------------------------------------
    // Debug dumps

    inline void write_gain_cut_csv(std::ostream &os, const ArrayModel &model, const BeamWeights &w,
                                   std::span<const double> phi_deg, double theta_step_deg = 1.0)
    {
        os << "theta_deg,phi_deg,gain_dBi\n";
        const int steps = int(std::lround(180.0 / theta_step_deg));
        for (double phi : phi_deg)
            for (int i = 0; i <= steps; ++i)
            {
                const double theta = std::min(180.0, i * theta_step_deg);
                const double g = model.gain(w, Bearing{theta * pi / 180.0, phi * pi / 180.0});
                os << text::format_double(theta) << ',' << text::format_double(phi) << ','
                   << text::format_double(10.0 * std::log10(g)) << '\n';
            }
    }

    inline void write_matrix_csv(std::ostream &os, const Eigen::MatrixXcd &m)
    {
        os << "row,col,re,im\n";
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                os << i << ',' << j << ',' << text::format_double(m(i, j).real()) << ','
                   << text::format_double(m(i, j).imag()) << '\n';
    }
}

#endif
