#include "stefan/error.hpp"
#include "stefan/kinematic.hpp"
#include "stefan/problems.hpp"
#include "stefan/rng.hpp"
#include "stefan/sampling.hpp"
#include "stefan/thermo.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace stefan {

MullinsSekerkaHistory mullins_sekerka_evolve(const MullinsSekerkaOptions& o) {
    if (!(o.r0 + std::fabs(o.delta0) < o.r_out))
        throw Error(ErrorKind::InvalidArgument, "initial interface must lie inside r_out");
    if (!(o.dt > 0) || o.steps < 0) throw Error(ErrorKind::InvalidArgument, "bad time stepping");
    if (o.gamma < 0) throw Error(ErrorKind::InvalidArgument, "gamma must be >= 0");

    const ProblemSpec p = mullins_sekerka_spec(o.gamma, o.r_out, o.u_inf);
    auto field = std::make_shared<const RandomFeatureBasis>(
        make_basis(o.field_features, 2, o.field_scale, Rng::stream(o.seed, 100).next()));
    const std::array<BasisPtr, 2> bases{nullptr, field};
    RandomFeatureBasis shape = make_basis(o.interface_features, 2, o.interface_scale, Rng::stream(o.seed, 200).next());

    // uniform theta grid carrying the radius samples
    const int nq = 256;
    Eigen::MatrixXd theta(nq, 1);
    for (int i = 0; i < nq; ++i) theta(i, 0) = 2.0 * std::numbers::pi * i / nq;
    const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(nq);
    Eigen::VectorXd r(nq);
    for (int i = 0; i < nq; ++i) r(i) = o.r0 + o.delta0 * std::cos(o.wave * theta(i, 0));

    const ShapeRows grid_rows = shape_rows(shape, ShapeMode::RadialTheta, false, theta, zeros);
    SampleCounts counts{o.interior, 0, o.boundary, o.interface_points};

    MullinsSekerkaHistory h;
    auto record = [&](double t, const Eigen::VectorXd& g) {
        double a = 0.0;
        for (int i = 0; i < nq; ++i) a += g(i) * std::cos(o.wave * theta(i, 0));
        const double mean = g.mean();
        h.time.push_back(t);
        h.amplitude.push_back(2.0 * a / nq);
        h.deviation.push_back((g.array() - mean).abs().maxCoeff());
        h.mean_radius.push_back(mean);
    };

    for (int step = 0; step <= o.steps; ++step) {
        FitResult fit = fit_interface(shape, ShapeMode::RadialTheta, false, theta, zeros, r, o.rcond);
        InterfaceModel model(shape, fit.coeffs, ShapeMode::RadialTheta, false);
        const Eigen::VectorXd g = grid_rows.value * model.coeffs;
        record(step * o.dt, g);
        if (step == o.steps) break;
        if ((g.array() - g.mean()).abs().maxCoeff() > o.r0 || g.minCoeff() <= 0.0)
            throw Error(ErrorKind::StepInstability, "interface amplitude exceeded R0");

        CollocationSet pts = sample_collocation(p, model, counts, step, o.seed, SeedPolicy::FixedAcrossIterations);
        ThermoResult th = thermo_step(p, pts, bases, Penalties{}, o.rcond);
        InterfaceSamples s = interface_samples(p, model, theta, zeros);
        const Eigen::VectorXd vn = flux_jump(p, th.solution, s); // V_n = -grad u . n
        // radial speed of a radial graph: G_t = V_n * sqrt(G^2 + G_theta^2) / G
        r = g + o.dt * vn.cwiseProduct(s.metric);
    }
    return h;
}

} // namespace stefan
