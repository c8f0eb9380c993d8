#include "stefan/driver.hpp"
#include "stefan/error.hpp"
#include "stefan/kinematic.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <limits>

using namespace stefan;

TEST_CASE("contraction estimate examples") {
    CHECK(estimate_contraction({1e-2, 1e-4, 1e-6}, {0, 1, 2}) == doctest::Approx(1e-2));
    CHECK(estimate_contraction({3e-3, 3e-3, 3e-3, 3e-3}, {4, 5, 6, 7}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(estimate_contraction({1e-2, 1e-3}, {0, 1}), Error);
    CHECK_THROWS_AS(estimate_contraction({1e-2, 0.0, 1e-3}, {0, 1, 2}), Error);
}

TEST_CASE("contraction estimate over a report window") {
    SolverReport r;
    // long enough that the window (errors above 100x the minimum) spans k = 3..23
    for (int k = 1; k <= 30; ++k) {
        IterationRecord it;
        it.k = k;
        it.geom_error = std::pow(0.5, k);
        r.iterations.push_back(it);
    }
    CHECK(estimate_contraction(r, 3, 8) == doctest::Approx(0.5));
    CHECK(estimate_contraction(r).value() == doctest::Approx(0.5));
    r.iterations[4].geom_error.reset();
    CHECK_THROWS_AS(estimate_contraction(r, 3, 8), Error);
}

TEST_CASE("infinite tolerance stops after one iteration") {
    ProblemSpec p = find_problem("two_phase_case1");
    SolverConfig c = p.defaults;
    c.tol = std::numeric_limits<double>::infinity();
    SolverReport r = solve(p, c);
    CHECK(r.converged);
    CHECK(r.iterations.size() == 1);
}

TEST_CASE("iteration limit gives a non-converged report") {
    ProblemSpec p = find_problem("two_phase_case1");
    SolverConfig c = p.defaults;
    c.max_iters = 2;
    SolverReport r = solve(p, c);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations.size() == 2);
    CHECK(r.stop_reason == "iteration limit reached");
    CHECK(r.errors.has_value());
    for (const auto& it : r.iterations) CHECK(std::isfinite(it.flux_residual));
}

TEST_CASE("invalid configurations are rejected") {
    ProblemSpec p = find_problem("two_phase_case1");
    SolverConfig c = p.defaults;
    c.rho = 0.0;
    CHECK_THROWS_AS(solve(p, c), Error);
    c = p.defaults;
    c.max_iters = 0;
    CHECK_THROWS_AS(solve(p, c), Error);
    c = p.defaults;
    c.interface_scales = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(solve(p, c), Error);
}

TEST_CASE("identical configurations give identical reports") {
    ProblemSpec p = find_problem("two_phase_case2");
    SolverConfig c = p.defaults;
    c.max_iters = 4;
    SolverReport a = solve(p, c), b = solve(p, c);
    REQUIRE(a.iterations.size() == b.iterations.size());
    for (size_t i = 0; i < a.iterations.size(); ++i) {
        CHECK(a.iterations[i].flux_residual == b.iterations[i].flux_residual);
        CHECK(*a.iterations[i].geom_error == *b.iterations[i].geom_error);
        CHECK(*a.iterations[i].field_error == *b.iterations[i].field_error);
    }
    CHECK(a.interface->coeffs == b.interface->coeffs);
    CHECK(a.field->weights[0] == b.field->weights[0]);
    CHECK(a.field->weights[1] == b.field->weights[1]);
}

TEST_CASE("converged run is a fixed point") {
    ProblemSpec p = find_problem("one_phase_1d");
    SolverConfig c = p.defaults;
    SolverReport r = solve(p, c);
    REQUIRE(r.converged);
    CHECK(r.iterations.back().flux_residual < c.tol);
    CHECK(r.errors->rel_l2_field <= 1e-8);
    CHECK(r.errors->rel_l2_interface <= 1e-8);

    // one more outer iteration from the converged state
    const InterfaceModel& m = *r.interface;
    auto pts = sample_collocation(p, m, c.counts, static_cast<int>(r.iterations.size()) + 1, sampling_seed(c),
                                  c.policy);
    auto th = thermo_step(p, pts, testing::field_bases(p, c), c.penalties, c.rcond_field);
    FluxResidual fr = flux_residual(p, th.solution, pts.interface);
    Anchor a = make_anchor(p, c.anchor_count, c.anchor_weight);
    auto kin = kinematic_step(p, m, pts.interface, fr.jump, a, c.rcond_kinematic);
    InterfaceModel next = m.with_coeffs(relax_update(m.coeffs, kin.coeffs, c.rho));
    ShapeGrid g = shape_grid(p);
    ShapeRows rows = shape_rows(m.basis, m.mode, m.transient, g.param, g.time);
    const double move = std::sqrt((rows.value * (next.coeffs - m.coeffs)).squaredNorm() / g.time.size());
    CHECK(move <= 10 * c.tol);
}

TEST_CASE("derived seeds differ by purpose") {
    SolverConfig c;
    c.seed = 42;
    CHECK(field_seed(c, 0) != field_seed(c, 1));
    CHECK(field_seed(c, 0) != interface_seed(c));
    CHECK(interface_seed(c) != sampling_seed(c));
    SolverConfig d = c;
    d.seed = 43;
    CHECK(field_seed(c, 0) != field_seed(d, 0));
}
