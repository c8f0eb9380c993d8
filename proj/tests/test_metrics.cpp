#include "stefan/metrics.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace stefan;
using testing::Vec;

TEST_CASE("relative_l2 examples") {
    Vec e(4);
    e << 1, -2, 3, 0.5;
    CHECK(relative_l2(e, e).value == 0.0);
    CHECK(relative_l2(2 * e, e).value == doctest::Approx(1.0));
    Vec p = e;
    p(0) += 1e-3;
    CHECK(relative_l2(p, e).value == doctest::Approx(1e-3 / e.norm()));
    CHECK_FALSE(relative_l2(p, e).zero_denominator);
}

TEST_CASE("relative_l2 with a zero reference") {
    Vec z = Vec::Zero(3), p(3);
    p << 3, 0, 4;
    RelativeL2 r = relative_l2(p, z);
    CHECK(r.zero_denominator);
    CHECK(r.value == doctest::Approx(5.0));
}

TEST_CASE("relative_l2 is scale invariant") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        Vec a(30), b(30);
        for (int i = 0; i < 30; ++i) {
            a(i) = rng.uniform(-1, 1);
            b(i) = rng.uniform(-1, 1);
        }
        const double s = rng.uniform(-50, 50);
        CHECK(relative_l2(s * a, s * b).value == doctest::Approx(relative_l2(a, b).value).epsilon(1e-13));
    }
}

TEST_CASE("field grids") {
    ProblemSpec p = find_problem("two_phase_case1");
    FieldGrid g = field_grid(p);
    CHECK(g.points.rows() <= 100 * 100);
    CHECK(g.points.rows() >= 100 * 100 - 100);
    for (int r = 0; r < g.points.rows(); ++r) {
        const double x = g.points(r, 0), t = g.points(r, 1);
        CHECK(std::abs(x - (t + 0.5)) > 1e-9);
        CHECK(g.phase[static_cast<size_t>(r)] == (x < t + 0.5 ? 0 : 1));
    }
    // the exact field compared against itself
    Vec u(g.points.rows());
    for (int r = 0; r < u.size(); ++r) u(r) = eval_exact(p, g.points.row(r).head(1).transpose(), g.points(r, 1)).u;
    CHECK(relative_l2(u, u).value <= 1e-13);

    ProblemSpec q = find_problem("frank_3d");
    FieldGrid a = field_grid(q), b = field_grid(q);
    CHECK(a.points == b.points);
    CHECK(a.points.rows() <= 2000);
    for (int r = 0; r < a.points.rows(); ++r) CHECK(a.phase[static_cast<size_t>(r)] == 1);

    ProblemSpec d2 = find_problem("two_phase_2d");
    CHECK(field_grid(d2).points.rows() <= 50 * 50 * 20);
    CHECK(field_grid(d2).points.cols() == 3);
}

TEST_CASE("interface grid for case 1 uses t + 0.5") {
    ProblemSpec p = find_problem("two_phase_case1");
    ShapeGrid g = shape_grid(p);
    REQUIRE(g.time.size() == 1000);
    InterfaceModel m = testing::exact_interface(p, p.defaults);
    FieldComparison c = compare_interface(m, p, g);
    for (int i = 0; i < 1000; ++i) CHECK(c.exact(i) == doctest::Approx(g.time(i) + 0.5));
    CHECK(relative_l2(c.pred, c.exact).value < 1e-9);
}

TEST_CASE("summaries are deterministic and non-negative") {
    ProblemSpec p = find_problem("two_phase_case1");
    SolverConfig c = p.defaults;
    c.field_features = 100;
    InterfaceModel m = testing::exact_interface(p, c);
    auto f = testing::solve_frozen(p, c, m);
    ErrorSummary a = summarize(f.thermo.solution, m, p), b = summarize(f.thermo.solution, m, p);
    CHECK(a.rel_l2_field == b.rel_l2_field);
    CHECK(a.rel_l2_interface == b.rel_l2_interface);
    CHECK(a.rel_l2_field >= 0);
    CHECK(a.max_abs_field >= 0);
    CHECK(a.max_abs_interface >= 0);
    CHECK(a.n_interface == 1000);
    CHECK(a.n_field > 9000);
}
