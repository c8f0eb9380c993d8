#include "stefan/driver.hpp"
#include "stefan/error.hpp"
#include "stefan/sampling.hpp"

#include <doctest.h>

using namespace stefan;

namespace {

bool same(const CollocationSet& a, const CollocationSet& b) {
    for (int i = 0; i < 2; ++i) {
        if (a.phase[i].interior != b.phase[i].interior) return false;
        if (a.phase[i].initial != b.phase[i].initial) return false;
        if (a.phase[i].boundary != b.phase[i].boundary) return false;
        if (a.phase[i].boundary_face != b.phase[i].boundary_face) return false;
    }
    return a.interface.points == b.interface.points && a.interface.time == b.interface.time;
}

} // namespace

TEST_CASE("one-phase interior points lie left of the planar guess") {
    ProblemSpec p = find_problem("one_phase_1d");
    SolverConfig c = p.defaults;
    InterfaceModel m = initial_interface(p, c);
    const double g0 = p.gamma0(Eigen::VectorXd(0));
    CollocationSet s = sample_collocation(p, m, {1000, 200, 200, 200}, 1, 9, SeedPolicy::FixedAcrossIterations);
    const auto& in = s.phase[0].interior;
    CHECK(in.rows() == 1000);
    CHECK(in.col(0).minCoeff() > 0.0);
    CHECK(in.col(0).maxCoeff() < g0 + 1e-9);
    CHECK(s.phase[1].interior.rows() == 0);
}

TEST_CASE("fixed policy reuses the proposal stream across iterations") {
    ProblemSpec p = find_problem("two_phase_case1");
    InterfaceModel m = initial_interface(p, p.defaults);
    auto a = sample_collocation(p, m, {500, 100, 100, 100}, 1, 5, SeedPolicy::FixedAcrossIterations);
    auto b = sample_collocation(p, m, {500, 100, 100, 100}, 2, 5, SeedPolicy::FixedAcrossIterations);
    CHECK(same(a, b));
    auto c = sample_collocation(p, m, {500, 100, 100, 100}, 2, 5, SeedPolicy::PerIteration);
    CHECK_FALSE(same(a, c));
    auto d = sample_collocation(p, m, {500, 100, 100, 100}, 2, 5, SeedPolicy::PerIteration);
    CHECK(same(c, d));
}

TEST_CASE("interface samples lie on the interface") {
    ProblemSpec p = find_problem("two_phase_case2");
    InterfaceModel m = initial_interface(p, p.defaults);
    auto s = sample_collocation(p, m, {1000, 200, 200, 200}, 1, 3, SeedPolicy::FixedAcrossIterations);
    REQUIRE(s.interface.size() == 200);
    for (int i = 0; i < 200; ++i) {
        const double t = s.interface.time(i);
        CHECK(s.interface.points(i, 0) == interface_position(m, Eigen::VectorXd(0), t)(0));
        CHECK(s.interface.points(i, 1) == t);
    }
}

TEST_CASE("phase classification agrees with the signed offset") {
    for (const char* name : {"two_phase_case1", "two_phase_2d", "thermal_resistance"}) {
        ProblemSpec p = find_problem(name);
        InterfaceModel m = initial_interface(p, p.defaults);
        auto s = sample_collocation(p, m, {800, 200, 200, 100}, 1, 2, SeedPolicy::FixedAcrossIterations);
        for (int ph = 0; ph < 2; ++ph) {
            const auto& in = s.phase[ph].interior;
            CHECK(in.rows() == 800);
            for (int r = 0; r < in.rows(); ++r) {
                Eigen::VectorXd x = in.row(r).head(p.dim).transpose();
                const double off = signed_offset(m, x, in(r, p.dim));
                CHECK((ph == 0 ? off < 0 : off >= 0));
            }
        }
    }
}

TEST_CASE("boundary points sit on their faces") {
    ProblemSpec p = find_problem("two_phase_2d");
    InterfaceModel m = initial_interface(p, p.defaults);
    auto s = sample_collocation(p, m, {500, 100, 300, 100}, 1, 4, SeedPolicy::FixedAcrossIterations);
    int counts[4] = {0, 0, 0, 0};
    for (int ph = 0; ph < 2; ++ph) {
        const auto& b = s.phase[ph].boundary;
        REQUIRE(b.rows() == 300);
        for (int r = 0; r < b.rows(); ++r) {
            const int f = s.phase[ph].boundary_face[static_cast<size_t>(r)];
            ++counts[f];
            const double x = b(r, 0), y = b(r, 1);
            if (f == 0) CHECK(x == 0.0);
            if (f == 1) CHECK(x == 2.0);
            if (f == 2) CHECK(y == 0.0);
            if (f == 3) CHECK(y == 1.0);
        }
    }
    // the y = const faces are twice as long as the x = const faces
    CHECK(counts[2] + counts[3] > counts[0] + counts[1]);
}

TEST_CASE("sampling is bit-identical for identical inputs") {
    ProblemSpec p = find_problem("frank_3d");
    InterfaceModel m = initial_interface(p, p.defaults);
    auto a = sample_collocation(p, m, {400, 100, 100, 100}, 3, 77, SeedPolicy::PerIteration);
    auto b = sample_collocation(p, m, {400, 100, 100, 100}, 3, 77, SeedPolicy::PerIteration);
    CHECK(same(a, b));
}

TEST_CASE("an interface outside the box starves a phase") {
    ProblemSpec p = find_problem("two_phase_case1");
    SolverConfig c = p.defaults;
    c.clamp_lo = c.clamp_hi = 0.0;
    p.gamma0 = [](const Eigen::VectorXd&) { return -5.0; };
    InterfaceModel m = initial_interface(p, c);
    try {
        sample_collocation(p, m, {200, 50, 50, 50}, 1, 1, SeedPolicy::FixedAcrossIterations);
        FAIL("expected a rejection failure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RejectionFailure);
    }
}

TEST_CASE("non-positive counts are rejected") {
    ProblemSpec p = find_problem("two_phase_case1");
    InterfaceModel m = initial_interface(p, p.defaults);
    CHECK_THROWS_AS(sample_collocation(p, m, {0, 10, 10, 10}, 1, 1, SeedPolicy::FixedAcrossIterations), Error);
    CHECK_THROWS_AS(sample_collocation(p, m, {10, 10, 10, 0}, 1, 1, SeedPolicy::FixedAcrossIterations), Error);
}
