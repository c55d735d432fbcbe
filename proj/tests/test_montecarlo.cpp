#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "efron_dual/montecarlo.hpp"
#include "efron_dual/oracle.hpp"

using namespace efron_dual;
using namespace efron_dual::mc;
using geom::ConvexBody;

namespace {
constexpr std::size_t kReps = 100000;

bool within_sigma(const MomentEstimate& est, double target, double sigma) {
    return std::fabs(est.mean - target) <= sigma * est.std_error;
}
} // namespace

TEST_CASE("volume moment: interval closed forms", "[montecarlo]") {
    const auto interval = ConvexBody::interval(0.0, 1.0);
    const auto e21 = estimate_volume_moment(interval, 2, 1, kReps, 11);
    CHECK(within_sigma(e21, 1.0 / 3.0, 4.0));
    const auto e32 = estimate_volume_moment(interval, 3, 2, kReps, 12);
    CHECK(within_sigma(e32, 0.3, 4.0));
    // scale invariance of V / vol K
    const auto shifted = ConvexBody::interval(-3.0, 9.0);
    const auto s21 = estimate_volume_moment(shifted, 2, 1, kReps, 13);
    CHECK(within_sigma(s21, 1.0 / 3.0, 4.0));
}

TEST_CASE("volume moment: single point is exactly zero", "[montecarlo]") {
    for (const auto& body :
         {ConvexBody::interval(0.0, 1.0), ConvexBody::cube(2, 1.0),
          ConvexBody::cube(3, 1.0)}) {
        const auto est = estimate_volume_moment(body, 1, 1, 2000, 5);
        CHECK(est.mean == 0.0);
        CHECK(est.std_error == 0.0);
    }
}

TEST_CASE("degenerate chain: n <= d gives exact zero and eq3 still passes",
          "[montecarlo]") {
    const auto square = ConvexBody::cube(2, 1.0);
    const auto est = estimate_volume_moment(square, 2, 1, 20000, 6);
    CHECK(est.mean == 0.0);

    const auto cube = ConvexBody::cube(3, 1.0);
    const auto est3 = estimate_volume_moment(cube, 3, 2, 20000, 7);
    CHECK(est3.mean == 0.0);

    const auto rep =
        check_identity(square, "factorial-eq3", 2, 1, 50000, 8, CheckMode::coupled);
    CHECK(rep.pass);
    const auto rep2 = check_identity(square, "factorial-eq3", 2, 1, 50000, 9,
                                     CheckMode::independent);
    CHECK(rep2.pass);
}

TEST_CASE("factorial moment: interval and trivial cases", "[montecarlo]") {
    const auto interval = ConvexBody::interval(0.0, 1.0);
    const auto e31 = estimate_factorial_moment(interval, 3, 1, kReps, 21);
    CHECK(e31.mean == Catch::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(e31.std_error == 0.0); // N_3 is deterministic on an interval

    const auto square = ConvexBody::cube(2, 1.0);
    const auto j0 = estimate_factorial_moment(square, 5, 0, 3000, 22);
    CHECK(j0.mean == 1.0);
    CHECK(j0.std_error == 0.0);
}

TEST_CASE("vertex probability: interval 2/3 and trivial regime", "[montecarlo]") {
    const auto interval = ConvexBody::interval(0.0, 1.0);
    const auto direct = estimate_vertex_prob_direct(interval, 2, 1, kReps, 31);
    CHECK(within_sigma(direct, 2.0 / 3.0, 4.0));

    // with at most d+1 points in total, every point is a vertex a.s.
    const auto all1 = estimate_vertex_prob_direct(interval, 0, 2, 3000, 32);
    CHECK(all1.mean == 1.0);
    const auto triangle = ConvexBody::standard_simplex(2);
    const auto all2 = estimate_vertex_prob_direct(triangle, 0, 3, 3000, 33);
    CHECK(all2.mean == 1.0);
    const auto cube = ConvexBody::cube(3, 1.0);
    const auto all3 = estimate_vertex_prob_direct(cube, 1, 3, 3000, 34);
    CHECK(all3.mean == 1.0);
}

TEST_CASE("probability-type estimates stay in [0, 1]", "[montecarlo]") {
    const auto triangle = ConvexBody::standard_simplex(2);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const auto p = estimate_vertex_prob_direct(triangle, 3, 2, 5000, seed);
        CHECK(p.mean >= 0.0);
        CHECK(p.mean <= 1.0);
        const auto v = estimate_volume_moment(triangle, 4, 2, 5000, seed);
        CHECK(v.mean >= 0.0);
        CHECK(v.mean <= 1.0);
    }
}

TEST_CASE("determinism: same inputs give bit-identical estimates",
          "[montecarlo]") {
    const auto triangle = ConvexBody::standard_simplex(2);
    const auto a = estimate_volume_moment(triangle, 4, 2, 30000, 99);
    const auto b = estimate_volume_moment(triangle, 4, 2, 30000, 99);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);

    // worker count must not change the result
    const auto c = estimate_volume_moment(triangle, 4, 2, 30000, 99, 4);
    CHECK(a.mean == c.mean);
    CHECK(a.std_error == c.std_error);

    const auto r1 =
        check_identity(triangle, "dual-eq4", 2, 2, 20000, 7, CheckMode::coupled);
    const auto r2 = check_identity(triangle, "dual-eq4", 2, 2, 20000, 7,
                                   CheckMode::coupled, 4.0, 3);
    CHECK(r1.lhs.mean == r2.lhs.mean);
    CHECK(r1.rhs.mean == r2.rhs.mean);
    CHECK(r1.z_score == r2.z_score);

    // different seeds give different draws
    const auto d = estimate_volume_moment(triangle, 4, 2, 30000, 100);
    CHECK(a.mean != d.mean);
}

TEST_CASE("check_identity: all identities pass on the interval", "[montecarlo]") {
    auto interval = ConvexBody::interval(0.0, 1.0);
    interval.set_label("interval");
    for (const char* identity : {"efron-eq1", "product-eq2", "factorial-eq3",
                                 "dual-eq4"}) {
        for (const auto mode : {CheckMode::coupled, CheckMode::independent}) {
            const auto rep =
                check_identity(interval, identity, 3, 2, kReps, 41, mode);
            INFO(identity << " " << to_string(mode) << " z=" << rep.z_score);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("factorial-eq3 interval hits the exact 3/10 target", "[montecarlo]") {
    const auto interval = ConvexBody::interval(0.0, 1.0);
    const auto rep = check_identity(interval, "factorial-eq3", 3, 2, kReps, 51,
                                    CheckMode::coupled);
    CHECK(rep.pass);
    // the RHS is deterministic on an interval (N is constant), so it must
    // equal the Beta-moment value exactly
    CHECK(rep.rhs.mean == Catch::Approx(0.3).epsilon(1e-12));
    CHECK(std::fabs(rep.lhs.mean - 0.3) <= 4.0 * rep.lhs.std_error);
}

TEST_CASE("degenerate both-sides-constant case has z = 0", "[montecarlo]") {
    const auto interval = ConvexBody::interval(0.0, 1.0);
    // n = 1, k = 1: V_1 = 0 exactly and N_2 = 2 exactly, so both statistics
    // are the constant 0 and the z-score guard must report 0, not NaN.
    const auto rep = check_identity(interval, "factorial-eq3", 1, 1, 5000, 61,
                                    CheckMode::coupled);
    CHECK(rep.lhs.std_error == 0.0);
    CHECK(rep.rhs.std_error == 0.0);
    CHECK(rep.z_score == 0.0);
    CHECK(rep.pass);
}

TEST_CASE("coupled and independent modes agree within 5 sigma", "[montecarlo]") {
    auto triangle = ConvexBody::standard_simplex(2);
    triangle.set_label("triangle");
    auto z_of = [](const MomentEstimate& a, const MomentEstimate& b) {
        const double denom = std::sqrt(a.std_error * a.std_error +
                                       b.std_error * b.std_error);
        if (denom == 0.0) return a.mean == b.mean ? 0.0 : 1e9;
        return std::fabs(a.mean - b.mean) / denom;
    };
    for (const char* identity : {"efron-eq1", "product-eq2", "factorial-eq3",
                                 "dual-eq4"}) {
        const auto cpl =
            check_identity(triangle, identity, 3, 2, kReps, 71, CheckMode::coupled);
        const auto ind = check_identity(triangle, identity, 3, 2, kReps, 72,
                                        CheckMode::independent);
        // compare the two LHS estimates and the two RHS estimates
        INFO(identity);
        CHECK(z_of(cpl.lhs, ind.lhs) <= 5.0);
        CHECK(z_of(cpl.rhs, ind.rhs) <= 5.0);
    }
}

TEST_CASE("theorem 2: direct probability equals factorial ratio", "[montecarlo]") {
    struct Case {
        ConvexBody body;
        long m, j;
    };
    const Case cases[] = {
        {ConvexBody::interval(0.0, 1.0), 4, 2},
        {ConvexBody::standard_simplex(2), 3, 1},
        {ConvexBody::cube(2, 1.0), 4, 2},
        {ConvexBody::cube(3, 1.0), 2, 1},
    };
    for (const auto& c : cases) {
        for (const auto mode : {CheckMode::coupled, CheckMode::independent}) {
            const auto rep = check_theorem2(c.body, c.m, c.j, kReps, 81, mode, 5.0);
            INFO(to_string(c.body.kind()) << " m=" << c.m << " j=" << c.j
                                          << " mode=" << to_string(mode)
                                          << " z=" << rep.z_score);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("check_identity validates its inputs", "[montecarlo]") {
    const auto interval = ConvexBody::interval(0.0, 1.0);
    CHECK_THROWS_AS(
        check_identity(interval, "no-such-identity", 2, 1, 100, 1, CheckMode::coupled),
        ContractViolation);
    CHECK_THROWS_AS(
        check_identity(interval, "product-eq2", 0, 2, 100, 1, CheckMode::coupled),
        ContractViolation);
    CHECK_THROWS_AS(
        check_identity(interval, "factorial-eq3", 2, 0, 100, 1, CheckMode::coupled),
        ContractViolation);
    CHECK_THROWS_AS(check_theorem2(interval, 0, 1, 100, 1, CheckMode::coupled),
                    ContractViolation);
    CHECK_THROWS_AS(estimate_factorial_moment(interval, 3, 4, 100, 1),
                    ContractViolation);
}
