#include <catch2/catch_amalgamated.hpp>

#include <cstdint>

#include "efron_dual/duality.hpp"

using namespace efron_dual;
using namespace efron_dual::duality;

TEST_CASE("falling_factorial pinned values", "[duality]") {
    CHECK(falling_factorial(5, 2) == 20);
    CHECK(falling_factorial(7, 0) == 1);
    CHECK(falling_factorial(3, 5) == 0);
    CHECK(falling_factorial(0, 0) == 1);
    CHECK(falling_factorial(10, 10) == 3628800);
}

TEST_CASE("matrix_A pinned entries", "[duality]") {
    const IntMatrix a1 = matrix_A(1);
    CHECK(a1.at(0, 0) == 1);
    CHECK(a1.at(0, 1) == 0);
    CHECK(a1.at(1, 0) == 1);
    CHECK(a1.at(1, 1) == -1);

    const IntMatrix a0 = matrix_A(0);
    CHECK(a0.order() == 1);
    CHECK(a0.at(0, 0) == 1);

    const IntMatrix a2 = matrix_A(2);
    CHECK(a2.at(2, 0) == 1);
    CHECK(a2.at(2, 1) == -2);
    CHECK(a2.at(2, 2) == 1);
    // lower triangular
    CHECK(a2.at(0, 1) == 0);
    CHECK(a2.at(1, 2) == 0);
}

TEST_CASE("A_k is an involution up to k = 16", "[duality]") {
    for (long k = 0; k <= 16; ++k) {
        INFO("k=" << k);
        CHECK(verify_involution(k));
    }
}

TEST_CASE("transform pinned 1-D interval example", "[duality]") {
    // Two uniform points on an interval: N_3 is identically 2, so the
    // n-vector for n=2, k=1 is (1, 2/3); the v-vector must be (1, 1/3),
    // matching E V_2 / length = 1/3 from the order-statistics oracle.
    MomentVector<BigRat> nvec{MomentKind::vertex_side, 2, 1, {rat(1), rat(2, 3)}};
    const auto vvec = transform(nvec);
    CHECK(vvec.kind == MomentKind::volume_side);
    CHECK(vvec.entries == std::vector<BigRat>{rat(1), rat(1, 3)});
}

TEST_CASE("transform maps unit vector to all-ones", "[duality]") {
    MomentVector<BigRat> e0{MomentKind::vertex_side, 3, 4,
                            {rat(1), rat(0), rat(0), rat(0), rat(0)}};
    const auto out = transform(e0);
    for (const auto& v : out.entries) CHECK(v == rat(1));
}

TEST_CASE("transform twice is the identity on exact vectors", "[duality]") {
    std::uint64_t s = 99;
    auto next = [&s]() {
        s += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        return z ^ (z >> 31);
    };
    for (int rep = 0; rep < 30; ++rep) {
        const long k = static_cast<long>(next() % 9);
        MomentVector<BigRat> v{MomentKind::volume_side, 2, k, {}};
        v.entries.push_back(rat(1));
        for (long i = 1; i <= k; ++i)
            v.entries.push_back(rat(static_cast<long>(next() % 19) - 9,
                                    static_cast<long>(next() % 7) + 1));
        const auto back = transform(transform(v));
        CHECK(back.kind == v.kind);
        CHECK(back.entries == v.entries);
    }
}

TEST_CASE("transform last row realizes the Eq. (4) alternating sum", "[duality]") {
    MomentVector<BigRat> v{MomentKind::volume_side, 1, 3,
                           {rat(1), rat(1, 2), rat(2, 7), rat(3, 11)}};
    const auto out = transform(v);
    BigRat expect(0);
    for (long j = 0; j <= 3; ++j) {
        BigRat term = BigRat(binomial(3, j)) * v.entries[static_cast<std::size_t>(j)];
        expect += (j % 2 == 0) ? term : -term;
    }
    CHECK(out.entries.back() == expect);
}

TEST_CASE("transform on floating vectors round-trips to round-off", "[duality]") {
    MomentVector<double> v{MomentKind::volume_side, 3, 5,
                           {1.0, 0.41, 0.2173, 0.0911, 0.0352, 0.0149}};
    const auto once = transform(v);
    CHECK(once.kind == MomentKind::vertex_side);
    const auto back = transform(once);
    REQUIRE(back.entries.size() == v.entries.size());
    for (std::size_t i = 0; i < v.entries.size(); ++i)
        CHECK(back.entries[i] == Catch::Approx(v.entries[i]).margin(1e-12));
}

TEST_CASE("transform rejects malformed vectors", "[duality]") {
    MomentVector<BigRat> bad_len{MomentKind::volume_side, 2, 2, {rat(1), rat(1, 2)}};
    CHECK_THROWS_AS(transform(bad_len), ContractViolation);
    MomentVector<BigRat> bad_head{MomentKind::volume_side, 2, 1, {rat(2), rat(1, 2)}};
    CHECK_THROWS_AS(transform(bad_head), ContractViolation);
}

TEST_CASE("eq2_eq3_pointwise pinned values", "[duality]") {
    auto [l1, r1] = eq2_eq3_pointwise(3, 2, 1);
    CHECK(l1 == rat(0));
    CHECK(r1 == rat(0));
    auto [l2, r2] = eq2_eq3_pointwise(4, 2, 2);
    CHECK(l2 == rat(0));
    CHECK(r2 == rat(0));
    auto [l3, r3] = eq2_eq3_pointwise(0, 5, 3);
    CHECK(l3 == rat(1));
    CHECK(r3 == rat(1));
}

TEST_CASE("eq2_eq3_pointwise equality on a sample grid", "[duality]") {
    for (long N = 0; N <= 12; ++N)
        for (long n = 1; n <= 6; ++n)
            for (long k = 1; k <= 5; ++k) {
                auto [lhs, rhs] = eq2_eq3_pointwise(N, n, k);
                INFO("N=" << N << " n=" << n << " k=" << k);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("DiscreteLaw validation", "[duality]") {
    DiscreteLaw ok{{2, 4}, {rat(1, 2), rat(1, 2)}};
    CHECK_NOTHROW(ok.validate());

    DiscreteLaw bad_sum{{2}, {rat(1, 2)}};
    CHECK_THROWS_AS(bad_sum.validate(), ContractViolation);
    DiscreteLaw bad_order{{4, 2}, {rat(1, 2), rat(1, 2)}};
    CHECK_THROWS_AS(bad_order.validate(), ContractViolation);
    DiscreteLaw bad_neg{{2, 4}, {rat(3, 2), rat(-1, 2)}};
    CHECK_THROWS_AS(bad_neg.validate(), ContractViolation);

    CHECK_THROWS_AS(
        expect_identity_eq3(bad_sum, 2, 1, rat(1, 3)), ContractViolation);
}

TEST_CASE("expect_identity_eq3 pinned interval cases", "[duality]") {
    const DiscreteLaw two = DiscreteLaw::point_mass(2);
    CHECK(expect_identity_eq3(two, 2, 1, rat(1, 3)).pass);
    CHECK(expect_identity_eq3(two, 3, 2, rat(3, 10)).pass);
    CHECK(expect_identity_eq3(two, 1, 1, rat(0)).pass);
    // and a wrong moment must not pass
    CHECK_FALSE(expect_identity_eq3(two, 2, 1, rat(1, 4)).pass);
}

TEST_CASE("inclusion-exclusion rearrangement", "[duality]") {
    const DiscreteLaw two = DiscreteLaw::point_mass(2);
    CHECK(inclusion_exclusion_check(two, 2, 1));
    CHECK(inclusion_exclusion_check(two, 2, 2));
    const DiscreteLaw uni34{{3, 4}, {rat(1, 2), rat(1, 2)}};
    CHECK(inclusion_exclusion_check(uni34, 2, 2));
    CHECK(inclusion_exclusion_check(uni34, 5, 3));
}

TEST_CASE("linearity closure: E[eq2 form] = E[eq3 form] under any law",
          "[duality]") {
    const std::vector<DiscreteLaw> laws{
        DiscreteLaw::point_mass(2),
        {{3, 4}, {rat(1, 3), rat(2, 3)}},
        {{3, 4, 5, 6}, {rat(1, 10), rat(2, 5), rat(3, 10), rat(1, 5)}},
    };
    for (const auto& law : laws)
        for (long n = 1; n <= 5; ++n)
            for (long k = 1; k <= 4; ++k) {
                const BigRat lhs = law.expectation([&](long N) {
                    return eq2_eq3_pointwise(N, n, k).first;
                });
                const BigRat rhs = law.expectation([&](long N) {
                    return eq2_eq3_pointwise(N, n, k).second;
                });
                BigRat rhs_by_moments(0);
                for (long j = 0; j <= k; ++j) {
                    const BigRat term = BigRat(binomial(k, j)) *
                                        factorial_moment_ratio(law, n + k, j);
                    rhs_by_moments += (j % 2 == 0) ? term : -term;
                }
                INFO("n=" << n << " k=" << k);
                CHECK(lhs == rhs);
                CHECK(lhs == rhs_by_moments);
            }
}

TEST_CASE("expectation engine pinned values", "[duality]") {
    const DiscreteLaw uni24{{2, 4}, {rat(1, 2), rat(1, 2)}};
    CHECK(uni24.expectation([](long N) { return rat(N); }) == rat(3));
    CHECK(uni24.expectation([](long N) { return rat(N * (N - 1)); }) == rat(7));
}
