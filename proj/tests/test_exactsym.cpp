#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "efron_dual/exactsym.hpp"

using namespace efron_dual;
using namespace efron_dual::exactsym;

namespace {

// Independent oracle: enumerate all j-subsets by bitmask and sum the
// products. Exponential, reserved for small inputs.
BigRat elem_sym_bruteforce(const std::vector<BigRat>& values, long j) {
    const auto n = values.size();
    if (j == 0) return BigRat(1);
    if (j < 0 || j > static_cast<long>(n)) return BigRat(0);
    BigRat total(0);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != j) continue;
        BigRat prod(1);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) prod *= values[i];
        total += prod;
    }
    return total;
}

// Small deterministic rational generator for property sweeps.
struct RatGen {
    std::uint64_t state;
    explicit RatGen(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    BigRat next_rat() {
        const long num = static_cast<long>(next() % 21) - 10; // -10..10
        const long den = static_cast<long>(next() % 6) + 1;   // 1..6
        return rat(num, den);
    }
    std::vector<BigRat> next_seq(std::size_t len) {
        std::vector<BigRat> v(len);
        for (auto& x : v) x = next_rat();
        return v;
    }
};

Polynomial poly_from(std::initializer_list<long> coeffs) {
    std::vector<BigRat> c;
    for (long v : coeffs) c.push_back(rat(v));
    return Polynomial(std::vector<BigRat>(c));
}

} // namespace

TEST_CASE("elem_sym conventions and pinned values", "[exactsym]") {
    CHECK(elem_sym({}, 0) == rat(1));
    CHECK(elem_sym({rat(1), rat(2), rat(3)}, 2) == rat(11));
    CHECK(elem_sym({rat(5), rat(7)}, 3) == rat(0));

    // Totality: never fails for any j, including negatives, any length.
    CHECK(elem_sym({}, -3) == rat(0));
    CHECK(elem_sym({}, 5) == rat(0));
    CHECK(elem_sym({rat(2)}, -1) == rat(0));
    CHECK(elem_sym({rat(2)}, 0) == rat(1));
    CHECK(elem_sym({rat(2)}, 1) == rat(2));
}

TEST_CASE("elem_sym matches subset enumeration", "[exactsym]") {
    RatGen gen(2024);
    for (int rep = 0; rep < 40; ++rep) {
        const auto values = gen.next_seq(1 + rep % 8);
        for (long j = -1; j <= static_cast<long>(values.size()) + 1; ++j)
            CHECK(elem_sym(values, j) == elem_sym_bruteforce(values, j));
    }
}

TEST_CASE("recurrence sigma_j(x1..xk) = xk sigma_{j-1} + sigma_j", "[exactsym]") {
    RatGen gen(77);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t k = 1 + rep % 10;
        const auto values = gen.next_seq(k);
        const std::vector<BigRat> prefix(values.begin(), values.end() - 1);
        const BigRat& last = values.back();
        for (long j = 0; j <= static_cast<long>(k); ++j) {
            CHECK(elem_sym(values, j) ==
                  last * elem_sym(prefix, j - 1) + elem_sym(prefix, j));
        }
    }
}

TEST_CASE("binomial specialization: all-ones values", "[exactsym]") {
    for (long k = 0; k <= 20; ++k) {
        const std::vector<BigRat> ones(static_cast<std::size_t>(k), rat(1));
        for (long j = 0; j <= k; ++j)
            CHECK(elem_sym(ones, j) == BigRat(binomial(k, j)));
    }
}

TEST_CASE("gen_poly pinned values", "[exactsym]") {
    CHECK(gen_poly({rat(1), rat(1)}) == poly_from({1, -2, 1}));
    CHECK(gen_poly({}) == poly_from({1}));
    CHECK(gen_poly({rat(2), rat(3)}) == poly_from({6, -5, 1}));
}

TEST_CASE("gen_poly coefficients are signed elementary symmetrics", "[exactsym]") {
    RatGen gen(5150);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t k = rep % 9;
        const auto values = gen.next_seq(k);
        const Polynomial p = gen_poly(values);
        REQUIRE(p.degree() == static_cast<long>(k));
        for (long j = 0; j <= static_cast<long>(k); ++j) {
            const BigRat expect = (j % 2 == 0 ? BigRat(1) : BigRat(-1)) *
                                  elem_sym_bruteforce(values, j);
            CHECK(p.coeff(static_cast<std::size_t>(k - j)) == expect);
        }
    }
}

TEST_CASE("shifted_sigma_poly pinned expansions", "[exactsym]") {
    CHECK(shifted_sigma_poly(2, 1) == poly_from({3, 2}));
    CHECK(shifted_sigma_poly(5, 0) == poly_from({1}));
    // (x+1)(x+2)(x+3) = x^3 + 6x^2 + 11x + 6
    CHECK(shifted_sigma_poly(3, 3) == poly_from({6, 11, 6, 1}));
    CHECK(shifted_sigma_poly(3, -2).is_zero());
    CHECK(shifted_sigma_poly(2, 5).is_zero());
}

TEST_CASE("shifted_sigma_poly agrees with numeric specialization", "[exactsym]") {
    // Substituting a concrete x must reproduce elem_sym over x+1..x+k.
    for (long k = 0; k <= 7; ++k) {
        for (long j = 0; j <= k; ++j) {
            const Polynomial p = shifted_sigma_poly(k, j);
            for (long x : {-4L, -1L, 0L, 2L, 9L}) {
                std::vector<BigRat> values;
                for (long i = 1; i <= k; ++i) values.push_back(rat(x + i));
                CHECK(p.eval(rat(x)) == elem_sym(values, j));
            }
        }
    }
}

TEST_CASE("proposition_rhs pinned values", "[exactsym]") {
    CHECK(proposition_rhs(2, 1) == poly_from({3, 2}));
    for (long k = 0; k <= 6; ++k) CHECK(proposition_rhs(k, 0) == poly_from({1}));
    CHECK(proposition_rhs(3, 3) == poly_from({6, 11, 6, 1}));
}

TEST_CASE("proposition holds for all 0 <= j <= k <= 8", "[exactsym]") {
    const auto report = verify_proposition(8);
    REQUIRE(report.size() == 45);
    for (const auto& c : report) {
        INFO("k=" << c.k << " j=" << c.j);
        CHECK(c.pass);
    }
}
