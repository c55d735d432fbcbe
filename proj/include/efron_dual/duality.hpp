#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "efron_dual/common.hpp"
#include "efron_dual/exact.hpp"

namespace efron_dual::duality {

/// Falling factorial a(a-1)...(a-j+1); 1 when j = 0, 0 when j > a.
inline BigInt falling_factorial(long a, long j) {
    BigInt r(1);
    for (long i = 0; i < j; ++i) r *= BigInt(a - i);
    return r;
}

/// Square matrix of exact integers, row-major, 0-based.
class IntMatrix {
public:
    explicit IntMatrix(std::size_t order)
        : order_(order), entries_(order * order, BigInt(0)) {}

    std::size_t order() const { return order_; }
    BigInt& at(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const {
        return entries_[i * order_ + j];
    }

    static IntMatrix identity(std::size_t order) {
        IntMatrix m(order);
        for (std::size_t i = 0; i < order; ++i) m.at(i, i) = 1;
        return m;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        IntMatrix r(order_);
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; j < order_; ++j) {
                BigInt acc(0);
                for (std::size_t l = 0; l < order_; ++l)
                    acc += at(i, l) * o.at(l, j);
                r.at(i, j) = std::move(acc);
            }
        return r;
    }

    bool operator==(const IntMatrix& o) const {
        return order_ == o.order_ && entries_ == o.entries_;
    }

private:
    std::size_t order_;
    std::vector<BigInt> entries_;
};

/// The (k+1)x(k+1) binomial involution matrix with entry(i,j) = (-1)^j C(i,j);
/// lower-triangular since C(i,j) = 0 for j > i.
inline IntMatrix matrix_A(long k) {
    IntMatrix m(static_cast<std::size_t>(k) + 1);
    for (long i = 0; i <= k; ++i)
        for (long j = 0; j <= i; ++j) {
            BigInt e = binomial(i, j);
            if (j % 2 != 0) e = -e;
            m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                std::move(e);
        }
    return m;
}

/// True iff A_k * A_k is the identity, computed with exact integers.
inline bool verify_involution(long k) {
    const IntMatrix a = matrix_A(k);
    return a * a == IntMatrix::identity(a.order());
}

enum class MomentKind { volume_side, vertex_side };

inline const char* to_string(MomentKind kind) {
    return kind == MomentKind::volume_side ? "volume-side" : "vertex-side";
}

/// The paper's v- and n-vectors: (k+1) entries, entry 0 identically 1.
/// Scalar is BigRat in exact mode and double in floating mode.
template <typename Scalar>
struct MomentVector {
    MomentKind kind;
    long n = 1;
    long k = 0;
    std::vector<Scalar> entries;

    void validate() const {
        if (entries.size() != static_cast<std::size_t>(k) + 1)
            throw ContractViolation("MomentVector: length must be k+1");
        if (!(entries[0] == Scalar(1)))
            throw ContractViolation("MomentVector: entry 0 must be 1");
    }
};

namespace detail {
inline BigRat scale(const BigInt& a, const BigRat& x) { return BigRat(a) * x; }
inline double scale(const BigInt& a, double x) { return a.get_d() * x; }
} // namespace detail

/// Multiplies by A_k and flips the side tag. An involution on exact vectors.
template <typename Scalar>
MomentVector<Scalar> transform(const MomentVector<Scalar>& vec) {
    vec.validate();
    const IntMatrix a = matrix_A(vec.k);
    MomentVector<Scalar> out;
    out.kind = vec.kind == MomentKind::volume_side ? MomentKind::vertex_side
                                                   : MomentKind::volume_side;
    out.n = vec.n;
    out.k = vec.k;
    out.entries.assign(vec.entries.size(), Scalar(0));
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        Scalar acc(0);
        for (std::size_t j = 0; j <= i; ++j)
            acc += detail::scale(a.at(i, j), vec.entries[j]);
        out.entries[i] = acc;
    }
    return out;
}

/// Both sides of the per-value identity behind the Eq. (2) <-> Eq. (3)
/// transformation:
///   lhs = prod_{i=1..k} (1 - N/(n+i))
///   rhs = sum_{j=0..k} (-1)^j C(k,j) (N)_(j) / (n+k)_(j)
/// The two are equal for every integer N >= 0; returning both lets tests
/// assert that without trusting either route.
inline std::pair<BigRat, BigRat> eq2_eq3_pointwise(long N, long n, long k) {
    BigRat lhs(1);
    for (long i = 1; i <= k; ++i) lhs *= rat(1) - rat(N, n + i);

    BigRat rhs(0);
    for (long j = 0; j <= k; ++j) {
        BigRat term = BigRat(binomial(k, j)) *
                      rat(falling_factorial(N, j), falling_factorial(n + k, j));
        rhs += (j % 2 == 0) ? term : -term;
    }
    return {lhs, rhs};
}

/// Finitely supported law of a vertex count, exact probabilities.
struct DiscreteLaw {
    std::vector<long> support;       // strictly increasing, nonnegative
    std::vector<BigRat> probabilities;

    void validate() const {
        if (support.size() != probabilities.size())
            throw ContractViolation("DiscreteLaw: support/probability size mismatch");
        if (support.empty())
            throw ContractViolation("DiscreteLaw: empty support");
        BigRat total(0);
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (support[i] < 0)
                throw ContractViolation("DiscreteLaw: negative support value");
            if (i > 0 && support[i] <= support[i - 1])
                throw ContractViolation("DiscreteLaw: support not strictly increasing");
            if (sgn(probabilities[i]) < 0)
                throw ContractViolation("DiscreteLaw: negative probability");
            total += probabilities[i];
        }
        if (total != 1)
            throw ContractViolation("DiscreteLaw: probabilities must sum to 1");
    }

    static DiscreteLaw point_mass(long value) {
        return DiscreteLaw{{value}, {rat(1)}};
    }

    template <typename F>
    BigRat expectation(F&& f) const {
        BigRat acc(0);
        for (std::size_t i = 0; i < support.size(); ++i)
            acc += probabilities[i] * f(support[i]);
        return acc;
    }
};

/// E[(N)_(j)] / (m)_(j) under the law, exact.
inline BigRat factorial_moment_ratio(const DiscreteLaw& law, long m, long j) {
    const BigRat num = law.expectation(
        [j](long N) { return BigRat(falling_factorial(N, j)); });
    return num / BigRat(falling_factorial(m, j));
}

/// Exact-mode identity report: both sides as rationals, zero tolerance.
struct ExactIdentityReport {
    std::string identity;
    long n = 0;
    long k = 0;
    BigRat lhs;
    BigRat rhs;
    bool pass = false;
};

/// Evaluates the Eq. (3) right-hand side exactly under the given law of
/// N_{n+k} and compares with the supplied volume moment E V_n^k / volK^k.
inline ExactIdentityReport expect_identity_eq3(const DiscreteLaw& law, long n,
                                               long k, const BigRat& vmoment) {
    law.validate();
    BigRat rhs(0);
    for (long j = 0; j <= k; ++j) {
        BigRat term =
            BigRat(binomial(k, j)) * factorial_moment_ratio(law, n + k, j);
        rhs += (j % 2 == 0) ? term : -term;
    }
    return {"factorial-eq3", n, k, vmoment, rhs, vmoment == rhs};
}

/// The complementary-probability rearrangement: 1 minus the k >= 1 part of
/// the inclusion-exclusion sum equals the full alternating sum.
inline bool inclusion_exclusion_check(const DiscreteLaw& law, long n, long k) {
    law.validate();
    BigRat at_least_one(0);
    for (long j = 1; j <= k; ++j) {
        BigRat term =
            BigRat(binomial(k, j)) * factorial_moment_ratio(law, n + k, j);
        at_least_one += (j % 2 == 1) ? term : -term;
    }
    BigRat full(0);
    for (long j = 0; j <= k; ++j) {
        BigRat term =
            BigRat(binomial(k, j)) * factorial_moment_ratio(law, n + k, j);
        full += (j % 2 == 0) ? term : -term;
    }
    return rat(1) - at_least_one == full;
}

} // namespace efron_dual::duality
