#pragma once

#include <vector>

#include "efron_dual/exact.hpp"
#include "efron_dual/polynomial.hpp"

namespace efron_dual::exactsym {

/// j-th elementary symmetric polynomial of concrete values: the sum over all
/// j-subsets of the product of the selected values. Conventions are total:
/// 1 if j = 0 (including the empty sequence), 0 if j < 0 or j > |values|.
inline BigRat elem_sym(const std::vector<BigRat>& values, long j) {
    if (j == 0) return BigRat(1);
    if (j < 0 || j > static_cast<long>(values.size())) return BigRat(0);
    // One pass of the recurrence per value, degree index descending so each
    // entry still refers to the previous prefix.
    std::vector<BigRat> e(static_cast<std::size_t>(j) + 1, BigRat(0));
    e[0] = 1;
    for (const BigRat& x : values) {
        for (std::size_t m = e.size() - 1; m >= 1; --m) e[m] += x * e[m - 1];
    }
    return e.back();
}

/// elem_sym over the integer range lo..hi (empty when hi < lo).
inline BigRat elem_sym_range(long lo, long hi, long j) {
    std::vector<BigRat> values;
    for (long v = lo; v <= hi; ++v) values.push_back(rat(v));
    return elem_sym(values, j);
}

/// sigma_j(x+1, ..., x+k) expanded as a polynomial in x, built by repeated
/// application of the recurrence
///   sigma_j(x_1..x_k) = x_k sigma_{j-1}(x_1..x_{k-1}) + sigma_j(x_1..x_{k-1}).
/// Same boundary conventions as elem_sym; degree is j for 0 <= j <= k.
inline Polynomial shifted_sigma_poly(long k, long j) {
    if (j == 0) return Polynomial::constant(rat(1));
    if (j < 0 || j > k) return Polynomial();
    std::vector<Polynomial> e(static_cast<std::size_t>(j) + 1);
    e[0] = Polynomial::constant(rat(1));
    for (long i = 1; i <= k; ++i) {
        const Polynomial xi = Polynomial::shifted_variable(rat(i)); // x + i
        for (std::size_t m = e.size() - 1; m >= 1; --m) e[m] += xi * e[m - 1];
    }
    return e.back();
}

/// Right-hand side of the decomposition
///   sigma_j(x+1..x+k) = sum_{i=0}^{j} C(k,i) sigma_{j-i}(1..k-i-1)
///                       sigma_i(x+1..x+i),
/// expanded in x. The range 1..k-i-1 is empty when k-i-1 <= 0, in which case
/// sigma over it is 1 for degree 0 and 0 otherwise.
inline Polynomial proposition_rhs(long k, long j) {
    Polynomial sum;
    for (long i = 0; i <= j; ++i) {
        const BigRat scalar =
            BigRat(binomial(k, i)) * elem_sym_range(1, k - i - 1, j - i);
        if (scalar == 0) continue;
        // sigma_i(x+1..x+i) is the full product (x+1)...(x+i).
        sum += shifted_sigma_poly(i, i) * scalar;
    }
    return sum;
}

/// prod_{i=1}^{k} (t - x_i) as a polynomial in t; the coefficient of t^{k-j}
/// is (-1)^j sigma_j(x_1..x_k).
inline Polynomial gen_poly(const std::vector<BigRat>& values) {
    Polynomial p = Polynomial::constant(rat(1));
    for (const BigRat& x : values)
        p = p * Polynomial(std::vector<BigRat>{-x, rat(1)});
    return p;
}

struct PropositionCase {
    long k;
    long j;
    bool pass;
};

/// Compares shifted_sigma_poly(k, j) with proposition_rhs(k, j)
/// coefficient-wise for every 0 <= j <= k <= k_max. Failures are encoded in
/// the report, never thrown.
inline std::vector<PropositionCase> verify_proposition(long k_max) {
    std::vector<PropositionCase> report;
    for (long k = 0; k <= k_max; ++k)
        for (long j = 0; j <= k; ++j)
            report.push_back(
                {k, j, shifted_sigma_poly(k, j) == proposition_rhs(k, j)});
    return report;
}

} // namespace efron_dual::exactsym
