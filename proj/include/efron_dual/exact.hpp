#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace efron_dual {

// Arbitrary-precision integers and rationals. mpq_class keeps values in
// canonical form (positive denominator, gcd(num, den) = 1) through all
// arithmetic, so equality is plain coefficient comparison.
using BigInt = mpz_class;
using BigRat = mpq_class;

/// Exact rational num/den in canonical form.
inline BigRat rat(long num, long den = 1) {
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

inline BigRat rat(const BigInt& num, const BigInt& den) {
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

/// Exact conversion; every finite double is a dyadic rational.
inline BigRat rat_of_double(double x) { return BigRat(x); }

/// C(n, k) with the usual conventions: 1 if k = 0, 0 if k < 0 or k > n.
inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return BigInt(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

inline int sign_of(const BigRat& q) { return sgn(q); }

inline std::string to_string(const BigRat& q) { return q.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

} // namespace efron_dual
