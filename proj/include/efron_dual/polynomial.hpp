#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "efron_dual/exact.hpp"

namespace efron_dual {

/// Dense univariate polynomial over exact rationals. coeffs()[i] is the
/// coefficient of x^i. The zero polynomial is the empty coefficient list;
/// otherwise the trailing coefficient is nonzero, so equality is
/// coefficient-wise comparison.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) {
        trim();
    }

    static Polynomial constant(const BigRat& c) {
        return Polynomial(std::vector<BigRat>{c});
    }
    static Polynomial variable() {
        return Polynomial(std::vector<BigRat>{rat(0), rat(1)});
    }
    /// x + shift
    static Polynomial shifted_variable(const BigRat& shift) {
        return Polynomial(std::vector<BigRat>{shift, rat(1)});
    }

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    BigRat coeff(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : BigRat(0);
    }
    const std::vector<BigRat>& coeffs() const { return coeffs_; }

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<BigRat> r(std::max(coeffs_.size(), o.coeffs_.size()), BigRat(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
        return Polynomial(std::move(r));
    }

    Polynomial operator-() const {
        std::vector<BigRat> r(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = -coeffs_[i];
        return Polynomial(std::move(r));
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return Polynomial();
        std::vector<BigRat> r(coeffs_.size() + o.coeffs_.size() - 1, BigRat(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                r[i + j] += coeffs_[i] * o.coeffs_[j];
        return Polynomial(std::move(r));
    }

    Polynomial operator*(const BigRat& s) const {
        if (s == 0) return Polynomial();
        std::vector<BigRat> r(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = coeffs_[i] * s;
        return Polynomial(std::move(r));
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }

    BigRat eval(const BigRat& x) const {
        BigRat acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const BigRat& c = coeffs_[i];
            if (c == 0) continue;
            if (!first) out << (sgn(c) < 0 ? " - " : " + ");
            else if (sgn(c) < 0) out << "-";
            BigRat a = abs(c);
            if (i == 0 || a != 1) out << a.get_str();
            if (i > 0) {
                out << var;
                if (i > 1) out << "^" << i;
            }
            first = false;
        }
        return out.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigRat> coeffs_;
};

} // namespace efron_dual
