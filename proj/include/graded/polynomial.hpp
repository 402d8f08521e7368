#pragma once

#include "graded/numerics.hpp"

#include <vector>

namespace graded {

// Univariate polynomial, coefficients in increasing powers.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    double operator()(double t) const;
    Polynomial derivative() const;
    Polynomial antiderivative() const;  // zero constant term
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coefficients() const { return c_; }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(double s, const Polynomial& p);

private:
    std::vector<double> c_;
};

struct Monomial {
    double coeff = 0.0;
    std::vector<int> powers;  // one exponent per chart coordinate
};

// Multivariate polynomial in the chart coordinates with exact gradient.
class MultiPolynomial {
public:
    MultiPolynomial() = default;
    MultiPolynomial(int variables, std::vector<Monomial> terms);

    int variables() const { return vars_; }
    double operator()(const Vec& p) const;
    Vec gradient(const Vec& p) const;
    const std::vector<Monomial>& terms() const { return terms_; }

private:
    int vars_ = 0;
    std::vector<Monomial> terms_;
};

}  // namespace graded
