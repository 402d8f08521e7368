#include "graded/polynomial.hpp"

#include "graded/errors.hpp"

#include <algorithm>
#include <cmath>

namespace graded {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
}

double Polynomial::operator()(double t) const {
    double v = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial({0.0});
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return Polynomial(d);
}

Polynomial Polynomial::antiderivative() const {
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
    return Polynomial(a);
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<double> r(std::max(p.c_.size(), q.c_.size()), 0.0);
    for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) r[i] += q.c_[i];
    return Polynomial(r);
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-1.0) * q; }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    std::vector<double> r(p.c_.size() + q.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.c_.size(); ++i)
        for (std::size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
    return Polynomial(r);
}

Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> r = p.c_;
    for (double& v : r) v *= s;
    return Polynomial(r);
}

MultiPolynomial::MultiPolynomial(int variables, std::vector<Monomial> terms)
    : vars_(variables), terms_(std::move(terms)) {
    for (const auto& m : terms_) {
        if (static_cast<int>(m.powers.size()) != vars_)
            throw InputError("monomial exponent list has wrong length");
        for (int e : m.powers)
            if (e < 0) throw InputError("monomial exponents must be nonnegative");
    }
}

double MultiPolynomial::operator()(const Vec& p) const {
    double v = 0.0;
    for (const auto& m : terms_) {
        double t = m.coeff;
        for (int k = 0; k < vars_; ++k)
            if (m.powers[k]) t *= std::pow(p(k), m.powers[k]);
        v += t;
    }
    return v;
}

Vec MultiPolynomial::gradient(const Vec& p) const {
    Vec g = Vec::Zero(vars_);
    for (const auto& m : terms_) {
        for (int k = 0; k < vars_; ++k) {
            if (m.powers[k] == 0) continue;
            double t = m.coeff * m.powers[k] * std::pow(p(k), m.powers[k] - 1);
            for (int q = 0; q < vars_; ++q)
                if (q != k && m.powers[q]) t *= std::pow(p(q), m.powers[q]);
            g(k) += t;
        }
    }
    return g;
}

}  // namespace graded
