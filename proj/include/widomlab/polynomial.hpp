#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "widomlab/rational.hpp"

namespace widom {

/// Dense univariate polynomial, coefficients in ascending powers.
/// Scalar is double for numerics or Rational for exact oracles.
template <typename Scalar>
class Polynomial {
public:
    Polynomial() : c_{Scalar(0)} {}
    explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(Scalar v) { return Polynomial({v}); }
    static Polynomial x() { return Polynomial({Scalar(0), Scalar(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    const Scalar& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    Scalar coeff(int k) const { return k <= degree() ? c_[static_cast<std::size_t>(k)] : Scalar(0); }
    const Scalar& leading() const { return c_.back(); }
    bool is_zero() const { return c_.size() == 1 && c_[0] == Scalar(0); }

    template <typename T>
    auto operator()(const T& x) const {
        using R = decltype(Scalar() * x);
        R acc = R(c_.back());
        for (int k = degree() - 1; k >= 0; --k) acc = acc * x + c_[static_cast<std::size_t>(k)];
        return acc;
    }

    Polynomial derivative() const {
        if (degree() == 0) return Polynomial();
        std::vector<Scalar> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Scalar(static_cast<std::int64_t>(k));
        return Polynomial(std::move(d));
    }

    /// p(scale * x + shift).
    Polynomial compose_affine(Scalar scale, Scalar shift) const {
        Polynomial lin({shift, scale});
        Polynomial out = constant(c_.back());
        for (int k = degree() - 1; k >= 0; --k) out = out * lin + constant(c_[static_cast<std::size_t>(k)]);
        return out;
    }

    Polynomial monic() const { return *this * (Scalar(1) / leading()); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b * Scalar(-1); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Polynomial& a, const Scalar& s) {
        std::vector<Scalar> r = a.c_;
        for (auto& v : r) v *= s;
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Scalar& s, const Polynomial& a) { return a * s; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    void trim() {
        if (c_.empty()) c_.push_back(Scalar(0));
        while (c_.size() > 1 && c_.back() == Scalar(0)) c_.pop_back();
    }

    std::vector<Scalar> c_;
};

using Poly = Polynomial<double>;
using RationalPoly = Polynomial<Rational>;

inline Poly to_double(const RationalPoly& p) {
    std::vector<double> c;
    c.reserve(p.coeffs().size());
    for (const auto& r : p.coeffs()) c.push_back(r.to_double());
    return Poly(std::move(c));
}

/// Monomial form of the Chebyshev polynomial of the first kind T_k.
template <typename Scalar>
Polynomial<Scalar> chebyshev_t(int k) {
    Polynomial<Scalar> prev = Polynomial<Scalar>::constant(Scalar(1));
    if (k == 0) return prev;
    Polynomial<Scalar> cur = Polynomial<Scalar>::x();
    const Polynomial<Scalar> two_x({Scalar(0), Scalar(2)});
    for (int j = 1; j < k; ++j) {
        Polynomial<Scalar> next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Monomial form of sum_k c_k T_k(u).
inline Poly chebyshev_to_monomial(std::span<const double> c) {
    Poly out;
    Poly tkm1 = Poly::constant(1.0), tk = Poly::x();
    const Poly two_x({0.0, 2.0});
    for (std::size_t k = 0; k < c.size(); ++k) {
        const Poly& t = k == 0 ? tkm1 : tk;
        out = out + t * c[k];
        if (k >= 1) {
            Poly next = two_x * tk - tkm1;
            tkm1 = std::move(tk);
            tk = std::move(next);
        }
    }
    return out;
}

/// Clenshaw evaluation of sum_k c_k T_k(u).
template <typename Derived>
double clenshaw(const Eigen::MatrixBase<Derived>& c, double u) {
    double b1 = 0.0, b2 = 0.0;
    for (Eigen::Index k = c.size() - 1; k >= 1; --k) {
        double b0 = 2.0 * u * b1 - b2 + c(k);
        b2 = b1;
        b1 = b0;
    }
    return u * b1 - b2 + c(0);
}

/// All complex roots via eigenvalues of the companion matrix.
inline std::vector<std::complex<double>> polynomial_roots(const Poly& p) {
    const int n = p.degree();
    if (n < 1) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[i] / p.leading();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.real() < b.real(); });
    return out;
}

/// Newton refinement of an approximate real root; keeps the input if Newton
/// wanders off or stalls.
inline double polish_root(const Poly& p, double x, int iters = 8) {
    const Poly dp = p.derivative();
    double best = x, best_val = std::abs(p(x));
    for (int i = 0; i < iters; ++i) {
        double d = dp(x);
        if (d == 0.0) break;
        x -= p(x) / d;
        double v = std::abs(p(x));
        if (!std::isfinite(x)) break;
        if (v < best_val) {
            best = x;
            best_val = v;
        }
        if (v == 0.0) break;
    }
    return best;
}

/// Real roots (imaginary part below imag_tol relative to magnitude), polished
/// and sorted ascending.
inline std::vector<double> real_roots(const Poly& p, double imag_tol = 1e-7) {
    std::vector<double> out;
    for (auto z : polynomial_roots(p)) {
        if (std::abs(z.imag()) <= imag_tol * std::max(1.0, std::abs(z))) out.push_back(polish_root(p, z.real()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace widom
