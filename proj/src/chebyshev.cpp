#include "gentess/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "gentess/errors.hpp"

namespace gentess {

double tolerance() {
    static const double tol = [] {
        if (const char* env = std::getenv("GENTESS_TOL")) {
            char* end = nullptr;
            double v = std::strtod(env, &end);
            if (end != env && v > 0.0 && std::isfinite(v)) return v;
        }
        return 1e-9;
    }();
    return tol;
}

ChebSeries::ChebSeries(double a, double b, std::vector<double> coeffs)
    : a_(a), b_(b), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

ChebSeries ChebSeries::constant(double a, double b, double value) {
    return ChebSeries(a, b, {value});
}

ChebSeries ChebSeries::interpolate(const std::function<double(double)>& f, double a,
                                   double b, int degree) {
    const int n = degree;
    std::vector<double> values(n + 1);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int k = 0; k <= n; ++k) {
        double x = std::cos(std::numbers::pi * k / n);
        values[k] = f(mid + half * x);
    }
    // DCT-I on the extrema.
    std::vector<double> c(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        double sum = 0.0;
        for (int k = 0; k <= n; ++k) {
            double w = (k == 0 || k == n) ? 0.5 : 1.0;
            sum += w * values[k] * std::cos(std::numbers::pi * double(j) * k / n);
        }
        c[j] = 2.0 * sum / n;
    }
    c[0] *= 0.5;
    c[n] *= 0.5;
    return ChebSeries(a, b, std::move(c));
}

bool ChebSeries::fit(const std::function<double(double)>& f, double a, double b,
                     double tail_tol, int max_degree, ChebSeries& out) {
    for (int deg = 16;; deg *= 2) {
        deg = std::min(deg, max_degree);
        ChebSeries s = interpolate(f, a, b, deg);
        const auto& c = s.coeffs_;
        // Tail: the last quarter of the coefficients.
        double tail = 0.0;
        for (int j = deg - deg / 4; j <= deg; ++j) tail = std::max(tail, std::abs(c[j]));
        out = std::move(s);
        if (tail < tail_tol) {
            // Chop trailing coefficients that contribute nothing.
            auto& cc = out.coeffs_;
            while (cc.size() > 1 && std::abs(cc.back()) < 1e-17) cc.pop_back();
            return true;
        }
        if (deg >= max_degree) return false;
    }
}

double ChebSeries::operator()(double s) const {
    const double x = (2.0 * s - a_ - b_) / (b_ - a_);
    // Clenshaw.
    double b1 = 0.0, b2 = 0.0;
    for (int j = degree(); j >= 1; --j) {
        double t = 2.0 * x * b1 - b2 + coeffs_[j];
        b2 = b1;
        b1 = t;
    }
    return x * b1 - b2 + coeffs_[0];
}

ChebSeries ChebSeries::integral() const {
    const int n = degree();
    const auto& c = coeffs_;
    auto at = [&](int j) { return j <= n ? c[j] : 0.0; };
    std::vector<double> out(n + 2, 0.0);
    const double scale = 0.5 * (b_ - a_);
    out[1] = (at(0) - 0.5 * at(2)) * scale;
    for (int j = 2; j <= n + 1; ++j) out[j] = (at(j - 1) - at(j + 1)) / (2.0 * j) * scale;
    // Fix the constant so that the antiderivative vanishes at x = -1.
    double at_minus_one = 0.0;
    for (int j = 1; j <= n + 1; ++j) at_minus_one += (j % 2 == 0 ? 1.0 : -1.0) * out[j];
    out[0] = -at_minus_one;
    return ChebSeries(a_, b_, std::move(out));
}

double ChebSeries::definite_integral() const {
    double sum = 0.0;
    for (int j = 0; j <= degree(); j += 2) sum += coeffs_[j] * 2.0 / (1.0 - double(j) * j);
    return sum * 0.5 * (b_ - a_);
}

ChebSeries& ChebSeries::operator*=(double c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

ChebSeries& ChebSeries::operator+=(const ChebSeries& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
    return *this;
}

ChebSeries& ChebSeries::operator-=(const ChebSeries& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
    return *this;
}

std::vector<double> chebyshev_points(double a, double b, int count) {
    std::vector<double> pts(count);
    if (count == 1) {
        pts[0] = 0.5 * (a + b);
        return pts;
    }
    const int n = count - 1;
    for (int k = 0; k <= n; ++k) {
        double x = -std::cos(std::numbers::pi * k / n);
        pts[k] = 0.5 * (a + b) + 0.5 * (b - a) * x;
    }
    pts.front() = a;
    pts.back() = b;
    return pts;
}

} // namespace gentess
