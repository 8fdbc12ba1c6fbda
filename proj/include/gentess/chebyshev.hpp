#pragma once

#include <functional>
#include <vector>

namespace gentess {

/// Truncated Chebyshev series on an interval [a,b]:
///   f(s) = sum_j coeffs[j] T_j(x),  x = (2s - a - b) / (b - a).
///
/// Integration is performed on the coefficients, so recurrences built from
/// repeated integration stay exact on the proxy.
class ChebSeries {
public:
    ChebSeries() = default;
    ChebSeries(double a, double b, std::vector<double> coeffs);

    /// Interpolates f at increasing numbers of Chebyshev points until the
    /// trailing coefficients drop below tail_tol, up to max_degree.
    /// Returns false (and leaves the best attempt in out) on failure.
    static bool fit(const std::function<double(double)>& f, double a, double b,
                    double tail_tol, int max_degree, ChebSeries& out);

    /// Interpolant of fixed degree through the degree+1 Chebyshev extrema.
    static ChebSeries interpolate(const std::function<double(double)>& f, double a,
                                  double b, int degree);

    double operator()(double s) const;

    /// Antiderivative vanishing at a.
    ChebSeries integral() const;

    /// Integral over [a,b].
    double definite_integral() const;

    ChebSeries& operator*=(double c);
    ChebSeries& operator+=(const ChebSeries& other);
    ChebSeries& operator-=(const ChebSeries& other);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double a() const { return a_; }
    double b() const { return b_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    static ChebSeries constant(double a, double b, double value);

private:
    double a_ = -1.0;
    double b_ = 1.0;
    std::vector<double> coeffs_;
};

/// Chebyshev extrema cos(pi k / N), k = 0..N, mapped to [a,b] (ascending).
std::vector<double> chebyshev_points(double a, double b, int count);

} // namespace gentess
