#include "gentess/functions.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "gentess/errors.hpp"

namespace gentess {

namespace {

double sin_deriv(int k, double x) { return std::sin(x + k * std::numbers::pi / 2); }

double cosh_deriv(int k, double x) { return k % 2 == 0 ? std::cosh(x) : std::sinh(x); }

double sinh_deriv(int k, double x) { return k % 2 == 0 ? std::sinh(x) : std::cosh(x); }

// k-th derivative of exp(-a x^2): (-sqrt a)^k H_k(sqrt(a) x) exp(-a x^2),
// H the physicists' Hermite polynomials.
double gauss_deriv(int k, double x, double a) {
    const double sa = std::sqrt(a);
    const double y = sa * x;
    double h0 = 1.0, h1 = 2.0 * y;
    double hk = k == 0 ? h0 : h1;
    for (int m = 1; m < k; ++m) {
        hk = 2.0 * y * h1 - 2.0 * m * h0;
        h0 = h1;
        h1 = hk;
    }
    return std::pow(-sa, k) * hk * std::exp(-a * x * x);
}

const std::map<std::string, TestFunction>& registry() {
    static const std::map<std::string, TestFunction> reg = [] {
        std::map<std::string, TestFunction> m;
        auto add = [&m](TestFunction f) { m.emplace(f.name, std::move(f)); };
        add({"sin2s_plus_t", "sin(2s + t)", [](int i, int j, double s, double t) {
                 return std::ldexp(1.0, i) * sin_deriv(i + j, 2 * s + t);
             }});
        add({"sin_s_sin_t", "sin(s) sin(t)", [](int i, int j, double s, double t) {
                 return sin_deriv(i, s) * sin_deriv(j, t);
             }});
        add({"cosh_s_sinh_t", "cosh(s) sinh(t)", [](int i, int j, double s, double t) {
                 return cosh_deriv(i, s) * sinh_deriv(j, t);
             }});
        add({"exp_s_plus_t", "exp(s + t)",
             [](int, int, double s, double t) { return std::exp(s + t); }});
        add({"one", "constant 1",
             [](int i, int j, double, double) { return i == 0 && j == 0 ? 1.0 : 0.0; }});
        add({"gauss2d", "exp(-4((s-1/2)^2 + (t-1/2)^2))", [](int i, int j, double s, double t) {
                 return gauss_deriv(i, s - 0.5, 4.0) * gauss_deriv(j, t - 0.5, 4.0);
             }});
        return m;
    }();
    return reg;
}

} // namespace

const TestFunction& test_function(const std::string& name) {
    const auto& reg = registry();
    auto it = reg.find(name);
    if (it == reg.end()) {
        std::string known;
        for (const auto& [k, v] : reg) known += (known.empty() ? "" : ", ") + k;
        throw InvalidParameter("unknown test function '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

std::vector<std::string> test_function_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

} // namespace gentess
