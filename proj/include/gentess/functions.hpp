#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gentess {

/// D_s^i D_t^j f(s, t) in closed form.
using DerivativeOracle = std::function<double(int i, int j, double s, double t)>;

struct TestFunction {
    std::string name;
    std::string description;
    DerivativeOracle deriv;

    double operator()(double s, double t) const { return deriv(0, 0, s, t); }
};

/// Registered names: sin2s_plus_t, sin_s_sin_t, cosh_s_sinh_t, exp_s_plus_t,
/// one, gauss2d. Throws InvalidParameter for unknown names.
const TestFunction& test_function(const std::string& name);

std::vector<std::string> test_function_names();

} // namespace gentess
