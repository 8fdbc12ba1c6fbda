#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gentess/gspace.hpp"
#include "gentess/io.hpp"

namespace testing_support {

inline std::string mesh_path(const std::string& name) {
    return std::string(GENTESS_MESH_DIR) + "/" + name + ".json";
}

inline std::shared_ptr<const gentess::TMesh> load(const std::string& name) {
    return std::make_shared<const gentess::TMesh>(gentess::read_mesh_file(mesh_path(name)).cells);
}

/// Regular, cycle-free corpus.
inline const std::vector<std::string>& corpus() {
    static const std::vector<std::string> names = {
        "single_cell", "tensor_2x2", "tensor_4x4", "single_t", "tjunction_2",
        "chained_t",   "staircase",  "l_shape",    "hole_ring", "fig1"};
    return names;
}

inline gentess::SectionFamily family(const gentess::GeneratorPair& g, int n) { return {g, n}; }

// Classical Bernstein polynomial of degree d on [a,b].
inline double bernstein(int i, int d, double s, double a, double b) {
    const double x = (s - a) / (b - a);
    return std::tgamma(d + 1.0) / (std::tgamma(i + 1.0) * std::tgamma(d - i + 1.0)) *
           std::pow(x, i) * std::pow(1 - x, d - i);
}

// Blossom of a degree-d polynomial with Bezier points c on [a,b], evaluated at
// (x_1, ..., x_d) by de Casteljau steps.
inline double blossom(std::vector<double> c, double a, double b, const std::vector<double>& xs) {
    const int d = static_cast<int>(c.size()) - 1;
    for (int m = 0; m < d; ++m) {
        const double t = (xs[m] - a) / (b - a);
        for (int i = 0; i < d - m; ++i) c[i] = (1 - t) * c[i] + t * c[i + 1];
    }
    return c[0];
}

// Bezier points of the same polynomial on [a2,b2].
inline std::vector<double> reparametrize(const std::vector<double>& c, double a, double b,
                                         double a2, double b2) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<double> out(d + 1);
    for (int k = 0; k <= d; ++k) {
        std::vector<double> xs(d, a2);
        for (int m = 0; m < k; ++m) xs[m] = b2;
        out[k] = blossom(c, a, b, xs);
    }
    return out;
}

// Tensor version: rows follow s, columns follow t.
inline Eigen::MatrixXd reparametrize(const Eigen::MatrixXd& C, const gentess::Cell& from,
                                     double a2, double b2, double c2, double d2) {
    Eigen::MatrixXd tmp(C.rows(), C.cols()), out(C.rows(), C.cols());
    for (int j = 0; j < C.cols(); ++j) {
        std::vector<double> col(C.rows());
        for (int i = 0; i < C.rows(); ++i) col[i] = C(i, j);
        const auto r = reparametrize(col, from.a, from.b, a2, b2);
        for (int i = 0; i < C.rows(); ++i) tmp(i, j) = r[i];
    }
    for (int i = 0; i < C.rows(); ++i) {
        std::vector<double> row(C.cols());
        for (int j = 0; j < C.cols(); ++j) row[j] = tmp(i, j);
        const auto r = reparametrize(row, from.c, from.d, c2, d2);
        for (int j = 0; j < C.cols(); ++j) out(i, j) = r[j];
    }
    return out;
}

inline std::vector<double> random_values(int count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(count);
    for (auto& x : v) x = u(rng);
    return v;
}

// Largest derivative jump of orders up to (r1,r2) across shared edge
// segments, relative to the magnitude of the derivatives involved. Uses
// `per_segment` evenly spaced interior points per segment.
inline double max_relative_jump(const gentess::GSplineSpace& space,
                                const gentess::BCoefficientMap& coeffs, int total_points) {
    using namespace gentess;
    const TMesh& mesh = space.mesh();
    std::vector<const EdgeSegment*> shared;
    for (const auto& seg : mesh.segments())
        if (seg.cells.size() >= 2) shared.push_back(&seg);
    if (shared.empty()) return 0.0;
    const int per = std::max(1, total_points / static_cast<int>(shared.size()));
    double worst = 0.0;
    for (const auto* seg : shared) {
        const double lo = to_double(seg->lo), hi = to_double(seg->hi), line = to_double(seg->line);
        for (int p = 0; p < per; ++p) {
            const double x = lo + (hi - lo) * (p + 0.5) / per;
            const double s = seg->orientation == Orientation::Horizontal ? x : line;
            const double t = seg->orientation == Orientation::Horizontal ? line : x;
            for (int h = 0; h <= space.r1(); ++h)
                for (int k = 0; k <= space.r2(); ++k) {
                    const double v0 = eval_cell(space, coeffs, seg->cells[0], s, t, h, k);
                    for (std::size_t m = 1; m < seg->cells.size(); ++m) {
                        const double v1 = eval_cell(space, coeffs, seg->cells[m], s, t, h, k);
                        const double scale = std::max({1.0, std::abs(v0), std::abs(v1)});
                        worst = std::max(worst, std::abs(v0 - v1) / scale);
                    }
                }
        }
    }
    return worst;
}

} // namespace testing_support
