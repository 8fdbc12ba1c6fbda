#include "gentess/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "gentess/chebyshev.hpp"

namespace gentess {

namespace {

// Row vector of D_s^h D_t^k B_ij(s,t) over the coefficients of one cell.
void add_cell_row(const GSplineSpace& space, Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> row, int cell,
                  double s, double t, int h, int k, double sign) {
    const int n1 = space.n1(), n2 = space.n2();
    std::vector<double> bs(n1), bt(n2);
    const Cell& c = space.mesh().cell(cell);
    space.basis_s(cell).eval_all(std::clamp(s, c.a, c.b), bs, h);
    space.basis_t(cell).eval_all(std::clamp(t, c.c, c.d), bt, k);
    const int base = cell * n1 * n2;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) row(base + i * n2 + j) += sign * bs[i] * bt[j];
}

} // namespace

ConstraintSystem assemble_constraints(const GSplineSpace& space, const OracleOptions& opt) {
    const TMesh& mesh = space.mesh();
    const int r1 = space.r1(), r2 = space.r2();
    const int per = (r1 + 1) * (r2 + 1);
    const int samples = (space.n1() + space.n2() + 2) * std::max(1, opt.sample_factor);

    struct Constraint {
        int c0, c1;
        double s, t;
    };
    std::vector<Constraint> points;
    int edge_points = 0;
    for (const auto& seg : mesh.segments()) {
        if (seg.cells.size() < 2) continue;
        const double lo = to_double(seg.lo), hi = to_double(seg.hi), line = to_double(seg.line);
        for (double x : chebyshev_points(lo, hi, samples)) {
            for (std::size_t m = 1; m < seg.cells.size(); ++m) {
                if (seg.orientation == Orientation::Horizontal)
                    points.push_back({seg.cells[0], seg.cells[m], x, line});
                else
                    points.push_back({seg.cells[0], seg.cells[m], line, x});
                ++edge_points;
            }
        }
    }
    if (opt.vertex_rows) {
        for (const auto& v : mesh.vertices()) {
            std::vector<int> ids = v.host_cells;
            for (auto [cid, corner] : v.corner_cells) ids.push_back(cid);
            for (std::size_t m = 1; m < ids.size(); ++m) points.push_back({ids[0], ids[m], v.x, v.y});
        }
    }

    ConstraintSystem sys;
    sys.variables = space.num_coefficients();
    sys.edge_rows = edge_points * per;
    sys.vertex_rows = (static_cast<int>(points.size()) - edge_points) * per;
    sys.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(points.size()) * per,
                                       sys.variables);
    Eigen::Index r = 0;
    for (const auto& p : points) {
        for (int h = 0; h <= r1; ++h) {
            for (int k = 0; k <= r2; ++k, ++r) {
                auto row = sys.matrix.row(r);
                add_cell_row(space, row, p.c0, p.s, p.t, h, k, 1.0);
                add_cell_row(space, row, p.c1, p.s, p.t, h, k, -1.0);
                const double m = row.cwiseAbs().maxCoeff();
                if (m > 0) row /= m;
            }
        }
    }
    return sys;
}

OracleResult brute_force_dimension(const GSplineSpace& space, const OracleOptions& opt) {
    const ConstraintSystem sys = assemble_constraints(space, opt);
    OracleResult res;
    res.variables = sys.variables;
    res.rows = static_cast<int>(sys.matrix.rows());
    if (sys.matrix.rows() == 0) {
        res.nullity = sys.variables;
        return res;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(sys.matrix);
    const Eigen::VectorXd& sv = svd.singularValues();
    res.sigma_max = sv.size() ? sv(0) : 0.0;
    const double thr = opt.threshold * res.sigma_max;
    res.rank = 0;
    res.smallest_nonzero = 0.0;
    res.largest_zero = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) >= thr) {
            ++res.rank;
            res.smallest_nonzero = sv(i);
        } else if (sv(i) > res.largest_zero) {
            res.largest_zero = sv(i);
        }
        if (sv(i) > thr / 10.0 && sv(i) < thr * 10.0) res.inconclusive = true;
    }
    res.nullity = sys.variables - res.rank;
    return res;
}

} // namespace gentess
