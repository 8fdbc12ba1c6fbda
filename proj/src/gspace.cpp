#include "gentess/gspace.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <sstream>

#include "gentess/errors.hpp"

namespace gentess {

const char* to_string(Provenance p) {
    switch (p) {
    case Provenance::Vertex: return "vertex";
    case Provenance::Edge: return "edge";
    case Provenance::Cell: return "cell";
    }
    return "?";
}

BCoefficientMap::BCoefficientMap(int cells, int n1, int n2)
    : cells_(cells), n1_(n1), n2_(n2), values_(std::size_t(cells) * n1 * n2, 0.0),
      set_(values_.size(), 0) {}

bool BCoefficientMap::set_if_unset(int cell, int i, int j, double v) {
    const int k = index(cell, i, j);
    if (set_[k]) return false;
    values_[k] = v;
    set_[k] = 1;
    return true;
}

void BCoefficientMap::set(int cell, int i, int j, double v) {
    const int k = index(cell, i, j);
    values_[k] = v;
    set_[k] = 1;
}

bool BCoefficientMap::complete() const {
    return std::all_of(set_.begin(), set_.end(), [](char c) { return c != 0; });
}

Eigen::MatrixXd BCoefficientMap::cell_matrix(int cell) const {
    Eigen::MatrixXd m(n1_, n2_);
    for (int i = 0; i < n1_; ++i)
        for (int j = 0; j < n2_; ++j) m(i, j) = at(cell, i, j);
    return m;
}

namespace {

void check_orders(int n1, int n2, int r1, int r2) {
    std::ostringstream os;
    if (n1 < 3 || n2 < 3)
        os << "orders must be at least 3 (got n1=" << n1 << ", n2=" << n2 << ")";
    else if (r1 < 0 || r2 < 0 || r1 >= n1 - 1 || r2 >= n2 - 1)
        os << "smoothness (" << r1 << "," << r2 << ") outside 0 <= r_i < n_i - 1";
    else if (n1 - 1 < 2 * r1 + 1 || n2 - 1 < 2 * r2 + 1)
        os << "orders (" << n1 << "," << n2 << ") and smoothness (" << r1 << "," << r2
           << ") violate n_i - 1 >= 2 r_i + 1";
    else
        return;
    throw PreconditionViolated(os.str());
}

void check_mesh(const TMesh& mesh) {
    if (!mesh.regular()) {
        std::ostringstream os;
        os << "mesh is not regular (vertices";
        for (int v : mesh.irregular_vertices()) os << " " << v;
        os << ")";
        throw PreconditionViolated(os.str());
    }
    if (mesh.has_cycles()) {
        std::ostringstream os;
        os << "mesh contains a cycle of T-junctions (vertices";
        for (int v : mesh.cycle_witness()) os << " " << v;
        os << ")";
        throw PreconditionViolated(os.str());
    }
}

// Which end of the cell's interval a coordinate sits at.
bool at_high_x(const Cell& c, const Vertex& v) { return v.p.x == c.box.b; }
bool at_high_y(const Cell& c, const Vertex& v) { return v.p.y == c.box.d; }

// Leading square block of an endpoint table.
Eigen::MatrixXd table_block(const BernsteinBasis& b, bool high, int size) {
    return b.endpoint_table(high ? End::B : End::A).topLeftCorner(size, size);
}

int local_to_index(int m, int n, bool high) { return high ? n - 1 - m : m; }

} // namespace

GSplineSpace::GSplineSpace(std::shared_ptr<const TMesh> mesh, SectionFamily s, SectionFamily t,
                           int r1, int r2)
    : mesh_(std::move(mesh)), fs_(std::move(s)), ft_(std::move(t)), r1_(r1), r2_(r2) {
    if (!mesh_) throw InvalidParameter("null mesh");
    check_orders(fs_.n, ft_.n, r1_, r2_);
    check_mesh(*mesh_);

    std::map<std::tuple<int, double, double>, bool> valid;
    auto require = [&](const SectionFamily& f, int dir, double a, double b,
                       const std::string& what) {
        auto key = std::make_tuple(dir, a, b);
        auto it = valid.find(key);
        if (it == valid.end()) it = valid.emplace(key, SectionSpace(f.gen, f.n, a, b).valid()).first;
        if (!it->second) {
            std::ostringstream os;
            os << "section space " << f.gen.kind_name() << " n=" << f.n << " on [" << a << ", "
               << b << "] (" << what << ") fails the validity checks";
            throw PreconditionViolated(os.str());
        }
        return basis_cache().get(f.gen, f.n, a, b);
    };

    for (const auto& c : mesh_->cells()) {
        std::string tag = "cell " + std::to_string(c.id);
        bs_.push_back(require(fs_, 0, c.a, c.b, tag + ", s"));
        bt_.push_back(require(ft_, 1, c.c, c.d, tag + ", t"));
    }
    for (const auto& e : mesh_->composite_edges()) {
        const double lo = to_double(e.lo), hi = to_double(e.hi);
        std::string tag = "composite edge " + std::to_string(e.id);
        be_.push_back(e.orientation == Orientation::Horizontal ? require(fs_, 0, lo, hi, tag)
                                                               : require(ft_, 1, lo, hi, tag));
    }

    // R_w: longest side at w, smallest id on ties.
    rw_.assign(mesh_->vertices().size(), -1);
    for (std::size_t vi = 0; vi < mesh_->vertices().size(); ++vi) {
        std::optional<Rational> best;
        for (auto [cid, corner] : mesh_->vertices()[vi].corner_cells) {
            const Box& b = mesh_->cell(cid).box;
            const Rational len = std::max(b.b - b.a, b.d - b.c);
            if (!best || len > *best || (len == *best && cid < rw_[vi])) {
                best = len;
                rw_[vi] = cid;
            }
        }
    }

    // R_e: cell whose side on e starts at the lower endpoint.
    re_.assign(mesh_->composite_edges().size(), -1);
    for (const auto& e : mesh_->composite_edges()) {
        int low_side = -1, high_side = -1;
        for (const auto& cs : e.cells) {
            const Box& b = mesh_->cell(cs.cell).box;
            const bool starts = e.orientation == Orientation::Horizontal ? b.a == e.lo : b.c == e.lo;
            if (!starts) continue;
            const bool below = cs.side == Side::Top || cs.side == Side::Right;
            int& slot = below ? low_side : high_side;
            if (slot < 0 || cs.cell < slot) slot = cs.cell;
        }
        re_[e.id] = low_side >= 0 ? low_side : high_side;
        if (re_[e.id] < 0)
            throw NumericalError("composite edge " + std::to_string(e.id) +
                                 " has no cell at its lower endpoint");
    }
    build_mds();
}

void GSplineSpace::build_mds() {
    const int n1 = fs_.n, n2 = ft_.n;
    mds_pos_.assign(std::size_t(num_cells()) * n1 * n2, -1);
    auto add = [&](int cell, int i, int j, Provenance prov, int source) {
        const int k = (cell * n1 + i) * n2 + j;
        if (mds_pos_[k] >= 0) {
            std::ostringstream os;
            os << "domain point (" << cell << "," << i << "," << j << ") selected twice";
            throw NumericalError(os.str());
        }
        mds_pos_[k] = static_cast<int>(mds_.size());
        mds_.push_back({domain_point(*this, cell, i, j), prov, source});
    };

    const auto& verts = mesh_->vertices();
    for (std::size_t vi = 0; vi < verts.size(); ++vi) {
        if (verts[vi].kind == VertexKind::TJunction) continue;
        const int cid = rw_[vi];
        const Cell& c = mesh_->cell(cid);
        const bool hx = at_high_x(c, verts[vi]), hy = at_high_y(c, verts[vi]);
        for (int m = 0; m <= r1_; ++m)
            for (int l = 0; l <= r2_; ++l)
                add(cid, local_to_index(m, n1, hx), local_to_index(l, n2, hy), Provenance::Vertex,
                    int(vi));
    }
    for (const auto& e : mesh_->composite_edges()) {
        const int cid = re_[e.id];
        const Cell& c = mesh_->cell(cid);
        if (e.orientation == Orientation::Horizontal) {
            const bool flip = e.line == c.box.d;
            for (int p = r1_ + 1; p <= n1 - r1_ - 2; ++p)
                for (int q = 0; q <= r2_; ++q)
                    add(cid, p, local_to_index(q, n2, flip), Provenance::Edge, e.id);
        } else {
            const bool flip = e.line == c.box.b;
            for (int q = 0; q <= r1_; ++q)
                for (int p = r2_ + 1; p <= n2 - r2_ - 2; ++p)
                    add(cid, local_to_index(q, n1, flip), p, Provenance::Edge, e.id);
        }
    }
    for (const auto& c : mesh_->cells())
        for (int i = r1_ + 1; i <= n1 - r1_ - 2; ++i)
            for (int j = r2_ + 1; j <= n2 - r2_ - 2; ++j) add(c.id, i, j, Provenance::Cell, c.id);

    terms_ = dimension_formula(*mesh_, n1, n2, r1_, r2_);
    if (terms_.total() != static_cast<int>(mds_.size())) {
        std::ostringstream os;
        os << "|M| = " << mds_.size() << " differs from the dimension formula " << terms_.total();
        throw NumericalError(os.str());
    }
}

DomainPoint domain_point(const GSplineSpace& space, int cell, int i, int j) {
    const Cell& c = space.mesh().cell(cell);
    const int n1 = space.n1(), n2 = space.n2();
    DomainPoint p;
    p.cell = cell;
    p.i = i;
    p.j = j;
    p.x = ((n1 - 1 - i) * c.a + i * c.b) / (n1 - 1);
    p.y = ((n2 - 1 - j) * c.c + j * c.d) / (n2 - 1);
    return p;
}

std::vector<DomainPoint> domain_points(const GSplineSpace& space) {
    std::vector<DomainPoint> out;
    out.reserve(space.num_coefficients());
    for (int c = 0; c < space.num_cells(); ++c)
        for (int i = 0; i < space.n1(); ++i)
            for (int j = 0; j < space.n2(); ++j) out.push_back(domain_point(space, c, i, j));
    return out;
}

DimensionTerms dimension_formula(const TMesh& mesh, int n1, int n2, int r1, int r2) {
    check_orders(n1, n2, r1, r2);
    const MeshStats st = mesh_stats(mesh);
    DimensionTerms t;
    t.J_NT = st.J_NT;
    t.E_hor = st.E_hor;
    t.E_ver = st.E_ver;
    t.N = st.N;
    t.vertex_term = (r1 + 1) * (r2 + 1) * st.J_NT;
    t.hor_term = (r2 + 1) * (n1 - 2 * r1 - 2) * st.E_hor;
    t.ver_term = (r1 + 1) * (n2 - 2 * r2 - 2) * st.E_ver;
    t.cell_term = (n1 - 2 * r1 - 2) * (n2 - 2 * r2 - 2) * st.N;
    return t;
}

int dimension(const GSplineSpace& space) { return space.dimension_terms().total(); }

const std::vector<MdsEntry>& minimal_determining_set(const GSplineSpace& space) {
    return space.mds();
}

Eigen::MatrixXd corner_jet(const GSplineSpace& space, const BCoefficientMap& coeffs, int cell,
                           int vertex, int hmax, int kmax) {
    const Cell& c = space.mesh().cell(cell);
    const Vertex& v = space.mesh().vertex(vertex);
    if (c.corners[0] != vertex && c.corners[1] != vertex && c.corners[2] != vertex &&
        c.corners[3] != vertex)
        throw InvalidParameter("vertex " + std::to_string(vertex) + " is not a corner of cell " +
                               std::to_string(cell));
    const bool hx = at_high_x(c, v), hy = at_high_y(c, v);
    const Eigen::MatrixXd tx = table_block(space.basis_s(cell), hx, hmax + 1);
    const Eigen::MatrixXd ty = table_block(space.basis_t(cell), hy, kmax + 1);
    Eigen::MatrixXd local(hmax + 1, kmax + 1);
    for (int m = 0; m <= hmax; ++m) {
        for (int l = 0; l <= kmax; ++l) {
            const int i = local_to_index(m, space.n1(), hx), j = local_to_index(l, space.n2(), hy);
            if (!coeffs.is_set(cell, i, j)) {
                std::ostringstream os;
                os << "coefficient (" << cell << "," << i << "," << j
                   << ") needed at vertex " << vertex << " is not determined";
                throw PreconditionViolated(os.str());
            }
            local(m, l) = coeffs.at(cell, i, j);
        }
    }
    Eigen::MatrixXd lx = tx.triangularView<Eigen::Lower>();
    Eigen::MatrixXd ly = ty.triangularView<Eigen::Lower>();
    return lx * local * ly.transpose();
}

namespace {

// Fills the disk of `cell` at `vertex` from a jet (orders r1 x r2).
void disk_from_jet(const GSplineSpace& space, int cell, int vertex, const Eigen::MatrixXd& jet,
                   BCoefficientMap& coeffs) {
    const Cell& c = space.mesh().cell(cell);
    const Vertex& v = space.mesh().vertex(vertex);
    const bool hx = at_high_x(c, v), hy = at_high_y(c, v);
    const int r1 = space.r1(), r2 = space.r2();
    const Eigen::MatrixXd tx = table_block(space.basis_s(cell), hx, r1 + 1);
    const Eigen::MatrixXd ty = table_block(space.basis_t(cell), hy, r2 + 1);
    // tx * local * ty^T = jet
    Eigen::MatrixXd y = tx.triangularView<Eigen::Lower>().solve(jet);
    Eigen::MatrixXd local =
        ty.triangularView<Eigen::Lower>().solve(y.transpose()).transpose();
    if (!local.allFinite())
        throw SingularSystem("vertex system at " + std::to_string(vertex) + " is singular");
    for (int m = 0; m <= r1; ++m)
        for (int l = 0; l <= r2; ++l)
            coeffs.set_if_unset(cell, local_to_index(m, space.n1(), hx),
                                local_to_index(l, space.n2(), hy), local(m, l));
}

void fill_disks(const GSplineSpace& space, int vertex, const Eigen::MatrixXd& jet,
                BCoefficientMap& coeffs) {
    for (auto [cid, corner] : space.mesh().vertex(vertex).corner_cells)
        disk_from_jet(space, cid, vertex, jet, coeffs);
}

// Along/across view of a composite edge.
struct EdgeFrame {
    bool horizontal;
    int na, ra, nc, rc;
};

EdgeFrame frame(const GSplineSpace& space, const CompositeEdge& e) {
    if (e.orientation == Orientation::Horizontal)
        return {true, space.n1(), space.r1(), space.n2(), space.r2()};
    return {false, space.n2(), space.r2(), space.n1(), space.r1()};
}

// Jet in (along, across) order from an (s, t) jet.
Eigen::MatrixXd oriented(const EdgeFrame& f, const Eigen::MatrixXd& jet) {
    return f.horizontal ? jet : Eigen::MatrixXd(jet.transpose());
}

void edge_step(const GSplineSpace& space, int edge, const Eigen::MatrixXd& jet_end,
               BCoefficientMap& coeffs) {
    const TMesh& mesh = space.mesh();
    const CompositeEdge& e = mesh.edge(edge);
    const EdgeFrame f = frame(space, e);
    const int ma = f.na - f.ra - 2;

    // Derivatives at w1 from the anchoring cell, at w5 from the jet.
    const int re = space.edge_cell(edge);
    Eigen::MatrixXd left = f.horizontal ? corner_jet(space, coeffs, re, e.start, ma, f.rc)
                                        : Eigen::MatrixXd(corner_jet(space, coeffs, re, e.start,
                                                                     f.rc, ma)
                                                              .transpose());
    Eigen::MatrixXd right = oriented(f, jet_end);

    // BB-coefficients of D_across^k p restricted to e, on the span of e.
    const BernsteinBasis& eb = space.edge_basis(edge);
    Eigen::MatrixXd q(f.na, f.rc + 1);
    {
        const Eigen::MatrixXd ta = table_block(eb, false, ma + 1);
        const Eigen::MatrixXd tb = table_block(eb, true, f.ra + 1);
        Eigen::MatrixXd ql = ta.triangularView<Eigen::Lower>().solve(left);
        Eigen::MatrixXd qr = tb.triangularView<Eigen::Lower>().solve(right);
        for (int k = 0; k <= f.rc; ++k) {
            for (int m = 0; m <= ma; ++m) q(m, k) = ql(m, k);
            for (int m = 0; m <= f.ra; ++m) q(f.na - 1 - m, k) = qr(m, k);
        }
    }
    if (!q.allFinite())
        throw SingularSystem("edge system on composite edge " + std::to_string(edge) +
                             " is singular");

    auto edge_derivs = [&](double x, int orders) {
        Eigen::MatrixXd d(orders + 1, f.na);
        for (int h = 0; h <= orders; ++h)
            for (int i = 0; i < f.na; ++i) d(h, i) = eb.eval_derivative(i, h, x);
        return d;
    };

    for (const auto& cs : e.cells) {
        const Cell& c = mesh.cell(cs.cell);
        const BernsteinBasis& along = f.horizontal ? space.basis_s(c.id) : space.basis_t(c.id);
        const BernsteinBasis& across = f.horizontal ? space.basis_t(c.id) : space.basis_s(c.id);
        const double lo = f.horizontal ? c.a : c.c;
        const double hi = f.horizontal ? c.b : c.d;
        const bool flip = cs.side == Side::Top || cs.side == Side::Right;

        const Eigen::MatrixXd dl = edge_derivs(lo, ma) * q;
        const Eigen::MatrixXd dr = edge_derivs(hi, f.ra) * q;
        Eigen::MatrixXd g(f.na, f.rc + 1);
        Eigen::MatrixXd gl = table_block(along, false, ma + 1).triangularView<Eigen::Lower>().solve(dl);
        Eigen::MatrixXd gr =
            table_block(along, true, f.ra + 1).triangularView<Eigen::Lower>().solve(dr);
        for (int k = 0; k <= f.rc; ++k) {
            for (int m = 0; m <= ma; ++m) g(m, k) = gl(m, k);
            for (int m = 0; m <= f.ra; ++m) g(f.na - 1 - m, k) = gr(m, k);
        }
        // Across direction: tc * c(p, .) = g(p, .)
        const Eigen::MatrixXd tc = table_block(across, flip, f.rc + 1);
        Eigen::MatrixXd band = tc.triangularView<Eigen::Lower>().solve(g.transpose()).transpose();
        if (!band.allFinite())
            throw SingularSystem("edge system for cell " + std::to_string(c.id) +
                                 " on composite edge " + std::to_string(edge) + " is singular");
        for (int p = 0; p < f.na; ++p) {
            for (int l = 0; l <= f.rc; ++l) {
                const int across_idx = local_to_index(l, f.nc, flip);
                if (f.horizontal)
                    coeffs.set_if_unset(c.id, p, across_idx, band(p, l));
                else
                    coeffs.set_if_unset(c.id, across_idx, p, band(p, l));
            }
        }
    }
}

// Jet at a vertex from the first corner cell whose disk is fully known.
std::optional<Eigen::MatrixXd> known_jet(const GSplineSpace& space, int vertex,
                                         const BCoefficientMap& coeffs) {
    for (auto [cid, corner] : space.mesh().vertex(vertex).corner_cells) {
        const Cell& c = space.mesh().cell(cid);
        const Vertex& v = space.mesh().vertex(vertex);
        const bool hx = at_high_x(c, v), hy = at_high_y(c, v);
        bool ok = true;
        for (int m = 0; m <= space.r1() && ok; ++m)
            for (int l = 0; l <= space.r2() && ok; ++l)
                ok = coeffs.is_set(cid, local_to_index(m, space.n1(), hx),
                                   local_to_index(l, space.n2(), hy));
        if (ok) return corner_jet(space, coeffs, cid, vertex, space.r1(), space.r2());
    }
    return std::nullopt;
}

} // namespace

void propagate_vertex(const GSplineSpace& space, int vertex, int source_cell,
                      BCoefficientMap& coeffs) {
    const Eigen::MatrixXd jet =
        corner_jet(space, coeffs, source_cell, vertex, space.r1(), space.r2());
    fill_disks(space, vertex, jet, coeffs);
}

void propagate_edge(const GSplineSpace& space, int edge, BCoefficientMap& coeffs) {
    const CompositeEdge& e = space.mesh().edge(edge);
    auto jet = known_jet(space, e.end, coeffs);
    if (!jet)
        throw PreconditionViolated("no determined disk at the upper endpoint of composite edge " +
                                   std::to_string(edge));
    edge_step(space, edge, *jet, coeffs);
}

BCoefficientMap complete_coefficients(const GSplineSpace& space,
                                      std::span<const double> mds_values) {
    const auto& mds = space.mds();
    if (mds_values.size() != mds.size()) {
        std::ostringstream os;
        os << "assignment has " << mds_values.size() << " values, M has " << mds.size();
        throw InvalidParameter(os.str());
    }
    BCoefficientMap coeffs = space.empty_map();
    for (std::size_t k = 0; k < mds.size(); ++k)
        coeffs.set(mds[k].point.cell, mds[k].point.i, mds[k].point.j, mds_values[k]);

    const TMesh& mesh = space.mesh();
    const int nv = static_cast<int>(mesh.vertices().size());
    const int ne = static_cast<int>(mesh.composite_edges().size());
    std::vector<std::optional<Eigen::MatrixXd>> jets(nv);
    std::vector<char> queued(ne, 0);
    std::deque<int> work;

    auto try_queue = [&](int e) {
        const auto& ce = mesh.edge(e);
        if (!queued[e] && jets[ce.start] && jets[ce.end]) {
            queued[e] = 1;
            work.push_back(e);
        }
    };

    for (int v = 0; v < nv; ++v) {
        if (mesh.vertex(v).kind == VertexKind::TJunction) continue;
        jets[v] = corner_jet(space, coeffs, space.vertex_cell(v), v, space.r1(), space.r2());
        fill_disks(space, v, *jets[v], coeffs);
    }
    for (int e = 0; e < ne; ++e) try_queue(e);

    int steps = 0;
    while (!work.empty()) {
        if (++steps > ne + nv) throw NumericalError("completion did not terminate");
        const int e = work.front();
        work.pop_front();
        edge_step(space, e, *jets[mesh.edge(e).end], coeffs);
        for (int w : mesh.edge(e).interior_vertices) {
            if (jets[w]) continue;
            auto jet = known_jet(space, w, coeffs);
            if (!jet)
                throw NumericalError("T-junction " + std::to_string(w) +
                                     " not determined by its composite edge");
            jets[w] = *jet;
            fill_disks(space, w, *jets[w], coeffs);
            for (int inc : mesh.vertex(w).incident_edges) try_queue(inc);
        }
    }
    std::vector<int> stuck;
    for (int e = 0; e < ne; ++e)
        if (!queued[e]) stuck.push_back(e);
    if (!stuck.empty()) {
        std::ostringstream os;
        os << "completion stalled; composite edges never determined:";
        for (int e : stuck) os << " " << e;
        throw NumericalError(os.str());
    }
    if (!coeffs.complete()) throw NumericalError("completion left coefficients undetermined");
    return coeffs;
}

BCoefficientMap dual_basis_function(const GSplineSpace& space, int k) {
    if (k < 0 || k >= space.dimension())
        throw InvalidParameter("index " + std::to_string(k) + " outside M");
    std::vector<double> v(space.dimension(), 0.0);
    v[k] = 1.0;
    return complete_coefficients(space, v);
}

double eval_cell(const GSplineSpace& space, const BCoefficientMap& coeffs, int cell, double s,
                 double t, int h, int k) {
    const int n1 = space.n1(), n2 = space.n2();
    std::vector<double> bs(n1), bt(n2);
    space.basis_s(cell).eval_all(s, bs, h);
    space.basis_t(cell).eval_all(t, bt, k);
    double sum = 0.0;
    for (int i = 0; i < n1; ++i) {
        double row = 0.0;
        for (int j = 0; j < n2; ++j) row += coeffs.at(cell, i, j) * bt[j];
        sum += bs[i] * row;
    }
    return sum;
}

double eval_spline(const GSplineSpace& space, const BCoefficientMap& coeffs, double s, double t) {
    auto cell = space.mesh().locate(s, t);
    if (!cell) {
        std::ostringstream os;
        os << "point (" << s << ", " << t << ") outside the domain";
        throw DomainViolation(os.str());
    }
    const Cell& c = space.mesh().cell(*cell);
    return eval_cell(space, coeffs, *cell, std::clamp(s, c.a, c.b), std::clamp(t, c.c, c.d));
}

std::vector<double> restrict_to_mds(const GSplineSpace& space, const BCoefficientMap& coeffs) {
    std::vector<double> out;
    out.reserve(space.mds().size());
    for (const auto& m : space.mds()) out.push_back(coeffs.at(m.point.cell, m.point.i, m.point.j));
    return out;
}

std::vector<int> support_cells(const GSplineSpace& space, const BCoefficientMap& coeffs,
                               double threshold) {
    std::vector<int> out;
    for (int c = 0; c < space.num_cells(); ++c) {
        bool any = false;
        for (int i = 0; i < space.n1() && !any; ++i)
            for (int j = 0; j < space.n2() && !any; ++j)
                any = std::abs(coeffs.at(c, i, j)) > threshold;
        if (any) out.push_back(c);
    }
    return out;
}

} // namespace gentess
