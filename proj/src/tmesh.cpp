#include "gentess/tmesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "gentess/errors.hpp"

namespace gentess {

bool operator<(const Point& p, const Point& q) {
    if (p.y != q.y) return p.y < q.y;
    return p.x < q.x;
}

const char* to_string(VertexKind k) {
    switch (k) {
    case VertexKind::Crossing: return "crossing";
    case VertexKind::Boundary: return "boundary";
    case VertexKind::TJunction: return "t-junction";
    }
    return "?";
}

const char* to_string(Orientation o) {
    return o == Orientation::Horizontal ? "horizontal" : "vertical";
}

namespace {

std::string cell_list(const std::vector<int>& ids) {
    std::ostringstream os;
    for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? ", " : "") << ids[i];
    return os.str();
}

bool interiors_overlap(const Box& p, const Box& q) {
    return std::max(p.a, q.a) < std::min(p.b, q.b) && std::max(p.c, q.c) < std::min(p.d, q.d);
}

bool touch(const Box& p, const Box& q) {
    return std::max(p.a, q.a) <= std::min(p.b, q.b) && std::max(p.c, q.c) <= std::min(p.d, q.d);
}

// Shared boundary of positive length.
bool share_segment(const Box& p, const Box& q) {
    if (p.b == q.a || q.b == p.a) return std::max(p.c, q.c) < std::min(p.d, q.d);
    if (p.d == q.c || q.d == p.c) return std::max(p.a, q.a) < std::min(p.b, q.b);
    return false;
}

bool connected(const std::vector<int>& ids, const std::vector<Cell>& cells,
               bool (*adjacent)(const Box&, const Box&)) {
    if (ids.empty()) return true;
    std::vector<char> seen(ids.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < ids.size(); ++j) {
            if (seen[j] || !adjacent(cells[ids[i]].box, cells[ids[j]].box)) continue;
            seen[j] = 1;
            ++count;
            stack.push_back(j);
        }
    }
    return count == ids.size();
}

struct SideRef {
    Rational lo, hi;
    int cell;
    Side side;
};

} // namespace

TMesh::TMesh(std::vector<Box> boxes) {
    if (boxes.empty()) throw MeshError("mesh has no cells", {});
    cells_.reserve(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        Cell c;
        c.id = static_cast<int>(i);
        c.box = boxes[i];
        c.a = to_double(c.box.a);
        c.b = to_double(c.box.b);
        c.c = to_double(c.box.c);
        c.d = to_double(c.box.d);
        cells_.push_back(c);
    }
    validate();
    build_vertices();
    build_segments();
    build_composite_edges();
    check_regularity();
    detect_cycles();
}

void TMesh::validate() {
    for (const auto& c : cells_) {
        if (!(c.box.a < c.box.b) || !(c.box.c < c.box.d)) {
            std::ostringstream os;
            os << "cell " << c.id << " has zero or negative area";
            throw MeshError(os.str(), {c.id});
        }
    }
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        for (std::size_t j = i + 1; j < cells_.size(); ++j) {
            if (interiors_overlap(cells_[i].box, cells_[j].box)) {
                std::ostringstream os;
                os << "cells " << i << " and " << j << " overlap";
                throw MeshError(os.str(), {int(i), int(j)});
            }
        }
    }
    std::vector<int> all(cells_.size());
    std::iota(all.begin(), all.end(), 0);
    if (!connected(all, cells_, touch)) {
        // Report the component not containing cell 0.
        std::vector<char> seen(cells_.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < cells_.size(); ++j)
                if (!seen[j] && touch(cells_[i].box, cells_[j].box)) {
                    seen[j] = 1;
                    stack.push_back(int(j));
                }
        }
        std::vector<int> rest;
        for (std::size_t j = 0; j < cells_.size(); ++j)
            if (!seen[j]) rest.push_back(int(j));
        throw MeshError("domain is disconnected; cells not reachable from cell 0: " +
                            cell_list(rest),
                        rest);
    }
    bounds_ = cells_[0].box;
    for (const auto& c : cells_) {
        bounds_.a = std::min(bounds_.a, c.box.a);
        bounds_.b = std::max(bounds_.b, c.box.b);
        bounds_.c = std::min(bounds_.c, c.box.c);
        bounds_.d = std::max(bounds_.d, c.box.d);
    }
}

void TMesh::build_vertices() {
    std::map<Point, int> index;
    for (const auto& c : cells_) {
        for (const Point& p : {Point{c.box.a, c.box.c}, Point{c.box.b, c.box.c},
                               Point{c.box.b, c.box.d}, Point{c.box.a, c.box.d}})
            index.emplace(p, 0);
    }
    int k = 0;
    for (auto& [p, id] : index) {
        id = k++;
        Vertex v;
        v.p = p;
        v.x = to_double(p.x);
        v.y = to_double(p.y);
        vertices_.push_back(std::move(v));
    }
    for (auto& c : cells_) {
        const Point pts[4] = {{c.box.a, c.box.c}, {c.box.b, c.box.c}, {c.box.b, c.box.d},
                              {c.box.a, c.box.d}};
        for (int q = 0; q < 4; ++q) {
            const int vid = index.at(pts[q]);
            c.corners[q] = vid;
            vertices_[vid].corner_cells.emplace_back(c.id, static_cast<Corner>(q));
        }
    }

    // Quadrant coverage: bit 0 NE, 1 NW, 2 SW, 3 SE.
    std::vector<unsigned> cover(vertices_.size(), 0);
    std::vector<char> inside_h(vertices_.size(), 0), inside_v(vertices_.size(), 0);
    for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
        auto& v = vertices_[vi];
        for (auto [cid, corner] : v.corner_cells) {
            switch (corner) {
            case Corner::LowerLeft: cover[vi] |= 1u; break;
            case Corner::LowerRight: cover[vi] |= 2u; break;
            case Corner::UpperRight: cover[vi] |= 4u; break;
            case Corner::UpperLeft: cover[vi] |= 8u; break;
            }
        }
    }
    // Host cells: vertex strictly inside one of the cell's sides.
    std::map<Rational, std::vector<int>> by_y, by_x;
    for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
        by_y[vertices_[vi].p.y].push_back(int(vi));
        by_x[vertices_[vi].p.x].push_back(int(vi));
    }
    for (const auto& c : cells_) {
        for (Rational y : {c.box.c, c.box.d}) {
            auto it = by_y.find(y);
            if (it == by_y.end()) continue;
            for (int vi : it->second) {
                const Rational& x = vertices_[vi].p.x;
                if (!(c.box.a < x && x < c.box.b)) continue;
                vertices_[vi].host_cells.push_back(c.id);
                inside_h[vi] = 1;
                cover[vi] |= (y == c.box.c) ? (1u | 2u) : (4u | 8u);
            }
        }
        for (Rational x : {c.box.a, c.box.b}) {
            auto it = by_x.find(x);
            if (it == by_x.end()) continue;
            for (int vi : it->second) {
                const Rational& y = vertices_[vi].p.y;
                if (!(c.box.c < y && y < c.box.d)) continue;
                vertices_[vi].host_cells.push_back(c.id);
                inside_v[vi] = 1;
                cover[vi] |= (x == c.box.a) ? (1u | 8u) : (2u | 4u);
            }
        }
    }
    for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
        auto& v = vertices_[vi];
        v.on_boundary = cover[vi] != 15u;
        if (inside_h[vi] || inside_v[vi])
            v.kind = VertexKind::TJunction;
        else
            v.kind = v.on_boundary ? VertexKind::Boundary : VertexKind::Crossing;
    }
}

void TMesh::build_segments() {
    // Sides grouped by supporting line.
    std::map<Rational, std::vector<SideRef>> hlines, vlines;
    for (const auto& c : cells_) {
        hlines[c.box.c].push_back({c.box.a, c.box.b, c.id, Side::Bottom});
        hlines[c.box.d].push_back({c.box.a, c.box.b, c.id, Side::Top});
        vlines[c.box.a].push_back({c.box.c, c.box.d, c.id, Side::Left});
        vlines[c.box.b].push_back({c.box.c, c.box.d, c.id, Side::Right});
    }
    std::map<Rational, std::vector<int>> vy, vx;
    for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
        vy[vertices_[vi].p.y].push_back(int(vi));
        vx[vertices_[vi].p.x].push_back(int(vi));
    }
    auto emit = [this](Orientation o, const Rational& line, const std::vector<SideRef>& sides,
                       std::vector<int> verts) {
        auto coord = [&](int vi) {
            return o == Orientation::Horizontal ? vertices_[vi].p.x : vertices_[vi].p.y;
        };
        std::sort(verts.begin(), verts.end(),
                  [&](int p, int q) { return coord(p) < coord(q); });
        for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
            const Rational lo = coord(verts[k]), hi = coord(verts[k + 1]);
            EdgeSegment seg;
            seg.orientation = o;
            seg.line = line;
            seg.lo = lo;
            seg.hi = hi;
            seg.v0 = verts[k];
            seg.v1 = verts[k + 1];
            for (const auto& s : sides)
                if (s.lo <= lo && hi <= s.hi) seg.cells.push_back(s.cell);
            if (!seg.cells.empty()) segments_.push_back(std::move(seg));
        }
    };
    for (const auto& [y, sides] : hlines) emit(Orientation::Horizontal, y, sides, vy[y]);
    for (const auto& [x, sides] : vlines) emit(Orientation::Vertical, x, sides, vx[x]);
}

void TMesh::build_composite_edges() {
    // A vertex continues a line iff it lies strictly inside a side on that line.
    auto continues = [this](int vi, Orientation o) {
        for (int cid : vertices_[vi].host_cells) {
            const Box& b = cells_[cid].box;
            const Point& p = vertices_[vi].p;
            if (o == Orientation::Horizontal && (p.y == b.c || p.y == b.d)) return true;
            if (o == Orientation::Vertical && (p.x == b.a || p.x == b.b)) return true;
        }
        return false;
    };

    for (std::size_t k = 0; k < segments_.size();) {
        CompositeEdge e;
        e.id = static_cast<int>(edges_.size());
        e.orientation = segments_[k].orientation;
        e.line = segments_[k].line;
        e.lo = segments_[k].lo;
        e.start = segments_[k].v0;
        std::size_t j = k;
        for (;;) {
            e.segments.push_back(int(j));
            segments_[j].composite = e.id;
            const bool more = j + 1 < segments_.size() &&
                              segments_[j + 1].orientation == e.orientation &&
                              segments_[j + 1].line == e.line &&
                              segments_[j + 1].v0 == segments_[j].v1 &&
                              continues(segments_[j].v1, e.orientation);
            if (!more) break;
            e.interior_vertices.push_back(segments_[j].v1);
            ++j;
        }
        e.hi = segments_[j].hi;
        e.end = segments_[j].v1;
        edges_.push_back(std::move(e));
        k = j + 1;
    }

    for (const auto& e : edges_) {
        for (int vi : e.interior_vertices) vertices_[vi].host_edge = e.id;
        vertices_[e.start].incident_edges.push_back(e.id);
        vertices_[e.end].incident_edges.push_back(e.id);
    }

    // Side -> composite edge.
    for (auto& c : cells_) {
        c.side_edge.fill(-1);
        for (const auto& seg : segments_) {
            for (int cid : seg.cells) {
                if (cid != c.id) continue;
                Side side;
                if (seg.orientation == Orientation::Horizontal)
                    side = seg.line == c.box.c ? Side::Bottom : Side::Top;
                else
                    side = seg.line == c.box.a ? Side::Left : Side::Right;
                c.side_edge[int(side)] = seg.composite;
            }
        }
    }
    for (const auto& c : cells_)
        for (int s = 0; s < 4; ++s) edges_[c.side_edge[s]].cells.push_back({c.id, Side(s)});
}

void TMesh::check_regularity() {
    for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
        const auto& v = vertices_[vi];
        std::vector<int> ids = v.host_cells;
        for (auto [cid, corner] : v.corner_cells) ids.push_back(cid);
        if (!connected(ids, cells_, share_segment)) {
            regular_ = false;
            irregular_.push_back(int(vi));
        }
    }
}

void TMesh::detect_cycles() {
    const int nv = static_cast<int>(vertices_.size());
    auto successors = [this](int vi) {
        std::vector<int> out;
        const int he = vertices_[vi].host_edge;
        if (he < 0) return out;
        for (int w : {edges_[he].start, edges_[he].end})
            if (vertices_[w].kind == VertexKind::TJunction) out.push_back(w);
        return out;
    };
    std::vector<int> state(nv, 0), parent(nv, -1);
    for (int root = 0; root < nv && cycle_.empty(); ++root) {
        if (vertices_[root].kind != VertexKind::TJunction || state[root]) continue;
        // Iterative DFS with explicit successor cursors.
        std::vector<std::pair<int, std::vector<int>>> stack;
        stack.emplace_back(root, successors(root));
        state[root] = 1;
        while (!stack.empty() && cycle_.empty()) {
            auto& [node, succ] = stack.back();
            if (succ.empty()) {
                state[node] = 2;
                stack.pop_back();
                continue;
            }
            const int next = succ.back();
            succ.pop_back();
            if (state[next] == 1) {
                std::vector<int> cyc{next};
                for (int w = node; w != next; w = parent[w]) cyc.push_back(w);
                std::reverse(cyc.begin() + 1, cyc.end());
                cycle_ = std::move(cyc);
            } else if (state[next] == 0) {
                parent[next] = node;
                state[next] = 1;
                stack.emplace_back(next, successors(next));
            }
        }
    }
}

std::optional<int> TMesh::find_vertex(const Point& p) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p,
                               [](const Vertex& v, const Point& q) { return v.p < q; });
    if (it != vertices_.end() && it->p == p) return int(it - vertices_.begin());
    return std::nullopt;
}

std::optional<int> TMesh::locate(double s, double t) const {
    for (const auto& c : cells_) {
        const double hs = 1e-12 * std::max(1.0, c.b - c.a);
        const double ht = 1e-12 * std::max(1.0, c.d - c.c);
        if (s >= c.a - hs && s <= c.b + hs && t >= c.c - ht && t <= c.d + ht) return c.id;
    }
    return std::nullopt;
}

std::vector<Box> TMesh::boxes() const {
    std::vector<Box> out;
    for (const auto& c : cells_) out.push_back(c.box);
    return out;
}

std::vector<VertexKind> classify_vertices(const TMesh& mesh) {
    std::vector<VertexKind> out;
    for (const auto& v : mesh.vertices()) out.push_back(v.kind);
    return out;
}

const std::vector<CompositeEdge>& composite_edges(const TMesh& mesh) {
    return mesh.composite_edges();
}

CycleReport detect_cycles(const TMesh& mesh) {
    return {mesh.has_cycles(), mesh.cycle_witness()};
}

std::vector<int> chain_lengths(const TMesh& mesh) {
    const auto& edges = mesh.composite_edges();
    const int ne = static_cast<int>(edges.size());
    // pred[e]: edges having an endpoint in the interior of e.
    std::vector<std::vector<int>> pred(ne);
    for (const auto& e : edges) {
        for (int w : {e.start, e.end}) {
            const int host = mesh.vertex(w).host_edge;
            if (host >= 0 && host != e.id) pred[host].push_back(e.id);
        }
    }
    std::vector<int> depth(ne, -1), state(ne, 0);
    std::function<int(int)> visit = [&](int e) -> int {
        if (state[e] == 2) return depth[e];
        if (state[e] == 1) throw PreconditionViolated("chain relation contains a cycle");
        state[e] = 1;
        int best = 0;
        for (int p : pred[e]) best = std::max(best, visit(p) + 1);
        state[e] = 2;
        depth[e] = best;
        return best;
    };
    for (int e = 0; e < ne; ++e) visit(e);
    return depth;
}

MeshStats mesh_stats(const TMesh& mesh) {
    if (!mesh.regular())
        throw PreconditionViolated("mesh_stats: mesh is not regular");
    if (mesh.has_cycles())
        throw PreconditionViolated("mesh_stats: mesh contains a cycle of T-junctions");
    MeshStats st;
    st.N = static_cast<int>(mesh.cells().size());
    st.vertices = static_cast<int>(mesh.vertices().size());
    for (const auto& v : mesh.vertices()) {
        if (v.kind == VertexKind::TJunction)
            ++st.t_junctions;
        else
            ++st.J_NT;
    }
    for (const auto& e : mesh.composite_edges()) {
        (e.orientation == Orientation::Horizontal ? st.E_hor : st.E_ver)++;
        const auto& first = mesh.segments()[e.segments.front()];
        const auto& last = mesh.segments()[e.segments.back()];
        const Rational len = e.hi - e.lo;
        st.alpha = std::max({st.alpha, to_double(len / (first.hi - first.lo)),
                             to_double(len / (last.hi - last.lo))});
    }
    for (int b : chain_lengths(mesh)) st.beta = std::max(st.beta, b);
    for (const auto& c : mesh.cells()) {
        const Rational w = c.box.b - c.box.a, h = c.box.d - c.box.c;
        st.kappa = std::max(st.kappa, to_double(std::max(w, h) / std::min(w, h)));
    }
    return st;
}

} // namespace gentess
