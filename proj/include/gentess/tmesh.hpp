#pragma once

#include <array>
#include <compare>
#include <optional>
#include <vector>

#include "gentess/rational.hpp"

namespace gentess {

struct Point {
    Rational x;
    Rational y;
    bool operator==(const Point&) const = default;
};

/// Row-major order: by y, then x.
bool operator<(const Point& p, const Point& q);

/// Axis-aligned cell [a,b] x [c,d].
struct Box {
    Rational a, b, c, d;
};

enum class Side { Left = 0, Right = 1, Bottom = 2, Top = 3 };
enum class Orientation { Horizontal, Vertical };
enum class VertexKind { Crossing, Boundary, TJunction };

const char* to_string(VertexKind k);
const char* to_string(Orientation o);

/// Corner positions of a cell.
enum class Corner { LowerLeft = 0, LowerRight = 1, UpperRight = 2, UpperLeft = 3 };

struct Cell {
    int id = 0;
    Box box;
    double a = 0, b = 0, c = 0, d = 0;
    /// Vertex index of each Corner.
    std::array<int, 4> corners{};
    /// Composite edge containing each Side.
    std::array<int, 4> side_edge{};
};

struct Vertex {
    Point p;
    double x = 0, y = 0;
    VertexKind kind = VertexKind::Crossing;
    bool on_boundary = false;
    /// Cells having this vertex as a corner, with the corner position.
    std::vector<std::pair<int, Corner>> corner_cells;
    /// Cells whose edge contains the vertex in its interior.
    std::vector<int> host_cells;
    /// Composite edge containing the vertex in its interior (T-junctions only).
    int host_edge = -1;
    /// Composite edges having this vertex as an endpoint.
    std::vector<int> incident_edges;
};

/// Edge segment: a piece of a cell side with no vertex in its interior.
struct EdgeSegment {
    Orientation orientation = Orientation::Horizontal;
    Rational line;  // y for horizontal, x for vertical
    Rational lo, hi;
    int v0 = -1, v1 = -1;
    int composite = -1;
    std::vector<int> cells;
};

struct CellSide {
    int cell;
    Side side;
};

/// Maximal segment whose interior vertices are all T-junctions.
struct CompositeEdge {
    int id = 0;
    Orientation orientation = Orientation::Horizontal;
    Rational line;
    Rational lo, hi;
    /// Endpoint at lo (w1) and at hi (w5).
    int start = -1;
    int end = -1;
    std::vector<int> segments;
    std::vector<int> interior_vertices;
    std::vector<CellSide> cells;

    double length() const { return to_double(hi - lo); }
};

struct MeshStats {
    int J_NT = 0;
    int E_hor = 0;
    int E_ver = 0;
    int N = 0;
    int t_junctions = 0;
    int vertices = 0;
    double alpha = 0.0;
    int beta = 0;
    double kappa = 0.0;
};

/// T-mesh: collection of axis-aligned rectangles meeting only along their
/// edges, with connected union. Immutable after construction; all derived
/// structure is computed eagerly.
class TMesh {
public:
    /// Validates and derives incidence. Throws MeshError on zero-area or
    /// overlapping cells and on a disconnected domain.
    explicit TMesh(std::vector<Box> boxes);

    const std::vector<Cell>& cells() const { return cells_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<EdgeSegment>& segments() const { return segments_; }
    const std::vector<CompositeEdge>& composite_edges() const { return edges_; }

    const Cell& cell(int id) const { return cells_.at(id); }
    const Vertex& vertex(int id) const { return vertices_.at(id); }
    const CompositeEdge& edge(int id) const { return edges_.at(id); }

    bool regular() const { return regular_; }
    bool has_cycles() const { return !cycle_.empty(); }
    bool domain_connected() const { return true; }
    /// T-junctions forming a cycle (empty if none).
    const std::vector<int>& cycle_witness() const { return cycle_; }
    /// Vertices at which the containing cells do not have connected interior.
    const std::vector<int>& irregular_vertices() const { return irregular_; }

    std::optional<int> find_vertex(const Point& p) const;

    /// Lowest-id cell containing (s,t), if any.
    std::optional<int> locate(double s, double t) const;

    /// Bounding box of the domain.
    Box bounds() const { return bounds_; }

    std::vector<Box> boxes() const;

private:
    void validate();
    void build_vertices();
    void build_segments();
    void build_composite_edges();
    void check_regularity();
    void detect_cycles();

    std::vector<Cell> cells_;
    std::vector<Vertex> vertices_;
    std::vector<EdgeSegment> segments_;
    std::vector<CompositeEdge> edges_;
    bool regular_ = true;
    std::vector<int> irregular_;
    std::vector<int> cycle_;
    Box bounds_;
};

std::vector<VertexKind> classify_vertices(const TMesh& mesh);
const std::vector<CompositeEdge>& composite_edges(const TMesh& mesh);

struct CycleReport {
    bool has_cycle = false;
    std::vector<int> witness;
};
CycleReport detect_cycles(const TMesh& mesh);

/// Counts and shape statistics. Throws PreconditionViolated for irregular or
/// cyclic meshes.
MeshStats mesh_stats(const TMesh& mesh);

/// Longest chain ending at each composite edge (chains: one endpoint of e_i
/// in the interior of e_{i+1}).
std::vector<int> chain_lengths(const TMesh& mesh);

} // namespace gentess
