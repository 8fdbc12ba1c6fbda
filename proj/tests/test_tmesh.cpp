#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "gentess/errors.hpp"
#include "gentess/tmesh.hpp"
#include "support.hpp"

using namespace gentess;
using testing_support::load;

namespace {

int count_kind(const TMesh& m, VertexKind k) {
    return static_cast<int>(std::count_if(m.vertices().begin(), m.vertices().end(),
                                          [k](const Vertex& v) { return v.kind == k; }));
}

int vertex_at(const TMesh& m, Rational x, Rational y) {
    auto v = m.find_vertex({x, y});
    EXPECT_TRUE(v.has_value());
    return v.value_or(-1);
}

} // namespace

TEST(TMesh, TensorGrid2x2) {
    const auto m = load("tensor_2x2");
    EXPECT_EQ(m->cells().size(), 4u);
    EXPECT_EQ(m->vertices().size(), 9u);
    EXPECT_EQ(count_kind(*m, VertexKind::TJunction), 0);
    EXPECT_TRUE(m->regular());
    EXPECT_FALSE(m->has_cycles());
    EXPECT_EQ(m->composite_edges().size(), 12u);
    const MeshStats st = mesh_stats(*m);
    EXPECT_EQ(st.J_NT, 9);
    EXPECT_EQ(st.E_hor, 6);
    EXPECT_EQ(st.E_ver, 6);
    EXPECT_EQ(st.N, 4);
    EXPECT_EQ(st.beta, 0);
    EXPECT_EQ(m->vertex(vertex_at(*m, 1, 1)).kind, VertexKind::Crossing);
    EXPECT_NE(m->vertex(vertex_at(*m, 0, 0)).kind, VertexKind::TJunction);
}

TEST(TMesh, SingleCell) {
    const auto m = load("single_cell");
    EXPECT_EQ(m->composite_edges().size(), 4u);
    const MeshStats st = mesh_stats(*m);
    EXPECT_EQ(st.J_NT, 4);
    EXPECT_EQ(st.E_hor, 2);
    EXPECT_EQ(st.E_ver, 2);
    EXPECT_EQ(st.N, 1);
    EXPECT_DOUBLE_EQ(st.kappa, 1.0);
}

TEST(TMesh, SingleTJunctionFusesSegments) {
    const auto m = load("single_t");
    const int w = vertex_at(*m, 1, 1);
    const Vertex& v = m->vertex(w);
    EXPECT_EQ(v.kind, VertexKind::TJunction);
    ASSERT_GE(v.host_edge, 0);
    const CompositeEdge& e = m->edge(v.host_edge);
    EXPECT_EQ(e.orientation, Orientation::Horizontal);
    EXPECT_EQ(e.lo, Rational(0));
    EXPECT_EQ(e.hi, Rational(2));
    EXPECT_EQ(e.segments.size(), 2u);
    EXPECT_EQ(e.interior_vertices, std::vector<int>{w});
    const MeshStats st = mesh_stats(*m);
    EXPECT_EQ(st.t_junctions, 1);
    EXPECT_EQ(st.J_NT + st.t_junctions, st.vertices);
    EXPECT_EQ(st.beta, 1);
    EXPECT_DOUBLE_EQ(st.alpha, 2.0);
    EXPECT_DOUBLE_EQ(st.kappa, 2.0);
}

TEST(TMesh, ReentrantCornerIsNotATJunction) {
    const auto m = load("l_shape");
    EXPECT_EQ(m->vertex(vertex_at(*m, 1, 1)).kind, VertexKind::Boundary);
    EXPECT_EQ(count_kind(*m, VertexKind::TJunction), 0);
}

TEST(TMesh, HoleDomainIsAccepted) {
    const auto m = load("hole_ring");
    EXPECT_EQ(m->cells().size(), 8u);
    EXPECT_TRUE(m->regular());
    EXPECT_EQ(m->vertex(vertex_at(*m, 1, 1)).kind, VertexKind::Boundary);
    EXPECT_FALSE(m->locate(1.5, 1.5).has_value());
    EXPECT_TRUE(m->locate(0.5, 1.5).has_value());
}

TEST(TMesh, PinwheelHasCycle) {
    const auto m = load("pinwheel");
    EXPECT_TRUE(m->has_cycles());
    const CycleReport rep = detect_cycles(*m);
    EXPECT_TRUE(rep.has_cycle);
    ASSERT_EQ(rep.witness.size(), 4u);
    // Each witness vertex lies inside an edge ending at the next one.
    for (std::size_t k = 0; k < rep.witness.size(); ++k) {
        const Vertex& v = m->vertex(rep.witness[k]);
        const int next = rep.witness[(k + 1) % rep.witness.size()];
        const CompositeEdge& e = m->edge(v.host_edge);
        EXPECT_TRUE(e.start == next || e.end == next);
    }
    EXPECT_THROW(mesh_stats(*m), PreconditionViolated);
}

TEST(TMesh, NonRegularMesh) {
    const auto m = load("nonregular");
    EXPECT_FALSE(m->regular());
    EXPECT_FALSE(m->irregular_vertices().empty());
    EXPECT_THROW(mesh_stats(*m), PreconditionViolated);
}

TEST(TMesh, StaircaseIsAcyclic) {
    const auto m = load("staircase");
    EXPECT_FALSE(m->has_cycles());
    EXPECT_GT(count_kind(*m, VertexKind::TJunction), 1);
}

TEST(TMesh, CorpusInvariants) {
    for (const auto& name : testing_support::corpus()) {
        const auto m = load(name);
        std::size_t segs = 0;
        for (const auto& e : m->composite_edges()) segs += e.segments.size();
        EXPECT_EQ(segs, m->segments().size()) << name;
        for (std::size_t v = 0; v < m->vertices().size(); ++v) {
            const Vertex& vx = m->vertex(static_cast<int>(v));
            int hosts = 0;
            for (const auto& e : m->composite_edges())
                hosts += static_cast<int>(std::count(e.interior_vertices.begin(),
                                                     e.interior_vertices.end(), static_cast<int>(v)));
            EXPECT_EQ(hosts, vx.kind == VertexKind::TJunction ? 1 : 0) << name << " vertex " << v;
        }
        const MeshStats st = mesh_stats(*m);
        EXPECT_EQ(st.N, static_cast<int>(m->cells().size()));
        EXPECT_EQ(st.J_NT + st.t_junctions, st.vertices);
        EXPECT_EQ(st.E_hor + st.E_ver, static_cast<int>(m->composite_edges().size()));
    }
}

TEST(TMesh, TensorGridsHaveNoChains) {
    for (const char* name : {"tensor_2x2", "tensor_4x4"}) {
        const auto lengths = chain_lengths(*load(name));
        EXPECT_EQ(*std::max_element(lengths.begin(), lengths.end()), 0);
    }
}

TEST(TMesh, RejectsOverlap) {
    try {
        TMesh({{0, 2, 0, 1}, {1, 3, 0, 1}});
        FAIL();
    } catch (const MeshError& e) {
        EXPECT_EQ(e.cells(), (std::vector<int>{0, 1}));
    }
}

TEST(TMesh, RejectsZeroArea) {
    try {
        TMesh({{0, 1, 0, 1}, {1, 1, 0, 1}});
        FAIL();
    } catch (const MeshError& e) {
        EXPECT_EQ(e.cells(), std::vector<int>{1});
    }
}

TEST(TMesh, RejectsDisconnectedDomain) {
    EXPECT_THROW(TMesh({{0, 1, 0, 1}, {2, 3, 0, 1}}), MeshError);
    // Touching at a single corner still counts as connected.
    EXPECT_NO_THROW(TMesh({{0, 1, 0, 1}, {1, 2, 1, 2}}));
}

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("1/4"), Rational(1, 4));
    EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
    EXPECT_EQ(parse_rational("2.5e-1"), Rational(1, 4));
    EXPECT_EQ(parse_rational(" 3 "), Rational(3));
    EXPECT_THROW(parse_rational("abc"), InvalidParameter);
    EXPECT_THROW(parse_rational("1/0"), InvalidParameter);
    EXPECT_EQ(to_string(Rational(3, 8)), "0.375");
    EXPECT_EQ(to_string(Rational(-1, 4)), "-0.25");
    EXPECT_EQ(to_string(Rational(1, 3)), "1/3");
    EXPECT_EQ(to_string(Rational(5)), "5");
}
