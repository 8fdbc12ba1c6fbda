#include <cmath>
#include <cstdio>

#include <gtest/gtest.h>

#include "gentess/errors.hpp"
#include "gentess/functions.hpp"
#include "gentess/io.hpp"
#include "support.hpp"

using namespace gentess;
using nlohmann::json;

TEST(Io, GeneratorRoundTrip) {
    for (const auto& g : {GeneratorPair(TwoExponentials{1.5, -2}), GeneratorPair(ExpTimesLinear{0.25}),
                          GeneratorPair(ExpTrig{0.1, 0.4}), GeneratorPair(PowerPair{3, 5}),
                          GeneratorPair(PolynomialDegenerate{})}) {
        const json j = generator_to_json(g);
        EXPECT_EQ(j.at("kind").get<std::string>(), g.kind_name());
        EXPECT_EQ(generator_from_json(j), g);
    }
}

TEST(Io, GeneratorErrors) {
    EXPECT_THROW(generator_from_json(json{{"kind", "spline"}}), InvalidParameter);
    EXPECT_THROW(generator_from_json(json{{"kind", "exp_trig"}, {"params", {{"alpha", 0}}}}),
                 InvalidParameter);
    EXPECT_THROW(generator_from_json(json{{"kind", "exp_trig"}, {"params", {{"alpha", 0}, {"beta", 0}}}}),
                 InvalidParameter);
}

TEST(Io, MeshDocumentRoundTrip) {
    for (const auto& name : testing_support::corpus()) {
        const MeshDocument doc = read_mesh_file(testing_support::mesh_path(name));
        const json j = mesh_document_to_json(doc);
        const MeshDocument back = mesh_document_from_json(j);
        EXPECT_EQ(mesh_document_to_json(back), j) << name;
        ASSERT_EQ(back.cells.size(), doc.cells.size());
        for (std::size_t k = 0; k < doc.cells.size(); ++k) {
            EXPECT_EQ(back.cells[k].a, doc.cells[k].a);
            EXPECT_EQ(back.cells[k].d, doc.cells[k].d);
        }
    }
}

TEST(Io, WriteAndReadFile) {
    MeshDocument doc;
    doc.cells = {{0, Rational(1, 3), 0, 1}, {Rational(1, 3), 1, 0, 1}};
    doc.s = SectionFamily{GeneratorPair(ExpTrig{0, 1}), 5};
    doc.t = SectionFamily{GeneratorPair(PolynomialDegenerate{}), 4};
    doc.smoothness = {1, 1};
    const std::string path = ::testing::TempDir() + "gentess_io_roundtrip.json";
    write_mesh_file(path, doc);
    const MeshDocument back = read_mesh_file(path);
    std::remove(path.c_str());
    EXPECT_EQ(back.cells[0].b, Rational(1, 3));
    EXPECT_EQ(back.s->n, 5);
    EXPECT_EQ(back.t->gen, GeneratorPair(PolynomialDegenerate{}));
    EXPECT_EQ(back.smoothness->second, 1);
}

TEST(Io, NumericCoordinatesAccepted) {
    const MeshDocument doc = mesh_document_from_json(json::parse(R"({"cells": [[0, 0.5, 0, 1], ["0.5", "1", 0, 1]]})"));
    EXPECT_EQ(doc.cells[0].b, Rational(1, 2));
    EXPECT_EQ(TMesh(doc.cells).composite_edges().size(), 7u);
}

TEST(Io, MalformedDocumentsNameTheCell) {
    try {
        mesh_document_from_json(json::parse(R"({"cells": [[0, 1, 0, 1], [1, 2, 0]]})"));
        FAIL();
    } catch (const MeshError& e) {
        EXPECT_EQ(e.cells(), std::vector<int>{1});
    }
    try {
        mesh_document_from_json(json::parse(R"({"cells": [[0, 1, 0, 1], [1, "x", 0, 1]]})"));
        FAIL();
    } catch (const MeshError& e) {
        EXPECT_EQ(e.cells(), std::vector<int>{1});
    }
    EXPECT_THROW(mesh_document_from_json(json::parse(R"({"cell": []})")), MeshError);
    EXPECT_THROW(load_mesh(json::parse(R"({"cells": [[0, 2, 0, 1], [1, 3, 0, 1]]})")), MeshError);
}

TEST(Functions, DerivativeOraclesMatchFiniteDifferences) {
    const double h = 1e-5;
    for (const auto& name : test_function_names()) {
        const auto& f = test_function(name);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const double s = 0.3, t = 0.7;
                const double ds = (f.deriv(i, j, s + h, t) - f.deriv(i, j, s - h, t)) / (2 * h);
                const double dt = (f.deriv(i, j, s, t + h) - f.deriv(i, j, s, t - h)) / (2 * h);
                const double es = f.deriv(i + 1, j, s, t), et = f.deriv(i, j + 1, s, t);
                EXPECT_NEAR(es, ds, 1e-6 * std::max(1.0, std::abs(es))) << name;
                EXPECT_NEAR(et, dt, 1e-6 * std::max(1.0, std::abs(et))) << name;
            }
    }
    EXPECT_NEAR(test_function("sin2s_plus_t")(0.2, 0.3), std::sin(0.7), 1e-15);
    EXPECT_NEAR(test_function("gauss2d")(0.5, 0.5), 1.0, 1e-15);
}

TEST(Functions, UnknownNameThrows) { EXPECT_THROW(test_function("nope"), InvalidParameter); }
