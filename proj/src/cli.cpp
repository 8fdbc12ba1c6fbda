#include "gentess/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gentess/approx.hpp"
#include "gentess/errors.hpp"
#include "gentess/functions.hpp"
#include "gentess/io.hpp"
#include "gentess/oracle.hpp"

namespace gentess::cli {

namespace {

using nlohmann::json;

struct SpaceOptions {
    std::string gen, gen_s, gen_t;
    int n = 0, n1 = 0, n2 = 0;
    int r = -1, r1 = -1, r2 = -1;
};

struct Common {
    std::string format = "csv";
    std::string output;
    int threads = 1;
    unsigned seed = 1;
};

void add_space_options(CLI::App* app, SpaceOptions& o) {
    app->add_option("--gen", o.gen, "generator pair for both directions, JSON {\"kind\",\"params\"}");
    app->add_option("--gen-s", o.gen_s, "generator pair in s");
    app->add_option("--gen-t", o.gen_t, "generator pair in t");
    app->add_option("--n", o.n, "order in both directions");
    app->add_option("--n1", o.n1, "order in s");
    app->add_option("--n2", o.n2, "order in t");
    app->add_option("--r", o.r, "smoothness in both directions");
    app->add_option("--r1", o.r1, "smoothness in s");
    app->add_option("--r2", o.r2, "smoothness in t");
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--output,-o", c.output, "output file (default: stdout)");
    app->add_option("--threads", c.threads, "thread cap")->check(CLI::PositiveNumber);
    app->add_option("--seed", c.seed, "seed for randomized sampling");
}

GeneratorPair parse_gen(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error&) {
        throw InvalidParameter("generator override is not valid JSON: " + text);
    }
    return generator_from_json(j);
}

struct Resolved {
    SectionFamily s, t;
    int r1 = 1, r2 = 1;
};

// Mesh document values first, then command-line overrides.
Resolved resolve(const MeshDocument* doc, const SpaceOptions& o) {
    Resolved res;
    if (doc && doc->s) res.s = *doc->s;
    if (doc && doc->t) res.t = *doc->t;
    if (doc && doc->smoothness) std::tie(res.r1, res.r2) = *doc->smoothness;
    if (!o.gen.empty()) res.s.gen = res.t.gen = parse_gen(o.gen);
    if (!o.gen_s.empty()) res.s.gen = parse_gen(o.gen_s);
    if (!o.gen_t.empty()) res.t.gen = parse_gen(o.gen_t);
    if (o.n) res.s.n = res.t.n = o.n;
    if (o.n1) res.s.n = o.n1;
    if (o.n2) res.t.n = o.n2;
    if (o.r >= 0) res.r1 = res.r2 = o.r;
    if (o.r1 >= 0) res.r1 = o.r1;
    if (o.r2 >= 0) res.r2 = o.r2;
    for (auto [n, r, dir] : {std::tuple{res.s.n, res.r1, "s"}, std::tuple{res.t.n, res.r2, "t"}}) {
        if (n < 3) throw InvalidParameter(std::string("order in ") + dir + " must be at least 3");
        if (r < 0 || r >= n - 1 || n - 1 < 2 * r + 1)
            throw InvalidParameter(std::string("smoothness in ") + dir + " must satisfy 0 <= r and n-1 >= 2r+1");
    }
    return res;
}

// Writes to --output or stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InvalidParameter("cannot write '" + path + "'");
        }
    }
    std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::ostream& precise(std::ostream& os) { return os << std::setprecision(17); }

GSplineSpace make_space(const std::string& path, const SpaceOptions& o) {
    const MeshDocument doc = read_mesh_file(path);
    const Resolved r = resolve(&doc, o);
    return GSplineSpace(std::make_shared<const TMesh>(doc.cells), r.s, r.t, r.r1, r.r2);
}

std::pair<int, int> parse_grid(const std::string& g) {
    int a = 0, b = 0;
    char x = 0;
    std::istringstream is(g);
    if (!(is >> a >> x >> b) || (x != 'x' && x != 'X') || a < 2 || b < 2)
        throw InvalidParameter("--grid must look like 33x33 with both sizes >= 2");
    return {a, b};
}

// ---------------------------------------------------------------------------

int cmd_mesh_check(const std::string& path, const Common& c) {
    const TMesh mesh(read_mesh_file(path).cells);
    Sink sink(c.output);
    std::ostream& os = precise(sink.out());
    json j;
    j["cells"] = mesh.cells().size();
    j["regular"] = mesh.regular();
    j["has_cycles"] = mesh.has_cycles();
    j["cycle_witness"] = mesh.cycle_witness();
    j["irregular_vertices"] = mesh.irregular_vertices();
    json verts = json::array();
    for (std::size_t v = 0; v < mesh.vertices().size(); ++v) {
        const auto& vx = mesh.vertices()[v];
        verts.push_back({{"id", v}, {"x", to_string(vx.p.x)}, {"y", to_string(vx.p.y)},
                         {"kind", to_string(vx.kind)}});
    }
    j["vertices"] = verts;
    json edges = json::array();
    for (const auto& e : mesh.composite_edges())
        edges.push_back({{"id", e.id}, {"orientation", to_string(e.orientation)},
                         {"line", to_string(e.line)}, {"lo", to_string(e.lo)},
                         {"hi", to_string(e.hi)}, {"segments", e.segments.size()}});
    j["composite_edges"] = edges;
    if (mesh.regular() && !mesh.has_cycles()) {
        const MeshStats st = mesh_stats(mesh);
        j["stats"] = {{"J_NT", st.J_NT}, {"E_hor", st.E_hor}, {"E_ver", st.E_ver}, {"N", st.N},
                      {"t_junctions", st.t_junctions}, {"vertices", st.vertices},
                      {"alpha", st.alpha}, {"beta", st.beta}, {"kappa", st.kappa}};
    }
    if (c.format == "json") {
        os << j.dump(2) << '\n';
        return 0;
    }
    os << "vertex,x,y,kind\n";
    for (const auto& v : j["vertices"])
        os << v["id"].get<int>() << ',' << v["x"].get<std::string>() << ','
           << v["y"].get<std::string>() << ',' << v["kind"].get<std::string>() << '\n';
    os << "# cells=" << mesh.cells().size() << " composite_edges=" << mesh.composite_edges().size()
       << '\n';
    os << "# regular=" << (mesh.regular() ? "true" : "false")
       << " has_cycles=" << (mesh.has_cycles() ? "true" : "false") << '\n';
    if (j.contains("stats")) {
        const auto& s = j["stats"];
        os << "# J_NT=" << s["J_NT"] << " E_hor=" << s["E_hor"] << " E_ver=" << s["E_ver"]
           << " N=" << s["N"] << " t_junctions=" << s["t_junctions"] << '\n';
        os << "# alpha=" << s["alpha"] << " beta=" << s["beta"] << " kappa=" << s["kappa"] << '\n';
    }
    return 0;
}

int cmd_basis(const std::string& gen, int n, double a, double b, int samples, int order,
              const Common& c) {
    const GeneratorPair g = gen.empty() ? GeneratorPair{} : parse_gen(gen);
    if (samples < 2) throw InvalidParameter("--samples must be at least 2");
    const SectionSpace sp(g, n, a, b);
    if (!sp.valid())
        throw PreconditionViolated("section space fails the validity checks on [a,b]");
    const BernsteinBasis basis(sp);
    if (order < 0 || order > basis.max_derivative_order())
        throw InvalidParameter("--order outside the supported derivative range");
    Sink sink(c.output);
    std::ostream& os = precise(sink.out());
    std::vector<double> vals(n);
    json rows = json::array();
    if (c.format == "csv") {
        os << 's';
        for (int i = 0; i < n; ++i) os << ",B_" << i;
        os << '\n';
    }
    for (int k = 0; k < samples; ++k) {
        const double s = k + 1 == samples ? b : a + (b - a) * k / (samples - 1);
        basis.eval_all(s, vals, order);
        if (c.format == "csv") {
            os << s;
            for (double v : vals) os << ',' << v;
            os << '\n';
        } else {
            rows.push_back({{"s", s}, {"values", vals}});
        }
    }
    if (c.format == "json")
        os << json{{"generator", generator_to_json(g)}, {"n", n}, {"a", a}, {"b", b},
                   {"order", order}, {"samples", rows}}
                  .dump(2)
           << '\n';
    return 0;
}

int cmd_dim(const std::string& path, const SpaceOptions& so, const Common& c) {
    const MeshDocument doc = read_mesh_file(path);
    const Resolved r = resolve(&doc, so);
    const TMesh mesh(doc.cells);
    const DimensionTerms t = dimension_formula(mesh, r.s.n, r.t.n, r.r1, r.r2);
    Sink sink(c.output);
    std::ostream& os = sink.out();
    if (c.format == "json") {
        os << json{{"J_NT", t.J_NT}, {"E_hor", t.E_hor}, {"E_ver", t.E_ver}, {"N", t.N},
                   {"vertex_term", t.vertex_term}, {"hor_term", t.hor_term},
                   {"ver_term", t.ver_term}, {"cell_term", t.cell_term}, {"dim", t.total()}}
                  .dump(2)
           << '\n';
    } else {
        os << "J_NT,E_hor,E_ver,N,vertex_term,hor_term,ver_term,cell_term,dim\n"
           << t.J_NT << ',' << t.E_hor << ',' << t.E_ver << ',' << t.N << ',' << t.vertex_term
           << ',' << t.hor_term << ',' << t.ver_term << ',' << t.cell_term << ',' << t.total()
           << '\n';
    }
    return 0;
}

int cmd_basis_fn(const std::string& path, const SpaceOptions& so, int xi, const std::string& grid,
                 const Common& c) {
    const GSplineSpace space = make_space(path, so);
    if (xi < 0 || xi >= space.dimension())
        throw InvalidParameter("--xi must lie in [0, " + std::to_string(space.dimension()) + ")");
    const auto [gs, gt] = parse_grid(grid);
    const BCoefficientMap psi = dual_basis_function(space, xi);
    Sink sink(c.output);
    std::ostream& os = precise(sink.out());
    json rows = json::array();
    if (c.format == "csv") os << "cell,s,t,value\n";
    for (const auto& cell : space.mesh().cells()) {
        for (int p = 0; p < gs; ++p) {
            const double s = cell.a + (cell.b - cell.a) * p / (gs - 1);
            for (int q = 0; q < gt; ++q) {
                const double t = cell.c + (cell.d - cell.c) * q / (gt - 1);
                const double v = eval_cell(space, psi, cell.id, s, t);
                if (c.format == "csv")
                    os << cell.id << ',' << s << ',' << t << ',' << v << '\n';
                else
                    rows.push_back({cell.id, s, t, v});
            }
        }
    }
    if (c.format == "json") {
        const auto& m = space.mds()[xi];
        os << json{{"xi", xi},
                   {"cell", m.point.cell},
                   {"i", m.point.i},
                   {"j", m.point.j},
                   {"provenance", to_string(m.provenance)},
                   {"samples", rows}}
                  .dump(2)
           << '\n';
    }
    return 0;
}

int cmd_verify(const std::string& path, const SpaceOptions& so, int factor, bool vertex_rows,
               const Common& c) {
    const GSplineSpace space = make_space(path, so);
    const DimensionTerms t = space.dimension_terms();
    OracleOptions oo;
    oo.sample_factor = factor;
    oo.vertex_rows = vertex_rows;
    const OracleResult res = brute_force_dimension(space, oo);
    const bool pass = !res.inconclusive && t.total() == space.dimension() &&
                      res.nullity == space.dimension();
    Sink sink(c.output);
    std::ostream& os = sink.out();
    if (c.format == "json") {
        os << json{{"formula", t.total()},
                   {"mds", space.dimension()},
                   {"nullity", res.nullity},
                   {"rank", res.rank},
                   {"variables", res.variables},
                   {"rows", res.rows},
                   {"largest_zero_sv", res.largest_zero},
                   {"smallest_nonzero_sv", res.smallest_nonzero},
                   {"inconclusive", res.inconclusive},
                   {"result", pass ? "PASS" : "FAIL"}}
                  .dump(2)
           << '\n';
    } else {
        os << "formula,mds,nullity,result\n"
           << t.total() << ',' << space.dimension() << ',' << res.nullity << ','
           << (pass ? "PASS" : "FAIL") << '\n';
    }
    return pass ? 0 : 2;
}

int cmd_interp(const std::string& path, const SpaceOptions& so, const std::string& fname,
               int grid, const Common& c) {
    const GSplineSpace space = make_space(path, so);
    const TestFunction& f = test_function(fname);
    QuasiOptions qo;
    qo.threads = c.threads;
    const BCoefficientMap q = quasi_interpolant(space, f.deriv, qo);
    const ErrorNorms err = approximation_error(space, q, f.deriv, grid);
    Sink sink(c.output);
    std::ostream& os = precise(sink.out());
    if (c.format == "json") {
        json coeffs = json::array();
        for (int cell = 0; cell < space.num_cells(); ++cell) {
            json rows = json::array();
            for (int i = 0; i < space.n1(); ++i) {
                json row = json::array();
                for (int j = 0; j < space.n2(); ++j) row.push_back(q.at(cell, i, j));
                rows.push_back(row);
            }
            coeffs.push_back(rows);
        }
        os << json{{"function", fname},
                   {"dimension", space.dimension()},
                   {"coefficients", coeffs},
                   {"error_sup", err.sup},
                   {"error_l2", err.l2}}
                  .dump(2)
           << '\n';
    } else {
        os << "cell,i,j,x,y,coefficient\n";
        for (const auto& dp : domain_points(space))
            os << dp.cell << ',' << dp.i << ',' << dp.j << ',' << dp.x << ',' << dp.y << ','
               << q.at(dp.cell, dp.i, dp.j) << '\n';
        os << "# error_sup=" << err.sup << '\n' << "# error_l2=" << err.l2 << '\n';
    }
    return 0;
}

int cmd_convergence(const std::string& base, const SpaceOptions& so, const std::string& fname,
                    int levels, const std::string& norm, int grid, const Common& c) {
    ConvergenceOptions co;
    MeshDocument doc;
    if (!base.empty()) {
        doc = read_mesh_file(base);
        co.base = doc.cells;
    }
    const Resolved r = resolve(base.empty() ? nullptr : &doc, so);
    co.s = r.s;
    co.t = r.t;
    co.r1 = r.r1;
    co.r2 = r.r2;
    co.levels = levels;
    co.norm = norm == "l2" ? Norm::L2 : Norm::Sup;
    co.threads = c.threads;
    co.grid = grid;
    const ConvergenceReport rep = convergence_study(co, test_function(fname).deriv);
    Sink sink(c.output);
    std::ostream& os = precise(sink.out());
    if (c.format == "json") {
        json lv = json::array();
        for (std::size_t l = 0; l < rep.levels.size(); ++l) {
            const auto& x = rep.levels[l];
            json e = {{"cells", x.cells}, {"H", x.H}, {"error", x.error},
                      {"error_sup", x.error_sup}, {"error_l2", x.error_l2}};
            e["order"] = l == 0 ? json(nullptr) : json(rep.orders[l - 1]);
            lv.push_back(e);
        }
        os << json{{"function", fname}, {"k", rep.k}, {"expected_order", rep.k + 1},
                   {"norm", norm}, {"levels", lv}}
                  .dump(2)
           << '\n';
    } else {
        os << "H,error,order\n";
        for (std::size_t l = 0; l < rep.levels.size(); ++l) {
            os << rep.levels[l].H << ',' << rep.levels[l].error << ',';
            if (l > 0) os << rep.orders[l - 1];
            os << '\n';
        }
    }
    return 0;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"Generalized splines over T-meshes"};
    app.require_subcommand(1);
    std::string tol;
    app.add_option("--tol", tol, "relative tolerance (sets GENTESS_TOL)");

    Common common;
    SpaceOptions so;
    std::string mesh_path, fname = "sin2s_plus_t", grid = "33x33", gen, base, norm = "sup";
    int xi = 0, levels = 4, n = 4, samples = 101, order = 0, factor = 1, err_grid = 64;
    double a = 0.0, b = 1.0;
    bool vertex_rows = false;

    auto* mesh = app.add_subcommand("mesh", "mesh utilities");
    mesh->require_subcommand(1);
    auto* check = mesh->add_subcommand("check", "classify vertices, regularity, cycles, stats");
    check->add_option("file", mesh_path, "mesh JSON")->required();
    add_common(check, common);

    auto* basis = app.add_subcommand("basis", "sample the Bernstein-like basis as CSV");
    basis->add_option("--gen", gen, "generator pair JSON");
    basis->add_option("--n", n, "order")->check(CLI::Range(3, 64));
    basis->add_option("--a", a, "left end");
    basis->add_option("--b", b, "right end");
    basis->add_option("--samples", samples, "number of sample points");
    basis->add_option("--order", order, "derivative order");
    add_common(basis, common);

    auto* dim = app.add_subcommand("dim", "dimension formula terms and total");
    dim->add_option("file", mesh_path, "mesh JSON")->required();
    add_space_options(dim, so);
    add_common(dim, common);

    auto* bfn = app.add_subcommand("basis-fn", "sample a dual basis function");
    bfn->add_option("file", mesh_path, "mesh JSON")->required();
    bfn->add_option("--xi", xi, "index into the minimal determining set")->required();
    bfn->add_option("--grid", grid, "samples per cell, e.g. 33x33");
    add_space_options(bfn, so);
    add_common(bfn, common);

    auto* verify = app.add_subcommand("verify", "compare formula, |M| and the oracle nullity");
    verify->add_option("file", mesh_path, "mesh JSON")->required();
    verify->add_option("--sample-factor", factor, "oracle sample multiplier")->check(CLI::PositiveNumber);
    verify->add_flag("--vertex-rows", vertex_rows, "add vertex derivative rows");
    add_space_options(verify, so);
    add_common(verify, common);

    auto* interp = app.add_subcommand("interp", "quasi-interpolate a named test function");
    interp->add_option("file", mesh_path, "mesh JSON")->required();
    interp->add_option("--f", fname, "test function name");
    interp->add_option("--error-grid", err_grid, "sup-norm samples per cell side");
    add_space_options(interp, so);
    add_common(interp, common);

    auto* conv = app.add_subcommand("convergence", "dyadic refinement study");
    conv->add_option("--levels", levels, "refinement levels")->check(CLI::Range(2, 8));
    conv->add_option("--f", fname, "test function name");
    conv->add_option("--base", base, "base mesh JSON (default: 2x2 grid on [0,1]^2)");
    conv->add_option("--norm", norm, "error norm")->check(CLI::IsMember({"sup", "l2"}));
    conv->add_option("--error-grid", err_grid, "sup-norm samples per cell side");
    add_space_options(conv, so);
    add_common(conv, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (!tol.empty()) setenv("GENTESS_TOL", tol.c_str(), 1);

    try {
        if (check->parsed()) return cmd_mesh_check(mesh_path, common);
        if (basis->parsed()) return cmd_basis(gen, n, a, b, samples, order, common);
        if (dim->parsed()) return cmd_dim(mesh_path, so, common);
        if (bfn->parsed()) return cmd_basis_fn(mesh_path, so, xi, grid, common);
        if (verify->parsed()) return cmd_verify(mesh_path, so, factor, vertex_rows, common);
        if (interp->parsed()) return cmd_interp(mesh_path, so, fname, err_grid, common);
        if (conv->parsed()) return cmd_convergence(base, so, fname, levels, norm, err_grid, common);
    } catch (const MeshError& e) {
        std::cerr << "error: " << e.what();
        if (!e.cells().empty()) {
            std::cerr << " (cells:";
            for (int id : e.cells()) std::cerr << ' ' << id;
            std::cerr << ')';
        }
        std::cerr << '\n';
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

} // namespace gentess::cli
