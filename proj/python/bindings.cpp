// Python bindings for the core operations: model-space kernels, isometry
// groups, curve shortening, foliation reduction and scenario runs.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "orbigeo/foliation.hpp"
#include "orbigeo/scenario.hpp"
#include "orbigeo/shortening.hpp"

namespace py = pybind11;
using namespace orbigeo;

namespace {

SpaceId space_from_name(const std::string& kind, int dim) {
  if (kind == "euclidean") return SpaceId::euclidean(dim);
  if (kind == "sphere") return SpaceId::sphere(dim);
  if (kind == "hyperbolic2") return SpaceId::hyperbolic2();
  throw contract_error("unknown space kind '" + kind + "'");
}

Point as_point(const SpaceId& space, const Eigen::VectorXd& coords) {
  Point p{space, coords};
  require_point(p);
  return p;
}

LengthMode mode_from_name(const std::string& mode) {
  if (mode == "analytic") return LengthMode::Analytic;
  if (mode == "numeric") return LengthMode::Numeric;
  throw contract_error("length mode must be 'analytic' or 'numeric'");
}

Eigen::MatrixXd nodes_matrix(const DiscreteCurve& c) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(c.nodes.size()),
                    c.space.ambient_dim());
  for (std::size_t i = 0; i < c.nodes.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = c.nodes[i].coords;
  return m;
}

FoliationModel torus_model(int n, const Eigen::MatrixXd& leaf_rows) {
  LinearTorusFoliation f;
  f.n = n;
  f.leaf_basis = leaf_rows.transpose();
  return f;
}

FoliationModel suspension_model(const SpaceId& fiber, const py::object& holonomy,
                                int order) {
  SuspensionFoliation f;
  f.fiber = fiber;
  f.order = order;
  if (py::isinstance<py::str>(holonomy) &&
      holonomy.cast<std::string>() == "antipodal") {
    int n = fiber.ambient_dim();
    f.holonomy = make_isometry(
        fiber, -Eigen::MatrixXd::Identity(n, n), {}, "h");
  } else {
    f.holonomy = holonomy.cast<Isometry>();
  }
  return f;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "closed geodesics in quotient orbifolds and foliation leaf "
            "spaces via discrete curve shortening";

  py::register_exception<contract_error>(m, "ContractError",
                                         PyExc_ValueError);
  py::register_exception<nonunique_geodesic_error>(m, "NonUniqueGeodesic",
                                                   PyExc_ValueError);
  py::register_exception<schema_error>(m, "SchemaError", PyExc_ValueError);

  py::class_<SpaceId>(m, "Space")
      .def(py::init(&space_from_name), py::arg("kind"), py::arg("dim") = 2)
      .def_property_readonly("kind",
                             [](const SpaceId& s) {
                               switch (s.kind) {
                               case SpaceKind::Euclidean: return "euclidean";
                               case SpaceKind::Sphere: return "sphere";
                               default: return "hyperbolic2";
                               }
                             })
      .def_readonly("dim", &SpaceId::dim)
      .def_property_readonly("ambient_dim", &SpaceId::ambient_dim)
      .def("__repr__", [](const SpaceId& s) {
        return "Space(" + s.str() + ")";
      })
      .def("__eq__",
           [](const SpaceId& a, const SpaceId& b) { return a == b; });

  m.def("euclidean", &SpaceId::euclidean, py::arg("dim"));
  m.def("sphere", &SpaceId::sphere, py::arg("dim"));
  m.def("hyperbolic2", &SpaceId::hyperbolic2);

  m.def("uniqueness_radius", &uniqueness_radius, py::arg("space"));
  m.def(
      "distance",
      [](const SpaceId& space, const Eigen::VectorXd& p,
         const Eigen::VectorXd& q) {
        return dist(as_point(space, p), as_point(space, q));
      },
      py::arg("space"), py::arg("p"), py::arg("q"));
  m.def(
      "exp_map",
      [](const SpaceId& space, const Eigen::VectorXd& base,
         const Eigen::VectorXd& v) {
        return exp_map(TangentVector{as_point(space, base), v}).coords;
      },
      py::arg("space"), py::arg("base"), py::arg("v"));
  m.def(
      "log_map",
      [](const SpaceId& space, const Eigen::VectorXd& p,
         const Eigen::VectorXd& q) {
        return log_map(as_point(space, p), as_point(space, q)).vec;
      },
      py::arg("space"), py::arg("p"), py::arg("q"));
  m.def(
      "geodesic_point",
      [](const SpaceId& space, const Eigen::VectorXd& p,
         const Eigen::VectorXd& q, double s) {
        return geodesic_point(as_point(space, p), as_point(space, q), s)
            .coords;
      },
      py::arg("space"), py::arg("p"), py::arg("q"), py::arg("s"));
  m.def(
      "project_to_space",
      [](const SpaceId& space, const Eigen::VectorXd& coords) {
        return project_to_space(space, coords).coords;
      },
      py::arg("space"), py::arg("coords"));

  py::class_<Isometry>(m, "Isometry")
      .def_readonly("space", &Isometry::space)
      .def_readonly("linear", &Isometry::linear)
      .def_readonly("translation", &Isometry::translation)
      .def_readonly("label", &Isometry::label)
      .def("__repr__", [](const Isometry& w) {
        return "Isometry(" + (w.label.empty() ? "?" : w.label) + " on " +
               w.space.str() + ")";
      });

  m.def(
      "make_isometry",
      [](const SpaceId& space, const Eigen::MatrixXd& linear,
         const py::object& translation, const std::string& label) {
        Eigen::VectorXd t;
        if (!translation.is_none()) t = translation.cast<Eigen::VectorXd>();
        return make_isometry(space, linear, t, label);
      },
      py::arg("space"), py::arg("linear"), py::arg("translation") = py::none(),
      py::arg("label") = "");
  m.def("identity_isometry", &identity_isometry, py::arg("space"));
  m.def("compose", &compose, py::arg("a"), py::arg("b"));
  m.def("inverse", &inverse, py::arg("w"));
  m.def(
      "apply",
      [](const Isometry& w, const Eigen::VectorXd& p) {
        return apply(w, as_point(w.space, p)).coords;
      },
      py::arg("w"), py::arg("p"));
  m.def(
      "translation_length",
      [](const Isometry& w, const std::string& mode, std::uint64_t seed) {
        TranslationLength tl =
            translation_length(w, mode_from_name(mode), seed);
        py::dict out;
        out["length"] = tl.length;
        out["certified"] = tl.certified;
        out["argmin"] = tl.argmin ? py::cast(tl.argmin->coords)
                                  : py::object(py::none());
        return out;
      },
      py::arg("w"), py::arg("mode") = "analytic", py::arg("seed") = 0);
  m.def(
      "fixed_point",
      [](const Isometry& w, std::uint64_t seed) -> py::object {
        FixedPointResult fp = fixed_point_test(w, seed);
        if (!fp.fixed_point) return py::none();
        return py::cast(fp.fixed_point->coords);
      },
      py::arg("w"), py::arg("seed") = 0);

  py::class_<IsometryGroup>(m, "IsometryGroup")
      .def_readonly("space", &IsometryGroup::space)
      .def_readonly("generators", &IsometryGroup::generators)
      .def_property_readonly("lattice_basis",
                             [](const IsometryGroup& g) {
                               return g.lattice_basis;
                             })
      .def("__repr__", [](const IsometryGroup& g) {
        return "IsometryGroup(" + std::to_string(g.generators.size()) +
               " generators on " + g.space.str() + ")";
      });

  m.def("lattice_group", &make_lattice_group, py::arg("basis"));
  m.def(
      "affine_weyl_group",
      [](int dim,
         const std::vector<std::pair<Eigen::VectorXd, double>>& walls) {
        std::vector<Wall> ws;
        for (const auto& [normal, offset] : walls)
          ws.push_back(Wall{normal, offset});
        return make_affine_weyl_group(dim, std::move(ws));
      },
      py::arg("dim"), py::arg("walls"));
  m.def(
      "spherical_group",
      [](int sphere_dim, const std::string& type, int order) {
        SphericalFamily fam;
        if (type == "cyclic") fam = SphericalFamily::Cyclic;
        else if (type == "dihedral") fam = SphericalFamily::Dihedral;
        else if (type == "antipodal") fam = SphericalFamily::Antipodal;
        else
          throw contract_error(
              "spherical type must be cyclic|dihedral|antipodal");
        return make_spherical_group(sphere_dim, fam, order);
      },
      py::arg("sphere_dim"), py::arg("type"), py::arg("order") = 2);
  m.def("hyperbolic_triangle_group", &make_hyperbolic_triangle_group,
        py::arg("p"), py::arg("q"), py::arg("r"));
  m.def(
      "explicit_group",
      [](const SpaceId& space, const std::vector<Isometry>& generators) {
        IsometryGroup g;
        g.space = space;
        g.generators = generators;
        return g;
      },
      py::arg("space"), py::arg("generators"));
  m.def("word_element", &word_element, py::arg("group"), py::arg("word"));
  m.def(
      "fold",
      [](const IsometryGroup& g, const Eigen::VectorXd& p) {
        FoldResult f = fold(g, as_point(g.space, p));
        py::dict out;
        out["folded"] = f.folded.coords;
        out["word_length"] = f.word_length;
        out["element"] = f.element;
        return out;
      },
      py::arg("group"), py::arg("p"));

  py::class_<ClosedPair>(m, "ClosedPair")
      .def_property_readonly("space",
                             [](const ClosedPair& p) {
                               return p.curve.space;
                             })
      .def_property_readonly("nodes",
                             [](const ClosedPair& p) {
                               return nodes_matrix(p.curve);
                             })
      .def_property_readonly("partition",
                             [](const ClosedPair& p) {
                               return p.curve.partition.values;
                             })
      .def_readonly("closure", &ClosedPair::closure)
      .def_property_readonly("energy",
                             [](const ClosedPair& p) {
                               return energy(p.curve);
                             })
      .def_property_readonly("length",
                             [](const ClosedPair& p) {
                               return curve_length(p.curve);
                             })
      .def_property_readonly("closure_residual",
                             [](const ClosedPair& p) {
                               return closure_residual(p);
                             });

  m.def(
      "make_auto_pair",
      [](const Isometry& w, const Eigen::VectorXd& base, int segments) {
        return make_auto_pair(w, as_point(w.space, base), segments);
      },
      py::arg("closure"), py::arg("base"), py::arg("segments") = 8);
  m.def(
      "make_pair",
      [](const Isometry& w, const Eigen::MatrixXd& nodes) {
        ClosedPair pair;
        pair.closure = w;
        pair.curve.space = w.space;
        pair.curve.partition = uniform_partition(
            0.0, 1.0, static_cast<int>(nodes.rows()) - 1);
        for (Eigen::Index i = 0; i < nodes.rows(); ++i)
          pair.curve.nodes.push_back(as_point(w.space, nodes.row(i)));
        require_curve(pair.curve);
        return pair;
      },
      py::arg("closure"), py::arg("nodes"));
  m.def(
      "shorten_step",
      [](const ClosedPair& pair, double rho0_cap, int segments) {
        return double_shorten(
            pair, ShorteningConfig::for_pair(pair, rho0_cap, segments));
      },
      py::arg("pair"), py::arg("rho0_cap") = 1.0, py::arg("segments") = 0);

  py::class_<GeodesicResult>(m, "GeodesicResult")
      .def_property_readonly("status",
                             [](const GeodesicResult& r) {
                               return status_name(r.status);
                             })
      .def_readonly("length", &GeodesicResult::length)
      .def_readonly("energy", &GeodesicResult::energy)
      .def_readonly("iterations", &GeodesicResult::iterations)
      .def_readonly("certified", &GeodesicResult::certified)
      .def_readonly("pair", &GeodesicResult::pair)
      .def_property_readonly("conjugator_label",
                             [](const GeodesicResult& r) {
                               return r.conjugator.label;
                             })
      .def_property_readonly("trace", [](const GeodesicResult& r) {
        py::list rows;
        for (const TraceRow& t : r.trace) {
          py::dict row;
          row["iteration"] = t.iteration;
          row["energy"] = t.energy;
          row["length"] = t.length;
          row["max_node_disp"] = t.max_node_disp;
          row["recenter_word_len"] = t.recenter_word_len;
          rows.append(row);
        }
        return rows;
      });

  m.def(
      "iterate_shortening",
      [](const ClosedPair& pair, const IsometryGroup& group, double rho0_cap,
         int segments, long max_iter, int recenter_every) {
        ShorteningConfig cfg =
            ShorteningConfig::for_pair(pair, rho0_cap, segments);
        cfg.max_iter = max_iter;
        cfg.recenter_every = recenter_every;
        return iterate_shortening(pair, group, cfg);
      },
      py::arg("pair"), py::arg("group"), py::arg("rho0_cap") = 1.0,
      py::arg("segments") = 0, py::arg("max_iter") = 100000,
      py::arg("recenter_every") = 1);
  m.def("axis_via_displacement_min", &axis_via_displacement_min,
        py::arg("closure"), py::arg("group"), py::arg("segments") = 16,
        py::arg("seed") = 0);

  py::class_<LinearTorusFoliation>(m, "LinearTorusFoliation")
      .def_readonly("n", &LinearTorusFoliation::n)
      .def_readonly("leaf_basis", &LinearTorusFoliation::leaf_basis)
      .def("__repr__", [](const LinearTorusFoliation& f) {
        return "LinearTorusFoliation(n=" + std::to_string(f.n) + ", " +
               std::to_string(f.leaf_basis.cols()) + " leaf directions)";
      });
  py::class_<SuspensionFoliation>(m, "SuspensionFoliation")
      .def_readonly("fiber", &SuspensionFoliation::fiber)
      .def_readonly("holonomy", &SuspensionFoliation::holonomy)
      .def_readonly("order", &SuspensionFoliation::order)
      .def("__repr__", [](const SuspensionFoliation& f) {
        return "SuspensionFoliation(" + f.fiber.str() + ", order " +
               std::to_string(f.order) + ")";
      });
  m.def("linear_torus_foliation", &torus_model, py::arg("n"),
        py::arg("leaf_rows"));
  m.def("suspension_foliation", &suspension_model, py::arg("fiber"),
        py::arg("holonomy"), py::arg("order"));

  py::class_<HorizontalResult>(m, "HorizontalResult")
      .def_readonly("found", &HorizontalResult::found)
      .def_readonly("note", &HorizontalResult::note)
      .def_readonly("transverse", &HorizontalResult::transverse)
      .def_readonly("recurrence_residual",
                    &HorizontalResult::recurrence_residual)
      .def_property_readonly("length",
                             [](const HorizontalResult& r) {
                               return r.transverse.length;
                             })
      .def_property_readonly("lifted_nodes", [](const HorizontalResult& r) {
        return nodes_matrix(r.lifted);
      });

  m.def(
      "find_horizontal_periodic_geodesic",
      [](const FoliationModel& model, const py::object& ambient_class,
         int winding, long max_iter, std::uint64_t seed) {
        ClassHint hint;
        if (!ambient_class.is_none())
          hint.ambient_class = ambient_class.cast<Eigen::VectorXd>();
        hint.winding = winding;
        HorizontalOptions opts;
        opts.max_iter = max_iter;
        opts.seed = seed;
        return find_horizontal_periodic_geodesic(model, hint, opts);
      },
      py::arg("foliation"), py::arg("ambient_class") = py::none(),
      py::arg("winding") = 0, py::arg("max_iter") = 100000,
      py::arg("seed") = 0);
  m.def("shortest_horizontal_length_oracle", &shortest_horizontal_length_oracle,
        py::arg("foliation"));

  m.def(
      "run_scenario",
      [](const std::string& text) {
        RunProducts P = run_scenario(parse_scenario_json(text));
        py::dict out;
        out["report_json"] = report_json(P);
        out["trace_csv"] = trace_csv(P.result);
        out["exit_code"] = P.exit_code;
        out["note"] = P.note;
        return out;
      },
      py::arg("scenario_json"));
  m.def(
      "run_scenario_file",
      [](const std::filesystem::path& path,
         const py::object& outdir) {
        RunProducts P = run_scenario(parse_scenario_file(path));
        if (!outdir.is_none())
          write_run_artifacts(P, outdir.cast<std::filesystem::path>());
        py::dict out;
        out["report_json"] = report_json(P);
        out["exit_code"] = P.exit_code;
        out["note"] = P.note;
        return out;
      },
      py::arg("path"), py::arg("outdir") = py::none());
  m.def(
      "oracle_report",
      [](const std::string& text) {
        OracleProducts O = oracle_report(parse_scenario_json(text));
        py::dict out;
        out["json"] = O.json;
        out["exit_code"] = O.exit_code;
        return out;
      },
      py::arg("scenario_json"));
  m.def(
      "export_figure",
      [](const std::filesystem::path& run_dir) {
        FigureProducts F = export_figure(run_dir);
        py::dict out;
        out["svg"] = F.svg;
        out["exit_code"] = F.exit_code;
        out["note"] = F.note;
        return out;
      },
      py::arg("run_dir"));
}
