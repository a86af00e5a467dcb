#include "orbigeo/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace orbigeo {

namespace {

using nljson = nlohmann::json;

// ---- deterministic number/string formatting ------------------------------

std::string g17(double x) {
  if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999"; // parses as inf
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fixed6(double x) {
  if (x == 0.0) x = 0.0; // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    case '\r': out += "\\r"; break;
    default:
      if (static_cast<unsigned char>(c) < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
        out += buf;
      } else {
        out += c;
      }
    }
  }
  out += "\"";
  return out;
}

std::string json_vector(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += g17(v(i));
  }
  return out + "]";
}

// rows of the matrix as nested arrays
std::string json_matrix(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += json_vector(m.row(i));
  }
  return out + "]";
}

std::string json_curve(const DiscreteCurve& c) {
  std::string out = "{\"partition\":[";
  for (std::size_t i = 0; i < c.partition.values.size(); ++i) {
    if (i) out += ",";
    out += g17(c.partition.values[i]);
  }
  out += "],\"nodes\":[";
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    if (i) out += ",";
    out += json_vector(c.nodes[i].coords);
  }
  return out + "]}";
}

std::string space_kind_name(SpaceKind k) {
  switch (k) {
  case SpaceKind::Euclidean: return "euclidean";
  case SpaceKind::Sphere: return "sphere";
  case SpaceKind::Hyperbolic2: return "hyperbolic2";
  }
  return "?";
}

std::string fold_name(FoldStrategy f) {
  switch (f) {
  case FoldStrategy::None: return "none";
  case FoldStrategy::LatticeRound: return "lattice_round";
  case FoldStrategy::CoxeterFold: return "coxeter_fold";
  }
  return "?";
}

// ---- schema helpers ------------------------------------------------------

const nljson& need(const nljson& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw schema_error(path + "." + key, "missing required field");
  return *it;
}

const nljson* maybe(const nljson& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double as_number(const nljson& j, const std::string& path) {
  if (!j.is_number()) throw schema_error(path, "expected a number");
  return j.get<double>();
}

long as_integer(const nljson& j, const std::string& path) {
  if (!j.is_number_integer()) throw schema_error(path, "expected an integer");
  return j.get<long>();
}

std::string as_string(const nljson& j, const std::string& path) {
  if (!j.is_string()) throw schema_error(path, "expected a string");
  return j.get<std::string>();
}

Eigen::VectorXd as_vector(const nljson& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw schema_error(path, "expected a non-empty array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<int>(i)) =
        as_number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

// array of equal-length rows
Eigen::MatrixXd as_matrix(const nljson& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw schema_error(path, "expected a non-empty array of rows");
  Eigen::VectorXd first = as_vector(j[0], path + "[0]");
  Eigen::MatrixXd m(j.size(), first.size());
  m.row(0) = first;
  for (std::size_t i = 1; i < j.size(); ++i) {
    Eigen::VectorXd row =
        as_vector(j[i], path + "[" + std::to_string(i) + "]");
    if (row.size() != first.size())
      throw schema_error(path + "[" + std::to_string(i) + "]",
                         "rows have inconsistent lengths");
    m.row(static_cast<int>(i)) = row;
  }
  return m;
}

// ---- scenario parsing ----------------------------------------------------

SpaceId parse_space(const nljson& j, const std::string& path) {
  std::string kind = as_string(need(j, "kind", path), path + ".kind");
  if (kind == "euclidean") {
    int dim = static_cast<int>(as_integer(need(j, "dim", path), path + ".dim"));
    if (dim < 1) throw schema_error(path + ".dim", "dimension must be >= 1");
    return SpaceId::euclidean(dim);
  }
  if (kind == "sphere") {
    int dim = static_cast<int>(as_integer(need(j, "dim", path), path + ".dim"));
    if (dim < 1) throw schema_error(path + ".dim", "dimension must be >= 1");
    return SpaceId::sphere(dim);
  }
  if (kind == "hyperbolic2") return SpaceId::hyperbolic2();
  throw schema_error(path + ".kind",
                     "unknown space kind '" + kind +
                         "' (euclidean|sphere|hyperbolic2)");
}

Isometry parse_explicit_isometry(const SpaceId& space, const nljson& j,
                                 const std::string& path, std::string label) {
  Eigen::MatrixXd m = as_matrix(need(j, "matrix", path), path + ".matrix");
  Eigen::VectorXd t;
  if (const nljson* tr = maybe(j, "translation"))
    t = as_vector(*tr, path + ".translation");
  if (const nljson* lb = maybe(j, "label"))
    label = as_string(*lb, path + ".label");
  try {
    return make_isometry(space, std::move(m), std::move(t), std::move(label));
  } catch (const contract_error& e) {
    throw schema_error(path, e.what());
  }
}

IsometryGroup parse_group(const SpaceId& space, const nljson& j,
                          const std::string& path) {
  std::string family = as_string(need(j, "family", path), path + ".family");
  try {
    if (family == "lattice") {
      Eigen::MatrixXd rows = as_matrix(need(j, "basis", path), path + ".basis");
      if (rows.rows() != space.dim || rows.cols() != space.dim)
        throw schema_error(path + ".basis",
                           "expected " + std::to_string(space.dim) +
                               " basis vectors of length " +
                               std::to_string(space.dim));
      return make_lattice_group(rows.transpose()); // rows are generators
    }
    if (family == "affine_weyl") {
      const nljson& jw = need(j, "walls", path);
      if (!jw.is_array() || jw.empty())
        throw schema_error(path + ".walls", "expected a non-empty array");
      std::vector<Wall> walls;
      for (std::size_t i = 0; i < jw.size(); ++i) {
        std::string wp = path + ".walls[" + std::to_string(i) + "]";
        Wall w;
        w.normal = as_vector(need(jw[i], "normal", wp), wp + ".normal");
        if (const nljson* off = maybe(jw[i], "offset"))
          w.offset = as_number(*off, wp + ".offset");
        walls.push_back(std::move(w));
      }
      return make_affine_weyl_group(space.dim, std::move(walls));
    }
    if (family == "spherical") {
      std::string type = as_string(need(j, "type", path), path + ".type");
      int order = 2;
      if (const nljson* o = maybe(j, "order"))
        order = static_cast<int>(as_integer(*o, path + ".order"));
      SphericalFamily fam;
      if (type == "cyclic") fam = SphericalFamily::Cyclic;
      else if (type == "dihedral") fam = SphericalFamily::Dihedral;
      else if (type == "antipodal") fam = SphericalFamily::Antipodal;
      else
        throw schema_error(path + ".type",
                           "unknown spherical type (cyclic|dihedral|antipodal)");
      return make_spherical_group(space.dim, fam, order);
    }
    if (family == "hyperbolic_triangle") {
      int p = static_cast<int>(as_integer(need(j, "p", path), path + ".p"));
      int q = static_cast<int>(as_integer(need(j, "q", path), path + ".q"));
      int r = static_cast<int>(as_integer(need(j, "r", path), path + ".r"));
      return make_hyperbolic_triangle_group(p, q, r);
    }
    if (family == "explicit") {
      const nljson& jg = need(j, "generators", path);
      if (!jg.is_array() || jg.empty())
        throw schema_error(path + ".generators", "expected a non-empty array");
      IsometryGroup g;
      g.space = space;
      g.fold_strategy = FoldStrategy::None;
      for (std::size_t i = 0; i < jg.size(); ++i)
        g.generators.push_back(parse_explicit_isometry(
            space, jg[i], path + ".generators[" + std::to_string(i) + "]",
            "g" + std::to_string(i + 1)));
      return g;
    }
  } catch (const contract_error& e) {
    throw schema_error(path, e.what());
  }
  throw schema_error(path + ".family",
                     "unknown family '" + family +
                         "' (lattice|affine_weyl|spherical|"
                         "hyperbolic_triangle|explicit)");
}

Isometry parse_closure(const SpaceId& space, const IsometryGroup& group,
                       const nljson& j, const std::string& path) {
  if (const nljson* w = maybe(j, "word")) {
    if (!w->is_array() || w->empty())
      throw schema_error(path + ".word", "expected a non-empty array");
    std::vector<int> word;
    for (std::size_t i = 0; i < w->size(); ++i)
      word.push_back(static_cast<int>(as_integer(
          (*w)[i], path + ".word[" + std::to_string(i) + "]")));
    try {
      return word_element(group, word);
    } catch (const contract_error& e) {
      throw schema_error(path + ".word", e.what());
    }
  }
  if (maybe(j, "matrix"))
    return parse_explicit_isometry(space, j, path, "w0");
  throw schema_error(path, "closure needs either a word or a matrix");
}

ShorteningTolerances parse_tolerances(const nljson& j,
                                      const std::string& path) {
  ShorteningTolerances tol;
  if (const nljson* x = maybe(j, "node_disp"))
    tol.node_disp = as_number(*x, path + ".node_disp");
  if (const nljson* x = maybe(j, "energy_decrement"))
    tol.energy_decrement = as_number(*x, path + ".energy_decrement");
  if (const nljson* x = maybe(j, "geodesic_angle"))
    tol.geodesic_angle = as_number(*x, path + ".geodesic_angle");
  if (const nljson* x = maybe(j, "trivial_length"))
    tol.trivial_length = as_number(*x, path + ".trivial_length");
  if (const nljson* x = maybe(j, "speed_spread"))
    tol.speed_spread = as_number(*x, path + ".speed_spread");
  return tol;
}

ScenarioConfig parse_config(const nljson* j, const std::string& path) {
  ScenarioConfig cfg;
  if (!j) return cfg;
  if (const nljson* x = maybe(*j, "k"))
    cfg.segment_override = static_cast<int>(as_integer(*x, path + ".k"));
  if (const nljson* x = maybe(*j, "rho0_cap"))
    cfg.rho0_cap = as_number(*x, path + ".rho0_cap");
  if (const nljson* x = maybe(*j, "max_iter"))
    cfg.max_iter = as_integer(*x, path + ".max_iter");
  if (const nljson* x = maybe(*j, "recenter_every"))
    cfg.recenter_every =
        static_cast<int>(as_integer(*x, path + ".recenter_every"));
  if (const nljson* x = maybe(*j, "seed"))
    cfg.seed = static_cast<std::uint64_t>(as_integer(*x, path + ".seed"));
  if (const nljson* x = maybe(*j, "tolerances"))
    cfg.tol = parse_tolerances(*x, path + ".tolerances");
  return cfg;
}

FoliationModel parse_foliation(const nljson& j, const std::string& path) {
  std::string variant = as_string(need(j, "variant", path), path + ".variant");
  try {
    if (variant == "linear_torus") {
      int n = static_cast<int>(as_integer(need(j, "n", path), path + ".n"));
      Eigen::MatrixXd rows =
          as_matrix(need(j, "leaf_basis", path), path + ".leaf_basis");
      if (rows.cols() != n)
        throw schema_error(path + ".leaf_basis",
                           "leaf vectors must have length " +
                               std::to_string(n));
      LinearTorusFoliation f{n, rows.transpose()}; // rows are leaf vectors
      return f;
    }
    if (variant == "suspension") {
      SpaceId fiber =
          parse_space(need(j, "fiber", path), path + ".fiber");
      int order = static_cast<int>(
          as_integer(need(j, "order", path), path + ".order"));
      const nljson& jh = need(j, "holonomy", path);
      Isometry h;
      if (jh.is_string() &&
          jh.get<std::string>() == "antipodal") {
        h = make_isometry(fiber,
                          -Eigen::MatrixXd::Identity(fiber.ambient_dim(),
                                                     fiber.ambient_dim()),
                          {}, "h");
      } else {
        h = parse_explicit_isometry(fiber, jh, path + ".holonomy", "h");
      }
      return SuspensionFoliation{fiber, std::move(h), order};
    }
  } catch (const contract_error& e) {
    throw schema_error(path, e.what());
  }
  throw schema_error(path + ".variant",
                     "unknown variant '" + variant +
                         "' (linear_torus|suspension)");
}

RunStatus parse_status(const std::string& s, const std::string& path) {
  if (s == "nontrivial_geodesic") return RunStatus::NontrivialGeodesic;
  if (s == "trivial_point") return RunStatus::TrivialPoint;
  if (s == "max_iter_reached") return RunStatus::MaxIterReached;
  throw schema_error(path, "unknown status '" + s + "'");
}

} // namespace

Scenario parse_scenario_json(const std::string& text) {
  nljson j;
  try {
    j = nljson::parse(text);
  } catch (const nljson::parse_error& e) {
    throw schema_error("$", std::string("invalid JSON: ") + e.what());
  }
  Scenario s;
  s.source_text = text;
  s.name = as_string(need(j, "name", "$"), "$.name");
  if (s.name.empty()) throw schema_error("$.name", "name must be non-empty");
  s.config = parse_config(maybe(j, "config"), "$.config");
  if (const nljson* e = maybe(j, "expect_status"))
    s.expect_status = parse_status(as_string(*e, "$.expect_status"),
                                   "$.expect_status");

  if (const nljson* jf = maybe(j, "foliation")) {
    FoliationScene scene;
    scene.model = parse_foliation(*jf, "$.foliation");
    const nljson& jh = need(j, "class_hint", "$");
    if (const nljson* amb = maybe(jh, "ambient")) {
      scene.hint.ambient_class = as_vector(*amb, "$.class_hint.ambient");
    } else if (const nljson* w = maybe(jh, "winding")) {
      scene.hint.winding =
          static_cast<int>(as_integer(*w, "$.class_hint.winding"));
    } else {
      throw schema_error("$.class_hint",
                         "class hint needs 'ambient' (torus) or 'winding' "
                         "(suspension)");
    }
    s.scene = std::move(scene);
    return s;
  }

  ManifoldScene scene;
  scene.space = parse_space(need(j, "space", "$"), "$.space");
  scene.group = parse_group(scene.space, need(j, "group", "$"), "$.group");
  scene.closure =
      parse_closure(scene.space, scene.group, need(j, "closure", "$"),
                    "$.closure");
  const nljson& jc = need(j, "initial_curve", "$");
  if (const nljson* ja = maybe(jc, "auto")) {
    scene.auto_curve = true;
    Eigen::VectorXd base =
        as_vector(need(*ja, "base", "$.initial_curve.auto"),
                  "$.initial_curve.auto.base");
    if (base.size() != scene.space.ambient_dim())
      throw schema_error("$.initial_curve.auto.base",
                         "expected ambient dimension " +
                             std::to_string(scene.space.ambient_dim()));
    scene.base = Point{scene.space, std::move(base)};
    if (!on_space(scene.space, scene.base.coords))
      throw schema_error("$.initial_curve.auto.base",
                         "point is not on the space");
  } else if (maybe(jc, "nodes")) {
    scene.auto_curve = false;
    Eigen::MatrixXd nodes =
        as_matrix(need(jc, "nodes", "$.initial_curve"),
                  "$.initial_curve.nodes");
    if (nodes.cols() != scene.space.ambient_dim())
      throw schema_error("$.initial_curve.nodes",
                         "node rows must have ambient dimension " +
                             std::to_string(scene.space.ambient_dim()));
    scene.explicit_curve.space = scene.space;
    for (int i = 0; i < nodes.rows(); ++i) {
      Eigen::VectorXd row = nodes.row(i);
      if (!on_space(scene.space, row))
        throw schema_error("$.initial_curve.nodes[" + std::to_string(i) + "]",
                           "point is not on the space");
      scene.explicit_curve.nodes.push_back(Point{scene.space, row});
    }
    try {
      if (const nljson* jp = maybe(jc, "partition")) {
        Eigen::VectorXd part = as_vector(*jp, "$.initial_curve.partition");
        scene.explicit_curve.partition.values.assign(
            part.data(), part.data() + part.size());
      } else {
        scene.explicit_curve.partition =
            uniform_partition(0.0, 1.0, static_cast<int>(nodes.rows()) - 1);
      }
      require_curve(scene.explicit_curve);
    } catch (const contract_error& e) {
      throw schema_error("$.initial_curve", e.what());
    }
  } else {
    throw schema_error("$.initial_curve",
                       "initial curve needs 'auto' or explicit 'nodes'");
  }
  s.scene = std::move(scene);
  return s;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw schema_error("$", "cannot read scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_json(ss.str());
}

// ---- running -------------------------------------------------------------

RunProducts run_scenario(const Scenario& scenario) {
  RunProducts P;
  P.scenario = scenario;
  try {
    if (const auto* ms = std::get_if<ManifoldScene>(&scenario.scene)) {
      const ScenarioConfig& sc = scenario.config;
      Isometry w0 = ms->closure;
      ClosedPair pair;
      int k_req = sc.segment_override;
      if (ms->auto_curve) {
        double r0 = std::min(0.9 * uniqueness_radius(ms->space), sc.rho0_cap);
        double d = dist(ms->base, apply(w0, ms->base));
        double E = d * d / 2.0;
        int k = k_req > 0
                    ? k_req
                    : std::max(8, static_cast<int>(std::ceil(E / (r0 * r0))) + 1);
        pair = make_auto_pair(w0, ms->base, k);
        k_req = k;
      } else {
        pair = ClosedPair{ms->explicit_curve, w0};
      }
      ShorteningConfig cfg =
          ShorteningConfig::for_pair(pair, sc.rho0_cap, k_req);
      cfg.max_iter = sc.max_iter;
      cfg.recenter_every = sc.recenter_every;
      cfg.tol = sc.tol;
      P.initial = pair;
      P.resolved = cfg;
      P.result = iterate_shortening(pair, ms->group, cfg);

      TranslationLength tl =
          translation_length(w0, LengthMode::Analytic, sc.seed);
      P.oracle_name = "translation_length_analytic";
      P.oracle_value = tl.length;
      P.oracle_delta = std::abs(P.result.length - tl.length);

      switch (P.result.status) {
      case RunStatus::NontrivialGeodesic:
        if (scenario.expect_status &&
            *scenario.expect_status != RunStatus::NontrivialGeodesic) {
          P.exit_code = 1;
          P.note = "converged to a nontrivial geodesic but the scenario "
                   "expected " + status_name(*scenario.expect_status);
        } else {
          P.exit_code = P.result.certified ? 0 : 1;
          P.note = "closed geodesic of length " + g17(P.result.length);
        }
        break;
      case RunStatus::TrivialPoint:
        if (scenario.expect_status &&
            *scenario.expect_status == RunStatus::TrivialPoint) {
          P.exit_code = 0;
          P.note = "curve collapsed to a point, as expected";
        } else {
          P.exit_code = 1;
          P.note = "curve collapsed to a point";
        }
        break;
      case RunStatus::MaxIterReached:
        P.exit_code = 1;
        P.note = "no convergence within " + std::to_string(cfg.max_iter) +
                 " iterations";
        break;
      }
      return P;
    }

    const auto& fs = std::get<FoliationScene>(scenario.scene);
    HorizontalOptions opts;
    opts.segment_override = scenario.config.segment_override;
    opts.rho0_cap = scenario.config.rho0_cap;
    opts.max_iter = scenario.config.max_iter;
    opts.tol = scenario.config.tol;
    opts.seed = scenario.config.seed;
    P.foliation = true;
    HorizontalResult H =
        find_horizontal_periodic_geodesic(fs.model, fs.hint, opts);
    P.result = H.transverse;
    P.initial = H.initial;
    P.resolved = H.config;
    P.oracle_name = "shortest_horizontal_length";
    double ov = shortest_horizontal_length_oracle(fs.model);
    if (std::isfinite(ov)) {
      P.oracle_value = ov;
      P.oracle_delta = std::abs(P.result.length - ov);
    }
    P.horizontal = std::move(H);

    if (P.horizontal->found && P.result.certified) {
      P.exit_code = 0;
      P.note = "horizontal periodic geodesic of length " +
               g17(P.result.length);
    } else {
      P.exit_code = 1;
      P.note = P.horizontal->note.empty()
                   ? "transverse shortening did not certify a geodesic"
                   : P.horizontal->note;
    }
    return P;
  } catch (const schema_error& e) {
    P.exit_code = 2;
    P.note = e.what();
  } catch (const nonunique_geodesic_error& e) {
    P.exit_code = 2;
    P.note = std::string("invalid scenario: ") + e.what();
  } catch (const contract_error& e) {
    P.exit_code = 2;
    P.note = std::string("invalid scenario: ") + e.what();
  }
  return P;
}

// ---- serialization -------------------------------------------------------

std::string report_json(const RunProducts& P) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"scenario\": " << json_string(P.scenario.name) << ",\n";
  o << "  \"kind\": " << (P.foliation ? "\"foliation\"" : "\"manifold\"")
    << ",\n";
  if (P.exit_code == 2) {
    o << "  \"error\": " << json_string(P.note) << ",\n";
    o << "  \"exit_code\": 2\n}\n";
    return o.str();
  }
  o << "  \"status\": " << json_string(status_name(P.result.status)) << ",\n";
  o << "  \"certified\": " << (P.result.certified ? "true" : "false")
    << ",\n";
  if (P.foliation && P.horizontal) {
    o << "  \"found\": " << (P.horizontal->found ? "true" : "false") << ",\n";
    o << "  \"recurrence_residual\": "
      << g17(P.horizontal->recurrence_residual) << ",\n";
  }
  o << "  \"length\": " << g17(P.result.length) << ",\n";
  o << "  \"energy\": " << g17(P.result.energy) << ",\n";
  o << "  \"initial_energy\": "
    << g17(P.result.trace.empty() ? 0.0 : P.result.trace.front().energy)
    << ",\n";
  o << "  \"iterations\": " << P.result.iterations << ",\n";
  o << "  \"conjugator_word\": " << json_string(P.result.conjugator.label)
    << ",\n";
  o << "  \"verification\": {\"max_interior_angle\": "
    << g17(P.result.verification.max_interior_angle)
    << ", \"closure_angle\": " << g17(P.result.verification.closure_angle)
    << ", \"speed_spread\": " << g17(P.result.verification.speed_spread)
    << "},\n";
  o << "  \"oracle\": {\"name\": " << json_string(P.oracle_name)
    << ", \"value\": "
    << (P.oracle_value ? g17(*P.oracle_value) : std::string("null"))
    << ", \"abs_delta\": "
    << (P.oracle_delta ? g17(*P.oracle_delta) : std::string("null"))
    << "},\n";
  o << "  \"config\": {\"segments\": " << P.resolved.segment_count
    << ", \"rho0\": " << g17(P.resolved.rho0)
    << ", \"energy_bound\": " << g17(P.resolved.energy_bound)
    << ", \"max_iter\": " << P.resolved.max_iter
    << ", \"recenter_every\": " << P.resolved.recenter_every
    << ", \"seed\": " << P.scenario.config.seed << "},\n";
  o << "  \"expect_status\": "
    << (P.scenario.expect_status
            ? json_string(status_name(*P.scenario.expect_status))
            : std::string("null"))
    << ",\n";
  o << "  \"note\": " << json_string(P.note) << ",\n";
  o << "  \"exit_code\": " << P.exit_code << ",\n";
  o << "  \"artifacts\": {\"trace\": \"trace.csv\", \"curves\": "
       "\"artifacts.json\"}\n";
  o << "}\n";
  return o.str();
}

std::string trace_csv(const GeodesicResult& result) {
  std::ostringstream o;
  o << "iteration,energy,length,max_node_disp,recenter_word_len\n";
  for (const TraceRow& r : result.trace) {
    o << r.iteration << "," << g17(r.energy) << "," << g17(r.length) << ","
      << (std::isinf(r.max_node_disp) ? std::string("inf")
                                      : g17(r.max_node_disp))
      << "," << r.recenter_word_len << "\n";
  }
  return o.str();
}

std::string artifacts_json(const RunProducts& P) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"scenario\": " << json_string(P.scenario.name) << ",\n";
  o << "  \"kind\": " << (P.foliation ? "\"foliation\"" : "\"manifold\"")
    << ",\n";
  if (P.exit_code == 2) {
    o << "  \"error\": " << json_string(P.note) << "\n}\n";
    return o.str();
  }
  const SpaceId drawn = P.initial.curve.space;
  o << "  \"space\": {\"kind\": \"" << space_kind_name(drawn.kind)
    << "\", \"dim\": " << drawn.dim << "},\n";

  const IsometryGroup* group = nullptr;
  if (const auto* ms = std::get_if<ManifoldScene>(&P.scenario.scene))
    group = &ms->group;
  else if (P.horizontal)
    group = &P.horizontal->model.group;
  o << "  \"fold_strategy\": \""
    << fold_name(group ? group->fold_strategy : FoldStrategy::None)
    << "\",\n";
  o << "  \"walls\": [";
  if (group) {
    for (std::size_t i = 0; i < group->walls.size(); ++i) {
      if (i) o << ",";
      o << "{\"normal\": " << json_vector(group->walls[i].normal)
        << ", \"offset\": " << g17(group->walls[i].offset) << "}";
    }
  }
  o << "],\n";
  if (group && group->fold_strategy == FoldStrategy::LatticeRound)
    o << "  \"lattice_basis\": "
      << json_matrix(group->lattice_basis.transpose()) << ",\n";
  else
    o << "  \"lattice_basis\": null,\n";
  o << "  \"initial\": " << json_curve(P.initial.curve) << ",\n";
  o << "  \"final\": " << json_curve(P.result.pair.curve) << ",\n";
  o << "  \"closure\": {\"label\": " << json_string(P.result.pair.closure.label)
    << ", \"matrix\": " << json_matrix(P.result.pair.closure.linear)
    << ", \"translation\": "
    << (P.result.pair.closure.translation.size()
            ? json_vector(P.result.pair.closure.translation)
            : std::string("[]"))
    << "},\n";
  if (P.foliation && P.horizontal)
    o << "  \"lifted\": " << json_curve(P.horizontal->lifted) << "\n";
  else
    o << "  \"lifted\": null\n";
  o << "}\n";
  return o.str();
}

void write_run_artifacts(const RunProducts& P,
                         const std::filesystem::path& outdir) {
  std::filesystem::create_directories(outdir);
  auto put = [&](const char* name, const std::string& content) {
    std::ofstream f(outdir / name, std::ios::binary);
    if (!f)
      throw contract_error("cannot write " + (outdir / name).string());
    f << content;
  };
  put("report.json", report_json(P));
  if (P.exit_code != 2) {
    put("trace.csv", trace_csv(P.result));
    put("artifacts.json", artifacts_json(P));
  }
}

// ---- oracle command ------------------------------------------------------

OracleProducts oracle_report(const Scenario& scenario) {
  std::ostringstream o;
  OracleProducts out;
  try {
    if (const auto* ms = std::get_if<ManifoldScene>(&scenario.scene)) {
      TranslationLength an =
          translation_length(ms->closure, LengthMode::Analytic);
      TranslationLength nu = translation_length(
          ms->closure, LengthMode::Numeric, scenario.config.seed);
      FixedPointResult fp =
          fixed_point_test(ms->closure, scenario.config.seed);
      double delta = std::abs(an.length - nu.length);
      bool ok = delta <= 1e-6 && nu.certified;
      out.exit_code = ok ? 0 : 1;
      o << "{\n  \"scenario\": " << json_string(scenario.name) << ",\n";
      o << "  \"kind\": \"manifold\",\n";
      o << "  \"translation_length_analytic\": " << g17(an.length) << ",\n";
      o << "  \"translation_length_numeric\": " << g17(nu.length) << ",\n";
      o << "  \"abs_delta\": " << g17(delta) << ",\n";
      o << "  \"numeric_certified\": " << (nu.certified ? "true" : "false")
        << ",\n";
      o << "  \"fixed_point_free\": " << (fp.fixed_point ? "false" : "true")
        << ",\n";
      o << "  \"min_displacement\": " << g17(fp.residual) << ",\n";
      o << "  \"exit_code\": " << out.exit_code << "\n}\n";
      out.json = o.str();
      return out;
    }
    const auto& fs = std::get<FoliationScene>(scenario.scene);
    double v = shortest_horizontal_length_oracle(fs.model);
    bool has = std::isfinite(v);
    out.exit_code = has ? 0 : 1;
    o << "{\n  \"scenario\": " << json_string(scenario.name) << ",\n";
    o << "  \"kind\": \"foliation\",\n";
    o << "  \"shortest_horizontal_length\": "
      << (has ? g17(v) : std::string("null")) << ",\n";
    if (!has)
      o << "  \"note\": \"no fixed-point-free holonomy power: no oracle "
           "value\",\n";
    o << "  \"exit_code\": " << out.exit_code << "\n}\n";
    out.json = o.str();
    return out;
  } catch (const contract_error& e) {
    out.exit_code = 2;
    out.json = "{\n  \"scenario\": " + json_string(scenario.name) +
               ",\n  \"error\": " + json_string(e.what()) +
               ",\n  \"exit_code\": 2\n}\n";
    return out;
  }
}

// ---- figures -------------------------------------------------------------

namespace {

struct Box {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  void add(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
};

std::string svg_polyline(const std::vector<std::pair<double, double>>& pts,
                         const char* color, double width, bool dashed) {
  std::ostringstream o;
  o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
    << fixed6(width) << "\"";
  if (dashed) o << " stroke-dasharray=\"" << fixed6(width * 4) << "\"";
  o << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) o << " ";
    o << fixed6(pts[i].first) << "," << fixed6(pts[i].second);
  }
  o << "\"/>\n";
  return o.str();
}

} // namespace

FigureProducts export_figure(const std::filesystem::path& run_dir) {
  FigureProducts out;
  std::ifstream in(run_dir / "artifacts.json");
  if (!in) {
    out.exit_code = 2;
    out.note = "cannot read " + (run_dir / "artifacts.json").string();
    return out;
  }
  nljson j;
  try {
    in >> j;
  } catch (const nljson::parse_error& e) {
    out.exit_code = 2;
    out.note = std::string("artifacts.json is not valid JSON: ") + e.what();
    return out;
  }
  if (j.contains("error")) {
    out.exit_code = 2;
    out.note = "run failed; nothing to draw";
    return out;
  }
  std::string kind = j["space"]["kind"].get<std::string>();
  int dim = j["space"]["dim"].get<int>();
  if (kind != "euclidean" || dim < 1 || dim > 2) {
    out.exit_code = 1;
    out.note = "figure export supports Euclidean scenes of dimension 1 or 2 "
               "(got " + kind + " dim " + std::to_string(dim) + ")";
    return out;
  }

  auto curve_points = [&](const nljson& c) {
    std::vector<std::pair<double, double>> pts;
    const auto& nodes = c["nodes"];
    const auto& part = c["partition"];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      double x = nodes[i][0].get<double>();
      // 1D scenes unroll the parameter on the vertical axis
      double y = dim == 2 ? -nodes[i][1].get<double>()
                          : -part[i].get<double>();
      pts.push_back({x, y});
    }
    return pts;
  };

  std::vector<std::pair<double, double>> initial = curve_points(j["initial"]);
  std::vector<std::pair<double, double>> final_c = curve_points(j["final"]);

  // closure translate of the final start node (Euclidean action)
  std::pair<double, double> marker;
  {
    const auto& cm = j["closure"]["matrix"];
    const auto& ct = j["closure"]["translation"];
    const auto& n0 = j["final"]["nodes"][0];
    double x = 0, y = 0;
    for (std::size_t c = 0; c < n0.size(); ++c) {
      x += cm[0][c].get<double>() * n0[c].get<double>();
      if (dim == 2) y += cm[1][c].get<double>() * n0[c].get<double>();
    }
    if (ct.size() > 0) x += ct[0].get<double>();
    if (dim == 2 && ct.size() > 1) y += ct[1].get<double>();
    marker = {x, dim == 2 ? -y : -j["final"]["partition"].back().get<double>()};
  }

  Box box;
  for (auto& p : initial) box.add(p.first, p.second);
  for (auto& p : final_c) box.add(p.first, p.second);
  box.add(marker.first, marker.second);

  // wall anchor geometry
  struct WallSeg {
    double x1, y1, x2, y2;
  };
  std::vector<WallSeg> wallsegs;
  double diag = std::max(box.xmax - box.xmin, box.ymax - box.ymin);
  if (diag <= 0) diag = 1.0;
  double reach = 2.0 * diag + 2.0;
  for (const auto& jw : j["walls"]) {
    double n1 = jw["normal"][0].get<double>();
    double n2 = dim == 2 ? jw["normal"][1].get<double>() : 0.0;
    double c = jw["offset"].get<double>();
    if (dim == 1) {
      double x = c / n1;
      wallsegs.push_back({x, -(-0.2), x, -1.2}); // spans the parameter axis
      box.add(x, 0.2);
      box.add(x, -1.2);
    } else {
      // wall line: point c*n, direction perpendicular to n (y negated)
      double px = c * n1, py = -c * n2;
      double dx = -(-n2), dy = -n1; // perpendicular in flipped coords
      wallsegs.push_back(
          {px - reach * dx, py - reach * dy, px + reach * dx, py + reach * dy});
      box.add(px, py);
    }
  }
  // lattice unit cell (2D)
  std::vector<std::pair<double, double>> cell;
  if (dim == 2 && j["lattice_basis"].is_array()) {
    const auto& B = j["lattice_basis"];
    double b1x = B[0][0].get<double>(), b1y = B[0][1].get<double>();
    double b2x = B[1][0].get<double>(), b2y = B[1][1].get<double>();
    cell = {{0, 0},
            {b1x, -b1y},
            {b1x + b2x, -(b1y + b2y)},
            {b2x, -b2y},
            {0, 0}};
    for (auto& p : cell) box.add(p.first, p.second);
  }
  if (dim == 1 && j["lattice_basis"].is_array()) {
    double b = j["lattice_basis"][0][0].get<double>();
    wallsegs.push_back({0.0, 0.2, 0.0, -1.2});
    wallsegs.push_back({b, 0.2, b, -1.2});
    box.add(0.0, 0.0);
    box.add(b, 0.0);
  }

  double pad = 0.1 * std::max(box.xmax - box.xmin, box.ymax - box.ymin);
  if (pad <= 0) pad = 0.5;
  double w = box.xmax - box.xmin + 2 * pad;
  double h = box.ymax - box.ymin + 2 * pad;
  double lw = 0.008 * std::max(w, h);

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
    << fixed6(box.xmin - pad) << " " << fixed6(box.ymin - pad) << " "
    << fixed6(w) << " " << fixed6(h) << "\">\n";
  o << "<!-- scenario: " << j["scenario"].get<std::string>() << " -->\n";
  for (const WallSeg& ws : wallsegs)
    o << "<line stroke=\"#999999\" stroke-width=\"" << fixed6(lw)
      << "\" x1=\"" << fixed6(ws.x1) << "\" y1=\"" << fixed6(ws.y1)
      << "\" x2=\"" << fixed6(ws.x2) << "\" y2=\"" << fixed6(ws.y2)
      << "\"/>\n";
  if (!cell.empty()) o << svg_polyline(cell, "#bbbbbb", lw, true);
  o << svg_polyline(initial, "#4477cc", lw, false);
  o << svg_polyline(final_c, "#cc3333", 1.5 * lw, false);
  o << "<circle fill=\"#cc3333\" stroke=\"none\" cx=\""
    << fixed6(final_c.front().first) << "\" cy=\""
    << fixed6(final_c.front().second) << "\" r=\"" << fixed6(1.5 * lw)
    << "\"/>\n";
  o << "<circle fill=\"none\" stroke=\"#228833\" stroke-width=\""
    << fixed6(lw) << "\" cx=\"" << fixed6(marker.first) << "\" cy=\""
    << fixed6(marker.second) << "\" r=\"" << fixed6(2.5 * lw) << "\"/>\n";
  o << "</svg>\n";
  out.svg = o.str();
  return out;
}

} // namespace orbigeo
