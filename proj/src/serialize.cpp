#include "tropbundle/serialize.hpp"

#include "tropbundle/error.hpp"

namespace tb {

Json json_int(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) return static_cast<long long>(v);
  return v.str();
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::runtime_error&) {
      fail(Err::Parse, "bad integer string");
    }
  }
  fail(Err::Parse, "expected an integer");
}

Json json_vec(const VecI& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(json_int(x));
  return a;
}

VecI vec_from_json(const Json& j) {
  if (!j.is_array()) fail(Err::Parse, "expected an array of integers");
  VecI v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

Json json_mat(const MatI& m) {
  Json a = Json::array();
  for (const VecI& row : m) a.push_back(json_vec(row));
  return a;
}

MatI mat_from_json(const Json& j) {
  if (!j.is_array()) fail(Err::Parse, "expected an array of rows");
  MatI m;
  for (const auto& row : j) m.push_back(vec_from_json(row));
  return m;
}

Json matroid_to_json(const Matroid& m) {
  Json j;
  j["ground"] = m.ground();
  Json bases = Json::array();
  for (Mask b : m.bases()) bases.push_back(m.labels_of(b));
  j["bases"] = bases;
  j["rank"] = m.rank();
  return j;
}

Matroid matroid_from_json(const Json& j) {
  if (j.is_string()) return Matroid::named(j.get<std::string>());
  if (!j.is_object()) fail(Err::Parse, "matroid must be a name or an object");
  if (!j.contains("ground")) fail(Err::Parse, "matroid needs a ground list");
  std::vector<std::string> ground = j.at("ground").get<std::vector<std::string>>();
  if (j.contains("bases"))
    return Matroid::from_bases(ground, j.at("bases").get<std::vector<std::vector<std::string>>>());
  if (j.contains("circuits"))
    return Matroid::from_circuits(ground,
                                  j.at("circuits").get<std::vector<std::vector<std::string>>>());
  if (j.contains("matrix")) {
    std::optional<long long> prime;
    if (j.contains("mod")) prime = j.at("mod").get<long long>();
    return Matroid::linear(ground, mat_from_json(j.at("matrix")), prime);
  }
  fail(Err::Parse, "matroid needs bases, circuits, or a matrix");
}

Json fan_to_json(const Fan& f) {
  Json j;
  j["dim"] = f.dim();
  j["rays"] = json_mat(f.rays());
  j["max_cones"] = f.max_cones();
  if (f.is_permutahedral()) {
    j["perm_m"] = f.perm_m();
    Json subsets = Json::array();
    for (Mask s : f.perm_ray_subsets()) {
      Json sub = Json::array();
      for (int e = 0; e < f.perm_m(); ++e)
        if (s >> e & 1) sub.push_back(e);
      subsets.push_back(sub);
    }
    j["ray_subsets"] = subsets;
  }
  return j;
}

Fan fan_from_json(const Json& j) {
  if (j.is_string()) return Fan::named(j.get<std::string>());
  if (!j.is_object()) fail(Err::Parse, "fan must be a name or an object");
  if (j.contains("perm_m")) return Fan::permutahedral(j.at("perm_m").get<int>());
  for (const char* key : {"dim", "rays", "max_cones"})
    if (!j.contains(key)) fail(Err::Parse, std::string("fan needs ") + key);
  return Fan::from_data(j.at("dim").get<int>(), mat_from_json(j.at("rays")),
                        j.at("max_cones").get<std::vector<std::vector<int>>>());
}

Json polyhedron_to_json(const Polyhedron& p, bool with_vertices) {
  Json ineqs = Json::array();
  for (size_t k = 0; k < p.normals.size(); ++k)
    ineqs.push_back({{"normal", json_vec(p.normals[k])}, {"bound", json_int(p.bounds[k])}});
  Json j;
  j["ineqs"] = ineqs;
  if (with_vertices) {
    Json verts = Json::array();
    for (const VecQ& v : vertices(p)) {
      Json vv = Json::array();
      for (const Rat& x : v) vv.push_back(rat_str(x));
      verts.push_back(vv);
    }
    j["vertices"] = verts;
  }
  return j;
}

Polyhedron polyhedron_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ineqs")) fail(Err::Parse, "polyhedron needs ineqs");
  Polyhedron p;
  for (const auto& row : j.at("ineqs")) {
    p.normals.push_back(vec_from_json(row.at("normal")));
    p.bounds.push_back(int_from_json(row.at("bound")));
  }
  return p;
}

Json bundle_to_json(const TropicalBundle& b) {
  Json j;
  j["matroid"] = matroid_to_json(b.matroid());
  j["fan"] = fan_to_json(b.fan());
  j["diagram"] = json_mat(b.diagram());
  return j;
}

TropicalBundle bundle_from_json(const Json& j) {
  if (!j.is_object()) fail(Err::Parse, "bundle must be an object");
  for (const char* key : {"matroid", "fan", "diagram"})
    if (!j.contains(key)) fail(Err::Parse, std::string("bundle needs ") + key);
  return TropicalBundle::validate(matroid_from_json(j.at("matroid")), fan_from_json(j.at("fan")),
                                  mat_from_json(j.at("diagram")));
}

Json flag_to_json(const Matroid& m, const WeightedFlag& flag) {
  Json steps = Json::array();
  for (size_t i = 0; i < flag.flats.size(); ++i)
    steps.push_back(
        {{"threshold", json_int(flag.thresholds[i])}, {"flat", m.labels_of(flag.flats[i])}});
  return Json{{"steps", steps}};
}

WeightedFlag flag_from_json(const Matroid& m, const Json& j) {
  if (!j.is_object() || !j.contains("steps")) fail(Err::Parse, "flag needs steps");
  WeightedFlag flag;
  for (const auto& step : j.at("steps")) {
    flag.thresholds.push_back(int_from_json(step.at("threshold")));
    flag.flats.push_back(m.mask_of(step.at("flat").get<std::vector<std::string>>()));
  }
  return flag;
}

ExtensionMap extension_from_json(const Json& j) {
  if (!j.is_object()) fail(Err::Parse, "extension must be an object");
  for (const char* key : {"source", "target", "map"})
    if (!j.contains(key)) fail(Err::Parse, std::string("extension needs ") + key);
  ExtensionMap e{matroid_from_json(j.at("source")), matroid_from_json(j.at("target")), {}};
  const auto& m = j.at("map");
  if (!m.is_object()) fail(Err::Parse, "extension map must be label -> label");
  e.map.assign(e.source.size(), -1);
  for (auto it = m.begin(); it != m.end(); ++it)
    e.map[e.source.index_of(it.key())] = e.target.index_of(it.value().get<std::string>());
  for (int v : e.map)
    if (v < 0) fail(Err::Parse, "extension map must cover the source ground set");
  return e;
}

Json extension_to_json(const ExtensionMap& e) {
  Json m = Json::object();
  for (int i = 0; i < e.source.size(); ++i) m[e.source.label(i)] = e.target.label(e.map[i]);
  return Json{{"source", matroid_to_json(e.source)},
              {"target", matroid_to_json(e.target)},
              {"map", m}};
}

Json section_report_to_json(const Matroid& m, const SectionReport& r) {
  return Json{{"u", json_vec(r.u)}, {"flat", m.labels_of(r.flat)}, {"rank", r.rank}};
}

static const char* split_status_name(SplitStatus s) {
  return s == SplitStatus::Split ? "split" : "unsplit-within-matroid";
}

Json nef_report_to_json(const TropicalBundle& b, const NefReport& r) {
  Json walls = Json::array();
  for (const auto& ws : r.walls) {
    Json w;
    w["wall"] = ws.wall;
    w["status"] = split_status_name(ws.status);
    if (ws.status == SplitStatus::Split) {
      // ws.basis indexes the restricted matroid; support maps back to M.
      std::vector<std::string> labels;
      for (size_t i = 0; i < ws.support.size(); ++i)
        if (ws.basis >> i & 1) labels.push_back(b.matroid().label(ws.support[i]));
      w["basis"] = labels;
      w["degrees"] = json_vec(ws.degrees);
    }
    walls.push_back(std::move(w));
  }
  const char* status = r.status == NefStatus::Yes
                           ? "yes"
                           : (r.status == NefStatus::No ? "no" : "unsplit-within-matroid");
  return Json{{"status", status}, {"walls", walls}};
}

Json sweep_report_to_json(const NefSweepReport& r) {
  Json walls = Json::array();
  for (const auto& e : r.walls) {
    Json w;
    w["wall"] = e.wall;
    w["status"] = split_status_name(e.status);
    if (e.status == SplitStatus::Split) w["degrees"] = json_vec(e.degrees);
    walls.push_back(std::move(w));
  }
  return Json{{"walls", walls},
              {"all_split", r.all_split},
              {"nef_tautological_shape", r.nef_tautological_shape}};
}

Json poly_to_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms) terms.push_back({{"monomial", e}, {"coeff", rat_str(c)}});
  return Json{{"nvars", p.nvars}, {"terms", terms}};
}

Json example_bundle_json(const std::string& name) {
  Json j;
  if (name == "fano-bundle") {
    // Rays (1,0), (0,1), (-1,-1); the rows realize the three Klyachko flags
    // of the Fano bundle so that the section flat at u = (1,0) is {y2,z2,w}.
    j["matroid"] = matroid_to_json(Matroid::fano());
    j["fan"] = fan_to_json(Fan::p2());
    j["diagram"] = Json::array({Json::array({0, 2, 0, 0, 1, 0, 1}),
                                Json::array({0, 0, 2, 0, 0, 1, 1}),
                                Json::array({2, 0, 0, 1, 0, 0, 1})});
    return j;
  }
  if (name == "vamos-p1") {
    j["matroid"] = matroid_to_json(Matroid::vamos());
    j["fan"] = fan_to_json(Fan::p1());
    j["diagram"] = Json::array({Json::array({0, 0, 1, 1, 0, 0, 0, 0}),
                                Json::array({1, 1, 0, 0, 0, 0, 0, 0})});
    return j;
  }
  if (name == "u23-zero") {
    j["matroid"] = matroid_to_json(Matroid::uniform(2, 3));
    j["fan"] = fan_to_json(Fan::p2());
    j["diagram"] = Json::array({Json::array({0, 0, 0}), Json::array({0, 0, 0}),
                                Json::array({0, 0, 0})});
    return j;
  }
  fail(Err::Parse, "unknown example '" + name + "'");
}

}  // namespace tb
