#include "tropbundle.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "tropbundle/error.hpp"
#include "tropbundle/serialize.hpp"

using tb::Json;

struct tb_matroid {
  tb::Matroid v;
};
struct tb_fan {
  tb::Fan v;
};
struct tb_bundle {
  tb::TropicalBundle v;
};

namespace {

thread_local std::string g_error_message;
thread_local std::string g_error_name;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int set_error(const tb::TbError& e) {
  g_error_message = e.what();
  g_error_name = tb::err_name(e.code());
  switch (e.code()) {
    case tb::Err::Parse: return TB_ERR_PARSE;
    case tb::Err::InvalidInput: return TB_ERR_INVALID_INPUT;
    default: return TB_ERR_DOMAIN;
  }
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_error_message.clear();
    g_error_name.clear();
    return TB_OK;
  } catch (const tb::TbError& e) {
    return set_error(e);
  } catch (const Json::exception& e) {
    g_error_message = std::string("Parse: ") + e.what();
    g_error_name = "Parse";
    return TB_ERR_PARSE;
  } catch (const std::exception& e) {
    g_error_message = e.what();
    g_error_name = "Internal";
    return TB_ERR_INTERNAL;
  }
}

Json parse(const char* text) {
  if (!text) tb::fail(tb::Err::Parse, "null input");
  return Json::parse(text);
}

// A value that is either a JSON document or a bare constructor name.
Json parse_loose(const char* text) {
  if (!text) tb::fail(tb::Err::Parse, "null input");
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) return Json(std::string(text));
  return j;
}

void emit(char** out, const Json& j) {
  if (out) *out = dup_string(j.dump());
}

tb::VecI vec_arg(const Json& args, const char* key) {
  if (!args.contains(key)) tb::fail(tb::Err::Parse, std::string("missing '") + key + "'");
  return tb::vec_from_json(args.at(key));
}

Json matroid_query_impl(const tb::Matroid& m, const std::string& op, const Json& args) {
  using tb::Mask;
  auto mask_arg = [&](const char* key) {
    if (!args.contains(key)) tb::fail(tb::Err::Parse, std::string("missing '") + key + "'");
    return m.mask_of(args.at(key).get<std::vector<std::string>>());
  };
  if (op == "info") {
    Json j;
    j["ground"] = m.ground();
    j["rank"] = m.rank();
    j["num_bases"] = m.bases().size();
    j["num_circuits"] = m.circuits().size();
    j["num_flats"] = m.flats().size();
    j["modular"] = m.is_modular();
    return j;
  }
  if (op == "flats") {
    std::vector<Mask> flats =
        args.contains("rank") ? m.flats_of_rank(args.at("rank").get<int>()) : m.flats();
    Json out = Json::array();
    for (Mask f : flats)
      out.push_back({{"flat", m.labels_of(f)}, {"rank", m.rank_of(f)}});
    return Json{{"flats", out}};
  }
  if (op == "circuits") {
    Json out = Json::array();
    for (Mask c : m.circuits()) out.push_back(m.labels_of(c));
    return Json{{"circuits", out}};
  }
  if (op == "bases") {
    Json out = Json::array();
    for (Mask b : m.bases()) out.push_back(m.labels_of(b));
    return Json{{"bases", out}};
  }
  if (op == "modular") return Json{{"modular", m.is_modular()}};
  if (op == "rank") return Json{{"rank", m.rank_of(mask_arg("set"))}};
  if (op == "closure") {
    Mask c = m.closure(mask_arg("set"));
    return Json{{"closure", m.labels_of(c)}, {"rank", m.rank_of(c)}};
  }
  if (op == "defect") {
    Mask f1 = mask_arg("f1"), f2 = mask_arg("f2");
    return Json{{"defect", m.submodular_defect(f1, f2)}};
  }
  if (op == "fundamental-circuit") {
    int e = m.index_of(args.at("e").get<std::string>());
    Mask c = m.fundamental_circuit(e, mask_arg("basis"));
    return Json{{"circuit", m.labels_of(c)}};
  }
  if (op == "greedy") {
    tb::VecQ w;
    for (const auto& x : args.at("weights")) {
      if (x.is_string())
        w.push_back(tb::Rat(x.get<std::string>()));
      else
        w.push_back(tb::Rat(x.get<long long>()));
    }
    Mask b = m.greedy_basis(w);
    return Json{{"basis", m.labels_of(b)}};
  }
  if (op == "bergman-check")
    return Json{{"bergman", tb::bergman::is_bergman_point(m, vec_arg(args, "w"))}};
  if (op == "bergman-project")
    return Json{{"w", tb::json_vec(tb::bergman::projection(m, vec_arg(args, "w")))}};
  if (op == "bergman-flag")
    return tb::flag_to_json(m, tb::bergman::flag_filtration(m, vec_arg(args, "w")));
  if (op == "point-from-flag")
    return Json{
        {"w", tb::json_vec(tb::bergman::point_from_flag(m, tb::flag_from_json(m, args.at("flag"))))}};
  if (op == "adapted-bases") {
    Json out = Json::array();
    for (Mask b : tb::bergman::adapted_bases(m, vec_arg(args, "w"))) out.push_back(m.labels_of(b));
    return Json{{"bases", out}};
  }
  if (op == "phi-b") {
    Mask basis = mask_arg("basis");
    return Json{{"w", tb::json_vec(tb::bergman::phi_b(m, basis, vec_arg(args, "a")))}};
  }
  if (op == "apartment-contains") {
    Mask basis = mask_arg("basis");
    return Json{{"contains", tb::bergman::apartment_contains(m, basis, vec_arg(args, "w"))}};
  }
  if (op == "symmetric") {
    std::string kind = args.at("kind").get<std::string>();
    tb::bergman::SymKind k;
    if (kind == "elementary")
      k = tb::bergman::SymKind::Elementary;
    else if (kind == "power")
      k = tb::bergman::SymKind::Power;
    else if (kind == "exp")
      k = tb::bergman::SymKind::ExpTruncated;
    else
      tb::fail(tb::Err::Parse, "kind must be elementary|power|exp");
    tb::Rat v = tb::bergman::symmetric_evaluate(m, vec_arg(args, "w"), k, args.at("k").get<int>());
    return Json{{"value", tb::rat_str(v)}};
  }
  tb::fail(tb::Err::Parse, "unknown matroid op '" + op + "'");
}

Json fan_query_impl(const tb::Fan& f, const std::string& op, const Json& args) {
  if (op == "info") {
    Json j;
    j["dim"] = f.dim();
    j["num_rays"] = f.num_rays();
    j["num_max_cones"] = f.max_cones().size();
    j["num_cones"] = f.all_cones().size();
    j["num_walls"] = f.walls().size();
    j["smooth"] = true;
    j["complete"] = true;
    return j;
  }
  if (op == "walls") {
    Json out = Json::array();
    for (const tb::Wall& w : f.walls())
      out.push_back({{"tau", w.tau},
                     {"cone_pos", w.cone_pos},
                     {"cone_neg", w.cone_neg},
                     {"ray_pos", w.ray_pos},
                     {"ray_neg", w.ray_neg},
                     {"relation", tb::json_vec(w.relation)}});
    return Json{{"walls", out}};
  }
  if (op == "cone-containing") return Json{{"cone", f.cone_containing(vec_arg(args, "x"))}};
  if (op == "polyhedron-contains") {
    tb::Polyhedron p = tb::polyhedron_from_json(args);
    return Json{{"contains", tb::contains(p, vec_arg(args, "u"))}};
  }
  if (op == "lattice-points") {
    std::vector<tb::VecI> pts;
    if (args.contains("support"))
      pts = tb::lattice_points(f, vec_arg(args, "support"));
    else
      pts = tb::lattice_points(tb::polyhedron_from_json(args));
    Json out = Json::array();
    for (const auto& u : pts) out.push_back(tb::json_vec(u));
    return Json{{"points", out}, {"count", pts.size()}};
  }
  if (op == "vertex-in-direction") {
    auto v = tb::vertex_in_direction(f, vec_arg(args, "support"), args.at("cone").get<int>());
    Json j;
    j["exists"] = v.has_value();
    if (v) j["vertex"] = tb::json_vec(*v);
    return j;
  }
  if (op == "has-normal-fan")
    return Json{{"has_normal_fan", tb::has_normal_fan(f, vec_arg(args, "support"))}};
  tb::fail(tb::Err::Parse, "unknown fan op '" + op + "'");
}

Json bundle_query_impl(const tb::TropicalBundle& b, const std::string& op, const Json& args) {
  using tb::Mask;
  const tb::Matroid& m = b.matroid();
  if (op == "info") {
    Json certs = Json::array();
    for (size_t ci = 0; ci < b.fan().max_cones().size(); ++ci)
      certs.push_back({{"cone", b.fan().max_cones()[ci]},
                       {"basis", m.labels_of(b.cone_basis(static_cast<int>(ci)))}});
    Json j;
    j["rank"] = b.rank();
    j["ground"] = m.ground();
    j["num_rays"] = b.fan().num_rays();
    j["dim"] = b.fan().dim();
    j["diagram"] = tb::json_mat(b.diagram());
    j["certificates"] = certs;
    return j;
  }
  if (op == "klyachko") {
    if (args.contains("thresholds")) {
      std::vector<std::pair<int, tb::Int>> q;
      for (const auto& row : args.at("thresholds"))
        q.emplace_back(row.at(0).get<int>(), tb::int_from_json(row.at(1)));
      Mask f = b.klyachko_intersection(q);
      return Json{{"flat", m.labels_of(f)}, {"rank", m.rank_of(f)}};
    }
    Mask f = b.klyachko_flat(args.at("ray").get<int>(), tb::int_from_json(args.at("t")));
    return Json{{"flat", m.labels_of(f)}, {"rank", m.rank_of(f)}};
  }
  if (op == "phi-at") return Json{{"w", tb::json_vec(b.phi_at(vec_arg(args, "x")))}};
  if (op == "parliament") {
    const bool with_vertices = args.value("vertices", true) &&
                               b.fan().num_rays() <= 24;
    Json out = Json::array();
    for (int e = 0; e < m.size(); ++e)
      out.push_back({{"element", m.label(e)},
                     {"polyhedron", tb::polyhedron_to_json(b.parliament_member(e), with_vertices)}});
    return Json{{"parliament", out}};
  }
  if (op == "sections") {
    tb::VecI u = vec_arg(args, "u");
    if (args.value("via", std::string()) == "flats")
      return Json{{"u", tb::json_vec(u)}, {"rank", tb::json_int(b.h0_u_via_flats(u))}};
    return tb::section_report_to_json(m, b.h0_u(u));
  }
  if (op == "sections-sigma")
    return tb::section_report_to_json(
        m, b.h0_u_sigma(args.at("cone").get<std::vector<int>>(), vec_arg(args, "u")));
  if (op == "euler") {
    tb::VecI u = vec_arg(args, "u");
    return Json{{"u", tb::json_vec(u)}, {"chi", tb::json_int(b.chi_u(u))}};
  }
  if (op == "euler-total") {
    auto [lo, hi] = b.support_box();
    return Json{{"chi_total", tb::json_int(b.chi_total())},
                {"h0_total", tb::json_int(b.h0_total())},
                {"box_lo", tb::json_vec(lo)},
                {"box_hi", tb::json_vec(hi)}};
  }
  if (op == "flat-coefficients") {
    Json out = Json::array();
    for (const auto& [flat, c] : b.flat_coefficients())
      out.push_back({{"flat", m.labels_of(flat)}, {"c", tb::json_int(c)}});
    return Json{{"coefficients", out}};
  }
  if (op == "characters") {
    int cone = args.at("cone").get<int>();
    Json out = Json::array();
    for (const auto& [e, u] : b.characters_on_cone(cone))
      out.push_back({{"element", m.label(e)}, {"u", tb::json_vec(u)}});
    return Json{{"cone", b.fan().max_cones()[cone]}, {"characters", out}};
  }
  if (op == "chern") {
    int i = args.at("i").get<int>();
    Json out = Json::array();
    auto polys = b.chern_class(i);
    for (size_t ci = 0; ci < polys.size(); ++ci)
      out.push_back({{"cone", b.fan().max_cones()[ci]}, {"poly", tb::poly_to_json(polys[ci])}});
    return Json{{"i", i}, {"cones", out}};
  }
  if (op == "kclass") {
    Json out = Json::array();
    auto multisets = b.k_class();
    for (size_t ci = 0; ci < multisets.size(); ++ci) {
      Json chars = Json::array();
      for (const auto& u : multisets[ci]) chars.push_back(tb::json_vec(u));
      out.push_back({{"cone", b.fan().max_cones()[ci]}, {"characters", chars}});
    }
    return Json{{"cones", out}};
  }
  if (op == "chern-character") {
    Json out = Json::array();
    auto polys = b.chern_character();
    for (size_t ci = 0; ci < polys.size(); ++ci)
      out.push_back({{"cone", b.fan().max_cones()[ci]}, {"poly", tb::poly_to_json(polys[ci])}});
    return Json{{"cones", out}};
  }
  if (op == "wall-compat") {
    auto bad = b.wall_compatibility_failures();
    return Json{{"compatible", bad.empty()}, {"failures", bad}};
  }
  if (op == "gg") {
    std::vector<tb::GGCertificate> certs;
    bool gg = b.is_globally_generated(&certs);
    Json out = Json::array();
    for (const auto& c : certs) {
      Json chars = Json::array();
      for (const auto& u : c.characters) chars.push_back(tb::json_vec(u));
      out.push_back(
          {{"cone", c.cone}, {"basis", m.labels_of(c.basis)}, {"characters", chars}});
    }
    Json j;
    j["globally_generated"] = gg;
    if (gg) j["certificates"] = out;
    return j;
  }
  if (op == "n0") return Json{{"N0", tb::json_int(b.estimate_n0(vec_arg(args, "L")))}};
  if (op == "nef") return tb::nef_report_to_json(b, b.is_nef());
  if (op == "ample") return tb::nef_report_to_json(b, b.is_ample());
  if (op == "walls") return fan_query_impl(b.fan(), "walls", args);
  if (op == "split") {
    auto s = b.splits();
    Json j;
    j["splits"] = s.has_value();
    if (s) {
      j["basis"] = m.labels_of(s->first);
      j["degrees"] = tb::json_vec(s->second);
    }
    return j;
  }
  if (op == "wall-splitting") {
    tb::WallSplitting ws = b.wall_splitting(args.at("wall").get<int>());
    Json j;
    j["wall"] = ws.wall;
    j["status"] = ws.status == tb::SplitStatus::Split ? "split" : "unsplit-within-matroid";
    if (ws.status == tb::SplitStatus::Split) {
      std::vector<std::string> labels;
      for (size_t i = 0; i < ws.support.size(); ++i)
        if (ws.basis >> i & 1) labels.push_back(m.label(ws.support[i]));
      j["basis"] = labels;
      j["degrees"] = tb::json_vec(ws.degrees);
    }
    return j;
  }
  tb::fail(tb::Err::Parse, "unknown bundle op '" + op + "'");
}

}  // namespace

extern "C" {

const char* tb_version(void) { return "tropbundle 0.1.0"; }

const char* tb_last_error_message(void) { return g_error_message.c_str(); }

const char* tb_last_error_name(void) { return g_error_name.c_str(); }

void tb_string_free(char* s) { std::free(s); }

int tb_matroid_create(const char* text, tb_matroid** out) {
  return guarded([&] {
    auto* h = new tb_matroid{tb::matroid_from_json(parse_loose(text))};
    *out = h;
  });
}

void tb_matroid_destroy(tb_matroid* m) { delete m; }

int tb_matroid_to_json(const tb_matroid* m, char** json_out) {
  return guarded([&] { emit(json_out, tb::matroid_to_json(m->v)); });
}

int tb_matroid_query(const tb_matroid* m, const char* op, const char* args_json, char** json_out) {
  return guarded([&] {
    Json args = args_json && *args_json ? parse(args_json) : Json::object();
    emit(json_out, matroid_query_impl(m->v, op ? op : "", args));
  });
}

int tb_matroid_dual(const tb_matroid* m, tb_matroid** out) {
  return guarded([&] { *out = new tb_matroid{m->v.dual()}; });
}

int tb_matroid_quotient(const tb_matroid* m, const char* flat_labels_json, tb_matroid** out) {
  return guarded([&] {
    auto labels = parse(flat_labels_json).get<std::vector<std::string>>();
    *out = new tb_matroid{m->v.quotient(m->v.mask_of(labels))};
  });
}

int tb_matroid_restriction(const tb_matroid* m, const char* labels_json, tb_matroid** out) {
  return guarded([&] {
    auto labels = parse(labels_json).get<std::vector<std::string>>();
    *out = new tb_matroid{m->v.restriction(m->v.mask_of(labels))};
  });
}

int tb_fan_create(const char* text, tb_fan** out) {
  return guarded([&] { *out = new tb_fan{tb::fan_from_json(parse_loose(text))}; });
}

void tb_fan_destroy(tb_fan* f) { delete f; }

int tb_fan_to_json(const tb_fan* f, char** json_out) {
  return guarded([&] { emit(json_out, tb::fan_to_json(f->v)); });
}

int tb_fan_query(const tb_fan* f, const char* op, const char* args_json, char** json_out) {
  return guarded([&] {
    Json args = args_json && *args_json ? parse(args_json) : Json::object();
    emit(json_out, fan_query_impl(f->v, op ? op : "", args));
  });
}

int tb_bundle_create(const char* bundle_json, tb_bundle** out) {
  return guarded([&] { *out = new tb_bundle{tb::bundle_from_json(parse(bundle_json))}; });
}

int tb_bundle_create_parts(const tb_matroid* m, const tb_fan* f, const char* diagram_json,
                           tb_bundle** out) {
  return guarded([&] {
    *out = new tb_bundle{
        tb::TropicalBundle::validate(m->v, f->v, tb::mat_from_json(parse(diagram_json)))};
  });
}

void tb_bundle_destroy(tb_bundle* b) { delete b; }

int tb_bundle_to_json(const tb_bundle* b, char** json_out) {
  return guarded([&] { emit(json_out, tb::bundle_to_json(b->v)); });
}

int tb_bundle_query(const tb_bundle* b, const char* op, const char* args_json, char** json_out) {
  return guarded([&] {
    Json args = args_json && *args_json ? parse(args_json) : Json::object();
    emit(json_out, bundle_query_impl(b->v, op ? op : "", args));
  });
}

int tb_bundle_twist(const tb_bundle* b, const char* line_bundle_json, tb_bundle** out) {
  return guarded([&] {
    *out = new tb_bundle{b->v.tensor_line_bundle(tb::vec_from_json(parse(line_bundle_json)))};
  });
}

int tb_bundle_restrict(const tb_bundle* b, int wall_index, int all_choices, char** json_out) {
  return guarded([&] {
    auto render = [&](const tb::RestrictionResult& r) {
      tb::TropicalBundle p1 =
          tb::TropicalBundle::validate(r.matroid, tb::Fan::p1(), r.rows);
      Json j = tb::bundle_to_json(p1);
      j["basis_pos"] = b->v.matroid().labels_of(r.basis_pos);
      j["basis_neg"] = b->v.matroid().labels_of(r.basis_neg);
      return j;
    };
    if (all_choices) {
      Json arr = Json::array();
      for (const auto& r : b->v.restrict_to_curve_all_choices(wall_index)) arr.push_back(render(r));
      emit(json_out, Json{{"choices", arr}});
    } else {
      emit(json_out, render(b->v.restrict_to_curve(wall_index)));
    }
  });
}

int tb_bundle_pullback(const tb_bundle* b, const char* lambda_json, const tb_fan* src,
                       tb_bundle** out) {
  return guarded([&] {
    *out = new tb_bundle{
        tb::pullback_linear(b->v, tb::mat_from_json(parse(lambda_json)), src->v)};
  });
}

int tb_taut_build(const tb_matroid* m, const char* which, tb_bundle** out) {
  return guarded([&] {
    std::string kind = which ? which : "sub-dual";
    if (kind.rfind("taut:", 0) == 0) kind = kind.substr(5);
    tb::TautKind k;
    if (kind == "sub-dual")
      k = tb::TautKind::SubDual;
    else if (kind == "quotient")
      k = tb::TautKind::Quotient;
    else
      tb::fail(tb::Err::Parse, "which must be sub-dual|quotient");
    *out = new tb_bundle{tb::tautological_bundle(m->v, k)};
  });
}

int tb_taut_nef_sweep(const tb_matroid* m, int allow_large, char** json_out) {
  return guarded([&] {
    emit(json_out, tb::sweep_report_to_json(tb::nef_certificate_tautological(m->v, allow_large)));
  });
}

int tb_bundle_cremona(const tb_bundle* b, tb_bundle** out) {
  return guarded([&] { *out = new tb_bundle{tb::cremona_pullback(b->v)}; });
}

int tb_bundle_from_pl(const tb_matroid* m, const tb_fan* f, const char* psi_json, tb_bundle** out) {
  return guarded([&] {
    *out = new tb_bundle{tb::bundle_from_pl_data(m->v, f->v, tb::mat_from_json(parse(psi_json)))};
  });
}

int tb_ext_push(const tb_bundle* b, const char* extension_json, tb_bundle** out) {
  return guarded([&] {
    *out = new tb_bundle{
        tb::pushforward_bundle(tb::extension_from_json(parse(extension_json)), b->v)};
  });
}

int tb_ext_split_search(const tb_bundle* b, const char* candidates_json, char** json_out) {
  return guarded([&] {
    std::vector<tb::ExtensionMap> candidates;
    Json spec = candidates_json && *candidates_json ? parse(candidates_json) : Json::array();
    if (spec.is_object() && spec.value("principal-catalog", false)) {
      const tb::Matroid& m = b->v.matroid();
      for (tb::Mask flat : m.flats()) {
        if (m.rank_of(flat) < 1) continue;
        candidates.push_back(tb::principal_extension(m, flat, "x"));
      }
    } else if (spec.is_array()) {
      for (const auto& c : spec) candidates.push_back(tb::extension_from_json(c));
    } else {
      tb::fail(tb::Err::Parse, "candidates must be an array or {\"principal-catalog\": true}");
    }
    auto witness = tb::equivalent_split_search(b->v, candidates);
    Json j;
    j["found"] = witness.has_value();
    j["candidates_tried"] = candidates.size() + 1;
    if (witness) {
      j["candidate"] = witness->candidate;
      j["basis"] = witness->basis_labels;
      j["degrees"] = tb::json_vec(witness->degrees);
    }
    emit(json_out, j);
  });
}

int tb_ext_defect(const tb_bundle* b, char** json_out) {
  return guarded([&] {
    auto d = tb::defect_obstruction(b->v);
    Json j;
    j["found"] = d.has_value();
    if (d) {
      j["F"] = b->v.matroid().labels_of(d->flat_pos);
      j["H"] = b->v.matroid().labels_of(d->flat_neg);
      j["defect"] = d->defect;
    }
    emit(json_out, j);
  });
}

int tb_example(const char* name, char** json_out) {
  return guarded([&] { emit(json_out, tb::example_bundle_json(name ? name : "")); });
}

}  // extern "C"
