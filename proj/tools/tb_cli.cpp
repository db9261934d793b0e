// tb: command-line front end for the tropbundle shared library.  All domain
// computation goes through the C API in tropbundle.h; this translation unit
// only parses arguments, loads files, and renders reports.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tropbundle.h"

using nlohmann::json;

namespace {

std::string g_format = "json";

void check(int rc) {
  if (rc != TB_OK) {
    std::cerr << "error: " << tb_last_error_message() << "\n";
    std::exit(1);
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(1);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Matroid/fan arguments may be a named constructor, inline JSON, or a path.
std::string load_spec(const std::string& arg) {
  if (arg == "-") return read_input(arg);
  std::ifstream probe(arg);
  if (probe.good()) return read_input(arg);
  return arg;
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { tb_string_free(p); }
};

json take_json(OwnedString& s) { return json::parse(std::string(s.p ? s.p : "null")); }

std::vector<long long> parse_csv_ints(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

json vec_json(const std::vector<long long>& v) { return json(v); }

// Diagram CSV: header "ray,<label>,..."; data rows keyed by ray index.
json diagram_from_csv(const std::string& text, const json& ground) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw std::runtime_error("empty diagram csv");
  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  if (header.empty() || header[0] != "ray")
    throw std::runtime_error("diagram csv header must start with 'ray'");
  std::vector<int> order;  // header column -> ground position
  for (size_t k = 1; k < header.size(); ++k) {
    int pos = -1;
    for (size_t g = 0; g < ground.size(); ++g)
      if (ground[g] == header[k]) pos = static_cast<int>(g);
    if (pos < 0) throw std::runtime_error("unknown label '" + header[k] + "' in diagram csv");
    order.push_back(pos);
  }
  std::vector<std::pair<long long, std::vector<long long>>> rows;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    auto vals = parse_csv_ints(line);
    if (vals.size() != header.size()) throw std::runtime_error("ragged diagram csv row");
    std::vector<long long> row(ground.size());
    for (size_t k = 1; k < vals.size(); ++k) row[order[k - 1]] = vals[k];
    rows.emplace_back(vals[0], row);
  }
  std::sort(rows.begin(), rows.end());
  json d = json::array();
  for (auto& [ray, row] : rows) d.push_back(row);
  return d;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit_md_table(const std::vector<std::string>& header, const std::vector<json>& rows) {
  std::cout << "|";
  for (const auto& h : header) std::cout << " " << h << " |";
  std::cout << "\n|";
  for (size_t i = 0; i < header.size(); ++i) std::cout << " --- |";
  std::cout << "\n";
  for (const auto& row : rows) {
    std::cout << "|";
    for (const auto& cell : row) {
      if (cell.is_string())
        std::cout << " " << cell.get<std::string>() << " |";
      else
        std::cout << " " << cell.dump() << " |";
    }
    std::cout << "\n";
  }
}

void render_diagram_md(const json& bundle_info) {
  const json& ground = bundle_info.at("ground");
  const json& diagram = bundle_info.at("diagram");
  std::vector<std::string> header = {"ray"};
  for (const auto& g : ground) header.push_back(g.get<std::string>());
  std::vector<json> rows;
  for (size_t r = 0; r < diagram.size(); ++r) {
    json row = json::array();
    row.push_back("rho" + std::to_string(r));
    for (const auto& v : diagram[r]) row.push_back(v);
    rows.push_back(row);
  }
  emit_md_table(header, rows);
}

struct MatroidHandle {
  tb_matroid* p = nullptr;
  ~MatroidHandle() { tb_matroid_destroy(p); }
};

struct FanHandle {
  tb_fan* p = nullptr;
  ~FanHandle() { tb_fan_destroy(p); }
};

struct BundleHandle {
  tb_bundle* p = nullptr;
  ~BundleHandle() { tb_bundle_destroy(p); }
};

void load_matroid(const std::string& arg, MatroidHandle& out) {
  check(tb_matroid_create(load_spec(arg).c_str(), &out.p));
}

// Shared bundle-input options.
struct BundleArgs {
  std::string file, matroid, fan, diagram;
  void add_to(CLI::App* sub) {
    sub->add_option("bundle", file, "bundle JSON file ('-' for stdin)");
    sub->add_option("--matroid", matroid, "matroid name, JSON, or file");
    sub->add_option("--fan", fan, "fan name, JSON, or file");
    sub->add_option("--diagram", diagram, "diagram JSON or CSV file");
  }
  void load(BundleHandle& out) const {
    if (!file.empty()) {
      check(tb_bundle_create(read_input(file).c_str(), &out.p));
      return;
    }
    if (matroid.empty() || fan.empty() || diagram.empty()) {
      std::cerr << "error: provide a bundle file or --matroid, --fan and --diagram\n";
      std::exit(2);
    }
    MatroidHandle m;
    load_matroid(matroid, m);
    FanHandle f;
    check(tb_fan_create(load_spec(fan).c_str(), &f.p));
    std::string dtext = read_input(diagram);
    json d;
    size_t first = dtext.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (dtext[first] == '[' || dtext[first] == '{')) {
      d = json::parse(dtext);
      if (d.is_object()) d = d.at("diagram");
    } else {
      OwnedString mj;
      check(tb_matroid_to_json(m.p, &mj.p));
      d = diagram_from_csv(dtext, take_json(mj).at("ground"));
    }
    check(tb_bundle_create_parts(m.p, f.p, d.dump().c_str(), &out.p));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with tropical toric vector bundles"};
  app.set_version_flag("--version", std::string(tb_version()));
  app.add_option("--format", g_format, "output format: json|md")->default_val("json");
  bool json_mode = false;
  app.add_flag("--json", json_mode, "force JSON output (default)");
  app.require_subcommand(1);

  // ---- matroid ----
  auto* matroid_cmd = app.add_subcommand("matroid", "matroid queries");
  matroid_cmd->require_subcommand(1);
  static std::string m_arg;
  static int flats_rank = -1;
  for (const std::string op : {"info", "flats", "circuits", "modular", "bases"}) {
    auto* sub = matroid_cmd->add_subcommand(op, op + " of a matroid");
    sub->add_option("matroid", m_arg, "name, JSON, or file")->required();
    if (op == "flats") sub->add_option("--rank", flats_rank, "restrict to flats of this rank");
    sub->callback([op]() {
      MatroidHandle m;
      load_matroid(m_arg, m);
      json args = json::object();
      if (op == "flats" && flats_rank >= 0) args["rank"] = flats_rank;
      OwnedString out;
      check(tb_matroid_query(m.p, op.c_str(), args.dump().c_str(), &out.p));
      json j = take_json(out);
      if (op == "modular" && g_format != "md") {
        emit(j);
      } else if (g_format == "md" && op == "circuits") {
        std::vector<json> rows;
        for (const auto& c : j["circuits"]) rows.push_back(json::array({c.dump()}));
        emit_md_table({"circuit"}, rows);
      } else {
        emit(j);
      }
    });
  }

  // ---- bergman ----
  auto* bergman_cmd = app.add_subcommand("bergman", "Bergman fan membership and flags");
  bergman_cmd->require_subcommand(1);
  static std::string bg_matroid, bg_w;
  for (const auto& [name, op] : std::vector<std::pair<std::string, std::string>>{
           {"check", "bergman-check"}, {"project", "bergman-project"}, {"flag", "bergman-flag"}}) {
    auto* sub = bergman_cmd->add_subcommand(name, name + " a weight vector");
    sub->add_option("matroid", bg_matroid, "name, JSON, or file")->required();
    sub->add_option("--w", bg_w, "comma-separated integer vector")->required();
    const std::string opname = op;
    sub->callback([opname]() {
      MatroidHandle m;
      load_matroid(bg_matroid, m);
      json args{{"w", vec_json(parse_csv_ints(bg_w))}};
      OwnedString out;
      check(tb_matroid_query(m.p, opname.c_str(), args.dump().c_str(), &out.p));
      emit(take_json(out));
    });
  }

  // ---- bundle ----
  auto* bundle_cmd = app.add_subcommand("bundle", "tropical toric vector bundle computations");
  bundle_cmd->require_subcommand(1);
  static BundleArgs bargs;
  static std::string b_u, b_L;
  static int b_i = 1, b_wall = 0, b_ray = 0;
  static long long b_t = 0;
  static bool b_all_choices = false, b_via_flats = false, b_no_vertices = false;

  auto simple_op = [&](const std::string& name, const std::string& op, const char* help) {
    auto* sub = bundle_cmd->add_subcommand(name, help);
    bargs.add_to(sub);
    sub->callback([op]() {
      BundleHandle b;
      bargs.load(b);
      OwnedString out;
      check(tb_bundle_query(b.p, op.c_str(), "{}", &out.p));
      emit(take_json(out));
    });
  };

  {
    auto* sub = bundle_cmd->add_subcommand("validate", "validate and show certificates");
    bargs.add_to(sub);
    sub->callback([]() {
      BundleHandle b;
      bargs.load(b);
      OwnedString out;
      check(tb_bundle_query(b.p, "info", "{}", &out.p));
      json j = take_json(out);
      if (g_format == "md") {
        render_diagram_md(j);
        std::cout << "\nvalid bundle of rank " << j["rank"] << "\n";
      } else {
        j["valid"] = true;
        emit(j);
      }
    });
  }
  {
    auto* sub = bundle_cmd->add_subcommand("sections", "section flat at a character");
    bargs.add_to(sub);
    sub->add_option("--u", b_u, "character, comma-separated")->required();
    sub->add_flag("--via-flats", b_via_flats, "use the flat-indicator decomposition");
    sub->callback([]() {
      BundleHandle b;
      bargs.load(b);
      json args{{"u", vec_json(parse_csv_ints(b_u))}};
      if (b_via_flats) args["via"] = "flats";
      OwnedString out;
      check(tb_bundle_query(b.p, "sections", args.dump().c_str(), &out.p));
      json j = take_json(out);
      if (g_format == "md" && j.contains("flat")) {
        emit_md_table({"u", "flat", "rank"},
                      {json::array({j["u"].dump(), j["flat"].dump(), j["rank"]})});
      } else {
        emit(j);
      }
    });
  }
  {
    auto* sub = bundle_cmd->add_subcommand("euler", "equivariant Euler characteristic at u");
    bargs.add_to(sub);
    sub->add_option("--u", b_u, "character, comma-separated")->required();
    sub->callback([]() {
      BundleHandle b;
      bargs.load(b);
      json args{{"u", vec_json(parse_csv_ints(b_u))}};
      OwnedString out;
      check(tb_bundle_query(b.p, "euler", args.dump().c_str(), &out.p));
      emit(take_json(out));
    });
  }
  simple_op("euler-total", "euler-total", "chi and h0 totals over the support box");
  {
    auto* sub = bundle_cmd->add_subcommand("chern", "equivariant Chern class");
    bargs.add_to(sub);
    sub->add_option("--i", b_i, "class index")->required();
    sub->callback([]() {
      BundleHandle b;
      bargs.load(b);
      json args{{"i", b_i}};
      OwnedString out;
      check(tb_bundle_query(b.p, "chern", args.dump().c_str(), &out.p));
      emit(take_json(out));
    });
  }
  simple_op("kclass", "kclass", "equivariant K-class (character multisets per cone)");
  simple_op("chern-character", "chern-character", "truncated equivariant Chern character");
  {
    auto* sub = bundle_cmd->add_subcommand("parliament", "parliament of polytopes");
    bargs.add_to(sub);
    sub->add_flag("--no-vertices", b_no_vertices, "omit vertex lists");
    sub->callback([]() {
      BundleHandle b;
      bargs.load(b);
      json args{{"vertices", !b_no_vertices}};
      OwnedString out;
      check(tb_bundle_query(b.p, "parliament", args.dump().c_str(), &out.p));
      emit(take_json(out));
    });
  }
  simple_op("gg", "gg", "global generation with per-cone certificates");
  simple_op("nef", "nef", "nef tri-state via wall sweeps");
  simple_op("ample", "ample", "ample tri-state via wall sweeps");
  simple_op("split", "split", "splitting over P1 (common adapted basis and degrees)");
  simple_op("walls", "walls", "wall list of the fan");
  {
    auto* sub = bundle_cmd->add_subcommand("klyachko", "Klyachko flat of a ray and threshold");
    bargs.add_to(sub);
    sub->add_option("--ray", b_ray, "ray index")->required();
    sub->add_option("--t", b_t, "threshold")->required();
    sub->callback([]() {
      BundleHandle b;
      bargs.load(b);
      json args{{"ray", b_ray}, {"t", b_t}};
      OwnedString out;
      check(tb_bundle_query(b.p, "klyachko", args.dump().c_str(), &out.p));
      emit(take_json(out));
    });
  }
  {
    auto* sub = bundle_cmd->add_subcommand("restrict", "restriction to a wall curve");
    bargs.add_to(sub);
    sub->add_option("--wall", b_wall, "wall index")->required();
    sub->add_flag("--all-choices", b_all_choices, "enumerate all adapted-basis choices");
    sub->callback([]() {
      BundleHandle b;
      bargs.load(b);
      OwnedString out;
      check(tb_bundle_restrict(b.p, b_wall, b_all_choices ? 1 : 0, &out.p));
      emit(take_json(out));
    });
  }
  {
    auto* sub = bundle_cmd->add_subcommand("twist", "tensor with a T-linearized line bundle");
    bargs.add_to(sub);
    sub->add_option("--L", b_L, "per-ray integers, comma-separated")->required();
    sub->callback([]() {
      BundleHandle b;
      bargs.load(b);
      BundleHandle t;
      check(tb_bundle_twist(b.p, vec_json(parse_csv_ints(b_L)).dump().c_str(), &t.p));
      OwnedString out;
      check(tb_bundle_to_json(t.p, &out.p));
      emit(take_json(out));
    });
  }
  {
    auto* sub = bundle_cmd->add_subcommand("n0", "ample twist threshold for chi = h0");
    bargs.add_to(sub);
    sub->add_option("--L", b_L, "ample line bundle, comma-separated")->required();
    sub->callback([]() {
      BundleHandle b;
      bargs.load(b);
      json args{{"L", vec_json(parse_csv_ints(b_L))}};
      OwnedString out;
      check(tb_bundle_query(b.p, "n0", args.dump().c_str(), &out.p));
      emit(take_json(out));
    });
  }

  // ---- taut ----
  auto* taut_cmd = app.add_subcommand("taut", "tautological bundles on the permutahedral variety");
  taut_cmd->require_subcommand(1);
  static std::string t_matroid, t_which;
  static bool t_force = false;
  {
    auto* sub = taut_cmd->add_subcommand("build", "build the tautological bundle");
    sub->add_option("--matroid", t_matroid, "name, JSON, or file")->required();
    sub->add_option("--which", t_which, "sub-dual|quotient")->default_val("sub-dual");
    sub->callback([]() {
      MatroidHandle m;
      load_matroid(t_matroid, m);
      BundleHandle b;
      check(tb_taut_build(m.p, t_which.c_str(), &b.p));
      OwnedString out;
      check(tb_bundle_to_json(b.p, &out.p));
      emit(take_json(out));
    });
  }
  {
    auto* sub = taut_cmd->add_subcommand("nef-sweep", "wall-by-wall splitting sweep");
    sub->add_option("--matroid", t_matroid, "name, JSON, or file")->required();
    sub->add_flag("--force", t_force, "allow ground sets larger than 6");
    sub->callback([]() {
      MatroidHandle m;
      load_matroid(t_matroid, m);
      OwnedString out;
      check(tb_taut_nef_sweep(m.p, t_force ? 1 : 0, &out.p));
      emit(take_json(out));
    });
  }

  // ---- ext ----
  auto* ext_cmd = app.add_subcommand("ext", "matroid extensions of bundles");
  ext_cmd->require_subcommand(1);
  static std::string e_file, e_map, e_candidates;
  static bool e_catalog = false;
  {
    auto* sub = ext_cmd->add_subcommand("push", "pushforward along an extension");
    sub->add_option("bundle", e_file, "bundle JSON file")->required();
    sub->add_option("--map", e_map, "extension JSON file")->required();
    sub->callback([]() {
      BundleHandle b;
      check(tb_bundle_create(read_input(e_file).c_str(), &b.p));
      BundleHandle p;
      check(tb_ext_push(b.p, read_input(e_map).c_str(), &p.p));
      OwnedString out;
      check(tb_bundle_to_json(p.p, &out.p));
      emit(take_json(out));
    });
  }
  {
    auto* sub = ext_cmd->add_subcommand("split-search", "bounded search for a splitting extension");
    sub->add_option("bundle", e_file, "bundle JSON file")->required();
    sub->add_option("--candidates", e_candidates, "JSON file with candidate extensions");
    sub->add_flag("--principal-catalog", e_catalog,
                  "use all principal extensions over the matroid's flats");
    sub->callback([]() {
      BundleHandle b;
      check(tb_bundle_create(read_input(e_file).c_str(), &b.p));
      std::string candidates = "[]";
      if (e_catalog)
        candidates = R"({"principal-catalog": true})";
      else if (!e_candidates.empty())
        candidates = read_input(e_candidates);
      OwnedString out;
      check(tb_ext_split_search(b.p, candidates.c_str(), &out.p));
      emit(take_json(out));
    });
  }
  {
    auto* sub = ext_cmd->add_subcommand("defect", "submodular-defect obstruction over P1");
    sub->add_option("bundle", e_file, "bundle JSON file")->required();
    sub->callback([]() {
      BundleHandle b;
      check(tb_bundle_create(read_input(e_file).c_str(), &b.p));
      OwnedString out;
      check(tb_ext_defect(b.p, &out.p));
      emit(take_json(out));
    });
  }

  // ---- examples ----
  auto* ex_cmd = app.add_subcommand("examples", "emit a shipped example bundle");
  static std::string ex_name;
  ex_cmd->add_option("name", ex_name, "fano-bundle|vamos-p1|u23-zero")->required();
  ex_cmd->callback([]() {
    OwnedString out;
    check(tb_example(ex_name.c_str(), &out.p));
    emit(take_json(out));
  });

  // ---- fan ----
  auto* fan_cmd = app.add_subcommand("fan", "fan queries");
  fan_cmd->require_subcommand(1);
  static std::string f_arg, f_support;
  static int f_cone = 0;
  for (const std::string op : {"info", "walls"}) {
    auto* sub = fan_cmd->add_subcommand(op, op + " of a fan");
    sub->add_option("fan", f_arg, "name, JSON, or file")->required();
    sub->callback([op]() {
      FanHandle f;
      check(tb_fan_create(load_spec(f_arg).c_str(), &f.p));
      OwnedString out;
      check(tb_fan_query(f.p, op.c_str(), "{}", &out.p));
      emit(take_json(out));
    });
  }
  {
    auto* sub = fan_cmd->add_subcommand("lattice-points", "lattice points of a support polytope");
    sub->add_option("fan", f_arg, "name, JSON, or file")->required();
    sub->add_option("--support", f_support, "per-ray bounds, comma-separated")->required();
    sub->callback([]() {
      FanHandle f;
      check(tb_fan_create(load_spec(f_arg).c_str(), &f.p));
      json args{{"support", vec_json(parse_csv_ints(f_support))}};
      OwnedString out;
      check(tb_fan_query(f.p, "lattice-points", args.dump().c_str(), &out.p));
      emit(take_json(out));
    });
  }
  {
    auto* sub =
        fan_cmd->add_subcommand("vertex", "vertex of a support polytope in a cone direction");
    sub->add_option("fan", f_arg, "name, JSON, or file")->required();
    sub->add_option("--support", f_support, "per-ray bounds, comma-separated")->required();
    sub->add_option("--cone", f_cone, "maximal cone index")->required();
    sub->callback([]() {
      FanHandle f;
      check(tb_fan_create(load_spec(f_arg).c_str(), &f.p));
      json args{{"support", vec_json(parse_csv_ints(f_support))}, {"cone", f_cone}};
      OwnedString out;
      check(tb_fan_query(f.p, "vertex-in-direction", args.dump().c_str(), &out.p));
      emit(take_json(out));
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
