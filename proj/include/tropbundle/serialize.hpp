#pragma once

#include <string>

#include "json.hpp"
#include "tropbundle/bundle.hpp"
#include "tropbundle/extension.hpp"
#include "tropbundle/tautological.hpp"

namespace tb {

using Json = nlohmann::json;

// Integers are emitted as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; rationals always as "p" / "p/q" strings.
Json json_int(const Int& v);
Int int_from_json(const Json& j);
Json json_vec(const VecI& v);
VecI vec_from_json(const Json& j);
Json json_mat(const MatI& m);
MatI mat_from_json(const Json& j);

Json matroid_to_json(const Matroid& m);
// Accepts {"ground","bases"|"circuits"|"matrix"[,"mod"]} or a named string.
Matroid matroid_from_json(const Json& j);

Json fan_to_json(const Fan& f);
Fan fan_from_json(const Json& j);

Json polyhedron_to_json(const Polyhedron& p, bool with_vertices = false);
Polyhedron polyhedron_from_json(const Json& j);

Json bundle_to_json(const TropicalBundle& b);
TropicalBundle bundle_from_json(const Json& j);

Json flag_to_json(const Matroid& m, const WeightedFlag& flag);
WeightedFlag flag_from_json(const Matroid& m, const Json& j);

ExtensionMap extension_from_json(const Json& j);
Json extension_to_json(const ExtensionMap& e);

Json section_report_to_json(const Matroid& m, const SectionReport& r);
Json nef_report_to_json(const TropicalBundle& b, const NefReport& r);
Json sweep_report_to_json(const NefSweepReport& r);
Json poly_to_json(const Poly& p);

// Shipped example bundles: "fano-bundle" | "vamos-p1" | "u23-zero".
Json example_bundle_json(const std::string& name);

}  // namespace tb
