#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tropbundle/fan.hpp"
#include "tropbundle/numeric.hpp"

namespace tb {

// Rational polyhedron { u : <u, normal_k> <= bound_k } in character space.
struct Polyhedron {
  MatI normals;
  VecI bounds;
};

// Polyhedron whose inequalities are indexed by the rays of a fan: one
// inequality <u, v_rho> <= support[rho] per ray.
Polyhedron from_support(const Fan& fan, const VecI& support);

bool contains(const Polyhedron& p, const VecI& u);

// Vertex of { <u, v_rho> <= support[rho] } in the direction of a maximal
// cone: the unimodular solve over sigma(1), accepted iff it satisfies the
// remaining inequalities.
std::optional<VecI> vertex_in_direction(const Fan& fan, const VecI& support, int max_cone_idx);

// True iff the polytope of `support` has outer normal fan exactly `fan`:
// every cone vertex is feasible and the support function is strictly convex
// across every wall.
bool has_normal_fan(const Fan& fan, const VecI& support);

// Integer bounding box of { <u, v_rho> <= support[rho] } obtained from
// positive ray combinations of the +/- coordinate directions.
std::pair<VecI, VecI> bounding_box(const Fan& fan, const VecI& support);

// All lattice points, in lexicographic order.  The fan-backed variant uses
// the support bounding box; the standalone variant derives per-coordinate
// bounds by Fourier-Motzkin elimination and reports UnboundedPolyhedron.
std::vector<VecI> lattice_points(const Fan& fan, const VecI& support);
std::vector<VecI> lattice_points(const Polyhedron& p);

// Vertices of a (bounded) polyhedron by exhaustive d-subset solves; vertices
// may be rational.
std::vector<VecQ> vertices(const Polyhedron& p);

}  // namespace tb
