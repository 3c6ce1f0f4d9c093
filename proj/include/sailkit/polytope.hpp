#pragma once

#include <string>
#include <vector>

#include "sailkit/field.hpp"
#include "sailkit/intlinalg.hpp"

namespace sailkit {

// Convex hull of integral points of K under the Minkowski embedding. The
// vertex list may contain non-extreme lattice points (the face lists of the
// source constructions do); geometric predicates use the hull.
struct IntegerPolytope {
    FieldPtr field;
    std::vector<FieldElement> vertices;  // integral, deduplicated, sorted
    int dim = -1;                        // affine dimension
};

IntegerPolytope make_polytope(FieldPtr field, std::vector<FieldElement> verts);

// Affine chart identifying the saturated lattice of the polytope's plane
// with Z^dim: x  |->  coordinates of (x - origin) in `basis`.
struct LatticeChart {
    FieldPtr field;
    FieldElement origin;
    std::vector<FieldElement> basis;
    IMat basis_rows;  // integral coordinates of the basis, as rows

    std::vector<Int> to_chart(const FieldElement& x) const;
    FieldElement from_chart(const std::vector<Int>& c) const;
};

LatticeChart face_chart(const IntegerPolytope& S);
// Chart over a caller-supplied basis; throws unless the basis spans the
// saturated direction lattice (i.e. the corresponding simplex is unimodular).
LatticeChart chart_with_basis(const IntegerPolytope& S, const FieldElement& origin,
                              const std::vector<FieldElement>& basis);

// Integer volume of a simplex: index of the edge-vector lattice in the
// saturated lattice of its span.
Int integer_volume(const IntegerPolytope& simplex);

// Integer distance of the affine hull from the origin (0 if it meets it).
Int integer_distance(const IntegerPolytope& S);

struct CodifferentFunctional {
    FieldElement delta;  // primitive functional in the codifferent
    Int level;           // k with Tr(delta * v) = k on the plane; equals ID
};

// For a hyperplane section (dim n-1, origin not in the affine hull).
CodifferentFunctional codifferent_functional(const IntegerPolytope& S);

struct SailCertificate {
    bool certified = false;
    FieldElement delta;
    Int level = 0;
    std::string reason;  // set when not certified; not a non-membership proof
};

SailCertificate certify_on_sail(const IntegerPolytope& S);

// All lattice points of the polytope (dim <= 3).
std::vector<FieldElement> lattice_points(const IntegerPolytope& S);

struct Triangulation {
    std::vector<FieldElement> points;             // lattice points used
    std::vector<std::vector<size_t>> simplices;   // index tuples into points
    std::vector<Int> volumes;                     // IV of each simplex
    bool unimodular = false;
    Int total_volume = 0;
};

// dim 2: triangulation on all lattice points, always unimodular.
// dim 3: incremental lattice-point insertion; unimodularity is reported,
// failure to reach it is not a proof that none exists.
Triangulation triangulate(const IntegerPolytope& S);

bool is_unimodular(const Triangulation& T);

// Integer volume of a full polytope via triangulation additivity.
Int polytope_integer_volume(const IntegerPolytope& S);

struct TriangulationCheck {
    bool valid = false;
    bool unimodular = false;
    Int total_volume = 0;
    std::string detail;
};

// Validates a supplied decomposition: simplices of full face dimension with
// vertices among the polytope's lattice points whose volumes add up to the
// polytope's integer volume (which forces interior-disjointness).
TriangulationCheck validate_triangulation(
    const IntegerPolytope& S, const std::vector<std::vector<FieldElement>>& simplices);

// The 2-faces of a 3-polytope; each facet lists *all* lattice points of the
// polytope lying on its supporting plane, sorted canonically.
std::vector<IntegerPolytope> facets(const IntegerPolytope& S);

// Boundary and interior lattice point counts of a 2-face (Pick's formula).
struct FaceCounts {
    Int boundary, interior;
};
FaceCounts lattice_points_on_face(const IntegerPolytope& S);

struct ParallelepipedCount {
    Int count;        // #(O_K^+ cap P) = IV * ID - 1
    Int iv, id;       // of the spanning simplex
    bool enumerated;  // true when the direct enumeration cross-check ran
};

// Count of totally positive lattice points in the half-open parallelepiped
// spanned by the vertices of a full-rank simplex (n vertices, dim n-1).
ParallelepipedCount parallelepiped_lattice_count(const IntegerPolytope& simplex,
                                                 bool enumerate = true,
                                                 const Int& cap = Int(100000000));

}  // namespace sailkit
