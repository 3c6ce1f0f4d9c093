#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sailkit/polytope.hpp"

namespace sailkit {

// q is an element of O_K^x with signature zero
bool is_totally_positive_unit(const Field& K, const FieldElement& q);
// alpha and beta differ by a totally positive unit
bool same_unit_class(const FieldElement& a, const FieldElement& b);

// Nonzero lattice points of the half-open parallelepiped spanned by the n
// vertices of a full-rank simplex; all of them are totally positive.
std::vector<FieldElement> parallelepiped_points(const IntegerPolytope& simplex,
                                                const Int& cap = Int(100000000));

// alpha in O_K^+ with no decomposition alpha = beta + gamma, beta, gamma >> 0.
// Decided by enumerating O_K^+ inside the open box (0, tau_i(alpha)).
bool is_indecomposable(const FieldElement& alpha, const Int& cap = Int(100000000));

enum class IotaStrategy { Bruteforce, ContinuedFraction, SailCertified };

struct IndecomposableSet {
    FieldPtr field;
    std::vector<FieldElement> representatives;  // pairwise non-associate
    std::string method;
    std::string unit_domain;
    bool complete = false;   // certified complete vs desk-verified
    Int verified_bound = 0;  // brute force: embeddings scanned below this
};

struct IotaResult {
    Int count;
    IndecomposableSet set;
};

// Enumerates all totally positive integers with embeddings below B, reduces
// modulo totally positive units, keeps the indecomposable classes, and
// doubles B until the class set stabilizes across one doubling.
IotaResult iota_bruteforce(FieldPtr K, Int initial_bound = 4,
                           Int max_bound = Int(1) << 15,
                           const Int& cap = Int(100000000));

IotaResult iota_continued_fraction(FieldPtr K);  // quadratic fields

// Counts indecomposables from a complete list of sail faces (one fundamental
// face per unit orbit): classes of face lattice points plus, for cubic
// fields, the off-face parallelepiped elements. Faces whose certificates
// fail must be covered by the cubic exact count, otherwise the data is
// incomplete. `closure_established` records that the caller verified the
// face-matching closure.
IotaResult iota_sail_certified(FieldPtr K, const std::vector<IntegerPolytope>& faces,
                               bool closure_established);

struct IotaIntBound {
    Int bound;         // ID*IV - k for a decomposition into k simplices
    bool all_on_face;  // ID = 1 with a unimodular triangulation
};

IotaIntBound iota_int_bound(const IntegerPolytope& face, size_t simplex_count,
                            bool unimodular);

// Exact interior count (ID - 1) * IV for a 2-face of a cubic sail; when
// `verify` is set the off-face parallelepiped elements are enumerated and
// individually checked indecomposable.
Int iota_int_exact_cubic(const IntegerPolytope& face, bool verify = true);

// R_cls(K) <= 2^(n - sgnrk) * s * iota
Int universal_rank_bound(const Int& iota, const Int& pythagoras_s, unsigned degree,
                         unsigned sgnrk);

}  // namespace sailkit
