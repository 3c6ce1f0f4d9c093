#include "sailkit/indecomp.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sailkit/cfrac.hpp"
#include "sailkit/error.hpp"

namespace sailkit {

bool is_totally_positive_unit(const Field& K, const FieldElement& q) {
    if (q.is_zero() || !K.is_unit(q)) return false;
    return K.totally_positive(q);
}

bool same_unit_class(const FieldElement& a, const FieldElement& b) {
    if (b.is_zero()) return a.is_zero();
    return is_totally_positive_unit(a.field(), a / b);
}

std::vector<FieldElement> parallelepiped_points(const IntegerPolytope& simplex,
                                                const Int& cap) {
    unsigned n = simplex.field->degree();
    if (simplex.vertices.size() != n || simplex.dim != static_cast<int>(n) - 1)
        throw SailError(Err::NotASimplex, "need n vertices spanning a hyperplane simplex");
    const unsigned bits = 64;
    Box box;
    for (unsigned i = 0; i < n; ++i) {
        RatIv acc(Rat(0));
        for (const auto& v : simplex.vertices)
            acc = acc + simplex.field->embedding_iv(v, i, bits);
        box.lo.push_back(Rat(0));
        box.hi.push_back(acc.hi + 1);
    }
    // lambda coordinates relative to the vertex basis
    std::vector<std::vector<Rat>> pos(n);
    for (unsigned k = 0; k < n; ++k) pos[k] = simplex.field->integral_coords(simplex.vertices[k]);
    std::vector<FieldElement> out;
    for (const auto& beta : simplex.field->enumerate_integers_in_box(box, cap)) {
        auto c = simplex.field->integral_coords(beta);
        std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n + 1));
        for (unsigned i = 0; i < n; ++i) {
            for (unsigned k = 0; k < n; ++k) A[i][k] = pos[k][i];
            A[i][n] = c[i];
        }
        bool ok = true;
        for (unsigned col = 0; col < n && ok; ++col) {
            unsigned piv = col;
            while (piv < n && A[piv][col] == 0) ++piv;
            if (piv == n) {
                ok = false;
                break;
            }
            std::swap(A[piv], A[col]);
            Rat ip = 1 / A[col][col];
            for (unsigned cc = col; cc <= n; ++cc) A[col][cc] *= ip;
            for (unsigned r = 0; r < n; ++r) {
                if (r == col || A[r][col] == 0) continue;
                Rat f = A[r][col];
                for (unsigned cc = col; cc <= n; ++cc) A[r][cc] -= f * A[col][cc];
            }
        }
        if (!ok) throw SailError(Err::NotASimplex, "vertices linearly dependent");
        bool in_p = true;
        for (unsigned k = 0; k < n; ++k)
            if (A[k][n] < 0 || A[k][n] >= 1) in_p = false;
        if (in_p) out.push_back(beta);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_indecomposable(const FieldElement& alpha, const Int& cap) {
    const Field& K = alpha.field();
    if (!K.is_integral(alpha) || !K.totally_positive(alpha))
        throw SailError(Err::InvalidArgument,
                        "indecomposability is defined for totally positive integers");
    unsigned n = K.degree();
    Box box;
    for (unsigned i = 0; i < n; ++i) {
        box.lo.push_back(Rat(0));
        box.hi.push_back(K.embedding_iv(alpha, i, 64).hi);
    }
    for (const auto& beta : K.enumerate_integers_in_box(box, cap)) {
        if (!K.totally_positive(beta)) continue;
        FieldElement rest = alpha - beta;
        if (!rest.is_zero() && K.totally_positive(rest)) return false;
    }
    return true;
}

namespace {

// class bookkeeping: one representative per totally-positive-unit orbit,
// bucketed by the (unit-invariant) norm
struct ClassSet {
    const Field* K;
    std::map<Rat, std::vector<FieldElement>> by_norm;

    // returns the representative of alpha's class, inserting if new; the
    // kept representative is the smallest (trace, coords) associate seen
    FieldElement* find(const FieldElement& alpha) {
        auto& bucket = by_norm[K->norm(alpha)];
        for (auto& rep : bucket)
            if (same_unit_class(alpha, rep)) return &rep;
        return nullptr;
    }
    void insert(const FieldElement& alpha) {
        if (FieldElement* rep = find(alpha)) {
            if (std::make_pair(K->trace(alpha), alpha.coords()) <
                std::make_pair(K->trace(*rep), rep->coords()))
                *rep = alpha;
            return;
        }
        by_norm[K->norm(alpha)].push_back(alpha);
    }
    std::vector<FieldElement> reps() const {
        std::vector<FieldElement> out;
        for (const auto& [nrm, bucket] : by_norm)
            for (const auto& r : bucket) out.push_back(r);
        std::sort(out.begin(), out.end());
        return out;
    }
};

// int64 scan of 0 < tau1, tau2 < B over a quadratic field; elements are
// (p + q sqrt D)/2 with the parity rule of the integral basis
std::vector<FieldElement> quadratic_positive_cube(const Field& K, long B) {
    long D = K.descriptor().d1.get_si();
    bool half = K.descriptor().d1 % 4 == 1;
    std::vector<FieldElement> out;
    long qmax = static_cast<long>(2.0 * B / std::sqrt(static_cast<double>(D))) + 2;
    for (long q = -qmax; q <= qmax; ++q) {
        // p > sqrt(q^2 D), p < 2B - sqrt(q^2 D)
        Int q2d = Int(q) * Int(q) * Int(D);
        Int pmin_i = isqrt(q2d) + 1;
        long pmin = pmin_i.get_si();
        long pmax = 2 * B - pmin;
        for (long p = pmin; p <= pmax; ++p) {
            if (half) {
                if (((p - q) % 2 + 2) % 2 != 0) continue;
            } else {
                if (p % 2 != 0 || q % 2 != 0) continue;
            }
            out.push_back(K.element({ratq(p, 2), ratq(q, 2)}));
        }
    }
    return out;
}

std::vector<FieldElement> positive_cube(const Field& K, const Int& B, const Int& cap) {
    if (K.kind() == FieldKind::Quadratic && B < (Int(1) << 20))
        return quadratic_positive_cube(K, B.get_si());
    Box box;
    for (unsigned i = 0; i < K.degree(); ++i) {
        box.lo.push_back(Rat(0));
        box.hi.push_back(Rat(B));
    }
    std::vector<FieldElement> out;
    for (auto& a : K.enumerate_integers_in_box(box, cap))
        if (K.totally_positive(a)) out.push_back(std::move(a));
    return out;
}

bool class_sets_equal(const Field& K, const std::vector<FieldElement>& a,
                      const std::vector<FieldElement>& b) {
    if (a.size() != b.size()) return false;
    (void)K;
    for (const auto& x : a) {
        bool hit = false;
        for (const auto& y : b)
            if (same_unit_class(x, y)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

}  // namespace

IotaResult iota_bruteforce(FieldPtr K, Int initial_bound, Int max_bound, const Int& cap) {
    std::vector<FieldElement> prev;
    bool have_prev = false;
    // indecomposability results carried across rounds, keyed by class
    std::vector<std::pair<FieldElement, bool>> verdicts;
    for (Int B = initial_bound; B <= max_bound; B *= 2) {
        ClassSet classes{K.get(), {}};
        for (const auto& a : positive_cube(*K, B, cap)) classes.insert(a);
        std::vector<FieldElement> indecomposable_reps;
        for (const auto& rep : classes.reps()) {
            bool known = false, value = false;
            for (const auto& [e, v] : verdicts)
                if (same_unit_class(e, rep)) {
                    known = true;
                    value = v;
                    break;
                }
            if (!known) {
                value = is_indecomposable(rep, cap);
                verdicts.emplace_back(rep, value);
            }
            if (value) indecomposable_reps.push_back(rep);
        }
        if (have_prev && class_sets_equal(*K, indecomposable_reps, prev)) {
            IndecomposableSet set;
            set.field = K;
            set.representatives = indecomposable_reps;
            set.method = "bruteforce";
            set.unit_domain =
                "minimal-trace associates; embeddings scanned below " + B.get_str();
            set.complete = false;
            set.verified_bound = B;
            return {Int(indecomposable_reps.size()), std::move(set)};
        }
        prev = std::move(indecomposable_reps);
        have_prev = true;
    }
    throw SailError(Err::BoxTooLarge,
                    "class set did not stabilize below bound " + max_bound.get_str());
}

IotaResult iota_continued_fraction(FieldPtr K) {
    ContinuedFraction cf(K);
    auto set = cf.indecomposables();
    IndecomposableSet out;
    out.field = K;
    out.representatives = set.reps;
    out.method = "continued_fraction";
    out.unit_domain = "upper semiconvergents over one period of the totally "
                      "positive unit action";
    out.complete = true;
    return {Int(out.representatives.size()), std::move(out)};
}

IotaResult iota_sail_certified(FieldPtr K, const std::vector<IntegerPolytope>& faces,
                               bool closure_established) {
    if (faces.empty()) throw SailError(Err::IncompleteSailData, "no faces supplied");
    if (!closure_established)
        throw SailError(Err::IncompleteSailData,
                        "face-matching closure has not been established");
    ClassSet classes{K.get(), {}};
    for (const auto& face : faces) {
        auto cert = certify_on_sail(face);
        auto pts = lattice_points(face);
        for (const auto& p : pts) {
            if (cert.certified) {
                // Tr(delta p) = 1 with delta totally positive proves
                // indecomposability outright
                if (K->trace(cert.delta * p) != 1)
                    throw SailError(Err::IncompleteSailData,
                                    "face point off the certificate plane");
            } else if (!is_indecomposable(p)) {
                throw SailError(Err::IncompleteSailData,
                                "face lattice point is decomposable");
            }
            classes.insert(p);
        }
        // off-face contributions
        bool interior_possible = true;
        if (cert.certified) {
            auto tri = triangulate(face);
            if (tri.unimodular) interior_possible = false;  // Thm-2.8 style count 0
        }
        if (interior_possible) {
            if (K->degree() != 3)
                throw SailError(Err::IncompleteSailData,
                                "cannot certify interior count for face of " +
                                    face.vertices[0].str());
            auto tri = triangulate(face);
            for (const auto& s : tri.simplices) {
                std::vector<FieldElement> corners;
                for (size_t ix : s) corners.push_back(tri.points[ix]);
                auto piece = make_polytope(K, corners);
                for (const auto& p : parallelepiped_points(piece)) {
                    // skip the points lying on the face itself
                    bool on_face = false;
                    for (const auto& q : pts)
                        if (q == p) on_face = true;
                    if (on_face) continue;
                    if (!is_indecomposable(p))
                        throw SailError(Err::IncompleteSailData,
                                        "parallelepiped point is decomposable");
                    classes.insert(p);
                }
            }
        }
    }
    IndecomposableSet out;
    out.field = K;
    out.representatives = classes.reps();
    out.method = "sail_certified";
    out.unit_domain = "lattice points of the supplied fundamental faces";
    out.complete = true;
    return {Int(out.representatives.size()), std::move(out)};
}

IotaIntBound iota_int_bound(const IntegerPolytope& face, size_t simplex_count,
                            bool unimodular) {
    Int id = integer_distance(face);
    Int iv = polytope_integer_volume(face);
    IotaIntBound out{id * iv - Int(simplex_count), id == 1 && unimodular};
    if (out.all_on_face) out.bound = 0;
    return out;
}

Int iota_int_exact_cubic(const IntegerPolytope& face, bool verify) {
    if (face.field->degree() != 3)
        throw SailError(Err::WrongDegree, "exact interior count needs a cubic field");
    Int id = integer_distance(face);
    Int iv = polytope_integer_volume(face);
    Int expect = (id - 1) * iv;
    if (!verify) return expect;
    auto tri = triangulate(face);  // 2-faces always admit one
    auto face_pts = lattice_points(face);
    Int found = 0;
    for (const auto& s : tri.simplices) {
        std::vector<FieldElement> corners;
        for (size_t ix : s) corners.push_back(tri.points[ix]);
        auto piece = make_polytope(face.field, corners);
        for (const auto& p : parallelepiped_points(piece)) {
            bool on_face = false;
            for (const auto& q : face_pts)
                if (q == p) on_face = true;
            if (on_face) continue;
            if (!is_indecomposable(p))
                throw SailError(Err::DegenerateInput,
                                "parallelepiped point is decomposable");
            ++found;
        }
    }
    if (found != expect)
        throw SailError(Err::DegenerateInput,
                        "interior count mismatch: formula " + expect.get_str() +
                            ", enumerated " + found.get_str());
    return expect;
}

Int universal_rank_bound(const Int& iota, const Int& pythagoras_s, unsigned degree,
                         unsigned sgnrk) {
    if (pythagoras_s < 1 || sgnrk < 1 || sgnrk > degree)
        throw SailError(Err::InvalidArgument, "bad rank bound parameters");
    Int two_pow = Int(1) << (degree - sgnrk);
    return two_pow * pythagoras_s * iota;
}

}  // namespace sailkit
