#include "sailkit/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "sailkit/error.hpp"

namespace sailkit {

namespace {

using Vec = std::vector<Int>;

Vec vsub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Int vdot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec cross3(const Vec& a, const Vec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

bool vzero(const Vec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

void vreduce(Vec& a) {
    Int g = 0;
    for (const auto& x : a) g = gcd(g, x);
    if (g > 1)
        for (auto& x : a) x /= g;
}

Vec vneg(Vec a) {
    for (auto& x : a) x = -x;
    return a;
}

IMat vertex_rows(const IntegerPolytope& S) {
    IMat rows;
    for (const auto& v : S.vertices) {
        auto c = S.field->integral_coords(v);
        Vec r;
        for (const auto& q : c) {
            if (q.get_den() != 1)
                throw SailError(Err::DegenerateInput, "non-integral vertex");
            r.push_back(q.get_num());
        }
        rows.push_back(r);
    }
    return rows;
}

IMat difference_rows(const IMat& pos) {
    IMat rows;
    for (size_t i = 1; i < pos.size(); ++i) rows.push_back(vsub(pos[i], pos[0]));
    return rows;
}

// Supporting halfspace {x : n.x >= c} of a point set in chart coordinates,
// kept only when the support spans a facet (affine dimension dim-1).
struct HalfSpace {
    Vec n;
    Int c;
    std::vector<size_t> support;
};

std::vector<HalfSpace> hull_facets_chart(const std::vector<Vec>& pts, int dim) {
    std::set<std::pair<std::vector<std::string>, std::string>> seen;
    std::vector<HalfSpace> out;
    auto consider = [&](Vec n, size_t anchor) {
        if (vzero(n)) return;
        vreduce(n);
        Int c = vdot(n, pts[anchor]);
        bool below = false, above = false;
        for (const auto& p : pts) {
            int s = sgn(Int(vdot(n, p) - c));
            if (s < 0) below = true;
            if (s > 0) above = true;
        }
        if (below && above) return;
        if (below) {
            n = vneg(n);
            c = -c;
        }
        HalfSpace h{n, c, {}};
        for (size_t i = 0; i < pts.size(); ++i)
            if (vdot(n, pts[i]) == c) h.support.push_back(i);
        IMat diffs;
        for (size_t k = 1; k < h.support.size(); ++k)
            diffs.push_back(vsub(pts[h.support[k]], pts[h.support[0]]));
        if (diffs.empty() || imat_rank(diffs) != static_cast<unsigned>(dim - 1)) return;
        std::vector<std::string> key;
        for (const auto& x : h.n) key.push_back(x.get_str());
        if (!seen.emplace(key, h.c.get_str()).second) return;
        out.push_back(std::move(h));
    };
    size_t m = pts.size();
    if (dim == 2) {
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                Vec d = vsub(pts[j], pts[i]);
                consider({-d[1], d[0]}, i);
            }
    } else if (dim == 3) {
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j)
                for (size_t k = j + 1; k < m; ++k)
                    consider(cross3(vsub(pts[j], pts[i]), vsub(pts[k], pts[i])), i);
    } else {
        throw SailError(Err::UnsupportedDimension, "hull for dim 2 or 3 only");
    }
    return out;
}

bool inside_hull(const std::vector<HalfSpace>& hs, const Vec& x) {
    for (const auto& h : hs)
        if (vdot(h.n, x) < h.c) return false;
    return true;
}

Int simplex_chart_volume(const std::vector<Vec>& pts, const std::vector<size_t>& ix) {
    size_t d = ix.size() - 1;
    IMat m;
    for (size_t k = 1; k <= d; ++k) m.push_back(vsub(pts[ix[k]], pts[ix[0]]));
    if (d != pts[ix[0]].size())
        throw SailError(Err::DegenerateInput, "volume of a non-full simplex");
    return abs(imat_det(m));
}

bool chart_affinely_independent(const std::vector<Vec>& pts,
                                const std::vector<size_t>& ix) {
    IMat m;
    for (size_t k = 1; k < ix.size(); ++k) m.push_back(vsub(pts[ix[k]], pts[ix[0]]));
    return imat_rank(m) == ix.size() - 1;
}

// closure membership of x in a nondegenerate simplex, by barycentric signs
bool simplex_contains(const std::vector<Vec>& pts, const std::vector<size_t>& ix,
                      const Vec& x) {
    size_t d = ix.size() - 1;
    IMat base;
    for (size_t k = 1; k <= d; ++k) base.push_back(vsub(pts[ix[k]], pts[ix[0]]));
    Int orient = imat_det(base);
    if (orient == 0) throw SailError(Err::DegenerateInput, "flat simplex");
    int so = sgn(orient);
    for (size_t r = 0; r <= d; ++r) {
        IMat m;
        for (size_t k = 1; k <= d; ++k) {
            const Vec& a = (k == r) ? x : pts[ix[k]];
            const Vec& b = (r == 0) ? x : pts[ix[0]];
            m.push_back(vsub(a, b));
        }
        Int dd = imat_det(m);
        if (sgn(dd) != 0 && sgn(dd) != so) return false;
    }
    return true;
}

std::vector<size_t> sorted_face(std::vector<size_t> f) {
    std::sort(f.begin(), f.end());
    return f;
}

}  // namespace

IntegerPolytope make_polytope(FieldPtr field, std::vector<FieldElement> verts) {
    if (verts.empty()) throw SailError(Err::DegenerateInput, "empty vertex list");
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    IntegerPolytope S{std::move(field), std::move(verts), -1};
    for (const auto& v : S.vertices)
        if (!S.field->is_integral(v))
            throw SailError(Err::DegenerateInput, "vertex is not an algebraic integer");
    IMat pos = vertex_rows(S);
    IMat diffs = difference_rows(pos);
    S.dim = diffs.empty() ? 0 : static_cast<int>(imat_rank(diffs));
    return S;
}

std::vector<Int> LatticeChart::to_chart(const FieldElement& x) const {
    auto cx = field->integral_coords(x - origin);
    Vec row;
    for (const auto& q : cx) {
        if (q.get_den() != 1)
            throw SailError(Err::DegenerateInput, "point is not a lattice point");
        row.push_back(q.get_num());
    }
    IMat sol = express_in_basis({row}, basis_rows);
    return sol[0];
}

FieldElement LatticeChart::from_chart(const std::vector<Int>& c) const {
    FieldElement x = origin;
    for (size_t i = 0; i < basis.size(); ++i) x = x + basis[i] * Rat(c[i]);
    return x;
}

LatticeChart face_chart(const IntegerPolytope& S) {
    IMat pos = vertex_rows(S);
    IMat sat = saturate_rows(difference_rows(pos));
    LatticeChart ch{S.field, S.vertices[0], {}, sat};
    for (const auto& row : sat)
        ch.basis.push_back(S.field->from_integral_coords(row));
    return ch;
}

LatticeChart chart_with_basis(const IntegerPolytope& S, const FieldElement& origin,
                              const std::vector<FieldElement>& basis) {
    IMat rows;
    for (const auto& b : basis) {
        auto c = S.field->integral_coords(b);
        Vec r;
        for (const auto& q : c) {
            if (q.get_den() != 1)
                throw SailError(Err::DegenerateInput, "chart basis not integral");
            r.push_back(q.get_num());
        }
        rows.push_back(r);
    }
    if (lattice_index_in_saturation(rows) != 1)
        throw SailError(Err::DegenerateInput, "chart basis is not unimodular");
    LatticeChart ch{S.field, origin, basis, rows};
    for (const auto& v : S.vertices) (void)ch.to_chart(v);  // must lie in the chart
    return ch;
}

Int integer_volume(const IntegerPolytope& simplex) {
    if (simplex.dim < 0) throw SailError(Err::DegenerateInput, "uninitialized polytope");
    if (simplex.vertices.size() != static_cast<size_t>(simplex.dim) + 1)
        throw SailError(Err::NotASimplex, "need dim+1 affinely independent vertices");
    if (simplex.dim == 0) return 1;
    IMat pos = vertex_rows(simplex);
    return lattice_index_in_saturation(difference_rows(pos));
}

Int integer_distance(const IntegerPolytope& S) {
    IMat pos = vertex_rows(S);
    IMat diffs = difference_rows(pos);
    unsigned dim_diff = diffs.empty() ? 0 : imat_rank(diffs);
    unsigned dim_span = imat_rank(pos);
    if (dim_span == dim_diff) return 0;  // affine hull passes through the origin
    IMat m = saturate_rows(diffs);
    m.insert(m.begin(), pos[0]);
    IMat sat = saturate_rows(m);
    IMat coords = express_in_basis(m, sat);
    return abs(imat_det(coords));
}

CodifferentFunctional codifferent_functional(const IntegerPolytope& S) {
    unsigned n = S.field->degree();
    if (S.dim != static_cast<int>(n) - 1)
        throw SailError(Err::DegeneratePlane, "need a hyperplane section (dim n-1)");
    IMat pos = vertex_rows(S);
    if (imat_rank(pos) != n)
        throw SailError(Err::DegeneratePlane, "affine hull passes through the origin");
    std::vector<size_t> chosen;
    IMat acc;
    for (size_t i = 0; i < pos.size() && chosen.size() < n; ++i) {
        acc.push_back(pos[i]);
        if (imat_rank(acc) == acc.size())
            chosen.push_back(i);
        else
            acc.pop_back();
    }
    if (chosen.size() != n)
        throw SailError(Err::DegeneratePlane, "vertex set does not span");
    // solve Tr(delta * v_i) = 1 over the radical coordinates of delta
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n + 1));
    for (unsigned r = 0; r < n; ++r) {
        for (unsigned k = 0; k < n; ++k) {
            std::vector<Rat> ek(n, Rat(0));
            ek[k] = 1;
            A[r][k] = S.field->trace(S.field->element(ek) * S.vertices[chosen[r]]);
        }
        A[r][n] = 1;
    }
    for (unsigned col = 0; col < n; ++col) {
        unsigned piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) throw SailError(Err::DegeneratePlane, "singular trace system");
        std::swap(A[piv], A[col]);
        Rat ip = 1 / A[col][col];
        for (unsigned c = col; c <= n; ++c) A[col][c] *= ip;
        for (unsigned r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            Rat f = A[r][col];
            for (unsigned c = col; c <= n; ++c) A[r][c] -= f * A[col][c];
        }
    }
    std::vector<Rat> x(n);
    for (unsigned i = 0; i < n; ++i) x[i] = A[i][n];
    FieldElement dhat = S.field->element(x);
    for (const auto& v : S.vertices)
        if (S.field->trace(dhat * v) != 1)
            throw SailError(Err::DegeneratePlane, "vertices are not coplanar");
    // scale by the minimal positive trace value over O_K
    Rat g(0);
    for (const auto& b : S.field->integral_basis())
        g = rat_gcd(g, S.field->trace(dhat * b));
    FieldElement delta = dhat * (1 / g);
    Rat level = 1 / g;
    if (level.get_den() != 1 || level <= 0)
        throw SailError(Err::DegeneratePlane, "non-integral level");
    if (!S.field->is_in_codifferent(delta))
        throw SailError(Err::DegeneratePlane, "functional escaped the codifferent");
    return {delta, Int(level.get_num())};
}

SailCertificate certify_on_sail(const IntegerPolytope& S) {
    SailCertificate cert;
    cert.delta = S.field->zero();
    for (const auto& v : S.vertices) {
        if (!S.field->totally_positive(v)) {
            cert.reason = "vertex " + v.str() + " is not totally positive";
            return cert;
        }
    }
    if (S.dim != static_cast<int>(S.field->degree()) - 1) {
        cert.reason = "not a hyperplane section";
        return cert;
    }
    CodifferentFunctional f;
    try {
        f = codifferent_functional(S);
    } catch (const SailError& e) {
        cert.reason = e.what();
        return cert;
    }
    cert.delta = f.delta;
    cert.level = f.level;
    if (f.level != 1) {
        cert.reason = "plane sits at trace level " + f.level.get_str();
        return cert;
    }
    if (!S.field->totally_positive(f.delta)) {
        cert.reason = "codifferent functional is not totally positive";
        return cert;
    }
    cert.certified = true;
    return cert;
}

std::vector<FieldElement> lattice_points(const IntegerPolytope& S) {
    if (S.dim == 0) return S.vertices;
    LatticeChart ch = face_chart(S);
    std::vector<Vec> pts;
    for (const auto& v : S.vertices) pts.push_back(ch.to_chart(v));
    std::vector<FieldElement> out;
    if (S.dim == 1) {
        Int lo = pts[0][0], hi = pts[0][0];
        for (const auto& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        for (Int t = lo; t <= hi; ++t) out.push_back(ch.from_chart({t}));
        std::sort(out.begin(), out.end());
        return out;
    }
    if (S.dim > 3)
        throw SailError(Err::UnsupportedDimension, "lattice points for dim <= 3");
    auto hs = hull_facets_chart(pts, S.dim);
    Vec lo = pts[0], hi = pts[0];
    for (const auto& p : pts)
        for (size_t i = 0; i < p.size(); ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    Vec cur(S.dim);
    std::function<void(int)> rec = [&](int level) {
        if (level == S.dim) {
            if (inside_hull(hs, cur)) out.push_back(ch.from_chart(cur));
            return;
        }
        for (Int v = lo[level]; v <= hi[level]; ++v) {
            cur[static_cast<size_t>(level)] = v;
            rec(level + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// triangulations
// ---------------------------------------------------------------------------

namespace {

// fan triangles from `apex` over the boundary chains that avoid it; the
// chains are the supporting edges with their collinear points ordered
std::vector<std::vector<size_t>> fan_over_edges(const std::vector<Vec>& pts,
                                                const std::vector<HalfSpace>& edges,
                                                size_t apex) {
    std::vector<std::vector<size_t>> tris;
    for (const auto& e : edges) {
        bool has_apex = false;
        for (size_t s : e.support)
            if (s == apex) has_apex = true;
        if (has_apex) continue;
        std::vector<size_t> sup = e.support;
        Vec d = vsub(pts[sup.back()], pts[sup.front()]);
        std::sort(sup.begin(), sup.end(), [&](size_t a, size_t b) {
            return vdot(d, pts[a]) < vdot(d, pts[b]);
        });
        for (size_t k = 0; k + 1 < sup.size(); ++k) {
            std::vector<size_t> tri = {apex, sup[k], sup[k + 1]};
            if (chart_affinely_independent(pts, tri)) tris.push_back(tri);
        }
    }
    return tris;
}

std::vector<std::vector<size_t>> triangulate_chart(const std::vector<Vec>& vertex_pts,
                                                   const std::vector<Vec>& all_pts,
                                                   int dim) {
    std::map<Vec, size_t> index;
    for (size_t i = 0; i < all_pts.size(); ++i) index[all_pts[i]] = i;
    auto ix_of = [&](const Vec& p) {
        auto it = index.find(p);
        if (it == index.end())
            throw SailError(Err::DegenerateInput, "point missing from lattice list");
        return it->second;
    };

    auto hs = hull_facets_chart(vertex_pts, dim);
    for (auto& h : hs) {
        std::vector<size_t> sup;
        for (size_t s : h.support) sup.push_back(ix_of(vertex_pts[s]));
        h.support = sup;
    }
    size_t best = 0;
    for (size_t i = 1; i < vertex_pts.size(); ++i)
        if (vertex_pts[i] < vertex_pts[best]) best = i;
    size_t apex = ix_of(vertex_pts[best]);

    std::vector<std::vector<size_t>> simplices;
    if (dim == 2) {
        simplices = fan_over_edges(all_pts, hs, apex);
    } else {
        for (const auto& f : hs) {
            bool has_apex = false;
            for (size_t s : f.support)
                if (s == apex) has_apex = true;
            if (has_apex) continue;
            // supporting edges of the facet polygon, inside its plane
            std::vector<HalfSpace> edges;
            std::set<std::vector<size_t>> seen_e;
            for (size_t a = 0; a < f.support.size(); ++a)
                for (size_t b = a + 1; b < f.support.size(); ++b) {
                    Vec d = vsub(all_pts[f.support[b]], all_pts[f.support[a]]);
                    if (vzero(d)) continue;
                    Vec en = cross3(f.n, d);
                    if (vzero(en)) continue;
                    vreduce(en);
                    Int c = vdot(en, all_pts[f.support[a]]);
                    bool below = false, above = false;
                    for (size_t s : f.support) {
                        int sg = sgn(Int(vdot(en, all_pts[s]) - c));
                        if (sg < 0) below = true;
                        if (sg > 0) above = true;
                    }
                    if (below && above) continue;
                    if (below) {
                        en = vneg(en);
                        c = -c;
                    }
                    HalfSpace e{en, c, {}};
                    for (size_t s : f.support)
                        if (vdot(en, all_pts[s]) == c) e.support.push_back(s);
                    if (e.support.size() < 2) continue;
                    if (!seen_e.insert(sorted_face(e.support)).second) continue;
                    edges.push_back(e);
                }
            size_t fapex = f.support[0];
            for (size_t s : f.support)
                if (all_pts[s] < all_pts[fapex]) fapex = s;
            for (auto& tri : fan_over_edges(all_pts, edges, fapex)) {
                std::vector<size_t> tet = {apex, tri[0], tri[1], tri[2]};
                if (simplex_chart_volume(all_pts, tet) != 0)
                    simplices.push_back(std::move(tet));
            }
        }
    }

    // star insertion of the remaining lattice points
    std::set<size_t> used;
    for (const auto& s : simplices)
        for (size_t v : s) used.insert(v);
    for (size_t x = 0; x < all_pts.size(); ++x) {
        if (used.count(x)) continue;
        std::vector<size_t> cavity;
        for (size_t t = 0; t < simplices.size(); ++t)
            if (simplex_contains(all_pts, simplices[t], all_pts[x])) cavity.push_back(t);
        if (cavity.empty())
            throw SailError(Err::DegenerateInput, "lattice point outside triangulation");
        std::map<std::vector<size_t>, int> faces;
        for (size_t t : cavity) {
            const auto& s = simplices[t];
            for (size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<size_t> f;
                for (size_t k = 0; k < s.size(); ++k)
                    if (k != drop) f.push_back(s[k]);
                faces[sorted_face(f)]++;
            }
        }
        std::vector<std::vector<size_t>> fresh;
        Int removed = 0, added = 0;
        for (size_t t : cavity) removed += simplex_chart_volume(all_pts, simplices[t]);
        for (const auto& [f, cnt] : faces) {
            if (cnt != 1) continue;
            std::vector<size_t> simp = f;
            simp.push_back(x);
            if (simplex_chart_volume(all_pts, simp) != 0) {
                added += simplex_chart_volume(all_pts, simp);
                fresh.push_back(simp);
            }
        }
        if (removed != added)
            throw SailError(Err::DegenerateInput, "star insertion volume mismatch");
        std::sort(cavity.rbegin(), cavity.rend());
        for (size_t t : cavity) simplices.erase(simplices.begin() + t);
        for (auto& s : fresh) simplices.push_back(std::move(s));
        used.insert(x);
    }
    return simplices;
}

}  // namespace

Triangulation triangulate(const IntegerPolytope& S) {
    if (S.dim != 2 && S.dim != 3)
        throw SailError(Err::UnsupportedDimension, "triangulate supports dim 2 and 3");
    LatticeChart ch = face_chart(S);
    std::vector<Vec> vpts;
    for (const auto& v : S.vertices) vpts.push_back(ch.to_chart(v));
    auto points = lattice_points(S);
    std::vector<Vec> apts;
    for (const auto& p : points) apts.push_back(ch.to_chart(p));

    Triangulation T;
    T.points = points;
    T.simplices = triangulate_chart(vpts, apts, S.dim);
    for (const auto& s : T.simplices) {
        Int v = simplex_chart_volume(apts, s);
        T.volumes.push_back(v);
        T.total_volume += v;
    }
    T.unimodular = true;
    for (const auto& v : T.volumes)
        if (v != 1) T.unimodular = false;
    if (S.dim == 2 && !T.unimodular)
        throw SailError(Err::DegenerateInput,
                        "all-points triangulation of a polygon must be unimodular");
    return T;
}

bool is_unimodular(const Triangulation& T) { return T.unimodular; }

Int polytope_integer_volume(const IntegerPolytope& S) {
    if (S.dim == 0) return 1;
    if (S.dim == 1) {
        LatticeChart ch = face_chart(S);
        Int lo = 0, hi = 0;
        bool first = true;
        for (const auto& v : S.vertices) {
            Int t = ch.to_chart(v)[0];
            if (first) {
                lo = hi = t;
                first = false;
            }
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        return hi - lo;
    }
    return triangulate(S).total_volume;
}

TriangulationCheck validate_triangulation(
    const IntegerPolytope& S, const std::vector<std::vector<FieldElement>>& simplices) {
    TriangulationCheck out;
    auto pts = lattice_points(S);
    std::set<std::vector<Rat>> point_set;
    for (const auto& p : pts) point_set.insert(p.coords());
    Int expected = polytope_integer_volume(S);
    out.unimodular = true;
    for (const auto& simp : simplices) {
        if (simp.size() != static_cast<size_t>(S.dim) + 1) {
            out.detail = "simplex with wrong vertex count";
            return out;
        }
        for (const auto& v : simp) {
            if (!point_set.count(v.coords())) {
                out.detail = "simplex vertex " + v.str() + " is not a lattice point";
                return out;
            }
        }
        IntegerPolytope piece = make_polytope(S.field, simp);
        if (piece.dim != S.dim) {
            out.detail = "degenerate simplex";
            return out;
        }
        Int iv = integer_volume(piece);
        out.total_volume += iv;
        if (iv != 1) out.unimodular = false;
    }
    if (out.total_volume != expected) {
        out.detail = "volumes sum to " + out.total_volume.get_str() +
                     ", polytope has " + expected.get_str();
        return out;
    }
    out.valid = true;
    return out;
}

std::vector<IntegerPolytope> facets(const IntegerPolytope& S) {
    if (S.dim != 3) throw SailError(Err::DegenerateInput, "facets expects a 3-polytope");
    LatticeChart ch = face_chart(S);
    std::vector<Vec> vpts;
    for (const auto& v : S.vertices) vpts.push_back(ch.to_chart(v));
    auto pts = lattice_points(S);
    std::vector<Vec> apts;
    for (const auto& p : pts) apts.push_back(ch.to_chart(p));
    std::vector<IntegerPolytope> out;
    for (const auto& h : hull_facets_chart(vpts, 3)) {
        std::vector<FieldElement> face_points;
        for (size_t i = 0; i < pts.size(); ++i)
            if (vdot(h.n, apts[i]) == h.c) face_points.push_back(pts[i]);
        out.push_back(make_polytope(S.field, face_points));
    }
    std::sort(out.begin(), out.end(),
              [](const IntegerPolytope& a, const IntegerPolytope& b) {
                  return a.vertices < b.vertices;
              });
    return out;
}

FaceCounts lattice_points_on_face(const IntegerPolytope& S) {
    if (S.dim != 2) throw SailError(Err::UnsupportedDimension, "need a 2-face");
    LatticeChart ch = face_chart(S);
    std::vector<Vec> pts;
    for (const auto& v : S.vertices) pts.push_back(ch.to_chart(v));
    auto edges = hull_facets_chart(pts, 2);
    Int B = 0;
    for (const auto& e : edges) {
        Vec dir = vsub(pts[e.support.back()], pts[e.support.front()]);
        size_t ilo = e.support.front(), ihi = e.support.front();
        for (size_t s : e.support) {
            if (vdot(dir, pts[s]) < vdot(dir, pts[ilo])) ilo = s;
            if (vdot(dir, pts[s]) > vdot(dir, pts[ihi])) ihi = s;
        }
        Vec full = vsub(pts[ihi], pts[ilo]);
        B += gcd(full[0], full[1]);
    }
    Int iv = polytope_integer_volume(S);  // twice the lattice area
    if ((iv - B + 2) % 2 != 0)
        throw SailError(Err::DegenerateInput, "Pick parity violation");
    return {B, (iv - B + 2) / 2};
}

ParallelepipedCount parallelepiped_lattice_count(const IntegerPolytope& simplex,
                                                 bool enumerate, const Int& cap) {
    unsigned n = simplex.field->degree();
    if (simplex.vertices.size() != n || simplex.dim != static_cast<int>(n) - 1)
        throw SailError(Err::NotASimplex, "need n vertices spanning a hyperplane simplex");
    IMat pos = vertex_rows(simplex);
    Int V = abs(imat_det(pos));
    if (V == 0) throw SailError(Err::NotASimplex, "vertices linearly dependent");
    Int iv = integer_volume(simplex);
    Int id = integer_distance(simplex);
    if (V != iv * id) throw SailError(Err::DegenerateInput, "IV*ID identity violated");
    ParallelepipedCount out{V - 1, iv, id, false};
    if (!enumerate) return out;

    const unsigned bits = 64;
    Box box;
    for (unsigned i = 0; i < n; ++i) {
        RatIv acc(Rat(0));
        for (const auto& v : simplex.vertices)
            acc = acc + simplex.field->embedding_iv(v, i, bits);
        box.lo.push_back(Rat(0));
        box.hi.push_back(acc.hi + 1);
    }
    auto candidates = simplex.field->enumerate_integers_in_box(box, cap);
    Int found = 0;
    for (const auto& beta : candidates) {
        auto c = simplex.field->integral_coords(beta);
        // solve sum_k lambda_k pos[k] = coords(beta) over Q
        std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n + 1));
        for (unsigned i = 0; i < n; ++i) {
            for (unsigned k = 0; k < n; ++k) A[i][k] = Rat(pos[k][i]);
            A[i][n] = c[i];
        }
        for (unsigned col = 0; col < n; ++col) {
            unsigned piv = col;
            while (piv < n && A[piv][col] == 0) ++piv;
            if (piv == n) throw SailError(Err::DegenerateInput, "singular lambda solve");
            std::swap(A[piv], A[col]);
            Rat ip = 1 / A[col][col];
            for (unsigned cc = col; cc <= n; ++cc) A[col][cc] *= ip;
            for (unsigned r = 0; r < n; ++r) {
                if (r == col || A[r][col] == 0) continue;
                Rat f = A[r][col];
                for (unsigned cc = col; cc <= n; ++cc) A[r][cc] -= f * A[col][cc];
            }
        }
        bool in_p = true;
        for (unsigned k = 0; k < n; ++k)
            if (A[k][n] < 0 || A[k][n] >= 1) in_p = false;
        if (in_p) ++found;
    }
    if (found != out.count)
        throw SailError(Err::DegenerateInput,
                        "parallelepiped count mismatch: formula " + out.count.get_str() +
                            ", enumerated " + found.get_str());
    out.enumerated = true;
    return out;
}

}  // namespace sailkit
