#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sailkit/cfrac.hpp"
#include "sailkit/indecomp.hpp"

using namespace sailkit;

namespace {

FieldPtr Shanks(long a) { return Field::make(FieldDescriptor::simplest_cubic(a)); }

FieldElement rho(const FieldPtr& K) { return K->element({Rat(0), Rat(1), Rat(0)}); }

IntegerPolytope shanks_A1(const FieldPtr& K) {
    auto r = rho(K);
    return make_polytope(K, {K->one(), r * r, K->one() + r * Rat(2) + r * r});
}

IntegerPolytope shanks_A2(const FieldPtr& K) {
    auto r = rho(K);
    auto eps1 = r * r;
    auto eps2 = K->one() + r * Rat(2) + r * r;
    return make_polytope(K, {K->one(), eps1, eps1 * eps2.inverse()});
}

}  // namespace

TEST_CASE("is_indecomposable oracles") {
    for (const auto& K :
         {Field::make(FieldDescriptor::quadratic(3)),
          Field::make(FieldDescriptor::quadratic(5)),
          Field::make(FieldDescriptor::biquadratic(5, 3)), Shanks(1)}) {
        CHECK(is_indecomposable(K->one()));
    }
    for (long a : {-1L, 1L, 2L}) {
        auto K = Shanks(a);
        auto r = rho(K);
        CHECK(is_indecomposable(K->one() + r + r * r));
    }
    auto K3 = Field::make(FieldDescriptor::quadratic(3));
    CHECK_FALSE(is_indecomposable(K3->from_rational(2)));
    CHECK_THROWS_AS((void)is_indecomposable(K3->from_rational(Rat(1, 2))), SailError);
}

TEST_CASE("unit invariance of indecomposability") {
    auto K = Shanks(1);
    auto r = rho(K);
    auto eps1 = r * r;
    auto eps2 = K->one() + r * Rat(2) + r * r;
    auto alpha = K->one() + r + r * r;
    for (const auto& eps : {eps1, eps2}) {
        CHECK(is_totally_positive_unit(*K, eps));
        CHECK(is_indecomposable(alpha * eps) == is_indecomposable(alpha));
    }
    auto K53 = Field::make(FieldDescriptor::biquadratic(5, 3));
    // sigma_i preserves total positivity and indecomposability
    auto g1 = K53->element({Rat(5, 2), Rat(1, 2), Rat(-1, 2), Rat(-1, 2)});
    CHECK(is_indecomposable(g1));
    for (unsigned i = 1; i <= 3; ++i) {
        auto im = K53->galois_conjugate(g1, i);
        CHECK(K53->totally_positive(im));
        CHECK(is_indecomposable(im));
    }
}

TEST_CASE("iota bruteforce vs continued fraction on small quadratic fields") {
    for (long d : {3L, 5L, 6L, 13L, 19L}) {
        auto K = Field::make(FieldDescriptor::quadratic(d));
        auto bf = iota_bruteforce(K);
        auto cf = iota_continued_fraction(K);
        CHECK(bf.count == cf.count);
        // set equality modulo totally positive units
        for (const auto& r : cf.set.representatives) {
            bool hit = false;
            for (const auto& s : bf.set.representatives)
                if (same_unit_class(r, s)) hit = true;
            CHECK(hit);
        }
    }
    auto K3 = Field::make(FieldDescriptor::quadratic(3));
    CHECK(iota_bruteforce(K3).count == 1);
}

TEST_CASE("iota for the simplest cubic field, a = 1") {
    auto K = Shanks(1);
    auto res = iota_bruteforce(K);
    CHECK(res.count == 5);  // (a^2+3a+6)/2 at a = 1
    for (const auto& r : res.set.representatives) CHECK(is_indecomposable(r));
}

TEST_CASE("iota for the biquadratic field (5,3)") {
    auto K = Field::make(FieldDescriptor::biquadratic(5, 3));
    auto res = iota_bruteforce(K);
    CHECK(res.count == 3);
}

TEST_CASE("iota via certified sail faces") {
    // Shanks faces A1, A2 for small a
    for (long a : {-1L, 1L, 2L}) {
        auto K = Shanks(a);
        auto res = iota_sail_certified(K, {shanks_A1(K), shanks_A2(K)}, true);
        CHECK(res.count == (a * a + 3 * a + 6) / 2);
    }
    // family n=0: faces A and C_1^-
    auto K = Field::make(FieldDescriptor::biquadratic(5, 3));
    auto e1 = K->element({Rat(3, 2), Rat(1, 2), Rat(0), Rat(0)});
    auto e2 = K->element({Rat(2), Rat(0), Rat(1), Rat(0)});
    auto e3 = K->element({Rat(4), Rat(0), Rat(0), Rat(1)});
    auto rho4 = K->element({Rat(3), Rat(0), Rat(-1, 2), Rat(1, 2)});
    auto g1 = K->element({Rat(5, 2), Rat(1, 2), Rat(-1, 2), Rat(-1, 2)});
    auto g0 = g1 * e1.inverse() * e3;
    auto one = K->one();
    auto A = make_polytope(
        K, {one, e1, e1 * e2, e1 * e1 * e2, e1 * e3, e1 * e1 * e3, e2 * e3,
            e1 * e2 * e3, rho4 * e2, rho4 * e1 * e2, g0 * e1, g0 * e1 * e1,
            g1 * e2 * e3, g1 * e1 * e2 * e3});
    auto C1m = make_polytope(K, {one, e1, e2, e1 * e2});
    auto res = iota_sail_certified(K, {A, C1m}, true);
    CHECK(res.count == 3);
    CHECK_THROWS_AS((void)iota_sail_certified(K, {A, C1m}, false), SailError);
}

TEST_CASE("interior bounds and the exact cubic count") {
    for (long a : {-1L, 1L, 2L}) {
        auto K = Shanks(a);
        auto A1 = shanks_A1(K);
        auto A2 = shanks_A2(K);
        auto t2 = triangulate(A2);
        auto b2 = iota_int_bound(A2, t2.simplices.size(), t2.unimodular);
        CHECK(b2.bound == 0);
        CHECK(b2.all_on_face);
        auto b1 = iota_int_bound(A1, 1, true);
        CHECK(b1.bound == 1);  // ID*IV - k = 2*1 - 1
        CHECK_FALSE(b1.all_on_face);

        CHECK(iota_int_exact_cubic(A1) == 1);
        CHECK(iota_int_exact_cubic(A2) == 0);
    }
    auto K53 = Field::make(FieldDescriptor::biquadratic(5, 3));
    auto tri = make_polytope(
        K53, {K53->one(), K53->one() + K53->integral_basis()[1],
              K53->one() + K53->integral_basis()[2]});
    CHECK_THROWS_AS((void)iota_int_exact_cubic(tri), SailError);
}

TEST_CASE("parallelepiped interior witness for Shanks a=1") {
    auto K = Shanks(1);
    auto pts = parallelepiped_points(shanks_A1(K));
    REQUIRE(pts.size() == 1);
    auto r = rho(K);
    CHECK(pts[0] == K->one() + r + r * r);
}

TEST_CASE("universal rank bound") {
    CHECK(universal_rank_bound(3, 5, 4, 2) == 60);
    CHECK(universal_rank_bound(1, 3, 2, 2) == 3);
    // monotone in each argument
    CHECK(universal_rank_bound(4, 5, 4, 2) >= universal_rank_bound(3, 5, 4, 2));
    CHECK(universal_rank_bound(3, 6, 4, 2) >= universal_rank_bound(3, 5, 4, 2));
    CHECK(universal_rank_bound(3, 5, 4, 2) >= universal_rank_bound(3, 5, 4, 3));
    CHECK_THROWS_AS((void)universal_rank_bound(3, 0, 4, 2), SailError);
}
