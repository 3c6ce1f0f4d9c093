#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sailkit/cfrac.hpp"

using namespace sailkit;

namespace {

std::vector<Int> squarefree_up_to(long n) {
    std::vector<Int> out;
    for (long d = 2; d <= n; ++d) {
        auto sf = is_squarefree(Int(d));
        if (sf && *sf) out.push_back(Int(d));
    }
    return out;
}

}  // namespace

TEST_CASE("expansion oracles") {
    auto e5 = expand(5);
    CHECK(e5.u0 == 0);
    CHECK(e5.period == std::vector<Int>{1});

    auto e3 = expand(3);
    CHECK(e3.u0 == 1);
    CHECK(e3.period == std::vector<Int>{1, 2});

    auto e19 = expand(19);
    CHECK(e19.u0 == 4);
    CHECK(e19.period == std::vector<Int>{2, 1, 3, 1, 2, 8});

    CHECK_THROWS_AS((void)expand(12), SailError);
}

TEST_CASE("last partial quotient rule for all squarefree D <= 500") {
    for (const auto& d : squarefree_up_to(500)) {
        auto e = expand(d);
        Int want = d % 4 == 1 ? Int(2 * e.u0 + 1) : Int(2 * e.u0);
        CHECK(e.period.back() == want);
        // re-expansion reproduces the same period
        auto e2 = expand(d);
        CHECK(e.period == e2.period);
    }
}

TEST_CASE("convergents: recurrences, determinant identity, conventions") {
    ContinuedFraction cf(3);
    auto c = cf.convergents(8);
    CHECK(c[0].beta == cf.field().one());                            // beta_{-1}
    CHECK(c[1].beta == cf.field().element({Rat(1), Rat(1)}));        // 1 + sqrt3
    CHECK(c[2].beta == cf.field().element({Rat(2), Rat(1)}));        // 2 + sqrt3
    CHECK(c[1].s == cf.expansion().u0);
    CHECK(c[1].t == 1);

    for (const auto& d : squarefree_up_to(80)) {
        ContinuedFraction f(d);
        auto cs = f.convergents(12);
        for (size_t k = 0; k + 1 < cs.size(); ++k) {
            Int det = cs[k].s * cs[k + 1].t - cs[k + 1].s * cs[k].t;
            CHECK((det == 1 || det == -1));
        }
    }
}

TEST_CASE("semiconvergents") {
    ContinuedFraction cf(3);
    // beta_{-1,l} for l = 0..u_1 = 1 -> {1, 2+sqrt3}
    CHECK(cf.semiconvergent(-1, 0) == cf.field().one());
    CHECK(cf.semiconvergent(-1, 1) == cf.field().element({Rat(2), Rat(1)}));
    CHECK_THROWS_AS((void)cf.semiconvergent(-1, 2), SailError);

    for (const auto& d : {Int(3), Int(5), Int(19), Int(46)}) {
        ContinuedFraction f(d);
        for (long i = -1; i <= 5; ++i) {
            Int top = f.expansion().u(static_cast<size_t>(i + 2));
            CHECK(f.semiconvergent(i, 0) == f.convergent(i).beta);
            CHECK(f.semiconvergent(i, top) == f.convergent(i + 2).beta);
        }
    }
}

TEST_CASE("upper semiconvergents totally positive, lower have signature (+,-)") {
    for (const auto& d : {Int(3), Int(5), Int(13), Int(19), Int(46)}) {
        ContinuedFraction f(d);
        for (long i = -1; i <= 6; ++i) {
            Int top = f.expansion().u(static_cast<size_t>(i + 2));
            for (Int l = 0; l <= top; ++l) {
                auto b = f.semiconvergent(i, l);
                if ((i % 2 + 2) % 2 == 1) {  // odd index: upper
                    CHECK(f.field().totally_positive(b));
                } else {
                    CHECK(f.field().signature(b) == SignatureVector{0, 1});
                }
            }
        }
    }
}

TEST_CASE("delta: trace identity, codifferent membership, signatures") {
    ContinuedFraction cf3(3);
    // Tr(delta_1 * beta_{0,l}) = 1 for l = 0..u_2
    Int top = cf3.expansion().u(2);
    for (Int l = 0; l <= top; ++l) {
        auto prod = cf3.delta(1) * cf3.semiconvergent(0, l);
        CHECK(cf3.field().trace(prod) == 1);
    }

    for (const auto& d : squarefree_up_to(60)) {
        ContinuedFraction f(d);
        long two_periods = 2 * static_cast<long>(f.expansion().s());
        for (long i = -1; i <= two_periods; ++i)
            CHECK(f.field().is_in_codifferent(f.delta(i)));
        // Tr(delta_{i+1} beta_{i,l}) = 1 across two periods
        for (long i = -1; i <= two_periods; ++i) {
            Int u = f.expansion().u(static_cast<size_t>(i + 2));
            for (Int l = 0; l <= u; ++l)
                CHECK(f.field().trace(f.delta(i + 1) * f.semiconvergent(i, l)) == 1);
        }
    }

    ContinuedFraction cf19(19);
    for (long i = 0; i <= 6; ++i) {
        CHECK(cf19.field().signature(cf19.delta(i + 1)) ==
              cf19.field().signature(cf19.semiconvergent(i, 0)));
    }
}

TEST_CASE("fundamental units") {
    ContinuedFraction cf5(5);
    CHECK(cf5.fundamental_unit() == cf5.field().element({Rat(1, 2), Rat(1, 2)}));
    CHECK(cf5.fundamental_unit_norm() == -1);

    ContinuedFraction cf3(3);
    CHECK(cf3.fundamental_unit() == cf3.field().element({Rat(2), Rat(1)}));
    CHECK(cf3.fundamental_unit_norm() == 1);
    auto eps = cf3.fundamental_unit();
    CHECK(eps * cf3.field().galois_conjugate(eps, 1) == cf3.field().one());

    ContinuedFraction cf15(15);
    CHECK(cf15.fundamental_unit() == cf15.field().element({Rat(4), Rat(1)}));
    CHECK(cf15.fundamental_unit_norm() == 1);

    // classical table checks
    ContinuedFraction cf19(19);
    CHECK(cf19.fundamental_unit() == cf19.field().element({Rat(170), Rat(39)}));
    ContinuedFraction cf6(6);
    CHECK(cf6.fundamental_unit() == cf6.field().element({Rat(5), Rat(2)}));
    ContinuedFraction cf13(13);
    CHECK(cf13.fundamental_unit() ==
          cf13.field().element({Rat(3, 2), Rat(1, 2)}));  // (3+sqrt13)/2

    for (const auto& d : squarefree_up_to(200)) {
        ContinuedFraction f(d);
        auto u = f.fundamental_unit();
        CHECK(f.field().is_unit(u));
        CHECK(f.field().norm(u) == f.fundamental_unit_norm());
        CHECK(f.field().totally_positive(f.totally_positive_unit()));
        CHECK(f.field().sign_at_embedding(u - Rat(1), 0) > 0);  // eps > 1
    }
}

TEST_CASE("max partial quotient and the sqrt(D) - 3 lower bound") {
    CHECK(expand(19).max_partial_quotient() == 8);
    CHECK(expand(3).max_partial_quotient() == 2);
    for (const auto& d : squarefree_up_to(500)) {
        Int u = expand(d).max_partial_quotient();
        // u > sqrt(D) - 3  <=>  u + 3 > sqrt(D)  <=>  (u+3)^2 > D
        CHECK((u + 3) * (u + 3) > d);
    }
}

TEST_CASE("indecomposables modulo totally positive units") {
    ContinuedFraction cf3(3);
    auto set3 = cf3.indecomposables();
    REQUIRE(set3.reps.size() == 1);
    CHECK(cf3.same_unit_class(set3.reps[0], cf3.field().one()));

    ContinuedFraction cf5(5);
    auto set5 = cf5.indecomposables();
    REQUIRE(set5.reps.size() == 1);
    CHECK(cf5.same_unit_class(set5.reps[0], cf5.field().one()));

    for (const auto& d : {Int(6), Int(13), Int(19), Int(46)}) {
        ContinuedFraction f(d);
        auto set = f.indecomposables();
        CHECK(!set.reps.empty());
        for (const auto& r : set.reps) CHECK(f.field().totally_positive(r));
        // conjugation permutes the classes
        for (size_t k = 0; k < set.reps.size(); ++k) {
            int c = set.conjugate_class[k];
            REQUIRE(c >= 0);
            REQUIRE(c < static_cast<int>(set.reps.size()));
            CHECK(set.conjugate_class[static_cast<size_t>(c)] == static_cast<int>(k));
        }
    }
}

TEST_CASE("unit action shifts semiconvergent indices by one period") {
    for (const auto& d : {Int(3), Int(5), Int(19)}) {
        ContinuedFraction f(d);
        long s = static_cast<long>(f.expansion().s());
        auto eps = f.fundamental_unit();
        for (long i = -1; i <= 4; ++i)
            CHECK(f.convergent(i + s).beta == eps * f.convergent(i).beta);
    }
}
