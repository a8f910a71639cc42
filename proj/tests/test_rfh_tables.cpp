#include <cmath>
#include <vector>

#include "doctest.h"
#include "rfh/rfh_tables.hpp"

using namespace rfh;
using namespace rfh::tables;
using brieskorn::BrieskornTuple;

namespace {
BrieskornTuple tup(std::vector<long long> v) { return BrieskornTuple(std::move(v)); }
}  // namespace

TEST_CASE("critical manifold homology whitelist") {
    auto sstar = manifold_homology({2, 2, 2});
    CHECK(sstar == std::map<long long, long long>{{0, 1}, {1, 1}, {2, 1}, {3, 1}});

    auto s2s3 = manifold_homology({2, 2, 2, 10});
    CHECK(s2s3 == std::map<long long, long long>{{0, 1}, {2, 1}, {3, 1}, {5, 1}});

    auto equal4 = manifold_homology({4, 4, 4, 4});
    CHECK(equal4 == std::map<long long, long long>{{0, 1}, {2, 1}, {3, 1}, {5, 1}});

    auto sphere = manifold_homology({2, 2, 2, 13});
    CHECK(sphere == std::map<long long, long long>{{0, 1}, {5, 1}});

    CHECK_THROWS_AS(manifold_homology({2, 3}), UnsupportedCriticalManifold);
    CHECK_THROWS_AS(manifold_homology({2, 2, 3}), UnsupportedCriticalManifold);
}

TEST_CASE("chain census for (2,2,2,13): paired generators in the middle range") {
    auto model = chain_model(tup({2, 2, 2, 13}), 12);
    // mu(L gamma_j) = L + j for 0 < L < 13, so degree d pairs L = d with L = d-2.
    for (long long d = 5; d <= 11; ++d) CHECK(model.chain_count(d) == 2);
    CHECK(model.chain_count(2) == 1);
    CHECK(model.chain_count(3) == 1);
    CHECK(model.chain_count(-4) == 2);
    CHECK(model.chain_count(100) == 0);
}

TEST_CASE("chain census for the balanced tuple (4,4,4,4)") {
    auto model = chain_model(tup({4, 4, 4, 4}), 8);
    for (long long d : {-2, 0, 1, 3}) CHECK(model.chain_count(d) == 4);  // L in {+-4, +-8}
    CHECK(model.chain_count(2) == 0);
    for (long long N = 1; N <= 2; ++N) {
        CHECK(model.chain_count_signed(-2, +1, 4 * N) == N);
        CHECK(model.chain_count_signed(3, -1, 4 * N) == N);
    }
}

TEST_CASE("dimension table for (4,4,4,4)") {
    auto model = chain_model(tup({4, 4, 4, 4}), 40);
    auto table = rfh_dims(model, -20, 20);
    for (long long d = -20; d <= 20; ++d) {
        const DimValue& v = table.at(d);
        if (d == -2 || d == 3) {
            CHECK(v.kind == DimKind::infinite_dim);
            CHECK(v.growth_slope == doctest::Approx(1.0));
            CHECK(v.str() == "inf");
        } else if (d == 0 || d == 1) {
            CHECK(v.kind == DimKind::unknown);
            CHECK(v.str() == "?");
        } else {
            CHECK(v == DimValue{DimKind::exact, 0, v.policy, 0});
        }
    }
    CHECK_THROWS_AS(table.at(21), IndexOutOfRange);
}

TEST_CASE("dimension table for the sphere (2,2,2,13)") {
    auto model = chain_model(tup({2, 2, 2, 13}), 40);
    auto table = rfh_dims(model, -20, 20);
    for (long long d = 5; d <= 11; ++d) {
        CHECK(table.at(d).kind == DimKind::exact);
        CHECK(table.at(d).value == 2);
        CHECK(table.at(d).policy == Policy::symmetry);
    }
    for (long long d = -10; d <= -4; ++d) {
        CHECK(table.at(d).kind == DimKind::exact);
        CHECK(table.at(d).value == 2);
    }
    // outside the proved window only a census bound is available
    CHECK(table.at(12).kind == DimKind::at_most);
    CHECK(table.at(12).str() == "<=2");
}

TEST_CASE("unit cotangent bundle of the 2-sphere") {
    auto table = sstar_s2_table(-20, 20);
    for (long long d = -20; d <= 20; ++d) {
        CHECK(table.at(d).kind == DimKind::exact);
        CHECK(table.at(d).value == 2);
    }
    auto model = chain_model(tup({2, 2, 2}), 12);
    CHECK(rfh_dim_at(model, 17) == table.at(17));
}

TEST_CASE("dimension statements for the even family (2,2,2,2l)") {
    auto model = chain_model(tup({2, 2, 2, 14}), 60);  // l = 7, period 16
    for (long long d : {11, 27, -5}) {  // residue 11 mod 16, inside [5, 12]
        CHECK(rfh_dim_at(model, d).kind == DimKind::exact);
        CHECK(rfh_dim_at(model, d).value == 2);
    }
    for (long long d : {0, 1, 2, 15, 16}) {  // residues in [-1, 2]
        CHECK(rfh_dim_at(model, d).kind == DimKind::at_most);
        CHECK(rfh_dim_at(model, d).value == 1);
    }
}

TEST_CASE("linear growth at the boundary degrees of (4,4,4,4)") {
    auto model = chain_model(tup({4, 4, 4, 4}), 40);
    for (int sign : {+1, -1}) {
        for (long long d : {-2, 3}) {
            auto rep = growth_rate(model, d, sign, GrowthClass::identity);
            CHECK(rep.exact_linear);
            CHECK(rep.gamma == 1.0);
            REQUIRE(rep.counts.size() == 10);
            for (std::size_t i = 0; i < rep.counts.size(); ++i)
                CHECK(rep.counts[i] == static_cast<long long>(i + 1));
        }
    }
    auto empty = growth_rate(model, 2, +1, GrowthClass::identity);
    CHECK(std::isinf(empty.gamma));
    CHECK(empty.gamma < 0);
}

TEST_CASE("growth conventions on synthetic counts") {
    std::vector<double> cuts;
    for (int i = 1; i <= 30; ++i) cuts.push_back(static_cast<double>(i));

    CHECK(growth_from_counts(std::vector<long long>(30, 0), cuts,
                             GrowthClass::identity).gamma < 0);

    auto stab = growth_from_counts(std::vector<long long>(30, 3), cuts,
                                   GrowthClass::identity);
    CHECK(stab.gamma == 0.0);
    CHECK(!stab.exact_linear);

    std::vector<long long> expo;
    std::vector<double> expo_cuts;
    for (int i = 1; i <= 40; ++i) {
        expo.push_back(static_cast<long long>(std::llround(std::exp(i))));
        expo_cuts.push_back(static_cast<double>(i));
    }
    auto div = growth_from_counts(expo, expo_cuts, GrowthClass::identity);
    CHECK(std::isinf(div.gamma));
    CHECK(div.gamma > 0);

    auto matched = growth_from_counts(expo, expo_cuts, GrowthClass::exponential);
    CHECK(matched.gamma == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("connected sums add table entries outside the middle window") {
    auto model13 = chain_model(tup({2, 2, 2, 13}), 40);
    auto t13 = rfh_dims(model13, -20, 20);
    auto t444 = rfh_dims(chain_model(tup({4, 4, 4, 4}), 40), -20, 20);

    CHECK(connected_sum_dim_at({t13, t13}, 3, 7) == 8);  // 2 + 3*2
    CHECK(connected_sum_dim_at({t13, t13}, 0, 7) == 2);
    CHECK(connected_sum_dim_at({t13, t13, t444}, 2, 7) ==
          connected_sum_dim_at({t13, t444, t13}, 2, 7));

    CHECK_THROWS_AS(connected_sum_dim_at({t13, t13}, 1, 2), DegreeInForbiddenWindow);
    CHECK_THROWS_AS(connected_sum_dim_at({t13, t13}, 1, 12), math_error);  // only <=2

    // table form, over a range where every summand is exact
    auto sum = connected_sum_dims({rfh_dims(model13, 5, 11), rfh_dims(model13, 5, 11)}, 3);
    for (long long d = 5; d <= 11; ++d) CHECK(sum.at(d).value == 8);

    auto sphere_sum = connected_sum_dims({sstar_s2_table(), sstar_s2_table()}, 2);
    CHECK(sphere_sum.at(7).value == 6);
    CHECK(sphere_sum.at(-7).value == 6);
    CHECK_THROWS_AS(sphere_sum.at(0), IndexOutOfRange);  // inside the window
}

TEST_CASE("distinguishing pairs of contact structures") {
    auto w = distinguish(tup({2, 2, 2, 10}), tup({2, 2, 2, 14}));
    REQUIRE(w.has_value());
    CHECK(w->degree == 11);
    CHECK(w->lhs.kind == DimKind::at_most);
    CHECK(w->lhs.value == 1);
    CHECK(w->rhs == DimValue{DimKind::exact, 2, Policy::symmetry, 0});

    auto same = distinguish(tup({2, 2, 2, 10}), tup({2, 2, 2, 10}));
    CHECK(!same.has_value());

    auto odd = distinguish(tup({2, 2, 2, 9}), tup({2, 2, 2, 13}));
    REQUIRE(odd.has_value());
    CHECK(odd->rhs.kind == DimKind::exact);
    CHECK(odd->rhs.value == 2);
    CHECK(odd->lhs.value <= 1);
}
