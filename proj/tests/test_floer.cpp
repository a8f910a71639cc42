#include <cstdio>
#include <string>

#include "doctest.h"
#include "rfh/floer.hpp"
#include "rfh/gf2.hpp"
#include "rfh/triple_io.hpp"

using namespace rfh;
using namespace rfh::floer;

namespace {

gf2::Mat from_rows(int r, int c, std::initializer_list<int> entries) {
    gf2::Mat M(r, c);
    auto it = entries.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) M.at(i, j) = static_cast<std::uint8_t>(*it++);
    return M;
}

}  // namespace

TEST_CASE("gf2 elimination basics") {
    gf2::Mat A = from_rows(3, 4, {1, 0, 1, 1,
                                  1, 1, 0, 0,
                                  0, 1, 1, 1});
    CHECK(gf2::rank(A) == 2);  // row3 = row1 + row2
    auto r = gf2::rref(A);
    CHECK(r.pivot_cols == std::vector<int>{0, 1});

    auto ns = gf2::nullspace(A);
    CHECK(ns.size() == 2);
    for (const auto& v : ns) {
        gf2::Vec img = A * v;
        for (auto x : img) CHECK(x == 0);
    }

    gf2::Vec b = {1, 1, 0};
    auto x = gf2::solve(A, b);
    REQUIRE(x.has_value());
    CHECK(A * *x == b);

    auto xr = gf2::solve(A, b, /*reverse_pivots=*/true);
    REQUIRE(xr.has_value());
    CHECK(A * *xr == b);

    auto y = gf2::solve(from_rows(2, 1, {1, 1}), gf2::Vec{1, 0});
    CHECK(!y.has_value());
}

TEST_CASE("gf2 span basis") {
    gf2::SpanBasis span;
    CHECK(span.add({1, 0, 1}));
    CHECK(span.add({0, 1, 1}));
    CHECK(!span.add({1, 1, 0}));  // sum of the first two
    CHECK(span.contains({1, 1, 0}));
    CHECK(!span.contains({0, 0, 1}));
    CHECK(span.dim() == 2);
}

TEST_CASE("worked example validates and has dimension-2 homology") {
    FloerTriple t = worked_example();
    CHECK(!t.graded());
    CHECK(validate(t).ok);
    CHECK((t.boundary_matrix() * t.boundary_matrix()).is_zero());

    CHECK(homology_window(t, 0, 1).dim == 2);
    CHECK(homology_window(t, 1, 1).dim == 2);  // d a1 = b0 leaves the window
    CHECK(homology_window(t, 0, 0).dim == 2);  // the truncated arrow kills nothing
    CHECK(homology_window(t, 2, 5).dim == 0);
}

TEST_CASE("validation failures") {
    FloerTriple bad;
    bad.gens.push_back({"x", 1, std::nullopt});
    bad.gens.push_back({"y", 0, std::nullopt});
    bad.boundary.emplace_back(bad.find("x"), bad.find("y"));  // raises action
    auto rep = validate(bad);
    CHECK(!rep.ok);
    CHECK(rep.axiom.find("ii") != std::string::npos);
    CHECK(rep.witness.find("x") != std::string::npos);

    FloerTriple sq;  // d c = b, d b = a: d^2 != 0
    sq.gens.push_back({"a", 0, std::nullopt});
    sq.gens.push_back({"b", 1, std::nullopt});
    sq.gens.push_back({"c", 2, std::nullopt});
    sq.boundary.emplace_back(0, 1);
    sq.boundary.emplace_back(1, 2);
    auto rep2 = validate(sq);
    CHECK(!rep2.ok);
    CHECK(rep2.axiom.find("iii") != std::string::npos);

    FloerTriple gr;  // degree must drop by exactly one
    gr.gens.push_back({"a", 0, 0});
    gr.gens.push_back({"b", 1, 2});
    gr.boundary.emplace_back(0, 1);
    CHECK(!validate(gr).ok);

    FloerTriple half;  // partial grading is rejected
    half.gens.push_back({"a", 0, 0});
    half.gens.push_back({"b", 0, std::nullopt});
    CHECK(!validate(half).ok);
}

TEST_CASE("exact triangle of a window split") {
    FloerTriple t = worked_example();
    auto rep = les_check(t, 0, 0, 1);
    CHECK(rep.exact);
    CHECK(rep.dim_sub == 2);
    CHECK(rep.dim_quot == 2);
    CHECK(rep.dim_total == 2);
    CHECK_THROWS_AS(les_check(t, 1, 0, 2), math_error);
}

TEST_CASE("limit homology of the worked example") {
    auto rep = limit_homology(worked_example());
    CHECK(rep.certified);
    CHECK(rep.stable_dim == 2);
}

TEST_CASE("reduction of the worked example") {
    FloerTriple t = worked_example();
    ReductionData r = build_reduction(t);
    REQUIRE(r.levels.size() == 2);
    CHECK(r.basis.size() == 4);

    // del carries exactly one arrow, from the class of a1 to the class of b0.
    int nonzero = 0, row = -1, col = -1;
    for (int i = 0; i < r.del.rows; ++i)
        for (int j = 0; j < r.del.cols; ++j)
            if (r.del.at(i, j)) {
                ++nonzero;
                row = i;
                col = j;
            }
    REQUIRE(nonzero == 1);

    auto supported_on = [&](int cls, const std::string& name) {
        auto [li, k] = r.basis[cls];
        const LevelData& lev = r.levels[li];
        int g = t.find(name);
        for (std::size_t p = 0; p < lev.gen_idx.size(); ++p)
            if (lev.gen_idx[p] == g) return lev.level.cycles[k][p] != 0;
        return false;
    };
    CHECK(supported_on(col, "a1"));
    CHECK(supported_on(row, "b0"));

    CHECK(r.reduced.boundary.size() == 1);
    auto red = reduced_homology(r);
    CHECK(red.dim == 2);
    CHECK(red.iso_ok);
}

TEST_CASE("reduction is invariant under the section choice") {
    for (std::uint64_t seed : {7u, 19u, 23u, 101u}) {
        FloerTriple t = random_triple(seed);
        auto a = reduced_homology(build_reduction(t, false));
        auto b = reduced_homology(build_reduction(t, true));
        CHECK(a.dim == b.dim);
        CHECK(a.dims_by_degree == b.dims_by_degree);
        CHECK(a.iso_ok);
        CHECK(b.iso_ok);
    }
}

TEST_CASE("random triples: axioms, reduction, limits, exactness") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        CAPTURE(seed);
        FloerTriple t = random_triple(seed);
        CHECK(validate(t).ok);
        gf2::Mat D = t.boundary_matrix();
        CHECK((D * D).is_zero());

        WindowHomology full = homology_window(t, 0, 5);
        CHECK(full.dim <= static_cast<int>(t.gens.size()));

        auto red = reduced_homology(build_reduction(t));
        CHECK(red.dim == full.dim);
        CHECK(red.dims_by_degree == full.dims_by_degree);
        CHECK(red.iso_ok);

        auto lim = limit_homology(t);
        CHECK(lim.certified);
        CHECK(lim.stable_dim == full.dim);
        CHECK(lim.dims_by_degree == full.dims_by_degree);

        CHECK(les_check(t, 0, 2, 5).exact);
        CHECK(les_check(t, 0, 0, 5).exact);

        // graded Euler characteristic is a chain-level invariant
        long long chi_chain = 0, chi_hom = 0;
        for (const auto& g : t.gens)
            chi_chain += (*g.degree % 2 == 0) ? 1 : -1;
        for (auto [d, k] : full.dims_by_degree) chi_hom += (d % 2 == 0) ? k : -k;
        CHECK(chi_chain == chi_hom);
    }
}

TEST_CASE("json round trip") {
    FloerTriple t = random_triple(5);
    FloerTriple back = from_json(to_json(t));
    REQUIRE(back.gens.size() == t.gens.size());
    for (std::size_t i = 0; i < t.gens.size(); ++i) {
        CHECK(back.gens[i].name == t.gens[i].name);
        CHECK(back.gens[i].action == t.gens[i].action);
        CHECK(back.gens[i].degree == t.gens[i].degree);
    }
    CHECK(back.boundary == t.boundary);

    std::string path = "/tmp/rfh_test_triple.json";
    save_triple(t, path);
    FloerTriple loaded = load_triple(path);
    CHECK(loaded.boundary == t.boundary);
    std::remove(path.c_str());
}

TEST_CASE("json parse failures") {
    CHECK_THROWS_AS(from_json("{"), parse_error);
    CHECK_THROWS_AS(from_json("{\"boundary\":[]}"), parse_error);
    CHECK_THROWS_AS(
        from_json("{\"generators\":[{\"name\":\"a\",\"action\":0}],"
                  "\"boundary\":[[\"a\",\"zz\"]]}"),
        parse_error);
    CHECK_THROWS_AS(load_triple("/nonexistent/nowhere.json"), io_error);
}
