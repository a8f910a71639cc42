#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rfh/cz_index.hpp"

using namespace rfh;
using namespace rfh::cz;

namespace {
constexpr double pi = std::numbers::pi;

SymplecticPathSpec rot(double omega, double T) {
    return SymplecticPathSpec::from_blocks({Block::rotation(omega)}, T);
}
}  // namespace

TEST_CASE("closed forms for rotation and hyperbolic paths") {
    CHECK(cz_closed_form(ClosedFormKind::rot_plus, 2 * pi) == HalfInt::whole(2));
    CHECK(cz_closed_form(ClosedFormKind::rot_minus, 2 * pi) == HalfInt::whole(-2));
    CHECK(cz_closed_form(ClosedFormKind::hyperbolic, 17.3) == HalfInt::whole(0));
    CHECK(cz_closed_form(ClosedFormKind::rot_plus, pi) == HalfInt::whole(1));
    CHECK_THROWS_AS(cz_closed_form(ClosedFormKind::rot_plus, 0.0), math_error);
}

TEST_CASE("numeric index matches closed forms on a T grid") {
    for (double T : {0.5, 2.0, pi / 2, pi, 2 * pi, 5.0, 7.0, 10 * pi + 0.1}) {
        CAPTURE(T);
        CHECK(cz_index(rot(1.0, T)).mu_cz ==
              cz_closed_form(ClosedFormKind::rot_plus, T));
        CHECK(cz_index(rot(-1.0, T)).mu_cz ==
              cz_closed_form(ClosedFormKind::rot_minus, T));
        auto hyp = SymplecticPathSpec::from_blocks({Block::hyperbolic()}, T);
        CHECK(cz_index(hyp).mu_cz == HalfInt::whole(0));
    }
}

TEST_CASE("crossing forms at t = 0 carry the generator signature") {
    auto plus = cz_index(rot(1.0, 5.0));
    REQUIRE(!plus.crossings.empty());
    CHECK(plus.crossings[0].at_boundary);
    CHECK(plus.crossings[0].signature == 2);
    auto minus = cz_index(rot(-1.0, 5.0));
    CHECK(minus.crossings[0].signature == -2);
    auto hyp = cz_index(SymplecticPathSpec::from_blocks({Block::hyperbolic()}, 5.0));
    CHECK(hyp.crossings[0].signature == 0);
}

TEST_CASE("block additivity") {
    auto sum = SymplecticPathSpec::from_blocks(
        {Block::rotation(1.0), Block::hyperbolic()}, 2 * pi);
    CHECK(cz_index(sum).mu_cz == HalfInt::whole(2));
    auto two = SymplecticPathSpec::from_blocks(
        {Block::rotation(0.7), Block::rotation(-1.3)}, 5.0);
    HalfInt split = cz_index(rot(0.7, 5.0)).mu_cz + cz_index(rot(-1.3, 5.0)).mu_cz;
    CHECK(cz_index(two).mu_cz == split);
}

TEST_CASE("conjugation invariance") {
    auto spec = SymplecticPathSpec::from_blocks(
        {Block::rotation(0.7), Block::rotation(-1.3)}, 5.0);
    Matrix Phi = Matrix::Identity(4, 4);
    Phi(0, 0) = 2.0;
    Phi(0, 1) = 1.0;
    Phi(1, 0) = 3.0;
    Phi(1, 1) = 2.0;  // det 1 on the first block
    Phi(3, 2) = 0.5;  // shear on the second block
    HalfInt base = cz_index(spec).mu_cz;
    CHECK(cz_index(conjugate(spec, Phi)).mu_cz == base);
}

TEST_CASE("general generator path with monotone winding") {
    // S(t) = (1+t) * 1: rotation by theta(t) = t + t^2/2; theta(3) = 7.5.
    auto spec = SymplecticPathSpec::from_generator(2, 3.0, [](double t) -> Matrix {
        return (1.0 + t) * Matrix::Identity(2, 2);
    });
    double x = 7.5 / (2 * pi);
    HalfInt expected = HalfInt::whole(snapped_floor(x) + snapped_ceil(x));
    CHECK(cz_index(spec).mu_cz == expected);
}

TEST_CASE("non-symmetric generator is rejected") {
    auto spec = SymplecticPathSpec::from_generator(2, 1.0, [](double) -> Matrix {
        Matrix S(2, 2);
        S << 0.0, 1.0, -1.0, 0.0;
        return S;
    });
    CHECK_THROWS_AS(cz_index(spec), NonSymmetricGenerator);
}

TEST_CASE("degenerate crossing reported and fixable by perturbation") {
    // S(t) = (t - t0) * 1 with t0 = 2*sqrt(pi): the winding reaches -2pi
    // exactly where S vanishes, so the crossing form is degenerate.
    const double t0 = 2.0 * std::sqrt(pi);
    auto spec = SymplecticPathSpec::from_generator(2, 4.0, [t0](double t) -> Matrix {
        return (t - t0) * Matrix::Identity(2, 2);
    });
    CHECK_THROWS_AS(cz_index(spec), DegenerateCrossing);
    CHECK_NOTHROW(cz_index(spec, Tolerances{}, 0.05));
}

TEST_CASE("mean index") {
    CHECK(mean_index(rot(1.0, 2 * pi)) == doctest::Approx(2.0));
    CHECK(mean_index(SymplecticPathSpec::from_blocks({Block::hyperbolic()}, 9.0)) ==
          doctest::Approx(0.0));
    CHECK(mean_index(rot(0.8, 5 * pi / 2)) == doctest::Approx(2.0));
    auto gen = SymplecticPathSpec::from_generator(
        2, 1.0, [](double) -> Matrix { return Matrix::Identity(2, 2); });
    CHECK_THROWS_AS(mean_index(gen), UnsupportedGenerator);
}

TEST_CASE("parity: nondegenerate endpoints give integer indices") {
    auto res = cz_index(rot(1.0, 5.0));
    CHECK(res.mu_cz.is_integer());
}

TEST_CASE("iteration bound") {
    CHECK(iteration_check(rot(1.0, 1.0), 2 * pi, 3) == doctest::Approx(0.0));
    CHECK(iteration_check(rot(1.0, 1.0), pi, 1) == doctest::Approx(0.0));
    CHECK(std::abs(iteration_check(rot(0.9, 1.0), pi, 5)) <= 2.0 + 1e-9);
}

TEST_CASE("handle orbit index") {
    CHECK(handle_orbit_index(2 * pi, {1.0}, 1.0, 1, 2) == 2);
    // alpha*A_j*C_z/(2pi) in (0,1) for every j: each term contributes 0+1.
    CHECK(handle_orbit_index(0.01, {1.0, 2.0, 3.0}, 1.0, 0, 3) == 3);
    long long prev = handle_orbit_index(0.1, {1.0, 2.5}, 1.3, 1, 3);
    for (double alpha = 0.2; alpha < 30.0; alpha += 0.1) {
        long long cur = handle_orbit_index(alpha, {1.0, 2.5}, 1.3, 1, 3);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK(handle_orbit_index(1e9, {1.0, 2.5}, 1.3, 1, 3) > 1000000);
    CHECK_THROWS_AS(handle_orbit_index(1.0, {1.0}, 1.0, 2, 2), math_error);
}

TEST_CASE("snapped floor and ceil") {
    CHECK(snapped_floor(2.0 - 1e-12) == 2);
    CHECK(snapped_ceil(2.0 + 1e-12) == 2);
    CHECK(snapped_floor(2.5) == 2);
    CHECK(snapped_ceil(2.5) == 3);
    CHECK(snapped_floor(-2.5) == -3);
    CHECK(snapped_ceil(-2.5) == -2);
}

TEST_CASE("half integers") {
    CHECK(HalfInt(3).str() == "3/2");
    CHECK(HalfInt::whole(2).str() == "2");
    CHECK(HalfInt(3) + HalfInt(1) == HalfInt::whole(2));
    CHECK(!HalfInt(3).is_integer());
}
