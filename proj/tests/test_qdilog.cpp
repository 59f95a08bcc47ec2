#include "doctest.h"

#include "teich/qdilog.hpp"

#include <cmath>
#include <numbers>

using namespace teich::qdilog;

namespace {

constexpr double kPi = std::numbers::pi;

Params with_hbar(double hbar) {
    Params p;
    p.hbar = hbar;
    return p;
}

}  // namespace

TEST_CASE("parameters are validated") {
    CHECK_NOTHROW(with_hbar(1).validate());
    CHECK_THROWS_AS(with_hbar(0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(with_hbar(-1).validate(), std::invalid_argument);
    Params p = with_hbar(4);
    CHECK(p.effective_delta() == doctest::Approx(0.5 * kPi / 4));
    p.delta = 0.9;  // above pi / hbar
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = with_hbar(1);
    p.tol = 1e-13;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_THROWS_AS(psi({0, kPi + 1.5}, with_hbar(1)), std::invalid_argument);
}

TEST_CASE("functional equation on the grid") {
    for (double hbar : {0.3, 1.0, kPi / 2}) {
        const auto p = with_hbar(hbar);
        for (double x : Grid{}.points()) CHECK(functional_residual(x, p) <= 1e-8);
    }
}

TEST_CASE("unitarity on the real line") {
    for (double hbar : {0.3, 1.0, kPi / 2}) {
        const auto p = with_hbar(hbar);
        for (double x : Grid{}.points()) CHECK(std::abs(std::abs(psi(x, p)) - 1) <= 1e-8);
    }
}

TEST_CASE("psi tends to 1 far to the left") {
    const auto p = with_hbar(1);
    const auto v = psi(-30.0, p);
    CHECK(std::abs(std::abs(v) - 1) < 1e-6);
    CHECK(std::abs(std::arg(v)) < 1e-6);
}

TEST_CASE("contour and refinement independence") {
    for (double hbar : {0.3, 1.0, kPi / 2}) {
        const auto p = with_hbar(hbar);
        Params half = p;
        half.delta = p.effective_delta() / 2;
        const auto fine = refined(p);
        for (double x : {-4.0, -1.0, 0.0, 0.5, 3.0}) {
            for (const Complex z : {Complex(x, 0), Complex(x, hbar), Complex(x, -hbar)}) {
                const auto v = psi(z, p);
                CHECK(std::abs(psi(z, half) - v) / std::abs(v) < 1e-10);
                CHECK(std::abs(psi(z, fine) - v) / std::abs(v) < 1e-10);
            }
        }
    }
}

TEST_CASE("regression value at hbar = pi") {
    const auto v = psi(0.0, with_hbar(kPi));
    CHECK(std::abs(v - Complex(0.9659258262890683, 0.2588190451025208)) < 1e-9);
}

TEST_CASE("dropping the factor breaks the functional equation") {
    const auto p = with_hbar(1);
    for (double x : {0.0, 1.0, 2.5, 5.0}) CHECK(functional_residual(x, p, false) >= 0.1);
}

TEST_CASE("a starved quadrature reports failure") {
    Params p = with_hbar(0.3);
    p.max_depth = 0;
    p.panel = 40;
    CHECK_THROWS_AS(psi(Complex(5, 0.3), p), QDilogError);
}

TEST_CASE("grid parsing and tables") {
    const auto g = parse_grid("-5:5:0.25");
    CHECK(g.points().size() == 41);
    CHECK(g.points().back() == doctest::Approx(5));
    CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("1:x:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("2:1:0.5"), std::invalid_argument);
    const auto rows = tabulate(parse_grid("0:1:0.5"), with_hbar(1));
    REQUIRE(rows.size() == 3);
    const auto csv = to_csv(rows);
    CHECK(csv.rfind("x,re_psi,im_psi,abs_psi,functional_residual\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
