#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "diagasym/critical.hpp"

using namespace diagasym;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYZ = {"x", "y", "z"};

Polynomial delannoy_J() { return parse_polynomial("1 - x - y - x*y", XY); }
Polynomial zigzag_J() { return parse_polynomial("1 - x - y + x*y - x^2*y^2", XY); }
Polynomial ternary_J() { return parse_polynomial("1 - x - y - z", XYZ); }
// Alignments with minimum block size 2, two rows.
Polynomial block2_J() {
  return parse_polynomial("1 - x*y - (x + y)*(1 - x*y + x^2*y^2)", XY);
}

std::vector<Complex> cpoint(std::initializer_list<double> coords) {
  std::vector<Complex> z;
  for (double c : coords) z.emplace_back(c, 0.0);
  return z;
}

bool has_point(const std::vector<CriticalPoint>& pts,
               const std::vector<Complex>& target, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](const CriticalPoint& p) {
    double dist = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i)
      dist = std::max(dist, std::abs(p.point[i] - target[i]));
    return dist <= tol;
  });
}

}  // namespace

TEST_CASE("build_critical_system: Delannoy main diagonal simplifies to y = x") {
  const auto sys = build_critical_system(delannoy_J(), Direction({1, 1}));
  REQUIRE(sys.equations.size() == 2);
  CHECK(sys.equations[0] == delannoy_J());
  CHECK(sys.equations[1] == parse_polynomial("y - x", XY));
}

TEST_CASE("build_critical_system: Delannoy general direction") {
  // a_d x J_x - a_1 y J_y = b*x*(-1-y) - a*y*(-1-x) for direction (a, b).
  const auto sys = build_critical_system(delannoy_J(), Direction({3, 2}));
  CHECK(sys.equations[1] ==
        parse_polynomial("2*x*(0 - 1 - y) - 3*y*(0 - 1 - x)", XY));
}

TEST_CASE("build_critical_system: ternary general direction") {
  const auto sys = build_critical_system(ternary_J(), Direction({1, 2, 3}));
  REQUIRE(sys.equations.size() == 3);
  // c x J_x - a z J_z = a z - c x and c y J_y - b z J_z = b z - c y.
  CHECK(sys.equations[1] == parse_polynomial("1*z - 3*x", XYZ));
  CHECK(sys.equations[2] == parse_polynomial("2*z - 3*y", XYZ));
}

TEST_CASE("direction validation") {
  CHECK_THROWS_AS(Direction({0, 1}), Error);
  CHECK_THROWS_AS(Direction({}), Error);
  CHECK_THROWS_AS(build_critical_system(delannoy_J(), Direction({1, 1, 1})), Error);
}

TEST_CASE("residual_check") {
  const auto sys = build_critical_system(delannoy_J(), Direction({1, 1}));
  const double r = std::sqrt(2.0) - 1.0;
  CHECK(residual_check(sys, cpoint({r, r}), 1e-10));
  CHECK_FALSE(residual_check(sys, cpoint({0.5, 0.5}), 1e-10));

  const auto tsys = build_critical_system(ternary_J(), Direction({1, 1, 1}));
  CHECK(residual_check(tsys, cpoint({1.0 / 3, 1.0 / 3, 1.0 / 3}), 1e-12));
  CHECK_THROWS_AS(residual_check(tsys, cpoint({0.5, 0.5, 0.5}), -1.0), Error);
}

TEST_CASE("solve_symmetric_positive on the bundled fixtures") {
  const auto zig = solve_symmetric_positive(zigzag_J(), Direction({1, 1}));
  const double phi_inv = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(std::abs(zig.point[0].real() - phi_inv) < 1e-14);
  CHECK(std::abs(zig.point[1].real() - phi_inv) < 1e-14);
  CHECK(zig.is_positive_real);
  CHECK(zig.is_smooth);
  CHECK(zig.is_simple_in_last);

  const Polynomial align3 = parse_polynomial("1 - (1/2)*(1+x)*(1+y)*(1+z)", XYZ);
  const auto al = solve_symmetric_positive(align3, Direction({1, 1, 1}));
  CHECK(std::abs(al.point[0].real() - (std::cbrt(2.0) - 1.0)) < 1e-14);

  const auto ter = solve_symmetric_positive(ternary_J(), Direction({1, 1, 1}));
  CHECK(std::abs(ter.point[0].real() - 1.0 / 3.0) < 1e-15);

  CHECK_THROWS_AS(solve_symmetric_positive(delannoy_J(), Direction({2, 1})), Error);
  CHECK_THROWS_AS(
      solve_symmetric_positive(parse_polynomial("1 - x - 2*y", XY), Direction({1, 1})),
      Error);
}

TEST_CASE("solve_positive_newton: Lattice-path directions") {
  const auto p11 = solve_positive_newton(delannoy_J(), Direction({1, 1}));
  const double r = std::sqrt(2.0) - 1.0;
  CHECK(std::abs(p11.point[0] - Complex{r, 0}) < 1e-10);
  CHECK(std::abs(p11.point[1] - Complex{r, 0}) < 1e-10);
  CHECK(p11.residual <= 1e-10);

  // Direction (3, 2), L = sqrt(13): c = ((-b+L)/a, (-a+L)/b).
  const double L = std::sqrt(13.0);
  const auto p32 = solve_positive_newton(delannoy_J(), Direction({3, 2}));
  CHECK(std::abs(p32.point[0] - Complex{(-2 + L) / 3, 0}) < 1e-10);
  CHECK(std::abs(p32.point[1] - Complex{(-3 + L) / 2, 0}) < 1e-10);
}

TEST_CASE("solve_positive_newton: ternary off-diagonal hits a/(a1+a2+a3)") {
  const auto p = solve_positive_newton(ternary_J(), Direction({1, 2, 3}));
  CHECK(std::abs(p.point[0] - Complex{1.0 / 6, 0}) < 1e-12);
  CHECK(std::abs(p.point[1] - Complex{2.0 / 6, 0}) < 1e-12);
  CHECK(std::abs(p.point[2] - Complex{3.0 / 6, 0}) < 1e-12);

  for (const auto& a : {std::vector<long long>{2, 1, 1}, {5, 3, 4}, {1, 1, 7}}) {
    const auto q = solve_positive_newton(ternary_J(), Direction(a));
    const double s = static_cast<double>(a[0] + a[1] + a[2]);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(std::abs(q.point[i] - Complex{static_cast<double>(a[i]) / s, 0}) < 1e-12);
  }
}

TEST_CASE("solve_positive_newton agrees with the symmetric shortcut") {
  for (const auto& J :
       {zigzag_J(), delannoy_J(), ternary_J(),
        parse_polynomial("1 - (1/2)*(1+x)*(1+y)", XY), block2_J()}) {
    const Direction a(std::vector<long long>(J.dimension(), 1));
    const auto sym = solve_symmetric_positive(J, a);
    const auto newt = solve_positive_newton(J, a);
    for (std::size_t i = 0; i < J.dimension(); ++i)
      CHECK(std::abs(sym.point[i] - newt.point[i]) < 1e-9);
  }
}

TEST_CASE("solve_bivariate_complete: zigzag enumerates all four points") {
  const auto pts = solve_bivariate_complete(zigzag_J(), Direction({1, 1}));
  REQUIRE(pts.size() == 4);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s3 = std::sqrt(3.0) / 2.0;
  CHECK(has_point(pts, cpoint({1 / phi, 1 / phi}), 1e-10));
  CHECK(has_point(pts, cpoint({-phi, -phi}), 1e-10));
  CHECK(has_point(pts, {{0.5, s3}, {0.5, s3}}, 1e-10));
  CHECK(has_point(pts, {{0.5, -s3}, {0.5, -s3}}, 1e-10));

  const auto sys = build_critical_system(zigzag_J(), Direction({1, 1}));
  for (const auto& p : pts) {
    CHECK(residual_check(sys, p.point, 1e-9));
    CHECK(p.is_smooth);
  }
  // Exactly one positive-real point.
  CHECK(std::count_if(pts.begin(), pts.end(),
                      [](const CriticalPoint& p) { return p.is_positive_real; }) == 1);
}

TEST_CASE("solve_bivariate_complete: Delannoy closed forms") {
  const auto p11 = solve_bivariate_complete(delannoy_J(), Direction({1, 1}));
  REQUIRE(p11.size() == 2);
  const double r2 = std::sqrt(2.0);
  CHECK(has_point(p11, cpoint({r2 - 1, r2 - 1}), 1e-10));
  CHECK(has_point(p11, cpoint({-r2 - 1, -r2 - 1}), 1e-10));

  // Direction (2, 1), L = sqrt(5): points ((-1 +- L)/2, -2 +- L).
  const auto p21 = solve_bivariate_complete(delannoy_J(), Direction({2, 1}));
  REQUIRE(p21.size() == 2);
  const double L = std::sqrt(5.0);
  CHECK(has_point(p21, cpoint({(-1 + L) / 2, -2 + L}), 1e-10));
  CHECK(has_point(p21, cpoint({(-1 - L) / 2, -2 - L}), 1e-10));
}

TEST_CASE("solve_bivariate_complete: non-finite critical set is reported") {
  // J = 1 - x*y depends on the product only, so the main-diagonal
  // proportionality equation vanishes identically.
  const Polynomial J = parse_polynomial("1 - x*y", XY);
  CHECK_THROWS_AS(solve_bivariate_complete(J, Direction({1, 1})), Error);
}

TEST_CASE("direction scaling leaves the solution set unchanged") {
  for (long long k : {2LL, 3LL}) {
    const auto base = solve_bivariate_complete(delannoy_J(), Direction({2, 1}));
    const auto scaled = solve_bivariate_complete(delannoy_J(), Direction({2 * k, k}));
    REQUIRE(base.size() == scaled.size());
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t c = 0; c < 2; ++c)
        CHECK(std::abs(base[i].point[c] - scaled[i].point[c]) < 1e-10);
  }
}

TEST_CASE("permutation equivariance of bivariate solves") {
  // Swapping the variables and the direction swaps the solution coordinates.
  const auto fwd = solve_bivariate_complete(delannoy_J(), Direction({2, 1}));
  const auto rev = solve_bivariate_complete(delannoy_J(), Direction({1, 2}));
  REQUIRE(fwd.size() == rev.size());
  for (const auto& p : fwd) {
    std::vector<Complex> swapped = {p.point[1], p.point[0]};
    CHECK(has_point(rev, swapped, 1e-10));
  }
}

TEST_CASE("classify_contributing: aperiodic Delannoy case") {
  const auto pts = solve_bivariate_complete(delannoy_J(), Direction({1, 1}));
  const auto res = classify_contributing(delannoy_J(), Direction({1, 1}), pts, true);
  CHECK(res.aperiodic_case);
  CHECK(res.contrib_certain);
  CHECK(res.companions_on_torus.empty());
  CHECK(res.positive_point.is_positive_real);
}

TEST_CASE("classify_contributing: zigzag certified through complete enumeration") {
  const auto pts = solve_bivariate_complete(zigzag_J(), Direction({1, 1}));
  const auto res = classify_contributing(zigzag_J(), Direction({1, 1}), pts, true);
  CHECK_FALSE(res.aperiodic_case);  // P = x + y - xy + x^2 y^2 has a negative term
  CHECK(res.companions_on_torus.empty());
  CHECK_FALSE(res.diagonal_degenerate);
  CHECK(res.contrib_certain);
}

TEST_CASE("classify_contributing: block-size-2 alignments stays uncertified") {
  const auto pts = solve_bivariate_complete(block2_J(), Direction({1, 1}));
  REQUIRE(pts.size() == 5);
  const auto res = classify_contributing(block2_J(), Direction({1, 1}), pts, true);
  CHECK_FALSE(res.aperiodic_case);
  CHECK(res.diagonal_degenerate);
  CHECK_FALSE(res.contrib_certain);
  CHECK(std::abs(res.positive_point.point[0].real() - 0.47041708699481993) < 1e-10);
}

TEST_CASE("classify_contributing error paths") {
  const auto pts = solve_bivariate_complete(zigzag_J(), Direction({1, 1}));
  std::vector<CriticalPoint> no_positive;
  for (const auto& p : pts)
    if (!p.is_positive_real) no_positive.push_back(p);
  CHECK_THROWS_WITH_AS(
      classify_contributing(zigzag_J(), Direction({1, 1}), no_positive, true),
      "no positive critical point supplied", Error);

  std::vector<CriticalPoint> doubled = pts;
  for (const auto& p : pts)
    if (p.is_positive_real) {
      auto q = p;
      for (auto& z : q.point) z += 0.001;
      doubled.push_back(q);
    }
  CHECK_THROWS_AS(
      classify_contributing(zigzag_J(), Direction({1, 1}), doubled, true), Error);
}

TEST_CASE("every solver output passes residual_check at its tolerance") {
  const struct {
    Polynomial J;
    std::vector<long long> a;
  } cases[] = {
      {delannoy_J(), {1, 1}},
      {delannoy_J(), {3, 2}},
      {zigzag_J(), {1, 1}},
      {ternary_J(), {1, 2, 3}},
      {block2_J(), {1, 1}},
  };
  for (const auto& c : cases) {
    const Direction a(c.a);
    const auto sys = build_critical_system(c.J, a);
    const auto p = solve_positive_newton(c.J, a);
    CHECK(residual_check(sys, p.point, 1e-10));
    if (c.J.dimension() == 2)
      for (const auto& q : solve_bivariate_complete(c.J, a))
        CHECK(residual_check(sys, q.point, 1e-9));
  }
}
