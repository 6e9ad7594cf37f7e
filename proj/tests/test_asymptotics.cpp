#include <doctest.h>

#include <cmath>

#include "diagasym/asymptotics.hpp"
#include "diagasym/series_oracle.hpp"

using namespace diagasym;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYZ = {"x", "y", "z"};
constexpr double PI = 3.14159265358979323846;

Polynomial delannoy_J() { return parse_polynomial("1 - x - y - x*y", XY); }
Polynomial zigzag_J() { return parse_polynomial("1 - x - y + x*y - x^2*y^2", XY); }
Polynomial zigzag_I() { return parse_polynomial("1 + x*y + x^2*y^2", XY); }
Polynomial ternary_J() { return parse_polynomial("1 - x - y - z", XYZ); }

Polynomial alignments_J(unsigned d) {
  std::vector<std::string> vars;
  for (unsigned i = 0; i < d; ++i) vars.push_back("x" + std::to_string(i + 1));
  std::string expr = "1 - (1/2)";
  for (const auto& v : vars) expr += "*(1+" + v + ")";
  return parse_polynomial(expr, vars);
}

ContribResult classify_via_newton(const Polynomial& J, const Direction& a) {
  std::vector<CriticalPoint> pts = {solve_positive_newton(J, a)};
  return classify_contributing(J, a, pts, false);
}

// Certification-grade route: complete enumeration for d = 2, the aperiodic
// positive-point path otherwise.
ContribResult classify_full(const Polynomial& J, const Direction& a) {
  if (J.dimension() == 2) {
    const auto pts = solve_bivariate_complete(J, a);
    return classify_contributing(J, a, pts, true);
  }
  return classify_via_newton(J, a);
}

// Closed form for the lattice-path Hessian determinant.
double delannoy_h(double a, double b) {
  const double L = std::sqrt(a * a + b * b);
  return -2 * (b - L) * a * (a * a + b * b - a * L) /
         ((a - L) * (a - L) * (a - b + L) * (a - b + L));
}

}  // namespace

TEST_CASE("hessian_matrix: zigzag value from the general entries") {
  const auto c = solve_symmetric_positive(zigzag_J(), Direction({1, 1}));
  const auto h = hessian_matrix(zigzag_J(), c);
  const double expected = 4.0 / (3.0 * std::sqrt(5.0) - 5.0);
  REQUIRE(h.matrix.size() == 1);
  CHECK(std::abs(h.determinant - Complex{expected, 0}) < 1e-10);
  CHECK_FALSE(h.symmetric_shortcut_used);
}

TEST_CASE("hessian_matrix: lattice-path closed form across directions") {
  for (const auto& a : {std::vector<long long>{1, 1}, {2, 1}, {3, 2}}) {
    const auto c = solve_positive_newton(delannoy_J(), Direction(a));
    const auto h = hessian_matrix(delannoy_J(), c);
    const double expected =
        delannoy_h(static_cast<double>(a[0]), static_cast<double>(a[1]));
    CHECK(std::abs(h.determinant - Complex{expected, 0}) < 1e-9 * expected);
  }
}

TEST_CASE("hessian_matrix: ternary h = ab(a+b+c)/c^3") {
  const auto unit = solve_positive_newton(ternary_J(), Direction({1, 1, 1}));
  CHECK(std::abs(hessian_matrix(ternary_J(), unit).determinant - Complex{3, 0}) < 1e-10);

  const auto off = solve_positive_newton(ternary_J(), Direction({1, 2, 3}));
  const double expected = 1.0 * 2.0 * 6.0 / 27.0;  // 4/9
  CHECK(std::abs(hessian_matrix(ternary_J(), off).determinant - Complex{expected, 0}) <
        1e-10);
}

TEST_CASE("hessian_det_symmetric matches the closed forms") {
  const auto zc = solve_symmetric_positive(zigzag_J(), Direction({1, 1}));
  CHECK(std::abs(hessian_det_symmetric(zigzag_J(), zc) -
                 Complex{4.0 / (3.0 * std::sqrt(5.0) - 5.0), 0}) < 1e-10);

  for (unsigned d : {2u, 3u, 4u}) {
    const Polynomial J = alignments_J(d);
    const Direction a(std::vector<long long>(d, 1));
    const auto c = solve_symmetric_positive(J, a);
    const double expected = d * std::pow(2.0, (1.0 - d) / d);
    CHECK(std::abs(hessian_det_symmetric(J, c) - Complex{expected, 0}) < 1e-10);
  }

  const auto tc = solve_symmetric_positive(ternary_J(), Direction({1, 1, 1}));
  CHECK(std::abs(hessian_det_symmetric(ternary_J(), tc) - Complex{3, 0}) < 1e-12);
}

TEST_CASE("general Hessian agrees with the symmetric shortcut") {
  struct Fixture {
    Polynomial J;
    std::size_t d;
  };
  std::vector<Fixture> fixtures = {{zigzag_J(), 2},      {ternary_J(), 3},
                                   {alignments_J(2), 2}, {alignments_J(3), 3},
                                   {alignments_J(4), 4}, {delannoy_J(), 2}};
  for (const auto& f : fixtures) {
    const Direction a(std::vector<long long>(f.d, 1));
    const auto c = solve_symmetric_positive(f.J, a);
    const Complex general = hessian_matrix(f.J, c).determinant;
    const Complex shortcut = hessian_det_symmetric(f.J, c);
    CHECK(std::abs(general - shortcut) <= 1e-9 * std::abs(shortcut));
  }
}

TEST_CASE("leading_coefficient_b0 on the bundled fixtures") {
  // zigzag: b0 = 2 / sqrt(sqrt(5) pi), which also comes out of the
  // univariate singularity analysis of the algebraic diagonal.
  const auto zc = solve_symmetric_positive(zigzag_J(), Direction({1, 1}));
  const Complex hz = hessian_det_symmetric(zigzag_J(), zc);
  const Complex b0z = leading_coefficient_b0(zigzag_I(), zigzag_J(), zc, hz);
  CHECK(std::abs(b0z - Complex{2.0 / std::sqrt(std::sqrt(5.0) * PI), 0}) < 1e-9);
  CHECK(b0z.imag() == 0.0);

  // Delannoy main diagonal: sqrt(1 / (sqrt(2) (2 - sqrt(2))^2 2 pi)).
  const Polynomial one = parse_polynomial("1", XY);
  const auto dc = solve_symmetric_positive(delannoy_J(), Direction({1, 1}));
  const Complex hd = hessian_det_symmetric(delannoy_J(), dc);
  const Complex b0d = leading_coefficient_b0(one, delannoy_J(), dc, hd);
  const double s2 = std::sqrt(2.0);
  CHECK(std::abs(b0d - Complex{std::sqrt(1.0 / (s2 * (2 - s2) * (2 - s2) * 2 * PI)), 0}) <
        1e-10);

  // Ternary unit: sqrt(3) / (2 pi).
  const Polynomial one3 = parse_polynomial("1", XYZ);
  const auto tc = solve_symmetric_positive(ternary_J(), Direction({1, 1, 1}));
  const Complex ht = hessian_det_symmetric(ternary_J(), tc);
  const Complex b0t = leading_coefficient_b0(one3, ternary_J(), tc, ht);
  CHECK(std::abs(b0t - Complex{std::sqrt(3.0) / (2 * PI), 0}) < 1e-10);

  CHECK_THROWS_AS(leading_coefficient_b0(one, delannoy_J(), dc, Complex{0, 0}),
                  HypothesisError);
}

TEST_CASE("assemble_asymptotics: ternary off-diagonal") {
  const Polynomial one3 = parse_polynomial("1", XYZ);
  const Direction a({1, 2, 3});
  const auto contrib = classify_via_newton(ternary_J(), a);
  REQUIRE(contrib.contrib_certain);
  const auto res = assemble_asymptotics(one3, ternary_J(), a, contrib);

  CHECK(res.growth_per_step == doctest::Approx(432.0).epsilon(1e-12));
  CHECK(std::abs(res.b0 - Complex{3.0 / (2 * PI), 0}) < 1e-12);
  CHECK(res.exponent == Rational(-1));
  CHECK(res.last_coordinate_weight == 3);
  CHECK_FALSE(res.hessian.symmetric_shortcut_used);

  // Against the closed display (a+b+c)^{(a+b+c)n} / (a^{an} b^{bn} c^{cn}) *
  // sqrt((a+b+c)/(abc)) / (2 pi n).
  for (long long n : {1LL, 2LL, 5LL, 10LL}) {
    const double display = std::pow(6.0, 6.0 * n) /
                           (std::pow(2.0, 2.0 * n) * std::pow(3.0, 3.0 * n)) *
                           std::sqrt(6.0 / 6.0) / (2 * PI * n);
    const double mine = evaluate_leading_term(res, n).convert_to<double>();
    CHECK(mine == doctest::Approx(display).epsilon(1e-10));
  }
}

TEST_CASE("assemble_asymptotics: alignments closed display for d = 2, 3, 4") {
  for (unsigned d : {2u, 3u, 4u}) {
    const Polynomial J = alignments_J(d);
    Polynomial I = Polynomial::constant(J.vars(), Rational(1, 2));
    const Direction a(std::vector<long long>(d, 1));
    std::vector<CriticalPoint> pts = {solve_symmetric_positive(J, a)};
    const auto contrib = classify_contributing(J, a, pts, false);
    REQUIRE(contrib.aperiodic_case);
    const auto res = assemble_asymptotics(I, J, a, contrib);
    CHECK(res.hessian.symmetric_shortcut_used);
    CHECK(res.hessian.cross_check_rel_error >= 0);
    CHECK(res.hessian.cross_check_rel_error <= 1e-9);

    const double c = std::pow(2.0, 1.0 / d) - 1.0;
    for (long long n : {1LL, 3LL, 7LL}) {
      const double display =
          std::pow(c, -static_cast<double>(d) * n) /
          (c * std::pow(2.0, (d * d - 1.0) / (2.0 * d)) *
           std::sqrt(d * std::pow(PI * n, d - 1.0)));
      const double mine = evaluate_leading_term(res, n).convert_to<double>();
      CHECK(mine == doctest::Approx(display).epsilon(1e-10));
    }
  }
}

TEST_CASE("assemble_asymptotics: lattice-path display across directions") {
  const Polynomial one = parse_polynomial("1", XY);
  for (const auto& av : {std::vector<long long>{1, 1}, {2, 1}, {3, 2}}) {
    const Direction a(av);
    const auto contrib = classify_via_newton(delannoy_J(), a);
    const auto res = assemble_asymptotics(one, delannoy_J(), a, contrib);
    const double aa = static_cast<double>(av[0]), bb = static_cast<double>(av[1]);
    const double L = std::sqrt(aa * aa + bb * bb);
    const double cx = (-bb + L) / aa, cy = (-aa + L) / bb;
    for (long long n : {2LL, 4LL, 8LL}) {
      const double display = std::pow(cx, -aa * n) * std::pow(cy, -bb * n) *
                             std::sqrt(aa * bb / (L * (aa + bb - L) * (aa + bb - L) *
                                                  2 * PI * n));
      const double mine = evaluate_leading_term(res, n).convert_to<double>();
      CHECK(mine == doctest::Approx(display).epsilon(1e-10));
    }
  }
}

TEST_CASE("evaluate_leading_term: spot values") {
  const auto zc = classify_full(zigzag_J(), Direction({1, 1}));
  const auto zres = assemble_asymptotics(zigzag_I(), zigzag_J(), Direction({1, 1}), zc);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(evaluate_leading_term(zres, 1).convert_to<double>() ==
        doctest::Approx(phi * phi * 2.0 / std::sqrt(std::sqrt(5.0) * PI)).epsilon(1e-12));

  const Polynomial one = parse_polynomial("1", XY);
  const auto dc = classify_via_newton(delannoy_J(), Direction({1, 1}));
  const auto dres = assemble_asymptotics(one, delannoy_J(), Direction({1, 1}), dc);
  CHECK(dres.growth_per_step == doctest::Approx(5.82842712474619).epsilon(1e-12));
  // n = 4: leading term ~ 330.4 vs exact f_{4,4} = 321.
  CHECK(evaluate_leading_term(dres, 4).convert_to<double>() ==
        doctest::Approx(330.43).epsilon(1e-3));
  CHECK_THROWS_AS(evaluate_leading_term(dres, 0), Error);
}

TEST_CASE("direction scaling: evaluate(k*a, n) = evaluate(a, k*n) in logs") {
  const Polynomial one3 = parse_polynomial("1", XYZ);
  for (long long k : {2LL, 3LL}) {
    const Direction base({1, 2, 3});
    const Direction scaled({k, 2 * k, 3 * k});
    const auto rb = assemble_asymptotics(one3, ternary_J(), base,
                                         classify_via_newton(ternary_J(), base));
    const auto rs = assemble_asymptotics(one3, ternary_J(), scaled,
                                         classify_via_newton(ternary_J(), scaled));
    for (long long n : {4LL, 10LL}) {
      const BigFloat lhs = log(evaluate_leading_term(rs, n));
      const BigFloat rhs = log(evaluate_leading_term(rb, k * n));
      CHECK(abs(lhs - rhs).convert_to<double>() <=
            1e-12 * std::abs(rhs.convert_to<double>()));
    }
  }
  // Symmetric route: identical c bit-for-bit, identical terms.
  const Polynomial one = parse_polynomial("1", XY);
  const auto r11 = assemble_asymptotics(one, delannoy_J(), Direction({1, 1}),
                                        classify_via_newton(delannoy_J(), Direction({1, 1})));
  const auto r22 = assemble_asymptotics(one, delannoy_J(), Direction({2, 2}),
                                        classify_via_newton(delannoy_J(), Direction({2, 2})));
  for (long long n : {3LL, 6LL}) {
    const BigFloat lhs = log(evaluate_leading_term(r22, n));
    const BigFloat rhs = log(evaluate_leading_term(r11, 2 * n));
    CHECK(abs(lhs - rhs).convert_to<double>() <=
          1e-12 * std::abs(rhs.convert_to<double>()));
  }
}

TEST_CASE("permutation invariance of the assembled term") {
  // Permute variables and direction together; the leading term is unchanged.
  const Polynomial one3 = parse_polynomial("1", XYZ);
  const auto r123 = assemble_asymptotics(one3, ternary_J(), Direction({1, 2, 3}),
                                         classify_via_newton(ternary_J(), Direction({1, 2, 3})));
  const auto r321 = assemble_asymptotics(one3, ternary_J(), Direction({3, 2, 1}),
                                         classify_via_newton(ternary_J(), Direction({3, 2, 1})));
  CHECK(r123.growth_per_step == doctest::Approx(r321.growth_per_step).epsilon(1e-10));
  for (long long n : {2LL, 5LL}) {
    const double lhs = evaluate_leading_term(r123, n).convert_to<double>();
    const double rhs = evaluate_leading_term(r321, n).convert_to<double>();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
  // A permutation fixing the last coordinate also fixes b0 and the growth.
  const auto r213 = assemble_asymptotics(one3, ternary_J(), Direction({2, 1, 3}),
                                         classify_via_newton(ternary_J(), Direction({2, 1, 3})));
  const auto r123b = assemble_asymptotics(one3, ternary_J(), Direction({1, 2, 3}),
                                          classify_via_newton(ternary_J(), Direction({1, 2, 3})));
  CHECK(std::abs(r213.b0 - r123b.b0) < 1e-10);
  CHECK(r213.growth_per_step == doctest::Approx(r123b.growth_per_step).epsilon(1e-10));
}

TEST_CASE("assemble refuses an uncertified classification unless overridden") {
  const Polynomial J =
      parse_polynomial("1 - x*y - (x + y)*(1 - x*y + x^2*y^2)", XY);
  const Polynomial I = parse_polynomial("1 - x*y + x^2*y^2", XY);
  const auto pts = solve_bivariate_complete(J, Direction({1, 1}));
  const auto contrib = classify_contributing(J, Direction({1, 1}), pts, true);
  REQUIRE_FALSE(contrib.contrib_certain);
  CHECK_THROWS_AS(assemble_asymptotics(I, J, Direction({1, 1}), contrib),
                  HypothesisError);
  const auto res = assemble_asymptotics(I, J, Direction({1, 1}), contrib, true);
  CHECK(res.b0.real() > 0);
}

TEST_CASE("ratio_table converges for the zigzag fixture") {
  const auto contrib = classify_full(zigzag_J(), Direction({1, 1}));
  const auto res = assemble_asymptotics(zigzag_I(), zigzag_J(), Direction({1, 1}), contrib);
  const std::vector<unsigned> bounds = {40, 40};
  const auto table = compute_coefficient_table(zigzag_I(), zigzag_J(), bounds);
  const auto seq = diagonal_sequence(table, Direction({1, 1}), 40);
  const auto ratios = ratio_table(seq, res);
  REQUIRE(ratios.size() == 40);
  // Approaches 1 from above, error roughly halving per doubling.
  const auto eps = [&](long long n) { return std::abs(ratios[n - 1].ratio - 1.0); };
  CHECK(eps(40) < eps(20));
  CHECK(eps(20) < eps(10));
  CHECK(eps(40) <= 0.6 * eps(20));
  CHECK(eps(40) < 0.01);

  // Degenerate sequence of length 1 -> empty table.
  DiagonalSequence tiny{Direction({1, 1}), {Rational(1)}};
  CHECK(ratio_table(tiny, res).empty());
}
