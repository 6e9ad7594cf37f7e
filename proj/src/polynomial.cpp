#include "diagasym/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "diagasym/univariate.hpp"

namespace diagasym {

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da < db;
  // Within a degree: lexicographically larger first, so x^2 precedes x*y.
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial Polynomial::constant(std::vector<std::string> vars, const Rational& value) {
  Polynomial p(std::move(vars));
  p.add_term(Exponents(p.dimension(), 0), value);
  return p;
}

Polynomial Polynomial::variable(std::vector<std::string> vars, std::size_t index) {
  Polynomial p(std::move(vars));
  if (index >= p.dimension()) throw Error("variable index out of range");
  Exponents e(p.dimension(), 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

Rational Polynomial::constant_term() const {
  return coefficient(Exponents(dimension(), 0));
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::total_degree() const {
  unsigned deg = 0;
  for (const auto& [e, c] : terms_)
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0u));
  return deg;
}

unsigned Polynomial::degree_in(std::size_t var_index) const {
  if (var_index >= dimension()) throw Error("variable index out of range");
  unsigned deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e[var_index]);
  return deg;
}

double Polynomial::coefficient_scale() const {
  double scale = 0.0;
  for (const auto& [e, c] : terms_)
    scale = std::max(scale, std::abs(to_double(c)));
  return scale;
}

void Polynomial::add_term(const Exponents& e, const Rational& coeff) {
  if (e.size() != dimension()) throw Error("exponent vector length mismatch");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(e, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (vars_ != rhs.vars_) throw Error("polynomials over different variables");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (vars_ != rhs.vars_) throw Error("polynomials over different variables");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (vars_ != rhs.vars_) throw Error("polynomials over different variables");
  Polynomial out(vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      Exponents e(dimension());
      for (std::size_t i = 0; i < dimension(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  *this = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  return vars_ == rhs.vars_ && terms_ == rhs.terms_;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(vars_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::differentiate(std::size_t var_index) const {
  if (var_index >= dimension()) throw Error("variable index out of range");
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var_index] == 0) continue;
    Exponents d = e;
    d[var_index] -= 1;
    out.add_term(d, c * Rational(e[var_index]));
  }
  return out;
}

namespace {

// Power tables per coordinate keep evaluation O(#terms * d).
template <typename T>
std::vector<std::vector<T>> power_tables(const Polynomial& p, std::span<const T> z) {
  std::vector<std::vector<T>> pows(p.dimension());
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    const unsigned deg = p.is_zero() ? 0 : p.degree_in(i);
    pows[i].resize(deg + 1);
    pows[i][0] = T(1);
    for (unsigned k = 1; k <= deg; ++k) pows[i][k] = pows[i][k - 1] * z[i];
  }
  return pows;
}

}  // namespace

Complex Polynomial::evaluate(std::span<const Complex> z) const {
  if (z.size() != dimension()) throw Error("evaluation point dimension mismatch");
  const auto pows = power_tables<Complex>(*this, z);
  Complex acc{0.0, 0.0};
  for (const auto& [e, c] : terms_) {
    Complex term{to_double(c), 0.0};
    for (std::size_t i = 0; i < dimension(); ++i) term *= pows[i][e[i]];
    acc += term;
  }
  return acc;
}

double Polynomial::evaluate(std::span<const double> z) const {
  if (z.size() != dimension()) throw Error("evaluation point dimension mismatch");
  const auto pows = power_tables<double>(*this, z);
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = to_double(c);
    for (std::size_t i = 0; i < dimension(); ++i) term *= pows[i][e[i]];
    acc += term;
  }
  return acc;
}

Rational Polynomial::evaluate_exact(std::span<const Rational> z) const {
  if (z.size() != dimension()) throw Error("evaluation point dimension mismatch");
  const auto pows = power_tables<Rational>(*this, z);
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < dimension(); ++i) term *= pows[i][e[i]];
    acc += term;
  }
  return acc;
}

bool Polynomial::is_symmetric() const {
  // Adjacent transpositions generate S_d.
  for (std::size_t i = 0; i + 1 < dimension(); ++i) {
    Polynomial swapped(vars_);
    for (const auto& [e, c] : terms_) {
      Exponents s = e;
      std::swap(s[i], s[i + 1]);
      swapped.terms_.emplace(std::move(s), c);
    }
    if (!(swapped == *this)) return false;
  }
  return true;
}

UnivariatePolynomial Polynomial::diagonal_restriction() const {
  std::vector<Rational> coeffs(total_degree() + 1, Rational(0));
  for (const auto& [e, c] : terms_)
    coeffs[std::accumulate(e.begin(), e.end(), 0u)] += c;
  return UnivariatePolynomial(std::move(coeffs));
}

bool Polynomial::support_lattice_spans() const {
  if (terms_.empty()) throw Error("support of the zero polynomial");
  const std::size_t d = dimension();
  std::vector<std::vector<long long>> rows;
  rows.reserve(terms_.size());
  for (const auto& [e, c] : terms_)
    rows.emplace_back(e.begin(), e.end());
  if (rows.size() < d) return false;

  // gcd over all d x d minors; 1 means the rows generate Z^d, 0 means the
  // rank is deficient. Exponents are tiny, so long long minors are exact.
  long long g = 0;
  std::vector<std::size_t> idx(d);
  std::vector<bool> select(rows.size(), false);
  std::fill(select.begin(), select.begin() + static_cast<long>(d), true);
  do {
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (select[r]) idx[k++] = r;
    // Fraction-free d x d determinant by cofactor expansion (d is small).
    std::vector<std::vector<long long>> m(d, std::vector<long long>(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t cix = 0; cix < d; ++cix) m[r][cix] = rows[idx[r]][cix];
    // Gaussian elimination over rationals would need fractions; use Bareiss.
    long long sign = 1, prev = 1;
    bool singular = false;
    for (std::size_t k2 = 0; k2 + 1 < d && !singular; ++k2) {
      if (m[k2][k2] == 0) {
        std::size_t piv = k2 + 1;
        while (piv < d && m[piv][k2] == 0) ++piv;
        if (piv == d) {
          singular = true;
          break;
        }
        std::swap(m[k2], m[piv]);
        sign = -sign;
      }
      for (std::size_t i = k2 + 1; i < d; ++i)
        for (std::size_t j = k2 + 1; j < d; ++j)
          m[i][j] = (m[i][j] * m[k2][k2] - m[i][k2] * m[k2][j]) / prev;
      prev = m[k2][k2];
    }
    const long long det = singular ? 0 : sign * m[d - 1][d - 1];
    g = std::gcd(g, det);
    if (g == 1) return true;
  } while (std::prev_permutation(select.begin(), select.end()));
  return g == 1;
}

Polynomial Polynomial::substitute_equal(std::size_t i, std::size_t j) const {
  if (i >= dimension() || j >= dimension()) throw Error("variable index out of range");
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents s = e;
    s[j] += s[i];
    s[i] = 0;
    out.add_term(s, c);
  }
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    std::string mono;
    for (std::size_t i = 0; i < dimension(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out << mag.str();
    } else if (mag == 1) {
      out << mono;
    } else {
      out << mag.str() << "*" << mono;
    }
  }
  return out.str();
}

Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
Polynomial operator*(Polynomial lhs, const Polynomial& rhs) { return lhs *= rhs; }
Polynomial operator*(const Rational& scalar, Polynomial p) { return p *= scalar; }

}  // namespace diagasym
