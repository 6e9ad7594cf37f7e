#include "diagasym/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diagasym {

UnivariatePolynomial::UnivariatePolynomial(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
  normalize();
}

UnivariatePolynomial UnivariatePolynomial::constant(const Rational& c) {
  return UnivariatePolynomial(std::vector<Rational>{c});
}

void UnivariatePolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UnivariatePolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Rational UnivariatePolynomial::leading_coeff() const {
  if (is_zero()) throw Error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational UnivariatePolynomial::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double UnivariatePolynomial::evaluate(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * t + to_double(*it);
  return acc;
}

Complex UnivariatePolynomial::evaluate(const Complex& t) const {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * t + Complex{to_double(*it), 0.0};
  return acc;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
  if (coeffs_.size() <= 1) return UnivariatePolynomial();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(i);
  return UnivariatePolynomial(std::move(d));
}

UnivariatePolynomial UnivariatePolynomial::operator-() const {
  std::vector<Rational> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = -coeffs_[i];
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial& UnivariatePolynomial::operator+=(const UnivariatePolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

UnivariatePolynomial& UnivariatePolynomial::operator-=(const UnivariatePolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

UnivariatePolynomial& UnivariatePolynomial::operator*=(const UnivariatePolynomial& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

UnivariatePolynomial& UnivariatePolynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

bool UnivariatePolynomial::operator==(const UnivariatePolynomial& rhs) const {
  return coeffs_ == rhs.coeffs_;
}

std::pair<UnivariatePolynomial, UnivariatePolynomial> UnivariatePolynomial::divrem(
    const UnivariatePolynomial& rhs) const {
  if (rhs.is_zero()) throw Error("division by the zero polynomial");
  UnivariatePolynomial rem = *this;
  if (degree() < rhs.degree()) return {UnivariatePolynomial(), rem};
  std::vector<Rational> q(static_cast<std::size_t>(degree() - rhs.degree()) + 1, Rational(0));
  const Rational lead = rhs.leading_coeff();
  while (!rem.is_zero() && rem.degree() >= rhs.degree()) {
    const std::size_t shift = static_cast<std::size_t>(rem.degree() - rhs.degree());
    const Rational factor = rem.leading_coeff() / lead;
    q[shift] = factor;
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
      rem.coeffs_[i + shift] -= factor * rhs.coeffs_[i];
    rem.normalize();
  }
  return {UnivariatePolynomial(std::move(q)), rem};
}

UnivariatePolynomial UnivariatePolynomial::divide_exact(const UnivariatePolynomial& rhs) const {
  auto [q, r] = divrem(rhs);
  if (!r.is_zero()) throw Error("polynomial division left a remainder");
  return q;
}

UnivariatePolynomial gcd(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  UnivariatePolynomial f = a, g = b;
  while (!g.is_zero()) {
    auto [q, r] = f.divrem(g);
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.is_zero()) f *= Rational(1) / f.leading_coeff();  // monic gcd
  return f;
}

UnivariatePolynomial UnivariatePolynomial::squarefree_part() const {
  if (degree() <= 1) return *this;
  const UnivariatePolynomial g = diagasym::gcd(*this, derivative());
  if (g.degree() <= 0) return *this;
  return divide_exact(g);
}

std::string UnivariatePolynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const bool negative = coeffs_[i] < 0;
    const Rational mag = negative ? Rational(-coeffs_[i]) : coeffs_[i];
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    if (i == 0) {
      out << mag.str();
    } else {
      if (mag != 1) out << mag.str() << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

UnivariatePolynomial operator+(UnivariatePolynomial lhs, const UnivariatePolynomial& rhs) {
  return lhs += rhs;
}
UnivariatePolynomial operator-(UnivariatePolynomial lhs, const UnivariatePolynomial& rhs) {
  return lhs -= rhs;
}
UnivariatePolynomial operator*(UnivariatePolynomial lhs, const UnivariatePolynomial& rhs) {
  return lhs *= rhs;
}

namespace {

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

std::vector<UnivariatePolynomial> sturm_chain(const UnivariatePolynomial& p) {
  std::vector<UnivariatePolynomial> chain;
  chain.push_back(p);
  chain.push_back(p.derivative());
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    auto [q, r] = chain[chain.size() - 2].divrem(chain.back());
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

// Sign variations of the chain at t (exact) or at +infinity.
int variations_at(const std::vector<UnivariatePolynomial>& chain, const Rational& t) {
  int count = 0, last = 0;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    const int s = sign_of(q.evaluate(t));
    if (s != 0 && last != 0 && s != last) ++count;
    if (s != 0) last = s;
  }
  return count;
}

int variations_at_infinity(const std::vector<UnivariatePolynomial>& chain) {
  int count = 0, last = 0;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    const int s = sign_of(q.leading_coeff());
    if (s != 0 && last != 0 && s != last) ++count;
    if (s != 0) last = s;
  }
  return count;
}

// Upper bound on root magnitudes (Cauchy bound), as an exact rational.
Rational cauchy_bound(const UnivariatePolynomial& p) {
  using boost::multiprecision::abs;
  const Rational lead = abs(p.leading_coeff());
  Rational m = 0;
  for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i)
    m = std::max(m, Rational(abs(p.coeff(i)) / lead));
  return m + 1;
}

}  // namespace

int count_positive_roots(const UnivariatePolynomial& p) {
  if (p.is_zero()) throw Error("root count of the zero polynomial");
  UnivariatePolynomial sf = p.squarefree_part();
  if (sf.degree() == 0) return 0;
  const auto chain = sturm_chain(sf);
  // Roots in (0, B] with B beyond the Cauchy bound; sf(0) may be 0, in which
  // case x=0 is excluded from (0, B] automatically by Sturm's theorem on the
  // half-open interval once we strip the root at 0.
  UnivariatePolynomial q = sf;
  while (q.coeff(0) == 0 && q.degree() > 0) {
    std::vector<Rational> shifted(q.coeffs().begin() + 1, q.coeffs().end());
    q = UnivariatePolynomial(std::move(shifted));
  }
  const auto chain0 = sturm_chain(q);
  return variations_at(chain0, Rational(0)) - variations_at_infinity(chain0);
}

double unique_positive_root(const UnivariatePolynomial& p) {
  const int n = count_positive_roots(p);
  if (n == 0) throw Error("no positive root");
  if (n > 1)
    throw Error(
        "multiple positive roots: the unique-positive-critical-point "
        "hypothesis is violated, inspect manually");

  UnivariatePolynomial sf = p.squarefree_part();
  while (sf.coeff(0) == 0 && sf.degree() > 0) {
    std::vector<Rational> shifted(sf.coeffs().begin() + 1, sf.coeffs().end());
    sf = UnivariatePolynomial(std::move(shifted));
  }

  // A single simple positive root flips the sign exactly once on (0, inf),
  // so (0, B] with B past the Cauchy bound is a valid bracket already.
  Rational lo = 0, hi = cauchy_bound(sf);
  const int slo = sign_of(sf.coeff(0));
  if (sign_of(sf.evaluate(hi)) == slo) hi *= 2;  // bound landed on the root

  // Exact bisection until Newton can take over safely.
  for (int iter = 0; iter < 80; ++iter) {
    const Rational mid = (lo + hi) / 2;
    const int sm = sign_of(sf.evaluate(mid));
    if (sm == 0) return to_double(mid);
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
    if (to_double(hi - lo) < 1e-8 * to_double(hi)) break;
  }

  // Newton polish in doubles against the squarefree part.
  const UnivariatePolynomial d = sf.derivative();
  double x = 0.5 * (to_double(lo) + to_double(hi));
  for (int iter = 0; iter < 60; ++iter) {
    const double f = sf.evaluate(x);
    const double fp = d.evaluate(x);
    if (fp == 0.0) break;
    const double next = x - f / fp;
    if (std::abs(next - x) <= 1e-16 * std::abs(next)) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace diagasym
