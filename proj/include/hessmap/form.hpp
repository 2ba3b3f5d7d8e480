#pragma once

/// Homogeneous forms in r+1 variables with exact rational coefficients.
///
/// A Form stores its declared degree explicitly, so the zero form of every
/// degree is a distinct value (the zero of Sym^d). Negative degrees are
/// allowed only for the zero form; they arise from differentiating constants
/// and keep degree arithmetic closed.
///
/// Terms are kept in the canonical monomial order: degree-lexicographic with
/// x0 > x1 > ... > xr, leading term first.

#include <hessmap/matrix.hpp>
#include <hessmap/rational.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hessmap {

inline constexpr std::size_t kMaxVariables = 8;

/// Exponent vector of a monomial x0^e0 ... xr^er.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(check_nvars(nvars))) {}
  Exponent(std::initializer_list<int> entries) : Exponent(std::vector<int>(entries)) {}
  explicit Exponent(const std::vector<int>& entries) : nvars_(static_cast<std::uint8_t>(check_nvars(entries.size()))) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i] < 0 || entries[i] > 0xFFFF) throw std::invalid_argument("exponent entry out of range");
      e_[i] = static_cast<std::uint16_t>(entries[i]);
    }
  }

  std::size_t size() const { return nvars_; }
  int operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, int value) {
    if (value < 0 || value > 0xFFFF) throw std::invalid_argument("exponent entry out of range");
    e_[i] = static_cast<std::uint16_t>(value);
  }
  int degree() const {
    int d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) d += e_[i];
    return d;
  }
  std::vector<int> entries() const { return {e_.begin(), e_.begin() + nvars_}; }

  Exponent operator+(const Exponent& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("exponent length mismatch");
    Exponent out(*this);
    for (std::size_t i = 0; i < nvars_; ++i) out.e_[i] = static_cast<std::uint16_t>(e_[i] + o.e_[i]);
    return out;
  }

  /// Lexicographic comparison; within a fixed degree this is the canonical order.
  auto operator<=>(const Exponent&) const = default;

  static Exponent unit(std::size_t nvars, std::size_t i, int power = 1) {
    Exponent e(nvars);
    e.set(i, power);
    return e;
  }

 private:
  static std::size_t check_nvars(std::size_t n) {
    if (n == 0 || n > kMaxVariables) throw std::invalid_argument("number of variables must be in [1, 8]");
    return n;
  }
  std::array<std::uint16_t, kMaxVariables> e_{};
  std::uint8_t nvars_ = 0;
};

/// All exponents of the given degree, in canonical (descending) order.
inline std::vector<Exponent> monomial_basis(std::size_t nvars, int degree) {
  std::vector<Exponent> out;
  if (degree < 0) return out;
  Exponent e(nvars);
  std::function<void(std::size_t, int)> rec = [&](std::size_t var, int remaining) {
    if (var + 1 == nvars) {
      e.set(var, remaining);
      out.push_back(e);
      return;
    }
    for (int p = remaining; p >= 0; --p) {
      e.set(var, p);
      rec(var + 1, remaining - p);
    }
    e.set(var, 0);
  };
  rec(0, degree);
  return out;
}

/// dim Sym^d of a space of dimension nvars.
inline std::size_t sym_dimension(std::size_t nvars, int degree) {
  if (degree < 0) return 0;
  return binomial(degree + static_cast<long>(nvars) - 1, static_cast<long>(nvars) - 1).get_ui();
}

class Form {
 public:
  using TermMap = std::map<Exponent, Rational, std::greater<>>;

  Form() = default;
  Form(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars == 0 || nvars > kMaxVariables) throw std::invalid_argument("number of variables must be in [1, 8]");
  }

  static Form zero(std::size_t nvars, int degree) { return Form(nvars, degree); }
  static Form constant(std::size_t nvars, const Rational& c) {
    Form f(nvars, 0);
    f.accumulate(Exponent(nvars), c);
    return f;
  }
  static Form variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw std::out_of_range("variable index out of range");
    return monomial(Exponent::unit(nvars, i), 1);
  }
  static Form monomial(const Exponent& e, const Rational& c = 1) {
    Form f(e.size(), e.degree());
    f.accumulate(e, c);
    return f;
  }
  /// Linear form sum_i coeffs[i] x_i.
  static Form linear(const std::vector<Rational>& coeffs) {
    Form f(coeffs.size(), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) f.accumulate(Exponent::unit(coeffs.size(), i), coeffs[i]);
    return f;
  }

  std::size_t nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Builder primitive: adds c x^e, dropping the term if it cancels.
  Form& accumulate(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match the form");
    if (e.degree() != degree_) throw std::invalid_argument("term degree does not match the form degree");
    if (sgn(c) == 0) return *this;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
    return *this;
  }

  Rational coefficient(const Exponent& e) const {
    if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match the form");
    if (e.degree() != degree_) throw std::invalid_argument("exponent degree does not match the form degree");
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Form operator-() const {
    Form out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  Form& operator+=(const Form& o) {
    check_compatible(o, "addition");
    for (const auto& [e, c] : o.terms_) accumulate(e, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_compatible(o, "subtraction");
    for (const auto& [e, c] : o.terms_) accumulate(e, -c);
    return *this;
  }
  Form& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Rational& s) { return a *= s; }
  friend Form operator*(const Rational& s, Form a) { return a *= s; }

  friend Form operator*(const Form& a, const Form& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable-count mismatch in multiplication");
    Form out(a.nvars_, a.degree_ + b.degree_);
    if (a.is_zero() || b.is_zero()) return out;
    Rational prod;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        prod = ca * cb;
        auto [it, inserted] = out.terms_.try_emplace(ea + eb, prod);
        if (!inserted) it->second += prod;
      }
    std::erase_if(out.terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
  }

  bool operator==(const Form& o) const {
    return nvars_ == o.nvars_ && degree_ == o.degree_ && terms_ == o.terms_;
  }

  /// Human-readable rendering, e.g. "x0^2*x1 - 2/3*x2^3".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        if (sgn(c) < 0) os << "-";
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      first = false;
      const bool constant = e.degree() == 0;
      if (mag != 1 || constant) {
        os << hessmap::to_string(mag);
        if (!constant) os << "*";
      }
      bool first_var = true;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first_var) os << "*";
        first_var = false;
        os << "x" << i;
        if (e[i] > 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  void check_compatible(const Form& o, const char* what) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument(std::string("variable-count mismatch in ") + what);
    if (o.degree_ != degree_) throw std::invalid_argument(std::string("degree mismatch in ") + what);
  }

  std::size_t nvars_ = 1;
  int degree_ = 0;
  TermMap terms_;
};

inline Form pow(const Form& f, unsigned n) {
  Form out = Form::constant(f.nvars(), 1);
  Form base = f;
  while (n) {
    if (n & 1) out = out * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return out;
}

inline Form partial_derivative(const Form& f, std::size_t i) {
  if (i >= f.nvars()) throw std::out_of_range("variable index out of range");
  Form out(f.nvars(), f.degree() - 1);
  for (const auto& [e, c] : f.terms()) {
    if (e[i] == 0) continue;
    Exponent shifted = e;
    shifted.set(i, e[i] - 1);
    out.accumulate(shifted, c * e[i]);
  }
  return out;
}

/// Mixed partial derivative of order |alpha|.
inline Form derivative(const Form& f, const Exponent& alpha) {
  Form out = f;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) out = partial_derivative(out, i);
  return out;
}

inline Rational coefficient_of(const Form& f, const Exponent& e) { return f.coefficient(e); }

inline Rational evaluate(const Form& f, const std::vector<Rational>& point) {
  if (point.size() != f.nvars()) throw std::invalid_argument("point dimension mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : f.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) t *= hessmap::pow(point[i], static_cast<unsigned>(e[i]));
    sum += t;
  }
  return sum;
}

/// Invertible substitution matrix x_i -> sum_j g_ij x_j.
class LinearChange {
 public:
  explicit LinearChange(RationalMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("linear change must be square");
    det_ = hessmap::determinant(matrix_);
    if (sgn(det_) == 0) throw std::invalid_argument("singular linear change");
  }
  static LinearChange identity(std::size_t n) { return LinearChange(RationalMatrix::identity(n)); }

  const RationalMatrix& matrix() const { return matrix_; }
  const Rational& determinant() const { return det_; }
  std::size_t size() const { return matrix_.rows(); }

  LinearChange operator*(const LinearChange& o) const { return LinearChange(matrix_ * o.matrix_); }

 private:
  RationalMatrix matrix_;
  Rational det_;
};

/// f(g x): every x_i is replaced by sum_j g_ij x_j.
inline Form apply_linear_change(const Form& f, const LinearChange& g) {
  const std::size_t n = f.nvars();
  if (g.size() != n) throw std::invalid_argument("linear change size does not match the form");
  if (f.degree() < 0 || f.is_zero()) return Form::zero(n, f.degree());
  std::vector<std::vector<Form>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = g.matrix()(i, j);
    const Form li = Form::linear(row);
    powers[i].push_back(Form::constant(n, 1));
    for (int p = 1; p <= f.degree(); ++p) powers[i].push_back(powers[i].back() * li);
  }
  Form out(n, f.degree());
  for (const auto& [e, c] : f.terms()) {
    Form t = Form::constant(n, c);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] > 0) t = t * powers[i][static_cast<std::size_t>(e[i])];
    out += t;
  }
  return out;
}

/// Outcome of dividing by x_i^s: the quotient, or the first term (in
/// canonical order) whose x_i-exponent is below s.
struct DivisionResult {
  std::optional<Form> quotient;
  std::optional<std::pair<Exponent, Rational>> witness;
  bool divisible() const { return quotient.has_value(); }
};

inline DivisionResult divide_by_monomial_power(const Form& f, std::size_t i, int s) {
  if (i >= f.nvars()) throw std::out_of_range("variable index out of range");
  if (s < 0) throw std::invalid_argument("negative power");
  Form q(f.nvars(), f.degree() - s);
  for (const auto& [e, c] : f.terms()) {
    if (e[i] < s) return {std::nullopt, std::make_pair(e, c)};
    Exponent shifted = e;
    shifted.set(i, e[i] - s);
    q.accumulate(shifted, c);
  }
  return {std::move(q), std::nullopt};
}

/// Largest s with x_i^s dividing f (the x_i-adic valuation); nullopt for 0.
inline std::optional<int> monomial_valuation(const Form& f, std::size_t i) {
  if (f.is_zero()) return std::nullopt;
  int v = f.degree();
  for (const auto& [e, c] : f.terms()) v = std::min(v, e[i]);
  return v;
}

/// Coordinates of f over monomial_basis(nvars, degree).
inline std::vector<Rational> coordinates(const Form& f, const std::vector<Exponent>& basis) {
  std::vector<Rational> out(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto it = f.terms().find(basis[k]);
    if (it != f.terms().end()) out[k] = it->second;
  }
  return out;
}

inline Form from_coordinates(std::size_t nvars, int degree, const std::vector<Exponent>& basis,
                             const std::vector<Rational>& coords) {
  Form f(nvars, degree);
  for (std::size_t k = 0; k < basis.size(); ++k) f.accumulate(basis[k], coords[k]);
  return f;
}

}  // namespace hessmap
