#pragma once

/// Harmonic decomposition with respect to a nondegenerate quadratic form.
///
/// For q(x) = x^T A x the dual operator is q*(f) = sum_ij (A^-1)_ij d_i d_j f,
/// which is the classical Laplacian for A = I. Every f of degree d splits
/// uniquely as f = sum_i q^i f_{d-2i} with q*(f_{d-2i}) = 0.

#include <hessmap/form.hpp>
#include <hessmap/matrix.hpp>
#include <hessmap/serialize.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hessmap {

class QuadraticForm {
 public:
  explicit QuadraticForm(RationalMatrix gram) : gram_(std::move(gram)) {
    const std::size_t n = gram_.rows();
    if (n != gram_.cols()) throw std::invalid_argument("gram matrix must be square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("gram matrix must be symmetric");
    auto inv = inverse(gram_);
    if (!inv) throw std::invalid_argument("degenerate quadratic form");
    dual_ = std::move(*inv);
    polynomial_ = Form(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
      Exponent e(n);
      e.set(i, 2);
      polynomial_.accumulate(e, gram_(i, i));
      for (std::size_t j = i + 1; j < n; ++j) {
        Exponent m(n);
        m.set(i, 1);
        m.set(j, 1);
        polynomial_.accumulate(m, 2 * gram_(i, j));
      }
    }
  }

  static QuadraticForm from_polynomial(const Form& q) {
    if (q.degree() != 2) throw std::invalid_argument("quadratic form must have degree 2");
    const std::size_t n = q.nvars();
    RationalMatrix a(n, n);
    for (const auto& [e, c] : q.terms()) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < e[i]; ++k) idx.push_back(i);
      if (idx[0] == idx[1]) {
        a(idx[0], idx[0]) = c;
      } else {
        a(idx[0], idx[1]) = c / 2;
        a(idx[1], idx[0]) = c / 2;
      }
    }
    return QuadraticForm(std::move(a));
  }

  /// x0^2 + ... + xr^2.
  static QuadraticForm sum_of_squares(std::size_t nvars) { return QuadraticForm(RationalMatrix::identity(nvars)); }

  /// x0 x1 + x2^2 + ... + xr^2, for which x0 is isotropic.
  static QuadraticForm hyperbolic(std::size_t nvars) {
    if (nvars < 2) throw std::invalid_argument("hyperbolic quadratic form needs at least two variables");
    RationalMatrix a = RationalMatrix::identity(nvars);
    a(0, 0) = 0;
    a(1, 1) = 0;
    a(0, 1) = Rational(1, 2);
    a(1, 0) = Rational(1, 2);
    return QuadraticForm(std::move(a));
  }

  std::size_t nvars() const { return gram_.rows(); }
  const RationalMatrix& gram() const { return gram_; }
  const RationalMatrix& dual_gram() const { return dual_; }
  const Form& polynomial() const { return polynomial_; }
  bool is_sum_of_squares() const { return gram_ == RationalMatrix::identity(nvars()); }

 private:
  RationalMatrix gram_;
  RationalMatrix dual_;
  Form polynomial_;
};

inline Json to_json(const QuadraticForm& q) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < q.nvars(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < q.nvars(); ++j) row.push_back(to_string(q.gram()(i, j)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["gram"] = std::move(rows);
  return out;
}

inline QuadraticForm quadratic_form_from_json(const Json& j) {
  const auto& rows = j.at("gram");
  const std::size_t n = rows.size();
  RationalMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("gram matrix must be square");
    for (std::size_t k = 0; k < n; ++k) a(i, k) = rational_from_json(rows[i][k]);
  }
  return QuadraticForm(std::move(a));
}

/// q*(f) = sum_ij (A^-1)_ij d_i d_j f.
inline Form laplacian_q(const Form& f, const QuadraticForm& q) {
  if (f.nvars() != q.nvars()) throw std::invalid_argument("variable-count mismatch between form and quadratic form");
  const std::size_t n = f.nvars();
  Form out(n, f.degree() - 2);
  if (f.degree() < 2) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const Form di = partial_derivative(f, i);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& w = q.dual_gram()(i, j);
      if (sgn(w) == 0) continue;
      out += partial_derivative(di, j) * w;
    }
  }
  return out;
}

/// Summands f_d, f_{d-2}, ... with f = sum_i q^i summands[i].
struct HarmonicDecomposition {
  std::vector<Form> summands;

  Form recombine(const QuadraticForm& q) const {
    Form out = summands.front();
    Form qi = Form::constant(q.nvars(), 1);
    for (std::size_t i = 1; i < summands.size(); ++i) {
      qi = qi * q.polynomial();
      out += qi * summands[i];
    }
    return out;
  }
};

inline Json to_json(const HarmonicDecomposition& h) {
  Json out = Json::array();
  for (const auto& s : h.summands) out.push_back(to_json(s));
  return out;
}

namespace detail {

/// Matrix of g -> q*(q g) on Sym^degree over the monomial basis.
inline RationalMatrix laplacian_of_product_matrix(const QuadraticForm& q, const std::vector<Exponent>& basis) {
  RationalMatrix m(basis.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const Form image = laplacian_q(q.polynomial() * Form::monomial(basis[c]), q);
    m.set_column(c, coordinates(image, basis));
  }
  return m;
}

}  // namespace detail

/// Harmonic decomposition: f_d = f - q g where q*(q g) = q*(f), then recurse
/// on g for the lower summands.
inline HarmonicDecomposition harmonic_decompose(const Form& f, const QuadraticForm& q) {
  if (f.nvars() != q.nvars()) throw std::invalid_argument("variable-count mismatch between form and quadratic form");
  if (f.degree() < 0) throw std::invalid_argument("harmonic decomposition needs a non-negative degree");
  HarmonicDecomposition out;
  Form current = f;
  while (true) {
    if (current.degree() < 2) {
      out.summands.push_back(current);
      break;
    }
    const int lower = current.degree() - 2;
    const auto basis = monomial_basis(q.nvars(), lower);
    const RationalMatrix system = detail::laplacian_of_product_matrix(q, basis);
    const auto g = solve(system, coordinates(laplacian_q(current, q), basis));
    if (!g) throw std::logic_error("singular system in harmonic decomposition");
    const Form gf = from_coordinates(q.nvars(), lower, basis, *g);
    out.summands.push_back(current - q.polynomial() * gf);
    current = gf;
  }
  return out;
}

/// Bombieri-Weyl pairing for q = sum of squares:
/// Q(x^a, x^b) = delta_ab a!/d!.
inline Rational bombieri_weyl(const Form& f, const Form& g, const QuadraticForm& q) {
  if (f.degree() != g.degree()) throw std::invalid_argument("Bombieri-Weyl pairing needs equal degrees");
  if (f.nvars() != g.nvars() || f.nvars() != q.nvars()) throw std::invalid_argument("variable-count mismatch");
  if (!q.is_sum_of_squares()) throw std::invalid_argument("Bombieri-Weyl pairing is implemented for the sum of squares only");
  const Integer dfact = factorial(static_cast<unsigned>(std::max(f.degree(), 0)));
  Rational sum = 0;
  for (const auto& [e, a] : f.terms()) {
    auto it = g.terms().find(e);
    if (it == g.terms().end()) continue;
    Integer afact = 1;
    for (std::size_t i = 0; i < e.size(); ++i) afact *= factorial(static_cast<unsigned>(e[i]));
    Rational weight(afact, dfact);
    weight.canonicalize();
    sum += a * it->second * weight;
  }
  return sum;
}

/// Basis of the harmonic forms of the given degree (kernel of q*), as an
/// exact nullspace over the monomial basis.
inline std::vector<Form> harmonic_basis(int degree, const QuadraticForm& q) {
  if (degree < 0) throw std::invalid_argument("harmonic basis needs a non-negative degree");
  const std::size_t n = q.nvars();
  const auto source = monomial_basis(n, degree);
  std::vector<Form> out;
  if (degree < 2) {
    for (const auto& e : source) out.push_back(Form::monomial(e));
    return out;
  }
  const auto target = monomial_basis(n, degree - 2);
  RationalMatrix m(target.size(), source.size());
  for (std::size_t c = 0; c < source.size(); ++c)
    m.set_column(c, coordinates(laplacian_q(Form::monomial(source[c]), q), target));
  for (const auto& v : nullspace(m)) out.push_back(from_coordinates(n, degree, source, v));
  return out;
}

/// dim H_i = C(i+r, r) - C(i-2+r, r).
inline std::size_t harmonic_dimension(std::size_t nvars, int degree) {
  return sym_dimension(nvars, degree) - sym_dimension(nvars, degree - 2);
}

}  // namespace hessmap
