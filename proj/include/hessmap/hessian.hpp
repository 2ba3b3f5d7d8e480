#pragma once

/// The Hessian determinant, its first-order jets, and the polarizations
/// H12 (bilinear, in x1 and x2) and H (symmetric trilinear, ternary forms).

#include <hessmap/form.hpp>
#include <hessmap/serialize.hpp>

#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hessmap {

inline bool is_zero(const Form& f) { return f.is_zero(); }

/// Determinant by cofactor expansion along the first row. Ring needs +, -, *
/// and an is_zero overload; entries that vanish are skipped. Only used for
/// matrices of size r+1 <= 8, in practice at most 4.
template <class Ring>
Ring laplace_determinant(const std::vector<std::vector<Ring>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("empty matrix");
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  std::vector<std::vector<Ring>> minor(n - 1, std::vector<Ring>(n - 1));
  auto fill_minor = [&](std::size_t col) {
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, k = 0; c < n; ++c)
        if (c != col) minor[r - 1][k++] = m[r][c];
  };
  std::optional<Ring> out;
  for (std::size_t col = 0; col < n; ++col) {
    if (is_zero(m[0][col])) continue;
    fill_minor(col);
    Ring term = m[0][col] * laplace_determinant(minor);
    if (!out) {
      out = (col % 2 == 0) ? term : term * Rational(-1);
    } else if (col % 2 == 0) {
      *out = *out + term;
    } else {
      *out = *out - term;
    }
  }
  if (!out) {
    // First row vanishes; this product is the zero of the right degree.
    fill_minor(0);
    return m[0][0] * laplace_determinant(minor);
  }
  return *out;
}

using FormMatrix = std::vector<std::vector<Form>>;

inline FormMatrix hessian_matrix(const Form& f) {
  const std::size_t n = f.nvars();
  FormMatrix h(n, std::vector<Form>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Form di = partial_derivative(f, i);
    for (std::size_t j = i; j < n; ++j) {
      h[i][j] = partial_derivative(di, j);
      if (j != i) h[j][i] = h[i][j];
    }
  }
  return h;
}

inline Form hess(const Form& f) {
  const int target = static_cast<int>(f.nvars()) * (f.degree() - 2);
  if (f.degree() < 2 || f.is_zero()) return Form::zero(f.nvars(), target);
  return laplace_determinant(hessian_matrix(f));
}

/// f0 + eps f1 with eps^2 = 0.
struct EpsilonForm {
  Form f0;
  Form f1;

  EpsilonForm() = default;
  EpsilonForm(Form base, Form direction) : f0(std::move(base)), f1(std::move(direction)) {
    if (f0.nvars() != f1.nvars() || f0.degree() != f1.degree())
      throw std::invalid_argument("jet components must share variables and degree");
  }

  friend EpsilonForm operator+(const EpsilonForm& a, const EpsilonForm& b) { return {a.f0 + b.f0, a.f1 + b.f1}; }
  friend EpsilonForm operator-(const EpsilonForm& a, const EpsilonForm& b) { return {a.f0 - b.f0, a.f1 - b.f1}; }
  friend EpsilonForm operator*(const EpsilonForm& a, const EpsilonForm& b) {
    return {a.f0 * b.f0, a.f0 * b.f1 + a.f1 * b.f0};
  }
  friend EpsilonForm operator*(const EpsilonForm& a, const Rational& s) { return {a.f0 * s, a.f1 * s}; }
  bool operator==(const EpsilonForm&) const = default;
};

inline bool is_zero(const EpsilonForm& j) { return j.f0.is_zero() && j.f1.is_zero(); }

/// Hess(f0 + eps f1) mod eps^2, as a determinant over the jet ring.
inline EpsilonForm hess_eps(const EpsilonForm& j) {
  const std::size_t n = j.f0.nvars();
  const int target = static_cast<int>(n) * (j.f0.degree() - 2);
  if (j.f0.degree() < 2) return {Form::zero(n, target), Form::zero(n, target)};
  const FormMatrix h0 = hessian_matrix(j.f0);
  const FormMatrix h1 = hessian_matrix(j.f1);
  std::vector<std::vector<EpsilonForm>> m(n, std::vector<EpsilonForm>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m[a][b] = EpsilonForm(h0[a][b], h1[a][b]);
  return laplace_determinant(m);
}

/// Cofactor matrix of the Hessian of f. The derivative of Hess at f in the
/// direction g is sum_ij cof_ij d_i d_j g.
inline FormMatrix hessian_cofactors(const Form& f) {
  const std::size_t n = f.nvars();
  const FormMatrix h = hessian_matrix(f);
  const int cof_degree = static_cast<int>(n - 1) * (f.degree() - 2);
  FormMatrix cof(n, std::vector<Form>(n, Form::zero(n, cof_degree)));
  if (n == 1) {
    cof[0][0] = Form::constant(1, 1);
    return cof;
  }
  FormMatrix minor(n - 1, std::vector<Form>(n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor[rr][cc++] = h[r][c];
        }
        ++rr;
      }
      Form det = laplace_determinant(minor);
      if ((i + j) % 2 == 1) det = -det;
      cof[i][j] = det;
      cof[j][i] = cof[i][j];
    }
  return cof;
}

/// Linear part of the Hessian at f (given by its cofactors) applied to g.
inline Form hess_direction(const FormMatrix& cofactors, const Form& g) {
  const std::size_t n = g.nvars();
  const int target = cofactors[0][0].degree() + g.degree() - 2;
  Form out(n, target);
  if (g.degree() < 2) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const Form di = partial_derivative(g, i);
    for (std::size_t j = 0; j < n; ++j) {
      if (cofactors[i][j].is_zero()) continue;
      const Form dij = partial_derivative(di, j);
      if (dij.is_zero()) continue;
      out += cofactors[i][j] * dij;
    }
  }
  return out;
}

namespace detail {
inline void require_ternary(const Form& f, const char* what) {
  if (f.nvars() != 3) throw std::invalid_argument(std::string(what) + " is defined for ternary forms only");
}
}  // namespace detail

/// H12(f, g) = (f11 g22 - 2 f12 g12 + f22 g11) / 2, derivatives in x1, x2.
inline Form h12(const Form& f, const Form& g) {
  detail::require_ternary(f, "H12");
  detail::require_ternary(g, "H12");
  auto d = [](const Form& p, std::size_t i, std::size_t j) { return partial_derivative(partial_derivative(p, i), j); };
  const Form f11 = d(f, 1, 1), f12 = d(f, 1, 2), f22 = d(f, 2, 2);
  const Form g11 = d(g, 1, 1), g12 = d(g, 1, 2), g22 = d(g, 2, 2);
  Form out = f11 * g22 + f22 * g11 - f12 * g12 * Rational(2);
  return out * Rational(1, 2);
}

/// Symmetric trilinear polarization of the 3x3 Hessian determinant:
/// 6 H(f,g,h) is the sum over the six orderings of the determinant whose
/// rows are taken from the Hessian matrices of the three arguments in turn.
inline Form h3(const Form& f, const Form& g, const Form& h) {
  detail::require_ternary(f, "H");
  detail::require_ternary(g, "H");
  detail::require_ternary(h, "H");
  if (f.degree() != g.degree() || f.degree() != h.degree()) throw std::invalid_argument("H needs forms of equal degree");
  const int target = 3 * (f.degree() - 2);
  if (f.degree() < 2) return Form::zero(3, target);
  const std::array<FormMatrix, 3> mats{hessian_matrix(f), hessian_matrix(g), hessian_matrix(h)};
  std::array<int, 3> perm{0, 1, 2};
  Form sum = Form::zero(3, target);
  do {
    FormMatrix rows{mats[perm[0]][0], mats[perm[1]][1], mats[perm[2]][2]};
    sum += laplace_determinant(rows);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum * Rational(1, 6);
}

/// Finite sum_a t^a F_a of forms of one degree (a polynomial in t).
class TParameterForm {
 public:
  TParameterForm() = default;
  TParameterForm(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {}

  /// Accepts rational t-exponents and clears their common denominator; the
  /// lowest-order coefficient (the projective limit) is unchanged.
  static TParameterForm from_rational_exponents(const std::vector<std::pair<Rational, Form>>& slots) {
    if (slots.empty()) throw std::invalid_argument("family needs at least one slot");
    Integer lcm = 1;
    for (const auto& [a, f] : slots) {
      if (sgn(a) < 0) throw std::invalid_argument("t-exponents must be non-negative");
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.get_den_mpz_t());
    }
    TParameterForm out(slots.front().second.nvars(), slots.front().second.degree());
    for (const auto& [a, f] : slots) {
      const Rational scaled = a * lcm;
      out.add(static_cast<int>(scaled.get_num().get_si()), f);
    }
    return out;
  }

  std::size_t nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const std::map<int, Form>& slots() const { return slots_; }
  bool is_zero() const { return slots_.empty(); }

  TParameterForm& add(int t_exponent, const Form& f) {
    if (t_exponent < 0) throw std::invalid_argument("t-exponents must be non-negative");
    if (f.nvars() != nvars_ || f.degree() != degree_) throw std::invalid_argument("slot form has the wrong shape");
    if (f.is_zero()) return *this;
    auto [it, inserted] = slots_.try_emplace(t_exponent, f);
    if (!inserted) {
      it->second += f;
      if (it->second.is_zero()) slots_.erase(it);
    }
    return *this;
  }

  Form slot(int t_exponent) const {
    auto it = slots_.find(t_exponent);
    return it == slots_.end() ? Form::zero(nvars_, degree_) : it->second;
  }

  TParameterForm map_forms(const auto& fn, int new_degree) const {
    TParameterForm out(nvars_, new_degree);
    for (const auto& [a, f] : slots_) out.add(a, fn(f));
    return out;
  }

  friend TParameterForm operator+(const TParameterForm& a, const TParameterForm& b) {
    a.check(b);
    TParameterForm out = a;
    for (const auto& [t, f] : b.slots_) out.add(t, f);
    return out;
  }
  friend TParameterForm operator-(const TParameterForm& a, const TParameterForm& b) {
    a.check(b);
    TParameterForm out = a;
    for (const auto& [t, f] : b.slots_) out.add(t, -f);
    return out;
  }
  friend TParameterForm operator*(const TParameterForm& a, const TParameterForm& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable-count mismatch");
    TParameterForm out(a.nvars_, a.degree_ + b.degree_);
    for (const auto& [ta, fa] : a.slots_)
      for (const auto& [tb, fb] : b.slots_) out.add(ta + tb, fa * fb);
    return out;
  }
  friend TParameterForm operator*(const TParameterForm& a, const Rational& s) {
    return a.map_forms([&](const Form& f) { return f * s; }, a.degree_);
  }
  bool operator==(const TParameterForm&) const = default;

 private:
  void check(const TParameterForm& b) const {
    if (nvars_ != b.nvars_ || degree_ != b.degree_) throw std::invalid_argument("t-family shape mismatch");
  }
  std::size_t nvars_ = 3;
  int degree_ = 0;
  std::map<int, Form> slots_;
};

inline bool is_zero(const TParameterForm& f) { return f.is_zero(); }

inline Json to_json(const TParameterForm& F) {
  Json slots = Json::array();
  for (const auto& [t, f] : F.slots()) {
    Json s;
    s["t"] = t;
    s["form"] = to_json(f);
    slots.push_back(std::move(s));
  }
  Json out;
  out["slots"] = std::move(slots);
  return out;
}

/// Reads {"slots": [{"t": ..., "form": ...}]}; "t" may be an integer or a
/// fraction string, and fractional exponents are cleared.
inline TParameterForm tparameter_form_from_json(const Json& j) {
  std::vector<std::pair<Rational, Form>> slots;
  for (const auto& s : j.at("slots")) slots.emplace_back(rational_from_json(s.at("t")), form_from_json(s.at("form")));
  return TParameterForm::from_rational_exponents(slots);
}

/// Hess(F) computed as a determinant over polynomials in t.
inline TParameterForm hess_t(const TParameterForm& F) {
  const std::size_t n = F.nvars();
  const int target = static_cast<int>(n) * (F.degree() - 2);
  if (F.degree() < 2 || F.is_zero()) return TParameterForm(n, target);
  std::vector<std::vector<TParameterForm>> m(n, std::vector<TParameterForm>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m[i][j] = F.map_forms([&](const Form& f) { return partial_derivative(partial_derivative(f, i), j); },
                            F.degree() - 2);
      if (j != i) m[j][i] = m[i][j];
    }
  return laplace_determinant(m);
}

/// Hess(F) for a ternary family via trilinear expansion:
/// sum over ordered slot triples of t^(a+b+c) H(F_a, F_b, F_c).
inline TParameterForm trilinear_expansion(const TParameterForm& F) {
  TParameterForm out(3, 3 * (F.degree() - 2));
  std::vector<std::pair<int, Form>> slots(F.slots().begin(), F.slots().end());
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = i; j < slots.size(); ++j)
      for (std::size_t k = j; k < slots.size(); ++k) {
        // Number of distinct orderings of the multiset {i, j, k}.
        const int mult = (i == j && j == k) ? 1 : (i == j || j == k) ? 3 : 6;
        const Form term = h3(slots[i].second, slots[j].second, slots[k].second) * Rational(mult);
        out.add(slots[i].first + slots[j].first + slots[k].first, term);
      }
  return out;
}

/// The same expansion with the leading slot x0^d treated separately:
/// d(d-1) x0^(d-2) sum_{a,b} t^(a+b) H12(F_a, F_b) + sum_{a,b,c} t^(a+b+c) H(F_a, F_b, F_c),
/// the sums running over the remaining slots. Requires slot 0 to be x0^d.
inline TParameterForm grouped_expansion(const TParameterForm& F) {
  const int d = F.degree();
  const Form lead = Form::monomial(Exponent{d, 0, 0});
  if (F.slot(0) != lead) throw std::invalid_argument("grouped expansion needs slot 0 equal to x0^d");
  TParameterForm rest(3, d);
  for (const auto& [t, f] : F.slots())
    if (t != 0) rest.add(t, f);
  TParameterForm out = trilinear_expansion(rest);
  const Form factor = Form::monomial(Exponent{d - 2, 0, 0}, Rational(d * (d - 1)));
  std::vector<std::pair<int, Form>> slots(rest.slots().begin(), rest.slots().end());
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = 0; j < slots.size(); ++j)
      out.add(slots[i].first + slots[j].first, factor * h12(slots[i].second, slots[j].second));
  return out;
}

/// Lowest t-order with a nonzero coefficient, i.e. the projective limit at t = 0.
inline std::pair<int, Form> lowest_t_order(const TParameterForm& F) {
  if (F.is_zero()) throw std::invalid_argument("lowest order of the zero family");
  return *F.slots().begin();
}

}  // namespace hessmap
