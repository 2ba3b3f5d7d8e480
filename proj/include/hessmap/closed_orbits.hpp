#pragma once

/// Hessians and first-order Taylor coefficients at the special points
/// q^k l^h, q^k, q^k l, q^(k-1) l^2, over q = x0 x1 + x2^2 + ... + xr^2 and
/// l = x0 (so l is isotropic).
///
/// q^a l^b contains the monomial x0^(a+b) x1^a with coefficient 1 and it is
/// the only term of that shape among the forms q^a' l^b' of the same degree,
/// so a coefficient in front of q^a l^b is read off that monomial.

#include <hessmap/form.hpp>
#include <hessmap/harmonic.hpp>
#include <hessmap/hessian.hpp>
#include <hessmap/serialize.hpp>

#include <stdexcept>
#include <string>

namespace hessmap {

enum class PointKind { QkLh, Qk, QkL, Qk1L2 };

struct SpecialPoint {
  PointKind kind = PointKind::Qk;
  int r = 2;
  int k = 1;
  int h = 0;  // power of l, QkLh only

  static SpecialPoint qk(int r, int k) { return {PointKind::Qk, r, k, 0}; }
  static SpecialPoint qkl(int r, int k) { return {PointKind::QkL, r, k, 1}; }
  static SpecialPoint qk1l2(int r, int k) { return {PointKind::Qk1L2, r, k, 2}; }
  static SpecialPoint qklh(int r, int k, int h) { return {PointKind::QkLh, r, k, h}; }

  int q_power() const { return kind == PointKind::Qk1L2 ? k - 1 : k; }
  int l_power() const {
    switch (kind) {
      case PointKind::Qk: return 0;
      case PointKind::QkL: return 1;
      case PointKind::Qk1L2: return 2;
      case PointKind::QkLh: return h;
    }
    return 0;
  }
  int degree() const { return 2 * q_power() + l_power(); }

  void validate() const {
    if (r < 1) throw std::invalid_argument("special point needs r >= 1");
    if (h < 0) throw std::invalid_argument("special point needs h >= 0");
    const int kmin = kind == PointKind::QkLh ? 0 : kind == PointKind::Qk1L2 ? 2 : 1;
    if (k < kmin) throw std::invalid_argument("special point needs k >= " + std::to_string(kmin));
  }

  Form form() const;

  /// "q^3", "q^2l", "ql^2", "q^3l^4"; "1" for the constant.
  std::string label() const {
    auto part = [](const char* base, int e) -> std::string {
      if (e == 0) return "";
      return e == 1 ? std::string(base) : std::string(base) + "^" + std::to_string(e);
    };
    std::string s = part("q", q_power()) + part("l", l_power());
    if (s.empty()) s = "1";
    return s;
  }
};

inline Form canonical_q(int r) { return QuadraticForm::hyperbolic(static_cast<std::size_t>(r) + 1).polynomial(); }
inline Form canonical_l(int r) { return Form::variable(static_cast<std::size_t>(r) + 1, 0); }

/// q^a l^b over the canonical pair.
inline Form q_l_power(int r, int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("negative power of q or l");
  return pow(canonical_q(r), static_cast<unsigned>(a)) * pow(canonical_l(r), static_cast<unsigned>(b));
}

inline Form SpecialPoint::form() const {
  validate();
  return q_l_power(r, q_power(), l_power());
}

/// Coefficient of x0^(a+b) x1^a in f, i.e. the coefficient of q^a l^b. A
/// negative a means the term cannot occur and gives 0.
inline Rational designated_coefficient(const Form& f, int a, int b) {
  if (a < 0 || b < 0) return 0;
  Exponent e(f.nvars());
  e.set(0, a + b);
  e.set(1, a);
  return f.coefficient(e);
}

// Closed forms.

inline Rational hess_power_constant(int r, int k, int h) {
  return -pow(Rational(2), r - 1) * pow(Rational(k), r) * (k + h) * (2 * k + h - 1);
}

struct CoefficientPair {
  Rational c0;
  Rational c1;
  bool operator==(const CoefficientPair&) const = default;
};

inline CoefficientPair even_expansion_coefficients(int r, int k, int m) {
  const Rational pr = pow(Rational(2), r - 1) * pow(Rational(k), r);
  return {pr * k * (1 - 2 * k), 2 * pr * (2 * k - 1) * (2 * m * m + m * (r - 1) - k * (r + 1))};
}

inline CoefficientPair odd_expansion_coefficients(int r, int k, int m) {
  const Rational pr = pow(Rational(2), r) * pow(Rational(k), r);
  const long cond = static_cast<long>(m) * m * (2 * k + 1) + static_cast<long>(m) * (r * k + r - k) -
                    static_cast<long>(k) * (k + 1) * (r + 1);
  return {-pr * k * (k + 1), pr * cond};
}

inline CoefficientPair even2_expansion_coefficients(int r, int k, int m) {
  const Rational p2 = pow(Rational(2), r - 1);
  const long cond = 2L * k * m * m + static_cast<long>(m) * (r * k + r - 5 * k + 1) -
                    static_cast<long>(k) * (k * (r + 1) + r - 3);
  return {-p2 * pow(Rational(k - 1), r) * (k + 1) * (2 * k - 1),
          p2 * pow(Rational(k - 1), r - 1) * (2 * k - 1) * cond};
}

struct HessIdentityResult {
  int r = 0, k = 0, h = 0;
  bool pass = false;
  bool global_equality = false;  // hess == c q^N l^M as forms
  Rational c;                    // read off the Hessian
  Rational expected;             // closed form
};

/// Hess(q^k l^h) == c q^((r+1)(k-1)) l^((r+1)h); for k = 0 the Hessian of
/// l^h vanishes.
inline HessIdentityResult verify_hess_qk_lh(int r, int k, int h) {
  if (r < 1 || k < 0 || h < 0) throw std::invalid_argument("verify_hess_qk_lh needs r >= 1, k >= 0, h >= 0");
  if (k == 0 && h < 2) throw std::invalid_argument("verify_hess_qk_lh with k = 0 needs h >= 2");
  HessIdentityResult out{r, k, h, false, false, 0, 0};
  out.expected = hess_power_constant(r, k, h);
  const Form H = hess(q_l_power(r, k, h));
  if (k == 0) {
    out.c = 0;
    out.global_equality = H.is_zero();
  } else {
    const int N = (r + 1) * (k - 1), M = (r + 1) * h;
    out.c = designated_coefficient(H, N, M);
    out.global_equality = H == q_l_power(r, N, M) * out.c;
  }
  out.pass = out.global_equality && out.c == out.expected;
  return out;
}

struct TaylorResult {
  std::string prop;
  int r = 0, k = 0, m = 0;
  CoefficientPair extracted;
  CoefficientPair expected;
  bool h0_global = false;  // h0 == c0 q^a l^b as forms
  bool pass = false;
};

namespace detail {

/// Jet of Hess at base = q^a0 l^b0 in the direction q^a1 l^b1, with
/// h0 expected as c0 q^A0 l^B0 and the eps-term read at q^A1 l^B1.
inline TaylorResult taylor_generic(std::string prop, int r, int k, int m, int a0, int b0, int a1, int b1, int A0,
                                   int B0, int A1, int B1, CoefficientPair expected) {
  TaylorResult out{std::move(prop), r, k, m, {}, {}, false, false};
  out.expected = expected;
  const EpsilonForm jet = hess_eps(EpsilonForm(q_l_power(r, a0, b0), q_l_power(r, a1, b1)));
  out.extracted.c0 = designated_coefficient(jet.f0, A0, B0);
  out.extracted.c1 = designated_coefficient(jet.f1, A1, B1);
  out.h0_global = jet.f0 == q_l_power(r, A0, B0) * out.extracted.c0;
  out.pass = out.h0_global && out.extracted == out.expected;
  return out;
}

inline void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace detail

/// Hess(q^k + eps q^(k-m) l^(2m)).
inline TaylorResult taylor_even(int r, int k, int m) {
  detail::require(r >= 1 && k >= 1 && m >= 1 && m <= k, "taylor_even needs r >= 1 and 1 <= m <= k");
  const int N = (r + 1) * (k - 1);
  return detail::taylor_generic("2.8", r, k, m, k, 0, k - m, 2 * m, N, 0, N - m, 2 * m, even_expansion_coefficients(r, k, m));
}

/// Hess(q^k l + eps q^(k-m) l^(2m+1)).
inline TaylorResult taylor_odd(int r, int k, int m) {
  detail::require(r >= 1 && k >= 1 && m >= 0 && m <= k, "taylor_odd needs r >= 1, k >= 1 and 0 <= m <= k");
  const int N = (r + 1) * (k - 1);
  return detail::taylor_generic("2.15", r, k, m, k, 1, k - m, 2 * m + 1, N, r + 1, N - m, 2 * m + r + 1,
                                odd_expansion_coefficients(r, k, m));
}

/// Hess(q^(k-1) l^2 + eps q^(k-m) l^(2m)).
inline TaylorResult taylor_even2(int r, int k, int m) {
  detail::require(r >= 1 && k >= 2 && m >= 1 && m <= k, "taylor_even2 needs r >= 1, k >= 2 and 1 <= m <= k");
  const int N = (r + 1) * (k - 2);
  return detail::taylor_generic("2.16", r, k, m, k - 1, 2, k - m, 2 * m, N, 2 * (r + 1), N + 1 - m, 2 * m + 2 * r,
                                even2_expansion_coefficients(r, k, m));
}

inline Json to_json(const HessIdentityResult& v) {
  Json out;
  out["prop"] = "2.7";
  out["r"] = v.r;
  out["k"] = v.k;
  out["h"] = v.h;
  out["pass"] = v.pass;
  out["c"] = to_string(v.c);
  out["expected"] = to_string(v.expected);
  out["global_equality"] = v.global_equality;
  return out;
}

inline Json to_json(const TaylorResult& v) {
  Json out;
  out["prop"] = v.prop;
  out["r"] = v.r;
  out["k"] = v.k;
  out["m"] = v.m;
  out["pass"] = v.pass;
  out["c0"] = to_string(v.extracted.c0);
  out["c1"] = to_string(v.extracted.c1);
  out["expected_c0"] = to_string(v.expected.c0);
  out["expected_c1"] = to_string(v.expected.c1);
  out["h0_global"] = v.h0_global;
  return out;
}

}  // namespace hessmap
