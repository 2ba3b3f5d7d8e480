#pragma once

/// Divisibility properties of the Hessian near the cone x0^d (ternary forms):
/// the normal form of forms with H12(f) = 0, divisibility of the polarized
/// Hessians by powers of x0, and the lowest-order t-coefficient of Hess(f(t))
/// along truncated families f(t) = x0^d + sum t^a f_a.
///
/// Every check re-verifies its hypotheses symbolically first; a failed gate
/// yields a not-applicable verdict, never a failure.

#include <hessmap/closed_orbits.hpp>
#include <hessmap/form.hpp>
#include <hessmap/hessian.hpp>
#include <hessmap/random.hpp>
#include <hessmap/serialize.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hessmap {

namespace detail {

inline Form x0_power(int d) { return Form::monomial(Exponent{d, 0, 0}); }

/// Linear form a x1 + b x2 in three variables.
inline Form binary_linear(const Rational& a, const Rational& b) { return Form::linear({Rational(0), a, b}); }

inline bool has_no_x0(const Form& l) {
  return l.degree() == 1 && l.nvars() == 3 && sgn(l.coefficient(Exponent{1, 0, 0})) == 0;
}

inline Json witness_json(const DivisionResult& r) {
  if (!r.witness) return nullptr;
  Json w;
  w["e"] = r.witness->first.entries();
  w["c"] = to_string(r.witness->second);
  return w;
}

}  // namespace detail

/// x0^d + x0^(d-1) l + sum_{i=2..d} c_i x0^(d-i) m^i with l, m in (x1, x2).
struct ConeNormalForm {
  int d = 4;
  Form l;
  Form m;
  std::vector<Rational> c;  // c_2, ..., c_d

  Form form() const {
    if (d < 2) throw std::invalid_argument("normal form needs d >= 2");
    if (!detail::has_no_x0(l) && !l.is_zero()) throw std::invalid_argument("l must be a linear form in x1, x2");
    if (!detail::has_no_x0(m)) throw std::invalid_argument("m must be a linear form in x1, x2");
    if (c.size() != static_cast<std::size_t>(d - 1)) throw std::invalid_argument("need coefficients c_2..c_d");
    Form f = detail::x0_power(d);
    if (!l.is_zero()) f += detail::x0_power(d - 1) * l;
    for (int i = 2; i <= d; ++i) {
      const Rational& ci = c[static_cast<std::size_t>(i - 2)];
      if (sgn(ci) == 0) continue;
      f += detail::x0_power(d - i) * pow(m, static_cast<unsigned>(i)) * ci;
    }
    return f;
  }

  /// l and m proportional (a zero l counts as proportional).
  bool proportional() const {
    if (l.is_zero()) return true;
    const Exponent e1{0, 1, 0}, e2{0, 0, 1};
    return l.coefficient(e1) * m.coefficient(e2) - l.coefficient(e2) * m.coefficient(e1) == 0;
  }

  bool all_c_zero() const {
    for (const auto& v : c)
      if (sgn(v) != 0) return false;
    return true;
  }
};

struct ConeFormReport {
  int d = 0;
  bool h12_zero = false;
  bool divisible = false;  // x0^(2d-4) | Hess(f)
  bool hess_zero = false;
  bool proportional = false;
  bool cone_case = false;  // all c_i = 0: f is a cone, the criterion is moot
  bool criterion_ok = false;  // hess_zero == proportional, or cone_case with hess_zero
  std::optional<std::pair<Exponent, Rational>> witness;
  bool pass() const { return h12_zero && divisible && criterion_ok; }
};

inline ConeFormReport lemma31_forward(const ConeNormalForm& n) {
  if (n.d < 3) throw std::invalid_argument("lemma31_forward needs d >= 3");
  const Form f = n.form();
  ConeFormReport out;
  out.d = n.d;
  out.h12_zero = h12(f, f).is_zero();
  const Form H = hess(f);
  out.hess_zero = H.is_zero();
  const DivisionResult div = divide_by_monomial_power(H, 0, 2 * n.d - 4);
  out.divisible = div.divisible();
  out.witness = div.witness;
  out.proportional = n.proportional();
  out.cone_case = n.all_c_zero();
  out.criterion_ok = out.cone_case ? out.hess_zero : out.hess_zero == out.proportional;
  return out;
}

inline Json to_json(const ConeFormReport& r) {
  Json out;
  out["lemma"] = "3.1";
  out["d"] = r.d;
  out["case"] = r.cone_case ? "cone" : (r.proportional ? "proportional" : "generic");
  out["hypotheses_ok"] = true;
  out["divisible"] = r.divisible;
  out["witness"] = r.witness ? Json{{"e", r.witness->first.entries()}, {"c", to_string(r.witness->second)}} : Json(nullptr);
  out["h12_zero"] = r.h12_zero;
  out["hess_zero"] = r.hess_zero;
  out["criterion_ok"] = r.criterion_ok;
  out["pass"] = r.pass();
  return out;
}

/// Outcome of one divisibility claim behind a hypothesis gate.
struct DivisibilityReport {
  std::string lemma;
  int d = 0;
  std::string case_tag;
  bool hypotheses_ok = false;
  bool divisible = false;
  int power = 0;  // exponent of x0 required
  Json witness = nullptr;
  /// "pass", "fail" or "not-applicable".
  std::string verdict() const {
    if (!hypotheses_ok) return "not-applicable";
    return divisible ? "pass" : "fail";
  }
};

inline Json to_json(const DivisibilityReport& r) {
  Json out;
  out["lemma"] = r.lemma;
  out["d"] = r.d;
  out["case"] = r.case_tag;
  out["hypotheses_ok"] = r.hypotheses_ok;
  out["divisible"] = r.divisible;
  out["witness"] = r.witness;
  out["power"] = r.power;
  out["verdict"] = r.verdict();
  return out;
}

namespace detail {

inline void check_triple(const Form& f, const Form& g) {
  if (f.nvars() != 3 || g.nvars() != 3) throw std::invalid_argument("forms must be ternary");
  if (f.degree() != g.degree()) throw std::invalid_argument("forms must have equal degree");
  if (f.degree() < 4) throw std::invalid_argument("divisibility checks need d >= 4");
}

inline DivisibilityReport divisibility(std::string lemma, const Form& target, int d, int power, bool gate,
                                       std::string case_tag) {
  DivisibilityReport out{std::move(lemma), d, std::move(case_tag), gate, false, power};
  if (!gate) return out;
  const DivisionResult div = divide_by_monomial_power(target, 0, power);
  out.divisible = div.divisible();
  out.witness = witness_json(div);
  return out;
}

}  // namespace detail

/// Both clauses: x0^(2d-4) | H(f,f,g) under H12(f,f) = H12(f,g) = 0 and
/// Hess(f) = 0; x0^(2d-4) | H(f,g,g) if moreover H12(g,g) = 0.
inline std::pair<DivisibilityReport, DivisibilityReport> lemma34_check(const Form& f, const Form& g,
                                                                       const std::string& case_tag = "input") {
  detail::check_triple(f, g);
  const int d = f.degree();
  const bool gate1 = h12(f, f).is_zero() && h12(f, g).is_zero() && hess(f).is_zero();
  const bool gate2 = gate1 && h12(g, g).is_zero();
  auto first = detail::divisibility("3.4", gate1 ? h3(f, f, g) : Form(), d, 2 * d - 4, gate1, case_tag);
  auto second = detail::divisibility("3.4b", gate2 ? h3(f, g, g) : Form(), d, 2 * d - 4, gate2, case_tag);
  return {first, second};
}

/// x0^(d-3) | H(f,g,h) under H12(f,f) = H12(f,g) = H12(g,g) = H12(f,h) =
/// H12(g,h) = 0 and Hess(f) = 0. H12(h,h) is not part of the gate.
inline bool triple_gates_hold(const Form& f, const Form& g, const Form& h) {
  return h12(f, f).is_zero() && h12(f, g).is_zero() && h12(g, g).is_zero() && h12(f, h).is_zero() &&
         h12(g, h).is_zero() && hess(f).is_zero();
}

inline DivisibilityReport lemma35_check(const Form& f, const Form& g, const Form& h,
                                        const std::string& case_tag = "input") {
  detail::check_triple(f, g);
  detail::check_triple(f, h);
  const int d = f.degree();
  const bool gate = triple_gates_hold(f, g, h);
  return detail::divisibility("3.5", gate ? h3(f, g, h) : Form(), d, d - 3, gate, case_tag);
}

struct SampledTriple {
  Form f, g, h;
  std::string case_tag;  // "g11=0", "f22=0,b=0" or "c=0"
  std::string variant;   // which sub-case of the h constraint was drawn
};

namespace detail {

/// sum_{i=lo..d} c_i x0^(d-i) x1^i with random small c_i (some zero).
inline Form x1_tail(Rng& rng, int d, int lo, bool allow_zero = true) {
  Form f(3, d);
  for (int i = lo; i <= d; ++i) {
    if (allow_zero && rng.chance(30)) continue;
    f.accumulate(Exponent{d - i, i, 0}, rng.nonzero(9));
  }
  return f;
}

/// A form at most linear in x2: A(x0, x1) + x2 B(x0, x1).
inline Form linear_in_x2(Rng& rng, int d) {
  Form h(3, d);
  for (const auto& e : monomial_basis(3, d))
    if (e[2] <= 1 && rng.chance(60)) h.accumulate(e, rng.nonzero(9));
  return h;
}

inline Form random_binary_linear(Rng& rng) {
  while (true) {
    const long a = rng.integer(-9, 9), b = rng.integer(-9, 9);
    if (a != 0 || b != 0) return binary_linear(a, b);
  }
}

/// Change of coordinates acting on (x1, x2) only.
inline LinearChange random_binary_change(Rng& rng) {
  RationalMatrix m = RationalMatrix::identity(3);
  while (true) {
    for (std::size_t i = 1; i < 3; ++i)
      for (std::size_t j = 1; j < 3; ++j) m(i, j) = rng.integer(-3, 3);
    if (sgn(determinant(m)) != 0) return LinearChange(m);
  }
}

}  // namespace detail

/// A triple (f, g, h) of degree d satisfying the triple divisibility gates,
/// drawn from one of the three normal-form cases (by seed mod 3) and moved by a random
/// change of (x1, x2). The gates are re-checked before returning.
inline SampledTriple sample_hypothesis_triple(int d, std::uint64_t seed) {
  if (d < 4) throw std::invalid_argument("sampler needs d >= 4");
  Rng rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  const Form xd = detail::x0_power(d);
  const Form xd1 = detail::x0_power(d - 1);
  SampledTriple t;
  switch (seed % 3) {
    case 0: {
      // g = x0^d + x0^(d-1) l, so g11 = 0; f in x0, x1 only.
      t.case_tag = "g11=0";
      t.f = xd + detail::x1_tail(rng, d, 1);
      t.g = xd + xd1 * detail::random_binary_linear(rng);
      const bool f11_zero = rng.chance(25);
      if (f11_zero) t.f = xd + xd1 * detail::binary_linear(rng.nonzero(9), 0);
      t.variant = f11_zero ? "f11=0" : "h22=0";
      t.h = f11_zero ? rng.nonzero_form(3, d) : detail::linear_in_x2(rng, d);
      break;
    }
    case 1: {
      // f in x0, x1 only (f22 = 0 with b = 0); g in normal form with m = x1.
      t.case_tag = "f22=0,b=0";
      const bool both_flat = rng.chance(25);
      if (both_flat) {
        t.f = xd + xd1 * detail::binary_linear(rng.nonzero(9), 0);
        t.g = xd + xd1 * detail::random_binary_linear(rng);
        t.h = rng.nonzero_form(3, d);
        t.variant = "f11=g11=0";
      } else {
        t.f = xd + detail::x1_tail(rng, d, 1);
        const Form l = detail::random_binary_linear(rng);
        t.g = xd + xd1 * l + detail::x1_tail(rng, d, 2);
        t.h = detail::linear_in_x2(rng, d);
        t.variant = "h22=0";
      }
      break;
    }
    default: {
      // f = x0^d + c1 x0^(d-1) (a x1 + b x2) with b != 0.
      t.case_tag = "c=0";
      const long a = rng.integer(-9, 9);
      const long b = rng.nonzero(9);
      const long c1 = rng.nonzero(9);
      t.f = xd + xd1 * detail::binary_linear(a, b) * Rational(c1);
      const bool g11_zero = rng.chance(40);
      if (g11_zero) {
        t.g = xd + xd1 * detail::random_binary_linear(rng);
        t.h = rng.nonzero_form(3, d);
        t.variant = "g11=0";
      } else {
        const Form l = detail::random_binary_linear(rng);
        t.g = xd + xd1 * l + detail::x1_tail(rng, d, 2);
        t.h = detail::linear_in_x2(rng, d);
        t.variant = "h22=0";
      }
      break;
    }
  }
  if (t.h.is_zero()) t.h = xd;
  const LinearChange change = detail::random_binary_change(rng);
  t.f = apply_linear_change(t.f, change);
  t.g = apply_linear_change(t.g, change);
  t.h = apply_linear_change(t.h, change);
  if (!triple_gates_hold(t.f, t.g, t.h)) throw std::logic_error("sampled triple violates the hypotheses");
  return t;
}

/// A pair for the first pair-divisibility clause with g outside the normal forms:
/// f has Hess(f) = 0 and H12(f) = 0, and g is either fully random (when
/// f11 = 0) or random subject to g22 = 0 after the same change of (x1, x2).
inline std::pair<Form, Form> sample_divisibility_pair(int d, std::uint64_t seed, std::string* case_tag = nullptr) {
  if (d < 4) throw std::invalid_argument("sampler needs d >= 4");
  Rng rng(seed * 0xD1B54A32D192ED03ULL + 5);
  const Form xd = detail::x0_power(d);
  Form f, g;
  if (seed % 2 == 0) {
    f = xd + detail::x0_power(d - 1) * detail::binary_linear(rng.nonzero(9), 0);
    g = rng.nonzero_form(3, d);
    if (case_tag) *case_tag = "f11=0,random g";
  } else {
    f = xd + detail::x1_tail(rng, d, 1);
    g = detail::linear_in_x2(rng, d);
    if (g.is_zero()) g = xd;
    if (case_tag) *case_tag = "g22=0,random g";
  }
  const LinearChange change = detail::random_binary_change(rng);
  return {apply_linear_change(f, change), apply_linear_change(g, change)};
}

struct LimitReport {
  int d = 0;
  bool slot0_ok = false;     // slot 0 is x0^d
  bool inconclusive = false;  // Hess(f(t)) vanishes identically
  int order = -1;             // lowest t-order of Hess(f(t))
  Form limit;
  bool divisible = false;     // x0^(d-3) | limit
  std::optional<int> valuation;  // x0-adic valuation of the limit
  Json witness = nullptr;
  bool pass() const { return slot0_ok && (inconclusive || divisible); }
};

inline Json to_json(const LimitReport& r) {
  Json out;
  out["lemma"] = "3.3";
  out["d"] = r.d;
  out["case"] = r.inconclusive ? "zero-family" : "limit";
  out["hypotheses_ok"] = r.slot0_ok;
  out["divisible"] = r.divisible;
  out["witness"] = r.witness;
  out["order"] = r.order;
  out["valuation"] = r.valuation ? Json(*r.valuation) : Json(nullptr);
  out["limit"] = r.inconclusive ? Json(nullptr) : to_json(r.limit);
  out["pass"] = r.pass();
  return out;
}

/// Lowest-order coefficient of hess_t(F) and its divisibility by x0^(d-3).
inline LimitReport puiseux_limit_check(const TParameterForm& F) {
  const int d = F.degree();
  if (d < 4) throw std::invalid_argument("limit check needs d >= 4");
  if (F.nvars() != 3) throw std::invalid_argument("limit check is for ternary families");
  LimitReport out;
  out.d = d;
  out.slot0_ok = F.slot(0) == detail::x0_power(d);
  if (!out.slot0_ok) return out;
  const TParameterForm H = hess_t(F);
  if (H.is_zero()) {
    out.inconclusive = true;
    return out;
  }
  const auto [order, limit] = lowest_t_order(H);
  out.order = order;
  out.limit = limit;
  out.valuation = monomial_valuation(limit, 0);
  const DivisionResult div = divide_by_monomial_power(limit, 0, d - 3);
  out.divisible = div.divisible();
  out.witness = detail::witness_json(div);
  return out;
}

/// x0^d plus one to three slots at distinct t-exponents in [1, 4]. Slot forms
/// are dense random, sparse random, or normal-form perturbations
/// x0^(d-1) l + sum c_i x0^(d-i) m^i, chosen per slot.
inline TParameterForm random_puiseux_family(int d, std::uint64_t seed) {
  if (d < 4) throw std::invalid_argument("family needs d >= 4");
  Rng rng(seed * 0xA24BAED4963EE407ULL + 99);
  TParameterForm F(3, d);
  F.add(0, detail::x0_power(d));
  const long slots = rng.integer(1, 3);
  std::vector<int> used;
  while (static_cast<long>(used.size()) < slots) {
    const int a = static_cast<int>(rng.integer(1, 4));
    if (std::find(used.begin(), used.end(), a) != used.end()) continue;
    used.push_back(a);
    Form s;
    switch (rng.integer(0, 2)) {
      case 0: s = rng.nonzero_form(3, d, 40, 5); break;
      case 1: s = rng.sparse_form(3, d, static_cast<std::size_t>(rng.integer(1, 3)), 5); break;
      default: {
        ConeNormalForm n{d, detail::random_binary_linear(rng), detail::random_binary_linear(rng), {}};
        for (int i = 2; i <= d; ++i) n.c.push_back(rng.chance(50) ? 0 : rng.nonzero(5));
        s = n.form() - detail::x0_power(d);
        break;
      }
    }
    if (s.is_zero()) s = rng.sparse_form(3, d, 1, 5);
    F.add(a, s);
  }
  return F;
}

/// The same family with every t-exponent multiplied by `factor`.
inline TParameterForm rescale_exponents(const TParameterForm& F, int factor) {
  if (factor < 1) throw std::invalid_argument("exponent factor must be positive");
  TParameterForm out(F.nvars(), F.degree());
  for (const auto& [a, f] : F.slots()) out.add(a * factor, f);
  return out;
}

struct VertexDerivativeReport {
  int d = 0;
  bool lower_vanish = false;                // all derivatives of order <= d-2 vanish at (0:0:1)
  std::vector<Exponent> nonzero_top;        // order d-1 derivatives nonzero there
  bool pass() const { return lower_vanish && nonzero_top.size() == 1; }
};

/// Derivatives at (0:0:1) of the normal form with l = x2, m = x1.
inline VertexDerivativeReport vertex_derivative_check(int d, const std::vector<Rational>& c) {
  ConeNormalForm n{d, detail::binary_linear(0, 1), detail::binary_linear(1, 0), c};
  const Form f = n.form();
  const std::vector<Rational> point{0, 0, 1};
  VertexDerivativeReport out;
  out.d = d;
  out.lower_vanish = true;
  for (int order = 0; order <= d - 1; ++order)
    for (const auto& alpha : monomial_basis(3, order)) {
      if (sgn(evaluate(derivative(f, alpha), point)) == 0) continue;
      if (order <= d - 2) out.lower_vanish = false;
      else out.nonzero_top.push_back(alpha);
    }
  return out;
}

inline Json to_json(const VertexDerivativeReport& r) {
  Json top = Json::array();
  for (const auto& e : r.nonzero_top) top.push_back(e.entries());
  Json out;
  out["d"] = r.d;
  out["lower_vanish"] = r.lower_vanish;
  out["nonzero_top_derivatives"] = std::move(top);
  out["pass"] = r.pass();
  return out;
}

struct GateRecord {
  int d = 0;
  int k = 0;
  bool even = true;
  // Clause availability from the stated conditions on k.
  bool clause1 = false, clause2 = false, clause3 = false;
  // x0-valuation of each clause's target, which must be below d-3.
  std::optional<int> valuation1, valuation2, valuation3;
  bool consistent = true;  // stated availability equals valuation < d-3
  std::vector<int> licensed() const {
    std::vector<int> out;
    if (clause1) out.push_back(1);
    if (clause2) out.push_back(2);
    if (clause3) out.push_back(3);
    return out;
  }
};

/// Which exclusions x0^(d-3) | limit licenses at degree d: the point
/// (x0^d, T) is excluded when T is not divisible by x0^(d-3). Targets are
/// q^(3(k-1)) (even d), q^(3(k-1)) x0^3 (odd d) and q^(3(k-2)) x0^6 (even d).
inline GateRecord corollary36_gate(int d) {
  if (d < 4) throw std::invalid_argument("gate needs d >= 4");
  GateRecord g;
  g.d = d;
  g.even = d % 2 == 0;
  g.k = d / 2;
  const int k = g.k;
  if (g.even) {
    g.clause1 = k >= 2;
    g.clause3 = k >= 5;
    g.valuation1 = monomial_valuation(q_l_power(2, 3 * (k - 1), 0), 0);
    if (k >= 2) g.valuation3 = monomial_valuation(q_l_power(2, 3 * (k - 2), 6), 0);
    g.consistent = g.clause1 == (*g.valuation1 < d - 3) &&
                   (k < 2 || g.clause3 == (*g.valuation3 < d - 3));
  } else {
    g.clause2 = k >= 3;
    g.valuation2 = monomial_valuation(q_l_power(2, 3 * (k - 1), 3), 0);
    g.consistent = g.clause2 == (*g.valuation2 < d - 3);
  }
  return g;
}

inline Json to_json(const GateRecord& g) {
  auto val = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  Json out;
  out["d"] = g.d;
  out["k"] = g.k;
  out["parity"] = g.even ? "even" : "odd";
  out["clause1"] = g.clause1;
  out["clause2"] = g.clause2;
  out["clause3"] = g.clause3;
  out["valuations"] = {val(g.valuation1), val(g.valuation2), val(g.valuation3)};
  out["consistent"] = g.consistent;
  out["licensed"] = g.licensed();
  return out;
}

}  // namespace hessmap
