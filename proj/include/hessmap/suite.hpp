#pragma once

/// Registry of every verification, run over a worker pool and merged in
/// registration order. Each check is pure given its options, so the JSON
/// result is byte-identical across runs and job counts (timings are kept out
/// of it unless asked for).

#include <hessmap/certificate.hpp>
#include <hessmap/closed_orbits.hpp>
#include <hessmap/curves.hpp>
#include <hessmap/differential_rank.hpp>
#include <hessmap/diophantine.hpp>
#include <hessmap/fixtures.hpp>
#include <hessmap/harmonic.hpp>
#include <hessmap/hessian.hpp>
#include <hessmap/indeterminacy.hpp>
#include <hessmap/random.hpp>
#include <hessmap/serialize.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <iterator>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace hessmap {

struct SuiteOptions {
  std::string filter;                 // module name or "module/check" prefix; empty runs all
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;  // overrides the fixture seeds
  long bound = 10000;                 // brute-force bound for the curves
  std::optional<int> samples;         // overrides the fixture sample count
  bool timings = false;
  std::string fixture_dir = default_fixture_dir();
};

/// Resolved inputs shared by all checks.
struct SuiteContext {
  FixtureStore fixtures;
  Json seeds;
  long bound = 10000;
  int samples = 100;
  std::optional<std::uint64_t> seed_override;

  std::uint64_t seed(const std::string& key) const {
    if (seed_override) {
      // Distinct streams per key, derived from the single override.
      std::uint64_t h = *seed_override;
      for (char c : key) h = h * 1099511628211ULL + static_cast<unsigned char>(c);
      return h;
    }
    return seeds.at(key).get<std::uint64_t>();
  }
};

struct SuiteCheck {
  std::string module;
  std::string name;
  std::function<Json(const SuiteContext&)> run;  // returns an object with a boolean "pass"
  std::string id() const { return module + "/" + name; }
};

namespace detail {

inline Json failures_record(std::size_t cases, const Json& failures, Json extra = Json::object()) {
  extra["cases"] = cases;
  extra["failures"] = failures;
  extra["pass"] = failures.empty();
  return extra;
}

inline Json points_json(const std::vector<IntegerPoint>& pts) { return to_json(pts); }

inline std::vector<IntegerPoint> restrict_x(const std::vector<IntegerPoint>& pts, long bound) {
  std::vector<IntegerPoint> out;
  for (const auto& p : pts)
    if (p.first >= -bound && p.first <= bound) out.push_back(p);
  return out;
}

// forms_core

inline Json check_serialization(const SuiteContext& ctx) {
  Rng rng(ctx.seed("forms"));
  Json failures = Json::array();
  for (int s = 0; s < ctx.samples; ++s) {
    const auto nvars = static_cast<std::size_t>(rng.integer(2, 4));
    const int d = static_cast<int>(rng.integer(0, 6));
    const Form f = rng.form(nvars, d, 50, 20);
    const std::string text = serialize(f);
    if (!(parse_form(text) == f) || serialize(parse_form(text)) != text) failures.push_back(text);
  }
  return failures_record(static_cast<std::size_t>(ctx.samples), failures);
}

/// Hess(f(A x)) == det(A)^2 Hess(f)(A x).
inline Json check_hessian_covariance(const SuiteContext& ctx) {
  Rng rng(ctx.seed("forms") + 1);
  Json failures = Json::array();
  const int n = std::max(ctx.samples / 5, 1);
  for (int s = 0; s < n; ++s) {
    const int d = static_cast<int>(rng.integer(2, 4));
    const Form f = rng.nonzero_form(3, d, 50, 5);
    const LinearChange a(rng.invertible(3, 2));
    const Form lhs = hess(apply_linear_change(f, a));
    const Form rhs = apply_linear_change(hess(f), a) * (a.determinant() * a.determinant());
    if (!(lhs == rhs)) failures.push_back(serialize(f));
  }
  return failures_record(static_cast<std::size_t>(n), failures);
}

// harmonic

inline Json check_harmonic_dimensions(const SuiteContext&) {
  const QuadraticForm q = QuadraticForm::hyperbolic(3);
  Json failures = Json::array();
  for (int d = 0; d <= 8; ++d) {
    const std::size_t dim = harmonic_basis(d, q).size();
    if (dim != static_cast<std::size_t>(2 * d + 1) || harmonic_dimension(3, d) != dim)
      failures.push_back({{"d", d}, {"dimension", dim}});
  }
  return failures_record(9, failures);
}

/// Round trip, per-summand harmonicity and the q^j shift, for both the
/// hyperbolic and the diagonal quadric.
inline Json check_harmonic_decomposition(const SuiteContext& ctx) {
  Rng rng(ctx.seed("harmonic"));
  const QuadraticForm quadrics[] = {QuadraticForm::hyperbolic(3), QuadraticForm::sum_of_squares(3)};
  Json failures = Json::array();
  const int n = std::max(ctx.samples / 4, 1);
  for (int s = 0; s < n; ++s) {
    const QuadraticForm& q = quadrics[s % 2];
    const int d = static_cast<int>(rng.integer(0, 6));
    const Form f = rng.form(3, d, 50, 9);
    const auto dec = harmonic_decompose(f, q);
    bool ok = dec.recombine(q) == f;
    for (const auto& h : dec.summands) ok = ok && laplacian_q(h, q).is_zero();
    const int j = static_cast<int>(rng.integer(1, 2));
    const auto shifted = harmonic_decompose(f * pow(q.polynomial(), static_cast<unsigned>(j)), q);
    for (std::size_t i = 0; i < shifted.summands.size(); ++i) {
      const bool expect_zero = i < static_cast<std::size_t>(j);
      if (expect_zero) ok = ok && shifted.summands[i].is_zero();
      else ok = ok && shifted.summands[i] == dec.summands[i - static_cast<std::size_t>(j)];
    }
    if (!ok) failures.push_back(serialize(f));
  }
  return failures_record(static_cast<std::size_t>(n), failures);
}

/// Distinct summands q^i h and q^j h' are Bombieri-Weyl orthogonal.
inline Json check_bw_orthogonality(const SuiteContext& ctx) {
  Rng rng(ctx.seed("harmonic") + 1);
  const QuadraticForm q = QuadraticForm::sum_of_squares(3);
  Json failures = Json::array();
  const int n = std::max(ctx.samples / 5, 1);
  for (int s = 0; s < n; ++s) {
    const int d = static_cast<int>(rng.integer(2, 6));
    const Form f = rng.form(3, d, 60, 9), g = rng.form(3, d, 60, 9);
    const auto df = harmonic_decompose(f, q), dg = harmonic_decompose(g, q);
    for (std::size_t i = 0; i < df.summands.size(); ++i)
      for (std::size_t j = 0; j < dg.summands.size(); ++j) {
        if (i == j) continue;
        const Form a = df.summands[i] * pow(q.polynomial(), static_cast<unsigned>(i));
        const Form b = dg.summands[j] * pow(q.polynomial(), static_cast<unsigned>(j));
        if (sgn(bombieri_weyl(a, b, q)) != 0) failures.push_back({{"f", serialize(f)}, {"i", i}, {"j", j}});
      }
  }
  return failures_record(static_cast<std::size_t>(n), failures);
}

// hessian_calculus

inline Json check_h3_diagonal(const SuiteContext& ctx) {
  Rng rng(ctx.seed("multilinear"));
  Json failures = Json::array();
  for (int s = 0; s < ctx.samples; ++s) {
    const int d = static_cast<int>(rng.integer(2, 5));
    const Form f = rng.form(3, d, 50, 9);
    if (!(h3(f, f, f) == hess(f))) failures.push_back(serialize(f));
  }
  return failures_record(static_cast<std::size_t>(ctx.samples), failures);
}

/// hess_t == ordered trilinear sum; with a leading x0^d also == the grouped form.
inline Json check_trilinear_expansion(const SuiteContext& ctx) {
  Rng rng(ctx.seed("multilinear") + 1);
  Json failures = Json::array();
  for (int s = 0; s < ctx.samples; ++s) {
    const int d = static_cast<int>(rng.integer(2, 5));
    TParameterForm F(3, d);
    const bool cone_based = d >= 2 && s % 2 == 0;
    if (cone_based) F.add(0, Form::monomial(Exponent{d, 0, 0}));
    const long slots = rng.integer(1, 3);
    for (long i = 0; i < slots; ++i) {
      const int t = static_cast<int>(rng.integer(cone_based ? 1 : 0, 4));
      F.add(t, rng.form(3, d, 40, 5));
    }
    const TParameterForm H = hess_t(F);
    bool ok = (H - trilinear_expansion(F)).is_zero();
    if (cone_based) ok = ok && (H - grouped_expansion(F)).is_zero();
    if (!ok) failures.push_back(to_json(F));
  }
  return failures_record(static_cast<std::size_t>(ctx.samples), failures);
}

/// The eps-jet of Hess agrees with Hess and with the cofactor contraction.
inline Json check_epsilon_jet(const SuiteContext& ctx) {
  Rng rng(ctx.seed("multilinear") + 2);
  Json failures = Json::array();
  const int n = std::max(ctx.samples / 4, 1);
  for (int s = 0; s < n; ++s) {
    const auto nvars = static_cast<std::size_t>(rng.integer(2, 4));
    const int d = static_cast<int>(rng.integer(2, 4));
    const Form f = rng.nonzero_form(nvars, d, 50, 5), g = rng.form(nvars, d, 50, 5);
    const EpsilonForm jet = hess_eps(EpsilonForm(f, g));
    if (!(jet.f0 == hess(f)) || !(jet.f1 == hess_direction(hessian_cofactors(f), g)))
      failures.push_back({{"f", serialize(f)}, {"g", serialize(g)}});
  }
  return failures_record(static_cast<std::size_t>(n), failures);
}

// closed_orbits

inline Json check_hess_power(const SuiteContext&) {
  Json failures = Json::array();
  std::size_t cases = 0;
  for (int r : {2, 3})
    for (int k = 1; k <= 4; ++k)
      for (int h = 0; h <= 3; ++h) {
        ++cases;
        const auto v = verify_hess_qk_lh(r, k, h);
        if (!v.pass) failures.push_back(to_json(v));
      }
  // Anchors: Hess(q) = -2 and Hess(q l) = -8 l^3 at r = 2.
  const bool anchors = hess(q_l_power(2, 1, 0)) == Form::constant(3, -2) &&
                       hess(q_l_power(2, 1, 1)) == q_l_power(2, 0, 3) * Rational(-8);
  Json out = failures_record(cases, failures, {{"anchors", anchors}});
  out["pass"] = out["pass"].get<bool>() && anchors;
  return out;
}

inline Json taylor_record(const std::string& prop) {
  Json failures = Json::array();
  std::size_t cases = 0;
  for (int r : {2, 3})
    for (int k = 1; k <= 4; ++k) {
      if (prop == "2.8")
        for (int m = 1; m <= k; ++m, ++cases) {
          const auto v = taylor_even(r, k, m);
          if (!v.pass) failures.push_back(to_json(v));
        }
      if (prop == "2.15")
        for (int m = 0; m <= k; ++m, ++cases) {
          const auto v = taylor_odd(r, k, m);
          if (!v.pass) failures.push_back(to_json(v));
        }
      if (prop == "2.16" && k >= 2)
        for (int m = 1; m <= k; ++m, ++cases) {
          const auto v = taylor_even2(r, k, m);
          if (!v.pass) failures.push_back(to_json(v));
        }
    }
  return failures_record(cases, failures, {{"prop", prop}});
}

/// The stated c1 for the q^k case is exactly twice the computed one; the zero
/// sets, which are what the rank argument uses, coincide.
inline Json check_taylor_even_ratio(const SuiteContext&) {
  Json failures = Json::array();
  std::size_t cases = 0;
  for (int r : {2, 3})
    for (int k = 1; k <= 4; ++k)
      for (int m = 1; m <= k; ++m, ++cases) {
        const auto v = taylor_even(r, k, m);
        const bool ratio = v.expected.c1 == 2 * v.extracted.c1 && v.expected.c0 == v.extracted.c0;
        if (!ratio) failures.push_back(to_json(v));
      }
  return failures_record(cases, failures, {{"stated_over_computed_c1", "2"}});
}

/// c1(m = 0) = (r+1) c0 in the odd case and c1(m = 1) = (r+1) c0 in the
/// q^(k-1) l^2 case, both for the computed and the stated coefficients.
inline Json check_scaling_identities(const SuiteContext&) {
  Json failures = Json::array();
  std::size_t cases = 0;
  for (int r : {2, 3})
    for (int k = 1; k <= 4; ++k) {
      ++cases;
      const auto o = taylor_odd(r, k, 0);
      if (o.extracted.c1 != (r + 1) * o.extracted.c0 || o.expected.c1 != (r + 1) * o.expected.c0)
        failures.push_back(to_json(o));
      if (k < 2) continue;
      ++cases;
      const auto e = taylor_even2(r, k, 1);
      if (e.extracted.c1 != (r + 1) * e.extracted.c0 || e.expected.c1 != (r + 1) * e.expected.c0)
        failures.push_back(to_json(e));
    }
  return failures_record(cases, failures);
}

// differential_rank

inline Json check_rank_point(const SpecialPoint& p, bool expect_injective) {
  const RankReport r = verify_special_point_rank(p);
  Json out = to_json(r);
  out["expected_injective"] = expect_injective;
  out["pass"] = r.pass && r.injective == expect_injective;
  return out;
}

inline Json check_random_complement(const SuiteContext& ctx) {
  Json failures = Json::array();
  const SpecialPoint points[] = {SpecialPoint::qk(2, 2), SpecialPoint::qkl(2, 1), SpecialPoint::qkl(2, 2),
                                 SpecialPoint::qk1l2(2, 3)};
  for (const auto& p : points) {
    const Form f = p.form();
    const std::size_t a = projective_injectivity(f).rank;
    const std::size_t b = projective_rank_random_complement(f, ctx.seed("rank_complement"));
    if (a != b) failures.push_back({{"point", p.label()}, {"monomial", a}, {"random", b}});
  }
  return failures_record(std::size(points), failures);
}

inline Json check_block_structure(const SuiteContext&) {
  Json levels = Json::array();
  bool pass = true;
  for (int k : {2, 3}) {
    const auto b = block_structure_check(k, 2);
    pass = pass && b.pass();
    levels.push_back(to_json(b));
  }
  return {{"reports", levels}, {"pass", pass}};
}

inline Json check_pijk(const SuiteContext&) {
  Json failures = Json::array();
  std::size_t cases = 0;
  for (int i = 0; i <= 3; ++i)
    for (int k = 0; k <= 3; ++k, ++cases) {
      const auto r = pijk_injectivity(i, k, 2);
      if (!r.pass) failures.push_back(to_json(r));
    }
  return failures_record(cases, failures);
}

// diophantine

inline Json scan_record(ConditionTag t, long kmin, long kmax, const std::vector<std::pair<long, long>>& expected) {
  const ScanReport s = scan_condition(t, 2, kmin, kmax);
  Json out = to_json(s);
  Json e = Json::array();
  for (const auto& [k, m] : expected) e.push_back({k, m});
  out["expected_violations"] = std::move(e);
  out["pass"] = s.violations == expected;
  return out;
}

/// Zeros of the Odd (family 1) or EvenB (family 2) condition read off the
/// curve's integral points: (k, m) = (x, y) with kmin <= x <= kmax, 0 <= y <= x.
inline std::vector<std::pair<long, long>> curve_violations(const std::vector<IntegerPoint>& omega, long kmin,
                                                           long kmax) {
  std::vector<std::pair<long, long>> out;
  for (const auto& [x, y] : omega)
    if (x >= kmin && x <= kmax && y >= 0 && y <= x) out.emplace_back(x, y);
  std::sort(out.begin(), out.end());
  return out;
}

// appendix

inline Json check_brute_force(const SuiteContext& ctx, int family) {
  const auto found = brute_force_integral_points(family, ctx.bound);
  const auto expected = restrict_x(ctx.fixtures.omega(family), ctx.bound);
  return {{"family", family},
          {"bound", ctx.bound},
          {"points", points_json(found)},
          {"expected", points_json(expected)},
          {"pass", found == expected}};
}

inline Json check_fixture_lists(const SuiteContext& ctx) {
  bool pass = true;
  Json out;
  for (int family : {1, 2}) {
    const bool omega_ok = ctx.fixtures.omega(family) == omega(family);
    const bool points_ok = ctx.fixtures.weierstrass_points(family) == listed_weierstrass_points(family);
    out["family" + std::to_string(family)] = {{"omega", omega_ok}, {"weierstrass_points", points_ok}};
    pass = pass && omega_ok && points_ok;
  }
  out["pass"] = pass;
  return out;
}

inline Json check_weierstrass(const SuiteContext& ctx, int family) {
  const WeierstrassCurve w = weierstrass_model(family), x = integral_model(family);
  Json failures = Json::array();
  const auto pts = ctx.fixtures.weierstrass_points(family);
  for (const auto& p : pts)
    if (!on_curve(p, w) || !on_curve(rho2(p, family), x)) failures.push_back(to_json(p));
  const bool smooth = sgn(w.discriminant()) != 0 && sgn(x.discriminant()) != 0;
  Json out = failures_record(pts.size(), failures,
                             {{"family", family},
                              {"curve", curve_label(family)},
                              {"discriminant", to_string(w.discriminant())},
                              {"smooth", smooth}});
  out["pass"] = out["pass"].get<bool>() && smooth;
  return out;
}

inline Json check_fiber_recovery(const SuiteContext& ctx, int family) {
  const auto recovered = recovered_integral_points(family);
  const auto expected = ctx.fixtures.omega(family);
  Json out{{"family", family}, {"recovered", points_json(recovered)}, {"pass", recovered == expected}};
  if (family == 1) out["candidates_on_cubic"] = points_json(cubic_integral_candidates());
  return out;
}

// indeterminacy

inline Json check_cone_form_examples(const SuiteContext&) {
  const Form x1 = Form::linear({0, 1, 0}), x2 = Form::linear({0, 0, 1});
  const auto generic = lemma31_forward({4, x2, x1, {1, 1, 1}});
  const auto proportional = lemma31_forward({4, x1, x1, {2, -1, 3}});
  const auto cone = lemma31_forward({4, x2, x1, {0, 0, 0}});
  const bool pass = generic.pass() && !generic.hess_zero && proportional.pass() && proportional.hess_zero &&
                    cone.pass() && cone.hess_zero;
  return {{"generic", to_json(generic)}, {"proportional", to_json(proportional)}, {"cone", to_json(cone)},
          {"pass", pass}};
}

inline Json check_cone_form_random(const SuiteContext& ctx) {
  Rng rng(ctx.seed("pairs") + 7);
  Json failures = Json::array();
  std::size_t proportional = 0;
  for (int s = 0; s < ctx.samples; ++s) {
    const int d = static_cast<int>(rng.integer(3, 6));
    ConeNormalForm n{d, detail::random_binary_linear(rng), detail::random_binary_linear(rng), {}};
    if (rng.chance(25)) n.l = n.m * Rational(rng.nonzero(5));
    for (int i = 2; i <= d; ++i) n.c.push_back(rng.chance(30) ? 0 : rng.nonzero(9));
    const auto r = lemma31_forward(n);
    proportional += r.proportional;
    if (!r.pass()) failures.push_back(to_json(r));
  }
  return failures_record(static_cast<std::size_t>(ctx.samples), failures, {{"proportional_cases", proportional}});
}

inline Json check_pair_divisibility(const SuiteContext& ctx) {
  Json failures = Json::array();
  Json cases = Json::object();
  std::size_t checked = 0;
  const std::uint64_t base = ctx.seed("pairs");
  for (int s = 0; s < ctx.samples; ++s) {
    const int d = 4 + s % 4;
    const auto t = sample_hypothesis_triple(d, base + static_cast<std::uint64_t>(s));
    const auto [first, second] = lemma34_check(t.f, t.g, t.case_tag);
    std::string tag;
    const auto [f, g] = sample_divisibility_pair(d, base + static_cast<std::uint64_t>(s), &tag);
    const auto [pfirst, psecond] = lemma34_check(f, g, tag);
    for (const auto* rep : {&first, &second, &pfirst}) {
      ++checked;
      cases[rep->case_tag] = cases.value(rep->case_tag, 0) + 1;
      if (rep->verdict() != "pass") failures.push_back(to_json(*rep));
    }
    // The second clause for random pairs is gated; only a fail counts.
    if (psecond.verdict() == "fail") failures.push_back(to_json(psecond));
  }
  // A pair violating H12(f, g) = 0 must be reported as not applicable.
  const Form x0 = Form::linear({1, 0, 0}), x1 = Form::linear({0, 1, 0}), x2 = Form::linear({0, 0, 1});
  const Form f = pow(x0, 4) + pow(x0, 2) * pow(x1, 2);
  const Form g = pow(x2, 4) + pow(x1, 2) * pow(x2, 2);
  const bool gate_ok = lemma34_check(f, g, "gate").first.verdict() == "not-applicable";
  Json out = failures_record(checked, failures, {{"case_counts", cases}, {"violating_pair_gated", gate_ok}});
  out["pass"] = out["pass"].get<bool>() && gate_ok;
  return out;
}

inline Json check_triple_divisibility(const SuiteContext& ctx) {
  Json failures = Json::array();
  Json cases = Json::object();
  const std::uint64_t base = ctx.seed("triples");
  for (int s = 0; s < ctx.samples; ++s) {
    const int d = 4 + s % 4;
    const auto t = sample_hypothesis_triple(d, base + static_cast<std::uint64_t>(s));
    const auto rep = lemma35_check(t.f, t.g, t.h, t.case_tag);
    const std::string key = t.case_tag + "/" + t.variant;
    cases[key] = cases.value(key, 0) + 1;
    if (rep.verdict() != "pass") failures.push_back(to_json(rep));
  }
  // f = g = h in the normal form with l, m proportional: the gates reduce to
  // Hess(f) = 0.
  const Form x1 = Form::linear({0, 1, 0});
  const Form f = ConeNormalForm{5, x1 * Rational(2), x1, {1, 0, -1, 2}}.form();
  const auto diag = lemma35_check(f, f, f, "diagonal");
  const bool diag_ok = diag.verdict() == "pass" && h3(f, f, f).is_zero();
  Json out = failures_record(static_cast<std::size_t>(ctx.samples), failures,
                             {{"case_counts", cases}, {"diagonal_consistent", diag_ok}});
  out["pass"] = out["pass"].get<bool>() && diag_ok;
  return out;
}

inline Json check_limit_random(const SuiteContext& ctx) {
  Json failures = Json::array();
  std::size_t inconclusive = 0, rescale_mismatch = 0;
  const std::uint64_t base = ctx.seed("limit");
  for (int s = 0; s < ctx.samples; ++s) {
    const int d = 4 + s % 4;
    const auto F = random_puiseux_family(d, base + static_cast<std::uint64_t>(s));
    const auto r = puiseux_limit_check(F);
    inconclusive += r.inconclusive;
    if (!r.pass()) failures.push_back(to_json(r));
    if (s % 5 == 0) {
      const auto r2 = puiseux_limit_check(rescale_exponents(F, 2 + s % 3));
      if (r2.pass() != r.pass() || r2.inconclusive != r.inconclusive || !(r2.limit == r.limit)) ++rescale_mismatch;
    }
  }
  Json out = failures_record(static_cast<std::size_t>(ctx.samples), failures,
                             {{"inconclusive", inconclusive}, {"rescale_mismatches", rescale_mismatch}});
  out["pass"] = out["pass"].get<bool>() && rescale_mismatch == 0;
  return out;
}

inline Json check_limit_fixtures(const SuiteContext& ctx) {
  Json reports = Json::object();
  bool pass = true;
  for (const auto& name : ctx.fixtures.limit_fixtures()) {
    const LimitFixture fx = parse_limit_fixture(ctx.fixtures.load(name));
    const auto r = puiseux_limit_check(fx.family);
    pass = pass && r.pass();
    Json j = to_json(r);
    j.erase("limit");
    reports[fx.name] = std::move(j);
  }
  return {{"reports", reports}, {"pass", pass}};
}

/// Derivatives at (0:0:1) of the normal form with l = x2, m = x1. The single
/// nonzero order-(d-1) derivative found is recorded next to the one named in
/// the statement (x2^(d-1)); they differ.
inline Json check_vertex_derivatives(const SuiteContext&) {
  Json reports = Json::array();
  bool pass = true;
  for (int d = 3; d <= 8; ++d) {
    std::vector<Rational> c;
    for (int i = 2; i <= d; ++i) c.push_back(i - 1);
    const auto r = vertex_derivative_check(d, c);
    Json j = to_json(r);
    const bool x0_only = r.nonzero_top.size() == 1 && r.nonzero_top.front() == Exponent{d - 1, 0, 0};
    j["nonzero_is_x0_power"] = x0_only;
    j["stated_x2_power_nonzero"] = std::find(r.nonzero_top.begin(), r.nonzero_top.end(), Exponent{0, 0, d - 1}) !=
                                   r.nonzero_top.end();
    pass = pass && r.pass() && x0_only;
    reports.push_back(std::move(j));
  }
  return {{"reports", reports}, {"pass", pass}};
}

inline Json check_gates(const SuiteContext&) {
  Json failures = Json::array();
  for (int d = 4; d <= 30; ++d) {
    const auto g = corollary36_gate(d);
    const int k = d / 2;
    const bool even = d % 2 == 0;
    const bool table = g.clause1 == (even && k >= 2) && g.clause2 == (!even && k >= 3) && g.clause3 == (even && k >= 5);
    if (!table || !g.consistent) failures.push_back(to_json(g));
  }
  return failures_record(27, failures);
}

// certificates

inline Json check_certificate(int d) {
  const Certificate c = certify_birationality_preconditions(d);
  Json j = to_json(c);
  j.erase("versions");
  if (d == 5) j["pass"] = c.excluded;
  return j;
}

inline Json check_branch_table(const SuiteContext&) {
  Json failures = Json::array();
  for (int d = 4; d <= 30; ++d) {
    const char* expected = d % 2 == 1 ? "odd-via-2.17" : d <= 12 ? "evenA-via-2.9" : "evenB-via-2.18";
    if (to_string(select_branch(d)) != expected) failures.push_back(d);
  }
  return failures_record(27, failures);
}

}  // namespace detail

/// All checks in registration order.
inline std::vector<SuiteCheck> suite_registry() {
  using namespace detail;
  std::vector<SuiteCheck> r;
  auto add = [&r](std::string module, std::string name, std::function<Json(const SuiteContext&)> fn) {
    r.push_back({std::move(module), std::move(name), std::move(fn)});
  };
  add("forms_core", "serialization_roundtrip", check_serialization);
  add("forms_core", "hessian_covariance", check_hessian_covariance);
  add("harmonic", "dimensions", check_harmonic_dimensions);
  add("harmonic", "decomposition", check_harmonic_decomposition);
  add("harmonic", "bombieri_weyl_orthogonality", check_bw_orthogonality);
  add("hessian_calculus", "h3_diagonal", check_h3_diagonal);
  add("hessian_calculus", "trilinear_expansion", check_trilinear_expansion);
  add("hessian_calculus", "epsilon_jet", check_epsilon_jet);
  add("closed_orbits", "prop2.7", check_hess_power);
  for (const char* prop : {"2.8", "2.15", "2.16"})
    add("closed_orbits", std::string("prop") + prop, [p = std::string(prop)](const SuiteContext&) { return taylor_record(p); });
  add("closed_orbits", "taylor_even_c1_ratio", check_taylor_even_ratio);
  add("closed_orbits", "scaling_identities", check_scaling_identities);
  const std::pair<SpecialPoint, bool> points[] = {
      {SpecialPoint::qk(2, 2), true},    {SpecialPoint::qk(2, 3), true},    {SpecialPoint::qk(2, 4), true},
      {SpecialPoint::qkl(2, 2), true},   {SpecialPoint::qkl(2, 3), true},   {SpecialPoint::qk1l2(2, 3), true},
      {SpecialPoint::qk1l2(2, 4), true}, {SpecialPoint::qkl(2, 1), false}};
  for (const auto& [p, inj] : points)
    add("differential_rank", "rank_" + p.label(), [p, inj](const SuiteContext&) { return check_rank_point(p, inj); });
  add("differential_rank", "random_complement", check_random_complement);
  add("differential_rank", "block_structure", check_block_structure);
  add("differential_rank", "pijk", check_pijk);
  add("diophantine", "evenA_k2_6", [](const SuiteContext&) { return scan_record(ConditionTag::EvenA, 2, 6, {}); });
  add("diophantine", "evenA_k2_20",
      [](const SuiteContext&) { return scan_record(ConditionTag::EvenA, 2, 20, {{7, 3}, {12, 4}}); });
  add("diophantine", "odd_k2_100", [](const SuiteContext& c) {
    return scan_record(ConditionTag::Odd, 2, 100, curve_violations(c.fixtures.omega(1), 2, 100));
  });
  add("diophantine", "evenB_k2_100", [](const SuiteContext& c) {
    return scan_record(ConditionTag::EvenB, 2, 100, curve_violations(c.fixtures.omega(2), 2, 100));
  });
  add("appendix", "fixture_lists", check_fixture_lists);
  for (int family : {1, 2}) {
    const std::string f = std::to_string(family);
    add("appendix", "brute_force_" + f, [family](const SuiteContext& c) { return check_brute_force(c, family); });
    add("appendix", "weierstrass_" + f, [family](const SuiteContext& c) { return check_weierstrass(c, family); });
    add("appendix", "fiber_recovery_" + f, [family](const SuiteContext& c) { return check_fiber_recovery(c, family); });
  }
  add("indeterminacy", "cone_form_examples", check_cone_form_examples);
  add("indeterminacy", "cone_form_random", check_cone_form_random);
  add("indeterminacy", "pair_divisibility", check_pair_divisibility);
  add("indeterminacy", "triple_divisibility", check_triple_divisibility);
  add("indeterminacy", "limit_random", check_limit_random);
  add("indeterminacy", "limit_fixtures", check_limit_fixtures);
  add("indeterminacy", "vertex_derivatives", check_vertex_derivatives);
  add("indeterminacy", "exclusion_gates", check_gates);
  add("certificates", "branch_table", check_branch_table);
  for (int d = 4; d <= 16; ++d)
    add("certificates", "d" + std::to_string(d), [d](const SuiteContext&) { return check_certificate(d); });
  return r;
}

inline bool suite_selects(const SuiteCheck& c, const std::string& filter) {
  if (filter.empty() || c.module == filter) return true;
  const std::string id = c.id();
  return id.compare(0, filter.size(), filter) == 0;
}

struct SuiteResult {
  Json json;
  bool pass = false;
};

/// Runs the selected checks; throws FixtureError when a fixture is missing or
/// its hash differs from the manifest, and std::invalid_argument when the
/// filter selects nothing.
inline SuiteResult run_suite(const SuiteOptions& opts) {
  SuiteContext ctx{FixtureStore(opts.fixture_dir), Json::object(), opts.bound, 100, opts.seed};
  const Json hashes = ctx.fixtures.verify_manifest();
  ctx.seeds = ctx.fixtures.seeds();
  ctx.samples = opts.samples.value_or(ctx.seeds.value("samples", 100));
  if (ctx.samples < 1) throw std::invalid_argument("samples must be positive");
  if (ctx.bound < 0) throw std::invalid_argument("bound must be non-negative");

  std::vector<SuiteCheck> selected;
  for (auto& c : suite_registry())
    if (suite_selects(c, opts.filter)) selected.push_back(std::move(c));
  if (selected.empty()) throw std::invalid_argument("filter '" + opts.filter + "' selects no checks");

  std::vector<Json> results(selected.size());
  std::vector<double> seconds(selected.size(), 0.0);
  std::vector<std::exception_ptr> errors(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < selected.size();) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        results[i] = selected[i].run(ctx);
      } catch (const FixtureError&) {
        errors[i] = std::current_exception();
      } catch (const std::exception& e) {
        results[i] = {{"pass", false}, {"error", e.what()}};
      }
      seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(selected.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  Json modules = Json::object();
  Json records = Json::array();
  Json timings = Json::object();
  bool pass = true;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const bool ok = results[i].value("pass", false);
    pass = pass && ok;
    Json& m = modules[selected[i].module];
    if (m.is_null()) m = {{"passed", 0}, {"failed", 0}};
    m[ok ? "passed" : "failed"] = m[ok ? "passed" : "failed"].get<int>() + 1;
    records.push_back({{"module", selected[i].module}, {"name", selected[i].name}, {"pass", ok}, {"result", results[i]}});
    timings[selected[i].id()] = seconds[i];
  }
  Json seeds = Json::object();
  for (const auto& [key, value] : ctx.seeds.items())
    if (key != "samples") seeds[key] = ctx.seed(key);

  SuiteResult out;
  out.pass = pass;
  out.json["suite"] = "hessmap";
  out.json["version"] = kVersion;
  out.json["filter"] = opts.filter;
  out.json["pass"] = pass;
  out.json["seeds"] = std::move(seeds);
  out.json["samples"] = ctx.samples;
  out.json["bound"] = ctx.bound;
  out.json["fixtures"] = hashes;
  out.json["modules"] = std::move(modules);
  out.json["records"] = std::move(records);
  if (opts.timings) out.json["timings"] = std::move(timings);
  return out;
}

}  // namespace hessmap
