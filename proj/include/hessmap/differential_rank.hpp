#pragma once

/// The differential of the Hessian map as an exact matrix, and injectivity
/// of the induced map on projective tangent spaces.
///
/// Ranks: modular elimination with two primes above 2^30 gives a lower bound
/// for the rank over Q, so a modular rank equal to the column count already
/// certifies full column rank. Any other outcome falls back to Bareiss.

#include <hessmap/closed_orbits.hpp>
#include <hessmap/diophantine.hpp>
#include <hessmap/form.hpp>
#include <hessmap/harmonic.hpp>
#include <hessmap/hessian.hpp>
#include <hessmap/matrix.hpp>
#include <hessmap/serialize.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hessmap {

/// Matrix of g -> d/de Hess(f + e g) over the monomial bases of Sym^d and
/// Sym^((r+1)(d-2)), columns in canonical order.
inline RationalMatrix differential_matrix(const Form& f) {
  const Form hf = hess(f);
  if (hf.is_zero()) throw std::invalid_argument("differential matrix needs hess(f) != 0");
  const auto domain = monomial_basis(f.nvars(), f.degree());
  const auto target = monomial_basis(f.nvars(), hf.degree());
  const FormMatrix cof = hessian_cofactors(f);
  RationalMatrix m(target.size(), domain.size());
  for (std::size_t c = 0; c < domain.size(); ++c)
    m.set_column(c, coordinates(hess_direction(cof, Form::monomial(domain[c])), target));
  return m;
}

struct RankComputation {
  std::size_t rank = 0;
  std::string method;                  // "modular" or "bareiss"
  std::vector<std::uint64_t> primes;   // primes tried
  std::vector<std::uint64_t> disagreeing;  // primes whose rank differed from the exact one
};

/// Exact rank; see the header comment for when the modular path is trusted.
inline RankComputation certified_rank(const RationalMatrix& m, std::size_t prime_count = 2) {
  RankComputation out;
  out.primes = probe_primes(prime_count);
  std::vector<std::optional<std::size_t>> mod;
  bool full = !out.primes.empty();
  for (auto p : out.primes) {
    mod.push_back(rank_mod_p(m, p));
    if (!mod.back() || *mod.back() != m.cols()) full = false;
  }
  if (full) {
    out.rank = m.cols();
    out.method = "modular";
    return out;
  }
  out.rank = rank_bareiss(m);
  out.method = "bareiss";
  for (std::size_t i = 0; i < mod.size(); ++i)
    if (mod[i] && *mod[i] != out.rank) out.disagreeing.push_back(out.primes[i]);
  return out;
}

namespace detail {

/// Index of the largest-|coefficient| monomial of f in the basis (first in
/// canonical order on ties).
inline std::size_t dominant_monomial(const Form& f, const std::vector<Exponent>& basis) {
  std::size_t best = 0;
  Rational best_abs = -1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Rational a = abs(f.coefficient(basis[i]));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

struct PreconditionResult {
  ConditionTag condition = ConditionTag::EvenA;
  long k = 0;
  bool holds = true;
  std::vector<long> violating_m;
};

inline Json to_json(const PreconditionResult& p) {
  Json out;
  out["condition"] = to_string(p.condition);
  out["k"] = p.k;
  out["holds"] = p.holds;
  out["violating_m"] = p.violating_m;
  return out;
}

struct RankReport {
  std::string point;
  int d = 0, r = 0;
  std::size_t domain_dim = 0;  // dim Sym^d - 1
  std::size_t rank = 0;        // rank of the induced projective map
  bool injective = false;
  std::optional<PreconditionResult> precondition;
  std::string claim;   // "injective", "not-injective", "no-claim" or "none"
  bool pass = true;    // the computed verdict agrees with the claim
  std::string method;  // how the rank was certified
};

inline Json to_json(const RankReport& r) {
  Json out;
  out["point"] = r.point;
  out["d"] = r.d;
  out["r"] = r.r;
  out["domain_dim"] = r.domain_dim;
  out["rank"] = r.rank;
  out["injective"] = r.injective;
  out["precondition"] = r.precondition ? to_json(*r.precondition) : Json(nullptr);
  out["claim"] = r.claim;
  out["pass"] = r.pass;
  out["method"] = r.method;
  return out;
}

/// Rank of the induced map Sym^d/<f> -> Sym^T/<hess f>, computed as
/// rank [M restricted to a complement of <f> | hess f] - 1 with the
/// complement spanned by all monomials but the dominant one of f.
inline RankReport projective_injectivity(const Form& f, std::string label = "form") {
  const Form hf = hess(f);
  const RationalMatrix m = differential_matrix(f);
  const auto domain = monomial_basis(f.nvars(), f.degree());
  const auto target = monomial_basis(f.nvars(), hf.degree());
  const std::size_t skip = detail::dominant_monomial(f, domain);
  RationalMatrix a(m.rows(), m.cols());
  for (std::size_t c = 0, k = 0; c < m.cols(); ++c) {
    if (c == skip) continue;
    for (std::size_t r = 0; r < m.rows(); ++r) a(r, k) = m(r, c);
    ++k;
  }
  a.set_column(m.cols() - 1, coordinates(hf, target));
  const RankComputation rc = certified_rank(a);
  RankReport out;
  out.point = std::move(label);
  out.d = f.degree();
  out.r = static_cast<int>(f.nvars()) - 1;
  out.domain_dim = domain.size() - 1;
  out.rank = rc.rank - 1;
  out.injective = out.rank == out.domain_dim;
  out.claim = "none";
  out.method = rc.method;
  return out;
}

/// The same rank with a random complement of <f>: n-1 random integer
/// vectors that together with f span Sym^d. Used to cross-check the
/// monomial complement; Bareiss only.
inline std::size_t projective_rank_random_complement(const Form& f, std::uint64_t seed) {
  const Form hf = hess(f);
  const RationalMatrix m = differential_matrix(f);
  const auto domain = monomial_basis(f.nvars(), f.degree());
  const auto target = monomial_basis(f.nvars(), hf.degree());
  const std::size_t n = domain.size();
  std::mt19937_64 rng(seed);
  RationalMatrix basis(n, n - 1);
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j + 1 < n; ++j) basis(i, j) = static_cast<long>(rng() % 19) - 9;
    RationalMatrix fcol(n, 1);
    fcol.set_column(0, coordinates(f, domain));
    if (rank_bareiss(basis.augmented(fcol)) == n) break;
  }
  RationalMatrix hcol(target.size(), 1);
  hcol.set_column(0, coordinates(hf, target));
  return rank_bareiss((m * basis).augmented(hcol)) - 1;
}

/// The condition guarding injectivity at a special point, if any.
inline std::optional<PreconditionResult> special_point_precondition(const SpecialPoint& p) {
  ConditionTag tag;
  switch (p.kind) {
    case PointKind::Qk: tag = ConditionTag::EvenA; break;
    case PointKind::QkL: tag = ConditionTag::Odd; break;
    case PointKind::Qk1L2: tag = ConditionTag::EvenB; break;
    default: return std::nullopt;
  }
  PreconditionResult out{tag, p.k, true, {}};
  const auto [lo, hi] = condition_range(tag, p.k);
  for (long m = lo; m <= hi; ++m)
    if (evaluate_condition(tag, p.r, p.k, m) == 0) out.violating_m.push_back(m);
  out.holds = out.violating_m.empty();
  return out;
}

/// Evaluates the precondition, then the exact rank. A failed precondition
/// means no claim is made and the report passes regardless of the rank.
inline RankReport verify_special_point_rank(const SpecialPoint& p) {
  p.validate();
  RankReport out = projective_injectivity(p.form(), p.label());
  out.precondition = special_point_precondition(p);
  if (!out.precondition) {
    out.claim = "none";
    out.pass = true;
  } else if (out.precondition->holds) {
    out.claim = "injective";
    out.pass = out.injective;
  } else if (p.kind == PointKind::QkL && p.k == 1) {
    // The rank at q l is known not to be maximal.
    out.claim = "not-injective";
    out.pass = !out.injective;
  } else {
    out.claim = "no-claim";
    out.pass = true;
  }
  return out;
}

struct BlockStructureLevel {
  int i = 0;
  bool single_slot = true;    // every H_2i direction lands in one harmonic slot
  bool power_direction = true;  // q^(k-i) l^(2i) -> scalar * q^(N-i) l^(2i)
  Rational scalar;            // that scalar
};

struct BlockStructureReport {
  int k = 0, r = 0;
  std::vector<BlockStructureLevel> levels;
  bool pass() const {
    for (const auto& l : levels)
      if (!l.single_slot || !l.power_direction) return false;
    return true;
  }
};

/// The differential at q^k maps q^(k-i) H_2i into the harmonic slot
/// q^((r+1)(k-1)-i) H_2i, for i = 1..k.
inline BlockStructureReport block_structure_check(int k, int r) {
  if (k < 2) throw std::invalid_argument("block structure check needs k >= 2");
  const QuadraticForm q = QuadraticForm::hyperbolic(static_cast<std::size_t>(r) + 1);
  const Form qk = q_l_power(r, k, 0);
  const FormMatrix cof = hessian_cofactors(qk);
  const int N = (r + 1) * (k - 1);
  BlockStructureReport out{k, r, {}};
  for (int i = 1; i <= k; ++i) {
    BlockStructureLevel level{i, true, true, 0};
    const Form qpow = q_l_power(r, k - i, 0);
    for (const Form& h : harmonic_basis(2 * i, q)) {
      const auto dec = harmonic_decompose(hess_direction(cof, qpow * h), q);
      for (std::size_t s = 0; s < dec.summands.size(); ++s)
        if (static_cast<int>(s) != N - i && !dec.summands[s].is_zero()) level.single_slot = false;
    }
    const Form image = hess_direction(cof, q_l_power(r, k - i, 2 * i));
    const Form target = q_l_power(r, N - i, 2 * i);
    level.scalar = designated_coefficient(image, N - i, 2 * i);
    level.power_direction = image == target * level.scalar && sgn(level.scalar) != 0;
    out.levels.push_back(level);
  }
  return out;
}

inline Json to_json(const BlockStructureReport& b) {
  Json levels = Json::array();
  for (const auto& l : b.levels) {
    Json j;
    j["i"] = l.i;
    j["single_slot"] = l.single_slot;
    j["power_direction"] = l.power_direction;
    j["scalar"] = to_string(l.scalar);
    levels.push_back(std::move(j));
  }
  Json out;
  out["k"] = b.k;
  out["r"] = b.r;
  out["pass"] = b.pass();
  out["levels"] = std::move(levels);
  return out;
}

/// h -> top harmonic summand of h l^k on H_i (q hyperbolic, l = x0).
inline RankReport pijk_injectivity(int i, int k, int r) {
  if (i < 0 || k < 0 || r < 1) throw std::invalid_argument("pijk needs i, k >= 0 and r >= 1");
  const QuadraticForm q = QuadraticForm::hyperbolic(static_cast<std::size_t>(r) + 1);
  const auto source = harmonic_basis(i, q);
  const auto target = monomial_basis(q.nvars(), i + k);
  const Form lk = q_l_power(r, 0, k);
  RationalMatrix m(target.size(), source.size());
  for (std::size_t c = 0; c < source.size(); ++c)
    m.set_column(c, coordinates(harmonic_decompose(source[c] * lk, q).summands.front(), target));
  const RankComputation rc = certified_rank(m);
  RankReport out;
  out.point = "P_(" + std::to_string(i) + "," + std::to_string(i + k) + ")^" + std::to_string(k);
  out.d = i;
  out.r = r;
  out.domain_dim = source.size();
  out.rank = rc.rank;
  out.injective = out.rank == out.domain_dim;
  out.claim = "injective";
  out.pass = out.injective;
  out.method = rc.method;
  return out;
}

}  // namespace hessmap
