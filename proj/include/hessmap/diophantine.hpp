#pragma once

/// The three numerical conditions on (k, m) whose non-vanishing gives
/// injectivity of the differential at q^k, q^k l and q^(k-1) l^2.

#include <hessmap/rational.hpp>
#include <hessmap/serialize.hpp>

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hessmap {

enum class ConditionTag { EvenA, Odd, EvenB };

inline std::string to_string(ConditionTag t) {
  switch (t) {
    case ConditionTag::EvenA: return "evenA";
    case ConditionTag::Odd: return "odd";
    case ConditionTag::EvenB: return "evenB";
  }
  return "?";
}

inline ConditionTag parse_condition(std::string_view s) {
  if (s == "evenA") return ConditionTag::EvenA;
  if (s == "odd") return ConditionTag::Odd;
  if (s == "evenB") return ConditionTag::EvenB;
  throw std::invalid_argument("unknown condition '" + std::string(s) + "' (expected evenA, odd or evenB)");
}

/// Coefficients (a, b, c) of the condition as a quadratic a m^2 + b m + c.
inline std::array<Integer, 3> condition_coefficients(ConditionTag t, long r, long k) {
  switch (t) {
    case ConditionTag::EvenA: return {Integer(2), Integer(r - 1), Integer(-k * (r + 1))};
    case ConditionTag::Odd: return {Integer(2 * k + 1), Integer(r * k + r - k), Integer(-k * (k + 1) * (r + 1))};
    case ConditionTag::EvenB: return {Integer(2 * k), Integer(r * k + r - 5 * k + 1), Integer(-k * (k * (r + 1) + r - 3))};
  }
  throw std::logic_error("bad condition tag");
}

inline Integer evaluate_condition(ConditionTag t, long r, long k, long m) {
  const auto [a, b, c] = condition_coefficients(t, r, k);
  return a * m * m + b * m + c;
}

/// The m-range over which the condition is required: [1, k] for EvenA,
/// [0, k] otherwise.
inline std::pair<long, long> condition_range(ConditionTag t, long k) {
  return {t == ConditionTag::EvenA ? 1 : 0, k};
}

/// Integer roots of a m^2 + b m + c (a != 0), ascending.
inline std::vector<Integer> integer_roots_quadratic(const Integer& a, const Integer& b, const Integer& c) {
  std::vector<Integer> out;
  if (a == 0) {
    if (b == 0) return out;
    if (c % b == 0) out.push_back(-c / b);
    return out;
  }
  const Integer disc = b * b - 4 * a * c;
  if (disc < 0) return out;
  Integer s, rem;
  mpz_sqrtrem(s.get_mpz_t(), rem.get_mpz_t(), disc.get_mpz_t());
  if (rem != 0) return out;
  for (const Integer& num : {Integer(-b - s), Integer(-b + s)}) {
    if (num % (2 * a) != 0) continue;
    Integer root = num / (2 * a);
    if (std::find(out.begin(), out.end(), root) == out.end()) out.push_back(root);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ScanReport {
  ConditionTag condition = ConditionTag::EvenA;
  long r = 2;
  long kmin = 0;
  long kmax = 0;
  std::vector<std::pair<long, long>> violations;          // zeros with m in range
  std::vector<std::pair<long, long>> out_of_range_roots;  // informational only
  bool clean() const { return violations.empty(); }
};

/// Exhaustive evaluation over the required m-range for each k; integer
/// roots outside the range are listed separately and carry no claim.
inline ScanReport scan_condition(ConditionTag t, long r, long kmin, long kmax) {
  if (kmin > kmax) throw std::invalid_argument("scan range is empty");
  ScanReport out{t, r, kmin, kmax, {}, {}};
  for (long k = kmin; k <= kmax; ++k) {
    const auto [lo, hi] = condition_range(t, k);
    for (long m = lo; m <= hi; ++m)
      if (evaluate_condition(t, r, k, m) == 0) out.violations.emplace_back(k, m);
    const auto [a, b, c] = condition_coefficients(t, r, k);
    for (const Integer& root : integer_roots_quadratic(a, b, c)) {
      if (!root.fits_slong_p()) continue;
      const long m = root.get_si();
      if (m < lo || m > hi) out.out_of_range_roots.emplace_back(k, m);
    }
  }
  return out;
}

inline Json to_json(const ScanReport& s) {
  Json v = Json::array(), o = Json::array();
  for (const auto& [k, m] : s.violations) v.push_back({k, m});
  for (const auto& [k, m] : s.out_of_range_roots) o.push_back({k, m});
  Json out;
  out["condition"] = to_string(s.condition);
  out["r"] = s.r;
  out["kmin"] = s.kmin;
  out["kmax"] = s.kmax;
  out["clean"] = s.clean();
  out["violations"] = std::move(v);
  out["out_of_range_roots"] = std::move(o);
  return out;
}

}  // namespace hessmap
