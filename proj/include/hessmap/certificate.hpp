#pragma once

/// End-to-end record of the computable preconditions of the birationality
/// criterion for plane curves of degree d: the Diophantine condition at the
/// branch's special point, injectivity of the differential there, and the
/// graph-exclusion gate licensed by the limit divisibility.

#include <hessmap/closed_orbits.hpp>
#include <hessmap/curves.hpp>
#include <hessmap/differential_rank.hpp>
#include <hessmap/diophantine.hpp>
#include <hessmap/indeterminacy.hpp>
#include <hessmap/serialize.hpp>

#include <gmp.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hessmap {

inline constexpr const char* kVersion = "1.0.0";

inline Json version_info() {
  Json v;
  v["hessmap"] = kVersion;
  v["gmp"] = gmp_version;
  v["json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
              std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  return v;
}

enum class Branch { EvenA, EvenB, Odd };

inline std::string to_string(Branch b) {
  switch (b) {
    case Branch::EvenA: return "evenA-via-2.9";
    case Branch::EvenB: return "evenB-via-2.18";
    case Branch::Odd: return "odd-via-2.17";
  }
  throw std::logic_error("bad branch");
}

/// Even d = 2k: EvenA at q^k while k <= 6, EvenB at q^(k-1) l^2 from k = 7;
/// odd d = 2k + 1: Odd at q^k l.
inline Branch select_branch(int d) {
  if (d < 4) throw std::invalid_argument("certificate needs d >= 4");
  if (d % 2 == 1) return Branch::Odd;
  return d / 2 <= 6 ? Branch::EvenA : Branch::EvenB;
}

inline ConditionTag branch_condition(Branch b) {
  switch (b) {
    case Branch::EvenA: return ConditionTag::EvenA;
    case Branch::EvenB: return ConditionTag::EvenB;
    case Branch::Odd: return ConditionTag::Odd;
  }
  throw std::logic_error("bad branch");
}

inline SpecialPoint branch_point(Branch b, int k) {
  switch (b) {
    case Branch::EvenA: return SpecialPoint::qk(2, k);
    case Branch::EvenB: return SpecialPoint::qk1l2(2, k);
    case Branch::Odd: return SpecialPoint::qkl(2, k);
  }
  throw std::logic_error("bad branch");
}

/// Gate clause of the exclusion corollary used by each branch.
inline int branch_clause(Branch b) {
  switch (b) {
    case Branch::EvenA: return 1;
    case Branch::EvenB: return 3;
    case Branch::Odd: return 2;
  }
  throw std::logic_error("bad branch");
}

struct Certificate {
  int d = 0;
  bool excluded = false;  // d = 5
  std::optional<Branch> branch;
  int k = 0;
  ScanReport scan;
  std::optional<ScanReport> evena_scan;  // EvenB branch: the condition it replaces
  RankReport rank;
  GateRecord gates;
  bool gate_ok = false;
  // For the Odd and EvenB branches the condition at this k is cross-checked
  // against the integral points of the matching curve.
  std::optional<bool> curve_consistent;
  std::vector<std::string> trusted;
  std::vector<std::string> notes;
  bool pass = false;
};

namespace detail {

/// Zeros (k, m) of the condition for 0 <= m <= k, read off the curve's
/// integral points with x = k, y = m.
inline std::vector<std::pair<long, long>> curve_zeros(int family, long k) {
  std::vector<std::pair<long, long>> out;
  for (const auto& [x, y] : omega(family))
    if (x == k && y >= 0 && y <= k) out.emplace_back(x, y);
  return out;
}

}  // namespace detail

inline Certificate certify_birationality_preconditions(int d) {
  if (d < 4) throw std::invalid_argument("certificate needs d >= 4");
  Certificate c;
  c.d = d;
  if (d == 5) {
    c.excluded = true;
    c.notes.push_back("degree 5 is excluded from the birationality statement; no certificate is issued");
    return c;
  }
  const Branch b = select_branch(d);
  c.branch = b;
  c.k = d / 2;
  const ConditionTag tag = branch_condition(b);
  c.scan = scan_condition(tag, 2, c.k, c.k);
  if (b == Branch::EvenB) c.evena_scan = scan_condition(ConditionTag::EvenA, 2, c.k, c.k);
  c.rank = verify_special_point_rank(branch_point(b, c.k));
  c.gates = corollary36_gate(d);
  const auto licensed = c.gates.licensed();
  c.gate_ok = c.gates.consistent &&
              std::find(licensed.begin(), licensed.end(), branch_clause(b)) != licensed.end();
  if (b != Branch::EvenA) {
    const int family = b == Branch::Odd ? 1 : 2;
    c.curve_consistent = c.scan.violations == detail::curve_zeros(family, c.k);
    c.trusted.push_back("integral points of W (family " + std::to_string(family) + ", curve " +
                        curve_label(family) + ") from an external S-integral point computation");
    c.trusted.push_back("completeness of the integral points of the plane curve for all k, beyond the scanned k");
  }
  if (b == Branch::Odd)
    c.notes.push_back("the criterion is stated for even degree; odd degrees follow the same proof and are certified here");
  c.pass = c.scan.clean() && c.rank.claim == "injective" && c.rank.pass && c.gate_ok &&
           c.curve_consistent.value_or(true);
  return c;
}

inline Json to_json(const Certificate& c) {
  Json out;
  out["d"] = c.d;
  if (c.excluded) {
    out["branch"] = "excluded";
    out["pass"] = false;
    out["excluded"] = true;
    out["scan"] = nullptr;
    out["rank"] = nullptr;
    out["gates"] = nullptr;
    out["trusted"] = Json::array();
    out["versions"] = version_info();
    out["notes"] = c.notes;
    return out;
  }
  out["branch"] = to_string(*c.branch);
  out["pass"] = c.pass;
  out["excluded"] = false;
  out["k"] = c.k;
  out["scan"] = to_json(c.scan);
  out["evenA_scan"] = c.evena_scan ? to_json(*c.evena_scan) : Json(nullptr);
  out["rank"] = to_json(c.rank);
  Json gates = to_json(c.gates);
  gates["required_clause"] = branch_clause(*c.branch);
  gates["ok"] = c.gate_ok;
  out["gates"] = std::move(gates);
  out["curve_consistent"] = c.curve_consistent ? Json(*c.curve_consistent) : Json(nullptr);
  out["trusted"] = c.trusted;
  out["versions"] = version_info();
  out["notes"] = c.notes;
  return out;
}

}  // namespace hessmap
