#pragma once

/// The two plane curves whose integral points decide the odd and even-B
/// conditions at r = 2, their Weierstrass models, and the birational maps
/// between them.
///
///   family 1: (2x+1) y^2 + (x+2) y - 3x(x+1) = 0
///   family 2: 2x y^2 + (3-3x) y - x(3x-1) = 0
///
/// Family 1 is first moved to the cubic C by (x, y) -> (x, y - x); the map
/// (x, y) -> (x, x + y) goes back.

#include <hessmap/rational.hpp>
#include <hessmap/serialize.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace hessmap {

using IntegerPoint = std::pair<long, long>;

inline void check_family(int family) {
  if (family != 1 && family != 2) throw std::invalid_argument("curve family must be 1 or 2");
}

/// Coefficients (a, b, c) of the curve as a quadratic a y^2 + b y + c in y.
inline std::array<Integer, 3> plane_curve_coefficients(int family, const Integer& x) {
  check_family(family);
  if (family == 1) return {2 * x + 1, x + 2, -3 * x * (x + 1)};
  return {2 * x, 3 - 3 * x, -x * (3 * x - 1)};
}

inline Integer plane_curve_value(int family, const Integer& x, const Integer& y) {
  const auto [a, b, c] = plane_curve_coefficients(family, x);
  return a * y * y + b * y + c;
}

inline Rational plane_curve_value(int family, const Rational& x, const Rational& y) {
  check_family(family);
  if (family == 1) return (2 * x + 1) * y * y + (x + 2) * y - 3 * x * (x + 1);
  return 2 * x * y * y + (3 - 3 * x) * y - x * (3 * x - 1);
}

/// The integral points with |x| <= bound, sorted. For each x the quadratic in
/// y is solved exactly (integer square root of the discriminant). The
/// x-range is split across `jobs` threads and merged in order.
inline std::vector<IntegerPoint> brute_force_integral_points(int family, long bound, unsigned jobs = 1) {
  check_family(family);
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  jobs = std::max(1u, jobs);
  auto worker = [family](long lo, long hi, std::vector<IntegerPoint>& out) {
    Integer s, rem, disc, num;
    for (long xv = lo; xv <= hi; ++xv) {
      const Integer x(xv);
      const auto [a, b, c] = plane_curve_coefficients(family, x);
      auto push = [&](const Integer& y) {
        if (y.fits_slong_p()) out.emplace_back(xv, y.get_si());
      };
      if (a == 0) {
        if (b == 0) continue;  // the curves never degenerate further
        if (c % b == 0) push(-c / b);
        continue;
      }
      disc = b * b - 4 * a * c;
      if (disc < 0) continue;
      mpz_sqrtrem(s.get_mpz_t(), rem.get_mpz_t(), disc.get_mpz_t());
      if (rem != 0) continue;
      const Integer two_a = 2 * a;
      std::vector<Integer> ys;
      for (int sign : {-1, 1}) {
        num = -b + sign * s;
        if (num % two_a == 0) ys.push_back(num / two_a);
      }
      std::sort(ys.begin(), ys.end());
      ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
      for (const auto& y : ys) push(y);
    }
  };
  const long total = 2 * bound + 1;
  std::vector<std::vector<IntegerPoint>> parts(jobs);
  std::vector<std::thread> threads;
  for (unsigned j = 0; j < jobs; ++j) {
    const long lo = -bound + total * j / jobs;
    const long hi = -bound + total * (j + 1) / jobs - 1;
    if (jobs == 1) {
      worker(lo, hi, parts[j]);
    } else {
      threads.emplace_back(worker, lo, hi, std::ref(parts[j]));
    }
  }
  for (auto& t : threads) t.join();
  std::vector<IntegerPoint> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// The stated sets of integral points of the two curves, sorted.
inline std::vector<IntegerPoint> omega(int family) {
  check_family(family);
  std::vector<IntegerPoint> out = family == 1
      ? std::vector<IntegerPoint>{{0, 0}, {-1, 1}, {1, -2}, {1, 1}, {-1, 0}, {0, -2}}
      : std::vector<IntegerPoint>{{1, -1}, {9, -3}, {2, 2}, {1, 1}, {0, 0}, {-1, 2}, {-1, 1}};
  std::sort(out.begin(), out.end());
  return out;
}

/// y^2 z = x^3 + a2 x^2 z + a4 x z^2 + a6 z^3.
struct WeierstrassCurve {
  Rational a2, a4, a6;

  Rational discriminant() const {
    const Rational b2 = 4 * a2, b4 = 2 * a4, b6 = 4 * a6, b8 = 4 * a2 * a6 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  }
};

/// W for family 1 or 2, and its integral model X.
inline WeierstrassCurve weierstrass_model(int family) {
  check_family(family);
  if (family == 1) return {rational(-35, 16), rational(21, 16), rational(9, 64)};
  return {rational(1, 4), Rational(-27), Rational(81)};
}

inline WeierstrassCurve integral_model(int family) {
  check_family(family);
  if (family == 1) return {Rational(-8960), Rational(22020096), Rational(9663676416L)};
  return {Rational(4), Rational(-6912), Rational(331776)};
}

/// The provenance labels of the two elliptic curves.
inline std::string curve_label(int family) {
  check_family(family);
  return family == 1 ? "366.b1" : "1002.e1";
}

class ProjPoint {
 public:
  ProjPoint(Rational x, Rational y, Rational z = 1) : c_{std::move(x), std::move(y), std::move(z)} {
    if (sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0) throw std::invalid_argument("(0:0:0) is not a point");
    // Scale so the last nonzero coordinate is 1.
    for (int i = 2; i >= 0; --i)
      if (sgn(c_[i]) != 0) {
        const Rational s = c_[i];
        for (auto& v : c_) v /= s;
        break;
      }
  }
  const Rational& x() const { return c_[0]; }
  const Rational& y() const { return c_[1]; }
  const Rational& z() const { return c_[2]; }
  bool affine() const { return sgn(c_[2]) != 0; }
  bool operator==(const ProjPoint&) const = default;
  auto operator<=>(const ProjPoint& o) const {
    for (int i = 0; i < 3; ++i)
      if (c_[i] != o.c_[i]) return c_[i] < o.c_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  std::string to_string() const {
    return "(" + hessmap::to_string(c_[0]) + " : " + hessmap::to_string(c_[1]) + " : " + hessmap::to_string(c_[2]) + ")";
  }

 private:
  std::array<Rational, 3> c_;
};

inline Json to_json(const ProjPoint& p) {
  return Json::array({to_string(p.x()), to_string(p.y()), to_string(p.z())});
}

inline bool on_curve(const ProjPoint& p, const WeierstrassCurve& w) {
  const Rational &x = p.x(), &y = p.y(), &z = p.z();
  return y * y * z == x * x * x + w.a2 * x * x * z + w.a4 * x * z * z + w.a6 * z * z * z;
}

/// The cubic C of family 1 (after the shift) or the curve itself for family 2,
/// homogenized.
inline Rational cubic_value(int family, const ProjPoint& p) {
  check_family(family);
  const Rational &x = p.x(), &y = p.y(), &z = p.z();
  if (family == 1)
    return 2 * x * x * x + 4 * x * x * y + 2 * x * y * y - x * x * z + 3 * x * y * z + y * y * z - x * z * z +
           2 * y * z * z;
  return 2 * x * y * y + (3 * z - 3 * x) * y * z - x * (3 * x - z) * z;
}

inline ProjPoint shift_to_cubic(const IntegerPoint& p) { return ProjPoint(p.first, p.second - p.first); }
inline IntegerPoint shift_from_cubic(const IntegerPoint& p) { return {p.first, p.first + p.second}; }

/// C -> W. nullopt where the displayed formula vanishes identically.
inline std::optional<ProjPoint> rho1(const ProjPoint& p, int family) {
  check_family(family);
  const Rational &x = p.x(), &y = p.y(), &z = p.z();
  Rational u, v, w;
  if (family == 1) {
    u = 6 * x * y;
    v = 3 * x * x - rational(9, 2) * x * y - 3 * y * y + rational(3, 2) * x * z - 6 * y * z;
    w = -8 * x * x - 4 * x * z;
  } else {
    u = 6 * y * z;
    v = 12 * y * y - 9 * x * z - 9 * y * z;
    w = -x * z;
  }
  if (sgn(u) == 0 && sgn(v) == 0 && sgn(w) == 0) return std::nullopt;
  return ProjPoint(u, v, w);
}

/// W -> X on the affine chart.
inline ProjPoint rho2(const ProjPoint& p, int family) {
  check_family(family);
  if (!p.affine()) throw std::invalid_argument("rho2 is defined on the affine chart only");
  if (family == 1) return ProjPoint(p.x() * 4096, p.y() * 262144);
  return ProjPoint(p.x() * 16, p.y() * 64);
}

/// The points of W listed as all {1/6}-integral points (family 1) or all
/// integral points (family 2). Trusted input, checked for membership only.
inline std::vector<ProjPoint> listed_weierstrass_points(int family) {
  check_family(family);
  std::vector<std::pair<Rational, Rational>> base;
  if (family == 1) {
    base = {{rational(-29, 324), rational(817, 11664)}, {Rational(0), rational(3, 8)},
            {rational(3, 16), rational(9, 16)},        {rational(3, 4), rational(9, 16)},
            {rational(5, 4), rational(9, 16)},         {rational(3, 2), rational(3, 4)},
            {rational(2145, 1024), rational(51633, 32768)}, {Rational(3), rational(27, 8)},
            {rational(21, 4), rational(153, 16)},      {Rational(27), rational(1077, 8)}};
  } else {
    base = {{-6, 6}, {0, 9}, {2, 6}, {6, 12}, {12, 39}, {54, 396}};
  }
  std::vector<ProjPoint> out;
  for (const auto& [a, b] : base) {
    out.emplace_back(a, b);
    out.emplace_back(a, -b);
  }
  return out;
}

/// Dense univariate polynomial with rational coefficients, lowest degree first.
struct UniPoly {
  std::vector<Rational> c;

  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Rational& lead() const { return c.back(); }

  Rational operator()(const Rational& x) const {
    Rational v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
  }
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> out(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < a.c.size(); ++i) out[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) out[i] += b.c[i];
    return UniPoly(std::move(out));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + b * Rational(-1); }
  friend UniPoly operator*(const UniPoly& a, const Rational& s) {
    std::vector<Rational> out = a.c;
    for (auto& v : out) v *= s;
    return UniPoly(std::move(out));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
    return UniPoly(std::move(out));
  }
};

/// Remainder of a by b (b nonzero).
inline UniPoly poly_mod(UniPoly a, const UniPoly& b) {
  while (!a.is_zero() && a.degree() >= b.degree()) {
    const Rational factor = a.lead() / b.lead();
    const int shift = a.degree() - b.degree();
    for (int i = 0; i <= b.degree(); ++i) a.c[static_cast<std::size_t>(i + shift)] -= factor * b.c[static_cast<std::size_t>(i)];
    a.trim();
  }
  return a;
}

inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Square root of a non-negative rational when it is a perfect square.
inline std::optional<Rational> rational_sqrt(const Rational& v) {
  if (sgn(v) < 0) return std::nullopt;
  Integer n, d, rn, rd;
  mpz_sqrtrem(n.get_mpz_t(), rn.get_mpz_t(), v.get_num_mpz_t());
  mpz_sqrtrem(d.get_mpz_t(), rd.get_mpz_t(), v.get_den_mpz_t());
  if (rn != 0 || rd != 0) return std::nullopt;
  Rational out(n, d);
  out.canonicalize();
  return out;
}

/// All rational roots, ascending, without multiplicity. Degrees up to 2 use
/// the closed formulas; higher degrees use the rational root theorem after
/// clearing denominators, so they are meant for small coefficients.
inline std::vector<Rational> rational_roots(UniPoly p) {
  std::vector<Rational> out;
  if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  while (p.degree() >= 1 && sgn(p.c[0]) == 0) {
    out.push_back(0);
    p.c.erase(p.c.begin());
  }
  if (p.degree() == 1) {
    out.push_back(-p.c[0] / p.c[1]);
  } else if (p.degree() == 2) {
    const Rational disc = p.c[1] * p.c[1] - 4 * p.c[2] * p.c[0];
    if (auto s = rational_sqrt(disc)) {
      out.push_back((-p.c[1] + *s) / (2 * p.c[2]));
      out.push_back((-p.c[1] - *s) / (2 * p.c[2]));
    }
  } else if (p.degree() > 2) {
    Integer lcm = 1;
    for (const auto& v : p.c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Integer> ints;
    for (const auto& v : p.c) ints.push_back(v.get_num() * (lcm / v.get_den()));
    auto divisors = [](Integer n) {
      std::vector<Integer> ds;
      n = abs(n);
      for (Integer i = 1; i * i <= n; ++i)
        if (n % i == 0) {
          ds.push_back(i);
          if (i * i != n) ds.push_back(n / i);
        }
      return ds;
    };
    for (const auto& num : divisors(ints.front()))
      for (const auto& den : divisors(ints.back()))
        for (int sign : {-1, 1}) {
          Rational cand(sign * num, den);
          cand.canonicalize();
          if (sgn(p(cand)) == 0) out.push_back(cand);
        }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct FiberCandidate {
  Rational x, y;
  bool rho1_defined = false;  // the displayed formula is defined here
  bool maps_to_w = false;     // and sends the point to w
  bool integral() const { return x.get_den() == 1 && y.get_den() == 1; }
};

/// Rational points (x, y) of the affine curve satisfying the relations that
/// invert rho1 at w = (a, b): family 1 uses y = -a(4x+2)/3 and
/// b(-8x^2-4x) = 3x^2 - 9/2 xy - 3y^2 + 3/2 x - 6y on C; family 2 uses
/// y = -a x/6 and b x = 9x + 9y - 12y^2 with x != 0.
inline std::vector<FiberCandidate> fiber_recover(const ProjPoint& w, int family) {
  check_family(family);
  if (!w.affine()) throw std::invalid_argument("fiber recovery needs a point in the affine chart");
  const Rational &a = w.x(), &b = w.y();
  const UniPoly X({Rational(0), Rational(1)});
  UniPoly y, relation, curve;
  if (family == 1) {
    y = UniPoly({-2 * a / 3, -4 * a / 3});
    const UniPoly D = UniPoly({Rational(0), Rational(-4), Rational(-8)});
    const UniPoly N = X * X * Rational(3) - X * y * rational(9, 2) - y * y * Rational(3) + X * rational(3, 2) -
                      y * Rational(6);
    relation = D * b - N;
    curve = X * X * X * Rational(2) + X * X * y * Rational(4) + X * y * y * Rational(2) - X * X + X * y * Rational(3) +
            y * y - X + y * Rational(2);
  } else {
    y = UniPoly({Rational(0), -a / 6});
    // b x - 9x - 9y + 12y^2, divided by x.
    const UniPoly full = X * b - X * Rational(9) - y * Rational(9) + y * y * Rational(12);
    relation = UniPoly(std::vector<Rational>(full.c.begin() + (full.is_zero() ? 0 : 1), full.c.end()));
    curve = X * y * y * Rational(2) + y * Rational(3) - X * y * Rational(3) - X * X * Rational(3) + X;
  }
  UniPoly common = relation.is_zero() ? curve : poly_gcd(relation, curve);
  std::vector<FiberCandidate> out;
  if (common.is_zero() || common.degree() < 1) return out;
  for (const Rational& x : rational_roots(common)) {
    if (family == 2 && sgn(x) == 0) continue;
    FiberCandidate fc{x, y(x)};
    const auto image = rho1(ProjPoint(fc.x, fc.y), family);
    fc.rho1_defined = image.has_value();
    fc.maps_to_w = image && *image == w;
    out.push_back(fc);
  }
  return out;
}

/// The integral fiber candidates over all listed points of W, as points of
/// the original plane curve (family 1 shifted back); (0,0) is added for
/// family 2 where it is excluded from the fibers.
inline std::vector<IntegerPoint> recovered_integral_points(int family) {
  std::set<IntegerPoint> pts;
  for (const auto& w : listed_weierstrass_points(family))
    for (const auto& fc : fiber_recover(w, family))
      if (fc.integral()) {
        IntegerPoint p{fc.x.get_num().get_si(), fc.y.get_num().get_si()};
        pts.insert(family == 1 ? shift_from_cubic(p) : p);
      }
  if (family == 2) pts.insert({0, 0});
  return {pts.begin(), pts.end()};
}

/// The integral candidates on C itself (before shifting back), family 1.
inline std::vector<IntegerPoint> cubic_integral_candidates() {
  std::set<IntegerPoint> pts;
  for (const auto& w : listed_weierstrass_points(1))
    for (const auto& fc : fiber_recover(w, 1))
      if (fc.integral()) pts.insert({fc.x.get_num().get_si(), fc.y.get_num().get_si()});
  return {pts.begin(), pts.end()};
}

inline Json to_json(const std::vector<IntegerPoint>& pts) {
  Json out = Json::array();
  for (const auto& [x, y] : pts) out.push_back({x, y});
  return out;
}

}  // namespace hessmap
