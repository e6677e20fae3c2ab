#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "apolar/errors.hpp"

namespace apolar {

/// Plane curve of degree d with ordinary singular points of the given multiplicities.
struct PlaneModel {
  long degree = 0;
  std::vector<long> multiplicities;
};

/// Class aH + sum b_i E_i on the blow-up of the plane in r points.
struct BlowupClass {
  long a = 0;
  std::vector<long> b;

  bool operator==(const BlowupClass&) const = default;
  BlowupClass operator+(const BlowupClass& o) const {
    if (b.size() != o.b.size()) throw InputError("blow-up classes over different point sets");
    BlowupClass r{a + o.a, b};
    for (std::size_t i = 0; i < b.size(); ++i) r.b[i] += o.b[i];
    return r;
  }
};

inline long choose2(long n) { return n * (n - 1) / 2; }

inline void check_model(const PlaneModel& m) {
  if (m.degree < 1) throw InputError("plane model degree must be positive");
  for (long v : m.multiplicities)
    if (v < 2) throw InputError("singular point multiplicities must be at least 2");
}

/// Geometric genus binom(d-1, 2) - sum m(m-1)/2. May be negative for an
/// impossible model; callers flag that.
inline long clebsch_genus(const PlaneModel& m) {
  check_model(m);
  long g = choose2(m.degree - 1);
  for (long v : m.multiplicities) g -= choose2(v);
  return g;
}

/// H^2 = 1, H.E_i = 0, E_i.E_j = -delta_ij.
inline long blowup_intersect(const BlowupClass& x, const BlowupClass& y) {
  if (x.b.size() != y.b.size()) throw InputError("blow-up classes over different point sets");
  long r = x.a * y.a;
  for (std::size_t i = 0; i < x.b.size(); ++i) r -= x.b[i] * y.b[i];
  return r;
}

inline BlowupClass blowup_canonical(std::size_t points) { return {-3, std::vector<long>(points, 1)}; }

/// Strict transform dH - sum m_i E_i.
inline BlowupClass curve_class(const PlaneModel& m) {
  BlowupClass c{m.degree, m.multiplicities};
  for (auto& v : c.b) v = -v;
  return c;
}

struct AdjunctionReport {
  BlowupClass curve;
  BlowupClass adjoint;         // C + K, the canonical system restricted to C
  long curve_dot_adjoint = 0;  // C.(C + K) = 2g - 2 of the model
  long sum_m_m_minus_1 = 0;    // from the model
  long required_sum = 0;       // d(d-3) - (2g-2) for the target genus
  bool consistent = false;
};

inline long required_multiplicity_sum(long d, long g) { return d * (d - 3) - (2 * g - 2); }

inline AdjunctionReport adjunction_check(const PlaneModel& m, long g) {
  check_model(m);
  AdjunctionReport r;
  r.curve = curve_class(m);
  r.adjoint = r.curve + blowup_canonical(m.multiplicities.size());
  r.curve_dot_adjoint = blowup_intersect(r.curve, r.adjoint);
  for (long v : m.multiplicities) r.sum_m_m_minus_1 += v * (v - 1);
  r.required_sum = required_multiplicity_sum(m.degree, g);
  r.consistent = r.sum_m_m_minus_1 == r.required_sum && r.curve_dot_adjoint == 2 * g - 2;
  return r;
}

/// One admissible multiplicity pattern for the plane model of a tetragonal curve.
struct NumerologyBranch {
  std::vector<long> multiplicities;  // the four base points of the conic pencil first
  long extra_points = 0;             // singular points beyond the four base points
  long sum_m_minus_1 = 0;
  long sum_m_m_minus_1 = 0;
  long deg_s = 0;                    // (C + K)^2 on the blow-up
};

struct TetragonalNumerology {
  int g = 0;
  int k = 0;
  int residue = 0;        // g mod 3
  long plane_degree = 0;  // 2k + 2 or 2k + 3
  long conic_sum = 0;     // sum of the pencil base multiplicities, 2d - 4
  long required_sum = 0;  // sum m(m-1) forced by adjunction
  long bound_numerator = 0;  // Waring bound for deg S is bound_numerator / 3
  std::vector<NumerologyBranch> branches;
};

namespace detail {

/// All nonincreasing tuples of `len` integers >= lo with the given sum.
inline void partitions(long sum, std::size_t len, long lo, long hi, std::vector<long>& cur,
                       const std::function<void(const std::vector<long>&)>& visit) {
  if (cur.size() == len) {
    if (sum == 0) visit(cur);
    return;
  }
  const auto left = static_cast<long>(len - cur.size());
  for (long v = std::min(hi, sum - lo * (left - 1)); v >= lo; --v) {
    if (v * left < sum) break;
    cur.push_back(v);
    partitions(sum - v, len, lo, v, cur, visit);
    cur.pop_back();
  }
}

/// Nonincreasing multisets of multiplicities >= 2 with sum m(m-1) = target.
inline void node_patterns(long target, long hi, std::vector<long>& cur,
                          const std::function<void(const std::vector<long>&)>& visit) {
  if (target == 0) {
    visit(cur);
    return;
  }
  for (long m = hi; m >= 2; --m) {
    if (m * (m - 1) > target) continue;
    cur.push_back(m);
    node_patterns(target - m * (m - 1), m, cur, visit);
    cur.pop_back();
  }
}

}  // namespace detail

/// Exhaustive search: the four base points of the conic pencil carry
/// multiplicities n_i with sum n_i = 2d - 4, and any remaining singular points
/// make up the adjunction total sum m(m-1) = d(d-3) - (2g-2).
inline TetragonalNumerology tetragonal_numerology(int g) {
  if (g < 6) throw InputError("tetragonal numerology needs g >= 6");
  TetragonalNumerology r;
  r.g = g;
  r.residue = g % 3;
  if (r.residue == 0) {
    r.k = g / 3;
    r.plane_degree = 2L * r.k + 2;
    r.bound_numerator = 4L * g - 9;
  } else if (r.residue == 2) {
    r.k = (g + 1) / 3;
    r.plane_degree = 2L * r.k + 2;
    r.bound_numerator = 4L * g - 5;
  } else {
    r.k = (g - 1) / 3;
    r.plane_degree = 2L * r.k + 3;
    r.bound_numerator = 4L * g - 10;
  }
  const long d = r.plane_degree;
  r.conic_sum = 2 * d - 4;
  r.required_sum = required_multiplicity_sum(d, g);

  std::vector<long> cur;
  detail::partitions(r.conic_sum, 4, 1, r.conic_sum, cur, [&](const std::vector<long>& n) {
    long base = 0;
    for (long v : n) base += v * (v - 1);
    if (base > r.required_sum) return;
    std::vector<long> extra;
    detail::node_patterns(r.required_sum - base, d - 1, extra, [&](const std::vector<long>& e) {
      NumerologyBranch b;
      b.multiplicities = n;
      b.multiplicities.insert(b.multiplicities.end(), e.begin(), e.end());
      b.extra_points = static_cast<long>(e.size());
      for (long v : b.multiplicities) {
        b.sum_m_minus_1 += v - 1;
        b.sum_m_m_minus_1 += v * (v - 1);
      }
      PlaneModel model{d, {}};
      for (long v : b.multiplicities)
        if (v >= 2) model.multiplicities.push_back(v);
      const auto adj = adjunction_check(model, g);
      b.deg_s = blowup_intersect(adj.adjoint, adj.adjoint);
      r.branches.push_back(std::move(b));
    });
  });
  // More singular points first, then lexicographically larger multiplicities.
  std::sort(r.branches.begin(), r.branches.end(), [](const NumerologyBranch& x, const NumerologyBranch& y) {
    if (x.extra_points != y.extra_points) return x.extra_points > y.extra_points;
    return x.multiplicities > y.multiplicities;
  });
  return r;
}

struct HigherGonalityDegree {
  int n = 0;
  int k = 0;
  long excess = 0;
  long g = 0;
  long deg_z_prime = 0;    // curve in P^(n-2) after projecting from k-1 fibers
  long plane_degree = 0;   // after projecting further from n-4 points
  long base_sum = 0;       // sum of multiplicities at the (n-2)^2 pencil base points
  long required_sum = 0;   // sum m(m-1) from adjunction
  long deg_s = 0;
  long canonical_bound = 0;  // 2g - 3
  bool exceeds = false;
};

/// Degree chain for an n-gonal curve of genus (n-1)k on a balanced scroll, with
/// all excess singular points summarized by sum_{i > (n-2)^2} (m_i - 1).
inline HigherGonalityDegree higher_gonality_degree(int n, int k, long excess) {
  if (n < 4 || k < 2 || excess < 0) throw InputError("need n >= 4, k >= 2, excess >= 0");
  HigherGonalityDegree r;
  r.n = n;
  r.k = k;
  r.excess = excess;
  r.g = static_cast<long>(n - 1) * k;
  r.deg_z_prime = 2 * r.g - 2 - static_cast<long>(k - 1) * n;
  r.plane_degree = r.deg_z_prime - (n - 4);
  const long base_points = static_cast<long>(n - 2) * (n - 2);
  // The pencil of degree-(n-2) rational curves meets Z in n moving points.
  r.base_sum = (n - 2) * r.plane_degree - n;
  r.required_sum = required_multiplicity_sum(r.plane_degree, r.g);
  const long sum_m_minus_1 = r.base_sum - base_points + excess;
  const long adj = r.plane_degree - 3;
  r.deg_s = adj * adj - (r.required_sum - sum_m_minus_1);
  r.canonical_bound = 2 * r.g - 3;
  r.exceeds = r.deg_s > r.canonical_bound;
  return r;
}

struct NakaiViolation {
  long a = 0;
  std::vector<long> b;
  long l_dot = 0;
  long c_dot = 0;
};

struct NakaiCertificate {
  int k = 0;
  long l_squared = 0;  // L = (2k-1)H - (k-1) sum E_i
  long c_squared = 0;  // C = (2k+2)H - k sum E_i
  long a_max = 0;
  long classes_checked = 0;
  std::vector<NakaiViolation> l_violations;  // irreducible D with L.D <= 0
  std::vector<NakaiViolation> c_violations;  // irreducible D with C.D <= 0
  long tail_margin = 0;                      // a - 2 at a = a_max + 1
  bool tail_holds = false;                   // closed-form argument for a > a_max

  bool holds() const {
    return l_squared > 0 && c_squared > 0 && l_violations.empty() && c_violations.empty() && tail_holds;
  }
};

/// Positivity of L and C on the blow-up of the plane in four points. The
/// exceptional curves give L.E = k - 1 and C.E = k. Every other irreducible curve
/// has class aH - sum b_i E_i with a > 0, 0 <= b_i <= a and nonnegative Clebsch
/// genus, sum binom(b_i, 2) <= binom(a - 1, 2). With no three of the points
/// collinear -K is ample, so also -K.D = 3a - sum b_i >= 1. All such classes with
/// a <= a_max are enumerated (b nonincreasing, by symmetry); the six lines
/// H - E_i - E_j are among them.
inline NakaiCertificate nakai_certificate(int k, long a_max = 50) {
  if (k < 2) throw InputError("nakai certificate needs k >= 2");
  if (a_max < 1) throw InputError("a_max must be positive");
  NakaiCertificate c;
  c.k = k;
  c.a_max = a_max;
  const long la = 2L * k - 1, lb = k - 1L, ca = 2L * k + 2, cb = k;
  const BlowupClass l{la, std::vector<long>(4, -lb)};
  const BlowupClass curve{ca, std::vector<long>(4, -cb)};
  c.l_squared = blowup_intersect(l, l);
  c.c_squared = blowup_intersect(curve, curve);

  for (long a = 1; a <= a_max; ++a) {
    const long room = choose2(a - 1);
    long b0, b1, b2, b3;
    for (b0 = 0; b0 <= a && choose2(b0) <= room; ++b0)
      for (b1 = 0; b1 <= b0 && choose2(b0) + choose2(b1) <= room; ++b1)
        for (b2 = 0; b2 <= b1 && choose2(b0) + choose2(b1) + choose2(b2) <= room; ++b2)
          for (b3 = 0; b3 <= b2 && choose2(b0) + choose2(b1) + choose2(b2) + choose2(b3) <= room; ++b3) {
            const long sum = b0 + b1 + b2 + b3;
            if (3 * a - sum < 1) continue;
            ++c.classes_checked;
            const long ld = la * a - lb * sum, cd = ca * a - cb * sum;
            if (ld <= 0) c.l_violations.push_back({a, {b0, b1, b2, b3}, ld, cd});
            if (cd <= 0) c.c_violations.push_back({a, {b0, b1, b2, b3}, ld, cd});
          }
  }
  // For a > a_max: L.D <= 0 forces s = sum b >= (2k-1)a/(k-1) > 2a (C likewise,
  // (2k+2)/k > 2). Then sum b(b-1) >= s^2/4 - s > a^2 - 2a, while the genus bound
  // allows at most (a-1)(a-2) = a^2 - 3a + 2. The gap a - 2 is positive for a >= 3.
  c.tail_margin = (a_max + 1) - 2;
  c.tail_holds = c.tail_margin > 0;
  return c;
}

}  // namespace apolar
