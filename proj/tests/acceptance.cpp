// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "apolar/apolarity.hpp"
#include "apolar/pipeline.hpp"
#include "apolar/planemodel.hpp"
#include "apolar/scroll.hpp"
#include "oracles.hpp"
#include "property_checks.hpp"

using namespace apolar;

namespace {

const Real kResidualTol(1e-10);

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) detail = what;
    ok = false;
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit_s) o.require(false, "time limit " + std::to_string(limit_s) + " s exceeded");
  if (!o.ok) ++failures;
  std::printf("[%s] %d %s (%.2f s, limit %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name, secs, limit_s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

Outcome fermat_structure() {
  Outcome o;
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto f = oracle::fermat(n);
    std::vector<Polynomial> mixed;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) mixed.push_back(Polynomial::variable(n, i) * Polynomial::variable(n, j));
    const auto i2 = apolar_ideal_piece(f, 2);
    o.require(i2.dim() == n * (n - 1) / 2, "degree-2 dimension for n=" + std::to_string(n));
    o.require(i2 == GradedIdealPiece::span(n, 2, mixed), "degree-2 piece is not spanned by mixed products");
    const auto i3 = apolar_ideal_piece(f, 3);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        o.require(i3.contains(Polynomial::monomial(Monomial::variable(n, i, 3)) -
                              Polynomial::monomial(Monomial::variable(n, j, 3))),
                  "difference of cubes missing for n=" + std::to_string(n));
  }
  return o;
}

Outcome macaulay_round_trip() {
  Outcome o;
  for (int t = 0; t < 50; ++t) {
    Rng rng(Rng::derive(77, static_cast<std::uint64_t>(t)));
    const auto n = static_cast<std::size_t>(rng.uniform(2, 6));
    const auto f = oracle::random_form(n, 3, rng, 9);
    std::vector<GradedIdealPiece> pieces;
    for (int k = 1; k <= 3; ++k) pieces.push_back(apolar_ideal_piece(f, k));
    o.require(macaulay_inverse(pieces, 3) == f.normalized(), "round trip differs for cubic " + std::to_string(t));
  }
  return o;
}

Outcome trigonal() {
  Outcome o;
  PipelineConfig cfg;
  for (int g = 5; g <= 7; ++g) {
    const auto r = verify_trigonal(g, 5, Rng::derive(1, static_cast<std::uint64_t>(g)), cfg);
    const long m = g - 2;
    for (const auto& t : r.trials) {
      const std::string at = "g=" + std::to_string(g) + " seed " + std::to_string(t.seed);
      o.require(t.passed, at + ": " + t.error);
      o.require(t.hilbert == std::vector<long>{1, m, m, 1}, at + ": Hilbert function");
      o.require(t.fermat && static_cast<long>(t.fermat->rank()) == m && t.fermat->residual <= kResidualTol,
                at + ": Fermat forms");
      o.require(t.gamma_fit && static_cast<long>(t.gamma_fit->rank()) == m && t.gamma_fit->residual <= kResidualTol,
                at + ": gamma fit");
    }
  }
  return o;
}

Outcome tetragonal() {
  Outcome o;
  PipelineConfig cfg;
  std::ostringstream intervals;
  for (int g = 6; g <= 8; ++g) {
    const int bound = tetragonal_rank_bound(g);
    for (const auto& split : default_splits(g)) {
      const auto r = verify_tetragonal(g, {split}, 5, Rng::derive(2, static_cast<std::uint64_t>(g)), cfg);
      long lo = 1 << 30, hi = 0;
      for (const auto& t : r.trials) {
        const std::string at = "g=" + std::to_string(g) + " split (" + std::to_string(split[0]) + "," +
                               std::to_string(split[1]) + ") seed " + std::to_string(t.seed);
        o.require(t.passed, at + ": " + t.error);
        o.require(t.length <= bound, at + ": length above bound");
        o.require(!t.fermat, at + ": cubic detected as Fermat");
        o.require(t.residual <= kResidualTol, at + ": residual");
        if (g == 7) o.require(t.length == (split[0] == 0 ? 6 : 7), at + ": length " + std::to_string(t.length));
        lo = std::min(lo, static_cast<long>(t.lower_bound));
        hi = std::max(hi, t.length);
      }
      intervals << " g=" << g << "(" << split[0] << "," << split[1] << "):[" << lo << "," << hi << "]";
    }
  }
  std::printf("    rank intervals [catalecticant bound, constructed length]:%s\n", intervals.str().c_str());
  return o;
}

Outcome chow_identities() {
  Outcome o;
  Rng rng(5);
  const auto H = hyperplane_class();
  for (int t = 0; t < 20; ++t) {
    const auto k = static_cast<std::size_t>(rng.uniform(2, 4));
    std::vector<int> type(k);
    for (auto& a : type) a = static_cast<int>(rng.uniform(1, 6));
    const Scroll s(type);
    long sum = 0;
    for (int a : type) sum += a;
    o.require(sum == s.N() - s.k() + 1, "sum of type differs from N - k + 1");
    o.require(chow_product(s, std::vector<DivisorClass>(static_cast<std::size_t>(s.k()), H)) == sum, "H^k != degree");
  }
  for (int g = 5; g <= 12; ++g) {
    const Scroll s = balanced_threefold_scroll(g);
    long sum = 0;
    for (int a : s.type()) sum += a;
    o.require(sum == s.N() - s.k() + 1, "threefold scroll degree for g=" + std::to_string(g));
    for (int b1 = 0; b1 <= g - 5; ++b1) {
      const int b2 = g - 5 - b1;
      const DivisorClass y1{2, -b1}, y2{2, -b2};
      o.require(chow_product(s, {y1, y2, H}) == 2 * g - 2, "curve degree for g=" + std::to_string(g));
      o.require(divisor_degree(s, y1) == 2 * g - 6 - b1, "surface degree for g=" + std::to_string(g));
    }
  }
  return o;
}

Outcome numerology() {
  Outcome o;
  const auto n7 = tetragonal_numerology(7);
  o.require(!n7.branches.empty(), "no branch for g=7");
  if (!n7.branches.empty()) {
    const auto& b = n7.branches[0];
    o.require(b.multiplicities == std::vector<long>{3, 3, 2, 2}, "g=7 multiplicities");
    o.require(b.sum_m_m_minus_1 == 16 && b.sum_m_minus_1 == 6 && b.deg_s == 6, "g=7 sums and deg S");
  }
  for (long k = 2; k <= 8; ++k) {
    const std::string ks = " k=" + std::to_string(k);
    const auto n0 = tetragonal_numerology(static_cast<int>(3 * k));
    o.require(!n0.branches.empty() && n0.branches[0].multiplicities == std::vector<long>(4, k) &&
                  n0.branches[0].deg_s == 4 * k - 3,
              "g=3k" + ks);
    const auto n1 = tetragonal_numerology(static_cast<int>(3 * k + 1));
    o.require(n1.branches.size() == 1 && n1.branches[0].multiplicities == std::vector<long>{k + 1, k + 1, k, k} &&
                  n1.branches[0].deg_s == 4 * k - 2,
              "g=3k+1" + ks);
    const auto n2 = tetragonal_numerology(static_cast<int>(3 * k + 2));
    o.require(n2.branches.size() == 2 &&
                  n2.branches[0].multiplicities == std::vector<long>{k + 1, k + 1, k + 1, k + 1, 2} &&
                  n2.branches[0].deg_s == 4 * k &&
                  n2.branches[1].multiplicities == std::vector<long>{k + 2, k + 1, k + 1, k} &&
                  n2.branches[1].deg_s == 4 * k - 1,
              "g=3k+2" + ks);
    for (const auto* n : {&n0, &n1, &n2})
      for (const auto& b : n->branches) o.require(3 * b.deg_s <= n->bound_numerator, "deg S above bound" + ks);
  }
  for (int k = 2; k <= 20; ++k)
    o.require(higher_gonality_degree(4, k, 0).deg_s == 4 * k - 3, "n=4 reduction at k=" + std::to_string(k));
  return o;
}

Outcome nakai() {
  Outcome o;
  for (int k = 2; k <= 20; ++k) {
    const BlowupClass l{2L * k - 1, std::vector<long>(4, -(k - 1L))}, c{2L * k + 2, std::vector<long>(4, -static_cast<long>(k))};
    o.require(blowup_intersect(l, l) == 4 * k - 3, "L^2 at k=" + std::to_string(k));
    o.require(blowup_intersect(c, c) == 8 * k + 4, "C^2 at k=" + std::to_string(k));
  }
  for (int k = 2; k <= 8; ++k) {
    const auto cert = nakai_certificate(k, 50);
    o.require(cert.l_squared == 4 * k - 3 && cert.c_squared == 8 * k + 4, "certificate squares at k=" + std::to_string(k));
    o.require(cert.l_violations.empty() && cert.c_violations.empty(), "violating class at k=" + std::to_string(k));
    o.require(cert.holds(), "certificate does not hold at k=" + std::to_string(k));
  }
  return o;
}

Outcome properties() {
  Outcome o;
  constexpr int kInstances = 20;
  const std::vector<std::pair<const char*, std::function<props::Failures(int)>>> suites{
      {"contraction bilinear", props::contraction_bilinear},
      {"contraction composes", props::contraction_composes},
      {"pairing perfect", props::pairing_perfect},
      {"catalecticant symmetric", props::catalecticant_symmetric},
      {"Fermat detection coordinate invariant", props::fermat_coordinate_invariant},
      {"curve points exact", props::curve_points_exact}};
  for (const auto& [name, run] : suites) {
    const auto f = run(kInstances);
    o.require(f.empty(), std::string(name) + ": " + (f.empty() ? "" : f.front()));
  }
  return o;
}

}  // namespace

int main() {
  criterion(1, "Fermat apolar ideal pieces, n = 3..5", 1, fermat_structure);
  criterion(2, "Macaulay inverse round trip, 50 cubics", 10, macaulay_round_trip);
  criterion(3, "trigonal g = 5..7: Hilbert, Fermat forms, gamma fit", 120, trigonal);
  criterion(4, "tetragonal g = 6..8: length bounds, g = 7 splits", 300, tetragonal);
  criterion(5, "scroll Chow ring identities", 1, chow_identities);
  criterion(6, "plane model numerology", 1, numerology);
  criterion(7, "Nakai positivity certificates", 30, nakai);
  criterion(8, "property suites, 20 instances each", 120, properties);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
