#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "apolar/apolarity.hpp"
#include "apolar/bigfloat.hpp"
#include "apolar/curvegen.hpp"
#include "apolar/errors.hpp"
#include "apolar/exact_matrix.hpp"
#include "apolar/numeric.hpp"
#include "apolar/polynomial.hpp"
#include "apolar/rng.hpp"
#include "apolar/scroll.hpp"
#include "apolar/waring.hpp"

namespace apolar {

/// The cubic attached to a canonical curve and a pair of hyperplanes: the
/// Macaulay inverse of (I_C, eta1, eta2) in coordinates of the codimension-2
/// subspace L = {eta1 = eta2 = 0}. A point z of L has coordinates z[free[j]].
struct AlphaResult {
  int g = 0;
  RationalVector eta1, eta2;
  std::vector<long> hilbert;
  Polynomial cubic;
  ExactMatrix basis;               // g x (g-2); columns span L
  std::vector<std::size_t> free;   // coordinate indices used as coordinates on L
  GradedIdealPiece quotient2{1, 2};
  GradedIdealPiece quotient3{1, 3};
};

inline AlphaResult alpha_map(const IdealReconstruction& ideal, const RationalVector& eta1,
                             const RationalVector& eta2) {
  const auto g = static_cast<std::size_t>(ideal.genus);
  if (eta1.size() != g || eta2.size() != g) throw InputError("eta forms must have g coefficients");
  const ExactMatrix m = ExactMatrix::from_rows({eta1, eta2});
  const IncrementalEchelon ech = m.echelon();
  if (ech.rank() != 2) throw InputError("eta1 and eta2 are linearly dependent");

  AlphaResult r;
  r.g = ideal.genus;
  r.eta1 = eta1;
  r.eta2 = eta2;
  const auto& piv = ech.pivots();
  for (std::size_t j = 0; j < g; ++j)
    if (std::find(piv.begin(), piv.end(), j) == piv.end()) r.free.push_back(j);
  r.basis = ExactMatrix(g, g - 2);
  for (std::size_t c = 0; c < r.free.size(); ++c) {
    r.basis(r.free[c], c) = 1;
    for (std::size_t row = 0; row < piv.size(); ++row) r.basis(piv[row], c) = -ech.rows()[row][r.free[c]];
  }

  auto restrict = [&](const GradedIdealPiece& p) {
    std::vector<Polynomial> gens;
    for (const auto& d : p.basis()) gens.push_back(substitute_linear(d, r.basis));
    return GradedIdealPiece::span(g - 2, p.degree(), gens);
  };
  r.quotient2 = restrict(ideal.degree2);
  r.quotient3 = restrict(ideal.degree3);
  r.hilbert = {1, static_cast<long>(g - 2), static_cast<long>(r.quotient2.ambient_dim() - r.quotient2.dim()),
               static_cast<long>(r.quotient3.ambient_dim() - r.quotient3.dim())};
  const std::vector<long> expected{1, static_cast<long>(g - 2), static_cast<long>(g - 2), 1};
  if (r.hilbert != expected) throw SocleError("quotient Hilbert function is not (1, g-2, g-2, 1)", r.hilbert, {});
  const std::vector<GradedIdealPiece> pieces{GradedIdealPiece(g - 2, 1), r.quotient2, r.quotient3};
  r.cubic = macaulay_inverse(pieces, 3);
  return r;
}

/// Points of Gamma = V(I(Y), eta1, eta2) in the coordinates of L.
struct GammaScheme {
  std::vector<ComplexVector> points;
  std::optional<std::vector<RationalVector>> exact_points;
  long expected_length = 0;
  long found_length = 0;
  UniPoly univariate;  // its roots are the base values t of the points
  Real root_residual{0L};
};

namespace detail {

/// eta restricted to block i of the scroll coordinates: sum_j eta[off + j] t^j.
inline std::vector<UniPoly> block_forms(const Scroll& sc, const RationalVector& eta) {
  std::vector<UniPoly> out;
  std::size_t off = 0;
  for (int a : sc.type()) {
    std::vector<Rational> c(eta.begin() + static_cast<long>(off), eta.begin() + static_cast<long>(off + a + 1));
    out.emplace_back(std::move(c));
    off += static_cast<std::size_t>(a) + 1;
  }
  return out;
}

inline Complex evaluate(const UniPoly& p, const Complex& z) {
  Complex r(0L);
  for (std::size_t k = p.coeffs().size(); k-- > 0;) r = r * z + Complex(p.coeffs()[k]);
  return r;
}

}  // namespace detail

/// surface_index selects the surface through C: for trigonal curves only 0 (the
/// scroll itself); for tetragonal curves 0 or 1 (Y_1 or Y_2).
inline GammaScheme gamma_points(const CurveSpec& c, int surface_index, const AlphaResult& alpha,
                                const Real& tolerance) {
  const Scroll& sc = c.scroll;
  const auto l1 = detail::block_forms(sc, alpha.eta1);
  const auto l2 = detail::block_forms(sc, alpha.eta2);
  GammaScheme gs;
  std::vector<UniPoly> y;  // fiber coordinates along Gamma as functions of t
  if (c.gonality == 3) {
    if (surface_index != 0) throw InputError("a trigonal curve has one surface (index 0)");
    gs.expected_length = sc.degree();
    gs.univariate = l1[0] * l2[1] - l1[1] * l2[0];
    y = {l1[1], -l1[0]};
  } else {
    if (surface_index != 0 && surface_index != 1) throw InputError("surface index must be 0 or 1");
    const BihomogeneousForm& e = c.equations[static_cast<std::size_t>(surface_index)];
    gs.expected_length = divisor_degree(sc, e.cls);
    y = {l1[1] * l2[2] - l1[2] * l2[1], l1[2] * l2[0] - l1[0] * l2[2], l1[0] * l2[1] - l1[1] * l2[0]};
    for (const auto& [mono, b] : e.terms) {
      UniPoly term = b.affine();
      for (std::size_t i = 0; i < 3; ++i)
        for (unsigned k = 0; k < mono.exps[i]; ++k) term = term * y[i];
      gs.univariate = gs.univariate + term;
    }
  }
  if (gs.univariate.degree() != gs.expected_length)
    throw CertificateError("restricted equation has degree " + std::to_string(gs.univariate.degree()) +
                           ", expected " + std::to_string(gs.expected_length) + " (special hyperplanes)");
  const auto roots = polynomial_roots(gs.univariate);
  gs.root_residual = root_residual(gs.univariate, roots);
  if (gs.root_residual > tolerance) throw CertificateError("root residual " + gs.root_residual.to_string());

  bool all_exact = true;
  std::vector<RationalVector> exact;
  for (const auto& r : roots) {
    if (r.exact) {
      std::vector<Rational> fib;
      for (const auto& yi : y) fib.push_back(yi.evaluate(*r.exact));
      if (c.gonality == 3 && fib[0] == 0 && fib[1] == 0) fib = {l2[1].evaluate(*r.exact), -l2[0].evaluate(*r.exact)};
      const auto z = scroll_coordinates<Rational>(sc, Rational(1), *r.exact, fib);
      RationalVector w;
      for (auto f : alpha.free) w.push_back(z[f]);
      exact.push_back(w);
      gs.points.push_back(to_complex(w));
      continue;
    }
    all_exact = false;
    ComplexVector fib;
    for (const auto& yi : y) fib.push_back(detail::evaluate(yi, r.value));
    if (c.gonality == 3 && max_abs(fib).is_zero())
      fib = {detail::evaluate(l2[1], r.value), -detail::evaluate(l2[0], r.value)};
    const auto z = scroll_coordinates<Complex>(sc, Complex(1L), r.value, fib);
    ComplexVector w;
    for (auto f : alpha.free) w.push_back(z[f]);
    gs.points.push_back(std::move(w));
  }
  if (all_exact) gs.exact_points = std::move(exact);
  gs.found_length = static_cast<long>(gs.points.size());
  return gs;
}

/// Power-sum fit of the alpha cubic against the Gamma points.
inline Decomposition waring_certificate(const AlphaResult& alpha, const GammaScheme& gamma, const Real& tolerance) {
  if (gamma.found_length != gamma.expected_length)
    throw CertificateError("Gamma has " + std::to_string(gamma.found_length) + " points, expected " +
                           std::to_string(gamma.expected_length));
  if (gamma.exact_points) {
    auto d = power_sum_fit(*gamma.exact_points, alpha.cubic);
    if (!d) throw CertificateError("cubic is not in the span of the cubes of the Gamma points");
    return *d;
  }
  auto cert = is_apolar_scheme(gamma.points, alpha.cubic, tolerance);
  if (!cert.apolar) throw CertificateError("power-sum fit residual " + cert.residual.to_string() + " above tolerance");
  Decomposition d;
  d.forms = gamma.points;
  d.weights = cert.weights;
  d.residual = cert.residual;
  return d;
}

inline int tetragonal_rank_bound(int g) {
  if (g < 4) throw InputError("bound is stated for g >= 4");
  return (3 * g - 6) / 2;  // ceil((3g - 7) / 2)
}

/// 1 - |<u, v>| / (|u| |v|).
inline Real angle_gap(const ComplexVector& u, const ComplexVector& v) {
  Complex dot(0L);
  Real nu(0L), nv(0L);
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i].conj() * v[i];
    nu += u[i].norm();
    nv += v[i].norm();
  }
  return Real(1L) - abs(dot) / sqrt(nu * nv);
}

/// True when the two families of forms agree up to order and scaling.
inline bool same_forms(const std::vector<ComplexVector>& a, const std::vector<ComplexVector>& b, const Real& tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& u : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (!used[j] && angle_gap(u, b[j]) < tol) used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

struct PipelineConfig {
  long precision_bits = 128;
  Real tolerance{1e-10};
  unsigned threads = 0;  // 0: run trials serially on the calling thread
  int eta_retries = 5;
  std::size_t margin = 10;
};

/// Runs fn(i) for i < n on up to `threads` workers; results are stored by index.
template <class R>
std::vector<R> run_trials(std::size_t n, unsigned threads, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) out[i] = fn(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

inline RationalVector random_eta(std::size_t g, Rng& rng) {
  RationalVector v(g);
  for (auto& x : v) x = Rational(rng.uniform(-9, 9));
  return v;
}

struct SurfaceOutcome {
  int surface = 0;
  long expected_length = 0;
  bool fitted = false;
  std::optional<Decomposition> decomposition;
  std::string error;
};

/// Shared part of a trial: curve, exact ideal, and a successful alpha_map.
struct TrialContext {
  CurveSpec curve;
  IdealReconstruction ideal;
  std::optional<AlphaResult> alpha;
  int eta_attempts = 0;
  std::string eta_error;  // last failure message when every attempt failed
};

inline TrialContext prepare_trial(CurveSpec curve, std::uint64_t seed, const PipelineConfig& cfg,
                                  const std::function<bool(const CurveSpec&, const AlphaResult&)>& accept) {
  TrialContext ctx;
  ctx.curve = std::move(curve);
  const auto packets = sample_points(ctx.curve, default_sample_size(ctx.curve.genus, cfg.margin),
                                     Rng::derive(seed, 1));
  ctx.ideal = ideal_pieces(ctx.curve, packets, cfg.margin);
  Rng rng(Rng::derive(seed, 2));
  for (int a = 0; a < cfg.eta_retries; ++a) {
    ctx.eta_attempts = a + 1;
    const auto e1 = random_eta(static_cast<std::size_t>(ctx.curve.genus), rng);
    const auto e2 = random_eta(static_cast<std::size_t>(ctx.curve.genus), rng);
    try {
      AlphaResult r = alpha_map(ctx.ideal, e1, e2);
      if (accept(ctx.curve, r)) {
        ctx.alpha = std::move(r);
        return ctx;
      }
      ctx.eta_error = "hyperplanes meet a surface in a special position";
    } catch (const InputError& e) {
      ctx.eta_error = e.what();
    } catch (const CertificateError& e) {
      ctx.eta_error = e.what();
    }
  }
  return ctx;
}

/// True when gamma_points succeeds for every surface of the curve (the
/// hyperplanes are general enough for the restricted equations).
inline bool hyperplanes_general(const CurveSpec& c, const AlphaResult& a, const Real& tol) {
  const int surfaces = c.gonality == 3 ? 1 : 2;
  for (int s = 0; s < surfaces; ++s) {
    try {
      gamma_points(c, s, a, tol);
    } catch (const CertificateError&) {
      return false;
    }
  }
  return true;
}

struct TrigonalTrial {
  std::uint64_t seed = 0;
  bool passed = false;
  std::string error;
  int eta_attempts = 0;
  std::vector<long> hilbert;
  std::size_t lower_bound = 0;
  std::optional<Decomposition> fermat;
  std::optional<Decomposition> gamma_fit;
  bool forms_agree = false;
};

struct TrigonalReport {
  int g = 0;
  std::vector<TrigonalTrial> trials;
  bool passed() const {
    return std::all_of(trials.begin(), trials.end(), [](const TrigonalTrial& t) { return t.passed; });
  }
};

inline TrigonalTrial trigonal_trial(int g, std::uint64_t seed, const PipelineConfig& cfg) {
  PrecisionGuard prec(cfg.precision_bits);
  TrigonalTrial t;
  t.seed = seed;
  try {
    auto ctx = prepare_trial(trigonal_curve(g, Rng::derive(seed, 0)), seed, cfg,
                             [&](const CurveSpec& c, const AlphaResult& a) { return hyperplanes_general(c, a, cfg.tolerance); });
    t.eta_attempts = ctx.eta_attempts;
    if (!ctx.alpha) throw CertificateError("no general hyperplane pair found: " + ctx.eta_error);
    const AlphaResult& a = *ctx.alpha;
    t.hilbert = a.hilbert;
    t.lower_bound = rank_lower_bound(a.cubic);
    Rng frng(Rng::derive(seed, 3));
    auto fr = fermat_detect(a.cubic, frng, cfg.tolerance);
    if (!fr) throw CertificateError(std::string("cubic not recognized as Fermat: ") + to_string(fr.failure));
    t.fermat = fr.decomposition;
    const auto gamma = gamma_points(ctx.curve, 0, a, cfg.tolerance);
    t.gamma_fit = waring_certificate(a, gamma, cfg.tolerance);
    t.forms_agree = same_forms(t.fermat->forms, t.gamma_fit->forms, Real(1e-8));
    if (static_cast<int>(t.fermat->rank()) != g - 2) throw CertificateError("Fermat decomposition has wrong length");
    if (!t.forms_agree) throw CertificateError("Fermat forms and Gamma points disagree");
    t.passed = true;
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

inline TrigonalReport verify_trigonal(int g, std::size_t trials, std::uint64_t seed, const PipelineConfig& cfg = {}) {
  if (g < 5 || g > 8) throw InputError("trigonal check runs for 5 <= g <= 8");
  TrigonalReport rep;
  rep.g = g;
  rep.trials = run_trials<TrigonalTrial>(trials, cfg.threads, [&](std::size_t i) {
    return trigonal_trial(g, Rng::derive(seed, i), cfg);
  });
  return rep;
}

struct TetragonalTrial {
  std::uint64_t seed = 0;
  std::vector<int> split;
  bool passed = false;
  std::string error;
  int eta_attempts = 0;
  std::vector<long> hilbert;
  std::size_t lower_bound = 0;
  bool fermat = false;  // must stay false: tetragonal cubics are not Fermat
  std::vector<SurfaceOutcome> surfaces;
  long length = 0;      // shortest successful fit
  Real residual{0L};
};

struct TetragonalReport {
  int g = 0;
  int bound = 0;
  std::vector<TetragonalTrial> trials;
  bool passed() const {
    return std::all_of(trials.begin(), trials.end(), [](const TetragonalTrial& t) { return t.passed; });
  }
};

/// Default (b1, b2) splits: the balanced one, and for g = 7 also (0, 2).
inline std::vector<std::vector<int>> default_splits(int g) {
  std::vector<std::vector<int>> out{{(g - 5) / 2, (g - 4) / 2}};
  if (g == 7) out.push_back({0, 2});
  return out;
}

inline TetragonalTrial tetragonal_trial(int g, const std::vector<int>& split, std::uint64_t seed,
                                     const PipelineConfig& cfg) {
  PrecisionGuard prec(cfg.precision_bits);
  TetragonalTrial t;
  t.seed = seed;
  t.split = split;
  try {
    if (split.size() != 2) throw InputError("split needs two entries");
    auto ctx = prepare_trial(tetragonal_curve(g, split[0], split[1], Rng::derive(seed, 0)), seed, cfg,
                             [&](const CurveSpec& c, const AlphaResult& a) { return hyperplanes_general(c, a, cfg.tolerance); });
    t.eta_attempts = ctx.eta_attempts;
    if (!ctx.alpha) throw CertificateError("no general hyperplane pair found: " + ctx.eta_error);
    const AlphaResult& a = *ctx.alpha;
    t.hilbert = a.hilbert;
    t.lower_bound = rank_lower_bound(a.cubic);
    Rng frng(Rng::derive(seed, 3));
    t.fermat = static_cast<bool>(fermat_detect(a.cubic, frng, cfg.tolerance));
    for (int s = 0; s < 2; ++s) {
      SurfaceOutcome o;
      o.surface = s;
      o.expected_length = divisor_degree(ctx.curve.scroll, ctx.curve.classes[static_cast<std::size_t>(s)]);
      try {
        const auto gamma = gamma_points(ctx.curve, s, a, cfg.tolerance);
        o.decomposition = waring_certificate(a, gamma, cfg.tolerance);
        o.fitted = true;
      } catch (const CertificateError& e) {
        o.error = e.what();
      }
      t.surfaces.push_back(std::move(o));
    }
    const SurfaceOutcome* best = nullptr;
    for (const auto& o : t.surfaces)
      if (o.fitted && (!best || o.expected_length < best->expected_length)) best = &o;
    if (!best) throw CertificateError("no surface produced an apolar point set");
    t.length = best->expected_length;
    t.residual = best->decomposition->residual;
    if (t.length > tetragonal_rank_bound(g)) throw CertificateError("decomposition longer than the bound");
    if (t.fermat) throw CertificateError("tetragonal cubic was recognized as Fermat");
    t.passed = true;
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

inline TetragonalReport verify_tetragonal(int g, const std::vector<std::vector<int>>& splits, std::size_t trials,
                                       std::uint64_t seed, const PipelineConfig& cfg = {}) {
  if (g < 6 || g > 8) throw InputError("tetragonal check runs for 6 <= g <= 8");
  for (const auto& s : splits)
    if (s.size() != 2 || s[0] < 0 || s[1] < 0 || s[0] + s[1] != g - 5)
      throw InputError("split must satisfy b1, b2 >= 0 and b1 + b2 = g - 5");
  TetragonalReport rep;
  rep.g = g;
  rep.bound = tetragonal_rank_bound(g);
  const std::size_t n = splits.size() * trials;
  rep.trials = run_trials<TetragonalTrial>(n, cfg.threads, [&](std::size_t i) {
    return tetragonal_trial(g, splits[i / trials], Rng::derive(seed, i), cfg);
  });
  return rep;
}

}  // namespace apolar
