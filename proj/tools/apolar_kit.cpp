// apolar_kit: JSON-in/JSON-out front end for the apolar library.
//
// Exit codes: 0 success, 1 a checked assertion or certificate failed, 2 bad input.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apolar/apolarity.hpp"
#include "apolar/curvegen.hpp"
#include "apolar/pipeline.hpp"
#include "apolar/planemodel.hpp"
#include "apolar/scroll.hpp"
#include "apolar/waring.hpp"
#include "json_io.hpp"

namespace {

using apolar::io::Json;

struct Options {
  std::string in, out;
  std::uint64_t seed = 0;
  long precision_bits = 128;
  double tolerance = 1e-10;
  int g = 0;
  int gonality = 3;
  std::size_t trials = 5;
  std::vector<int> split;
  std::vector<int> type;
  std::vector<std::vector<long>> classes;
  std::string op = "info";
  int k = -1;
  int n = 4;
  long excess = 0;
  long a_max = 50;
};

struct Outcome {
  Json report;
  bool ok = true;
};

unsigned threads_from_env() {
  const char* v = std::getenv("APOLAR_KIT_THREADS");
  if (!v || !*v) return 0;
  try {
    const long t = std::stol(v);
    return t > 0 ? static_cast<unsigned>(t) : 0;
  } catch (const std::exception&) {
    throw apolar::InputError("APOLAR_KIT_THREADS must be a non-negative integer");
  }
}

apolar::PipelineConfig pipeline_config(const Options& o) {
  apolar::PipelineConfig cfg;
  cfg.precision_bits = o.precision_bits;
  cfg.tolerance = apolar::Real(o.tolerance);
  cfg.threads = threads_from_env();
  return cfg;
}

Json read_input(const Options& o) {
  if (o.in.empty()) throw apolar::InputError("--in FILE is required for this command");
  std::ifstream f(o.in);
  if (!f) throw apolar::InputError("cannot open " + o.in);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw apolar::InputError(std::string("malformed JSON input: ") + e.what());
  }
}

Json header(const char* command, const char* claim) { return Json{{"command", command}, {"claim", claim}}; }

std::string tolerance_string(double t) {
  std::ostringstream s;
  s << t;
  return s.str();
}

apolar::DivisorClass to_class(const std::vector<long>& v) {
  if (v.size() != 2) throw apolar::InputError("--class takes h,f");
  return {v[0], v[1]};
}

Outcome cmd_apolar(const Options& o) {
  const auto f = apolar::io::polynomial_from_json(read_input(o));
  Outcome r{header("apolar", "apolar ideal pieces and Hilbert function of the quotient")};
  r.report["form"] = apolar::io::polynomial_json(f);
  r.report["profile"] = apolar::io::profile_json(apolar::hilbert_function(f));
  Json pieces = Json::array();
  const int lo = o.k >= 0 ? o.k : 1;
  const int hi = o.k >= 0 ? o.k : static_cast<int>(f.degree());
  for (int k = lo; k <= hi; ++k) pieces.push_back(apolar::io::piece_json(apolar::apolar_ideal_piece(f, k)));
  r.report["pieces"] = pieces;
  return r;
}

// Input: {"nvars": n, "degree": d, "pieces": [piece, ...]}.
Outcome cmd_inverse(const Options& o) {
  const Json in = read_input(o);
  const long n = apolar::io::detail::integer(apolar::io::detail::field(in, "nvars"), "nvars");
  const long d = apolar::io::detail::integer(apolar::io::detail::field(in, "degree"), "degree");
  if (n < 1 || d < 0) throw apolar::InputError("nvars must be positive and degree non-negative");
  const Json& ps = apolar::io::detail::field(in, "pieces");
  if (!ps.is_array()) throw apolar::InputError("pieces must be an array");
  std::vector<apolar::GradedIdealPiece> pieces;
  for (const auto& p : ps) pieces.push_back(apolar::io::piece_from_json(p, static_cast<std::size_t>(n)));
  Outcome r{header("inverse", "Macaulay inverse system: the form annihilated by the given graded pieces")};
  try {
    r.report["form"] = apolar::io::polynomial_json(apolar::macaulay_inverse(pieces, static_cast<unsigned>(d)));
  } catch (const apolar::SocleError& e) {
    r.ok = false;
    r.report["error"] = e.what();
    r.report["hilbert"] = e.hilbert();
    r.report["socle"] = e.socle();
  }
  return r;
}

Outcome cmd_fermat(const Options& o) {
  const auto f = apolar::io::polynomial_from_json(read_input(o));
  apolar::PrecisionGuard prec(o.precision_bits);
  apolar::Rng rng(o.seed);
  const auto res = apolar::fermat_detect(f, rng, apolar::Real(o.tolerance));
  Outcome r{header("fermat", "a cubic in n variables is Fermat when it is a sum of n cubes of independent linear forms")};
  r.report["seed"] = o.seed;
  r.report["precision_bits"] = o.precision_bits;
  r.report["tolerance"] = tolerance_string(o.tolerance);
  r.report["lower_bound"] = apolar::rank_lower_bound(f);
  r.report["fermat"] = static_cast<bool>(res);
  r.report["attempts"] = res.attempts;
  if (res) {
    r.report["decomposition"] = apolar::io::decomposition_json(*res.decomposition);
  } else {
    r.report["failure"] = apolar::to_string(res.failure);
    if (res.failure == apolar::FermatFailure::residual) r.report["best_residual"] = res.best_residual.to_string();
  }
  return r;
}

Outcome cmd_scroll(const Options& o) {
  if (o.type.empty()) throw apolar::InputError("--type a1,...,ak is required");
  const apolar::Scroll sc(o.type);
  std::vector<apolar::DivisorClass> cls;
  for (const auto& c : o.classes) cls.push_back(to_class(c));
  Outcome r{header("scroll", "intersection numbers on a rational normal scroll")};
  r.report["scroll"] = apolar::io::scroll_json(sc);
  r.report["op"] = o.op;
  auto need = [&](std::size_t n) {
    if (cls.size() != n) throw apolar::InputError("--op " + o.op + " needs " + std::to_string(n) + " --class value(s)");
  };
  if (o.op == "info") {
    r.report["canonical"] = apolar::io::class_json(apolar::canonical_class(sc));
    r.report["quadrics"] = apolar::scroll_quadrics(sc).size();
  } else if (o.op == "degree") {
    need(1);
    r.report["class"] = apolar::io::class_json(cls[0]);
    r.report["value"] = apolar::divisor_degree(sc, cls[0]);
  } else if (o.op == "chow") {
    need(static_cast<std::size_t>(sc.k()));
    Json cs = Json::array();
    for (const auto& c : cls) cs.push_back(apolar::io::class_json(c));
    r.report["classes"] = cs;
    r.report["value"] = apolar::chow_product(sc, cls);
  } else if (o.op == "sections") {
    need(1);
    r.report["class"] = apolar::io::class_json(cls[0]);
    r.report["value"] = apolar::section_count(apolar::section_templates(sc, cls[0]));
  } else if (o.op == "genus") {
    need(1);
    r.report["class"] = apolar::io::class_json(cls[0]);
    r.report["value"] = apolar::genus_adjunction(sc, cls[0]);
  } else if (o.op == "canonical") {
    r.report["value"] = apolar::io::class_json(apolar::canonical_class(sc));
  } else {
    throw apolar::InputError("unknown --op " + o.op + " (info, degree, chow, sections, genus, canonical)");
  }
  return r;
}

apolar::CurveSpec generate_curve(const Options& o) {
  if (o.gonality == 3) {
    if (!o.split.empty()) throw apolar::InputError("--split applies to tetragonal curves only");
    return apolar::trigonal_curve(o.g, o.seed);
  }
  if (o.gonality != 4) throw apolar::InputError("--gonality must be 3 or 4");
  std::vector<int> split = o.split;
  if (split.empty()) split = apolar::default_splits(o.g).front();
  if (split.size() != 2) throw apolar::InputError("--split takes b1,b2");
  return apolar::tetragonal_curve(o.g, split[0], split[1], o.seed);
}

Outcome cmd_curve_gen(const Options& o) {
  Outcome r{header("curve-gen", "random canonical curve cut out on a balanced scroll")};
  r.report["curve"] = apolar::io::curve_json(generate_curve(o));
  return r;
}

Outcome cmd_alpha(const Options& o) {
  const apolar::PipelineConfig cfg = pipeline_config(o);
  apolar::PrecisionGuard prec(cfg.precision_bits);
  apolar::CurveSpec curve;
  if (o.in.empty()) {
    curve = generate_curve(o);
  } else {
    // Accepts a bare curve or a curve-gen report.
    const Json in = read_input(o);
    curve = apolar::io::curve_from_json(in.contains("curve") ? in.at("curve") : in);
  }
  const int surfaces = curve.gonality == 3 ? 1 : 2;
  auto ctx = apolar::prepare_trial(std::move(curve), o.seed, cfg, [&](const apolar::CurveSpec& c, const apolar::AlphaResult& a) {
    return apolar::hyperplanes_general(c, a, cfg.tolerance);
  });
  Outcome r{header("alpha", "the cubic attached to a canonical curve and two hyperplanes is apolar to the points cut on each surface")};
  r.report["seed"] = o.seed;
  r.report["precision_bits"] = o.precision_bits;
  r.report["genus"] = ctx.curve.genus;
  r.report["gonality"] = ctx.curve.gonality;
  r.report["ideal"] = Json{{"points", ctx.ideal.point_count},
                           {"quadrics", ctx.ideal.degree2.dim()},
                           {"cubics", ctx.ideal.degree3.dim()}};
  r.report["eta_attempts"] = ctx.eta_attempts;
  if (!ctx.alpha) throw apolar::CertificateError("no general hyperplane pair found: " + ctx.eta_error);
  const auto& a = *ctx.alpha;
  r.report["eta1"] = apolar::io::rational_vector_json(a.eta1);
  r.report["eta2"] = apolar::io::rational_vector_json(a.eta2);
  r.report["hilbert"] = a.hilbert;
  r.report["cubic"] = apolar::io::polynomial_json(a.cubic);
  r.report["lower_bound"] = apolar::rank_lower_bound(a.cubic);
  Json out = Json::array();
  for (int s = 0; s < surfaces; ++s) {
    Json e{{"surface", s}};
    try {
      const auto gamma = apolar::gamma_points(ctx.curve, s, a, cfg.tolerance);
      const auto d = apolar::waring_certificate(a, gamma, cfg.tolerance);
      e["length"] = gamma.found_length;
      e["decomposition"] = apolar::io::decomposition_json(d);
    } catch (const apolar::CertificateError& err) {
      e["error"] = err.what();
      r.ok = false;
    }
    out.push_back(e);
  }
  r.report["surfaces"] = out;
  return r;
}

Outcome cmd_verify_a(const Options& o) {
  const auto cfg = pipeline_config(o);
  const auto rep = apolar::verify_trigonal(o.g, o.trials, o.seed, cfg);
  Outcome r{header("verify-a", "the cubic of a general trigonal canonical curve is a sum of g-2 cubes, given by the points cut on the scroll")};
  r.report["g"] = o.g;
  r.report["bound"] = o.g - 2;
  r.report["seed"] = o.seed;
  r.report["precision_bits"] = o.precision_bits;
  r.report["tolerance"] = tolerance_string(o.tolerance);
  Json trials = Json::array();
  for (const auto& t : rep.trials) {
    Json j{{"seed", t.seed}, {"passed", t.passed}, {"eta_attempts", t.eta_attempts}, {"hilbert", t.hilbert},
           {"lower_bound", t.lower_bound}};
    if (t.fermat) {
      j["length"] = t.fermat->rank();
      j["residual"] = t.fermat->residual.to_string();
      j["forms_agree"] = t.forms_agree;
      j["decomposition"] = apolar::io::decomposition_json(*t.fermat);
    }
    if (!t.error.empty()) j["error"] = t.error;
    trials.push_back(j);
  }
  r.report["trials"] = trials;
  r.report["passed"] = rep.passed();
  r.ok = rep.passed();
  return r;
}

Outcome cmd_verify_b(const Options& o) {
  const auto cfg = pipeline_config(o);
  std::vector<std::vector<int>> splits;
  if (o.split.empty()) {
    if (o.g < 6 || o.g > 8) throw apolar::InputError("tetragonal check runs for 6 <= g <= 8");
    splits = apolar::default_splits(o.g);
  } else {
    splits = {o.split};
  }
  const auto rep = apolar::verify_tetragonal(o.g, splits, o.trials, o.seed, cfg);
  Outcome r{header("verify-b", "the cubic of a general tetragonal canonical curve is a sum of at most ceil((3g-7)/2) cubes")};
  r.report["g"] = o.g;
  r.report["bound"] = rep.bound;
  r.report["seed"] = o.seed;
  r.report["precision_bits"] = o.precision_bits;
  r.report["tolerance"] = tolerance_string(o.tolerance);
  Json trials = Json::array();
  for (const auto& t : rep.trials) {
    Json j{{"seed", t.seed}, {"split", t.split}, {"passed", t.passed}};
    if (t.length > 0) {
      j["length"] = t.length;
      j["residual"] = t.residual.to_string();
      j["rank_interval"] = {t.lower_bound, t.length};
    }
    j["fermat"] = t.fermat;
    Json ss = Json::array();
    for (const auto& s : t.surfaces) {
      Json e{{"surface", s.surface}, {"expected_length", s.expected_length}, {"fitted", s.fitted}};
      if (s.fitted) e["residual"] = s.decomposition->residual.to_string();
      if (!s.error.empty()) e["error"] = s.error;
      ss.push_back(e);
    }
    j["surfaces"] = ss;
    if (!t.error.empty()) j["error"] = t.error;
    trials.push_back(j);
  }
  r.report["trials"] = trials;
  r.report["passed"] = rep.passed();
  r.ok = rep.passed();
  return r;
}

Outcome cmd_numerology(const Options& o) {
  const auto num = apolar::tetragonal_numerology(o.g);
  Outcome r{header("numerology", "plane models of a general tetragonal curve and the degree of the adjoint surface")};
  r.report["g"] = num.g;
  r.report["k"] = num.k;
  r.report["plane_degree"] = num.plane_degree;
  r.report["required_sum"] = num.required_sum;
  r.report["bound"] = num.bound_numerator / 3;
  Json branches = Json::array();
  for (const auto& b : num.branches) {
    branches.push_back(Json{{"multiplicities", b.multiplicities},
                            {"extra_points", b.extra_points},
                            {"sum_m_minus_1", b.sum_m_minus_1},
                            {"sum_m_m_minus_1", b.sum_m_m_minus_1},
                            {"degS", b.deg_s}});
  }
  if (num.branches.empty()) {
    r.ok = false;
    r.report["error"] = "no admissible multiplicity pattern";
  } else {
    r.report["multiplicities"] = num.branches.front().multiplicities;
    r.report["degS"] = num.branches.front().deg_s;
  }
  r.report["branches"] = branches;
  return r;
}

Outcome cmd_nakai(const Options& o) {
  if (o.k < 0) throw apolar::InputError("--k is required");
  const auto c = apolar::nakai_certificate(o.k, o.a_max);
  Outcome r{header("nakai", "the two classes on the four-point blow-up are ample by Nakai-Moishezon, up to degree a_max")};
  r.report["k"] = c.k;
  r.report["L_squared"] = c.l_squared;
  r.report["C_squared"] = c.c_squared;
  r.report["a_max"] = c.a_max;
  r.report["classes_checked"] = c.classes_checked;
  r.report["l_violations"] = c.l_violations.size();
  r.report["c_violations"] = c.c_violations.size();
  r.report["tail_margin"] = c.tail_margin;
  r.report["holds"] = c.holds();
  r.ok = c.holds();
  return r;
}

Outcome cmd_gonality_n(const Options& o) {
  if (o.k < 0) throw apolar::InputError("--k is required");
  const auto h = apolar::higher_gonality_degree(o.n, o.k, o.excess);
  Outcome r{header("gonality-n", "degree of the adjoint surface for an n-gonal curve of genus (n-1)k")};
  r.report["n"] = h.n;
  r.report["k"] = h.k;
  r.report["excess"] = h.excess;
  r.report["g"] = h.g;
  r.report["deg_z_prime"] = h.deg_z_prime;
  r.report["plane_degree"] = h.plane_degree;
  r.report["base_sum"] = h.base_sum;
  r.report["required_sum"] = h.required_sum;
  r.report["degS"] = h.deg_s;
  r.report["canonical_bound"] = h.canonical_bound;
  r.report["exceeds"] = h.exceeds;
  return r;
}

void emit(const Options& o, const Json& report) {
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw apolar::InputError("cannot write " + o.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"apolar_kit: apolarity, Waring decompositions and canonical-curve checks"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "write the report to FILE instead of stdout");
    s->add_option("--precision-bits", o.precision_bits, "working precision for numeric steps")->check(CLI::Range(53, 4096));
    s->add_option("--tolerance", o.tolerance, "relative residual tolerance")->check(CLI::PositiveNumber);
  };
  auto seed = [&](CLI::App* s) { s->add_option("--seed", o.seed, "random seed")->required(); };
  auto in = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--in", o.in, "input JSON file");
    if (required) opt->required();
  };
  auto genus = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--g", o.g, "genus");
    if (required) opt->required();
  };
  auto split = [&](CLI::App* s) { s->add_option("--split", o.split, "b1,b2")->delimiter(',')->expected(2); };

  std::vector<std::pair<CLI::App*, Outcome (*)(const Options&)>> cmds;
  auto add = [&](const char* name, const char* help, Outcome (*fn)(const Options&)) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    cmds.emplace_back(s, fn);
    return s;
  };

  auto* s_apolar = add("apolar", "apolar ideal pieces and Hilbert function of a form", cmd_apolar);
  in(s_apolar, true);
  s_apolar->add_option("--k", o.k, "only this degree");

  in(add("inverse", "Macaulay inverse of graded ideal pieces", cmd_inverse), true);

  auto* s_fermat = add("fermat", "decide whether a cubic is Fermat and decompose it", cmd_fermat);
  in(s_fermat, true);
  seed(s_fermat);

  auto* s_scroll = add("scroll", "intersection numbers on a rational normal scroll", cmd_scroll);
  s_scroll->add_option("--type", o.type, "a1,...,ak")->delimiter(',')->required();
  s_scroll->add_option("--class", o.classes, "h,f (repeat for chow)")->delimiter(',')->allow_extra_args(false);
  s_scroll->add_option("--op", o.op, "info | degree | chow | sections | genus | canonical");

  auto* s_curve = add("curve-gen", "generate a random canonical curve", cmd_curve_gen);
  genus(s_curve, true);
  s_curve->add_option("--gonality", o.gonality, "3 or 4");
  split(s_curve);
  seed(s_curve);

  auto* s_alpha = add("alpha", "cubic of a curve and two random hyperplanes, with its Gamma decompositions", cmd_alpha);
  in(s_alpha, false);
  genus(s_alpha, false);
  s_alpha->add_option("--gonality", o.gonality, "3 or 4");
  split(s_alpha);
  seed(s_alpha);

  for (auto [name, help, fn] : {std::tuple{"verify-a", "trigonal curves give Fermat cubics", cmd_verify_a},
                                std::tuple{"verify-b", "tetragonal curves give short decompositions", cmd_verify_b}}) {
    auto* s = add(name, help, fn);
    genus(s, true);
    s->add_option("--trials", o.trials, "trials (per split)");
    seed(s);
    if (fn == cmd_verify_b) split(s);
  }

  genus(add("numerology", "plane-model numerology for tetragonal curves", cmd_numerology), true);

  auto* s_nakai = add("nakai", "Nakai-Moishezon check on the four-point blow-up", cmd_nakai);
  s_nakai->add_option("--k", o.k, "k >= 2")->required();
  s_nakai->add_option("--amax", o.a_max, "largest H-degree enumerated");

  auto* s_gon = add("gonality-n", "adjoint-surface degree for higher gonality", cmd_gonality_n);
  s_gon->add_option("--n", o.n, "gonality n >= 4")->required();
  s_gon->add_option("--k", o.k, "k >= 2")->required();
  s_gon->add_option("--excess", o.excess, "sum of (m-1) over extra singular points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (const auto& [s, fn] : cmds) {
      if (!s->parsed()) continue;
      const Outcome r = fn(o);
      emit(o, r.report);
      return r.ok ? 0 : 1;
    }
  } catch (const apolar::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const apolar::CertificateError& e) {
    std::cerr << "certificate failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
