#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "gabinv/diagram.hpp"
#include "gabinv/finite_gabor.hpp"
#include "gabinv/invariance.hpp"
#include "gabinv/lattice.hpp"
#include "gabinv/sis.hpp"
#include "gabinv/windows.hpp"
#include "gabinv/zak.hpp"

namespace gabinv::cli {

using json = nlohmann::ordered_json;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Config {
  std::string lambda = "4,0;0,2";
  std::string tilde;
  std::string window;
  std::string input;
  std::int64_t L = 32;
  std::int64_t N = 4;
  std::int64_t P = 0;
  std::int64_t Q = 0;
  double tau = kDefaultZeroTolerance;
  double tol = 1e-9;
  bool oracle = false;
  bool decompose = false;
  bool L_set = false;
  std::int64_t sis_step = 0;
  std::int64_t sis_finer = 0;
  std::string out;
  std::string format = "json";
};

std::uint64_t seed_from_env() {
  const char* s = std::getenv("GABINV_SEED");
  if (!s || !*s) return 0;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw Error("GABINV_SEED must be a nonnegative integer");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

WindowSpec load_window(const std::string& arg) {
  if (arg.empty()) throw Error("--window is required");
  if (arg.front() == '{') return parse_window(arg);
  const auto hash = arg.find('#');
  if (hash != std::string::npos) {
    const auto catalog = parse_catalog(read_file(arg.substr(0, hash)));
    return find_window(catalog, arg.substr(hash + 1)).spec;
  }
  return parse_window(read_file(arg));
}

ordered_json lattice_json(const RationalLattice& l) {
  ordered_json j;
  j["basis"] = l.to_string();
  j["covolume"] = format_rational(l.covolume());
  j["canonical"] = true;
  return j;
}

json complex_pairs(const ComplexVector& v) {
  json arr = json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error("cannot write '" + cfg.out + "'");
  f << text;
}

void emit_json(const Config& cfg, const ordered_json& j, std::ostream& out) { emit(cfg, j.dump(2) + "\n", out); }

/// Window, Zak samples and (when finite) the Gabor model for a command.
struct Setup {
  RationalLattice lambda;
  WindowSpec spec;
  ZakGrid zphi;
  std::optional<FiniteGaborModel> model;
  ordered_json resolution;
};

Setup make_setup(const Config& cfg, bool need_finite) {
  Setup s{RationalLattice::parse(cfg.lambda), load_window(cfg.window), {}, std::nullopt, {}};
  if (s.lambda.dim() != 2 && need_finite) throw Error("the finite model supports d = 1 lattices only");
  const bool finite_window = s.spec.kind == WindowSpec::Kind::finite_vector;
  if (finite_window && cfg.L_set && cfg.L != s.spec.L) throw Error("--L disagrees with the window length");
  const std::int64_t L = finite_window ? s.spec.L : cfg.L;
  const bool finite = finite_window || need_finite;
  if (finite) {
    if (s.spec.kind == WindowSpec::Kind::explicit_zak) throw Error("the finite model needs a finite or analytic window");
    const auto split = ZakSplit::make(L, cfg.N);
    if ((cfg.P && cfg.P != split.N) || (cfg.Q && cfg.Q != split.M)) throw Error("the finite model samples on P = N, Q = L/N");
    const RationalLattice lam_fin = s.lambda.scaled({split.N, split.M});
    s.model.emplace(split, lam_fin, finite_samples(s.spec, split), cfg.tau);
    s.zphi = s.model->window_zak();
    s.resolution = {{"mode", "finite"}, {"L", split.L}, {"N", split.N}, {"M", split.M}};
    if (!(s.model->continuous_lattice() == s.lambda)) {
      s.resolution["model_lattice"] = s.model->continuous_lattice().to_string();
      s.lambda = s.model->continuous_lattice();
    }
    return s;
  }
  const std::int64_t P = cfg.P ? cfg.P : cfg.N;
  const std::int64_t Q = cfg.Q ? cfg.Q : (L % cfg.N == 0 ? L / cfg.N : throw Error("N must divide L"));
  s.zphi = analytic_zak(s.spec, P, Q, cfg.tau);
  const auto& r = s.zphi.shape().resolution();
  s.resolution = {{"mode", "continuous"}, {"P", r.front()}, {"Q", r.back()}};
  return s;
}

ordered_json condition_json(const ConditionReport& rep, const GridShape& grid) {
  ordered_json j;
  j["condition_d"] = rep.holds;
  j["energy_form"] = rep.energy_holds;
  j["forms_agree"] = rep.forms_agree;
  j["max_nonzero_cosets"] = rep.max_nonzero_cosets;
  j["witness_count"] = rep.witnesses.size();
  json ws = json::array();
  for (const auto& w : rep.witnesses)
    ws.push_back({{"node", w.node},
                  {"offset", w.offset},
                  {"point", format_vector(grid.to_point(w.node))},
                  {"shift", format_vector(grid.to_point(w.offset))},
                  {"value_abs", w.value_abs},
                  {"offset_abs", w.offset_abs}});
  j["witnesses"] = ws;
  return j;
}

ComplexVector random_member(const FiniteGaborModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const Eigen::MatrixXcd G = gabor_matrix(model);
  Eigen::VectorXcd c(G.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = Complex(g(rng), g(rng));
  return to_std(G * c);
}

int cmd_lattice_info(const Config& cfg, std::ostream& out) {
  const auto lam = RationalLattice::parse(cfg.lambda);
  ordered_json j;
  j["lambda"] = lattice_json(lam);
  j["dual"] = lattice_json(dual(lam));
  if (lam.dim() % 2 == 0) {
    j["adjoint"] = lattice_json(adjoint(lam));
    j["adjoint_generator"] = format_matrix(adjoint_generator(lam));
  }
  if (!cfg.tilde.empty()) {
    const auto tilde = RationalLattice::parse(cfg.tilde);
    ordered_json t;
    t["lattice"] = lattice_json(tilde);
    t["adjoint"] = format_matrix(adjoint_generator(tilde));
    t["adjoint_canonical"] = lattice_json(adjoint(tilde));
    t["index"] = index(lam, tilde);
    const auto cosets = quotient_cosets(adjoint(lam), adjoint(tilde));
    t["N"] = cosets.order;
    json reps = json::array();
    for (const auto& r : cosets.representatives) reps.push_back(format_vector(r));
    t["coset_representatives"] = reps;
    j["tilde"] = t;
  }
  if (cfg.format == "text") {
    std::ostringstream os;
    os << "lambda   " << lam.to_string() << "  covolume " << format_rational(lam.covolume()) << '\n';
    os << "dual     " << dual(lam).to_string() << '\n';
    if (j.contains("adjoint")) os << "adjoint  " << j["adjoint"]["basis"].get<std::string>() << '\n';
    if (j.contains("tilde"))
      os << "tilde    " << j["tilde"]["lattice"]["basis"].get<std::string>() << "  adjoint "
         << j["tilde"]["adjoint"].get<std::string>() << "  N " << j["tilde"]["N"].get<std::size_t>() << '\n';
    emit(cfg, os.str(), out);
  } else {
    emit_json(cfg, j, out);
  }
  return kOk;
}

int cmd_diagram(const Config& cfg, std::ostream& out) {
  if (cfg.tilde.empty()) throw Error("--tilde is required");
  const auto d = build_diagram(RationalLattice::parse(cfg.lambda), RationalLattice::parse(cfg.tilde));
  if (cfg.format == "ascii" || cfg.format == "text")
    emit(cfg, render_ascii(d), out);
  else if (cfg.format == "svg" || cfg.format == "json")
    emit(cfg, render_svg(d), out);
  else
    throw Error("diagram formats are svg and ascii");
  return kOk;
}

int cmd_check(const Config& cfg, std::ostream& out) {
  const RationalLattice tilde = RationalLattice::parse(cfg.tilde.empty() ? cfg.lambda : cfg.tilde);
  const Setup s = make_setup(cfg, cfg.oracle || cfg.decompose || cfg.sis_step > 0);
  const auto rep = condition_d(s.zphi, s.lambda, tilde, cfg.tau);
  ordered_json j;
  j["lambda"] = lattice_json(s.lambda);
  j["lambda_tilde"] = lattice_json(tilde);
  j["N"] = rep.order;
  const ordered_json cond = condition_json(rep, s.zphi.shape());
  for (auto& [k, v] : cond.items()) j[k] = v;
  int code = kOk;
  j["oracle"] = nullptr;
  if (cfg.oracle) {
    const auto basis = space_basis(gabor_matrix(*s.model));
    const auto o = brute_force_lattice_invariant(*s.model, basis, tilde, cfg.tol);
    j["oracle"] = o.invariant;
    j["oracle_residual"] = o.max_residual;
    j["rank"] = o.rank;
    if (o.invariant != rep.holds) code = kMismatch;
  }
  if (cfg.decompose) {
    const ComplexVector f = random_member(*s.model, seed_from_env());
    const auto dec = decompose(f, *s.model, tilde, cfg.tol);
    j["decomposition"] = {{"norms", dec.norms},
                          {"parseval_error", dec.parseval_error},
                          {"max_cross", dec.max_cross},
                          {"components_in_span", dec.invariant_pattern ? json(dec.members) : json(nullptr)}};
  }
  if (cfg.sis_step > 0) {
    const FiniteSISModel sis(s.model->split().L, cfg.sis_step, s.model->window());
    const std::int64_t finer = cfg.sis_finer > 0 ? cfg.sis_finer : 1;
    const auto c = sis_condition_d(dft(sis.generator), sis.p, finer, cfg.tau);
    const auto o = sis_brute_force_invariant(sis, finer, cfg.tol);
    j["sis"] = {{"step", sis.p},
                {"finer_step", finer},
                {"condition_d", c.holds},
                {"forms_agree", c.forms_agree},
                {"full_translation", sis_full_translation(dft(sis.generator), sis.p, cfg.tau)},
                {"oracle", o.invariant}};
    if (o.invariant != c.holds) code = kMismatch;
  }
  j["resolution"] = s.resolution;
  j["tau"] = cfg.tau;
  j["tol"] = cfg.tol;
  if (cfg.format == "text") {
    std::ostringstream os;
    os << "condition_d " << (rep.holds ? "true" : "false") << "  N " << rep.order << "  witnesses " << rep.witnesses.size() << '\n';
    if (cfg.oracle) os << "oracle " << (j["oracle"].get<bool>() ? "true" : "false") << '\n';
    emit(cfg, os.str(), out);
  } else {
    emit_json(cfg, j, out);
  }
  return code;
}

int cmd_decompose(const Config& cfg, std::ostream& out) {
  if (cfg.tilde.empty()) throw Error("--tilde is required");
  const RationalLattice tilde = RationalLattice::parse(cfg.tilde);
  const Setup s = make_setup(cfg, true);
  ComplexVector f;
  if (!cfg.input.empty()) {
    const WindowSpec in = load_window(cfg.input);
    if (in.kind != WindowSpec::Kind::finite_vector) throw Error("--input must be a finite_vector");
    f = in.values;
    if (static_cast<std::int64_t>(f.size()) != s.model->split().L) throw Error("--input length does not match L");
  } else {
    f = random_member(*s.model, seed_from_env());
  }
  const auto dec = decompose(f, *s.model, tilde, cfg.tol);
  ordered_json j;
  j["lambda"] = lattice_json(s.lambda);
  j["lambda_tilde"] = lattice_json(tilde);
  j["N"] = dec.components.size();
  j["condition_d"] = dec.invariant_pattern;
  j["norms"] = dec.norms;
  j["parseval_error"] = dec.parseval_error;
  j["max_cross"] = dec.max_cross;
  j["components_in_span"] = dec.invariant_pattern ? json(dec.members) : json(nullptr);
  json comps = json::array();
  for (const auto& c : dec.components) comps.push_back(complex_pairs(c));
  j["components"] = comps;
  j["resolution"] = s.resolution;
  emit_json(cfg, j, out);
  return kOk;
}

int cmd_enumerate(const Config& cfg, std::ostream& out, bool force_oracle) {
  const bool use_oracle = cfg.oracle || force_oracle;
  const Setup s = make_setup(cfg, use_oracle);
  std::optional<SubspaceBasis> basis;
  if (use_oracle) basis = space_basis(gabor_matrix(*s.model));
  OracleFn oracle;
  if (use_oracle)
    oracle = [&](const RationalLattice& t) { return brute_force_lattice_invariant(*s.model, *basis, t, cfg.tol).invariant; };
  const auto set = invariance_set(s.zphi, s.lambda, RationalLattice::integer(s.lambda.dim()), cfg.tau, oracle);
  ordered_json j;
  j["lambda"] = lattice_json(s.lambda);
  json rows = json::array();
  std::size_t mismatches = 0;
  for (const auto& r : set.rows) {
    ordered_json row;
    row["lambda_tilde"] = lattice_json(r.tilde);
    row["N"] = index(s.lambda, r.tilde);
    row["condition_d"] = r.condition_d;
    row["oracle"] = r.oracle ? json(*r.oracle) : json(nullptr);
    if (r.oracle && *r.oracle != r.condition_d) ++mismatches;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["maximal"] = lattice_json(set.maximal);
  j["maximal_verified"] = set.maximal_verified;
  if (use_oracle) j["mismatches"] = mismatches;
  j["resolution"] = s.resolution;
  if (cfg.format == "text") {
    std::ostringstream os;
    for (const auto& r : set.rows)
      os << r.tilde.to_string() << "  " << (r.condition_d ? "invariant" : "-") << (r.oracle ? (*r.oracle ? "  oracle:yes" : "  oracle:no") : "")
         << '\n';
    os << "maximal " << set.maximal.to_string() << '\n';
    emit(cfg, os.str(), out);
  } else {
    emit_json(cfg, j, out);
  }
  return mismatches ? kMismatch : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extra time-frequency invariance of Gabor spaces over integer lattices", "gabinv"};
  app.require_subcommand(1);
  Config cfg;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lambda", cfg.lambda, "Lattice, rows ';' entries ',' (default 4,0;0,2)");
    sub->add_option("--tilde", cfg.tilde, "Finer lattice between --lambda and Z^2d");
    sub->add_option("--out", cfg.out, "Write output to FILE");
    sub->add_option("--format", cfg.format, "json, text, svg or ascii");
  };
  const auto add_model = [&](CLI::App* sub) {
    sub->add_option("--window", cfg.window, "Window JSON file, CATALOG#name, or inline JSON")->required();
    sub->add_option("--L", cfg.L, "Ambient dimension of the finite model")->check(CLI::PositiveNumber)->each([&](const std::string&) {
      cfg.L_set = true;
    });
    sub->add_option("--N", cfg.N, "Samples per unit time")->check(CLI::PositiveNumber);
    sub->add_option("--P", cfg.P, "Zak grid resolution in time")->check(CLI::PositiveNumber);
    sub->add_option("--Q", cfg.Q, "Zak grid resolution in frequency")->check(CLI::PositiveNumber);
    sub->add_option("--tau", cfg.tau, "Relative zero threshold")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", cfg.tol, "Oracle and membership tolerance")->check(CLI::PositiveNumber);
  };

  auto* lattice = app.add_subcommand("lattice", "Lattice analysis and figures");
  lattice->require_subcommand(1);
  auto* info = lattice->add_subcommand("info", "Canonical basis, dual, adjoint and cosets");
  add_common(info);
  auto* diagram = lattice->add_subcommand("diagram", "Two-panel lattice figure");
  add_common(diagram);

  auto* check = app.add_subcommand("check", "Zero-pattern invariance test");
  add_common(check);
  add_model(check);
  check->add_flag("--oracle", cfg.oracle, "Cross-check with the brute-force span test");
  check->add_flag("--decompose", cfg.decompose, "Decompose a random member of the space");
  check->add_option("--sis-step", cfg.sis_step, "Also test the shift-invariant analog with shifts of this step");
  check->add_option("--sis-finer", cfg.sis_finer, "Finer shift step for the shift-invariant analog (default 1)");

  auto* decomp = app.add_subcommand("decompose", "Orthogonal decomposition along the masks");
  add_common(decomp);
  add_model(decomp);
  decomp->add_option("--input", cfg.input, "finite_vector JSON to decompose (default: random member)");

  auto* enumerate = app.add_subcommand("enumerate", "Verdicts for every intermediate lattice");
  add_common(enumerate);
  add_model(enumerate);
  enumerate->add_flag("--oracle", cfg.oracle, "Cross-check with the brute-force span test");

  auto* oracle = app.add_subcommand("oracle", "Zero-pattern test against the brute-force span test on every intermediate lattice");
  add_common(oracle);
  add_model(oracle);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }
  try {
    if (info->parsed()) return cmd_lattice_info(cfg, out);
    if (diagram->parsed()) return cmd_diagram(cfg, out);
    if (check->parsed()) return cmd_check(cfg, out);
    if (decomp->parsed()) return cmd_decompose(cfg, out);
    if (enumerate->parsed()) return cmd_enumerate(cfg, out, false);
    if (oracle->parsed()) return cmd_enumerate(cfg, out, true);
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kGuardExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace gabinv::cli
