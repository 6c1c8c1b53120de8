#pragma once

// Experiment runner behind the `gml` command line tool: configuration,
// validation, the subcommands, and report emission.

#include <filesystem>
#include <optional>
#include <unistd.h>

#include "gml/io.hpp"
#include "gml/verify.hpp"

namespace gml {

enum class ExitCode : int {
  ok = 0,
  config_error = 2,
  not_invertible = 3,
  vanishing_fourier_series = 4,
  tolerance_failure = 5,
};

struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names{"gabor-matrix", "envelope", "compose", "invert",
                                              "factorize",    "amalgam",  "seq-invert", "verify"};
  return names;
}

struct ExperimentConfig {
  std::string command;
  long N = 7;
  double q = 1.0;
  double s = 0.0;
  std::string window = "gaussian";
  std::string symbol = "identity";
  std::string symbol2 = "identity";
  std::array<long, 4> chi{1, 0, 0, 1};
  std::array<long, 4> chi2{1, 0, 0, 1};
  std::string out = "gml-out";
  std::uint64_t seed = 0;
  io::json options = io::json::object();  // command-specific
};

inline std::array<long, 4> parse_chi(const std::string& text) {
  std::array<long, 4> v{};
  std::stringstream ss(text);
  std::string item;
  size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 4) throw config_error("--chi expects four comma-separated integers");
    try {
      v[i++] = std::stol(item);
    } catch (const std::exception&) {
      throw config_error("--chi entry '" + item + "' is not an integer");
    }
  }
  if (i != 4) throw config_error("--chi expects four comma-separated integers");
  return v;
}

inline std::array<long, 4> chi_from_json(const io::json& j) {
  if (j.is_string()) return parse_chi(j.get<std::string>());
  return {j.at(0).at(0).get<long>(), j.at(0).at(1).get<long>(), j.at(1).at(0).get<long>(), j.at(1).at(1).get<long>()};
}

/// Fills cfg from a JSON config object; unknown keys are rejected.
inline void apply_json_config(ExperimentConfig& cfg, const io::json& j) {
  if (!j.is_object()) throw config_error("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") cfg.command = value.get<std::string>();
    else if (key == "N") cfg.N = value.get<long>();
    else if (key == "q") cfg.q = value.get<double>();
    else if (key == "s") cfg.s = value.get<double>();
    else if (key == "window") cfg.window = value.get<std::string>();
    else if (key == "symbol") cfg.symbol = value.get<std::string>();
    else if (key == "symbol2") cfg.symbol2 = value.get<std::string>();
    else if (key == "chi") cfg.chi = chi_from_json(value);
    else if (key == "chi2") cfg.chi2 = chi_from_json(value);
    else if (key == "out") cfg.out = value.get<std::string>();
    else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
    else if (key == "options") cfg.options = value;
    else throw config_error("unknown config key '" + key + "'");
  }
}

inline io::json to_json(const ExperimentConfig& cfg) {
  return {{"command", cfg.command}, {"N", cfg.N}, {"q", cfg.q}, {"s", cfg.s}, {"window", cfg.window},
          {"symbol", cfg.symbol}, {"symbol2", cfg.symbol2},
          {"chi", {{cfg.chi[0], cfg.chi[1]}, {cfg.chi[2], cfg.chi[3]}}},
          {"chi2", {{cfg.chi2[0], cfg.chi2[1]}, {cfg.chi2[2], cfg.chi2[3]}}},
          {"seed", cfg.seed}, {"options", cfg.options}};
}

struct Report {
  std::string command;
  std::string status = "ok";
  io::json config = io::json::object();
  io::json results = io::json::object();
  std::vector<io::Dataset> datasets;
};

inline constexpr int report_schema_version = 1;

/// Writes report.json and one CSV per dataset into dir.
inline void emit_report(const std::filesystem::path& dir, const Report& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  io::json listing = io::json::array();
  for (const auto& d : report.datasets) {
    const std::string file = d.name + ".csv";
    io::write_csv((dir / file).string(), d);
    listing.push_back({{"name", d.name}, {"file", file}, {"columns", d.columns}, {"rows", d.rows.size()}});
  }
  const io::json doc{{"schema_version", report_schema_version}, {"command", report.command},
                     {"status", report.status}, {"config", report.config},
                     {"results", report.results}, {"datasets", listing}};
  std::ofstream out(dir / "report.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "report.json").string());
  out << doc.dump(2) << '\n';
}

namespace detail {

inline bool needs_prime(const std::string& cmd) {
  return cmd == "envelope" || cmd == "compose" || cmd == "invert" || cmd == "factorize" || cmd == "verify";
}

inline bool uses_lattice(const std::string& cmd) { return cmd != "amalgam" && cmd != "seq-invert"; }

/// Inputs resolved during validation; nothing is computed from them yet.
struct Prepared {
  ExperimentConfig cfg;
  QParams params;
  std::optional<GaborSystem> sys;
  Symbol sigma, sigma2;
  std::optional<SympMat> chi, chi2;
  // amalgam
  std::optional<PlaneFunction> field_fn;
  std::optional<SampledField> field;
  Mat2 gl_matrix = Mat2{{2.0, 0.0}, {0.0, 0.5}};
  // seq-invert
  SparseSeq sequence = SparseSeq::delta(1) - SparseSeq::unit({1}, 0.5);
  FourierInverseOptions fourier;
  double residual_tol = 1e-8;
  // invert / factorize / verify
  double cond_tol = 1e12;
  long cases = 200;
};

inline bool writable_target(const std::filesystem::path& dir) {
  std::filesystem::path probe = std::filesystem::absolute(dir);
  while (!std::filesystem::exists(probe)) {
    if (!probe.has_parent_path() || probe.parent_path() == probe) return false;
    probe = probe.parent_path();
  }
  return std::filesystem::is_directory(probe) && ::access(probe.c_str(), W_OK) == 0;
}

inline Signal resolve_window(const ExperimentConfig& cfg) {
  const long n = cfg.N;
  if (cfg.window == "gaussian") return periodized_gaussian(n);
  if (cfg.window == "delta") return unit_signal(n);
  if (cfg.window == "random") {
    gen::Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    return random_signal(n, rng);
  }
  if (std::filesystem::exists(cfg.window)) {
    Signal g = io::signal_from_json(io::read_json_file(cfg.window));
    if (g.size() != n) throw config_error("window file length differs from N");
    return g;
  }
  throw config_error("unknown window '" + cfg.window + "'");
}

inline Symbol resolve_symbol(const std::string& name, const ExperimentConfig& cfg, std::uint64_t salt) {
  const long n = cfg.N;
  if (name == "identity") return Symbol::Constant(n, n, 1.0);
  if (name == "gaussian-bump") return gen::gaussian_bump_symbol(n, 0.1);
  if (name == "random-smooth") {
    gen::Rng rng(cfg.seed + salt);
    return gen::smooth_symbol(rng, n);
  }
  if (std::filesystem::exists(name)) {
    Symbol s = io::field_from_json(io::read_json_file(name));
    if (s.rows() != n) throw config_error("symbol file size differs from N");
    return s;
  }
  throw config_error("unknown symbol '" + name + "'");
}

inline Prepared prepare(const ExperimentConfig& cfg) {
  Prepared p{cfg, {}, std::nullopt, {}, {}, std::nullopt, std::nullopt};
  const auto& cmds = known_commands();
  if (std::find(cmds.begin(), cmds.end(), cfg.command) == cmds.end()) {
    throw config_error("unknown command '" + cfg.command + "'");
  }
  try {
    p.params = QParams(cfg.q, cfg.s);
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  if (uses_lattice(cfg.command)) {
    if (cfg.N < 3 || cfg.N % 2 == 0) throw config_error("N must be odd and >= 3");
    if (needs_prime(cfg.command) && !is_prime(cfg.N)) throw config_error("N must be an odd prime for " + cfg.command);
    p.sys.emplace(resolve_window(cfg));
    p.sigma = resolve_symbol(cfg.symbol, cfg, 1);
    p.sigma2 = resolve_symbol(cfg.symbol2, cfg, 2);
    if (cfg.command != "gabor-matrix" || is_prime(cfg.N)) {
      // invalid_symplectic propagates with its own diagnostic kind.
      p.chi.emplace(cfg.chi[0], cfg.chi[1], cfg.chi[2], cfg.chi[3], cfg.N);
      p.chi2.emplace(cfg.chi2[0], cfg.chi2[1], cfg.chi2[2], cfg.chi2[3], cfg.N);
    }
  }
  const auto& o = cfg.options;
  if (!o.is_object()) throw config_error("options must be a JSON object");
  if (cfg.command == "amalgam") {
    const long extent = o.value("R", 8L), per_cell = o.value("M", 32L);
    const std::string field = o.value("field", std::string("gaussian"));
    if (field == "gaussian" || field == "bump" || field == "chirped-gaussian") {
      p.field_fn = field_preset(field);
      p.field = SampledField::sample(*p.field_fn, extent, per_cell);
    } else {
      std::ifstream in(field);
      if (!in) throw config_error("unknown field '" + field + "'");
      p.field = io::field_from_csv(in);
    }
    if (o.contains("matrix")) {
      const auto& mj = o.at("matrix");
      p.gl_matrix << mj.at(0).at(0).get<double>(), mj.at(0).at(1).get<double>(), mj.at(1).at(0).get<double>(),
          mj.at(1).at(1).get<double>();
      if (std::abs(p.gl_matrix.determinant()) < 1e-14) throw config_error("amalgam matrix is singular");
    }
  }
  if (cfg.command == "seq-invert") {
    if (o.contains("sequence")) {
      const auto& src = o.at("sequence");
      p.sequence = io::sequence_from_json(src.is_string() ? io::read_json_file(src.get<std::string>()) : src);
    }
    if (p.sequence.dim() > 2) throw config_error("seq-invert supports dimensions 1 and 2");
    p.fourier.grid = o.value("grid", 0L);
    p.fourier.decay_cutoff = o.value("decay_cutoff", p.fourier.decay_cutoff);
    p.residual_tol = o.value("residual_tol", p.residual_tol);
  }
  p.cond_tol = o.value("cond_tol", p.cond_tol);
  p.residual_tol = o.value("residual_tol", cfg.command == "factorize" ? 1e-9 : p.residual_tol);
  p.cases = o.value("cases", p.cases);
  if (!writable_target(cfg.out)) throw config_error("output directory '" + cfg.out + "' is not writable");
  return p;
}

inline OperatorMatrix fio_operator(const Symbol& sigma, const std::optional<SympMat>& chi) {
  OperatorMatrix t = weyl_quantize(sigma);
  if (chi && !(*chi == SympMat::identity(chi->N()))) t = t * metaplectic_operator(*chi);
  return t;
}

inline Report run_gabor_matrix(const Prepared& p) {
  Report r;
  const OperatorMatrix t = fio_operator(p.sigma, p.chi);
  const GaborMatrix m = gabor_matrix(t, *p.sys);
  const DecayProfile d = diagonal_envelope(m);
  const double cb = profile_qnorm(d, p.params);
  const double mod = modulation_norm(p.sigma, p.params);
  r.results = {{"cb_norm", cb}, {"modulation_norm", mod}, {"norm_ratio", mod > 0.0 ? cb / mod : 0.0}};
  r.datasets.push_back(io::gabor_dataset("gabor_matrix", m));
  r.datasets.push_back(io::profile_dataset("diagonal_envelope", d));
  return r;
}

inline Report run_envelope(const Prepared& p) {
  Report r;
  const OperatorMatrix t = fio_operator(p.sigma, p.chi);
  const FioEnvelope h = envelope(t, *p.chi, *p.sys);
  r.results = {{"chi", io::to_json(*p.chi)}, {"word", io::to_json(factor_generators(*p.chi))},
               {"report", io::to_json(fio_report(h, p.params))}};
  r.datasets.push_back(io::profile_dataset("envelope", h.values));
  return r;
}

inline Report run_compose(const Prepared& p) {
  Report r;
  const OperatorMatrix t1 = fio_operator(p.sigma, p.chi), t2 = fio_operator(p.sigma2, p.chi2);
  const ComposeCheck c = compose_check(t1, *p.chi, t2, *p.chi2, *p.sys, p.params);
  r.results = {{"ratio", c.ratio}, {"composite", io::to_json(c.composite)}, {"first", io::to_json(c.first)},
               {"second", io::to_json(c.second)}, {"chi_product", io::to_json(*p.chi * *p.chi2)}};
  r.datasets.push_back(io::profile_dataset("composite_envelope", envelope(t1 * t2, *p.chi * *p.chi2, *p.sys).values));
  return r;
}

inline Report run_invert(const Prepared& p) {
  Report r;
  const OperatorMatrix t = fio_operator(p.sigma, p.chi);
  const FioInverse inv = invert_fio(t, *p.chi, *p.sys, p.params, p.cond_tol);
  r.results = {{"condition_number", inv.condition}, {"inverse", io::to_json(inv.report)},
               {"forward", io::to_json(inv.forward)},
               {"tail_ratio", inv.forward.tail_fraction > 0.0 ? inv.report.tail_fraction / inv.forward.tail_fraction : 0.0}};
  r.datasets.push_back(io::profile_dataset("inverse_envelope", envelope(inv.inverse, p.chi->inverse(), *p.sys).values));
  return r;
}

inline Report run_factorize(const Prepared& p) {
  Report r;
  const OperatorMatrix t = fio_operator(p.sigma, p.chi);
  const Factorization f = factorize_fio(t, *p.chi, *p.sys);
  const double tol = p.residual_tol;
  r.results = {{"residual_left", f.residual_left}, {"residual_right", f.residual_right},
               {"egorov_modulus_defect", f.egorov_defect}, {"word", io::to_json(factor_generators(*p.chi))}};
  if (std::max(f.residual_left, f.residual_right) >= tol) r.status = "tolerance-failure";
  r.datasets.push_back(io::field_dataset("sigma1", f.sigma1));
  r.datasets.push_back(io::field_dataset("sigma2", f.sigma2));
  return r;
}

inline Report run_amalgam(const Prepared& p) {
  Report r;
  const SampledField& field = *p.field;
  r.results["norm"] = amalgam_norm(field, p.params);
  r.results["boundary_max"] = field.boundary_max();
  r.results["conv_ratio_self"] = conv_embedding_check(field, field, p.params);
  if (p.field_fn) {
    const RefinedNorm rn = amalgam_norm_refined(*p.field_fn, field.extent(), field.samples_per_cell(), p.params);
    r.results["refined_norm"] = rn.refined_norm;
    r.results["refinement_error_estimate"] = rn.error_estimate;
    const GlInvarianceCheck gl =
        gl_invariance_check(*p.field_fn, field.extent(), field.samples_per_cell(), p.gl_matrix, p.params);
    r.results["gl_invariance"] = {{"ratio", gl.ratio}, {"beta", gl.beta}, {"bound", gl.bound}, {"holds", gl.holds}};
    if (!gl.holds) r.status = "tolerance-failure";
  }
  io::Dataset cells{"cell_maxima", {"lambda_x", "lambda_y", "value"}, {}};
  const Eigen::MatrixXd mag = field.values().cwiseAbs();
  const long e = field.extent(), m = field.samples_per_cell();
  for (long cx = -e; cx < e; ++cx)
    for (long cy = -e; cy < e; ++cy)
      cells.rows.push_back({double(cx), double(cy), mag.block((cx + e) * m, (cy + e) * m, m + 1, m + 1).maxCoeff()});
  r.datasets.push_back(std::move(cells));
  return r;
}

inline Report run_seq_invert(const Prepared& p) {
  Report r;
  const SparseSeq& a = p.sequence;
  const FourierInverse inv = invert_by_fourier(a, p.fourier);
  r.results = {{"residual_l1", inv.residual_l1}, {"grid_min", inv.grid_min},
               {"exponential_rate", inv.exponential_rate}, {"polynomial_exponent", inv.polynomial_exponent},
               {"support_size", inv.inverse.support_size()}, {"qnorm_inverse", qnorm(inv.inverse, p.params)}};
  const SparseSeq x = SparseSeq::delta(a.dim()) - a;
  if (qnorm(x, p.params) < 1.0) {
    const NeumannResult ns = neumann_inverse(x, p.params, 1e-10);
    r.results["neumann"] = {{"degree", ns.degree}, {"x_norm", ns.x_norm}, {"tail_bound", ns.tail_bound}};
  }
  if (!(inv.residual_l1 < p.residual_tol)) r.status = "tolerance-failure";
  r.datasets.push_back(io::sequence_dataset("inverse", inv.inverse));
  return r;
}

inline Report run_verify(const Prepared& p) {
  Report r;
  VerifySettings vs{p.cfg.N, p.params, p.cfg.seed, p.cases};
  io::json props = io::json::array();
  long failed = 0;
  for (const auto& pr : run_property_suite(vs)) {
    props.push_back({{"name", pr.name}, {"cases", pr.cases}, {"failures", pr.failures}, {"worst_margin", pr.worst},
                     {"passed", pr.passed()}});
    if (!pr.passed()) ++failed;
  }
  r.results = {{"properties", props}, {"failed", failed}, {"total", props.size()}};
  if (failed > 0) r.status = "tolerance-failure";
  return r;
}

}  // namespace detail

struct RunOutcome {
  ExitCode code = ExitCode::ok;
  std::string error_kind;  // empty on success
  std::string message;
  std::optional<Report> report;
};

/// Validates, runs, and writes outputs. Invalid configurations produce no files.
inline RunOutcome run_experiment(const ExperimentConfig& cfg) {
  RunOutcome outcome;
  const auto fail = [&](ExitCode code, std::string kind, std::string msg) {
    outcome.code = code;
    outcome.error_kind = std::move(kind);
    outcome.message = std::move(msg);
  };
  std::optional<detail::Prepared> prepared;
  try {
    prepared = detail::prepare(cfg);
  } catch (const invalid_symplectic& e) {
    fail(ExitCode::config_error, "invalid-symplectic", e.what());
    return outcome;
  } catch (const std::exception& e) {
    // std::invalid_argument, config_error and JSON parse/type errors alike.
    fail(ExitCode::config_error, "invalid-config", e.what());
    return outcome;
  }

  Report report;
  try {
    const auto& p = *prepared;
    const std::string& c = cfg.command;
    if (c == "gabor-matrix") report = detail::run_gabor_matrix(p);
    else if (c == "envelope") report = detail::run_envelope(p);
    else if (c == "compose") report = detail::run_compose(p);
    else if (c == "invert") report = detail::run_invert(p);
    else if (c == "factorize") report = detail::run_factorize(p);
    else if (c == "amalgam") report = detail::run_amalgam(p);
    else if (c == "seq-invert") report = detail::run_seq_invert(p);
    else report = detail::run_verify(p);
    if (report.status == "tolerance-failure") fail(ExitCode::tolerance_failure, "tolerance-failure", "tolerance check failed");
  } catch (const not_invertible& e) {
    report.status = "not-invertible";
    fail(ExitCode::not_invertible, report.status, e.what());
  } catch (const contraction_violation& e) {
    report.status = "not-invertible";
    fail(ExitCode::not_invertible, report.status, e.what());
  } catch (const vanishing_fourier_series& e) {
    report.status = "vanishing-fourier-series";
    fail(ExitCode::vanishing_fourier_series, report.status, e.what());
  } catch (const config_error& e) {
    fail(ExitCode::config_error, "invalid-config", e.what());
    return outcome;
  } catch (const std::invalid_argument& e) {
    fail(ExitCode::config_error, "invalid-config", e.what());
    return outcome;
  }
  report.command = cfg.command;
  report.config = to_json(cfg);
  if (!outcome.message.empty()) report.results["error"] = {{"kind", outcome.error_kind}, {"message", outcome.message}};
  try {
    emit_report(cfg.out, report);
  } catch (const std::exception& e) {
    fail(ExitCode::config_error, "unwritable-output", e.what());
    return outcome;
  }
  outcome.report = std::move(report);
  return outcome;
}

}  // namespace gml
