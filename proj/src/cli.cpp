#include "jladder/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "jladder/io.hpp"
#include "jladder/levelcurve.hpp"
#include "jladder/transmute.hpp"

namespace jladder {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <typename T>
T to_number(const std::string& key, const std::string& value) {
  T v{};
  const std::string t = trim(value);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw Error(ErrorKind::InvalidArgument, "bad value '" + value + "' for " + key);
  }
  return v;
}

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {
      "height_cap", "target_abs_error", "step",          "t_max",       "invert_tol",
      "t0",         "c0",               "point_tol",     "grid_step",   "weight_mode",
      "zeta_window", "partner_window",  "seed",          "threads",     "cache_dir",
      "out_dir"};
  return keys;
}

std::string flag_name(std::string key) {
  for (auto& ch : key) {
    if (ch == '_') ch = '-';
  }
  return "--" + key;
}

Window parse_window(const std::string& text) {
  double v[4];
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t end = i < 3 ? text.find(',', pos) : text.size();
    if (end == std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, "window needs re_min,re_max,im_min,im_max");
    }
    v[i] = to_number<double>("window", text.substr(pos, end - pos));
    pos = end + 1;
  }
  return make_window(v[0], v[1], v[2], v[3]);
}

std::optional<Window> optional_window(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_window(text);
}

void write_json(const fs::path& path, const json& doc) { write_file_atomic(path, doc.dump(2) + "\n"); }

class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), opts_(cfg.eval_options()), out_(out), err_(err) {}

  fs::path cache_path() const { return cfg_.cache_dir / table_cache_name(cfg_.step, opts_); }

  ZetaIntegralTable load_cached() const {
    ZetaIntegralTable t = load_table(cache_path());
    if (t.step != cfg_.step || options_hash(t.opts) != options_hash(opts_)) {
      throw Error(ErrorKind::VersionMismatch, "cached table was built with other settings; rebuild it");
    }
    return t;
  }

  // Cached table if it reaches `needed`, otherwise an in-memory continuation. The cache
  // file itself is left alone.
  ZetaIntegralTable table_for(double needed) const {
    const double height = std::ceil(needed / 100.0) * 100.0;
    if (fs::exists(cache_path())) {
      ZetaIntegralTable t = load_cached();
      if (t.t_max() >= needed) return t;
      err_ << "note: cached table ends at " << t.t_max() << ", extending to " << height
           << " in memory (run `table` to persist)\n";
      extend_table(t, std::min(height, opts_.height_cap), cfg_.threads);
      return t;
    }
    err_ << "note: no cached table at " << cache_path().string() << ", building to " << height
         << " in memory\n";
    return build_table(std::min(height, opts_.height_cap), cfg_.step, opts_, cfg_.threads);
  }

  double alpha_height(double U, long L) const {
    return required_table_height(kPi * static_cast<double>(L) + U, 1);
  }

  TracerConfig tracer() const {
    TracerConfig t;
    t.grid_step = cfg_.grid_step;
    t.point_tol = cfg_.point_tol;
    t.zeta_window = optional_window(cfg_.zeta_window);
    t.partner_window = optional_window(cfg_.partner_window);
    t.opts = opts_;
    return t;
  }

  const RunConfig& cfg() const { return cfg_; }
  const EvalOptions& opts() const { return opts_; }
  std::ostream& out() { return out_; }

 private:
  RunConfig cfg_;
  EvalOptions opts_;
  std::ostream& out_;
  std::ostream& err_;
};

int cmd_table(Session& s) {
  const auto& cfg = s.cfg();
  const fs::path path = s.cache_path();
  ZetaIntegralTable t;
  bool changed = true;
  if (fs::exists(path)) {
    t = s.load_cached();
    if (t.t_max() < cfg.t_max) {
      extend_table(t, cfg.t_max, cfg.threads);
    } else {
      changed = false;
    }
  } else {
    t = build_table(cfg.t_max, cfg.step, s.opts(), cfg.threads);
  }
  if (changed) save_table(t, path);
  s.out() << "table: nodes=" << t.size() << " t_max=" << format_double(t.t_max())
          << " V=" << format_double(t.values[t.size() - 1]) << " est_error=" << format_double(t.est_error)
          << (changed ? " written " : " unchanged ") << path.string() << "\n";
  return 0;
}

int cmd_ladder(Session& s, const std::vector<double>& Ts, std::optional<double> U, int k) {
  double top = 0.0;
  for (double T : Ts) top = std::max(top, T);
  const ZetaIntegralTable table = s.table_for(required_table_height(top + U.value_or(0.0), std::max(k, 1)));
  const LadderConfig lc = s.cfg().ladder_config();
  json rows = json::array();
  for (double T : Ts) {
    json row = {{"T", T},
                {"phi1", phi1(T, table, lc)},
                {"phi1_inverse", phi1_inverse(T, table, lc)},
                {"complement_ratio", complement_ratio(T, table, lc)}};
    if (U) row["disconnected_set"] = to_json(reverse_iterate_segment(T, *U, k, table, lc));
    rows.push_back(row);
  }
  const fs::path path = s.cfg().out_dir / "ladder.json";
  write_json(path, {{"rows", rows}});
  s.out() << "ladder: " << Ts.size() << " heights, complement_ratio(" << format_double(Ts.back())
          << ")=" << format_double(rows.back()["complement_ratio"].get<double>()) << " -> " << path.string() << "\n";
  return 0;
}

int cmd_alphas(Session& s, double U, long L) {
  const ZetaIntegralTable table = s.table_for(s.alpha_height(U, L));
  const AlphaSet a = compute_alphas(U, L, s.cfg().weight_mode, table, s.cfg().ladder_config());
  const fs::path path = s.cfg().out_dir / "alphas.json";
  write_json(path, to_json(a));
  s.out() << "alphas: L=" << L << " U=" << format_double(U) << " d=" << format_double(a.d[0]) << ","
          << format_double(a.d[1]) << "," << format_double(a.d[2]) << " -> " << path.string() << "\n";
  return 0;
}

int cmd_verify_mother(Session& s, double U, const std::vector<long>& Ls) {
  long top = 0;
  for (long L : Ls) top = std::max(top, L);
  const ZetaIntegralTable table = s.table_for(s.alpha_height(U, top));
  const LadderConfig lc = s.cfg().ladder_config();
  json reports = json::array();
  std::string csv = "L,U,A1,A2,A3,residual,rel_residual,residual_over_a2,factor\n";
  std::string rels;
  for (long L : Ls) {
    const AlphaSet a = compute_alphas(U, L, s.cfg().weight_mode, table, lc);
    const MotherReport r = mother_residual(a, s.opts());
    reports.push_back({{"alphas", to_json(a)}, {"report", to_json(r)}});
    csv += std::to_string(L) + "," + format_double(U) + "," + format_double(r.terms[0]) + "," +
           format_double(r.terms[1]) + "," + format_double(r.terms[2]) + "," + format_double(r.residual) + "," +
           format_double(r.rel_residual) + "," + format_double(r.residual_over_a2) + "," +
           format_double(r.factor) + "\n";
    rels += (rels.empty() ? "" : ",") + format_double(r.rel_residual);
  }
  const fs::path dir = s.cfg().out_dir;
  write_json(dir / "mother.json", {{"weight_mode", to_string(s.cfg().weight_mode)}, {"reports", reports}});
  write_file_atomic(dir / "mother.csv", csv);
  s.out() << "verify-mother: " << Ls.size() << " reports, rel_residual=" << rels << " -> "
          << (dir / "mother.json").string() << "\n";
  return 0;
}

int cmd_trace(Session& s, const std::string& function, double level, const std::string& window_text,
              bool expand, const std::string& name) {
  const FunctionId f = parse_function(function);
  if (!(level > 0.0)) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  const double radius = std::max(2.0 * s.cfg().grid_step, kPoleExclusionRadius);
  Window w = window_text.empty() ? default_window(f, s.cfg().grid_step)
                                 : punch_singularities(f, parse_window(window_text), radius);
  if (expand) w = attainability_search(f, level, w, {}, s.opts());
  const LevelCurve curve = trace(f, level, w, s.cfg().grid_step, s.cfg().point_tol, s.opts());
  const fs::path dir = s.cfg().out_dir;
  write_file_atomic(dir / (name + ".csv"), curve_csv(curve, s.opts()));
  write_json(dir / (name + ".json"), curve_manifest(curve, name + ".csv"));
  s.out() << "trace: " << function_name(f) << " c=" << format_double(level) << " polylines=" << curve.polylines.size()
          << " closed=" << curve.closed_count() << " vertices=" << curve.vertex_count()
          << " max_error=" << format_double(max_vertex_error(curve, s.opts())) << " -> "
          << (dir / (name + ".csv")).string() << "\n";
  return 0;
}

json curve_bundle(const TransmutationCurves& curves, const fs::path& dir, const EvalOptions& opts) {
  json out = json::array();
  for (int l = 0; l < 3; ++l) {
    for (const auto* role : {"zeta", "partner"}) {
      const LevelCurve& c = std::string(role) == "zeta" ? curves.zeta_curves[l] : curves.partner_curves[l];
      const std::string file = std::string("curves/") + role + "-" + std::to_string(l + 1) + ".csv";
      write_file_atomic(dir / file, curve_csv(c, opts));
      json m = curve_manifest(c, file);
      m["role"] = role;
      m["term"] = l + 1;
      out.push_back(m);
    }
  }
  return out;
}

json bundle_head(const TransmutationCurves& curves) {
  return {{"kind", to_string(curves.kind)},
          {"alphas", to_json(curves.alphas)},
          {"targets", to_json(curves.targets)},
          {"zeta_levels", json::array({curves.zeta_levels[0], curves.zeta_levels[1], curves.zeta_levels[2]})},
          {"mother", to_json(curves.mother)},
          {"grid_step", curves.config.grid_step},
          {"point_tol", curves.config.point_tol}};
}

int cmd_transmute(Session& s, const std::string& kind_text, double U, long L, int samples, bool invariance) {
  const TransmutationKind kind = parse_transmutation_kind(kind_text);
  const ZetaIntegralTable table = s.table_for(s.alpha_height(U, L));
  const AlphaSet a = compute_alphas(U, L, s.cfg().weight_mode, table, s.cfg().ladder_config());
  const TransmutationCurves curves = trace_transmutation(kind, a, s.tracer());
  const fs::path dir = s.cfg().out_dir / (invariance ? "invariance" : "transmute");

  json doc = bundle_head(curves);
  doc["curves"] = curve_bundle(curves, dir, s.opts());
  doc["seed"] = s.cfg().seed;
  double ratio = 0.0;
  if (invariance) {
    const InvarianceResult inv = residual_invariance(curves, samples, s.cfg().seed);
    json reps = json::array();
    for (const auto& r : inv.reports) reps.push_back(to_json(r));
    doc["samples"] = inv.samples;
    doc["max_delta"] = inv.max_delta;
    doc["max_budget"] = inv.max_budget;
    doc["max_ratio"] = inv.max_ratio;
    doc["reports"] = reps;
    ratio = inv.max_ratio;
    write_json(dir / "invariance.json", doc);
    s.out() << "invariance: " << to_string(kind) << " L=" << L << " samples=" << samples
            << " max_delta=" << format_double(inv.max_delta) << " max_ratio=" << format_double(inv.max_ratio)
            << " -> " << (dir / "invariance.json").string() << "\n";
  } else {
    const TransmutationReport r = sample_transmutation(curves, s.cfg().seed, 0);
    doc["report"] = to_json(r);
    ratio = r.delta / r.budget;
    write_json(dir / "transmute.json", doc);
    s.out() << "transmute: " << to_string(kind) << " L=" << L << " residual=" << format_double(r.residual)
            << " delta=" << format_double(r.delta) << " budget=" << format_double(r.budget) << " -> "
            << (dir / "transmute.json").string() << "\n";
  }
  if (ratio > 10.0) {
    throw Error(ErrorKind::InvariantViolation, "transmuted residual departs from the mother residual beyond 10x budget");
  }
  return 0;
}

}  // namespace

EvalOptions RunConfig::eval_options() const {
  EvalOptions o;
  o.height_cap = height_cap;
  o.target_abs_error = target_abs_error;
  return o;
}

LadderConfig RunConfig::ladder_config() const {
  LadderConfig c;
  c.c0 = c0;
  c.invert_tol = invert_tol;
  c.t0 = t0;
  return c;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "height_cap") cfg.height_cap = to_number<double>(key, value);
  else if (key == "target_abs_error") cfg.target_abs_error = to_number<double>(key, value);
  else if (key == "step") cfg.step = to_number<double>(key, value);
  else if (key == "t_max") cfg.t_max = to_number<double>(key, value);
  else if (key == "invert_tol") cfg.invert_tol = to_number<double>(key, value);
  else if (key == "t0") cfg.t0 = to_number<double>(key, value);
  else if (key == "c0") cfg.c0 = to_number<double>(key, value);
  else if (key == "point_tol") cfg.point_tol = to_number<double>(key, value);
  else if (key == "grid_step") cfg.grid_step = to_number<double>(key, value);
  else if (key == "weight_mode") cfg.weight_mode = parse_weight_mode(value);
  else if (key == "zeta_window") cfg.zeta_window = value;
  else if (key == "partner_window") cfg.partner_window = value;
  else if (key == "seed") cfg.seed = to_number<std::uint64_t>(key, value);
  else if (key == "threads") cfg.threads = to_number<unsigned>(key, value);
  else if (key == "cache_dir") cfg.cache_dir = value;
  else if (key == "out_dir") cfg.out_dir = value;
  else throw Error(ErrorKind::InvalidArgument, "unknown setting '" + key + "'");
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, "config line " + std::to_string(number) + " has no '='");
    }
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void validate(const RunConfig& cfg) {
  for (double v : {cfg.height_cap, cfg.target_abs_error, cfg.step, cfg.t_max, cfg.invert_tol, cfg.t0,
                   cfg.point_tol, cfg.grid_step}) {
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerances, steps and heights must be positive");
  }
  if (cfg.step > kMaxTableStep) throw Error(ErrorKind::StepTooCoarse, "quadrature step above 0.1");
  optional_window(cfg.zeta_window);
  optional_window(cfg.partner_window);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InadmissibleU:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::ModulusOutOfRange:
    case ErrorKind::StepTooCoarse:
      return 1;
    case ErrorKind::InvariantViolation:
      return 3;
    default:
      return 2;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacob's ladder, mean-value points, level curves and transmutations"};
  app.name("jladder");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "flat key = value settings file");
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  for (const auto& key : setting_keys()) {
    flag_options[key] = app.add_option(flag_name(key), flag_values[key], "setting " + key);
  }

  auto* table = app.add_subcommand("table", "build or extend the cached V(t) table");

  auto* ladder = app.add_subcommand("ladder", "phi1, its inverse and disconnected sets");
  std::vector<double> ladder_T;
  std::optional<double> ladder_U;
  int ladder_k = 1;
  ladder->add_option("--T", ladder_T, "heights")->required()->delimiter(',');
  ladder->add_option("--U", ladder_U, "segment length for the disconnected set");
  ladder->add_option("--k", ladder_k, "number of reverse iterates");

  double U = 0.5;
  long L = 1000;
  auto* alphas = app.add_subcommand("alphas", "mean-value points for one (U, L)");
  alphas->add_option("--U", U);
  alphas->add_option("--L", L);

  auto* mother = app.add_subcommand("verify-mother", "mother-formula residual over an L grid");
  std::vector<long> L_grid = {100, 300, 1000};
  mother->add_option("--U", U);
  mother->add_option("--L-grid", L_grid)->delimiter(',');

  auto* trace_cmd = app.add_subcommand("trace", "trace a level curve |f(s)| = c");
  std::string function;
  double level = 0.0;
  std::string window_text;
  bool expand = false;
  std::string name = "curve";
  trace_cmd->add_option("--function", function)->required();
  trace_cmd->add_option("--level", level)->required();
  trace_cmd->add_option("--window", window_text, "re_min,re_max,im_min,im_max");
  trace_cmd->add_flag("--expand", expand, "grow the window until the level is attained");
  trace_cmd->add_option("--name", name, "output file stem");

  std::string kind_text;
  int samples = 100;
  auto* transmute = app.add_subcommand("transmute", "one transmuted mother formula");
  transmute->add_option("--kind", kind_text)->required();
  transmute->add_option("--U", U);
  transmute->add_option("--L", L);
  auto* invariance = app.add_subcommand("invariance", "transmuted residual over many point choices");
  invariance->add_option("--kind", kind_text)->required();
  invariance->add_option("--U", U);
  invariance->add_option("--L", L);
  invariance->add_option("--samples", samples);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_text(cfg, read_file(config_path));
    if (const char* env = std::getenv(kCacheDirEnv); env != nullptr && *env != '\0') cfg.cache_dir = env;
    for (const auto& key : setting_keys()) {
      if (flag_options[key]->count() > 0) apply_setting(cfg, key, flag_values[key]);
    }
    validate(cfg);
    Session session(cfg, out, err);

    if (table->parsed()) return cmd_table(session);
    if (ladder->parsed()) return cmd_ladder(session, ladder_T, ladder_U, ladder_k);
    if (alphas->parsed()) return cmd_alphas(session, U, L);
    if (mother->parsed()) return cmd_verify_mother(session, U, L_grid);
    if (trace_cmd->parsed()) return cmd_trace(session, function, level, window_text, expand, name);
    if (transmute->parsed()) return cmd_transmute(session, kind_text, U, L, 1, false);
    if (invariance->parsed()) return cmd_transmute(session, kind_text, U, L, samples, true);
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace jladder
