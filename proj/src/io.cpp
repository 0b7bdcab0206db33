#include "jladder/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "jladder/error.hpp"

namespace jladder {
namespace {

using nlohmann::json;

unsigned long long fnv1a(const char* data, std::size_t n) {
  unsigned long long h = 14695981039346656037ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(unsigned long long v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", v);
  return buf;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::CorruptFile, std::string("unreadable ") + what + " in table file");
  }
  return v;
}

json complex_json(Complex s) { return json::array({s.real(), s.imag()}); }

template <typename T>
json arr3(const std::array<T, 3>& a) {
  return json::array({a[0], a[1], a[2]});
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string table_cache_name(double step, const EvalOptions& opts) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, step);
  return "vtable-step" + std::string(buf, res.ptr) + "-" + hex(options_hash(opts)) + ".txt";
}

std::string serialize_table(const ZetaIntegralTable& table) {
  std::string body;
  body.reserve(static_cast<std::size_t>(table.size()) * 44 + 512);
  auto line = [&body](const std::string& key, const std::string& value) { body += key + " " + value + "\n"; };
  body += "jladder-vtable\n";
  line("version", std::to_string(kTableFormatVersion));
  line("step", format_double(table.step));
  line("nodes", std::to_string(table.size()));
  line("t_max", format_double(table.t_max()));
  line("est_error", format_double(table.est_error));
  line("target_abs_error", format_double(table.opts.target_abs_error));
  line("max_series_terms", std::to_string(table.opts.max_series_terms));
  line("height_cap", format_double(table.opts.height_cap));
  line("rs_min_height", format_double(table.opts.rs_min_height));
  line("options_hash", hex(options_hash(table.opts)));
  body += "data\n";
  for (Eigen::Index i = 0; i < table.size(); ++i) {
    body += format_double(table.node(i));
    body += ' ';
    body += format_double(table.values[i]);
    body += '\n';
  }
  return body + "checksum " + hex(fnv1a(body.data(), body.size())) + "\n";
}

ZetaIntegralTable parse_table(const std::string& text) {
  const auto trailer = text.rfind("checksum ");
  if (trailer == std::string::npos || (trailer > 0 && text[trailer - 1] != '\n')) {
    throw Error(ErrorKind::CorruptFile, "table file has no checksum trailer (truncated?)");
  }
  std::string stored = text.substr(trailer + 9);
  while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r')) stored.pop_back();
  if (stored != hex(fnv1a(text.data(), trailer))) {
    throw Error(ErrorKind::CorruptFile, "table file checksum mismatch");
  }

  std::istringstream in(text.substr(0, trailer));
  std::string magic;
  std::getline(in, magic);
  if (magic != "jladder-vtable") throw Error(ErrorKind::CorruptFile, "not a table file");

  ZetaIntegralTable t;
  long long nodes = -1;
  double stored_t_max = -1.0;
  std::string key;
  std::string value;
  while (in >> key && key != "data") {
    in >> value;
    if (key == "version") {
      const int v = parse_number<int>(value, "version");
      if (v != kTableFormatVersion) {
        throw Error(ErrorKind::VersionMismatch, "table file version " + value + " is not " +
                                                    std::to_string(kTableFormatVersion) +
                                                    "; rebuild it with the table subcommand");
      }
    } else if (key == "step") {
      t.step = parse_number<double>(value, "step");
    } else if (key == "nodes") {
      nodes = parse_number<long long>(value, "nodes");
    } else if (key == "t_max") {
      stored_t_max = parse_number<double>(value, "t_max");
    } else if (key == "est_error") {
      t.est_error = parse_number<double>(value, "est_error");
    } else if (key == "target_abs_error") {
      t.opts.target_abs_error = parse_number<double>(value, key.c_str());
    } else if (key == "max_series_terms") {
      t.opts.max_series_terms = parse_number<int>(value, key.c_str());
    } else if (key == "height_cap") {
      t.opts.height_cap = parse_number<double>(value, key.c_str());
    } else if (key == "rs_min_height") {
      t.opts.rs_min_height = parse_number<double>(value, key.c_str());
    } else if (key == "options_hash") {
      if (value != hex(options_hash(t.opts))) {
        throw Error(ErrorKind::CorruptFile, "options hash does not match the stored options");
      }
    }
  }
  if (key != "data" || nodes < 2) throw Error(ErrorKind::CorruptFile, "table header incomplete");
  t.values.resize(nodes);
  std::string ts;
  std::string vs;
  for (long long i = 0; i < nodes; ++i) {
    if (!(in >> ts >> vs)) throw Error(ErrorKind::CorruptFile, "table has fewer records than declared");
    t.values[i] = parse_number<double>(vs, "value");
    if (parse_number<double>(ts, "node") != t.node(i)) {
      throw Error(ErrorKind::CorruptFile, "table node off the grid");
    }
  }
  if (in >> ts) throw Error(ErrorKind::CorruptFile, "table has more records than declared");
  if (stored_t_max != t.t_max()) throw Error(ErrorKind::CorruptFile, "header t_max disagrees with the records");
  return t;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename into " + path.string() + ": " + ec.message());
}

void save_table(const ZetaIntegralTable& table, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_table(table));
}

ZetaIntegralTable load_table(const std::filesystem::path& path) { return parse_table(read_file(path)); }

std::string curve_csv(const LevelCurve& curve, const EvalOptions& opts) {
  std::string out = "polyline,re,im,modulus,error\n";
  for (std::size_t k = 0; k < curve.polylines.size(); ++k) {
    for (const auto& v : curve.polylines[k].vertices) {
      const double m = eval_modulus(curve.function, v.s, opts);
      out += std::to_string(k) + "," + format_double(v.s.real()) + "," + format_double(v.s.imag()) + "," +
             format_double(m) + "," + format_double(std::abs(m - curve.c)) + "\n";
    }
  }
  return out;
}

json to_json(const Window& w) {
  json holes = json::array();
  for (const auto& h : w.holes) holes.push_back({{"center", complex_json(h.center)}, {"radius", h.radius}});
  return {{"re_min", w.re_min}, {"re_max", w.re_max}, {"im_min", w.im_min}, {"im_max", w.im_max}, {"holes", holes}};
}

json curve_manifest(const LevelCurve& curve, const std::string& csv_path) {
  json closed = json::array();
  for (const auto& p : curve.polylines) closed.push_back(p.closed);
  return {{"function", function_name(curve.function)},
          {"c", curve.c},
          {"window", to_json(curve.window)},
          {"grid_step", curve.grid_step},
          {"point_tol", curve.point_tol},
          {"polylines", curve.polylines.size()},
          {"vertices", curve.vertex_count()},
          {"closed_flags", closed},
          {"csv", csv_path}};
}

json to_json(const AlphaSet& a) {
  return {{"U", a.U},
          {"L", a.L},
          {"weight_mode", to_string(a.weight_mode)},
          {"iterate", json::array({a.iterate.lo, a.iterate.hi})},
          {"d", arr3(a.d)},
          {"alpha0", arr3(a.alpha0)},
          {"alpha1", arr3(a.alpha1)}};
}

json to_json(const MotherReport& r) {
  return {{"L", r.L},
          {"U", r.U},
          {"A1", r.terms[0]},
          {"A2", r.terms[1]},
          {"A3", r.terms[2]},
          {"residual", r.residual},
          {"rel_residual", r.rel_residual},
          {"residual_over_a2", r.residual_over_a2},
          {"factor", r.factor}};
}

json to_json(const DisconnectedSet& ds) {
  json comps = json::array();
  for (const auto& c : ds.components) comps.push_back(json::array({c.lo, c.hi}));
  json dist = json::array();
  for (int r = 1; r <= ds.k; ++r) dist.push_back(component_distance(ds, r));
  return {{"T", ds.T}, {"U", ds.U}, {"k", ds.k}, {"components", comps}, {"distances", dist}};
}

json to_json(const TargetValues& t) { return {{"c1", t.c1}, {"c2", t.c2}, {"c3", t.c3}}; }

json to_json(const CurvePoint& p) { return {{"s", complex_json(p.s)}, {"achieved_error", p.achieved_error}}; }

json to_json(const TransmutationReport& r) {
  json zp = json::array();
  json pp = json::array();
  for (int l = 0; l < 3; ++l) {
    zp.push_back(to_json(r.zeta_points[l]));
    pp.push_back(to_json(r.partner_points[l]));
  }
  json out = {{"kind", to_string(r.kind)},
              {"zeta_points", zp},
              {"partner_points", pp},
              {"zeta_moduli", arr3(r.zeta_moduli)},
              {"partner_moduli", arr3(r.partner_moduli)},
              {"B1", r.terms[0]},
              {"B2", r.terms[1]},
              {"B3", r.terms[2]},
              {"residual", r.residual},
              {"mother_residual", r.mother_residual},
              {"delta", r.delta},
              {"budget", r.budget}};
  out["sign_consistent"] = r.sign_consistent ? json(*r.sign_consistent) : json(nullptr);
  return out;
}

}  // namespace jladder
