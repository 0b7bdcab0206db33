#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "jladder/cli.hpp"
#include "jladder/io.hpp"

using namespace jladder;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("jladder-test-" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string str(const std::string& sub) const { return (dir / sub).string(); }
};

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fnv1a_hex(const std::string& s) {
  unsigned long long h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

// rewrites a header field and fixes the checksum so only the edit is wrong
std::string edit_header(const std::string& text, const std::string& from, const std::string& to) {
  std::string body = text.substr(0, text.rfind("checksum "));
  body.replace(body.find(from), from.size(), to);
  return body + "checksum " + fnv1a_hex(body) + "\n";
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("config text") {
  RunConfig cfg;
  apply_config_text(cfg, "# header\nstep = 0.025\n  seed=42  # trailing\n\nweight_mode = z2-over-log\nzeta_window = 0,1,10,20\n");
  CHECK(cfg.step == 0.025);
  CHECK(cfg.seed == 42);
  CHECK(cfg.weight_mode == WeightMode::Z2OverLog);
  CHECK(cfg.zeta_window == "0,1,10,20");
  CHECK(kind_of([&] { apply_config_text(cfg, "colour = red"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { apply_config_text(cfg, "step 0.1"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { apply_config_text(cfg, "step = fast"); }) == ErrorKind::InvalidArgument);

  RunConfig bad;
  bad.point_tol = 0;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::InvalidArgument);
  bad = {};
  bad.step = 0.2;
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::StepTooCoarse);
  bad = {};
  bad.zeta_window = "1,0,0,1";
  CHECK(kind_of([&] { validate(bad); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(ErrorKind::InvalidArgument) == 1);
  CHECK(exit_code(ErrorKind::InadmissibleU) == 1);
  CHECK(exit_code(ErrorKind::IndexOutOfRange) == 1);
  CHECK(exit_code(ErrorKind::ModulusOutOfRange) == 1);
  CHECK(exit_code(ErrorKind::StepTooCoarse) == 1);
  CHECK(exit_code(ErrorKind::InvariantViolation) == 3);
  CHECK(exit_code(ErrorKind::CorruptFile) == 2);
  CHECK(exit_code(ErrorKind::HeightCapExceeded) == 2);
  CHECK(exit_code(ErrorKind::LevelNotAttained) == 2);

  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"trace", "--function", "power:1"}).code == 1);
  CHECK(invoke({"alphas", "--U", "2", "--L", "100", "--t-max", "400"}).code == 1);
}

TEST_CASE("settings precedence") {
  Scratch s("precedence");
  const std::string conf = s.str("run.conf");
  write_file_atomic(conf, "t_max = 50\ncache_dir = " + s.str("from-config") + "\n");

  ::unsetenv(kCacheDirEnv);
  auto r = invoke({"--config", conf, "table"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("t_max=50 ") != std::string::npos);
  CHECK(fs::exists(s.dir / "from-config"));

  ::setenv(kCacheDirEnv, s.str("from-env").c_str(), 1);
  r = invoke({"--config", conf, "table", "--t-max", "60"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("t_max=60 ") != std::string::npos);
  CHECK(fs::exists(s.dir / "from-env"));

  r = invoke({"--config", conf, "--cache-dir", s.str("from-flag"), "table"});
  CHECK(r.code == 0);
  CHECK(fs::exists(s.dir / "from-flag"));
  ::unsetenv(kCacheDirEnv);
}

TEST_CASE("trace subcommand") {
  Scratch s("trace");
  auto r = invoke({"trace", "--function", "power:1", "--level", "1", "--window", "-2,2,-2,2", "--out-dir",
                   s.str("out"), "--name", "circle"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("closed=1") != std::string::npos);
  const std::string csv = read_file(s.dir / "out" / "circle.csv");
  CHECK(csv.rfind("polyline,re,im,modulus,error\n", 0) == 0);
  CHECK(fs::exists(s.dir / "out" / "circle.json"));

  r = invoke({"trace", "--function", "power:1", "--level", "1", "--window", "0,0,-1,1", "--out-dir", s.str("out")});
  CHECK(r.code == 1);
  CHECK(r.err.find("error: ") == 0);
  r = invoke({"trace", "--function", "power:1", "--level", "5", "--window", "-2,2,-2,2", "--out-dir", s.str("out")});
  CHECK(r.code == 2);
  r = invoke({"trace", "--function", "power:1", "--level", "5", "--window", "-2,2,-2,2", "--expand", "--out-dir",
              s.str("out")});
  CHECK(r.code == 0);
  r = invoke({"trace", "--function", "sn:1.5", "--level", "1"});
  CHECK(r.code == 1);
}

TEST_CASE("table cache round trip") {
  Scratch s("cache");
  const auto table = build_table(400.0, 0.05, RunConfig{}.eval_options());
  const fs::path path = s.dir / table_cache_name(0.05, table.opts);
  save_table(table, path);
  const auto back = load_table(path);
  CHECK(back.step == table.step);
  CHECK(back.est_error == table.est_error);
  REQUIRE(back.size() == table.size());
  bool identical = true;
  for (Eigen::Index i = 0; i < table.size(); ++i) identical = identical && back.values[i] == table.values[i];
  CHECK(identical);
  CHECK(serialize_table(back) == read_file(path));

  const std::string text = read_file(path);
  CHECK(kind_of([&] { parse_table(text.substr(0, text.size() / 2)); }) == ErrorKind::CorruptFile);
  std::string flipped = text;
  flipped[text.size() / 2] = flipped[text.size() / 2] == '1' ? '2' : '1';
  CHECK(kind_of([&] { parse_table(flipped); }) == ErrorKind::CorruptFile);
  CHECK(kind_of([&] { parse_table(edit_header(text, "version 1", "version 0")); }) == ErrorKind::VersionMismatch);
  CHECK(kind_of([&] { parse_table(edit_header(text, "t_max 400", "t_max 300")); }) == ErrorKind::CorruptFile);
  CHECK(kind_of([&] { load_table(s.dir / "missing.txt"); }) == ErrorKind::Io);

  // a truncated cache makes a consuming subcommand fail with a numerical exit
  write_file_atomic(path, text.substr(0, text.size() - 40));
  auto r = invoke({"alphas", "--U", "0.5", "--L", "100", "--cache-dir", s.str(""), "--out-dir", s.str("out")});
  CHECK(r.code == 2);
  CHECK(r.err.find("CorruptFile") != std::string::npos);
}

TEST_CASE("repeated runs are byte identical") {
  Scratch s("determinism");
  std::vector<std::string> base = {"--cache-dir", s.str("cache"), "--t-max", "600"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return invoke(args);
  };
  REQUIRE(with({"table"}).code == 0);
  const std::string cached = read_file(s.dir / "cache" / table_cache_name(0.05, RunConfig{}.eval_options()));
  auto again = with({"table"});
  CHECK(again.out.find("unchanged") != std::string::npos);
  CHECK(read_file(s.dir / "cache" / table_cache_name(0.05, RunConfig{}.eval_options())) == cached);

  for (const char* out : {"a", "b"}) {
    REQUIRE(with({"--out-dir", s.str(out), "alphas", "--U", "0.5", "--L", "100"}).code == 0);
    REQUIRE(with({"--out-dir", s.str(out), "verify-mother", "--U", "0.5", "--L-grid", "100,150"}).code == 0);
    REQUIRE(with({"--out-dir", s.str(out), "--seed", "9", "transmute", "--kind", "power:1,2,1", "--U", "0.5", "--L",
                  "100", "--grid-step", "0.05"})
                .code == 0);
  }
  for (const char* file : {"alphas.json", "mother.json", "mother.csv", "transmute/transmute.json",
                           "transmute/curves/zeta-1.csv", "transmute/curves/partner-3.csv"}) {
    CHECK_MESSAGE(read_file(s.dir / "a" / file) == read_file(s.dir / "b" / file), file);
  }
}
