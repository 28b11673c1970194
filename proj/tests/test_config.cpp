#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "umbilic/config.hpp"
#include "umbilic/errors.hpp"

using namespace umbilic;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text, const std::string& base = ".") {
  std::istringstream in(text);
  return parse_config(in, base);
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("umbilic_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(UMBILIC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("defaults and full parse") {
  const ExperimentConfig d = parse("");
  CHECK(d.n == 256);
  CHECK(d.model.is_heisenberg());
  CHECK_NOTHROW(d.validate());

  const ExperimentConfig c = parse(
      "# comment\n"
      "[model]\n"
      "A_re = 0.3\n"
      "A_im = 0.4   # trailing\n"
      "g = 4,3,0,0.1,0\n"
      "g = 3,4,0,0.1,0\n"
      "[grid]\n"
      "n = 128\n"
      "tmin = 0.05\n"
      "tmax = 0.2\n"
      "tpoints = 4\n"
      "spacing = linear\n"
      "[truncation]\n"
      "j_max = 6\n"
      "[tolerances]\n"
      "moment = 1e-11\n"
      "[output]\n"
      "dir = out\n"
      "[pipeline]\n"
      "weight = w_balanced\n"
      "channel = w1\n");
  CHECK(c.model.A() == cplx(0.3, 0.4));
  CHECK(c.model.g().coeff(4, 3, 0) == cplx(0.1));
  CHECK(c.n == 128);
  CHECK(c.j_max == 6);
  CHECK(c.moment_tolerance == 1e-11);
  CHECK(c.output_dir == "out");
  CHECK(c.weight == WeightKind::w_balanced);
  CHECK(c.channel == MomentChannel::w1);
  const auto t = c.t_grid();
  REQUIRE(t.size() == 4);
  CHECK(t[1] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(c.pipeline().n == 128);
}

TEST_CASE("parse errors name the line") {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("[grid]\nn = abc\n").find("line 2") != std::string::npos);
  CHECK(message("[bogus]\n").find("line 1") != std::string::npos);
  CHECK(message("n = 3\n").find("line 1") != std::string::npos);
  CHECK(message("[grid]\nspacing = log\n").find("line 2") != std::string::npos);
  CHECK(message("[model]\nA_re = 1\nA_im = 0\ng = 3,3,0,1,0\n").find("line 4") !=
        std::string::npos);
  CHECK_THROWS_AS(parse("[model]\nfile = m.txt\nA_re = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nfile = /nonexistent/m.txt\n"), ConfigError);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(parse("[grid]\nn = 100\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[grid]\ntmax = 0.5\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[grid]\ntmin = 0\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[truncation]\nj_max = 1\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[truncation]\nm_max = 9\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[tolerances]\npolar = -1\n").validate(), ConfigError);
}

TEST_CASE("model file relative to the config") {
  const fs::path dir = scratch("model_rel");
  write_file(dir / "m.txt", "A_re = 1\nA_im = 0\n");
  write_file(dir / "c.cfg", "[model]\nfile = m.txt\n");
  const ExperimentConfig c = load_config((dir / "c.cfg").string());
  CHECK(c.model.A() == cplx(1.0));
  CHECK_THROWS_AS(load_config((dir / "missing.cfg").string()), ConfigError);
}

TEST_CASE("CLI exit codes") {
  const fs::path dir = scratch("cli_codes");
  CHECK(run_cli("sphere-check --n 64 --tpoints 3 --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "sphere_moments.csv"));

  write_file(dir / "strict.cfg", "[tolerances]\nmoment = 1e-30\n");
  CHECK(run_cli("sphere-check --n 64 --tpoints 2 --config " + (dir / "strict.cfg").string() +
                " --out " + dir.string()) == 1);

  write_file(dir / "bad_model.txt", "A_re = 1\nA_im = 0\n[g]\n3,3,0,1,0\n");
  write_file(dir / "bad.cfg", "[model]\nfile = bad_model.txt\n");
  CHECK(run_cli("obstruction --config " + (dir / "bad.cfg").string() + " --out " +
                dir.string()) == 2);
  CHECK(run_cli("sphere-check --n 100 --out " + dir.string()) == 2);
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("sphere-check --tmax 0.9 --out " + dir.string()) == 2);

  write_file(dir / "wild.cfg", "[model]\nA_re = 1\nA_im = 0\ng = 4,4,0,1e7,0\n");
  CHECK(run_cli("moment-scan --tmax 0.3 --tmin 0.2 --tpoints 2 --n 32 --config " +
                (dir / "wild.cfg").string() + " --out " + dir.string()) == 3);
}

TEST_CASE("CLI runs are deterministic") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  write_file(a / "m.cfg", "[model]\nA_re = 0.3\nA_im = 0.4\n[grid]\nn = 64\ntpoints = 6\n");
  for (const fs::path& d : {a, b})
    REQUIRE(run_cli("moment-scan --config " + (a / "m.cfg").string() + " --out " + d.string()) ==
            0);
  CHECK(read_file(a / "moments.csv") == read_file(b / "moments.csv"));
  CHECK_FALSE(read_file(a / "moments.csv").empty());
}
