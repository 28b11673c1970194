#include "umbilic/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double to_real(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size() && std::isfinite(x)) return x;
  } catch (const std::exception&) {
  }
  fail(line, "expected a real number, got '" + v + "'");
}

int to_int(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used == v.size()) return static_cast<int>(x);
  } catch (const std::exception&) {
  }
  fail(line, "expected an integer, got '" + v + "'");
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::vector<double> ExperimentConfig::t_grid() const {
  if (spacing == GridSpacing::geometric) return geometric_grid(tmin, tmax, tpoints);
  std::vector<double> t(static_cast<std::size_t>(tpoints));
  for (int i = 0; i < tpoints; ++i)
    t[i] = tpoints == 1 ? tmin : tmin + (tmax - tmin) * i / (tpoints - 1);
  return t;
}

PipelineOptions ExperimentConfig::pipeline() const {
  PipelineOptions p;
  p.n = n;
  p.j_max = j_max;
  p.weight = weight;
  p.polar.tolerance = polar_tolerance;
  p.leak_threshold = leak_tolerance;
  return p;
}

void ExperimentConfig::validate() const {
  if (!power_of_two(n) || n < 8) throw ConfigError("grid.n must be a power of two >= 8");
  if (!(tmin > 0.0) || !(tmax <= kTMax) || !(tmin <= tmax))
    throw ConfigError("grid: need 0 < tmin <= tmax <= 0.3");
  if (tpoints < 1) throw ConfigError("grid.tpoints must be positive");
  if (k_max < 1 || m_max < 0 || m_max > FourierTaylorSeries::kDefaultOrder)
    throw ConfigError("truncation: need k_max >= 1 and 0 <= m_max <= 8");
  if (j_max < 2) throw ConfigError("truncation.j_max must be at least 2");
  if (m_moments < 0) throw ConfigError("truncation.m_moments must be non-negative");
  if (!(moment_tolerance > 0.0) || !(obstruction_tolerance > 0.0) || !(leak_tolerance > 0.0) ||
      !(polar_tolerance > 0.0))
    throw ConfigError("tolerances must be positive");
  if (output_dir.empty()) throw ConfigError("output.dir must not be empty");
}

ExperimentConfig parse_config(std::istream& in, const std::string& base_dir) {
  ExperimentConfig cfg;
  std::string section;
  std::string raw;
  int line = 0;

  std::string model_file;
  std::ostringstream inline_model;
  std::vector<int> inline_lines;  // config line of each generated model line
  std::vector<std::string> h_rows;
  std::vector<std::string> g_rows;
  std::vector<int> h_lines;
  std::vector<int> g_lines;
  bool inline_seen = false;

  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') fail(line, "malformed section header");
      section = trim(text.substr(1, text.size() - 2));
      static const char* known[] = {"model", "grid", "truncation", "tolerances", "output",
                                    "pipeline"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known))
        fail(line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (section.empty()) fail(line, "key outside of a section");

    if (section == "model") {
      if (key == "file") {
        model_file = value;
      } else if (key == "A_re" || key == "A_im") {
        inline_seen = true;
        inline_model << key << " = " << value << '\n';
        inline_lines.push_back(line);
      } else if (key == "h") {
        inline_seen = true;
        h_rows.push_back(value);
        h_lines.push_back(line);
      } else if (key == "g") {
        inline_seen = true;
        g_rows.push_back(value);
        g_lines.push_back(line);
      } else {
        fail(line, "unknown key model." + key);
      }
    } else if (section == "grid") {
      if (key == "n") cfg.n = to_int(value, line);
      else if (key == "tmin") cfg.tmin = to_real(value, line);
      else if (key == "tmax") cfg.tmax = to_real(value, line);
      else if (key == "tpoints") cfg.tpoints = to_int(value, line);
      else if (key == "spacing") {
        if (value == "geometric") cfg.spacing = GridSpacing::geometric;
        else if (value == "linear") cfg.spacing = GridSpacing::linear;
        else fail(line, "grid.spacing must be geometric or linear");
      } else fail(line, "unknown key grid." + key);
    } else if (section == "truncation") {
      if (key == "k_max") cfg.k_max = to_int(value, line);
      else if (key == "m_max") cfg.m_max = to_int(value, line);
      else if (key == "j_max") cfg.j_max = to_int(value, line);
      else if (key == "m_moments") cfg.m_moments = to_int(value, line);
      else fail(line, "unknown key truncation." + key);
    } else if (section == "tolerances") {
      const double v = to_real(value, line);
      if (key == "moment") cfg.moment_tolerance = v;
      else if (key == "obstruction") cfg.obstruction_tolerance = v;
      else if (key == "leak") cfg.leak_tolerance = v;
      else if (key == "polar") cfg.polar_tolerance = v;
      else fail(line, "unknown key tolerances." + key);
    } else if (section == "output") {
      if (key == "dir") cfg.output_dir = value;
      else fail(line, "unknown key output." + key);
    } else if (section == "pipeline") {
      if (key == "weight") {
        if (value == "pang") cfg.weight = WeightKind::pang;
        else if (value == "w_balanced") cfg.weight = WeightKind::w_balanced;
        else fail(line, "pipeline.weight must be pang or w_balanced");
      } else if (key == "channel") {
        if (value == "z2") cfg.channel = MomentChannel::z2;
        else if (value == "w1") cfg.channel = MomentChannel::w1;
        else fail(line, "pipeline.channel must be z2 or w1");
      } else fail(line, "unknown key pipeline." + key);
    }
  }

  if (!model_file.empty() && inline_seen)
    throw ConfigError("model: give either file or inline coefficients, not both");
  if (!model_file.empty()) {
    std::filesystem::path p(model_file);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    try {
      cfg.model = load_model_file(p.string());
    } catch (const DomainError& e) {
      throw ConfigError(std::string("model: ") + e.what());
    }
    cfg.model_source = p.string();
  } else if (inline_seen) {
    inline_model << "[h]\n";
    inline_lines.push_back(h_lines.empty() ? line : h_lines.front());
    for (std::size_t i = 0; i < h_rows.size(); ++i) {
      inline_model << h_rows[i] << '\n';
      inline_lines.push_back(h_lines[i]);
    }
    inline_model << "[g]\n";
    inline_lines.push_back(g_lines.empty() ? line : g_lines.front());
    for (std::size_t i = 0; i < g_rows.size(); ++i) {
      inline_model << g_rows[i] << '\n';
      inline_lines.push_back(g_lines[i]);
    }
    std::istringstream model_in(inline_model.str());
    try {
      cfg.model = load_model(model_in);
    } catch (const ModelFormatError& e) {
      const int idx = e.line() - 1;
      const int at = idx >= 0 && idx < static_cast<int>(inline_lines.size()) ? inline_lines[idx]
                                                                               : line;
      const std::string what = e.what();
      const auto colon = what.find(": ");
      throw ModelFormatError(at, colon == std::string::npos ? what : what.substr(colon + 2));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("model: ") + e.what());
    }
    cfg.model_source = "inline";
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(in, dir.empty() ? "." : dir.string());
}

}  // namespace umbilic
