#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "umbilic/errors.hpp"
#include "umbilic/hypersurface.hpp"

namespace umbilic {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ModelFormatError(line, "expected a real number, got '" + text + "'");
}

struct Row {
  cplx c;
  int line;
};

using RowMap = std::map<HermitianSeries::Key, Row>;

void parse_row(const std::string& text, int line, RowMap& rows) {
  std::string buf = text;
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::istringstream in(buf);
  int a = 0;
  int b = 0;
  int m = 0;
  std::string re;
  std::string im;
  std::string extra;
  if (!(in >> a >> b >> m >> re >> im) || (in >> extra))
    throw ModelFormatError(line, "expected a coefficient row 'a,b,m,re,im'");
  if (a < 0 || b < 0 || m < 0) throw ModelFormatError(line, "negative exponent");
  const HermitianSeries::Key key{a, b, m};
  if (rows.count(key)) throw ModelFormatError(line, "duplicate coefficient row");
  rows[key] = {{parse_real(re, line), parse_real(im, line)}, line};
}

void check_pairs(const RowMap& rows, const char* name) {
  for (const auto& [key, row] : rows) {
    const auto [a, b, m] = key;
    const auto partner = rows.find({b, a, m});
    if (partner == rows.end())
      throw ModelFormatError(row.line, std::string(name) + ": missing conjugate row for (" +
                                           std::to_string(b) + "," + std::to_string(a) + "," +
                                           std::to_string(m) + ")");
    const double tol = 1e-14 * (1.0 + std::abs(row.c));
    if (std::abs(partner->second.c - std::conj(row.c)) > tol)
      throw ModelFormatError(std::max(row.line, partner->second.line),
                             std::string(name) + ": coefficient is not the conjugate of its pair");
  }
}

HermitianSeries to_series(const RowMap& rows, int min_degree) {
  HermitianSeries s(min_degree);
  for (const auto& [key, row] : rows) s.add_term(key[0], key[1], key[2], row.c);
  return s;
}

}  // namespace

PreparedDefiningFunction load_model(std::istream& in) {
  enum class Section { scalars, h, g } section = Section::scalars;
  std::optional<double> a_re;
  std::optional<double> a_im;
  RowMap h_rows;
  RowMap g_rows;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    if (text == "[h]") {
      section = Section::h;
      continue;
    }
    if (text == "[g]") {
      section = Section::g;
      continue;
    }
    if (text.front() == '[') throw ModelFormatError(line, "unknown section " + text);
    if (section == Section::scalars) {
      const auto eq = text.find('=');
      if (eq == std::string::npos) throw ModelFormatError(line, "expected 'key = value'");
      const std::string key = trim(text.substr(0, eq));
      const double v = parse_real(trim(text.substr(eq + 1)), line);
      if (key == "A_re") {
        a_re = v;
      } else if (key == "A_im") {
        a_im = v;
      } else {
        throw ModelFormatError(line, "unknown key '" + key + "'");
      }
      continue;
    }
    RowMap& rows = section == Section::h ? h_rows : g_rows;
    parse_row(text, line, rows);
  }
  if (!a_re || !a_im) throw ModelFormatError(line + 1, "A_re and A_im are required");

  for (const auto& [key, row] : g_rows) {
    if (key[2] != 0) throw ModelFormatError(row.line, "g rows must have m = 0");
    if (key[0] + key[1] < PreparedDefiningFunction::kMinDegreeG)
      throw ModelFormatError(row.line, "g must be O(|z|^7): degree a+b < 7");
  }
  for (const auto& [key, row] : h_rows)
    if (key[2] == 0 && key[0] + key[1] < PreparedDefiningFunction::kMinDegreeH)
      throw ModelFormatError(row.line, "h(z, zbar, 0) must be O(|z|^6): degree a+b < 6");
  check_pairs(h_rows, "h");
  check_pairs(g_rows, "g");

  return {cplx(*a_re, *a_im), to_series(h_rows, 0),
          to_series(g_rows, PreparedDefiningFunction::kMinDegreeG)};
}

PreparedDefiningFunction load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file '" + path + "'");
  return load_model(in);
}

void write_model(std::ostream& out, const PreparedDefiningFunction& f) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "A_re = " << f.A().real() << "\nA_im = " << f.A().imag() << '\n';
  auto rows = [&](const HermitianSeries& s) {
    for (const auto& [key, c] : s.terms())
      out << key[0] << ',' << key[1] << ',' << key[2] << ',' << c.real() << ',' << c.imag() << '\n';
  };
  out << "[h]\n";
  rows(f.h());
  out << "[g]\n";
  rows(f.g());
  out.precision(old);
}

}  // namespace umbilic
