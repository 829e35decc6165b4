#include "contactgeom/samples_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "contactgeom/errors.hpp"

namespace contactgeom {
namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw GeometryError(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (sep == ' ') {
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
  }
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& tok, int line) {
  double x = 0.0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, x);
  if (ec != std::errc() || ptr != end) parse_error(line, "'" + tok + "' is not a number");
  return x;
}

int to_int(const std::string& tok, int line) {
  int x = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, x);
  if (ec != std::errc() || ptr != end) parse_error(line, "'" + tok + "' is not an integer");
  return x;
}

struct Row {
  double u, v;
  Vec4 p;
  int line;
};

SurfaceGrid build(const GridSpec& spec, const std::vector<Row>& rows, const std::string& label) {
  try {
    spec.validate();
  } catch (const GeometryError& e) {
    parse_error(1, e.what());
  }
  if (rows.size() != spec.size()) {
    parse_error(rows.empty() ? 1 : rows.back().line,
                "expected " + std::to_string(spec.size()) + " samples, found " + std::to_string(rows.size()));
  }
  SurfaceGrid grid;
  grid.spec = spec;
  grid.label = label;
  grid.points.resize(spec.size());
  const double tol = 1e-6 * std::max({1.0, spec.u_range.length(), spec.v_range.length()});
  for (int i = 0; i < spec.nu; ++i) {
    for (int j = 0; j < spec.nv; ++j) {
      const Row& r = rows[spec.index(i, j)];
      if (std::abs(r.u - spec.u(i)) > tol || std::abs(r.v - spec.v(j)) > tol) {
        parse_error(r.line, "parameters do not match node (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      const double norm = r.p.norm();
      if (!std::isfinite(norm) || std::abs(norm - 1.0) > kOffSphereTolerance) {
        throw GeometryError(ErrorKind::OffSphere, "node (" + std::to_string(i) + ", " + std::to_string(j) +
                                                      ") on line " + std::to_string(r.line) + " has norm " +
                                                      std::to_string(norm));
      }
      grid.points[spec.index(i, j)] = UnitSpherePoint::normalized(r.p);
    }
  }
  return grid;
}

SurfaceGrid load_native(std::istream& in, const std::string& header, const std::string& label) {
  const auto h = split(header, ' ');
  if (h.size() != 10 || h[1] != "v1") parse_error(1, "malformed header");
  GridSpec spec;
  spec.nu = to_int(h[2], 1);
  spec.nv = to_int(h[3], 1);
  try {
    spec.topology_u = topology_from_string(h[4]);
    spec.topology_v = topology_from_string(h[5]);
  } catch (const GeometryError& e) {
    parse_error(1, e.what());
  }
  spec.u_range = {to_double(h[6], 1), to_double(h[7], 1)};
  spec.v_range = {to_double(h[8], 1), to_double(h[9], 1)};

  std::vector<Row> rows;
  std::string line;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    const auto tok = split(line, ' ');
    if (tok.empty()) continue;
    if (tok.size() != 6) parse_error(number, "expected 6 columns, found " + std::to_string(tok.size()));
    double x[6];
    for (int c = 0; c < 6; ++c) x[c] = to_double(tok[c], number);
    rows.push_back({x[0], x[1], Vec4(x[2], x[3], x[4], x[5]), number});
  }
  return build(spec, rows, label);
}

/// Axis layout from the distinct sorted parameter values.
void infer_axis(const std::vector<double>& values, int& n, Interval& range, Topology& topo) {
  n = static_cast<int>(values.size());
  if (n < 2) return;
  const double span = values.back() - values.front();
  const double step = span / (n - 1);
  const double two_pi = 2.0 * std::numbers::pi;
  if (std::abs(span + step - two_pi) < 1e-6) {
    topo = Topology::periodic;
    range = {values.front(), values.front() + two_pi};
  } else {
    topo = Topology::chart;
    range = {values.front(), values.back()};
  }
}

SurfaceGrid load_fields_csv(std::istream& in, const std::string& header, const std::string& label) {
  const auto names = split(header, ',');
  std::map<std::string, std::size_t> col;
  for (std::size_t c = 0; c < names.size(); ++c) col[names[c]] = c;
  for (const char* need : {"u", "v", "x1", "y1", "x2", "y2"}) {
    if (!col.count(need)) parse_error(1, std::string("missing column '") + need + "'");
  }
  std::vector<Row> rows;
  std::vector<double> us, vs;
  std::string line;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line == "\r") continue;
    const auto tok = split(line, ',');
    if (tok.size() != names.size()) {
      parse_error(number, "expected " + std::to_string(names.size()) + " columns, found " + std::to_string(tok.size()));
    }
    auto get = [&](const char* k) { return to_double(tok[col[k]], number); };
    rows.push_back({get("u"), get("v"), Vec4(get("x1"), get("y1"), get("x2"), get("y2")), number});
    if (us.empty() || rows.back().u != us.back()) us.push_back(rows.back().u);
    if (us.size() == 1) vs.push_back(rows.back().v);
  }
  GridSpec spec;
  infer_axis(us, spec.nu, spec.u_range, spec.topology_u);
  infer_axis(vs, spec.nv, spec.v_range, spec.topology_v);
  return build(spec, rows, label);
}

}  // namespace

void save_samples(const SurfaceGrid& grid, std::ostream& out) {
  const GridSpec& s = grid.spec;
  char buf[256];
  std::snprintf(buf, sizeof buf, "S3SAMPLES v1 %d %d %s %s %.12e %.12e %.12e %.12e\n", s.nu, s.nv,
                std::string(to_string(s.topology_u)).c_str(), std::string(to_string(s.topology_v)).c_str(),
                s.u_range.lo, s.u_range.hi, s.v_range.lo, s.v_range.hi);
  out << buf;
  for (int i = 0; i < s.nu; ++i) {
    for (int j = 0; j < s.nv; ++j) {
      const Vec4& p = grid.at(i, j).vec();
      std::snprintf(buf, sizeof buf, "%.12e %.12e %.12e %.12e %.12e %.12e\n", s.u(i), s.v(j), p[0], p[1], p[2],
                    p[3]);
      out << buf;
    }
  }
}

void save_samples(const SurfaceGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError(ErrorKind::InvalidArgument, "cannot write " + path.string());
  save_samples(grid, out);
}

SurfaceGrid load_samples(std::istream& in, const std::string& label) {
  std::string header;
  if (!std::getline(in, header)) parse_error(1, "empty input");
  if (header.rfind("S3SAMPLES", 0) == 0) return load_native(in, header, label);
  if (header.rfind("u,v,", 0) == 0) return load_fields_csv(in, header, label);
  parse_error(1, "unrecognized header");
}

SurfaceGrid load_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorKind::ParseError, "cannot open " + path.string());
  return load_samples(in, path.filename().string());
}

}  // namespace contactgeom
