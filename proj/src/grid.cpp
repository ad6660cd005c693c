#include "ssp/grid.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "ssp/error.hpp"
#include "text_format.hpp"

namespace ssp {

std::vector<double> grid_points(double x0, double length, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j)
    x[j] = x0 + length * static_cast<double>(j) / static_cast<double>(n);
  return x;
}

GridFunction sample(double x0, double length, std::size_t n, const std::function<double(double)>& f) {
  if (n == 0) throw GridTooSmall("grid needs at least one point");
  if (!(length > 0.0)) throw InvalidParameter("grid length must be positive");
  GridFunction g;
  g.x0 = x0;
  g.dx = length / static_cast<double>(n);
  g.values.resize(n);
  const auto x = grid_points(x0, length, n);
  for (std::size_t j = 0; j < n; ++j) g.values[j] = f(x[j]);
  return g;
}

double total_variation(std::span<const double> u) {
  const std::size_t n = u.size();
  if (n < 2) return 0.0;
  double tv = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) tv += std::abs(u[j + 1] - u[j]);
  return tv + std::abs(u[0] - u[n - 1]);
}

void write_snapshot(std::ostream& os, const GridFunction& g) {
  for (std::size_t j = 0; j < g.size(); ++j)
    os << text::format_number(g.x(j)) << ' ' << text::format_number(g.values[j]) << '\n';
}

void write_snapshot(const std::filesystem::path& path, const GridFunction& g) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_snapshot(os, g);
}

GridFunction read_snapshot(std::istream& is) {
  GridFunction g;
  std::vector<double> xs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<double> cols;
    try {
      cols = text::parse_numbers(body);
    } catch (const ParseError& e) {
      throw ParseError("snapshot line " + std::to_string(lineno) + ": " + e.what());
    }
    if (cols.size() != 2)
      throw ParseError("snapshot line " + std::to_string(lineno) + ": expected 2 columns, got " +
                       std::to_string(cols.size()));
    xs.push_back(cols[0]);
    g.values.push_back(cols[1]);
  }
  if (xs.empty()) throw ParseError("snapshot is empty");
  g.x0 = xs.front();
  g.dx = xs.size() > 1 ? xs[1] - xs[0] : 1.0;
  if (!(g.dx > 0.0)) throw ParseError("snapshot x column is not increasing");
  return g;
}

GridFunction read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  return read_snapshot(is);
}

}  // namespace ssp
