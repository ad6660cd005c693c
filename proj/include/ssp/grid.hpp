#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace ssp {

/// Samples on a uniform periodic grid. Point j sits at x0 + j*dx; the point
/// x0 + n*dx is the periodic image of x0 and is not stored.
struct GridFunction {
  std::vector<double> values;
  double x0 = 0.0;
  double dx = 1.0;

  std::size_t size() const noexcept { return values.size(); }
  double x(std::size_t j) const noexcept { return x0 + static_cast<double>(j) * dx; }
  double length() const noexcept { return static_cast<double>(values.size()) * dx; }
};

/// n distinct points on the periodic interval [x0, x0 + length). Positions are
/// computed as x0 + length*j/n so that dyadic breakpoints land exactly.
GridFunction sample(double x0, double length, std::size_t n, const std::function<double(double)>& f);

/// Grid positions as above, without sampling.
std::vector<double> grid_points(double x0, double length, std::size_t n);

/// Sum of |u_{j+1} - u_j| including the wrap-around pair.
double total_variation(std::span<const double> u);

/// Two columns "x u" per line, 17 significant digits.
void write_snapshot(std::ostream& os, const GridFunction& g);
void write_snapshot(const std::filesystem::path& path, const GridFunction& g);

/// Reads the two-column format back. dx is taken from the first two rows,
/// and a single-row file gets dx = 1. Throws ParseError on malformed lines.
GridFunction read_snapshot(std::istream& is);
GridFunction read_snapshot(const std::filesystem::path& path);

}  // namespace ssp
