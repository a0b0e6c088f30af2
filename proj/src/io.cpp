#include "fujita/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fujita {
namespace {

std::string format_row(std::span<const double> x, double value) {
  std::string row;
  char buf[40];
  for (double c : x) {
    std::snprintf(buf, sizeof buf, "%.17g,", c);
    row += buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g\n", value);
  return row + buf;
}

std::vector<std::vector<double>> parse_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (std::isalpha(static_cast<unsigned char>(line[0]))) continue;  // header
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error(path.string() + ": bad number '" + cell + "'");
      }
    }
    if (width == 0) width = row.size();
    if (row.size() != width || width < 2) throw std::runtime_error(path.string() + ": ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path.string() + ": no data");
  return rows;
}

std::string header(int dim) {
  std::string h;
  for (int a = 1; a <= dim; ++a) h += "x" + std::to_string(a) + ",";
  return h + "value\n";
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const Field& field) {
  const Grid& g = field.grid();
  std::string out = header(g.dim);
  std::array<double, kMaxDim> x{};
  for (std::size_t flat = 0; flat < field.size(); ++flat) {
    const auto idx = g.unflatten(flat);
    for (int a = 0; a < g.dim; ++a) x[static_cast<std::size_t>(a)] = g.coordinate(idx[static_cast<std::size_t>(a)]);
    out += format_row(std::span<const double>(x.data(), static_cast<std::size_t>(g.dim)), field[flat]);
  }
  write_text(path, out);
}

Field read_field_csv(const std::filesystem::path& path) {
  const auto rows = parse_rows(path);
  const int dim = static_cast<int>(rows.front().size()) - 1;
  if (dim < 1 || dim > kMaxDim) throw std::runtime_error(path.string() + ": unsupported dimension");
  std::set<double> axis;
  for (const auto& r : rows) axis.insert(r[static_cast<std::size_t>(dim - 1)]);
  const std::size_t n = axis.size();
  const Grid g = Grid::make(dim, -*axis.begin(), n);
  if (rows.size() != g.size()) throw std::runtime_error(path.string() + ": not a full lattice");
  std::vector<double> values(g.size());
  std::vector<bool> seen(g.size(), false);
  for (const auto& r : rows) {
    std::array<std::size_t, kMaxDim> idx{};
    for (int a = 0; a < dim; ++a) {
      const std::size_t i = g.index_of(r[static_cast<std::size_t>(a)]);
      if (i == Grid::npos) throw std::runtime_error(path.string() + ": point off the lattice");
      idx[static_cast<std::size_t>(a)] = i;
    }
    const std::size_t flat = g.flatten(idx);
    if (seen[flat]) throw std::runtime_error(path.string() + ": duplicate point");
    seen[flat] = true;
    values[flat] = r.back();
  }
  return Field(g, std::move(values));
}

void write_halfspace_csv(const std::filesystem::path& path, const HalfSpaceData& half) {
  const Grid& g = half.grid;
  const std::size_t m = half.normal_points();
  std::string out = header(g.dim);
  std::array<double, kMaxDim> x{};
  for (std::size_t slot = 0; slot < half.values.size(); ++slot) {
    std::size_t rem = slot / m;
    for (int a = g.dim - 2; a >= 0; --a) {
      x[static_cast<std::size_t>(a)] = g.coordinate(rem % g.points);
      rem /= g.points;
    }
    x[static_cast<std::size_t>(g.dim - 1)] = half.normal_coordinate(slot);
    out += format_row(std::span<const double>(x.data(), static_cast<std::size_t>(g.dim)), half.values[slot]);
  }
  write_text(path, out);
}

HalfSpaceData read_halfspace_csv(const std::filesystem::path& path, const Grid& grid) {
  const auto rows = parse_rows(path);
  if (static_cast<int>(rows.front().size()) != grid.dim + 1) {
    throw std::runtime_error(path.string() + ": column count does not match the grid");
  }
  HalfSpaceData half = HalfSpaceData::zeros(grid);
  const std::size_t m = half.normal_points();
  std::vector<bool> seen(half.values.size(), false);
  for (const auto& r : rows) {
    std::size_t tangential = 0;
    for (int a = 0; a + 1 < grid.dim; ++a) {
      const std::size_t i = grid.index_of(r[static_cast<std::size_t>(a)]);
      if (i == Grid::npos) throw std::runtime_error(path.string() + ": point off the lattice");
      tangential = tangential * grid.points + i;
    }
    const std::size_t k = grid.index_of(r[static_cast<std::size_t>(grid.dim - 1)]);
    if (k == Grid::npos || k <= grid.origin_index()) {
      throw std::runtime_error(path.string() + ": x_N must lie on the open upper half-lattice");
    }
    const std::size_t slot = tangential * m + (k - grid.origin_index() - 1);
    seen[slot] = true;
    half.values[slot] = r.back();
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::runtime_error(path.string() + ": missing half-lattice points");
  }
  return half;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  return nlohmann::json::parse(read_text(path));
}

}  // namespace fujita
