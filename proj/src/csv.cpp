#include "aerofuse/csv.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace aerofuse {

namespace {

constexpr const char* kDenseHeader = "mach,alpha,x,y,z,nx,ny,nz,area_weight,cp";
constexpr const char* kSparseHeader = "mach,alpha,x,y,z,nx,ny,nz,area_weight,cp,section_id";

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view token, const std::filesystem::path& path, std::size_t line) {
  double value = 0.0;
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) fail(path, line, "malformed number '" + std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  return in;
}

struct RawRow {
  FlowCondition condition;
  SurfacePoint point;
  double cp = 0.0;
  int section_id = 0;
};

std::vector<RawRow> read_rows(const std::filesystem::path& path, bool with_section_id) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) fail(path, 1, "empty file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const char* expected = with_section_id ? kSparseHeader : kDenseHeader;
  if (line != expected) fail(path, 1, std::string("expected header '") + expected + "'");

  const std::size_t expected_fields = with_section_id ? 11 : 10;
  std::vector<RawRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != expected_fields) fail(path, line_no, "wrong field count");
    RawRow row;
    row.condition.mach = parse_double(fields[0], path, line_no);
    row.condition.alpha = parse_double(fields[1], path, line_no);
    row.point.x = parse_double(fields[2], path, line_no);
    row.point.y = parse_double(fields[3], path, line_no);
    row.point.z = parse_double(fields[4], path, line_no);
    row.point.nx = parse_double(fields[5], path, line_no);
    row.point.ny = parse_double(fields[6], path, line_no);
    row.point.nz = parse_double(fields[7], path, line_no);
    row.point.area_weight = parse_double(fields[8], path, line_no);
    row.cp = parse_double(fields[9], path, line_no);
    if (with_section_id) {
      row.section_id = static_cast<int>(parse_double(fields[10], path, line_no));
    }
    rows.push_back(row);
  }
  if (rows.empty()) fail(path, line_no, "no data rows");
  return rows;
}

void write_point_fields(std::ostream& out, const FlowCondition& c, const SurfacePoint& p) {
  out << format_double(c.mach) << ',' << format_double(c.alpha) << ','
      << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z) << ','
      << format_double(p.nx) << ',' << format_double(p.ny) << ',' << format_double(p.nz) << ','
      << format_double(p.area_weight);
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

void write_dense_csv(const DenseDataset& dense, const std::filesystem::path& path) {
  dense.validate();
  auto out = open_output(path);
  out << kDenseHeader << '\n';
  for (Index j = 0; j < dense.num_conditions(); ++j) {
    for (Index i = 0; i < dense.num_points(); ++i) {
      write_point_fields(out, dense.conditions[static_cast<std::size_t>(j)],
                         dense.grid[static_cast<std::size_t>(i)]);
      out << ',' << format_double(dense.values(i, j)) << '\n';
    }
  }
}

DenseDataset read_dense_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path, /*with_section_id=*/false);

  DenseDataset dense;
  // The first condition's block defines the grid; later blocks must repeat it.
  std::size_t grid_size = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].condition == rows[0].condition)) {
      grid_size = i;
      break;
    }
  }
  if (grid_size == 0) grid_size = rows.size();
  if (rows.size() % grid_size != 0) {
    throw std::runtime_error(path.string() + ": ragged condition blocks");
  }
  const std::size_t num_conditions = rows.size() / grid_size;

  dense.grid.reserve(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) dense.grid.push_back(rows[i].point);
  dense.values.resize(static_cast<Index>(grid_size), static_cast<Index>(num_conditions));
  for (std::size_t j = 0; j < num_conditions; ++j) {
    const std::size_t base = j * grid_size;
    dense.conditions.push_back(rows[base].condition);
    for (std::size_t i = 0; i < grid_size; ++i) {
      const RawRow& row = rows[base + i];
      if (!(row.condition == rows[base].condition) || !(row.point == dense.grid[i])) {
        throw std::runtime_error(path.string() + ": inconsistent grid across conditions");
      }
      dense.values(static_cast<Index>(i), static_cast<Index>(j)) = row.cp;
    }
  }
  dense.validate();
  return dense;
}

void write_sparse_csv(const SparseDataset& sparse, const std::filesystem::path& path) {
  sparse.validate();
  auto out = open_output(path);
  out << kSparseHeader << '\n';
  for (Index j = 0; j < sparse.num_conditions(); ++j) {
    for (Index i = 0; i < sparse.num_sensors(); ++i) {
      write_point_fields(out, sparse.conditions[static_cast<std::size_t>(j)],
                         sparse.sensors[static_cast<std::size_t>(i)]);
      out << ',' << format_double(sparse.values(i, j)) << ','
          << sparse.section_ids[static_cast<std::size_t>(i)] << '\n';
    }
  }
}

SparseDataset read_sparse_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path, /*with_section_id=*/true);

  SparseDataset sparse;
  std::size_t num_sensors = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].condition == rows[0].condition)) {
      num_sensors = i;
      break;
    }
  }
  if (num_sensors == 0) num_sensors = rows.size();
  if (rows.size() % num_sensors != 0) {
    throw std::runtime_error(path.string() + ": ragged condition blocks");
  }
  const std::size_t num_conditions = rows.size() / num_sensors;

  for (std::size_t i = 0; i < num_sensors; ++i) {
    sparse.sensors.push_back(rows[i].point);
    sparse.section_ids.push_back(rows[i].section_id);
  }
  sparse.values.resize(static_cast<Index>(num_sensors), static_cast<Index>(num_conditions));
  for (std::size_t j = 0; j < num_conditions; ++j) {
    const std::size_t base = j * num_sensors;
    sparse.conditions.push_back(rows[base].condition);
    for (std::size_t i = 0; i < num_sensors; ++i) {
      const RawRow& row = rows[base + i];
      if (!(row.condition == rows[base].condition) || !(row.point == sparse.sensors[i]) ||
          row.section_id != sparse.section_ids[i]) {
        throw std::runtime_error(path.string() + ": inconsistent sensors across conditions");
      }
      sparse.values(static_cast<Index>(i), static_cast<Index>(j)) = row.cp;
    }
  }
  sparse.validate();
  return sparse;
}

void write_prediction_csv(const FlowCondition& condition,
                          const std::vector<SurfacePoint>& grid, const Vector& cp,
                          const std::filesystem::path& path) {
  if (cp.size() != static_cast<Index>(grid.size())) {
    throw std::invalid_argument("write_prediction_csv: field length does not match grid");
  }
  auto out = open_output(path);
  out << "mach,alpha,x,y,z,cp_pred\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_double(condition.mach) << ',' << format_double(condition.alpha) << ','
        << format_double(grid[i].x) << ',' << format_double(grid[i].y) << ','
        << format_double(grid[i].z) << ',' << format_double(cp[static_cast<Index>(i)]) << '\n';
  }
}

void write_fused_csv(const std::vector<SurfacePoint>& grid, const Vector& cp_mean,
                     const Vector& cp_var, const std::filesystem::path& path) {
  if (cp_mean.size() != static_cast<Index>(grid.size()) || cp_var.size() != cp_mean.size()) {
    throw std::invalid_argument("write_fused_csv: field length does not match grid");
  }
  auto out = open_output(path);
  out << "x,y,z,cp_mean,cp_var\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_double(grid[i].x) << ',' << format_double(grid[i].y) << ','
        << format_double(grid[i].z) << ',' << format_double(cp_mean[static_cast<Index>(i)]) << ','
        << format_double(cp_var[static_cast<Index>(i)]) << '\n';
  }
}

}  // namespace aerofuse
