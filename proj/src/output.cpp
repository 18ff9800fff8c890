#include "tumorbim/output.hpp"

#include <cstdio>
#include <fstream>

#include "tumorbim/error.hpp"

namespace tumorbim {
namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_csv_atomic(const std::filesystem::path& path, const std::string& header,
                      const std::vector<CsvRow>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << header << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out << ',';
        out << format_value(row[i]);
      }
      out << '\n';
    }
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string snapshot_name(long step) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "interface_%06ld.csv", step);
  return buf;
}

void write_snapshot(const std::filesystem::path& dir, long step, const Curve& curve,
                    const MarkerCurve& markers, const std::vector<double>& V) {
  const std::vector<double> kappa = curvature(curve);
  std::vector<CsvRow> rows;
  rows.reserve(markers.size());
  for (std::size_t j = 0; j < markers.size(); ++j) {
    rows.push_back({grid_alpha(j, markers.size()), markers.points[j].x(), markers.points[j].y(),
                    kappa[j], j < V.size() ? V[j] : 0.0});
  }
  write_csv_atomic(dir / snapshot_name(step), "alpha,x,y,kappa,V", rows);
}

void write_diagnostics(const std::filesystem::path& path,
                       const std::vector<DiagnosticsRow>& rows) {
  std::vector<CsvRow> table;
  table.reserve(rows.size());
  for (const auto& r : rows) {
    table.push_back({r.t, r.R_eff, r.area, r.length, r.shape_factor, r.A,
                     static_cast<double>(r.gmres_nutrient_iters),
                     static_cast<double>(r.gmres_stokes_iters)});
  }
  write_csv_atomic(path, kDiagnosticsHeader, table);
}

}  // namespace tumorbim
