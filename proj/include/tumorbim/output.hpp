#pragma once

// CSV emission. Every file is written to a temporary sibling and renamed into
// place, so an interrupted run never leaves a truncated table behind.

#include <filesystem>
#include <string>
#include <vector>

#include "tumorbim/curve.hpp"

namespace tumorbim {

using CsvRow = std::vector<double>;

void write_csv_atomic(const std::filesystem::path& path, const std::string& header,
                      const std::vector<CsvRow>& rows);

/// "interface_000123.csv"
std::string snapshot_name(long step);

/// Columns alpha,x,y,kappa,V.
void write_snapshot(const std::filesystem::path& dir, long step, const Curve& curve,
                    const MarkerCurve& markers, const std::vector<double>& V);

struct DiagnosticsRow {
  double t = 0.0;
  double R_eff = 0.0;
  double area = 0.0;
  double length = 0.0;
  double shape_factor = 0.0;
  double A = 0.0;
  int gmres_nutrient_iters = 0;
  int gmres_stokes_iters = 0;
};

inline constexpr const char* kDiagnosticsHeader =
    "t,R_eff,area,length,shape_factor,A,gmres_nutrient_iters,gmres_stokes_iters";

void write_diagnostics(const std::filesystem::path& path, const std::vector<DiagnosticsRow>& rows);

}  // namespace tumorbim
