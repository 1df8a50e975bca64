#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "rotqfi/spin_core.hpp"

namespace rotqfi {

// count evenly spaced values from start to stop inclusive; count == 1 pins
// the axis at start.
struct AxisRange {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  static AxisRange fixed(double v) { return {v, v, 1}; }
  double value(int i) const;
  double step() const { return count > 1 ? (stop - start) / (count - 1) : 0.0; }
};

// Row-major over the three angles: the last axis varies fastest.
struct ScanGrid {
  std::array<AxisRange, 3> axes;

  void validate() const;
  std::size_t size() const;
  std::array<double, 3> point(std::size_t index) const;
};

struct ScanRow {
  std::array<double, 3> angles{};
  double det = 0.0;
  double trace = 0.0;
  // Absent where the Fisher matrix is singular.
  std::optional<double> trace_inv;

  double relative_det() const;  // det / (trace/3)^3
};

// Reference implementation, one grid point after another.
std::vector<ScanRow> singularity_scan_serial(const SpinState& state, RotationKind kind, const ScanGrid& grid,
                                             double rel_threshold = 1e-12);

// OpenMP kernel over grid points. Rows come back in grid order and match the
// serial reference exactly. threads <= 0 uses the OpenMP default.
std::vector<ScanRow> singularity_scan(const SpinState& state, RotationKind kind, const ScanGrid& grid,
                                      double rel_threshold = 1e-12, int threads = 0);

struct DetMinimum {
  std::size_t row = 0;
  std::array<double, 3> angles{};
  double det = 0.0;
  double relative_det = 0.0;  // det / (trace/3)^3
};

// Local minima of det along one varying axis (det >= 0, so its zeros show up
// as minima) whose relative determinant is below max_relative_det. Flagged
// singular rows always qualify.
std::vector<DetMinimum> locate_det_minima(const std::vector<ScanRow>& rows, const ScanGrid& grid, int axis,
                                          double max_relative_det = 1e-2);

}  // namespace rotqfi
