#include "rotqfi/scan.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

#include "rotqfi/errors.hpp"
#include "rotqfi/qfim.hpp"

namespace rotqfi {

namespace {

ScanRow evaluate(const SpinAlgebra& alg, const CVec& psi0, RotationKind kind, const std::array<double, 3>& angles,
                 double rel_threshold) {
  const RotationSpec spec{kind, angles};
  const Mat3 info = qfim_covariance(alg, psi0, spec);
  ScanRow row;
  row.angles = angles;
  row.det = info.determinant();
  row.trace = info.trace();
  if (!is_singular(info, rel_threshold)) row.trace_inv = info.inverse().trace();
  return row;
}

std::array<int, 3> unravel(const ScanGrid& grid, std::size_t index) {
  const auto c1 = static_cast<std::size_t>(grid.axes[1].count);
  const auto c2 = static_cast<std::size_t>(grid.axes[2].count);
  return {static_cast<int>(index / (c1 * c2)), static_cast<int>((index / c2) % c1), static_cast<int>(index % c2)};
}

}  // namespace

double AxisRange::value(int i) const {
  if (count <= 1) return start;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

void ScanGrid::validate() const {
  for (const auto& a : axes) {
    if (a.count < 1) throw InvalidArgument("grid axis needs at least one point");
    if (!std::isfinite(a.start) || !std::isfinite(a.stop)) throw InvalidArgument("grid bounds must be finite");
  }
}

std::size_t ScanGrid::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(std::max(a.count, 0));
  return n;
}

std::array<double, 3> ScanGrid::point(std::size_t index) const {
  const auto ijk = unravel(*this, index);
  return {axes[0].value(ijk[0]), axes[1].value(ijk[1]), axes[2].value(ijk[2])};
}

double ScanRow::relative_det() const {
  const double s = trace / 3.0;
  if (!(s > 0.0)) return 0.0;
  return det / (s * s * s);
}

std::vector<ScanRow> singularity_scan_serial(const SpinState& state, RotationKind kind, const ScanGrid& grid,
                                             double rel_threshold) {
  grid.validate();
  const SpinAlgebra alg(state.n_quanta());
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    rows.push_back(evaluate(alg, state.amplitudes(), kind, grid.point(i), rel_threshold));
  return rows;
}

std::vector<ScanRow> singularity_scan(const SpinState& state, RotationKind kind, const ScanGrid& grid,
                                      double rel_threshold, int threads) {
  grid.validate();
  const SpinAlgebra alg(state.n_quanta());
  const auto total = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<ScanRow> rows(grid.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  // Exceptions cannot cross the parallel region; keep the first one per
  // lowest index so the rethrown error is deterministic.
  std::ptrdiff_t failed_at = total;
  std::string failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] =
          evaluate(alg, state.amplitudes(), kind, grid.point(static_cast<std::size_t>(i)), rel_threshold);
    } catch (const std::exception& e) {
#pragma omp critical(rotqfi_scan_failure)
      if (i < failed_at) {
        failed_at = i;
        failure = e.what();
      }
    }
  }
  if (failed_at < total) throw NumericFailure("scan failed at row " + std::to_string(failed_at) + ": " + failure);
  return rows;
}

std::vector<DetMinimum> locate_det_minima(const std::vector<ScanRow>& rows, const ScanGrid& grid, int axis,
                                          double max_relative_det) {
  if (axis < 0 || axis > 2) throw InvalidArgument("axis must be 0, 1 or 2");
  if (rows.size() != grid.size()) throw InvalidArgument("rows do not match the grid");
  const auto& ax = grid.axes[static_cast<std::size_t>(axis)];
  std::size_t stride = 1;
  for (int a = axis + 1; a < 3; ++a) stride *= static_cast<std::size_t>(grid.axes[static_cast<std::size_t>(a)].count);

  std::vector<DetMinimum> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int pos = unravel(grid, i)[static_cast<std::size_t>(axis)];
    const ScanRow& r = rows[i];
    const double rel = r.relative_det();
    bool keep = !r.trace_inv.has_value();
    if (!keep && rel < max_relative_det) {
      const bool left_ok = pos == 0 || rows[i - stride].det >= r.det;
      const bool right_ok = pos == ax.count - 1 || rows[i + stride].det >= r.det;
      keep = left_ok && right_ok && ax.count > 1;
    }
    if (keep) out.push_back({i, r.angles, r.det, rel});
  }
  return out;
}

}  // namespace rotqfi
