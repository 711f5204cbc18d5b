// Point-wise rasterization of a 2-D potential-minimizer region, with CSV and
// SVG writers.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minsum/membership.hpp"

namespace minsum {

struct BoundingBox {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;
};

struct RasterOptions {
  std::optional<Predicate> predicate;  // routed from the scenario when empty
  unsigned threads = 1;                // 0 = hardware concurrency
  Tolerance tol{};
};

/// nx * ny verdicts, row-major from (xmin, ymin): cell (i, j) sits at
/// index j * nx + i.
struct RegionRaster {
  BoundingBox bbox;
  int nx = 0;
  int ny = 0;
  Predicate predicate = Predicate::two_smooth;
  std::vector<Verdict> cells;

  const Verdict& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * nx + i]; }
  Vec cell_center(int i, int j) const;
};

/// Evaluates the predicate at every cell center. The result does not depend
/// on the thread count.
RegionRaster rasterize_region(const Scenario& scenario, const BoundingBox& bbox, int nx, int ny,
                              const RasterOptions& options = {});

/// Header "x,y,state,margin,conditions", one row per cell, reals with 17
/// significant digits.
void write_csv(const RegionRaster& raster, std::ostream& out);

/// One rectangle per member cell. In the bounded two-nonsmooth regime cells
/// are colored by the lowest-index clause that fired: (i) green, (ii) red,
/// (iii) blue.
void write_svg(const RegionRaster& raster, std::ostream& out);

/// Decimal text with 17 significant digits (round-trips any double).
std::string format_real(double v);

}  // namespace minsum
