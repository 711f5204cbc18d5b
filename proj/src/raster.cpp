#include "minsum/raster.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <thread>

#include "minsum/errors.hpp"

namespace minsum {

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Vec RegionRaster::cell_center(int i, int j) const {
  Vec p(2);
  p << bbox.xmin + (i + 0.5) * (bbox.xmax - bbox.xmin) / nx,
      bbox.ymin + (j + 0.5) * (bbox.ymax - bbox.ymin) / ny;
  return p;
}

RegionRaster rasterize_region(const Scenario& scenario, const BoundingBox& bbox, int nx, int ny,
                              const RasterOptions& options) {
  scenario.validate();
  if (scenario.dim() != 2) {
    throw DimensionMismatch("rasterize_region: scenario must be 2-D, got dimension " +
                            std::to_string(scenario.dim()));
  }
  if (nx < 2 || ny < 2) throw DomainError("rasterize_region: resolution must be at least 2x2");
  if (!(bbox.xmin < bbox.xmax) || !(bbox.ymin < bbox.ymax)) {
    throw DomainError("rasterize_region: empty bounding box");
  }

  RegionRaster raster;
  raster.bbox = bbox;
  raster.nx = nx;
  raster.ny = ny;
  raster.predicate = options.predicate.value_or(route(scenario));
  raster.cells.resize(static_cast<std::size_t>(nx) * ny);

  // Each row is evaluated independently; rows are distributed round-robin.
  auto work = [&](unsigned worker, unsigned workers) {
    for (int j = static_cast<int>(worker); j < ny; j += static_cast<int>(workers)) {
      for (int i = 0; i < nx; ++i) {
        raster.cells[static_cast<std::size_t>(j) * nx + i] =
            evaluate(scenario, raster.cell_center(i, j), raster.predicate, options.tol);
      }
    }
  };

  unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(ny));
  if (workers <= 1) {
    work(0, 1);
    return raster;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  pool.clear();
  return raster;
}

void write_csv(const RegionRaster& raster, std::ostream& out) {
  out << "x,y,state,margin,conditions\n";
  for (int j = 0; j < raster.ny; ++j) {
    for (int i = 0; i < raster.nx; ++i) {
      const Vec c = raster.cell_center(i, j);
      const Verdict& v = raster.at(i, j);
      out << format_real(c(0)) << ',' << format_real(c(1)) << ',' << to_string(v.state) << ','
          << format_real(v.margin) << ',' << static_cast<int>(v.fired.bits()) << '\n';
    }
  }
}

namespace {

const char* fill_for(const RegionRaster& raster, const Verdict& v) {
  if (raster.predicate != Predicate::two_nonsmooth_bounded) return "#4c72b0";
  if (v.fired.has(ConditionSet::clause_i)) return "#2ca02c";
  if (v.fired.has(ConditionSet::clause_ii)) return "#d62728";
  if (v.fired.has(ConditionSet::clause_iii)) return "#1f77b4";
  return "#7f7f7f";
}

}  // namespace

void write_svg(const RegionRaster& raster, std::ostream& out) {
  const double cw = 1.0;
  const double ch = 1.0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << raster.nx << ' '
      << raster.ny << "\" width=\"" << 4 * raster.nx << "\" height=\"" << 4 * raster.ny
      << "\" shape-rendering=\"crispEdges\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << raster.nx << "\" height=\"" << raster.ny
      << "\" fill=\"#ffffff\"/>\n";
  for (int j = 0; j < raster.ny; ++j) {
    for (int i = 0; i < raster.nx; ++i) {
      const Verdict& v = raster.at(i, j);
      if (!v.member()) continue;
      // SVG y grows downward; flip so ymin is at the bottom.
      out << "<rect x=\"" << i * cw << "\" y=\"" << (raster.ny - 1 - j) * ch << "\" width=\"" << cw
          << "\" height=\"" << ch << "\" fill=\"" << fill_for(raster, v) << "\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace minsum
