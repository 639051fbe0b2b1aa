#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mdembed/metric.hpp"

namespace mdembed {

/// Shortest decimal with 17 significant digits ("%.17g").
std::string format_real(double v);

/// Edge list: `graph <n> <m>` followed by m lines `<u> <v> <w>`.
WeightedGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const WeightedGraph& g);

/// n rows of n comma-separated decimals, no header.
FiniteMetric read_distance_csv(std::istream& in);
void write_distance_csv(std::ostream& out, const FiniteMetric& m);

/// One positive decimal per line.
PointMeasure read_measure(std::istream& in);

/// One row per point, comma-separated, 17 significant digits.
Coords read_coords_csv(std::istream& in);
void write_coords_csv(std::ostream& out, const Coords& coords);

/// Reads either format, sniffing the `graph` header.
Generated read_metric_file(const std::filesystem::path& path);
PointMeasure read_measure_file(const std::filesystem::path& path);
Coords read_coords_file(const std::filesystem::path& path);

}  // namespace mdembed
