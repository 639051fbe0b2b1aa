#include "mdembed/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mdembed {

namespace {

double parse_real(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto trim_begin = tok.find_first_not_of(" \t\r");
  const auto trim_end = tok.find_last_not_of(" \t\r");
  if (trim_begin == std::string_view::npos) throw ParseError("empty field on line " + std::to_string(line));
  tok = tok.substr(trim_begin, trim_end - trim_begin + 1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("bad number '" + std::string(tok) + "' on line " + std::to_string(line));
  return v;
}

std::vector<double> parse_csv_row(const std::string& text, std::size_t line) {
  std::vector<double> row;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    row.push_back(parse_real(std::string_view(text).substr(start, comma - start), line));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return row;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

WeightedGraph read_edge_list(std::istream& in) {
  std::string header;
  std::size_t n = 0, m = 0;
  if (!(in >> header >> n >> m) || header != "graph") throw ParseError("expected header 'graph <n> <m>'");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t u = 0, v = 0;
    std::string w;
    if (!(in >> u >> v >> w)) throw ParseError("expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    edges.push_back({u, v, parse_real(w, i + 2)});
  }
  return WeightedGraph(n, std::move(edges));
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "graph " << g.size() << " " << g.edges().size() << "\n";
  for (const Edge& e : g.edges()) out << e.u << " " << e.v << " " << format_real(e.w) << "\n";
}

FiniteMetric read_distance_csv(std::istream& in) {
  std::vector<double> dist;
  std::string line;
  std::size_t n = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto row = parse_csv_row(line, lineno);
    if (n == 0) n = row.size();
    if (row.size() != n) throw ParseError("row " + std::to_string(lineno) + " has wrong column count");
    dist.insert(dist.end(), row.begin(), row.end());
  }
  if (n == 0 || dist.size() != n * n) throw ParseError("distance matrix must be square and nonempty");
  return FiniteMetric(n, std::move(dist));
}

void write_distance_csv(std::ostream& out, const FiniteMetric& m) {
  for (PointId x = 0; x < m.size(); ++x) {
    for (PointId y = 0; y < m.size(); ++y) out << (y ? "," : "") << format_real(m(x, y));
    out << "\n";
  }
}

PointMeasure read_measure(std::istream& in) {
  std::vector<double> mass;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    mass.push_back(parse_real(line, lineno));
  }
  return PointMeasure(std::move(mass));
}

Coords read_coords_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) {
      rows.emplace_back();  // zero-dimensional embedding
      continue;
    }
    rows.push_back(parse_csv_row(line, lineno));
    if (rows.back().size() != rows.front().size()) throw ParseError("ragged coordinate row " + std::to_string(lineno));
  }
  Coords c(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.empty() ? 0 : rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return c;
}

void write_coords_csv(std::ostream& out, const Coords& coords) {
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    for (Eigen::Index j = 0; j < coords.cols(); ++j) out << (j ? "," : "") << format_real(coords(i, j));
    out << "\n";
  }
}

Generated read_metric_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string first;
  in >> first;
  in.seekg(0);
  if (first == "graph") return read_edge_list(in);
  return read_distance_csv(in);
}

PointMeasure read_measure_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_measure(in);
}

Coords read_coords_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_coords_csv(in);
}

}  // namespace mdembed
