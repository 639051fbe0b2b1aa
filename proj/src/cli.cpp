#include "mdembed/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mdembed/analysis.hpp"
#include "mdembed/io.hpp"
#include "mdembed/linf_embed.hpp"
#include "mdembed/measured_descent.hpp"

namespace mdembed {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// JSON has no infinity; non-finite values become null.
Json real(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json p_json(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

Json config_object(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["kind"] = c.kind;
  j["n"] = c.n;
  j["side"] = c.side;
  j["rows"] = c.rows;
  j["cols"] = c.cols;
  j["dim"] = c.dim;
  j["degree"] = c.degree;
  j["weighted"] = c.weighted;
  j["input"] = c.input;
  j["coords"] = c.coords;
  j["method"] = c.method;
  j["p"] = c.p ? p_json(*c.p) : Json(nullptr);
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["s"] = c.s;
  j["c"] = c.c;
  j["measure"] = c.measure;
  j["out"] = c.out;
  j["dump_pairs"] = c.dump_pairs;
  j["timing"] = c.timing;
  j["k"] = c.k;
  j["subsets"] = c.subsets;
  j["sizes"] = c.sizes;
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

GeneratorParams generator_params(const RunConfig& c, std::size_t n_override = 0) {
  GeneratorParams g;
  g.degree = c.degree;
  g.weighted = c.weighted;
  const std::size_t n = n_override ? n_override : c.n;
  switch (parse_generator_kind(c.kind)) {
    case GeneratorKind::Grid2d: {
      std::size_t side = c.side ? c.side : 8;
      if (n_override) side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n_override))));
      g.rows = (c.rows && !n_override) ? c.rows : side;
      g.cols = (c.cols && !n_override) ? c.cols : side;
      break;
    }
    case GeneratorKind::Hypercube: {
      std::size_t dim = c.dim ? c.dim : 5;
      if (n_override) dim = static_cast<std::size_t>(ceil_log2(static_cast<double>(n_override)));
      g.dim = dim;
      break;
    }
    case GeneratorKind::EuclideanCloud:
      g.n = n ? n : 64;
      g.dim = c.dim ? c.dim : 2;
      break;
    case GeneratorKind::Path:
      g.n = n ? n : 32;
      break;
    case GeneratorKind::RandomRegular:
      g.n = n ? n : 64;
      break;
    case GeneratorKind::Equilateral:
      g.n = n ? n : 16;
      break;
  }
  return g;
}

Generated load_space(const RunConfig& c) {
  if (!c.input.empty()) return read_metric_file(c.input);
  return generate(parse_generator_kind(c.kind), generator_params(c), c.seed);
}

PointMeasure load_measure(const RunConfig& c, std::size_t n) {
  if (c.measure == "uniform") return PointMeasure::counting(n);
  if (c.measure.rfind("file:", 0) == 0) {
    auto mu = read_measure_file(c.measure.substr(5));
    if (mu.size() != n) throw InvalidInput("measure has " + std::to_string(mu.size()) + " masses for " +
                                           std::to_string(n) + " points");
    return mu;
  }
  throw InvalidInput("--measure must be 'uniform' or 'file:PATH'");
}

struct EmbedResult {
  Coords coords;
  double p = 2.0;
  Json meta;
};

EmbedResult embed_space(const RunConfig& c, const Generated& space) {
  const FiniteMetric m = as_metric(space);
  const std::size_t n = m.size();
  const std::size_t samples = c.samples ? c.samples : default_samples(n);
  EmbedResult r;
  if (c.method == "linf-minorfree") {
    if (c.p && !std::isinf(*c.p)) throw InvalidInput("linf-minorfree embeds into l_inf; use --p inf");
    const auto* g = std::get_if<WeightedGraph>(&space);
    if (!g) throw InvalidInput("linf-minorfree needs a graph input");
    const auto e = embed_theorem_yuri(*g, c.s, c.c);
    r.coords = e.coords;
    r.p = kInfinity;
    r.meta["s"] = e.s;
    r.meta["c"] = e.c;
    r.meta["T"] = e.T;
    r.meta["D"] = e.D;
    r.meta["K"] = e.K;
    r.meta["validated"] = e.validated;
    return r;
  }
  const double p = c.p.value_or(2.0);
  FrechetEmbedding e;
  if (c.method == "measured-descent") {
    e = embed_measured_descent(m, load_measure(c, n), p, samples, c.seed);
  } else if (c.method == "theorem-pad") {
    e = embed_theorem_pad(m, p, samples, c.seed);
  } else if (c.method == "bourgain-small") {
    e = embed_bourgain_small(m, p, samples, c.seed);
  } else if (c.method == "volume") {
    if (p != 2.0) throw InvalidInput("volume embeds into l_2; use --p 2");
    e = embed_volume(m, samples, c.seed);
  } else {
    throw InvalidInput("unknown method: " + c.method);
  }
  r.coords = e.coords;
  r.p = e.p;
  r.meta["N"] = e.samples;
  r.meta["phi_mu"] = e.phi_mu;
  r.meta["normalization"] = e.normalization;
  for (const auto& [key, value] : e.params) r.meta[key] = value;
  return r;
}

int cmd_gen(const RunConfig& c, std::ostream& log) {
  const auto space = load_space(c);
  fs::create_directories(c.out);
  std::ostringstream os;
  std::string file;
  std::size_t n = 0;
  if (const auto* g = std::get_if<WeightedGraph>(&space)) {
    write_edge_list(os, *g);
    file = "graph.txt";
    n = g->size();
  } else {
    const auto& m = std::get<FiniteMetric>(space);
    write_distance_csv(os, m);
    file = "metric.csv";
    n = m.size();
  }
  write_text(fs::path(c.out) / file, os.str());
  Json j;
  j["file"] = file;
  j["n"] = n;
  j["config"] = config_object(c);
  write_json(fs::path(c.out) / "gen.json", j);
  log << "wrote " << (fs::path(c.out) / file).string() << " (n=" << n << ")\n";
  return 0;
}

int cmd_embed(const RunConfig& c, std::ostream& log) {
  const auto space = load_space(c);
  const auto r = embed_space(c, space);
  fs::create_directories(c.out);
  std::ostringstream os;
  write_coords_csv(os, r.coords);
  write_text(fs::path(c.out) / "embedding.csv", os.str());
  Json j;
  j["method"] = c.method;
  j["n"] = r.coords.rows();
  j["k"] = r.coords.cols();
  j["p"] = p_json(r.p);
  j["seed"] = c.seed;
  for (const auto& [key, value] : r.meta.items()) j[key] = value;
  j["config"] = config_object(c);
  write_json(fs::path(c.out) / "embedding.json", j);
  log << "embedded n=" << r.coords.rows() << " into k=" << r.coords.cols() << " dimensions\n";
  return 0;
}

int cmd_analyze(const RunConfig& c, std::ostream& log) {
  const FiniteMetric m = as_metric(load_space(c));
  const fs::path coords_path = c.coords.empty() ? fs::path(c.out) / "embedding.csv" : fs::path(c.coords);
  const Coords coords = read_coords_file(coords_path);
  std::string method = c.method;
  double p = c.p.value_or(2.0);
  // Pick up method and norm from the sidecar when present.
  const fs::path sidecar = fs::path(coords_path).replace_extension(".json");
  if (fs::exists(sidecar)) {
    std::ifstream in(sidecar);
    const Json meta = Json::parse(in);
    method = meta.value("method", method);
    if (!c.p && meta.contains("p")) p = meta["p"].is_string() ? kInfinity : meta["p"].get<double>();
  }
  const auto report = distortion(m, coords, p);
  Json j;
  j["method"] = method;
  j["n"] = m.size();
  j["k"] = coords.cols();
  j["p"] = p_json(p);
  j["lipschitz"] = real(report.lipschitz);
  j["contraction"] = real(report.contraction);
  j["distortion"] = real(report.distortion);
  j["degenerate"] = report.degenerate;
  j["argmax"] = {report.argmax.first, report.argmax.second};
  j["argmin"] = {report.argmin.first, report.argmin.second};
  j["eta_k"] = c.k;
  j["eta_quantiles"] = nullptr;
  j["eta_infinite"] = nullptr;
  j["affine_floor"] = nullptr;
  // Volume statistics only make sense for 1-Lipschitz maps into l_2.
  if (p == 2.0 && report.lipschitz <= 1.0 + 1e-9 && c.k >= 2 && c.k <= m.size()) {
    const auto eta = volume_eta_report(m, coords, c.k, c.subsets, c.seed);
    Json q = Json::array();
    for (double v : eta.eta_quantiles) q.push_back(real(v));
    j["eta_quantiles"] = q;
    j["eta_infinite"] = eta.infinite;
    j["affine_floor"] = real(eta.affine_floor);
  }
  j["seed"] = c.seed;
  if (c.timing) j["runtime_seconds"] = report.runtime_seconds;
  j["config"] = config_object(c);
  fs::create_directories(c.out);
  write_json(fs::path(c.out) / "report.json", j);
  if (c.dump_pairs) {
    std::ostringstream os;
    os << "x,y,distance,image,ratio\n";
    for (const auto& pr : pair_ratios(m, coords, p))
      os << pr.x << "," << pr.y << "," << format_real(pr.distance) << "," << format_real(pr.image) << ","
         << format_real(pr.ratio) << "\n";
    write_text(fs::path(c.out) / "pairs.csv", os.str());
  }
  log << "distortion " << format_real(report.distortion) << "\n";
  return 0;
}

int cmd_bench(const RunConfig& c, std::ostream& log) {
  std::ostringstream os;
  os << "n,lambda_hat,phi,k,distortion" << (c.timing ? ",runtime_seconds" : "") << "\n";
  for (std::size_t size : c.sizes) {
    const auto start = std::chrono::steady_clock::now();
    const Generated space = generate(parse_generator_kind(c.kind), generator_params(c, size), c.seed);
    RunConfig one = c;
    one.input.clear();
    const auto r = embed_space(one, space);
    const FiniteMetric m = as_metric(space);
    const auto report = distortion(m, r.coords, r.p);
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    os << m.size() << "," << doubling_constant(m) << "," << format_real(aspect_ratio(load_measure(c, m.size())))
       << "," << r.coords.cols() << "," << format_real(report.distortion);
    if (c.timing) os << "," << format_real(runtime);
    os << "\n";
  }
  fs::create_directories(c.out);
  write_text(fs::path(c.out) / "bench.csv", os.str());
  Json j;
  j["file"] = "bench.csv";
  j["config"] = config_object(c);
  write_json(fs::path(c.out) / "bench.json", j);
  log << "wrote " << (fs::path(c.out) / "bench.csv").string() << "\n";
  return 0;
}

}  // namespace

std::string config_json(const RunConfig& config) { return config_object(config).dump(); }

int run(const RunConfig& config, std::ostream& log, std::ostream& err) {
  try {
    if (config.command == "gen") return cmd_gen(config, log);
    if (config.command == "embed") return cmd_embed(config, log);
    if (config.command == "analyze") return cmd_analyze(config, log);
    if (config.command == "bench") return cmd_bench(config, log);
    err << "error: unknown command '" << config.command << "'\n";
    return 2;
  } catch (const DiameterViolation& e) {
    err << "error: diameter validation failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mdembed
