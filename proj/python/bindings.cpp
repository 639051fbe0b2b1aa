#include <map>
#include <optional>
#include <tuple>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mdembed/analysis.hpp"
#include "mdembed/decomposition.hpp"
#include "mdembed/linf_embed.hpp"
#include "mdembed/measured_descent.hpp"
#include "mdembed/metric.hpp"

namespace py = pybind11;
using namespace mdembed;

namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

FiniteMetric metric_from_matrix(const Matrix& d) {
  if (d.rows() != d.cols()) throw InvalidInput("distance matrix must be square");
  return FiniteMetric(static_cast<std::size_t>(d.rows()), std::vector<double>(d.data(), d.data() + d.size()));
}

Matrix metric_matrix(const FiniteMetric& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  return Eigen::Map<const Matrix>(m.data().data(), n, n);
}

std::size_t samples_or_default(std::size_t samples, const FiniteMetric& m) {
  return samples == 0 ? default_samples(m.size()) : samples;
}

PointMeasure measure_or_counting(const std::optional<std::vector<double>>& mass, const FiniteMetric& m) {
  return mass ? PointMeasure(*mass) : PointMeasure::counting(m.size());
}

}  // namespace

PYBIND11_MODULE(_mdembed, mod) {
  mod.doc() = "Measured-descent embeddings of finite metric spaces";

  auto base = py::register_exception<Error>(mod, "Error");
  py::register_exception<InvalidInput>(mod, "InvalidInput", base);
  py::register_exception<ParseError>(mod, "ParseError", base);
  py::register_exception<DiameterViolation>(mod, "DiameterViolation", base);

  py::class_<FiniteMetric>(mod, "FiniteMetric")
      .def(py::init(&metric_from_matrix), py::arg("distances"))
      .def_property_readonly("size", &FiniteMetric::size)
      .def_property_readonly("diameter", &FiniteMetric::diameter)
      .def_property_readonly("min_distance", &FiniteMetric::min_distance)
      .def("matrix", &metric_matrix)
      .def("__len__", &FiniteMetric::size)
      .def("__call__", [](const FiniteMetric& m, PointId x, PointId y) {
        if (x >= m.size() || y >= m.size()) throw py::index_error("point out of range");
        return m(x, y);
      });

  py::class_<WeightedGraph>(mod, "WeightedGraph")
      .def(py::init([](std::size_t n, const std::vector<std::tuple<PointId, PointId, double>>& edges,
                       std::optional<int> s) {
             std::vector<Edge> e;
             for (const auto& [u, v, w] : edges) e.push_back({u, v, w});
             return WeightedGraph(n, std::move(e), s);
           }),
           py::arg("n"), py::arg("edges"), py::arg("excluded_minor_order") = py::none())
      .def_property_readonly("size", &WeightedGraph::size)
      .def_property_readonly("excluded_minor_order", &WeightedGraph::excluded_minor_order)
      .def("edges", [](const WeightedGraph& g) {
        std::vector<std::tuple<PointId, PointId, double>> out;
        for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
        return out;
      });

  mod.def("metric_from_graph", &metric_from_graph, py::arg("graph"));
  mod.def(
      "generate",
      [](const std::string& kind, std::size_t n, std::size_t rows, std::size_t cols, std::size_t dim,
         std::size_t degree, bool weighted, std::uint64_t seed) -> Generated {
        return generate(parse_generator_kind(kind),
                        {.n = n, .rows = rows, .cols = cols, .dim = dim, .degree = degree, .weighted = weighted}, seed);
      },
      py::arg("kind"), py::kw_only(), py::arg("n") = 0, py::arg("rows") = 0, py::arg("cols") = 0,
      py::arg("dim") = 0, py::arg("degree") = 3, py::arg("weighted") = false, py::arg("seed") = 0);
  mod.def("as_metric", [](const Generated& g) { return as_metric(g); }, py::arg("generated"));
  mod.def("doubling_constant", &doubling_constant, py::arg("metric"));
  mod.def(
      "aspect_ratio", [](const std::vector<double>& mass) { return aspect_ratio(PointMeasure(mass)); },
      py::arg("mass"));

  py::class_<StochasticPartition>(mod, "Partition")
      .def_readonly("clusters", &StochasticPartition::clusters)
      .def_readonly("assignment", &StochasticPartition::assignment)
      .def_readonly("delta", &StochasticPartition::delta)
      .def_readonly("alpha", &StochasticPartition::alpha)
      .def_readonly("seed", &StochasticPartition::seed);
  mod.def(
      "ckr_partition", [](const FiniteMetric& m, double delta, std::uint64_t seed) { return ckr_partition(m, delta, seed); },
      py::arg("metric"), py::arg("delta"), py::arg("seed"));
  mod.def(
      "epsilon_mu",
      [](const FiniteMetric& m, PointId x, int u, const std::optional<std::vector<double>>& mass) {
        return epsilon_mu(m, measure_or_counting(mass, m), x, u);
      },
      py::arg("metric"), py::arg("x"), py::arg("u"), py::arg("mass") = py::none());
  mod.def(
      "v_mu",
      [](const FiniteMetric& m, PointId x, PointId y, const std::optional<std::vector<double>>& mass) {
        return v_mu(m, measure_or_counting(mass, m), x, y);
      },
      py::arg("metric"), py::arg("x"), py::arg("y"), py::arg("mass") = py::none());

  py::class_<FrechetEmbedding>(mod, "FrechetEmbedding")
      .def_readonly("coords", &FrechetEmbedding::coords)
      .def_readonly("p", &FrechetEmbedding::p)
      .def_readonly("method", &FrechetEmbedding::method)
      .def_readonly("seed", &FrechetEmbedding::seed)
      .def_readonly("samples", &FrechetEmbedding::samples)
      .def_readonly("phi_mu", &FrechetEmbedding::phi_mu)
      .def_readonly("normalization", &FrechetEmbedding::normalization)
      .def_property_readonly("params", [](const FrechetEmbedding& e) {
        return std::map<std::string, double>(e.params.begin(), e.params.end());
      });

  mod.def(
      "embed_measured_descent",
      [](const FiniteMetric& m, double p, std::size_t samples, std::uint64_t seed,
         const std::optional<std::vector<double>>& mass) {
        return embed_measured_descent(m, measure_or_counting(mass, m), p, samples_or_default(samples, m), seed);
      },
      py::arg("metric"), py::arg("p") = 2.0, py::arg("samples") = 0, py::arg("seed") = 1, py::arg("mass") = py::none());
  mod.def(
      "embed_theorem_pad",
      [](const FiniteMetric& m, double p, std::size_t samples, std::uint64_t seed) {
        return embed_theorem_pad(m, p, samples_or_default(samples, m), seed);
      },
      py::arg("metric"), py::arg("p") = 2.0, py::arg("samples") = 0, py::arg("seed") = 1);
  mod.def(
      "embed_bourgain_small",
      [](const FiniteMetric& m, double p, std::size_t samples, std::uint64_t seed) {
        return embed_bourgain_small(m, p, samples_or_default(samples, m), seed);
      },
      py::arg("metric"), py::arg("p") = 2.0, py::arg("samples") = 0, py::arg("seed") = 1);
  mod.def(
      "embed_volume",
      [](const FiniteMetric& m, std::size_t samples, std::uint64_t seed) {
        return embed_volume(m, samples_or_default(samples, m), seed);
      },
      py::arg("metric"), py::arg("samples") = 0, py::arg("seed") = 1);

  py::class_<LinfEmbedding>(mod, "LinfEmbedding")
      .def_readonly("coords", &LinfEmbedding::coords)
      .def_readonly("s", &LinfEmbedding::s)
      .def_readonly("c", &LinfEmbedding::c)
      .def_readonly("T", &LinfEmbedding::T)
      .def_readonly("D", &LinfEmbedding::D)
      .def_readonly("K", &LinfEmbedding::K)
      .def_readonly("validated", &LinfEmbedding::validated);
  mod.def("embed_theorem_yuri", &embed_theorem_yuri, py::arg("graph"), py::arg("s"), py::arg("c") = 2.0);
  mod.def("linf_dimension", &linf_dimension, py::arg("n"), py::arg("s"), py::arg("c") = 2.0);

  py::class_<DistortionReport>(mod, "DistortionReport")
      .def_readonly("p", &DistortionReport::p)
      .def_readonly("lipschitz", &DistortionReport::lipschitz)
      .def_readonly("contraction", &DistortionReport::contraction)
      .def_readonly("distortion", &DistortionReport::distortion)
      .def_readonly("argmax", &DistortionReport::argmax)
      .def_readonly("argmin", &DistortionReport::argmin)
      .def_readonly("degenerate", &DistortionReport::degenerate);
  mod.def("distortion", &distortion, py::arg("metric"), py::arg("coords"), py::arg("p") = 2.0);
  mod.def("affine_hull_distance", &affine_hull_distance, py::arg("coords"), py::arg("x"), py::arg("Y"));
  mod.def("simplex_volume", &simplex_volume, py::arg("coords"), py::arg("S"));
  mod.def("tree_volume", &tree_volume, py::arg("metric"), py::arg("S"));

  py::class_<EtaReport>(mod, "EtaReport")
      .def_readonly("k", &EtaReport::k)
      .def_readonly("subsets", &EtaReport::subsets)
      .def_readonly("eta_quantiles", &EtaReport::eta_quantiles)
      .def_readonly("infinite", &EtaReport::infinite)
      .def_readonly("affine_floor", &EtaReport::affine_floor)
      .def_readonly("lipschitz", &EtaReport::lipschitz);
  mod.def("volume_eta_report", &volume_eta_report, py::arg("metric"), py::arg("coords"), py::arg("k") = 3,
          py::arg("subsets") = 200, py::arg("seed") = 1);
  mod.def("exact_padding_oracle", &exact_padding_oracle, py::arg("metric"), py::arg("delta"), py::arg("x"),
          py::arg("pad"));
}
