#include <cmath>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "mdembed/cli.hpp"

namespace {

void add_space_options(CLI::App* cmd, mdembed::RunConfig& c) {
  cmd->add_option("--input", c.input, "metric CSV or 'graph n m' edge list");
  cmd->add_option("--kind", c.kind, "generator: path, grid2d, hypercube, random_regular, euclidean_cloud, equilateral");
  cmd->add_option("--n", c.n, "number of points");
  cmd->add_option("--side", c.side, "grid side length");
  cmd->add_option("--rows", c.rows, "grid rows");
  cmd->add_option("--cols", c.cols, "grid columns");
  cmd->add_option("--dim", c.dim, "hypercube or cloud dimension");
  cmd->add_option("--degree", c.degree, "random regular degree");
  cmd->add_flag("--weighted", c.weighted, "grid weights 1 + k/8");
  cmd->add_option("--seed", c.seed, "64-bit seed");
  cmd->add_option("--out", c.out, "output directory");
}

void add_embed_options(CLI::App* cmd, mdembed::RunConfig& c, std::string& p_text) {
  cmd->add_option("--method", c.method, "measured-descent, theorem-pad, bourgain-small, volume, linf-minorfree");
  cmd->add_option("--p", p_text, "norm exponent >= 1 or 'inf'");
  cmd->add_option("--samples", c.samples, "independent draws N (default 8 ceil(log2 n))");
  cmd->add_option("--s", c.s, "excluded minor K_{s,s}");
  cmd->add_option("--c", c.c, "chopping constant, T = c s^2");
  cmd->add_option("--measure", c.measure, "uniform or file:PATH");
}

}  // namespace

int main(int argc, char** argv) {
  mdembed::RunConfig c;
  std::string p_text;
  CLI::App app{"mdembed: measured-descent metric embeddings"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "write a generated metric or graph");
  add_space_options(gen, c);

  auto* embed = app.add_subcommand("embed", "embed a metric and write coordinates");
  add_space_options(embed, c);
  add_embed_options(embed, c, p_text);

  auto* analyze = app.add_subcommand("analyze", "distortion and volume report for an embedding");
  add_space_options(analyze, c);
  analyze->add_option("--coords", c.coords, "embedding CSV (default <out>/embedding.csv)");
  analyze->add_option("--method", c.method, "method label when no sidecar JSON exists");
  analyze->add_option("--p", p_text, "norm exponent >= 1 or 'inf'");
  analyze->add_option("--k", c.k, "subset size for volume statistics");
  analyze->add_option("--subsets", c.subsets, "number of sampled subsets");
  analyze->add_flag("--dump-pairs", c.dump_pairs, "write pairs.csv");
  analyze->add_flag("--timing", c.timing, "include wall-clock runtime in the report");

  auto* bench = app.add_subcommand("bench", "sweep n and tabulate distortion");
  add_space_options(bench, c);
  add_embed_options(bench, c, p_text);
  bench->add_option("--sizes", c.sizes, "point counts to sweep");
  bench->add_flag("--timing", c.timing, "add a runtime column");

  CLI11_PARSE(app, argc, argv);
  c.command = app.get_subcommands().front()->get_name();
  if (!p_text.empty()) {
    if (p_text == "inf") {
      c.p = std::numeric_limits<double>::infinity();
    } else {
      try {
        c.p = std::stod(p_text);
      } catch (const std::exception&) {
        std::cerr << "error: --p must be a number or 'inf'\n";
        return 2;
      }
    }
  }
  return mdembed::run(c, std::cout, std::cerr);
}
