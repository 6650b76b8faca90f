// SPDX-License-Identifier: Apache-2.0
//
// specrad: spectral radius of nonnegative weakly irreducible tensors,
// with digraph-circuit bound certificates.

#include "specrad/bounds.hpp"
#include "specrad/digraph.hpp"
#include "specrad/hypergraph.hpp"
#include "specrad/io.hpp"
#include "specrad/spectral.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace specrad;

struct InputOptions {
  std::string path;
  bool hypergraph = false;
  std::string which = "adjacency";
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "tensor JSON file (or hypergraph text with --hypergraph)")
      ->required();
  cmd->add_flag("--hypergraph", in.hypergraph, "treat the input as a hypergraph text file");
  cmd->add_option("--which", in.which, "tensor to build from a hypergraph")
      ->check(CLI::IsMember({"adjacency", "laplacian"}));
}

void add_iteration_options(CLI::App* cmd, IterationConfig& cfg) {
  cmd->add_option("--tolerance", cfg.tolerance, "Collatz-Wielandt bracket width to stop at");
  cmd->add_option("--max-iter", cfg.max_iterations, "iteration budget");
  cmd->add_option("--shift", cfg.shift, "diagonal shift applied during the iteration");
}

SparseTensor<double> tensor_from_hypergraph(const UniformHypergraph& h, const std::string& which) {
  return which == "laplacian" ? signless_laplacian_tensor(h) : adjacency_tensor(h);
}

SparseTensor<double> load_tensor(const InputOptions& in) {
  if (in.hypergraph)
    return tensor_from_hypergraph(read_file_as(in.path, read_hypergraph_text), in.which);
  return read_file_as(in.path, read_tensor_json);
}

std::string girth_or_null(const TensorDigraph& g) {
  try {
    return std::to_string(girth(g));
  } catch (const std::invalid_argument&) {
    return "null";
  }
}

std::string vector_json(const VectorX<double>& x) {
  std::string out = "[";
  for (Index i = 0; i < x.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(x[i]);
  }
  return out + "]";
}

int cmd_check(const InputOptions& in) {
  std::string out = "{";
  TensorDigraph g(1, {});
  if (in.hypergraph) {
    const auto h = read_file_as(in.path, read_hypergraph_text);
    g = build_digraph(tensor_from_hypergraph(h, in.which));
    out += "\"connected\": ";
    out += is_connected(h) ? "true" : "false";
    out += ", ";
  } else {
    g = build_digraph(read_file_as(in.path, read_tensor_json));
  }
  out += "\"weakly_irreducible\": ";
  out += is_weakly_irreducible(g) ? "true" : "false";
  out += ", \"vertices\": " + std::to_string(g.n_vertices());
  out += ", \"arcs\": " + std::to_string(g.arc_count());
  out += ", \"girth\": " + girth_or_null(g);
  out += "}";
  std::cout << out << "\n";
  return 0;
}

int cmd_rho(const InputOptions& in, const IterationConfig& cfg) {
  const auto t = load_tensor(in);
  const auto pp = perron_pair(t, cfg);
  std::cout << "{\"rho\": " << format_double(pp.rho) << ", \"bracket\": ["
            << format_double(pp.bracket_low) << ", " << format_double(pp.bracket_high)
            << "], \"iterations\": " << pp.iterations << ", \"vector\": " << vector_json(pp.vector)
            << "}\n";
  return 0;
}

int cmd_bounds(const InputOptions& in, const IterationConfig& cfg, const std::string& xspec,
               const std::string& format) {
  const auto t = load_tensor(in);
  std::optional<VectorX<double>> x;
  if (xspec == "perron") {
    x = perron_pair(t, cfg).vector;
  } else if (!xspec.empty()) {
    std::ifstream xin(xspec);
    if (!xin) throw std::invalid_argument("cannot open file: " + xspec);
    x = read_vector_json(xin, t.dim());
  }
  const auto report = full_report(t, cfg, x ? &*x : nullptr);
  if (format == "table")
    std::cout << bounds_report_table(report);
  else
    std::cout << bounds_report_json(report) << "\n";
  return 0;
}

int cmd_girth(const InputOptions& in) {
  const auto g = build_digraph(load_tensor(in));
  std::cout << "{\"girth\": " << girth_or_null(g) << "}\n";
  return 0;
}

int cmd_mean_cycle(const InputOptions& in) {
  const auto t = load_tensor(in);
  const auto g = build_digraph(t);
  const VectorX<double> k = slice_sums(t);
  const auto lo = mean_cycle(g, k, ExtremalSense::Min);
  const auto hi = mean_cycle(g, k, ExtremalSense::Max);
  auto one = [](const MeanCycleResult<double>& r) {
    std::string out = "{\"value\": " + format_double(r.value) + ", \"witness\": [";
    for (std::size_t i = 0; i < r.witness.vertices.size(); ++i) {
      if (i > 0) out += ", ";
      out += std::to_string(r.witness.vertices[i] + 1);
    }
    return out + "]}";
  };
  std::cout << "{\"weights\": \"slice_sums\", \"min\": " << one(lo) << ", \"max\": " << one(hi)
            << "}\n";
  return 0;
}

int cmd_hypergraph(const std::string& path, const std::string& which) {
  const auto h = read_file_as(path, read_hypergraph_text);
  std::cout << write_tensor_json(tensor_from_hypergraph(h, which)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral radius of nonnegative weakly irreducible tensors, "
               "with digraph-circuit bound certificates"};
  app.require_subcommand(1);

  InputOptions in;
  IterationConfig cfg;
  std::string xspec;
  std::string format = "json";

  auto* check = app.add_subcommand("check", "weak irreducibility / connectivity and digraph stats");
  add_input_options(check, in);

  auto* rho = app.add_subcommand("rho", "spectral radius with Collatz-Wielandt bracket");
  add_input_options(rho, in);
  add_iteration_options(rho, cfg);

  auto* bounds = app.add_subcommand("bounds", "certified bound intervals for the spectral radius");
  add_input_options(bounds, in);
  add_iteration_options(bounds, cfg);
  bounds->add_option("--x", xspec,
                     "positive vector file (JSON array) for the scaled bounds, or 'perron'");
  bounds->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));

  auto* girth_cmd = app.add_subcommand("girth", "girth of the tensor digraph");
  add_input_options(girth_cmd, in);

  auto* mean_cycle_cmd =
      app.add_subcommand("mean-cycle", "extremal geometric cycle means of the slice sums");
  add_input_options(mean_cycle_cmd, in);

  std::string hg_path, hg_which = "adjacency";
  auto* hypergraph_cmd = app.add_subcommand("hypergraph", "emit a hypergraph tensor as JSON");
  hypergraph_cmd->add_option("input", hg_path, "hypergraph text file")->required();
  hypergraph_cmd->add_option("--which", hg_which, "tensor to emit")
      ->check(CLI::IsMember({"adjacency", "laplacian"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (check->parsed()) return cmd_check(in);
    if (rho->parsed()) return cmd_rho(in, cfg);
    if (bounds->parsed()) return cmd_bounds(in, cfg, xspec, format);
    if (girth_cmd->parsed()) return cmd_girth(in);
    if (mean_cycle_cmd->parsed()) return cmd_mean_cycle(in);
    if (hypergraph_cmd->parsed()) return cmd_hypergraph(hg_path, hg_which);
  } catch (const ConvergenceError& e) {
    std::cout << "{\"error\": \"" << e.what() << "\", \"bracket\": ["
              << format_double(e.bracket_low) << ", " << format_double(e.bracket_high)
              << "], \"iterations\": " << e.iterations << "}\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
