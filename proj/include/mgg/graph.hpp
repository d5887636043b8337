#pragma once

// Caron-Fox style random graphs over sociability weights, the statistics
// probed by the sparsity analysis, p-sampling, and the reference generators
// (generalized gamma weights, preferential attachment).

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mgg/rng.hpp"

namespace mgg {

// Undirected simple graph with optional self-loops. Edges are stored once
// with first <= second, sorted and unique. multi_counts, when present, holds
// the latent multigraph multiplicities aligned with edges. node_labels maps
// compacted node indices back to external identities.
struct SparseGraph {
  std::size_t num_nodes = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> multi_counts;
  std::vector<std::uint64_t> node_labels;

  bool has_multi_counts() const { return !multi_counts.empty(); }
  std::uint64_t label_of(std::uint32_t node) const {
    return node_labels.empty() ? node : node_labels[node];
  }
};

struct GraphStats {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  std::size_t n_self_loops = 0;
  std::map<std::uint64_t, std::uint64_t> degree_hist;  // simple degree, self-loop counts once
  double prop_degree_one = 0.0;
  std::uint64_t max_degree = 0;
  double mean_degree = 0.0;
  std::vector<std::size_t> component_sizes;  // descending
};

// Pairwise Bernoulli construction: edge {i,j} with probability
// 1 - exp(-2 w_i w_j), self-loop with 1 - exp(-w_i^2). Atoms with no
// incident edge are dropped; node_labels keeps the original weight index.
// Runs in roughly O(n log n + edges) via sorted-weight skip sampling.
SparseGraph generate_graph_bernoulli(const std::vector<double>& weights, Rng& rng);

// Poissonized construction through the directed multigraph: a
// Poisson(T^2) number of directed edges with endpoints drawn proportional
// to the weights. Same marginal law as the Bernoulli route and also fills
// multi_counts. O(n + D).
SparseGraph generate_graph_poissonized(const std::vector<double>& weights, Rng& rng);

// Poissonized for large weight vectors (> 2e4), Bernoulli otherwise.
SparseGraph generate_graph(const std::vector<double>& weights, Rng& rng);

GraphStats graph_stats(const SparseGraph& g);

// N_j / (number of nodes of degree >= 2) for j = 2..j_max. Throws if the
// graph has no node of degree >= 2.
std::vector<double> degree_tail_ratios(const SparseGraph& g, int j_max);

// Vertex p-sampling: retain each node independently with probability p,
// keep induced edges, drop nodes left with degree zero.
SparseGraph p_sample(const SparseGraph& g, double p, Rng& rng);

// Same retention pass, returning the induced graphs on retained nodes
// (train) and on the complement (test).
std::pair<SparseGraph, SparseGraph> p_sample_split(const SparseGraph& g, double p, Rng& rng);

// Caron-Fox graph with generalized gamma weights on [0, time_horizon];
// baseline for sparsity comparisons. truncation = 0 picks a level adequate
// for the horizon.
SparseGraph generate_gg_graph(double sigma, double tau_gg, double time_horizon, Rng& rng,
                              std::size_t truncation = 0);

// Barabasi-Albert preferential attachment: m seed nodes without edges, each
// subsequent node attaches m edges, giving exactly m(n-m) edges.
SparseGraph generate_ba_graph(std::size_t n, std::size_t m, Rng& rng);

// Edge-list file format: one edge per line as two whitespace-separated
// non-negative integer ids, '#' comment lines ignored, duplicates
// deduplicated, ids compacted with labels kept.
SparseGraph load_edge_list(const std::string& path);
void save_edge_list(const SparseGraph& g, const std::string& path,
                    const std::vector<std::string>& header_comments);

}  // namespace mgg
