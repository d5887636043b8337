#include "mgg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "mgg/samplers.hpp"

namespace mgg {

namespace {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

Edge make_edge(std::uint32_t a, std::uint32_t b) { return a <= b ? Edge{a, b} : Edge{b, a}; }

// Drops nodes with no incident edge and compacts indices. `label_of` maps a
// kept pre-compaction index to its external identity.
template <class LabelFn>
SparseGraph compact(std::size_t n_raw, std::vector<Edge> edges, std::vector<std::uint32_t> multi,
                    LabelFn&& label_of) {
  std::vector<std::uint32_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return edges[a] < edges[b]; });

  std::vector<char> seen(n_raw, 0);
  for (const auto& e : edges) {
    seen[e.first] = 1;
    seen[e.second] = 1;
  }
  std::vector<std::uint32_t> remap(n_raw, 0);
  SparseGraph g;
  for (std::size_t i = 0; i < n_raw; ++i) {
    if (seen[i]) {
      remap[i] = static_cast<std::uint32_t>(g.node_labels.size());
      g.node_labels.push_back(label_of(i));
    }
  }
  g.num_nodes = g.node_labels.size();
  g.edges.reserve(edges.size());
  if (!multi.empty()) g.multi_counts.reserve(edges.size());
  for (std::uint32_t idx : order) {
    const auto& e = edges[idx];
    g.edges.emplace_back(remap[e.first], remap[e.second]);
    if (!multi.empty()) g.multi_counts.push_back(multi[idx]);
  }
  return g;
}

}  // namespace

SparseGraph generate_graph_bernoulli(const std::vector<double>& weights, Rng& rng) {
  const std::size_t n = weights.size();
  if (n == 0) return SparseGraph{};

  // descending weights let a geometric skip walk each row
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return weights[a] > weights[b]; });
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = weights[order[k]];

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < -std::expm1(-w[i] * w[i]))
      edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i)});

    std::size_t j = i + 1;
    if (j >= n) continue;
    double p = -std::expm1(-2.0 * w[i] * w[j]);
    while (j < n && p > 0.0) {
      if (p < 1.0) {
        const double skip = std::floor(std::log(rng.uniform_pos()) / std::log1p(-p));
        if (skip >= static_cast<double>(n - j)) break;
        j += static_cast<std::size_t>(skip);
      }
      const double q = -std::expm1(-2.0 * w[i] * w[j]);
      if (rng.uniform() * p < q)
        edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      p = q;
      ++j;
    }
  }
  return compact(n, std::move(edges), {}, [&](std::size_t i) { return std::uint64_t{order[i]}; });
}

SparseGraph generate_graph_poissonized(const std::vector<double>& weights, Rng& rng) {
  const std::size_t n = weights.size();
  if (n == 0) return SparseGraph{};
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) return SparseGraph{};

  // Walker alias table over the weights
  std::vector<double> prob(n);
  std::vector<std::uint32_t> alias(n);
  {
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] / total * static_cast<double>(n);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i)
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    while (!small.empty() && !large.empty()) {
      const std::uint32_t s = small.back();
      small.pop_back();
      const std::uint32_t l = large.back();
      prob[s] = scaled[s];
      alias[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (std::uint32_t i : large) prob[i] = 1.0;
    for (std::uint32_t i : small) prob[i] = 1.0;
  }
  auto draw_node = [&]() -> std::uint32_t {
    const std::uint64_t k = rng.uniform_below(n);
    return rng.uniform() < prob[k] ? static_cast<std::uint32_t>(k) : alias[k];
  };

  const double intensity = total * total;
  std::uint64_t n_directed = intensity > 0.0 ? sample_poisson(intensity, rng) : 0;

  // q~_{ij} = Q_ij + Q_ji off the diagonal, Q_ii on it; accumulating on the
  // unordered pair realizes exactly that.
  std::unordered_map<std::uint64_t, std::uint32_t> counts;
  counts.reserve(static_cast<std::size_t>(n_directed) * 2);
  for (std::uint64_t d = 0; d < n_directed; ++d) {
    const Edge e = make_edge(draw_node(), draw_node());
    const std::uint64_t key = (static_cast<std::uint64_t>(e.first) << 32) | e.second;
    ++counts[key];
  }

  std::vector<Edge> edges;
  std::vector<std::uint32_t> multi;
  edges.reserve(counts.size());
  multi.reserve(counts.size());
  for (const auto& [key, q] : counts) {
    edges.push_back({static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key & 0xFFFFFFFFu)});
    multi.push_back(q);
  }
  return compact(n, std::move(edges), std::move(multi), [](std::size_t i) { return std::uint64_t{i}; });
}

SparseGraph generate_graph(const std::vector<double>& weights, Rng& rng) {
  return weights.size() > 20000 ? generate_graph_poissonized(weights, rng)
                                : generate_graph_bernoulli(weights, rng);
}

GraphStats graph_stats(const SparseGraph& g) {
  GraphStats st;
  st.n_nodes = g.num_nodes;
  st.n_edges = g.edges.size();

  std::vector<std::uint64_t> degree(g.num_nodes, 0);
  std::vector<std::uint32_t> parent(g.num_nodes);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  for (const auto& [a, b] : g.edges) {
    if (a == b) {
      ++st.n_self_loops;
      ++degree[a];
    } else {
      ++degree[a];
      ++degree[b];
      const auto ra = find(a), rb = find(b);
      if (ra != rb) parent[ra] = rb;
    }
  }

  double deg_sum = 0.0;
  std::uint64_t deg_one = 0;
  for (std::size_t i = 0; i < g.num_nodes; ++i) {
    ++st.degree_hist[degree[i]];
    deg_sum += static_cast<double>(degree[i]);
    st.max_degree = std::max(st.max_degree, degree[i]);
    if (degree[i] == 1) ++deg_one;
  }
  st.mean_degree = g.num_nodes ? deg_sum / static_cast<double>(g.num_nodes) : 0.0;
  st.prop_degree_one = g.num_nodes ? static_cast<double>(deg_one) / static_cast<double>(g.num_nodes) : 0.0;

  std::unordered_map<std::uint32_t, std::size_t> comp;
  for (std::uint32_t i = 0; i < g.num_nodes; ++i) ++comp[find(i)];
  st.component_sizes.reserve(comp.size());
  for (const auto& [root, size] : comp) st.component_sizes.push_back(size);
  std::sort(st.component_sizes.begin(), st.component_sizes.end(), std::greater<>());
  return st;
}

std::vector<double> degree_tail_ratios(const SparseGraph& g, int j_max) {
  if (j_max < 2) throw std::domain_error("degree_tail_ratios: requires j_max >= 2");
  const GraphStats st = graph_stats(g);
  std::uint64_t tail = 0;
  for (const auto& [deg, count] : st.degree_hist)
    if (deg >= 2) tail += count;
  if (tail == 0) throw std::domain_error("degree_tail_ratios: no node of degree >= 2");
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(j_max) - 1);
  for (int j = 2; j <= j_max; ++j) {
    const auto it = st.degree_hist.find(static_cast<std::uint64_t>(j));
    const double count = it == st.degree_hist.end() ? 0.0 : static_cast<double>(it->second);
    ratios.push_back(count / static_cast<double>(tail));
  }
  return ratios;
}

namespace {

SparseGraph induced_subgraph(const SparseGraph& g, const std::vector<char>& keep) {
  std::vector<Edge> edges;
  std::vector<std::uint32_t> multi;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& [a, b] = g.edges[k];
    if (keep[a] && keep[b]) {
      edges.push_back({a, b});
      if (g.has_multi_counts()) multi.push_back(g.multi_counts[k]);
    }
  }
  return compact(g.num_nodes, std::move(edges), std::move(multi),
                 [&](std::size_t i) { return g.label_of(static_cast<std::uint32_t>(i)); });
}

}  // namespace

SparseGraph p_sample(const SparseGraph& g, double p, Rng& rng) {
  if (!(p > 0.0) || !(p <= 1.0)) throw std::domain_error("p_sample: requires p in (0,1]");
  std::vector<char> keep(g.num_nodes, 0);
  for (std::size_t i = 0; i < g.num_nodes; ++i) keep[i] = rng.uniform() < p ? 1 : 0;
  return induced_subgraph(g, keep);
}

std::pair<SparseGraph, SparseGraph> p_sample_split(const SparseGraph& g, double p, Rng& rng) {
  if (!(p > 0.0) || !(p <= 1.0)) throw std::domain_error("p_sample_split: requires p in (0,1]");
  std::vector<char> keep(g.num_nodes, 0), rest(g.num_nodes, 0);
  for (std::size_t i = 0; i < g.num_nodes; ++i) {
    keep[i] = rng.uniform() < p ? 1 : 0;
    rest[i] = keep[i] ^ 1;
  }
  return {induced_subgraph(g, keep), induced_subgraph(g, rest)};
}

SparseGraph generate_gg_graph(double sigma, double tau_gg, double time_horizon, Rng& rng,
                              std::size_t truncation) {
  if (!(sigma > 0.0) || !(sigma < 1.0)) throw std::domain_error("generate_gg_graph: sigma in (0,1)");
  if (!(tau_gg > 0.0)) throw std::domain_error("generate_gg_graph: tau_gg > 0");
  if (!(time_horizon > 0.0)) throw std::domain_error("generate_gg_graph: time_horizon > 0");
  if (truncation == 0) {
    truncation = static_cast<std::size_t>(
        std::fmax(1e5, 50.0 * std::pow(time_horizon, 1.25)));
  }

  // size-biased GG weights: psi_St inverse is a plain power
  const double psi_beta = std::pow(tau_gg, sigma);
  std::vector<double> w;
  w.reserve(truncation);
  double xi = 0.0;
  for (std::size_t j = 0; j < truncation; ++j) {
    xi += rng.exponential();
    const double t = std::pow(xi / time_horizon + psi_beta, 1.0 / sigma) - tau_gg;
    w.push_back(rng.gamma(1.0 - sigma, t + tau_gg));
  }
  return generate_graph(w, rng);
}

SparseGraph generate_ba_graph(std::size_t n, std::size_t m, Rng& rng) {
  if (m < 1 || n <= m) throw std::domain_error("generate_ba_graph: requires n > m >= 1");

  std::vector<Edge> edges;
  edges.reserve(m * (n - m));
  std::vector<std::uint32_t> endpoints;  // node repeated once per incident edge end
  endpoints.reserve(2 * m * (n - m));

  std::vector<std::uint32_t> targets(m);
  std::iota(targets.begin(), targets.end(), 0u);  // first newcomer wires to all seeds
  for (std::uint32_t v = static_cast<std::uint32_t>(m); v < n; ++v) {
    for (std::uint32_t t : targets) {
      edges.push_back(make_edge(t, v));
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
    if (v + 1 == n) break;
    // next targets: m distinct draws proportional to degree
    targets.clear();
    while (targets.size() < m) {
      const std::uint32_t cand = endpoints[rng.uniform_below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), cand) == targets.end()) targets.push_back(cand);
    }
  }
  return compact(n, std::move(edges), {}, [](std::size_t i) { return std::uint64_t{i}; });
}

SparseGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    const char* ptr = line.c_str() + pos;
    char* end = nullptr;
    const unsigned long long a = std::strtoull(ptr, &end, 10);
    if (end == ptr) throw std::runtime_error("load_edge_list: " + path + ":" + std::to_string(line_no) + ": expected node id");
    ptr = end;
    const unsigned long long b = std::strtoull(ptr, &end, 10);
    if (end == ptr) throw std::runtime_error("load_edge_list: " + path + ":" + std::to_string(line_no) + ": expected second node id");
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    if (*end != '\0') throw std::runtime_error("load_edge_list: " + path + ":" + std::to_string(line_no) + ": trailing garbage");
    raw.emplace_back(std::min(a, b), std::max(a, b));
  }

  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [a, b] : raw) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto index_of = [&](std::uint64_t id) {
    return static_cast<std::uint32_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  SparseGraph g;
  g.num_nodes = ids.size();
  g.node_labels = std::move(ids);
  g.edges.reserve(raw.size());
  for (const auto& [a, b] : raw) g.edges.emplace_back(index_of(a), index_of(b));
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

void save_edge_list(const SparseGraph& g, const std::string& path,
                    const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_edge_list: cannot open " + path);
  for (const auto& h : header_comments) out << "# " << h << "\n";
  for (const auto& [a, b] : g.edges) out << g.label_of(a) << " " << g.label_of(b) << "\n";
  if (!out) throw std::runtime_error("save_edge_list: write failed for " + path);
}

}  // namespace mgg
