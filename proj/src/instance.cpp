#include "covsolve/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covsolve {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string itos(std::int64_t v) { return std::to_string(v); }

// Left adjacency by counting sort over the right-side CSR.
void build_left_adjacency(CoverageInstance& inst) {
  inst.left_offsets.assign(inst.n + 1, 0);
  for (std::int32_t i : inst.right_nodes) inst.left_offsets[i + 1]++;
  for (std::int64_t i = 0; i < inst.n; ++i) inst.left_offsets[i + 1] += inst.left_offsets[i];
  inst.left_nodes.resize(inst.right_nodes.size());
  std::vector<std::int64_t> cursor(inst.left_offsets.begin(), inst.left_offsets.end() - 1);
  for (std::int64_t j = 0; j < inst.r; ++j) {
    for (std::int64_t e = inst.right_offsets[j]; e < inst.right_offsets[j + 1]; ++e) {
      inst.left_nodes[cursor[inst.right_nodes[e]]++] = static_cast<std::int32_t>(j);
    }
  }
}

}  // namespace

double CoverageInstance::total_weight() const {
  double s = 0;
  for (double w : weights) s += w;
  return s;
}

CoverageInstance CoverageInstance::build(std::int64_t n, std::int64_t r,
                                         std::vector<std::pair<std::int32_t, std::int32_t>> edges,
                                         std::vector<double> weights) {
  if (weights.empty() && r > 0) weights.assign(r, 1.0 / static_cast<double>(r));
  // Group by right node, ascending left index within each row.
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  std::vector<std::int64_t> offsets(r + 1, 0);
  std::vector<std::int32_t> nodes;
  nodes.reserve(edges.size());
  for (const auto& [i, j] : edges) {
    if (j < 0 || j >= r) fail("edge (" + itos(i) + "," + itos(j) + "): right index out of range [0," + itos(r) + ")");
    offsets[j + 1]++;
    nodes.push_back(i);
  }
  for (std::int64_t j = 0; j < r; ++j) offsets[j + 1] += offsets[j];
  return from_csr(n, std::move(offsets), std::move(nodes), std::move(weights));
}

CoverageInstance CoverageInstance::from_csr(std::int64_t n,
                                            std::vector<std::int64_t> right_offsets,
                                            std::vector<std::int32_t> right_nodes,
                                            std::vector<double> weights) {
  CoverageInstance inst;
  inst.n = n;
  inst.r = static_cast<std::int64_t>(right_offsets.size()) - 1;
  inst.right_offsets = std::move(right_offsets);
  inst.right_nodes = std::move(right_nodes);
  inst.weights = std::move(weights);
  inst.validate();
  build_left_adjacency(inst);
  return inst;
}

void CoverageInstance::validate() const {
  if (n < 1) fail("instance must have at least one left node");
  if (r < 1) fail("instance must have at least one right node");
  if (static_cast<std::int64_t>(right_offsets.size()) != r + 1) fail("right offset array has wrong size");
  if (right_offsets.front() != 0 ||
      right_offsets.back() != static_cast<std::int64_t>(right_nodes.size()))
    fail("right offsets do not cover the edge array");
  if (static_cast<std::int64_t>(weights.size()) != r)
    fail("weight count " + itos(static_cast<std::int64_t>(weights.size())) + " != right node count " + itos(r));
  for (std::int64_t j = 0; j < r; ++j) {
    if (right_offsets[j + 1] < right_offsets[j]) fail("right offsets not monotone at node " + itos(j));
    if (right_offsets[j + 1] == right_offsets[j]) fail("right node " + itos(j) + " has no neighbors");
    for (std::int64_t e = right_offsets[j]; e < right_offsets[j + 1]; ++e) {
      std::int32_t i = right_nodes[e];
      if (i < 0 || i >= n)
        fail("right node " + itos(j) + ": left index " + itos(i) + " out of range [0," + itos(n) + ")");
      if (e > right_offsets[j] && right_nodes[e - 1] >= i)
        fail("right node " + itos(j) + ": neighbor list not strictly increasing (duplicate edge?)");
    }
    if (!std::isfinite(weights[j])) fail("weight of right node " + itos(j) + " is not finite");
    if (weights[j] < 0) fail("weight of right node " + itos(j) + " is negative");
  }
  if (!left_nodes.empty()) {
    // Derived adjacency must encode the same edge set.
    if (static_cast<std::int64_t>(left_offsets.size()) != n + 1 ||
        left_nodes.size() != right_nodes.size())
      fail("left adjacency inconsistent with right adjacency");
  }
}

bool CoverageInstance::operator==(const CoverageInstance& other) const {
  return n == other.n && r == other.r && right_offsets == other.right_offsets &&
         right_nodes == other.right_nodes && weights == other.weights;
}

CoverageInstance normalize_weights(const CoverageInstance& inst) {
  double total = inst.total_weight();
  if (total <= 0) fail("normalize_weights: weight sum is zero");
  CoverageInstance out = inst;
  for (double& w : out.weights) w /= total;
  return out;
}

UndirectedGraph load_snap_edgelist(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream ls(line);
    std::int64_t u, v;
    if (!(ls >> u >> v)) fail(path + ":" + itos(line_no) + ": expected two integers");
    std::string extra;
    if (ls >> extra) fail(path + ":" + itos(line_no) + ": trailing token '" + extra + "'");
    if (u == v) continue;  // self-loop
    raw.emplace_back(u, v);
  }
  if (raw.empty()) fail(path + ": empty graph");

  // Remap node ids by ascending original id so downstream tie-breaking does
  // not depend on file order.
  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto remap = [&](std::int64_t id) {
    return static_cast<std::int32_t>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  UndirectedGraph g;
  g.num_nodes = static_cast<std::int64_t>(ids.size());
  g.edges.reserve(raw.size());
  for (const auto& [u, v] : raw) {
    std::int32_t a = remap(u), b = remap(v);
    if (a > b) std::swap(a, b);
    g.edges.emplace_back(a, b);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

CoverageInstance build_symmetric_bipartite(const UndirectedGraph& g) {
  if (g.num_nodes < 1) fail("build_symmetric_bipartite: empty graph");
  auto v = g.num_nodes;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  edges.reserve(static_cast<std::size_t>(v) + 2 * g.edges.size());
  for (std::int64_t i = 0; i < v; ++i) {
    edges.emplace_back(static_cast<std::int32_t>(i), static_cast<std::int32_t>(i));
  }
  for (const auto& [a, b] : g.edges) {
    edges.emplace_back(a, b);
    edges.emplace_back(b, a);
  }
  return CoverageInstance::build(v, v, std::move(edges));
}

CoverageInstance load_native(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::int64_t n, r;
  if (!(in >> n >> r)) fail(path + ": expected 'n r' header");
  if (n < 1 || r < 1) fail(path + ": node counts must be positive");
  std::vector<double> weights(r);
  for (std::int64_t j = 0; j < r; ++j) {
    if (!(in >> weights[j])) fail(path + ": expected " + itos(r) + " weights");
  }
  std::int64_t m;
  if (!(in >> m)) fail(path + ": expected edge count");
  if (m < 0) fail(path + ": negative edge count");
  std::vector<std::pair<std::int32_t, std::int32_t>> edges(m);
  for (std::int64_t e = 0; e < m; ++e) {
    std::int64_t i, j;
    if (!(in >> i >> j)) fail(path + ": expected " + itos(m) + " edges");
    if (i < 0 || i >= n) fail(path + ": edge " + itos(e) + ": left index " + itos(i) + " out of range [0," + itos(n) + ")");
    edges[e] = {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)};
  }
  return CoverageInstance::build(n, r, std::move(edges), std::move(weights));
}

void save_native(const CoverageInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot open '" + path + "' for writing");
  char buf[64];
  out << inst.n << ' ' << inst.r << '\n';
  for (std::int64_t j = 0; j < inst.r; ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", inst.weights[j]);
    out << (j ? " " : "") << buf;
  }
  out << '\n' << inst.num_edges() << '\n';
  for (std::int64_t j = 0; j < inst.r; ++j) {
    for (std::int32_t i : inst.neighbors(j)) out << i << ' ' << j << '\n';
  }
  if (!out) fail("write to '" + path + "' failed");
}

}  // namespace covsolve
