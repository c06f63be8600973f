#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace covsolve {

// Undirected simple graph with dense node ids, as produced by the SNAP
// loader. Edges are stored once with u < v, sorted and deduplicated.
struct UndirectedGraph {
  std::int64_t num_nodes = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
};

// Weighted bipartite coverage instance (L, R, E) in CSR form. The left side
// is the ground set. Immutable after construction; safe to share across
// threads.
struct CoverageInstance {
  std::int64_t n = 0;  // |L|
  std::int64_t r = 0;  // |R|

  // N(j) = right_nodes[right_offsets[j] .. right_offsets[j+1]), strictly
  // increasing within each row.
  std::vector<std::int64_t> right_offsets;
  std::vector<std::int32_t> right_nodes;

  // Reverse adjacency: right nodes containing left node i.
  std::vector<std::int64_t> left_offsets;
  std::vector<std::int32_t> left_nodes;

  std::vector<double> weights;  // w_j >= 0 per right node

  std::int64_t num_edges() const { return static_cast<std::int64_t>(right_nodes.size()); }
  std::int64_t degree(std::int64_t j) const { return right_offsets[j + 1] - right_offsets[j]; }

  std::span<const std::int32_t> neighbors(std::int64_t j) const {
    return {right_nodes.data() + right_offsets[j],
            static_cast<std::size_t>(degree(j))};
  }
  std::span<const std::int32_t> covered_by(std::int64_t i) const {
    return {left_nodes.data() + left_offsets[i],
            static_cast<std::size_t>(left_offsets[i + 1] - left_offsets[i])};
  }

  double total_weight() const;

  // Builds from an edge list (left, right); sorts, rejects duplicates,
  // validates. Empty weights mean uniform 1/r.
  static CoverageInstance build(std::int64_t n, std::int64_t r,
                                std::vector<std::pair<std::int32_t, std::int32_t>> edges,
                                std::vector<double> weights = {});

  // Builds from right-side CSR parts; validates and derives left adjacency.
  static CoverageInstance from_csr(std::int64_t n,
                                   std::vector<std::int64_t> right_offsets,
                                   std::vector<std::int32_t> right_nodes,
                                   std::vector<double> weights);

  // Throws std::invalid_argument naming the offending node/edge when any
  // instance invariant fails.
  void validate() const;

  bool operator==(const CoverageInstance& other) const;
};

// Weights scaled so they sum to 1; adjacency unchanged. Throws when the
// weight sum is zero.
CoverageInstance normalize_weights(const CoverageInstance& inst);

// Whitespace-separated integer pairs, '#' comment lines. Node ids are
// remapped to 0..V-1 by ascending original id; duplicate edges and
// self-loops are dropped. Throws on malformed lines (with line number) and
// on empty graphs.
UndirectedGraph load_snap_edgelist(const std::string& path);

// L = R = V with edges {(i,i')} plus {(u,v'),(v,u')} per original edge, so
// m = V + 2E; uniform weights 1/V.
CoverageInstance build_symmetric_bipartite(const UndirectedGraph& g);

// Native text format:
//   line 1: n r
//   line 2: r weights
//   line 3: m
//   then m lines: i j   (left i in [0,n), right j in [0,r))
CoverageInstance load_native(const std::string& path);
void save_native(const CoverageInstance& inst, const std::string& path);

}  // namespace covsolve
