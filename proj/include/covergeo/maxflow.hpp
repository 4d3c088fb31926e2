#pragma once

#include <cstdint>
#include <vector>

namespace covergeo {

/// Dinic max-flow on integer capacities.
class MaxFlow {
 public:
  using Cap = std::int64_t;

  explicit MaxFlow(int nodes);

  int node_count() const { return static_cast<int>(head_.size()); }

  /// Arc u->v with capacity `cap` and reverse arc v->u with `rev_cap`.
  void add_edge(int u, int v, Cap cap, Cap rev_cap = 0);

  Cap solve(int s, int t);

  /// After solve: nodes that can still reach `t` in the residual graph. Their
  /// complement is the source side of the maximal minimum cut.
  std::vector<std::uint8_t> reaches_sink(int t) const;

  /// After solve: nodes reachable from `s` (source side of the minimal cut).
  std::vector<std::uint8_t> reachable_from(int s) const;

 private:
  struct Arc {
    int to;
    int next;
    Cap cap;
  };

  bool bfs(int s, int t);
  Cap dfs(int s, int t, Cap limit);

  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace covergeo
