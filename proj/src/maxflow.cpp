#include "covergeo/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "covergeo/errors.hpp"

namespace covergeo {

MaxFlow::MaxFlow(int nodes) : head_(nodes, -1) {
  if (nodes < 2) throw InputError("max-flow graph needs at least two nodes");
}

void MaxFlow::add_edge(int u, int v, Cap cap, Cap rev_cap) {
  if (cap < 0 || rev_cap < 0) throw InputError("negative capacity");
  arcs_.push_back({v, head_[u], cap});
  head_[u] = static_cast<int>(arcs_.size()) - 1;
  arcs_.push_back({u, head_[v], rev_cap});
  head_[v] = static_cast<int>(arcs_.size()) - 1;
}

bool MaxFlow::bfs(int s, int t) {
  level_.assign(head_.size(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    // Nodes at or beyond the sink's level cannot lie on a shortest path.
    if (level_[t] >= 0 && level_[u] >= level_[t]) break;
    for (int a = head_[u]; a != -1; a = arcs_[a].next) {
      if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
        level_[arcs_[a].to] = level_[u] + 1;
        q.push(arcs_[a].to);
      }
    }
  }
  return level_[t] >= 0;
}

// Iterative blocking-flow search; recursion depth would follow path length.
MaxFlow::Cap MaxFlow::dfs(int s, int t, Cap limit) {
  std::vector<int> path;  // arcs along the current path
  Cap pushed_total = 0;
  int u = s;
  while (true) {
    if (u == t) {
      Cap f = limit - pushed_total;
      for (int a : path) f = std::min(f, arcs_[a].cap);
      for (int a : path) {
        arcs_[a].cap -= f;
        arcs_[a ^ 1].cap += f;
      }
      pushed_total += f;
      if (pushed_total == limit) return pushed_total;
      // Retreat to the tail of the first saturated arc.
      std::size_t keep = 0;
      while (keep < path.size() && arcs_[path[keep]].cap > 0) ++keep;
      path.resize(keep);
      u = path.empty() ? s : arcs_[path.back()].to;
      continue;
    }
    int& a = iter_[u];
    for (; a != -1; a = arcs_[a].next) {
      const Arc& arc = arcs_[a];
      if (arc.cap > 0 && level_[arc.to] == level_[u] + 1) break;
    }
    if (a != -1) {
      path.push_back(a);
      u = arcs_[a].to;
    } else {
      level_[u] = -1;  // dead end
      if (path.empty()) return pushed_total;
      const int back = path.back();
      path.pop_back();
      u = arcs_[back ^ 1].to;
      iter_[u] = arcs_[iter_[u]].next;
    }
  }
}

MaxFlow::Cap MaxFlow::solve(int s, int t) {
  Cap flow = 0;
  const Cap inf = std::numeric_limits<Cap>::max();
  while (bfs(s, t)) {
    iter_ = head_;
    flow += dfs(s, t, inf);
  }
  return flow;
}

std::vector<std::uint8_t> MaxFlow::reaches_sink(int t) const {
  std::vector<std::uint8_t> seen(head_.size(), 0);
  std::queue<int> q;
  seen[t] = 1;
  q.push(t);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    // Arc a leaves v; its partner a^1 goes u -> v with residual arcs_[a^1].cap.
    for (int a = head_[v]; a != -1; a = arcs_[a].next) {
      const int u = arcs_[a].to;
      if (!seen[u] && arcs_[a ^ 1].cap > 0) {
        seen[u] = 1;
        q.push(u);
      }
    }
  }
  return seen;
}

std::vector<std::uint8_t> MaxFlow::reachable_from(int s) const {
  std::vector<std::uint8_t> seen(head_.size(), 0);
  std::queue<int> q;
  seen[s] = 1;
  q.push(s);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int a = head_[u]; a != -1; a = arcs_[a].next) {
      if (!seen[arcs_[a].to] && arcs_[a].cap > 0) {
        seen[arcs_[a].to] = 1;
        q.push(arcs_[a].to);
      }
    }
  }
  return seen;
}

}  // namespace covergeo
