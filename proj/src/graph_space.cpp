#include "coarsegeo/graph_space.hpp"

#include <algorithm>
#include <mutex>
#include <cmath>
#include <limits>
#include <queue>

namespace coarsegeo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GraphSpace::GraphSpace(std::size_t vertex_count, std::vector<Edge> edges,
                       PointId basepoint, std::string name)
    : name_(std::move(name)), base_external_(basepoint) {
  if (vertex_count == 0) throw SpecError(name_ + ": empty vertex set");
  if (basepoint >= vertex_count) {
    throw SpecError(name_ + ": basepoint out of range");
  }
  adj_.resize(vertex_count);
  // Relabel so the basepoint becomes id 0 (swap with whatever held 0).
  auto relabel = [&](PointId v) -> PointId {
    if (v == basepoint) return 0;
    if (v == 0) return basepoint;
    return v;
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw SpecError(name_ + ": edges[" + std::to_string(i) +
                      "]: endpoint out of range");
    }
    if (e.w < 0.0) {
      throw SpecError(name_ + ": edges[" + std::to_string(i) +
                      "][2]: negative edge weight");
    }
    PointId u = relabel(e.u), v = relabel(e.v);
    adj_[u].push_back({v, e.w});
    adj_[v].push_back({u, e.w});
    if (e.w != 1.0) unit_weights_ = false;
    min_w_ = std::min(min_w_, e.w);
    max_w_ = std::max(max_w_, e.w);
  }
  for (auto& arcs : adj_) {
    std::sort(arcs.begin(), arcs.end(),
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }
}

double GraphSpace::distance(PointId x, PointId y) const {
  if (x >= adj_.size() || y >= adj_.size()) {
    throw DomainError("point not in space");
  }
  if (x == y) return 0.0;
  const auto& r = row(x);
  if (r[y] == kInf) throw DomainError("points in different graph components");
  return r[y];
}

const std::vector<double>& GraphSpace::row(PointId src) const {
  {
    std::shared_lock lk(mu_);
    auto it = rows_.find(src);
    if (it != rows_.end()) return it->second;
  }
  std::vector<double> dist(adj_.size(), kInf);
  dist[src] = 0.0;
  using Item = std::pair<double, PointId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (const Arc& a : adj_[u]) {
      double nd = d + a.w;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        pq.push({nd, a.to});
      }
    }
  }
  std::unique_lock lk(mu_);
  return rows_.emplace(src, std::move(dist)).first->second;
}

std::vector<PointId> GraphSpace::ball(double radius) const {
  const auto& r = row(0);
  std::vector<PointId> out;
  for (PointId v = 0; v < adj_.size(); ++v) {
    if (r[v] <= radius + kRadiusTol) out.push_back(v);
  }
  return out;
}

std::string GraphSpace::label(PointId p) const {
  return "v" + std::to_string(external_id(p));
}

PointId GraphSpace::external_id(PointId p) const {
  if (p == 0) return base_external_;
  if (p == base_external_) return 0;
  return p;
}

bool GraphSpace::connected() const {
  const auto& r = row(0);
  return std::none_of(r.begin(), r.end(),
                      [](double d) { return d == kInf; });
}

std::vector<PointId> GraphSpace::shortest_path_tree() const {
  const auto& dist = row(0);
  std::vector<PointId> parent(adj_.size(), 0);
  parent[0] = 0;
  for (PointId v = 1; v < adj_.size(); ++v) {
    if (dist[v] == kInf) throw DomainError("graph is disconnected");
    PointId best = v;
    for (const Arc& a : adj_[v]) {
      if (std::abs(dist[a.to] + a.w - dist[v]) <= 1e-12 * (1.0 + dist[v])) {
        if (best == v || a.to < best) best = a.to;
      }
    }
    if (best == v) throw DomainError("no shortest-path predecessor found");
    parent[v] = best;
  }
  return parent;
}

std::shared_ptr<GraphSpace> GraphSpace::rooted_tree(
    int branching, int depth, std::size_t max_vertices) {
  if (branching < 1) throw SpecError("rooted-tree: branching must be >= 1");
  if (depth < 0) throw SpecError("rooted-tree: depth must be >= 0");
  std::vector<Edge> edges;
  std::size_t count = 1;
  // Breadth-first ids; generation stops at max_vertices or full depth.
  std::vector<PointId> frontier = {0};
  for (int d = 0; d < depth && count < max_vertices; ++d) {
    std::vector<PointId> next;
    for (PointId u : frontier) {
      for (int b = 0; b < branching && count < max_vertices; ++b) {
        PointId v = static_cast<PointId>(count++);
        edges.push_back({u, v, 1.0});
        next.push_back(v);
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return std::make_shared<GraphSpace>(count, std::move(edges), 0,
                                      "rooted-tree");
}

std::shared_ptr<GraphSpace> GraphSpace::grid_graph(int width, int height) {
  if (width < 1 || height < 1) {
    throw SpecError("grid-graph: width and height must be >= 1");
  }
  std::vector<Edge> edges;
  auto id = [&](int x, int y) { return static_cast<PointId>(y * width + x); };
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (x + 1 < width) edges.push_back({id(x, y), id(x + 1, y), 1.0});
      if (y + 1 < height) edges.push_back({id(x, y), id(x, y + 1), 1.0});
    }
  }
  return std::make_shared<GraphSpace>(static_cast<std::size_t>(width) * height,
                                      std::move(edges), 0, "grid-graph");
}

}  // namespace coarsegeo
