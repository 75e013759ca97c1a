#pragma once

#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "coarsegeo/space.hpp"

namespace coarsegeo {

// Finite weighted graph with the shortest-path metric. Distance rows are
// computed by Dijkstra from the query endpoint on demand and memoized
// behind a lock; the graph itself is immutable after construction.
class GraphSpace final : public MetricSpace {
public:
  struct Edge {
    PointId u, v;
    double w;
  };

  // Vertex ids are 0..vertex_count-1; `basepoint` is relabeled to id 0.
  GraphSpace(std::size_t vertex_count, std::vector<Edge> edges,
             PointId basepoint, std::string name);

  std::string kind() const override { return "graph"; }
  std::string name() const override { return name_; }
  double distance(PointId x, PointId y) const override;
  std::vector<PointId> ball(double radius) const override;
  double enumeration_limit() const override { return 1e15; }
  std::string label(PointId p) const override;
  bool point_less(PointId a, PointId b) const override { return a < b; }
  std::size_t point_count() const override { return adj_.size(); }

  std::size_t vertex_count() const { return adj_.size(); }
  bool unit_weights() const { return unit_weights_; }
  bool connected() const;
  double min_weight() const { return min_w_; }
  double max_weight() const { return max_w_; }

  // Full shortest-path row from `src` (memoized, shared).
  const std::vector<double>& row(PointId src) const;

  // Parent of each vertex in the shortest-path tree from x0, choosing the
  // smallest parent id among optimal predecessors. parent[x0] == x0.
  std::vector<PointId> shortest_path_tree() const;

  // Original vertex id (before basepoint relabeling).
  PointId external_id(PointId p) const;

  static std::shared_ptr<GraphSpace> rooted_tree(int branching, int depth,
                                                 std::size_t max_vertices);
  static std::shared_ptr<GraphSpace> grid_graph(int width, int height);

private:
  struct Arc {
    PointId to;
    double w;
  };
  std::vector<std::vector<Arc>> adj_;
  std::string name_;
  PointId base_external_;
  bool unit_weights_ = true;
  double min_w_ = 1.0, max_w_ = 1.0;

  mutable std::shared_mutex mu_;
  mutable std::unordered_map<PointId, std::vector<double>> rows_;
};

}  // namespace coarsegeo
