#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "diamond/address.hpp"
#include "diamond/length.hpp"

namespace diamond {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint64_t;

inline constexpr int kDefaultMaxLevel = 8;
inline constexpr int kHardMaxLevel = 10;

// Largest level build_level accepts: DIAMOND_MAX_LEVEL if set (clamped to
// kHardMaxLevel), otherwise kDefaultMaxLevel.
int configured_max_level();

struct EdgeEnds {
  VertexId start;
  VertexId end;
};

struct Incidence {
  VertexId neighbor;
  std::uint32_t edge;
};

constexpr std::uint64_t edge_count_at(int level) {
  std::uint64_t n = 1;
  for (int i = 0; i < level; ++i) n *= 6;
  return n;
}
constexpr std::uint64_t vertex_count_at(int level) { return 2 + 4 * (edge_count_at(level) - 1) / 5; }

// A point of a level graph in canonical form: either a vertex, or an edge
// interior offset. Points of X_n with several addresses compare equal here.
struct GraphLocation {
  bool at_vertex = false;
  VertexId vertex = 0;
  EdgeIndex edge = 0;
  Length offset;

  friend bool operator==(const GraphLocation&, const GraphLocation&) = default;
};

/// X_n as a metric graph: 6^n edges of length 4^-n. Edge i carries the
/// word EdgeWord::from_index(n, i); vertex 0 and 1 are the left and right
/// endpoints of the original interval.
///
/// Vertices of X_k keep their ids in X_{k+1}; refining level-k edge i adds
/// vertices V_k + 4i + {0,1,2,3} = {v1, top, bottom, v4}.
class LevelGraph {
 public:
  int level() const { return level_; }
  std::uint64_t edge_count() const { return ends_.size(); }
  std::uint64_t vertex_count() const { return offsets_.size() - 1; }
  Length edge_length() const { return Length::edge(level_); }

  static constexpr VertexId left_endpoint() { return 0; }
  static constexpr VertexId right_endpoint() { return 1; }

  EdgeEnds ends(EdgeIndex e) const { return ends_[e]; }
  EdgeWord word(EdgeIndex e) const { return EdgeWord::from_index(level_, e); }
  std::span<const Incidence> incident(VertexId v) const;
  std::size_t degree(VertexId v) const { return incident(v).size(); }

  // Number of vertices of X_k for k = 0..level.
  std::span<const std::uint64_t> vertex_counts_by_level() const { return vertex_counts_; }

  // Endpoints of the level-k ancestor edge `ancestor` (k <= level), as vertices of this graph.
  EdgeEnds ancestor_ends(int k, EdgeIndex ancestor) const;

  GraphLocation locate(const PointAddress& p) const;
  PointAddress address_of(VertexId v) const;

  // Unit-length hop counts from source to every vertex.
  std::vector<std::uint32_t> hop_distances(VertexId source) const;

 private:
  friend LevelGraph build_level(int n);
  friend LevelGraph build_level(int n, int max_level);

  int level_ = 0;
  std::vector<EdgeEnds> ends_;
  std::vector<std::uint64_t> offsets_;  // CSR row offsets into incidence_
  std::vector<Incidence> incidence_;
  std::vector<std::uint64_t> vertex_counts_;
};

LevelGraph build_level(int n);
LevelGraph build_level(int n, int max_level);

// Image under pi_{n+1,n} of every vertex of `fine`, located on `coarse`.
std::vector<GraphLocation> collapse_vertex_map(const LevelGraph& fine, const LevelGraph& coarse);

/// Exact geodesic distances from one point to every vertex of a level graph.
class DistanceField {
 public:
  DistanceField(const LevelGraph& graph, const PointAddress& source);

  const LevelGraph& graph() const { return *graph_; }
  const PointAddress& source() const { return source_; }

  Length to_vertex(VertexId v) const { return Length::from_units(vertex_distance_[v]); }
  Length to_point(const PointAddress& q) const;

 private:
  const LevelGraph* graph_;
  PointAddress source_;
  EdgeIndex source_edge_;
  std::vector<std::int64_t> vertex_distance_;
};

Length geodesic_distance(const LevelGraph& g, const PointAddress& p, const PointAddress& q);

struct CoveredSegment {
  EdgeIndex edge;
  Length from;
  Length to;

  Length length() const { return to - from; }
  friend bool operator==(const CoveredSegment&, const CoveredSegment&) = default;
};

/// Closed metric ball B(center, radius) as per-edge covered intervals. Only
/// intervals of positive length are kept; segments are sorted by edge and
/// disjoint within an edge.
struct BallCover {
  PointAddress center;
  Length radius;
  std::vector<CoveredSegment> segments;

  Length covered_length() const;
};

BallCover ball_cover(const DistanceField& field, Length radius);
BallCover ball_cover(const LevelGraph& g, const PointAddress& center, Length radius);

}  // namespace diamond
