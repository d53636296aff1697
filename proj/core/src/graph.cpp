#include "diamond/graph.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "diamond/errors.hpp"

namespace diamond {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

void require_level(const LevelGraph& g, const PointAddress& p) {
  if (p.level() != g.level()) {
    throw InvalidLevelError("point '" + p.to_string() + "' is not at graph level " + std::to_string(g.level()));
  }
}

}  // namespace

int configured_max_level() {
  const char* env = std::getenv("DIAMOND_MAX_LEVEL");
  if (env == nullptr || *env == '\0') return kDefaultMaxLevel;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 0) return kDefaultMaxLevel;
  return static_cast<int>(std::min<long>(value, kHardMaxLevel));
}

std::span<const Incidence> LevelGraph::incident(VertexId v) const {
  return std::span<const Incidence>(incidence_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

EdgeEnds LevelGraph::ancestor_ends(int k, EdgeIndex ancestor) const {
  if (k < 0 || k > level_) throw InvalidLevelError("ancestor level out of range");
  const auto span = edge_count_at(level_ - k);
  const EdgeIndex first = ancestor * span;
  return {ends_[first].start, ends_[first + span - 1].end};
}

GraphLocation LevelGraph::locate(const PointAddress& p) const {
  require_level(*this, p);
  const EdgeIndex e = p.word().index();
  GraphLocation loc;
  if (p.offset() == Length()) {
    loc.at_vertex = true;
    loc.vertex = ends_[e].start;
  } else if (p.offset() == edge_length()) {
    loc.at_vertex = true;
    loc.vertex = ends_[e].end;
  } else {
    loc.edge = e;
    loc.offset = p.offset();
  }
  return loc;
}

PointAddress LevelGraph::address_of(VertexId v) const {
  const auto& first = incident(v).front();
  const auto word = this->word(first.edge);
  return ends_[first.edge].start == v ? PointAddress::start_of(word) : PointAddress::end_of(word);
}

std::vector<std::uint32_t> LevelGraph::hop_distances(VertexId source) const {
  std::vector<std::uint32_t> hops(vertex_count(), kUnreached);
  std::vector<VertexId> frontier{source};
  std::vector<VertexId> next;
  hops[source] = 0;
  for (std::uint32_t depth = 1; !frontier.empty(); ++depth) {
    next.clear();
    for (VertexId v : frontier) {
      for (const auto& inc : incident(v)) {
        if (hops[inc.neighbor] == kUnreached) {
          hops[inc.neighbor] = depth;
          next.push_back(inc.neighbor);
        }
      }
    }
    frontier.swap(next);
  }
  return hops;
}

LevelGraph build_level(int n) { return build_level(n, configured_max_level()); }

LevelGraph build_level(int n, int max_level) {
  if (n < 0) throw InvalidLevelError("level must be non-negative");
  if (n > std::min(max_level, kHardMaxLevel)) {
    throw ResourceError("level " + std::to_string(n) + " exceeds the level budget " +
                        std::to_string(std::min(max_level, kHardMaxLevel)) + " (" +
                        std::to_string(edge_count_at(n)) + " edges)");
  }

  LevelGraph g;
  g.level_ = n;
  g.ends_ = {{0, 1}};
  g.vertex_counts_ = {2};
  std::uint64_t vertices = 2;
  for (int k = 0; k < n; ++k) {
    std::vector<EdgeEnds> next(g.ends_.size() * kDigitCount);
    for (std::size_t i = 0; i < g.ends_.size(); ++i) {
      const auto [a, b] = g.ends_[i];
      const auto base = static_cast<VertexId>(vertices + 4 * i);
      const VertexId v1 = base, top = base + 1, bottom = base + 2, v4 = base + 3;
      auto* child = &next[6 * i];
      child[0] = {a, v1};
      child[1] = {v1, top};
      child[2] = {top, v4};
      child[3] = {v1, bottom};
      child[4] = {bottom, v4};
      child[5] = {v4, b};
    }
    vertices += 4 * g.ends_.size();
    g.ends_.swap(next);
    g.vertex_counts_.push_back(vertices);
  }

  g.offsets_.assign(vertices + 1, 0);
  for (const auto& [s, t] : g.ends_) {
    ++g.offsets_[s + 1];
    ++g.offsets_[t + 1];
  }
  for (std::size_t v = 0; v < vertices; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.incidence_.resize(2 * g.ends_.size());
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t e = 0; e < g.ends_.size(); ++e) {
    const auto [s, t] = g.ends_[e];
    g.incidence_[cursor[s]++] = {t, static_cast<std::uint32_t>(e)};
    g.incidence_[cursor[t]++] = {s, static_cast<std::uint32_t>(e)};
  }
  return g;
}

std::vector<GraphLocation> collapse_vertex_map(const LevelGraph& fine, const LevelGraph& coarse) {
  if (fine.level() != coarse.level() + 1) {
    throw InvalidLevelError("collapse map needs graphs at consecutive levels");
  }
  std::vector<GraphLocation> image;
  image.reserve(fine.vertex_count());
  for (VertexId v = 0; v < fine.vertex_count(); ++v) {
    image.push_back(coarse.locate(project_point(fine.address_of(v), coarse.level())));
  }
  return image;
}

DistanceField::DistanceField(const LevelGraph& graph, const PointAddress& source)
    : graph_(&graph), source_(source) {
  require_level(graph, source);
  source_edge_ = source.word().index();
  const auto [a, b] = graph.ends(source_edge_);
  const auto from_a = graph.hop_distances(a);
  const auto from_b = graph.hop_distances(b);
  const std::int64_t len = graph.edge_length().units();
  const std::int64_t t = source.offset().units();
  vertex_distance_.resize(graph.vertex_count());
  for (std::size_t v = 0; v < vertex_distance_.size(); ++v) {
    vertex_distance_[v] = std::min(t + len * from_a[v], (len - t) + len * from_b[v]);
  }
}

Length DistanceField::to_point(const PointAddress& q) const {
  require_level(*graph_, q);
  const EdgeIndex e = q.word().index();
  const auto [c, d] = graph_->ends(e);
  const Length s = q.offset();
  Length best = min(to_vertex(c) + s, to_vertex(d) + (graph_->edge_length() - s));
  if (e == source_edge_) {
    const Length direct = s > source_.offset() ? s - source_.offset() : source_.offset() - s;
    best = min(best, direct);
  }
  return best;
}

Length geodesic_distance(const LevelGraph& g, const PointAddress& p, const PointAddress& q) {
  require_level(g, q);
  return DistanceField(g, p).to_point(q);
}

Length BallCover::covered_length() const {
  Length total;
  for (const auto& s : segments) total += s.length();
  return total;
}

BallCover ball_cover(const DistanceField& field, Length radius) {
  if (radius < Length()) throw InvalidParameterError("ball radius must be non-negative");
  const auto& g = field.graph();
  const Length len = g.edge_length();
  const EdgeIndex source_edge = field.source().word().index();
  const Length t = field.source().offset();

  // Only the source edge and edges touching a vertex strictly inside the ball can be covered.
  std::vector<EdgeIndex> candidates{source_edge};
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (field.to_vertex(v) < radius) {
      for (const auto& inc : g.incident(v)) candidates.push_back(inc.edge);
    }
  }
  if (candidates.size() > g.edge_count() / 4) {
    candidates.resize(g.edge_count());
    std::iota(candidates.begin(), candidates.end(), EdgeIndex{0});
  } else {
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }

  BallCover cover{field.source(), radius, {}};
  std::array<CoveredSegment, 3> pieces{};
  for (const EdgeIndex e : candidates) {
    const auto [c, d] = g.ends(e);
    std::size_t count = 0;
    const Length dc = field.to_vertex(c);
    const Length dd = field.to_vertex(d);
    if (radius > dc) pieces[count++] = {e, Length(), min(len, radius - dc)};
    if (radius > dd) pieces[count++] = {e, max(Length(), len - (radius - dd)), len};
    if (e == source_edge && radius > Length()) {
      pieces[count++] = {e, max(Length(), t - radius), min(len, t + radius)};
    }
    if (count == 0) continue;
    std::sort(pieces.begin(), pieces.begin() + static_cast<std::ptrdiff_t>(count),
              [](const auto& x, const auto& y) { return x.from < y.from; });
    CoveredSegment current = pieces[0];
    for (std::size_t i = 1; i < count; ++i) {
      if (pieces[i].from <= current.to) {
        current.to = max(current.to, pieces[i].to);
      } else {
        if (current.length() > Length()) cover.segments.push_back(current);
        current = pieces[i];
      }
    }
    if (current.length() > Length()) cover.segments.push_back(current);
  }
  return cover;
}

BallCover ball_cover(const LevelGraph& g, const PointAddress& center, Length radius) {
  return ball_cover(DistanceField(g, center), radius);
}

}  // namespace diamond
