#include "diamond/export.hpp"

#include <iomanip>

namespace diamond {
namespace {

std::string printable(const EdgeWord& w) { return w.level() == 0 ? std::string("-") : w.to_string(); }

}  // namespace

void write_graph_json(std::ostream& out, const LevelGraph& g) {
  out << "{\"level\":" << g.level() << ",\"vertex_count\":" << g.vertex_count() << ",\"edge_count\":" << g.edge_count()
      << ",\"left_endpoint\":" << LevelGraph::left_endpoint() << ",\"right_endpoint\":" << LevelGraph::right_endpoint()
      << ",\"edges\":[";
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto [s, t] = g.ends(e);
    if (e != 0) out << ',';
    out << "{\"word\":\"" << printable(g.word(e)) << "\",\"start\":" << s << ",\"end\":" << t << '}';
  }
  out << "]}\n";
}

void write_graph_csv(std::ostream& out, const LevelGraph& g) {
  out << "edge,word,start,end\n";
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto [s, t] = g.ends(e);
    out << e << ',' << printable(g.word(e)) << ',' << s << ',' << t << '\n';
  }
}

void write_edge_measure_csv(std::ostream& out, int level, const MeasureSpec& m) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "word,density,mass\n" << std::setprecision(17);
  for (const auto& row : edge_measure_table(level, m)) {
    out << printable(row.word) << ',' << row.density << ',' << row.mass << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace diamond
