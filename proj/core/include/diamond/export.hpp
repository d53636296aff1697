#pragma once

#include <ostream>

#include "diamond/graph.hpp"
#include "diamond/measure.hpp"

namespace diamond {

// Formats are described in docs/formats.md.

// {"level":n,"vertex_count":V,"edge_count":E,"left_endpoint":0,"right_endpoint":1,
//  "edges":[{"word":"..","start":s,"end":t},...]}
void write_graph_json(std::ostream& out, const LevelGraph& g);

// Header "edge,word,start,end", one row per edge in index order.
void write_graph_csv(std::ostream& out, const LevelGraph& g);

// Header "word,density,mass", one row per edge of X_level.
void write_edge_measure_csv(std::ostream& out, int level, const MeasureSpec& m);

}  // namespace diamond
