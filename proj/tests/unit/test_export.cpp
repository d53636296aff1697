#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "diamond/export.hpp"

using namespace diamond;

TEST(Export, GraphJsonRoundTrip) {
  const auto g = build_level(2);
  std::ostringstream out;
  write_graph_json(out, g);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["level"], 2);
  EXPECT_EQ(j["vertex_count"], 30);
  EXPECT_EQ(j["edge_count"], 36);
  ASSERT_EQ(j["edges"].size(), 36u);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    EXPECT_EQ(j["edges"][e]["word"], g.word(e).to_string());
    EXPECT_EQ(j["edges"][e]["start"], g.ends(e).start);
    EXPECT_EQ(j["edges"][e]["end"], g.ends(e).end);
  }
}

TEST(Export, GraphCsv) {
  std::ostringstream out;
  write_graph_csv(out, build_level(0));
  EXPECT_EQ(out.str(), "edge,word,start,end\n0,-,0,1\n");
}

TEST(Export, MeasureCsv) {
  std::ostringstream out;
  write_edge_measure_csv(out, 1, MeasureSpec(0.5));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "word,density,mass");
  std::getline(in, line);
  EXPECT_EQ(line, "1,1,0.25");
  std::getline(in, line);
  EXPECT_EQ(line, "2,0.5,0.125");
  int rows = 2;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6);
}
