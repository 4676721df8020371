#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "globalspin/report.hpp"

using namespace globalspin;

TEST(Report, CompareModes) {
  EXPECT_TRUE(make_check("a", 1.0, Compare::AtMost, 1.0).pass);
  EXPECT_FALSE(make_check("a", 1.0 + 1e-12, Compare::AtMost, 1.0).pass);
  EXPECT_TRUE(make_check("b", 2.0, Compare::AtLeast, 1.0).pass);
  EXPECT_FALSE(make_check("c", 0.0, Compare::Equal, 1.0).pass);
  EXPECT_TRUE(make_check("d", 0.29, Compare::Within, 0.28, 0.014).pass);
  EXPECT_FALSE(make_check("d", 0.30, Compare::Within, 0.28, 0.014).pass);
  EXPECT_FALSE(make_check("nan", std::numeric_limits<double>::quiet_NaN(), Compare::AtMost, 1.0).pass);
}

TEST(Report, JsonLinesAreParseable) {
  RunReport rep;
  rep.command = "globalspin verify";
  rep.seed = 7;
  rep.inputs.emplace_back("file \"x\"", text_digest("abc"));
  rep.add(make_check("ok", 1e-13, Compare::AtMost, 1e-12));
  rep.add(make_check("bad", 1.0, Compare::AtMost, 1e-12));
  rep.note("factor", "-1");
  std::ostringstream out;
  rep.write_json_lines(out);
  std::istringstream in(out.str());
  std::vector<nlohmann::json> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines.front()["seed"], 7);
  EXPECT_EQ(lines.front()["inputs"]["file \"x\""], text_digest("abc"));
  EXPECT_EQ(lines[1]["value"], "-1");
  EXPECT_EQ(lines[2]["name"], "ok");
  EXPECT_EQ(lines[2]["pass"], true);
  EXPECT_EQ(lines[3]["pass"], false);
  EXPECT_EQ(lines.back()["checks"], 2);
  EXPECT_EQ(lines.back()["pass"], false);
  EXPECT_FALSE(rep.all_passed());
}

TEST(Report, TextDigestIsStable) {
  EXPECT_EQ(text_digest(""), "cbf29ce484222325");
  EXPECT_NE(text_digest("a"), text_digest("b"));
  EXPECT_EQ(text_digest("wire"), text_digest("wire"));
}
