#include <gtest/gtest.h>

#include <string>

#include "volprod/io.hpp"
#include "volprod/suite.hpp"

using namespace volprod;

TEST(BodyDocument, ParsesAndRoundTrips) {
  const BodyDocument doc =
      parse_body_document(R"({"name": "sq", "vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]], "centre": [0, 0]})");
  EXPECT_EQ(doc.name, "sq");
  ASSERT_TRUE(doc.centre.has_value());
  const ConvexPolygon k = make_polygon(doc.vertices);
  const BodyDocument again = parse_body_document(to_json(make_document(doc.name, k, doc.centre)));
  EXPECT_EQ(make_polygon(again.vertices), k);
  EXPECT_EQ(again.vertices, std::vector<Point2>(k.vertices().begin(), k.vertices().end()));
}

TEST(BodyDocument, OptionalFields) {
  const BodyDocument doc = parse_body_document(R"({"vertices": [[0, 0], [1, 0], [0, 1]], "centre": null})");
  EXPECT_TRUE(doc.name.empty());
  EXPECT_FALSE(doc.centre.has_value());
}

TEST(BodyDocument, Errors) {
  for (const char* text : {"", "{", "[]", R"({"vertices": 3})", R"({"vertices": [[0]]})",
                           R"({"vertices": [[0, 0]], "centre": [1]})", R"({"name": 4, "vertices": []})"})
    EXPECT_THROW(parse_body_document(text), DocumentError) << text;
}

TEST(FormatDouble, RoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5})
    EXPECT_EQ(std::stod(format_double(x)), x);
  EXPECT_EQ(format_double(8.0), "8");
}

TEST(VertexCsv, RoundTrip) {
  const ConvexPolygon k = random_body(6, 9);
  EXPECT_EQ(parse_vertex_csv(vertex_csv(k)), k);
  EXPECT_THROW(parse_vertex_csv("x,y\n1;2\n"), DocumentError);
  EXPECT_THROW(parse_vertex_csv("x,y\na,b\n"), DocumentError);
}

TEST(Svg, EscapesAndScales) {
  SvgScene s;
  s.polygon(regular_ngon(5), "red", "none", "a<b");
  s.text({0, 0}, "x & y");
  const std::string out = s.str();
  EXPECT_NE(out.find("a&lt;b"), std::string::npos);
  EXPECT_NE(out.find("x &amp; y"), std::string::npos);
  EXPECT_EQ(out.find("@SW@"), std::string::npos);
}

TEST(ParallelMap, OrderedByIndex) {
  const auto v = parallel_map<int>(1000, [](std::size_t i) { return static_cast<int>(i * i % 97); }, 8);
  ASSERT_EQ(v.size(), 1000u);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i % 97));
  EXPECT_TRUE(parallel_map<int>(0, [](std::size_t) { return 0; }).empty());
}

TEST(Suite, DeterministicAcrossWorkerCounts) {
  const auto items = build_verify_suite(Theorem::T2, 7, 60);
  const auto a = render_csv(verify_header(Theorem::T2), run_verify_suite(Theorem::T2, items));
  const auto rows1 = parallel_map<ReportRow>(items.size(),
                                             [&](std::size_t i) { return evaluate_item(Theorem::T2, i, items[i]); }, 1);
  EXPECT_EQ(a, render_csv(verify_header(Theorem::T2), rows1));
  EXPECT_EQ(a, render_csv(verify_header(Theorem::T2),
                          run_verify_suite(Theorem::T2, build_verify_suite(Theorem::T2, 7, 60))));
}

TEST(Suite, AllTheoremsPass) {
  for (Theorem th : {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T5, Theorem::T6, Theorem::L7}) {
    const auto items = build_verify_suite(th, 3, 90);
    EXPECT_GE(items.size(), 90u);
    const auto rows = run_verify_suite(th, items);
    for (const auto& r : rows) {
      EXPECT_EQ(r.cells.size(), verify_header(th).size());
      EXPECT_TRUE(r.pass) << to_string(th) << " row " << r.cells[0];
    }
  }
}

TEST(Suite, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Sweeps, Example1AndExample2) {
  const Example1Row r = example1_point(5, 1e-3);
  EXPECT_TRUE(r.in_domain);
  EXPECT_LE(r.rel_dev, 1e-9);
  EXPECT_FALSE(example1_point(12, 0.1).in_domain);
  EXPECT_NEAR(example1_slope(4), example1_excess_derivative, 0.05);
  const Example2Sweep s = example2_sweep(6);
  EXPECT_GE(s.exponent, 0.45);
  EXPECT_LE(s.exponent, 0.55);
}
