#include <gtest/gtest.h>

#include "coha/quiver/json_io.hpp"

using namespace coha;

namespace {

const std::string kData = COHA_DATA_DIR;

DualityQuiver load(const std::string& name) { return load_quiver(kData + "/" + name + ".json"); }

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  for (const auto& v : vs)
    if (v.code == code) return true;
  return false;
}

template <class F>
void expect_code(F&& f, const std::string& code) {
  try {
    f();
    ADD_FAILURE() << "expected " << code;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Validate, ShippedQuiversAreValid) {
  for (auto n : {"jordan_sp", "jordan_oeven", "jordan_oodd", "folded_a3"}) {
    auto q = load(n);
    auto r = validate(q);
    EXPECT_TRUE(r.empty()) << n << ": " << violations_to_json(r).dump();
  }
}

TEST(Validate, JordanTripledWeights) {
  auto q = load("jordan_sp");
  ASSERT_EQ(q.num_arrows(), 3);
  EXPECT_EQ(to_text(q.arrows[0].weight), "t1");
  EXPECT_EQ(to_text(q.arrows[1].weight), "t2");
  EXPECT_EQ(to_text(q.arrows[2].weight), "-t1 - t2");
}

TEST(Validate, ThetaNotInvolutive) {
  auto q = load("folded_a3");
  q.arrows[q.arrow_index("a")].theta = "a_bar";
  q.finalize();
  EXPECT_TRUE(has_code(validate(q), "theta-not-involutive"));
}

TEST(Validate, SignIncompatible) {
  auto q = load("folded_a3");
  q.arrows[q.arrow_index("b")].sgn = 1;
  q.finalize();
  EXPECT_TRUE(has_code(validate(q), "sign-incompatible"));
}

TEST(Validate, OtherViolations) {
  auto q = load("jordan_sp");
  q.vertices[0].type.reset();
  q.finalize();
  EXPECT_TRUE(has_code(validate(q), "missing-fixed-type"));

  q = load("jordan_sp");
  q.vertices[0].sgn = 1;
  q.finalize();
  EXPECT_TRUE(has_code(validate(q), "fixed-type-sign-mismatch"));

  q = load("folded_a3");
  q.arrows[q.arrow_index("a")].tgt = "3";
  q.finalize();
  EXPECT_TRUE(has_code(validate(q), "orientation"));

  q = load("folded_a3");
  q.arrows[q.arrow_index("a")].weight = parse_linear_form("t2");
  q.finalize();
  EXPECT_TRUE(has_code(validate(q), "weight-not-theta-invariant"));

  q = load("folded_a3");
  q.arrows[q.arrow_index("a")].weight = parse_linear_form("s");
  q.arrows[q.arrow_index("b")].weight = parse_linear_form("s");
  q.finalize();
  EXPECT_TRUE(has_code(validate(q), "undeclared-parameter"));

  q = load("folded_a3");
  q.arrows[q.arrow_index("a")].src = "nowhere";
  q.finalize();
  EXPECT_TRUE(has_code(validate(q), "unknown-id"));
}

TEST(Validate, ReportsEveryViolation) {
  auto q = load("folded_a3");
  q.arrows[q.arrow_index("b")].sgn = 1;
  q.vertices[q.vertex_index("c")].type.reset();
  q.finalize();
  auto r = validate(q);
  EXPECT_TRUE(has_code(r, "sign-incompatible"));
  EXPECT_TRUE(has_code(r, "missing-fixed-type"));
}

TEST(Classify, Examples) {
  auto j = load("jordan_sp");
  for (int a = 0; a < j.num_arrows(); ++a) EXPECT_EQ(classify_arrow(j, a), ArrowCase::I);
  auto f = load("folded_a3");
  EXPECT_EQ(classify_arrow(f, f.arrow_index("a")), ArrowCase::III);
  EXPECT_EQ(classify_arrow(f, f.arrow_index("b_bar")), ArrowCase::III);
  EXPECT_EQ(classify_arrow(f, f.arrow_index("b")), ArrowCase::IIIPrime);
  EXPECT_EQ(classify_arrow(f, f.arrow_index("a_bar")), ArrowCase::IIIPrime);
  EXPECT_EQ(classify_arrow(f, f.arrow_index("w_1")), ArrowCase::O);
  EXPECT_EQ(classify_arrow(f, f.arrow_index("w_c")), ArrowCase::I);
}

TEST(Classify, CaseOBetweenDistinctOrbits) {
  PlainQuiver p;
  p.vertices = {"1", "2", "3", "4"};
  p.vertex_theta = {{"1", "4"}, {"4", "1"}, {"2", "3"}, {"3", "2"}};
  p.arrows = {{"a", "1", "2", 1}, {"b", "3", "4", 1}};
  p.arrow_theta = {{"a", "b"}, {"b", "a"}};
  auto q = double_triple(p);
  EXPECT_TRUE(validate(q).empty()) << violations_to_json(validate(q)).dump();
  EXPECT_EQ(classify_arrow(q, q.arrow_index("a")), ArrowCase::O);
}

TEST(Classify, CasesTwoAndFour) {
  // theta swaps the endpoints of a self-dual arrow.
  DualityQuiver q;
  q.vertices = {{"1", "2", 1, {}, false}, {"2", "1", 1, {}, false}};
  q.arrows = {{"a", "1", "2", "a", 1, parse_linear_form("t1"), false}};
  q.finalize();
  EXPECT_TRUE(validate(q).empty()) << violations_to_json(validate(q)).dump();
  EXPECT_EQ(classify_arrow(q, 0), ArrowCase::II);

  PlainQuiver p;
  p.vertices = {"x", "y"};
  p.arrows = {{"a", "x", "y", 1}};
  auto b = double_triple(p, {true, SignConvention::Bipartite});
  EXPECT_TRUE(validate(b).empty()) << violations_to_json(validate(b)).dump();
  EXPECT_EQ(classify_arrow(b, b.arrow_index("a")), ArrowCase::IV);
  EXPECT_EQ(classify_arrow(b, b.arrow_index("a_bar")), ArrowCase::IV);
}

TEST(Classify, UnclassifiableRejected) {
  // Two fixed vertices of the same parity joined by dual arrows.
  DualityQuiver q;
  q.vertices = {{"x", "x", -1, FixedType::Sp, false}, {"y", "y", -1, FixedType::Sp, false}};
  q.arrows = {{"a", "x", "y", "b", 1, {}, false}, {"b", "y", "x", "a", 1, {}, false}};
  q.finalize();
  expect_code([&] { classify_arrow(q, 0); }, "unclassifiable-arrow");
  EXPECT_TRUE(has_code(validate(q), "unclassifiable-arrow"));
}

TEST(Classify, ConstantOnOrbitsUpToPrimeSwap) {
  for (auto n : {"jordan_sp", "folded_a3"}) {
    auto q = load(n);
    for (int a = 0; a < q.num_arrows(); ++a) {
      auto c = classify_arrow(q, a), d = classify_arrow(q, q.theta_arrow(a));
      if (c == ArrowCase::III) EXPECT_EQ(d, ArrowCase::IIIPrime);
      else if (c == ArrowCase::IIIPrime) EXPECT_EQ(d, ArrowCase::III);
      else EXPECT_EQ(c, d);
    }
  }
}

TEST(Orbits, Examples) {
  auto j = load("jordan_sp");
  auto oj = orbits(j);
  EXPECT_EQ(oj.arrows.size(), 3u);
  for (const auto& o : oj.arrows) EXPECT_EQ(o.members.size(), 1u);

  auto f = load("folded_a3");
  auto of = orbits(f);
  bool found = false;
  for (const auto& o : of.arrows)
    if (o.members.size() == 2 && f.arrows[o.rep].id == "a") {
      found = true;
      EXPECT_EQ(f.arrows[o.members[1]].id, "b");
    }
  EXPECT_TRUE(found);
  ASSERT_EQ(of.vertices.size(), 2u);
  EXPECT_EQ(f.vertices[of.vertices[0].rep].id, "1");
  EXPECT_EQ(of.vertices[0].members.size(), 2u);
  EXPECT_EQ(f.vertices[of.vertices[1].rep].id, "c");
  EXPECT_TRUE(of.vertices[1].fixed());

  // Partition and stable representatives.
  std::vector<int> count(f.num_arrows(), 0);
  for (const auto& o : of.arrows) {
    for (int m : o.members) ++count[m];
    for (int m : o.members) EXPECT_LE(f.arrows[o.rep].id, f.arrows[m].id);
  }
  for (int c : count) EXPECT_EQ(c, 1);
  auto again = orbits(load("folded_a3"));
  for (size_t i = 0; i < of.arrows.size(); ++i) EXPECT_EQ(of.arrows[i].rep, again.arrows[i].rep);
}

TEST(DoubleTriple, JordanTripleMatchesShippedFile) {
  auto [p, opt] = plain_quiver_from_json(read_json_file(kData + "/jordan_plain.json"));
  auto q = double_triple(p, opt);
  q.framing = load("jordan_sp").framing;
  EXPECT_TRUE(validate(q).empty());
  EXPECT_EQ(to_json(q).dump(), to_json(load("jordan_sp")).dump());
}

TEST(DoubleTriple, FoldedA3MatchesShippedFile) {
  auto [p, opt] = plain_quiver_from_json(read_json_file(kData + "/a3_plain.json"));
  auto q = double_triple(p, opt);
  q.framing = load("folded_a3").framing;
  EXPECT_TRUE(validate(q).empty()) << violations_to_json(validate(q)).dump();
  EXPECT_EQ(to_json(q).dump(), to_json(load("folded_a3")).dump());
}

TEST(DoubleTriple, DoubledExamples) {
  PlainQuiver v;
  v.vertices = {"v"};
  v.arrows = {{"a", "v", "v", 1}};
  auto d = double_triple(v, {false, SignConvention::Jordan});
  ASSERT_EQ(d.num_arrows(), 2);
  EXPECT_EQ(d.arrows[1].id, "a_bar");
  EXPECT_TRUE(validate(d).empty());

  PlainQuiver a2;
  a2.vertices = {"1", "2"};
  a2.arrows = {{"a", "1", "2", 1}};
  auto e = double_triple(a2, {false, SignConvention::Bipartite});
  ASSERT_EQ(e.num_arrows(), 2);
  EXPECT_EQ(e.arrows[0].src, "1");
  EXPECT_EQ(e.arrows[1].src, "2");
  EXPECT_EQ(e.arrows[1].tgt, "1");
  EXPECT_TRUE(validate(e).empty());
}

TEST(DoubleTriple, ValidForAcceptedInputsAndRejectsOthers) {
  PlainQuiver tri;
  tri.vertices = {"1", "2", "3"};
  tri.arrows = {{"a", "1", "2", 1}, {"b", "2", "3", 1}, {"c", "3", "1", 1}};
  expect_code([&] { double_triple(tri); }, "unsupported-sign-convention");

  PlainQuiver path;
  path.vertices = {"1", "2", "3", "4"};
  path.arrows = {{"a", "1", "2", 1}, {"b", "3", "2", 1}, {"c", "3", "4", 1}};
  for (bool triple : {false, true}) {
    auto q = double_triple(path, {triple, SignConvention::Auto});
    EXPECT_TRUE(validate(q).empty()) << violations_to_json(validate(q)).dump();
  }
  PlainQuiver loops;
  loops.vertices = {"x"};
  loops.arrows = {{"a", "x", "x", 1}, {"b", "x", "x", 1}};
  for (auto t : {FixedType::Sp, FixedType::OEven, FixedType::OOdd}) {
    auto q = double_triple(loops, {true, SignConvention::Jordan, t});
    EXPECT_TRUE(validate(q).empty());
  }
}

TEST(Frame, JordanFixedNode) {
  auto q = load("jordan_sp");
  auto fq = frame(q, q.framing);
  EXPECT_TRUE(validate(fq).empty()) << violations_to_json(validate(fq)).dump();
  int w = fq.vertex_index("fr_c");
  ASSERT_GE(w, 0);
  EXPECT_EQ(*fq.vertices[w].type, FixedType::OEven);
  EXPECT_EQ(classify_arrow(fq, fq.arrow_index("in_c")), ArrowCase::IV);
}

TEST(Frame, ZeroFramingAddsIsolatedVertex) {
  auto q = load("jordan_sp");
  Framing f;
  f.entries["c"] = FramingEntry{};
  auto fq = frame(q, f);
  EXPECT_EQ(fq.num_vertices(), 2);
  EXPECT_EQ(fq.num_arrows(), q.num_arrows() + 2);
  EXPECT_TRUE(validate(fq).empty());
  auto none = frame(q, Framing{});
  EXPECT_EQ(none.num_vertices(), 1);
}

TEST(Frame, NonFixedOrbitPairsArrows) {
  auto q = load("folded_a3");
  Framing f;
  f.entries["1"] = FramingEntry{1, {parse_linear_form("u[1,1]", q.text_context())}, false, {}};
  auto fq = frame(q, f);
  EXPECT_TRUE(validate(fq).empty()) << violations_to_json(validate(fq)).dump();
  EXPECT_EQ(fq.arrows[fq.arrow_index("in_1")].theta, "out_3");
  EXPECT_EQ(fq.arrows[fq.arrow_index("in_3")].theta, "out_1");
  EXPECT_EQ(classify_arrow(fq, fq.arrow_index("in_1")), ArrowCase::O);
}

TEST(Frame, RankWeightMismatch) {
  auto q = load("jordan_sp");
  Framing f;
  f.entries["c"] = FramingEntry{2, {parse_linear_form("u")}, false, {}};
  expect_code([&] { frame(q, f); }, "framing-mismatch");
}

TEST(Json, RoundTripAndUnknownKeys) {
  for (auto n : {"jordan_sp", "jordan_oeven", "jordan_oodd", "folded_a3"}) {
    auto q = load(n);
    auto s = to_json(q).dump(2);
    EXPECT_EQ(to_json(quiver_from_json(json::parse(s))).dump(2), s);
  }
  auto j = read_json_file(kData + "/jordan_sp.json");
  j["colour"] = "blue";
  EXPECT_THROW(quiver_from_json(j), ParseError);
  auto k = read_json_file(kData + "/jordan_sp.json");
  k["arrows"][0]["label"] = "x";
  EXPECT_THROW(quiver_from_json(k), ParseError);
}

TEST(Json, Gradings) {
  auto q = load("folded_a3");
  auto d = dimvec_from_json(q, json::parse(R"({"1": 2, "c": 1})"));
  EXPECT_EQ(d, (DimVec{2, 1, 0}));
  auto m = ospdimvec_from_json(q, json::parse(R"({"c": 3})"));
  EXPECT_EQ(m, (OspDimVec{0, 3}));
  expect_code([&] { ospdimvec_from_json(q, json::parse(R"({"3": 1})")); }, "grading-mismatch");
  expect_code([&] { dimvec_from_json(q, json::parse(R"({"z": 1})")); }, "grading-mismatch");
  EXPECT_EQ(to_json_dimvec(q, d).dump(), R"({"1":2,"c":1})");
}
