#include <gtest/gtest.h>

#include <set>

#include "coha/kernels/kernels.hpp"
#include "coha/quiver/json_io.hpp"

using namespace coha;

namespace {

DualityQuiver load(const std::string& name) { return load_quiver(std::string(COHA_DATA_DIR) + "/" + name + ".json"); }

LinearForm L(VarId v) { return LinearForm::var(v); }
LinearForm T1() { return L(param_var("t1")); }
LinearForm T2() { return L(param_var("t2")); }

FactoredRational prod(std::vector<LinearForm> num, std::vector<LinearForm> den = {}, Rational s = 1) {
  return FactoredRational::product(s, num, den);
}

// All gradings of total size <= n over the given number of slots.
std::vector<std::vector<int>> gradings(int slots, int n) {
  std::vector<std::vector<int>> out{{}};
  for (int s = 0; s < slots; ++s) {
    std::vector<std::vector<int>> next;
    for (const auto& g : out) {
      int used = 0;
      for (int x : g) used += x;
      for (int k = 0; used + k <= n; ++k) {
        auto h = g;
        h.push_back(k);
        next.push_back(h);
      }
    }
    out = next;
  }
  return out;
}

const std::vector<std::string> kQuivers{"jordan_sp", "jordan_oeven", "jordan_oodd", "folded_a3"};

}  // namespace

TEST(GlKernel, JordanShuffleKernel) {
  auto q = load("jordan_sp");
  auto x1 = L(torus_var(0, 1, 1)), x2 = L(torus_var(0, 2, 1));
  auto k = gl_kernel(q, {1}, {1});
  auto expect = prod({x2 - x1 + T1(), x2 - x1 + T2(), x2 - x1 - T1() - T2()}, {x2 - x1});
  EXPECT_TRUE(equal_exact(k, expect));
}

TEST(ParabolicRoots, Examples) {
  auto x1 = L(torus_var(0, 1, 1)), x2 = L(torus_var(0, 1, 2)), y = L(torus_var(0, 2, 1));
  EXPECT_EQ(parabolic_roots(FixedType::Sp, 1, 0), (std::vector<LinearForm>{x1 + x1}));
  auto r = parabolic_roots(FixedType::OOdd, 2, 0);
  EXPECT_EQ(std::set<LinearForm>(r.begin(), r.end()), (std::set<LinearForm>{x1 + x2, x1, x2}));
  auto e = parabolic_roots(FixedType::OEven, 1, 1);
  EXPECT_EQ(std::set<LinearForm>(e.begin(), e.end()), (std::set<LinearForm>{x1 - y, x1 + y}));
  EXPECT_TRUE(parabolic_roots(FixedType::OEven, 1, 0).empty());
}

TEST(Framing, JordanRankOne) {
  auto q = load("jordan_sp");
  auto x = L(torus_var(0, 1, 1)), u = L(framing_var(0, 1));
  auto f = framing_factor(q, DimVec{1});
  EXPECT_TRUE(equal_exact(f, prod({x - u, x + u})));
  EXPECT_EQ(f.numerator(), parse_polynomial("x[0,1,1]^2 - u[0,1]^2"));
}

TEST(OspKernel, JordanSpSingleSlot) {
  auto q = load("jordan_sp");
  auto x = L(torus_var(0, 1, 1));
  auto k = osp_kernel(q, DimVec{1}, OspDimVec{0});
  auto expect = prod({T1() - x - x, T2() - x - x, -T1() - T2() - x - x}, {-x - x});
  EXPECT_TRUE(equal_exact(k, expect));
  // Orthogonal types have no long root and a trivial diagonal factor.
  EXPECT_TRUE(equal_exact(osp_kernel(load("jordan_oeven"), DimVec{1}, OspDimVec{0}), FactoredRational(1)));
  auto odd = osp_kernel(load("jordan_oodd"), DimVec{1}, OspDimVec{0});
  EXPECT_TRUE(equal_exact(odd, prod({T1() - x, T2() - x, -T1() - T2() - x}, {-x})));
}

TEST(OspKernel, CaseRouteMatchesBracketRoute) {
  for (const auto& name : kQuivers) {
    auto q = load(name);
    for (const auto& d1 : gradings(q.num_vertices(), 3))
      for (const auto& d2 : gradings(q.num_orbits(), 2)) {
        auto l = standard_layout(q, d1, d2);
        EXPECT_TRUE(equal_exact(osp_kernel(q, l.left, l.right), osp_pair(q, l.left, l.right))) << name;
      }
  }
}

TEST(OspKernel, DenominatorsAreRoots) {
  for (const auto& name : kQuivers) {
    auto q = load(name);
    for (const auto& d1 : gradings(q.num_vertices(), 3))
      for (const auto& d2 : gradings(q.num_orbits(), 2)) {
        auto l = standard_layout(q, d1, d2);
        std::set<LinearForm> allowed;
        for (int o = 0; o < q.num_orbits(); ++o) {
          const auto& orb = q.vertex_orbits()[o];
          auto r = orb.fixed() ? parabolic_roots(q.type(orb.rep), l.left[orb.rep], l.right[o])
                               : orbit_roots(l.left[orb.rep], l.left[orb.members[1]], l.right[o]);
          for (const auto& x : r) allowed.insert(x.normalized().second);
        }
        auto k = osp_kernel(q, l.left, l.right);
        for (const auto& [f, e] : k.denominator())
          EXPECT_TRUE(allowed.count(f)) << name << ": " << to_text(f);
      }
  }
}

TEST(Classify, MismatchedCaseThrows) {
  auto q = load("jordan_sp");
  Block A{{L(torus_var(0, 1, 1))}};
  ModBlock M{{}};
  EXPECT_THROW(case_factor(q, 0, ArrowCase::O, A, M), Error);
  EXPECT_NO_THROW(case_factor(q, 0, ArrowCase::I, A, M));
}

// The bracket identities on all blocks of total size <= 2.
class Hexagon : public ::testing::TestWithParam<std::string> {};

TEST_P(Hexagon, Identities) {
  auto q = load(GetParam());
  int nv = q.num_vertices(), no = q.num_orbits();
  auto blocks = gradings(nv, 2);
  auto mods = gradings(no, 2);
  auto sq = [&](const Block& A, const ModBlock& M) { return osp_kernel(q, A, M); };
  for (const auto& d1 : blocks)
    for (const auto& d2 : blocks) {
      Block A1 = slot_block(q, d1, 1), A2 = slot_block(q, d2, 3);
      Block B1 = slot_block(q, d1, 2), B2 = slot_block(q, d2, 4);
      // GL multiplicativity and the anti-equivalence.
      EXPECT_TRUE(equal_exact(gl_pair(q, concat(A1, A2), B1), gl_pair(q, A1, B1) * gl_pair(q, A2, B1)));
      EXPECT_TRUE(equal_exact(gl_pair(q, A1, concat(B1, B2)), gl_pair(q, A1, B1) * gl_pair(q, A1, B2)));
      EXPECT_TRUE(equal_exact(gl_pair(q, A1, A2), gl_pair(q, tau(q, A2), tau(q, A1))));
      // <AB|tau(AB)> = <A|tau A><B|tau B>(A|tau B).
      EXPECT_TRUE(equal_exact(tau_pair(q, concat(A1, A2)), tau_pair(q, A1) * tau_pair(q, A2) * gl_pair(q, A1, tau(q, A2))));
      for (const auto& dm : mods) {
        ModBlock M = slot_modblock(q, dm, 5);
        auto t1 = sq(A1, M), t2 = sq(A2, M);
        EXPECT_TRUE(equal_exact(sq(concat(A1, A2), M), gl_pair(q, A1, tau(q, A2)) * t1 * t2));
        EXPECT_TRUE(equal_exact(t1, tau_pair(q, A1) * gl_pair(q, A1, flat(q, M))));
        EXPECT_TRUE(equal_exact(sq(A1, rho(q, B2, M)), gl_pair(q, A1, B2) * gl_pair(q, A1, tau(q, B2)) * t1));
        // Cherednik relation with S = (.|.), T = [.|M].
        auto lhs = t2 * gl_pair(q, A2, tau(q, A1)) * t1 * gl_pair(q, A1, A2);
        auto rhs = gl_pair(q, tau(q, A2), tau(q, A1)) * t1 * gl_pair(q, A1, tau(q, A2)) * t2;
        EXPECT_TRUE(equal_exact(lhs, rhs));
      }
    }
}

INSTANTIATE_TEST_SUITE_P(Quivers, Hexagon, ::testing::ValuesIn(kQuivers));

TEST(Mutations, EachChangesSomeKernel) {
  for (auto m : all_mutations()) {
    KernelConfig cfg{m};
    bool changed = false;
    for (const auto& name : kQuivers) {
      auto q = load(name);
      for (const auto& d1 : gradings(q.num_vertices(), 2))
        for (const auto& d2 : gradings(q.num_orbits(), 1)) {
          auto l = standard_layout(q, d1, d2);
          if (!equal_exact(osp_kernel(q, l.left, l.right, cfg), osp_kernel(q, l.left, l.right))) changed = true;
          if (!equal_exact(framing_factor(q, l.left, cfg), framing_factor(q, l.left))) changed = true;
        }
    }
    EXPECT_TRUE(changed) << to_string(m);
  }
}

TEST(Bracket, Signatures) {
  auto q = load("folded_a3");
  Block A = slot_block(q, {1, 1, 0}, 1), B = slot_block(q, {0, 1, 1}, 2);
  ModBlock M = slot_modblock(q, {1, 0}, 3);
  EXPECT_TRUE(equal_exact(bracket(q, {A}, {B}, nullptr, BracketKind::Paren).value, gl_pair(q, A, B)));
  EXPECT_TRUE(equal_exact(bracket(q, {A}, {}, nullptr, BracketKind::Angle).value, tau_pair(q, A)));
  EXPECT_TRUE(equal_exact(bracket(q, {A}, {}, &M, BracketKind::Square).value, osp_pair(q, A, M)));
  EXPECT_THROW(bracket(q, {A}, {B}, nullptr, BracketKind::Angle), Error);
  EXPECT_THROW(bracket(q, {Block(1)}, {}, nullptr, BracketKind::Paren), Error);
}
