#include <gtest/gtest.h>

#include "coha/harness/generators.hpp"
#include "coha/quiver/json_io.hpp"

using namespace coha;

namespace {

DualityQuiver load(const std::string& name) { return load_quiver(std::string(COHA_DATA_DIR) + "/" + name + ".json"); }

LinearForm L(VarId v) { return LinearForm::var(v); }
Polynomial P(VarId v) { return Polynomial::variable(v); }
FactoredRational F(const Polynomial& p) { return FactoredRational(p); }
LinearForm W() { return L(spectral_var()); }
LinearForm H() { return L(hbar_var()); }

const std::vector<std::string> kQuivers{"jordan_sp", "jordan_oeven", "jordan_oodd", "folded_a3"};

std::vector<LinearForm> xis() {
  auto t1 = L(param_var("t1")), t2 = L(param_var("t2"));
  return {t1, t2, -t1 - t2};
}

void expect_invariant(const DualityQuiver& q, const ModuleElement& m) {
  for (const auto& [d, p] : m.comps) EXPECT_TRUE(is_invariant(p, module_slots(q, d), module_group(q, d)));
}

void expect_invariant(const DualityQuiver& q, const AlgebraElement& m) {
  for (const auto& [d, p] : m.comps) EXPECT_TRUE(is_invariant(p, algebra_slots(q, d), algebra_group(q, d)));
}

}  // namespace

TEST(Product, UnitIsNeutral) {
  auto q = load("folded_a3");
  std::mt19937_64 rng(1);
  auto g = random_algebra_element(q, {1, 1, 0}, rng);
  auto one = AlgebraElement::single({0, 0, 0}, 1);
  EXPECT_EQ(product(q, one, g), g);
  EXPECT_EQ(product(q, g, one), g);
}

TEST(Product, JordanTwoShuffles) {
  auto q = load("jordan_sp");
  auto one = AlgebraElement::single({1}, 1);
  auto r = product(q, one, one);
  ASSERT_EQ(r.comps.size(), 1u);
  // Hand sum: (N(d) - N(-d))/d with d = x2 - x1 and N(d) = prod (d + xi).
  LinearForm dl = L(torus_var(0, 1, 2)) - L(torus_var(0, 1, 1));
  Polynomial d(dl);
  Polynomial n1(1), n2(1);
  for (const auto& xi : xis()) {
    n1 *= d + Polynomial(xi);
    n2 *= Polynomial(xi) - d;
  }
  auto expect = *(n1 - n2).divide_exact(dl);
  EXPECT_EQ(r.comps.at({2}), expect);
  EXPECT_EQ(expect.total_degree(), 2);
  expect_invariant(q, r);
}

TEST(Product, Associative) {
  std::mt19937_64 rng(2);
  for (const auto& name : kQuivers) {
    auto q = load(name);
    auto vs = gauge_vertex_list(q);
    for (int trial = 0; trial < 4; ++trial) {
      auto f = random_algebra_element(q, unit_dimvec(q, vs[rng() % vs.size()]), rng);
      auto g = random_algebra_element(q, unit_dimvec(q, vs[rng() % vs.size()]), rng);
      auto h = random_algebra_element(q, unit_dimvec(q, vs[rng() % vs.size()]), rng);
      auto left = product(q, product(q, f, g), h), right = product(q, f, product(q, g, h));
      EXPECT_EQ(left, right) << name;
      expect_invariant(q, left);
    }
  }
}

TEST(Act, UnitAndVacuum) {
  auto q = load("folded_a3");
  std::mt19937_64 rng(3);
  auto m = random_module_element(q, {1, 1}, rng);
  auto one = AlgebraElement::single({0, 0, 0}, 1);
  EXPECT_EQ(act(q, one, m), m);
  EXPECT_EQ(act(q, one, vacuum(q), true), vacuum(q));
  EXPECT_EQ(vacuum(q).comps.at({0, 0}), Polynomial(1));
}

TEST(Act, JordanSpFramedVacuum) {
  auto q = load("jordan_sp");
  auto r = act(q, AlgebraElement::single({1}, 1), vacuum(q), true);
  ASSERT_EQ(r.comps.size(), 1u);
  // sum over eps of (x^2 - u^2) prod_xi (2 eps x + xi) / (2 eps x).
  auto x = L(torus_var(0, 2, 1)), u = L(framing_var(0, 1));
  std::vector<FactoredRational> terms;
  for (int eps : {1, -1}) {
    std::vector<LinearForm> num{x - u, x + u}, den{Rational(2 * eps) * x};
    for (const auto& xi : xis()) num.push_back(Rational(2 * eps) * x + xi);
    terms.push_back(FactoredRational::product(1, num, den));
  }
  auto expect = FactoredRational::sum(terms);
  ASSERT_TRUE(expect.is_polynomial());
  EXPECT_EQ(r.comps.at({1}), expect.numerator());
  expect_invariant(q, r);
}

TEST(Act, ModuleAxiom) {
  std::mt19937_64 rng(4);
  for (const auto& name : kQuivers) {
    auto q = load(name);
    auto vs = gauge_vertex_list(q);
    for (bool framed : {false, true})
      for (int trial = 0; trial < 3; ++trial) {
        auto f = random_algebra_element(q, unit_dimvec(q, vs[rng() % vs.size()]), rng);
        auto g = random_algebra_element(q, unit_dimvec(q, vs[rng() % vs.size()]), rng);
        auto m = vacuum(q);
        auto left = act(q, product(q, f, g), m, framed), right = act(q, f, act(q, g, m, framed), framed);
        EXPECT_EQ(left, right) << name;
        expect_invariant(q, left);
      }
  }
}

TEST(Act, ModuleAxiomNontrivialModule) {
  std::mt19937_64 rng(5);
  auto q = load("folded_a3");
  for (int trial = 0; trial < 2; ++trial) {
    auto f = random_algebra_element(q, unit_dimvec(q, trial), rng);
    auto g = random_algebra_element(q, unit_dimvec(q, 1), rng);
    auto m = random_module_element(q, unit_ospdimvec(q, trial), rng);
    EXPECT_EQ(act(q, product(q, f, g), m), act(q, f, act(q, g, m)));
  }
}

TEST(Act, GradingAdditivity) {
  auto q = load("folded_a3");
  auto r = act(q, AlgebraElement::single({1, 1, 1}, 1), ModuleElement::single({1, 1}, 1));
  ASSERT_EQ(r.comps.size(), 1u);
  // Orbit {1,3}: 1 + 1 + 1; orbit {c}: 1 + 1.
  int o13 = q.orbit_of(q.vertex_index("1")), oc = q.orbit_of(q.vertex_index("c"));
  EXPECT_EQ(r.comps.begin()->first[o13], 3);
  EXPECT_EQ(r.comps.begin()->first[oc], 2);
  EXPECT_EQ(product(q, AlgebraElement::single({1, 0, 0}, 1), AlgebraElement::single({0, 1, 1}, 1)).comps.begin()->first,
            (DimVec{1, 1, 1}));
}

TEST(Act, GradingMismatch) {
  auto q = load("folded_a3");
  EXPECT_THROW(act(q, AlgebraElement::single({1, 0}, 1), vacuum(q)), Error);
  EXPECT_THROW(act(q, AlgebraElement::single({1, 0, 0}, P(torus_var(0, 1, 2))), vacuum(q)), Error);
  EXPECT_THROW(act(q, AlgebraElement::single({0, 0, 0}, 1), ModuleElement::single({1, 0}, P(torus_var(2, 2, 1)))), Error);
  auto plain = load("folded_a3");
  plain.framing.entries.clear();
  EXPECT_THROW(act(plain, AlgebraElement::single({0, 0, 0}, 1), vacuum(plain), true), Error);
}

TEST(Act, FullGroupOracle) {
  // Sum over the whole Weyl group = |W_L| times the coset sum.
  for (const auto& name : {"jordan_sp", "jordan_oeven", "jordan_oodd"}) {
    auto q = load(name);
    std::mt19937_64 rng(6);
    auto f = random_algebra_element(q, {1}, rng);
    auto m = random_module_element(q, {1}, rng);
    auto coset = act(q, f, m, true).comps.at({2});
    auto l = action_layout(q, {1}, {1});
    FactorList k;
    osp_kernel_factors(q, l.A, l.M, k);
    framing_factors(q, l.A, k);
    auto base = k.value() * relabel(F(f.comps.at({1})), block_relabel(q, l.A, 1)) *
                relabel(F(m.comps.at({1})), modblock_relabel(q, l.M, 2));
    auto full = symmetrize(base, l.slots, enumerate_weyl(module_group(q, {2})));
    Integer sub = block_order({BlockType::GL, 1}) * block_order({orbit_block_type(q, 0), 1});
    EXPECT_TRUE(equal_exact(full, F(coset) * FactoredRational(Rational(sub)))) << name;
  }
}

TEST(Coaction, Vacuum) {
  auto q = load("folded_a3");
  auto c = coact_left(q, vacuum(q));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(equal_exact(c[0].value, FactoredRational(1)));
}

TEST(Coaction, JordanSpDegreeOne) {
  auto q = load("jordan_sp");
  Polynomial m = P(torus_var(0, 2, 1)) * P(torus_var(0, 2, 1)) + 3;
  auto c = coact_left(q, ModuleElement::single({1}, m));
  ASSERT_EQ(c.size(), 2u);
  for (const auto& t : c) {
    if (t.left == DimVec{0}) {
      EXPECT_TRUE(equal_exact(t.value, F(m)));
    } else {
      auto x = torus_var(0, 1, 1);
      Polynomial mx = P(x) * P(x) + 3;
      EXPECT_TRUE(equal_exact(t.value, F(mx) / osp_kernel(q, DimVec{1}, OspDimVec{0})));
      EXPECT_EQ(t.right, OspDimVec{0});
    }
  }
}

TEST(Coaction, CounitAndLocalisation) {
  std::mt19937_64 rng(7);
  auto q = load("folded_a3");
  auto m = random_module_element(q, {1, 2}, rng);
  for (const auto& t : coact_left(q, m)) {
    if (t.left == DimVec{0, 0, 0}) {
      EXPECT_TRUE(equal_exact(t.value, F(m.comps.begin()->second)));
    }
    for (const auto& [f, e] : t.value.denominator()) {
      bool left = false;
      for (const auto& [v, c] : f.coeffs())
        if (Variable::from_id(v).tag == 1) left = true;
      EXPECT_TRUE(left) << to_text(f);
    }
  }
}

TEST(Coaction, Coassociative) {
  std::mt19937_64 rng(8);
  for (const auto& name : kQuivers) {
    auto q = load(name);
    auto os = gauge_orbit_list(q);
    OspDimVec D(q.num_orbits(), 0);
    for (int o : os) D[o] = 1;
    if (name == "folded_a3") D[q.orbit_of(q.vertex_index("1"))] = 2;
    auto m = random_module_element(q, D, rng);
    FactoredRational H = F(m.comps.at(D));
    // (Delta x id) Delta_L versus (id x Delta_L) Delta_L on left alphabets 1 and 3.
    for (const auto& [dl, dr] : coaction_splits(q, D))
      for (const auto& d1 : sub_gradings(dl)) {
        DimVec d2(dl.size());
        for (size_t v = 0; v < dl.size(); ++v) d2[v] = dl[v] - d1[v];
        Block l1 = slot_block(q, d1, 1), l2 = slot_block(q, d2, 3);
        ModBlock r = slot_modblock(q, dr, 2);
        Block l12 = concat(l1, l2);
        auto v1 = relabel(H, modblock_relabel(q, rho(q, l12, r), 2)) / (osp_kernel(q, l12, r) * gl_pair(q, l1, l2));
        auto inner = rho(q, l2, r);
        auto v2 = relabel(H, modblock_relabel(q, rho(q, l1, inner), 2)) / (osp_kernel(q, l1, inner) * osp_kernel(q, l2, r));
        EXPECT_TRUE(equal_exact(v1, v2)) << name;
      }
  }
}

TEST(Coaction, RightCoassociative) {
  std::mt19937_64 rng(9);
  auto q = load("folded_a3");
  auto m = random_module_element(q, {1, 1}, rng);
  auto c = coact_right(q, m);
  EXPECT_EQ(c.size(), coaction_splits(q, {1, 1}).size());
  FactoredRational H = F(m.comps.at({1, 1}));
  for (const auto& [dl, dr] : coaction_splits(q, {1, 1}))
    for (const auto& d1 : sub_gradings(dl)) {
      DimVec d2(dl.size());
      for (size_t v = 0; v < dl.size(); ++v) d2[v] = dl[v] - d1[v];
      Block l1 = slot_block(q, d1, 1), l2 = slot_block(q, d2, 3);
      ModBlock r = slot_modblock(q, dr, 2);
      Block l12 = concat(l1, l2);
      // Right leg split with the algebra coproduct: Delta_R(m)(r, l1 u l2)/(l1|l2).
      auto v1 = relabel(H, modblock_relabel(q, rho(q, l12, r), 2)) / (osp_pair_reversed(q, r, l12) * gl_pair(q, l1, l2));
      auto inner = rho(q, l1, r);
      auto v2 = relabel(H, modblock_relabel(q, rho(q, l2, inner), 2)) /
                (osp_pair_reversed(q, inner, l2) * osp_pair_reversed(q, r, l1));
      EXPECT_TRUE(equal_exact(v1, v2));
    }
}

TEST(Cartan, PhiExamples) {
  auto q = load("jordan_sp");
  EXPECT_TRUE(equal_exact(phi_closed(q, 0, {0}), FactoredRational(1)));
  auto s = phi_series(q, 0, {1}, 5);
  EXPECT_EQ(s.leading_exponent(), 0);
  EXPECT_TRUE(equal_exact(s.coeff(0), FactoredRational(1)));
  EXPECT_TRUE(s == expand_at_infinity(phi_closed(q, 0, {1}), spectral_var(), 5));
}

TEST(Cartan, PhiCommutator) {
  // phi_{d+e} (f g) = (phi_d f)(phi_e g), exactly and to order 5.
  std::mt19937_64 rng(10);
  for (const auto& name : kQuivers) {
    auto q = load(name);
    auto vs = gauge_vertex_list(q);
    for (int i : vs) {
      DimVec d1 = unit_dimvec(q, vs[rng() % vs.size()]), d2 = unit_dimvec(q, vs[rng() % vs.size()]);
      auto f = random_algebra_element(q, d1, rng), g = random_algebra_element(q, d2, rng);
      auto fg = product(q, f, g);
      auto lhs = phi_closed(q, i, add(d1, d2)) * F(fg.comps.at(add(d1, d2)));
      auto rhs = product_component(q, d1, phi_closed(q, i, d1) * F(f.comps.at(d1)), d2, phi_closed(q, i, d2) * F(g.comps.at(d2)));
      EXPECT_TRUE(equal_exact(lhs, rhs)) << name;
      EXPECT_TRUE(expand_at_infinity(lhs, spectral_var(), 5) == expand_at_infinity(rhs, spectral_var(), 5));
    }
  }
}

TEST(Cartan, PsiVacuum) {
  auto q = load("jordan_sp");
  auto u = L(framing_var(0, 1));
  auto r = psi_act(q, 0, vacuum(q));
  auto expect = FactoredRational::product(1, {W() - u, W() + u}, {W() - u - H(), W() + u - H()});
  EXPECT_TRUE(equal_exact(r.at({0}), expect));

  auto a3 = load("folded_a3");
  a3.framing.entries.clear();
  int one = a3.vertex_index("1");
  a3.framing.entries["1"] = FramingEntry{1, {L(framing_var(one, 1))}, false, {}};
  auto u1 = L(framing_var(one, 1));
  auto r1 = psi_act(a3, one, vacuum(a3));
  EXPECT_TRUE(equal_exact(r1.begin()->second, FactoredRational::product(1, {W() - u1}, {W() - u1 - H()})));
  auto s = psi_series(a3, one, vacuum(a3), 3);
  EXPECT_TRUE(equal_exact(s.begin()->second.coeff(0), FactoredRational(1)));
}

TEST(Cartan, BosonisedCommutation) {
  std::mt19937_64 rng(11);
  for (const auto& name : kQuivers) {
    auto q = load(name);
    auto vs = gauge_vertex_list(q);
    for (int i : vs) {
      DimVec dA = unit_dimvec(q, vs[rng() % vs.size()]);
      OspDimVec dM(q.num_orbits(), 0);
      dM[rng() % q.num_orbits()] = 1;
      auto f = random_algebra_element(q, dA, rng);
      auto g = random_module_element(q, dM, rng);
      auto fg = act(q, f, g, true);
      auto D = output_grading(q, dA, dM);
      auto lhs = psi_closed(q, i, D) * F(fg.comps.at(D));
      auto ftilde = cartan_left_factor(q, i, dA) * F(f.comps.at(dA));
      auto gtilde = psi_closed(q, i, dM) * F(g.comps.at(dM));
      auto rhs = act_component(q, dA, ftilde, dM, gtilde, true);
      EXPECT_TRUE(equal_exact(lhs, rhs)) << name << " vertex " << i;
      EXPECT_TRUE(expand_at_infinity(lhs, spectral_var(), 4) == expand_at_infinity(rhs, spectral_var(), 4));
    }
  }
}

TEST(Cartan, CoactionFactors) {
  auto q = load("jordan_sp");
  auto c0 = cartan_coaction(q, 0, {0}, {1});
  EXPECT_TRUE(equal_exact(c0.left, FactoredRational(1)));
  EXPECT_TRUE(equal_exact(c0.right, psi_closed(q, 0, {1})));
  auto c1 = cartan_coaction(q, 0, {1}, {0});
  auto phi = phi_closed(q, 0, {1});
  auto phim = phi.substitute({{spectral_var(), -W()}});
  EXPECT_TRUE(equal_exact(c1.left, phi / phim));

  auto a3 = load("folded_a3");
  int one = a3.vertex_index("1"), three = a3.vertex_index("3");
  DimVec dl{1, 1, 1};
  auto c = cartan_coaction(a3, one, dl, {0, 0});
  auto expect = phi_closed(a3, one, dl) / phi_closed(a3, three, dl).substitute({{spectral_var(), -W()}});
  EXPECT_TRUE(equal_exact(c.left, expect));
}

TEST(Cartan, CoactionComposesWithCoactLeft) {
  std::mt19937_64 rng(12);
  for (const auto& name : kQuivers) {
    auto q = load(name);
    OspDimVec D(q.num_orbits(), 1);
    auto m = random_module_element(q, D, rng);
    for (int i : gauge_vertex_list(q)) {
      auto pm = psi_act(q, i, m).at(D);
      auto lhs = coact_left_component(q, D, pm);
      auto base = coact_left_component(q, D, F(m.comps.at(D)));
      ASSERT_EQ(lhs.size(), base.size());
      for (size_t k = 0; k < lhs.size(); ++k) {
        auto c = cartan_coaction(q, i, base[k].left, base[k].right);
        EXPECT_TRUE(equal_exact(lhs[k].value, c.left * c.right * base[k].value)) << name;
      }
    }
  }
}
