#include <crformal/cr_map.hpp>
#include <crformal/error.hpp>
#include <crformal/families.hpp>

#include <gtest/gtest.h>

using namespace crformal;

namespace {

Series z() { return Series::polynomial_variable(2, 0); }
Series w() { return Series::polynomial_variable(2, 1); }

CRMap psi_map() {
  const Series z1 = Series::polynomial_variable(3, 0), z2 = Series::polynomial_variable(3, 1);
  return CRMap(2, {z1, z1 * z2}, Series::polynomial_variable(3, 2));
}

}  // namespace

TEST(CRMapTest, ConstructionChecks) {
  EXPECT_THROW(CRMap(1, {z() + Series::polynomial_constant(2, 1)}, w()), Error);
  EXPECT_THROW(CRMap(2, {z()}, w()), Error);
  EXPECT_EQ(CRMap::identity(1).to_string(), "(z, w)");
}

TEST(SendsIntoTest, ExponentialModels) {
  const Verdict v = sends_into(tk_map(2), exp_model(2, 12), exp_model(1, 12));
  EXPECT_TRUE(v.is_true()) << v.witness;
  EXPECT_EQ(v.label(), "certified@12");
  EXPECT_TRUE(sends_into(tk_map(3), exp_model(3, 12), exp_model(1, 12)).is_true());
}

TEST(SendsIntoTest, IdentityIsExactOnPolynomials) {
  const Verdict v = sends_into(CRMap::identity(1), heisenberg(1), heisenberg(1));
  EXPECT_TRUE(v.is_true());
  EXPECT_EQ(v.label(), "certified");
  EXPECT_TRUE(sends_into(CRMap::identity(1), exp_model(2, 8), exp_model(2, 8)).is_true());
}

TEST(SendsIntoTest, DilationOfExponentialModelFails) {
  const CRMap h(1, {z() * Scalar(2)}, w());
  const Verdict v = sends_into(h, exp_model(1, 10), exp_model(1, 10));
  ASSERT_TRUE(v.is_false());
  EXPECT_EQ(v.monomial, MultiIndex({1, 1, 1}));
  EXPECT_NE(v.witness.find("G(z,Q) has i"), std::string::npos) << v.witness;
  EXPECT_NE(v.witness.find("has 4*i"), std::string::npos) << v.witness;
}

TEST(SendsIntoTest, PsiMapIntoHeisenberg) {
  const Series z1 = Series::polynomial_variable(2, 0), z2 = Series::polynomial_variable(2, 1);
  const NormalHypersurface mpsi = m_psi(FormalMap{{z1, z1 * z2}});
  EXPECT_TRUE(sends_into(psi_map(), mpsi, heisenberg(2)).is_true());
  EXPECT_THROW(sends_into(psi_map(), heisenberg(1), heisenberg(2)), Error);
}

TEST(SendsIntoTest, BlowupSendsPreimageIntoHeisenberg) {
  EXPECT_TRUE(sends_into(blowup_map(1, 1), blowup_hypersurface(1, 1, 10), heisenberg(1)).is_true());
  EXPECT_TRUE(sends_into(blowup_map(3, 4), blowup_hypersurface(3, 4, 10), heisenberg(1)).is_true());
  EXPECT_TRUE(sends_into(blowup_map_unscaled(2, 3), blowup_hypersurface(2, 3, 10),
                         heisenberg_scaled(1, Scalar(3)))
                  .is_true());
  const Verdict v = sends_into(blowup_map(1, 1), blowup_hypersurface(4, 4, 10), blowup_hypersurface(3, 4, 10));
  EXPECT_TRUE(v.is_true()) << v.witness;
}

TEST(TransversalityTest, Examples) {
  EXPECT_TRUE(is_cr_transversal(CRMap::identity(1)).is_true());
  EXPECT_TRUE(is_cr_transversal(blowup_map(1, 4)).is_false());
  EXPECT_TRUE(is_cr_transversal(psi_map()).is_true());

  EXPECT_TRUE(is_transversally_flat(CRMap(1, {z()}, Series(2, Precision::exact()))).is_true());
  EXPECT_TRUE(is_transversally_flat(CRMap::identity(1)).is_false());
  const Verdict h11 = is_transversally_flat(blowup_map(1, 1));
  EXPECT_TRUE(h11.is_false());
  EXPECT_EQ(h11.monomial, MultiIndex({0, 1}));
  const Verdict trunc = is_transversally_flat(CRMap(1, {z()}, w().pow(5).truncate(3)));
  EXPECT_EQ(trunc.label(), "certified@3");
}

TEST(TransversalityTest, TotalDegeneracy) {
  const Verdict psi = is_not_totally_degenerate(psi_map());
  EXPECT_TRUE(psi.is_true());
  EXPECT_EQ(psi.monomial, MultiIndex({1, 0}));
  const Series z1 = Series::polynomial_variable(3, 0);
  EXPECT_TRUE(is_not_totally_degenerate(CRMap(2, {z1, z1}, Series::polynomial_variable(3, 2))).is_false());
  EXPECT_TRUE(is_not_totally_degenerate(CRMap::identity(2)).is_true());
}

TEST(JacobianTest, Examples) {
  EXPECT_EQ(jacobian(CRMap(1, {z()}, z() * w())), z());
  EXPECT_EQ(jacobian(CRMap::identity(2)), Series::polynomial_constant(3, 1));
  EXPECT_EQ(jacobian(psi_map()), Series::polynomial_variable(3, 0));
  EXPECT_TRUE(is_jac_nonzero(psi_map()).is_true());
  EXPECT_TRUE(is_jac_nonzero(CRMap(1, {z()}, Series(2, Precision::exact()))).is_false());
}

TEST(JacobianTest, MultiplicativeUnderComposition) {
  const CRMap a(1, {z() + z() * w()}, w() + w() * w() * Scalar(3));
  const CRMap b(1, {z() * Scalar(2) + w() * w()}, w() * Scalar::i() + z() * w());
  EXPECT_EQ(jacobian(compose(a, b)).truncate(6),
            (compose(jacobian(a), b.components()) * jacobian(b)).truncate(6));
}

TEST(TransversalOrderTest, Examples) {
  for (unsigned c : {1u, 4u, 9u}) EXPECT_EQ(transversal_order(blowup_map(1, c)).value, c);
  EXPECT_EQ(transversal_order(CRMap::identity(1)).value, 1u);
  const TransversalOrder flat = transversal_order(CRMap(1, {z()}, Series(2, Precision::exact())));
  EXPECT_TRUE(flat.infinite);
  EXPECT_EQ(flat.label(), "inf");
  EXPECT_EQ(transversal_order(CRMap(1, {z()}, w().pow(4).truncate(3))).label(), "inf@3");
  EXPECT_THROW(transversal_order(CRMap(1, {z()}, z())), Error);
  EXPECT_EQ(transversal_order(hk_map(4)).value, 4u);
  EXPECT_THROW(hk_map(2), Error);
}

TEST(TransversalOrderTest, TransversalImpliesOrderOne) {
  for (const CRMap& h : {CRMap::identity(1), CRMap(1, {z() * Scalar(-1)}, w() + w() * w()), blowup_map(1, 1)}) {
    if (is_cr_transversal(h).is_true()) {
      EXPECT_EQ(transversal_order(h).value, 1u);
    }
  }
}

TEST(NormalComponentTest, Examples) {
  const Verdict t2 = normal_component_reality_check(tk_map(2), exp_model(2, 12), exp_model(1, 12));
  EXPECT_TRUE(t2.is_true()) << t2.witness;
  EXPECT_TRUE(normal_component_reality_check(CRMap::identity(1), heisenberg(1), heisenberg(1)).is_true());
  EXPECT_TRUE(normal_component_reality_check(blowup_map(1, 1), blowup_hypersurface(4, 4, 10),
                                             blowup_hypersurface(3, 4, 10))
                  .is_true());
  EXPECT_TRUE(normal_component_reality_check(CRMap(1, {z()}, w() * Scalar::i()), heisenberg(1), heisenberg(1))
                  .is_false());
  EXPECT_TRUE(normal_component_reality_check(CRMap(1, {z()}, w() + z() * w()), heisenberg(1), heisenberg(1))
                  .is_false());
}

TEST(TrordBoundTest, Examples) {
  const Verdict v = trord_bound_check(blowup_map(1, 1), blowup_hypersurface(4, 4, 10), blowup_hypersurface(3, 4, 10));
  EXPECT_TRUE(v.is_true()) << v.witness;
  EXPECT_NE(v.witness.find("= 2, m-1 = 4"), std::string::npos) << v.witness;
  EXPECT_TRUE(trord_bound_check(CRMap::identity(1), exp_model(2, 8), exp_model(2, 8)).is_true());
  for (unsigned k : {1u, 4u, 9u}) {
    const Verdict hk = trord_bound_check(hk_map(k), exp_model(1, 10), exp_model(1, 10));
    EXPECT_TRUE(hk.is_true()) << k << ": " << hk.witness;
  }
  EXPECT_TRUE(trord_bound_check(CRMap::identity(1), heisenberg(1), heisenberg(1)).is_unknown());
}

TEST(BasicIdentityTest, SelfMapsOfExponentialModel) {
  const CRMap minus(1, {z() * Scalar(-1)}, w());
  const CRMap rot(1, {z() * Scalar::i()}, w());
  for (unsigned k = 1; k <= 3; ++k) {
    EXPECT_TRUE(basid_check(minus, exp_model(k, 10)).is_true());
    EXPECT_TRUE(basid_check(CRMap::identity(1), exp_model(k, 10)).is_true());
    EXPECT_TRUE(basid_check(rot, exp_model(k, 10)).is_true());
  }
  EXPECT_TRUE(basid_check(CRMap(1, {z() * Scalar(2)}, w()), exp_model(1, 10)).is_unknown());
}

TEST(AutomorphismTest, Examples) {
  EXPECT_TRUE(is_automorphism(CRMap::identity(2)).is_true());
  EXPECT_TRUE(is_automorphism(blowup_map(1, 1)).is_false());
  EXPECT_TRUE(is_automorphism(psi_map()).is_false());
}

TEST(CompositionTest, BlowupLaw) {
  const CRMap c = compose(blowup_map(3, 4), blowup_map(1, 1));
  EXPECT_EQ(c.f()[0], z() * w().pow(4) * Scalar(2));
  EXPECT_EQ(c.g(), w().pow(4));
  EXPECT_EQ(c.to_string(), blowup_map(4, 4).to_string());
  for (unsigned b = 1; b <= 3; ++b) {
    for (unsigned cc : {1u, 4u}) {
      for (unsigned bt = 1; bt <= 3; ++bt) {
        for (unsigned ct : {1u, 4u}) {
          const CRMap lhs = compose(blowup_map(b, cc), blowup_map(bt, ct));
          const CRMap rhs = blowup_map(bt + b * ct, cc * ct);
          EXPECT_EQ(lhs.f()[0], rhs.f()[0]);
          EXPECT_EQ(lhs.g(), rhs.g());
        }
      }
    }
  }
}

TEST(CompositionTest, TkMultiplicative) {
  for (unsigned k = 1; k <= 4; ++k) {
    for (unsigned kp = 1; kp <= 4; ++kp) {
      EXPECT_EQ(compose(tk_map(k), tk_map(kp)).g(), tk_map(k * kp).g());
    }
  }
}
