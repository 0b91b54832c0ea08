#include "cqv/fock.hpp"

#include <gtest/gtest.h>

using namespace cqv;

namespace {

const ModelConfig kW1{3, 1, {0}};
const ModelConfig kW2{3, 2, {0, 1}};

const Multipartition kEmpty1{{{}}};
const Multipartition kBox1{{{1}}};

ParamPoint<Fp> pt(const ModelConfig& cfg, std::uint64_t seed = 42) {
  return sample_point<Fp>(cfg, seed);
}

}  // namespace

TEST(Fock, WeightChar) {
  EXPECT_TRUE(weight_char(kW1, kEmpty1).empty());
  EXPECT_EQ(weight_char(kW1, kBox1), Character::monomial(kW1, 0, 0, {1}, 0));
  // lambda = (2): cells (0,0) and (1,0) -> X S_0 + q X S_1
  Multipartition two{{{2}}};
  auto want = Character::monomial(kW1, 0, 0, {1}, 0) + Character::monomial(kW1, 1, 0, {1}, 1);
  EXPECT_EQ(weight_char(kW1, two), want);
}

TEST(Fock, AddingBoxAddsItsMonomial) {
  for (const auto& lam : enumerate_multipartitions(kW2.w, 4)) {
    for (int k = 0; k < kW2.n; ++k) {
      for (const Box& b : addable_boxes(kW2, lam, k)) {
        auto mu = add_box(lam, b);
        EXPECT_EQ(weight_char(kW2, mu) - weight_char(kW2, lam), box_char(kW2, b));
      }
    }
  }
}

TEST(Fock, BoundaryEmpty) {
  auto bc = boundary_chars(kW1, kEmpty1);
  EXPECT_TRUE(bc.R.empty());
  EXPECT_EQ(bc.I, framing_char(kW1));
  EXPECT_EQ(bc.H, framing_char(kW1));
}

TEST(Fock, BoundarySingleBox) {
  auto bc = boundary_chars(kW1, kBox1);
  auto I = Character::monomial(kW1, 1, 0, {1}, 1) + Character::monomial(kW1, 0, 1, {1}, 2);
  auto R = Character::monomial(kW1, 0, 0, {1}, 0);
  auto H = I - Character::monomial(kW1, 1, 1, {1}, 0);
  EXPECT_EQ(bc.I, I);
  EXPECT_EQ(bc.R, R);
  EXPECT_EQ(bc.H, H);
}

TEST(Fock, HEqualsIMinusQtRAllSmall) {
  for (const ModelConfig& cfg : {kW1, kW2, ModelConfig{4, 2, {0, 2}}}) {
    auto qt = Character::qt_monomial(cfg, 1, 1);
    for (const auto& mp : enumerate_multipartitions(cfg.w, 5)) {
      auto bc = boundary_chars(cfg, mp);
      EXPECT_EQ(bc.H, bc.I - qt * bc.R) << mp.str();
    }
  }
}

TEST(Fock, TangentNormalSmall) {
  EXPECT_TRUE(tangent_char(kW1, kEmpty1).empty());
  EXPECT_TRUE(tangent_char(kW1, kBox1).empty());  // an isolated point
  EXPECT_TRUE(normal_char(kW1, kEmpty1, kBox1).empty());
  Multipartition two{{{2}}};
  EXPECT_THROW(normal_char(kW1, kEmpty1, two), std::invalid_argument);
}

TEST(Fock, GammaH) {
  EXPECT_EQ(h_dim(kW1, kEmpty1, 0), 1);  // w_k components colored k
  EXPECT_EQ(h_dim(kW1, kEmpty1, 1), 0);
  auto g0 = gamma_monomial(kW1, kEmpty1, 0);
  EXPECT_EQ(g0.dq, 0);
  EXPECT_EQ(g0.dt, 0);
  auto g1 = gamma_monomial(kW1, kBox1, 0);
  EXPECT_EQ(g1.dq, 1);
  EXPECT_EQ(g1.dt, 1);
  EXPECT_EQ(h_dim(kW1, kBox1, 0), -1);
}

TEST(Fock, XCoefficientsBaseCase) {
  auto p = pt(kW1);
  Fp X = p.X[0], qt = p.q * p.t;
  EXPECT_EQ(xplus_coeff(kW1, kBox1, kEmpty1, 0, 0, p), X);
  EXPECT_EQ(xminus_coeff(kW1, kEmpty1, kBox1, 0, 0, p), qt * X.inv());
  // composite: the two coefficients multiply to qt
  EXPECT_EQ(xplus_coeff(kW1, kBox1, kEmpty1, 0, 0, p) * xminus_coeff(kW1, kEmpty1, kBox1, 0, 0, p),
            qt);
  EXPECT_THROW(xplus_coeff(kW1, kBox1, kEmpty1, 1, 0, p), std::invalid_argument);
}

TEST(Fock, ModeShiftMultipliesByBoxMonomial) {
  auto p = pt(kW2, 7);
  for (const auto& lam : enumerate_multipartitions(kW2.w, 4)) {
    for (int k = 0; k < kW2.n; ++k) {
      for (const Box& b : removable_boxes(kW2, lam, k)) {
        auto mu = remove_box(lam, b);
        Monomial btw{b.i, b.j, std::vector<int>(kW2.w, 0), 0};
        btw.dx[b.comp] = 1;
        Fp bv = eval_monomial(btw, p);
        for (long s : {-2L, 0L, 3L}) {
          EXPECT_EQ(xplus_coeff(kW2, lam, mu, k, s + 1, p),
                    bv * xplus_coeff(kW2, lam, mu, k, s, p));
          EXPECT_EQ(xminus_coeff(kW2, mu, lam, k, s + 1, p),
                    bv * xminus_coeff(kW2, mu, lam, k, s, p));
        }
      }
    }
  }
}

TEST(Fock, ThetaSeriesBaseCase) {
  auto p = pt(kW1);
  auto z = theta_series(kW1, kEmpty1, 0, SeriesDir::AtZero, 3, p);
  auto inf = theta_series(kW1, kEmpty1, 0, SeriesDir::AtInfinity, 3, p);
  EXPECT_EQ(z.at(0), -Fp::one());
  EXPECT_EQ(inf.at(0), -(p.q * p.t));
  // Theta(z) = -(1 - z qt/X)/(1 - z/X): z-coefficient (qt - 1)/X at order 1
  EXPECT_EQ(z.at(1), (p.q * p.t - Fp::one()) * p.X[0].inv());
}

TEST(Fock, ThetaConstantTermIsSignedGamma) {
  auto p = pt(kW2, 11);
  for (const auto& lam : enumerate_multipartitions(kW2.w, 4)) {
    for (int k = 0; k < kW2.n; ++k) {
      auto z = theta_series(kW2, lam, k, SeriesDir::AtZero, 2, p);
      Fp want = eval_monomial(gamma_monomial(kW2, lam, k), p);
      if (h_dim(kW2, lam, k) % 2 != 0) want = -want;
      EXPECT_EQ(z.at(0), want);
    }
  }
}

TEST(Fock, PairingNorm) {
  auto p = pt(kW1);
  EXPECT_EQ(pairing_norm(kW1, kEmpty1, p), Fp::one());
  EXPECT_EQ(pairing_norm(kW1, kBox1, p), Fp::one());  // T = 0 there
  auto p2 = pt(kW2, 5);
  for (const auto& mp : enumerate_multipartitions(kW2.w, 5))
    EXPECT_FALSE(pairing_norm(kW2, mp, p2).is_zero()) << mp.str();
}

TEST(Fock, ApplyCurrents) {
  auto p = pt(kW1);
  FockEngine<Fp> eng(kW1, 4, p, 6);
  std::size_t e0 = eng.basis().index.at(kEmpty1);
  std::size_t e1 = eng.basis().index.at(kBox1);
  FockVector<Fp> v{{e0, Fp::one()}};
  EXPECT_TRUE(eng.apply(OpKind::XPlus, 0, 0, v, false).empty());
  auto down = eng.apply(OpKind::XMinus, 0, 0, v, false);
  ASSERT_EQ(down.size(), 1u);
  EXPECT_EQ(down.at(e1), p.q * p.t * p.X[0].inv());
  // eps is an involution
  auto once = eng.apply(OpKind::Eps, 0, 0, FockVector<Fp>{{e1, Fp::one()}}, false);
  auto twice = eng.apply(OpKind::Eps, 0, 0, once, false);
  EXPECT_EQ(twice.at(e1), Fp::one());
  EXPECT_EQ(once.at(e1), -Fp::one());  // v_{(1),0} = 1
}

TEST(Fock, TruncationOverflow) {
  auto p = pt(kW1);
  FockEngine<Fp> eng(kW1, 2, p, 6);
  std::size_t top = 0;
  for (std::size_t i = 0; i < eng.basis().size(); ++i)
    if (eng.basis().degree[i] == 2) top = i;
  FockVector<Fp> v{{top, Fp::one()}};
  EXPECT_THROW(eng.apply(OpKind::XMinus, 0, 0, v, false), TruncationError);
  EXPECT_NO_THROW(eng.apply(OpKind::XPlus, 0, 0, v, false));
}

TEST(Fock, LinearityOnRandomVectors) {
  auto p = pt(kW2, 3);
  FockEngine<Fp> eng(kW2, 4, p, 6);
  const auto& basis = eng.basis();
  FockVector<Fp> v;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis.degree[i] <= 3 && i % 2 == 0) v.emplace(i, Fp::from_int(3 + (long long)i));
  for (OpKind kind : {OpKind::XPlus, OpKind::XMinus, OpKind::HPlus, OpKind::Eps}) {
    auto whole = eng.apply(kind, 1, 0, v, false);
    FockVector<Fp> sum;
    for (const auto& [i, c] : v) {
      auto part = eng.apply(kind, 1, 0, FockVector<Fp>{{i, Fp::one()}}, false);
      for (auto& [j, x] : part) {
        sum[j] += x * c;
        if (sum[j].is_zero()) sum.erase(j);
      }
    }
    EXPECT_EQ(whole, sum);
  }
}

TEST(Fock, HeckeFactorsBaseCaseBothSidesOne) {
  auto p = pt(kW1);
  Character qti = Character::qt_monomial(kW1, -1, -1);
  auto bfull = box_char(kW1, Box{0, 0, 0});
  auto lamB = boundary_chars(kW1, kBox1);
  auto muB = boundary_chars(kW1, kEmpty1);
  Fp plus_l8 =
      eval_lambda((qti * (bfull.dual() * lamB.I) - bfull.dual() * muB.R).isotypic(0), p);
  Fp minus_l8 = eval_lambda((qti * (bfull * muB.R.dual()) - bfull * lamB.I.dual()).isotypic(0), p);
  EXPECT_EQ(plus_l8, Fp::one());
  EXPECT_EQ(minus_l8, Fp::one());
  Fp nt = eval_lambda(normal_char(kW1, kEmpty1, kBox1).dual() - tangent_char(kW1, kEmpty1).dual(), p);
  EXPECT_EQ(nt, Fp::one());
}

TEST(Fock, TangentDimDependsOnlyOnResidueVector) {
  std::map<std::vector<int>, long> seen;
  for (const auto& mp : enumerate_multipartitions(kW2.w, 6)) {
    auto v = residue_counts(kW2, mp);
    long d = tangent_char(kW2, mp).dim_long();
    auto [it, fresh] = seen.emplace(v, d);
    EXPECT_TRUE(fresh || it->second == d) << mp.str();
  }
}
