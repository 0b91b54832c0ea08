#include "cqv/scalars.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cqv;

namespace {

const ModelConfig kCfg{3, 2, {0, 1}};

ParamPoint<Rat> fixed_point() {
  ParamPoint<Rat> p;
  p.q = Rat::from_int(5);
  p.t = Rat::from_fraction(2, 3);
  p.X = {Rat::from_int(3), Rat::from_int(7)};
  return p;
}

Character wt0_char(const ModelConfig& cfg, std::mt19937_64& rng, int terms = 5) {
  std::uniform_int_distribution<int> e(-3, 3), co(-3, 3);
  Character c(cfg.n, cfg.w);
  for (int i = 0; i < terms; ++i) {
    std::vector<int> dx(cfg.w, 0);
    for (int a = 0; a < cfg.w; ++a) dx[a] = e(rng);
    int dq = e(rng), dt = e(rng);
    bool trivial = dq == 0 && dt == 0;
    for (int v : dx) trivial = trivial && v == 0;
    if (trivial) dq = 1;
    c = c + Character::monomial(cfg, dq, dt, dx, 0, co(rng));
  }
  return c;
}

}  // namespace

TEST(Field, PrimeArithmetic) {
  ASSERT_EQ(Fp::modulus(), Fp::kDefaultModulus);
  auto a = Fp::from_int(123456789);
  auto b = Fp::from_int(-987654321);
  EXPECT_EQ(a * a.inv(), Fp::one());
  EXPECT_EQ(a.pow(-3) * a.pow(3), Fp::one());
  EXPECT_EQ((a + b) - b, a);
  EXPECT_THROW(Fp::zero().inv(), std::domain_error);
  EXPECT_THROW(Fp::set_modulus(1000003), std::invalid_argument);       // too small
  EXPECT_THROW(Fp::set_modulus((1ull << 61) + 1), std::invalid_argument);  // composite
}

TEST(Field, RationalSerialization) {
  auto r = Rat::from_fraction(-6, 4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rat::from_int(5).str(), "5/1");
}

TEST(Sampling, DeterministicAndConstrained) {
  auto p1 = sample_point<Fp>(kCfg, 42);
  auto p2 = sample_point<Fp>(kCfg, 42);
  EXPECT_EQ(p1.q, p2.q);
  EXPECT_EQ(p1.t, p2.t);
  EXPECT_EQ(p1.X, p2.X);
  auto p3 = sample_point<Fp>(kCfg, 43);
  EXPECT_FALSE(p1.q == p3.q && p1.t == p3.t && p1.X == p3.X);
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto p = sample_point<Fp>(kCfg, s);
    EXPECT_FALSE(p.q.is_zero() || p.q == Fp::one());
    EXPECT_FALSE(p.t.is_zero() || p.t == Fp::one());
    EXPECT_FALSE((p.q * p.t) == Fp::one());
    for (auto& x : p.X) EXPECT_FALSE(x.is_zero() || x == Fp::one());
  }
  auto pr = sample_point<Rat>(kCfg, 42);
  EXPECT_FALSE(pr.q.is_zero() || pr.q == Rat::one());
}

TEST(Eval, Monomial) {
  auto p = fixed_point();
  EXPECT_EQ(eval_monomial(Monomial{1, 0, {0, 0}, 0}, p), Rat::from_int(5));
  EXPECT_EQ(eval_monomial(Monomial{-1, 0, {0, 0}, 0}, p), Rat::from_fraction(1, 5));
  EXPECT_EQ(eval_monomial(Monomial{0, 0, {0, 1}, 0}, p), Rat::from_int(7));
  EXPECT_THROW(eval_monomial(Monomial{0, 0, {0, 0}, 1}, p), std::logic_error);
}

TEST(Eval, Lambda) {
  auto p = fixed_point();
  Character zero(kCfg.n, kCfg.w);
  EXPECT_EQ(eval_lambda(zero, p), Rat::one());
  auto m = Character::monomial(kCfg, 1, 0, {0, 0}, 0);  // q
  EXPECT_EQ(eval_lambda(m.scaled(-1), p), (Rat::one() - Rat::from_int(5)).inv());
  // trivial monomial with positive coefficient: the product vanishes
  auto one = Character::monomial(kCfg, 0, 0, {0, 0}, 0);
  EXPECT_EQ(eval_lambda(one, p), Rat::zero());
  EXPECT_THROW(eval_lambda(one.scaled(-1), p), PoleError);
}

TEST(Eval, LambdaMultiplicative) {
  std::mt19937_64 rng(5);
  auto p = sample_point<Fp>(kCfg, 99);
  for (int i = 0; i < 50; ++i) {
    auto a = wt0_char(kCfg, rng), b = wt0_char(kCfg, rng);
    try {
      EXPECT_EQ(eval_lambda(a + b, p), eval_lambda(a, p) * eval_lambda(b, p));
    } catch (const PoleError&) {
    }
  }
}

TEST(Eval, Det) {
  auto p = fixed_point();
  Character zero(kCfg.n, kCfg.w);
  EXPECT_EQ(eval_det(zero, p), Rat::one());
  auto m = Character::monomial(kCfg, 0, 1, {0, 0}, 0);  // t
  EXPECT_EQ(eval_det(m.scaled(-1), p), Rat::from_fraction(3, 2));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 30; ++i) {
    auto a = wt0_char(kCfg, rng), b = wt0_char(kCfg, rng);
    EXPECT_EQ(eval_det(a + b, p), eval_det(a, p) * eval_det(b, p));
  }
}

TEST(Eval, DetLambdaIdentity) {
  // D(E) Lambda(E*) = (-1)^{dim E} Lambda(E)
  std::mt19937_64 rng(8);
  auto p = sample_point<Fp>(kCfg, 123);
  for (int i = 0; i < 200; ++i) {
    auto e = wt0_char(kCfg, rng);
    try {
      Fp lhs = eval_det(e, p) * eval_lambda(e.dual(), p);
      Fp rhs = eval_lambda(e, p);
      if (e.dim_long() % 2 != 0) rhs = -rhs;
      EXPECT_EQ(lhs, rhs);
    } catch (const PoleError&) {
    }
  }
}

TEST(Series, BasicExpansions) {
  auto p = fixed_point();
  auto m = Character::monomial(kCfg, 0, 0, {1, 0}, 0);  // X1 -> 3
  Rat v = Rat::from_int(3);
  auto s = lambda_z_series(m, p, SeriesDir::AtZero, 2);
  EXPECT_EQ(s.coeffs, (std::vector<Rat>{Rat::one(), -v, Rat::zero()}));
  auto g = lambda_z_series(m.scaled(-1), p, SeriesDir::AtZero, 2);
  EXPECT_EQ(g.coeffs, (std::vector<Rat>{Rat::one(), v, v * v}));
  // Lambda_z(qt m - m) at infinity has constant term qt
  auto qtm = Character::monomial(kCfg, 1, 1, {1, 0}, 0);
  auto e = qtm - m;
  auto inf = lambda_z_series(e, p, SeriesDir::AtInfinity, 0);
  EXPECT_EQ(inf.coeffs[0], p.q * p.t);
  EXPECT_THROW(lambda_z_series(m, p, SeriesDir::AtInfinity, 2), std::logic_error);
}

TEST(Series, ProductMatchesSum) {
  std::mt19937_64 rng(9);
  auto p = sample_point<Fp>(kCfg, 7);
  const int M = 5;
  for (int i = 0; i < 30; ++i) {
    auto a = wt0_char(kCfg, rng), b = wt0_char(kCfg, rng);
    auto sa = lambda_z_series(a, p, SeriesDir::AtZero, M);
    auto sb = lambda_z_series(b, p, SeriesDir::AtZero, M);
    auto sab = lambda_z_series(a + b, p, SeriesDir::AtZero, M);
    for (int m = 0; m <= M; ++m) {
      Fp conv = Fp::zero();
      for (int j = 0; j <= m; ++j) conv = conv + sa.at(j) * sb.at(m - j);
      EXPECT_EQ(conv, sab.at(m));
    }
  }
}

TEST(Series, ZeroAndInfinityAgreeWithRationalFunction) {
  // For rank-0 E: Lambda_z(E) = P/Q with P, Q polynomial products over the
  // positive and negative parts. Cross-multiplying each truncated expansion
  // by its denominator must reproduce the numerator coefficients.
  auto p = sample_point<Fp>(kCfg, 55);
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> e(-2, 2);
  const int M = 6;
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<std::pair<Fp, long>> num, den;  // (1 - zv)^{+1} factors each
    int d = 2 + rep % 3;
    for (int i = 0; i < d; ++i) {
      num.emplace_back(p.q.pow(e(rng)) * p.t.pow(e(rng)) * p.X[0].pow(e(rng)), 1);
      den.emplace_back(p.q.pow(e(rng)) * p.t.pow(e(rng)) * p.X[1].pow(e(rng)), 1);
    }
    std::vector<std::pair<Fp, long>> all = num;
    for (auto [v, c] : den) all.emplace_back(v, -1);
    // at zero
    auto s0 = series_at_zero(all, M);
    auto q0 = series_at_zero(den, M);
    auto p0 = series_at_zero(num, M);
    for (int m = 0; m <= M; ++m) {
      Fp conv = Fp::zero();
      for (int j = 0; j <= m; ++j) conv = conv + s0.at(j) * q0.at(m - j);
      EXPECT_EQ(conv, p0.at(m));
    }
    // at infinity: in u = 1/z the same function is prod(u - v_num)/prod(u - v_den)
    auto sinf = series_at_infinity(all, M);
    auto mono_series = [&](const std::vector<std::pair<Fp, long>>& fs) {
      Fp scale = Fp::one();
      std::vector<std::pair<Fp, long>> dual;
      for (auto [v, c] : fs) {
        scale = scale * (-v);
        dual.emplace_back(v.inv(), 1);
      }
      auto s = series_at_zero(dual, M);
      for (auto& c : s.coeffs) c = scale * c;
      return s;
    };
    auto pn = mono_series(num), pd = mono_series(den);
    for (int m = 0; m <= M; ++m) {
      Fp conv = Fp::zero();
      for (int j = 0; j <= m; ++j) conv = conv + sinf.at(j) * pd.at(m - j);
      EXPECT_EQ(conv, pn.at(m));
    }
  }
}
