#pragma once

#include "cqv/chars.hpp"
#include "cqv/field.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cqv {

/// Raised when a Lambda-genus factor (1 - v)^{-1} degenerates at the sampled
/// point. The caller resamples the point; the error is never swallowed.
struct PoleError : std::runtime_error {
  PoleError() : std::runtime_error("pole: monomial evaluates to 1 with negative multiplicity") {}
};

struct SamplingError : std::runtime_error {
  explicit SamplingError(const std::string& m) : std::runtime_error(m) {}
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Evaluation point for q, t, X_1..X_w. All entries are nonzero; q, t, every
/// X_a and qt are distinct from 1.
template <FieldType F>
struct ParamPoint {
  F q, t;
  std::vector<F> X;
  std::uint64_t seed = 0;

  std::string backend() const { return F::backend_name(); }
};

namespace detail {

inline Fp sample_element(std::mt19937_64& rng, Fp*) {
  std::uniform_int_distribution<std::uint64_t> dist(2, Fp::modulus() - 2);
  return Fp::from_raw(dist(rng));
}

inline Rat sample_element(std::mt19937_64& rng, Rat*) {
  std::uniform_int_distribution<long long> num(2, 1000000);
  std::uniform_int_distribution<long long> den(2, 1000000);
  std::uniform_int_distribution<int> sign(0, 1);
  long long n = num(rng);
  return Rat::from_fraction(sign(rng) ? n : -n, den(rng));
}

}  // namespace detail

/// Deterministic for a fixed seed; resamples until the nonzero / != 1
/// constraints hold.
template <FieldType F>
ParamPoint<F> sample_point(const ModelConfig& cfg, std::uint64_t seed, int budget = 64) {
  std::mt19937_64 rng(splitmix64(seed));
  auto draw = [&] { return detail::sample_element(rng, static_cast<F*>(nullptr)); };
  auto bad_unit = [](const F& v) { return v.is_zero() || v == F::one(); };
  for (int attempt = 0; attempt < budget; ++attempt) {
    ParamPoint<F> p;
    p.seed = seed;
    p.q = draw();
    p.t = draw();
    p.X.clear();
    for (int a = 0; a < cfg.w; ++a) p.X.push_back(draw());
    bool ok = !bad_unit(p.q) && !bad_unit(p.t) && !bad_unit(p.q * p.t);
    for (const F& x : p.X) ok = ok && !bad_unit(x);
    if (ok) return p;
  }
  throw SamplingError("exhausted resampling budget for parameter point");
}

template <FieldType F>
F eval_monomial(const Monomial& m, const ParamPoint<F>& p) {
  if (m.s != 0) throw std::logic_error("eval_monomial: nontrivial Gamma weight");
  F r = p.q.pow(m.dq) * p.t.pow(m.dt);
  for (std::size_t a = 0; a < m.dx.size(); ++a)
    if (m.dx[a] != 0) r = r * p.X[a].pow(m.dx[a]);
  return r;
}

/// Lambda genus: prod over terms (1 - eval(m))^{coeff}. A factor equal to
/// zero is legal for positive multiplicity (the product vanishes); for
/// negative multiplicity it is a pole and the point must be resampled.
template <FieldType F>
F eval_lambda(const Character& c, const ParamPoint<F>& p) {
  F num = F::one(), den = F::one();
  bool zero = false;
  for (const auto& [m, co] : c.terms()) {
    if (m.s != 0) throw std::logic_error("eval_lambda: character has nontrivial Gamma weights");
    F v = F::one() - eval_monomial(m, p);
    long e = co.template convert_to<long>();
    if (v.is_zero()) {
      if (e < 0) throw PoleError{};
      zero = true;
      continue;
    }
    if (e > 0)
      num = num * v.pow(e);
    else
      den = den * v.pow(-e);
  }
  if (zero) return F::zero();
  return num * den.inv();
}

/// Determinant genus: prod over terms eval(m)^{coeff}; monomials are units.
template <FieldType F>
F eval_det(const Character& c, const ParamPoint<F>& p) {
  F r = F::one();
  for (const auto& [m, co] : c.terms()) {
    if (m.s != 0) throw std::logic_error("eval_det: character has nontrivial Gamma weights");
    r = r * eval_monomial(m, p).pow(co.template convert_to<long>());
  }
  return r;
}

enum class SeriesDir { AtZero, AtInfinity };

/// Finitely many coefficients of an expansion in z (at zero) or z^-1 (at
/// infinity): coeffs[m] multiplies z^m resp. z^-m.
template <FieldType F>
struct TruncatedSeries {
  SeriesDir dir = SeriesDir::AtZero;
  int order = 0;
  std::vector<F> coeffs;

  const F& at(int m) const { return coeffs.at(static_cast<std::size_t>(m)); }
};

/// Series of prod (1 - z v)^e at z = 0, to the given order. Factors with
/// e < 0 expand by geometric series.
template <FieldType F>
TruncatedSeries<F> series_at_zero(const std::vector<std::pair<F, long>>& factors, int order) {
  TruncatedSeries<F> s{SeriesDir::AtZero, order, std::vector<F>(order + 1, F::zero())};
  s.coeffs[0] = F::one();
  for (const auto& [v, e] : factors) {
    for (long rep = 0; rep < std::abs(e); ++rep) {
      std::vector<F> next(order + 1, F::zero());
      if (e > 0) {
        for (int m = 0; m <= order; ++m) {
          next[m] = s.coeffs[m];
          if (m > 0) next[m] = next[m] - v * s.coeffs[m - 1];
        }
      } else {
        std::vector<F> pw(order + 1);
        pw[0] = F::one();
        for (int m = 1; m <= order; ++m) pw[m] = pw[m - 1] * v;
        for (int m = 0; m <= order; ++m)
          for (int j = 0; j <= m; ++j) next[m] = next[m] + s.coeffs[j] * pw[m - j];
      }
      s.coeffs = std::move(next);
    }
  }
  return s;
}

/// Series of a rank-zero product prod (1 - z v)^e at z = infinity. Writing
/// u = 1/z, the product equals D * prod (1 - u/v)^e with D = prod v^e, so the
/// z^-m coefficient is D times the u^m coefficient of the dual factors.
template <FieldType F>
TruncatedSeries<F> series_at_infinity(const std::vector<std::pair<F, long>>& factors, int order) {
  long rank = 0;
  for (const auto& [v, e] : factors) rank += e;
  if (rank != 0) throw std::logic_error("series_at_infinity requires a rank-0 factor list");
  F D = F::one();
  std::vector<std::pair<F, long>> dual;
  dual.reserve(factors.size());
  for (const auto& [v, e] : factors) {
    D = D * v.pow(e);
    dual.emplace_back(v.inv(), e);
  }
  TruncatedSeries<F> s = series_at_zero(dual, order);
  s.dir = SeriesDir::AtInfinity;
  for (F& c : s.coeffs) c = D * c;
  return s;
}

template <FieldType F>
std::vector<std::pair<F, long>> lambda_factors(const Character& c, const ParamPoint<F>& p) {
  std::vector<std::pair<F, long>> f;
  f.reserve(c.size());
  for (const auto& [m, co] : c.terms()) {
    if (m.s != 0) throw std::logic_error("lambda_factors: character has nontrivial Gamma weights");
    f.emplace_back(eval_monomial(m, p), co.template convert_to<long>());
  }
  return f;
}

/// Truncated expansion of Lambda_z(c) at zero or infinity. The at-infinity
/// direction requires dim(c) == 0 (equal ranks). A factor evaluating to 1
/// with negative multiplicity is a pole (geometric series at z=1 on the
/// boundary), reported for resampling.
template <FieldType F>
TruncatedSeries<F> lambda_z_series(const Character& c, const ParamPoint<F>& p, SeriesDir dir,
                                   int order) {
  auto f = lambda_factors(c, p);
  for (const auto& [v, e] : f)
    if (v == F::one() && e < 0) throw PoleError{};
  if (dir == SeriesDir::AtZero) return series_at_zero(f, order);
  if (c.dim() != 0) throw std::logic_error("lambda_z_series at infinity requires rank 0");
  return series_at_infinity(f, order);
}

}  // namespace cqv
