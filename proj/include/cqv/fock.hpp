#pragma once

#include "cqv/chars.hpp"
#include "cqv/scalars.hpp"
#include "cqv/young.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace cqv {

struct TruncationError : std::runtime_error {
  TruncationError() : std::runtime_error("operator application leaves the active truncation") {}
};

/// Fixed-point weight character V_lambda = sum_a sum_{(i,j)} q^i t^j X_a S_{k_a+i-j}.
inline Character weight_char(const ModelConfig& cfg, const Multipartition& mp) {
  Character c(cfg.n, cfg.w);
  for (int a = 0; a < cfg.w; ++a) {
    for (int j = 0; j < static_cast<int>(mp.parts[a].size()); ++j) {
      for (int i = 0; i < mp.parts[a][j]; ++i) {
        std::vector<int> dx(cfg.w, 0);
        dx[a] = 1;
        c = c + Character::monomial(cfg, i, j, std::move(dx), box_residue(cfg, Box{a, i, j}));
      }
    }
  }
  return c;
}

inline Character box_char(const ModelConfig& cfg, const Box& b) {
  std::vector<int> dx(cfg.w, 0);
  dx[b.comp] = 1;
  return Character::monomial(cfg, b.i, b.j, std::move(dx), box_residue(cfg, b));
}

struct BoundaryChars {
  Character R;  // removable-box monomials
  Character I;  // addable-box monomials
  Character H;  // theta^* V + W, computed independently of R and I
};

inline BoundaryChars boundary_chars(const ModelConfig& cfg, const Multipartition& mp) {
  BoundaryChars out{Character(cfg.n, cfg.w), Character(cfg.n, cfg.w), Character(cfg.n, cfg.w)};
  for (int a = 0; a < cfg.w; ++a) {
    for (const Box& b : removable_cells(mp.parts[a], a)) out.R = out.R + box_char(cfg, b);
    for (const Box& b : addable_cells(mp.parts[a], a)) out.I = out.I + box_char(cfg, b);
  }
  out.H = theta_star_char(cfg) * weight_char(cfg, mp) + framing_char(cfg);
  return out;
}

/// Tangent character T_lambda = (theta^* V^* V + qt W^* V + V^* W)_0.
inline Character tangent_char(const ModelConfig& cfg, const Multipartition& mp) {
  Character V = weight_char(cfg, mp);
  Character W = framing_char(cfg);
  Character qt = Character::qt_monomial(cfg, 1, 1);
  Character z = theta_star_char(cfg) * (V.dual() * V) + qt * (W.dual() * V) + V.dual() * W;
  return z.isotypic(0);
}

/// Normal character N_{mu,lambda} = (theta^* V_mu^* V_lambda + qt W^* V_lambda
/// + V_mu^* W - qt)_0 for an adjacent pair mu -> lambda (one box apart).
inline Character normal_char(const ModelConfig& cfg, const Multipartition& mu,
                             const Multipartition& lam) {
  if (mu.total() + 1 != lam.total())
    throw std::invalid_argument("normal_char requires an adjacent pair");
  Character Vm = weight_char(cfg, mu);
  Character Vl = weight_char(cfg, lam);
  Character diff = Vl - Vm;
  if (diff.size() != 1 || diff.dim() != 1)
    throw std::invalid_argument("normal_char requires an adjacent pair");
  Character W = framing_char(cfg);
  Character qt = Character::qt_monomial(cfg, 1, 1);
  Character z = theta_star_char(cfg) * (Vm.dual() * Vl) + qt * (W.dual() * Vl) + Vm.dual() * W - qt;
  return z.isotypic(0);
}

inline long h_dim(const ModelConfig& cfg, const Multipartition& mp, int k) {
  return boundary_chars(cfg, mp).H.isotypic(k).dim_long();
}

/// gamma_{lambda,k} = q^{v_k - v_{k-1}} t^{v_k - v_{k+1}} as a pure q,t-monomial.
inline Monomial gamma_monomial(const ModelConfig& cfg, const Multipartition& mp, int k) {
  auto v = residue_counts(cfg, mp);
  int kk = ((k % cfg.n) + cfg.n) % cfg.n;
  Monomial m;
  m.dq = v[kk] - v[(kk + cfg.n - 1) % cfg.n];
  m.dt = v[kk] - v[(kk + 1) % cfg.n];
  m.dx.assign(cfg.w, 0);
  m.s = 0;
  return m;
}

/// The unique box of lambda/mu for an adjacent pair.
inline Box box_between(const ModelConfig& cfg, const Multipartition& mu, const Multipartition& lam) {
  for (int a = 0; a < cfg.w; ++a) {
    if (mu.parts[a] == lam.parts[a]) continue;
    for (int j = 0; j < static_cast<int>(lam.parts[a].size()); ++j) {
      int before = j < static_cast<int>(mu.parts[a].size()) ? mu.parts[a][j] : 0;
      if (lam.parts[a][j] != before) return Box{a, lam.parts[a][j] - 1, j};
    }
  }
  throw std::invalid_argument("box_between: multipartitions are not adjacent");
}

/// Matrix coefficient of x^+_{k,s} from b_lambda to b_mu, mu -> lambda by one
/// residue-k box: V_{lambda/mu,k}^s D(-q^-1 t^-1 H_{lambda,k})
/// Lambda((q^-1 t^-1 V^*_{lambda/mu} I_lambda - V^*_{lambda/mu} R_mu)_0).
template <FieldType F>
F xplus_coeff(const ModelConfig& cfg, const Multipartition& lam, const Multipartition& mu, int k,
              long s, const ParamPoint<F>& p) {
  Box b = box_between(cfg, mu, lam);
  if (box_residue(cfg, b) != ((k % cfg.n) + cfg.n) % cfg.n)
    throw std::invalid_argument("xplus_coeff: box residue does not match k");
  Character bfull = box_char(cfg, b);
  Monomial btw{b.i, b.j, std::vector<int>(cfg.w, 0), 0};
  btw.dx[b.comp] = 1;
  F bval = eval_monomial(btw, p);

  BoundaryChars lamB = boundary_chars(cfg, lam);
  BoundaryChars muB = boundary_chars(cfg, mu);
  Character qti = Character::qt_monomial(cfg, -1, -1);
  F D = eval_det((qti * lamB.H.isotypic(k)).scaled(-1), p);
  Character arg = (qti * (bfull.dual() * lamB.I) - bfull.dual() * muB.R).isotypic(0);
  return bval.pow(s) * D * eval_lambda(arg, p);
}

/// Matrix coefficient of x^-_{k,s} from b_mu to b_lambda:
/// V_{lambda/mu,k}^{s+h_{lambda,k}} gamma_{lambda,k}
/// Lambda((q^-1 t^-1 V_{lambda/mu} R^*_mu - V_{lambda/mu} I^*_lambda)_0).
template <FieldType F>
F xminus_coeff(const ModelConfig& cfg, const Multipartition& mu, const Multipartition& lam, int k,
               long s, const ParamPoint<F>& p) {
  Box b = box_between(cfg, mu, lam);
  if (box_residue(cfg, b) != ((k % cfg.n) + cfg.n) % cfg.n)
    throw std::invalid_argument("xminus_coeff: box residue does not match k");
  Character bfull = box_char(cfg, b);
  Monomial btw{b.i, b.j, std::vector<int>(cfg.w, 0), 0};
  btw.dx[b.comp] = 1;
  F bval = eval_monomial(btw, p);

  BoundaryChars lamB = boundary_chars(cfg, lam);
  BoundaryChars muB = boundary_chars(cfg, mu);
  long h = lamB.H.isotypic(k).dim_long();
  Character qti = Character::qt_monomial(cfg, -1, -1);
  Character arg = (qti * (bfull * muB.R.dual()) - bfull * lamB.I.dual()).isotypic(0);
  F gam = eval_monomial(gamma_monomial(cfg, lam, k), p);
  return bval.pow(s + h) * gam * eval_lambda(arg, p);
}

/// Theta_{lambda,k}(z) = (-1)^{h_{lambda,k}} gamma_{lambda,k}
/// Lambda_z((qt - 1) H^*_{lambda,k}), expanded at zero or infinity.
template <FieldType F>
TruncatedSeries<F> theta_series(const ModelConfig& cfg, const Multipartition& mp, int k,
                                SeriesDir dir, int order, const ParamPoint<F>& p) {
  Character Hk = boundary_chars(cfg, mp).H.isotypic(k);
  long h = Hk.dim_long();
  Character Hdual = Hk.dual();
  Character arg = Character::qt_monomial(cfg, 1, 1) * Hdual - Hdual;
  TruncatedSeries<F> s = lambda_z_series(arg, p, dir, order);
  F pref = eval_monomial(gamma_monomial(cfg, mp, k), p);
  if (h % 2 != 0) pref = -pref;
  for (F& c : s.coeffs) c = pref * c;
  return s;
}

/// Pairing norm <b_lambda | b_lambda> = Lambda(T_lambda^*).
template <FieldType F>
F pairing_norm(const ModelConfig& cfg, const Multipartition& mp, const ParamPoint<F>& p) {
  return eval_lambda(tangent_char(cfg, mp).dual(), p);
}

/// Graded basis of multipartitions with <= n_max boxes.
struct Basis {
  ModelConfig cfg;
  int n_max = 0;
  std::vector<Multipartition> elems;
  std::map<Multipartition, std::size_t> index;
  std::vector<int> degree;
  std::vector<std::vector<int>> vcounts;

  Basis(ModelConfig c, int nmax) : cfg(std::move(c)), n_max(nmax) {
    cfg.validate();
    elems = enumerate_multipartitions(cfg.w, n_max);
    degree.reserve(elems.size());
    vcounts.reserve(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      index.emplace(elems[i], i);
      degree.push_back(elems[i].total());
      vcounts.push_back(residue_counts(cfg, elems[i]));
    }
  }

  std::size_t size() const { return elems.size(); }
};

template <FieldType F>
using FockVector = std::map<std::size_t, F>;

/// Sparse operator on the truncated basis: rows indexed by source.
template <FieldType F>
struct SparseOp {
  int grading_delta = 0;  // -1 for x+, +1 for x-, 0 for diagonals
  bool diagonal = false;
  std::vector<std::vector<std::pair<std::size_t, F>>> rows;

  FockVector<F> apply(const FockVector<F>& v) const {
    FockVector<F> out;
    for (const auto& [i, c] : v) {
      for (const auto& [j, a] : rows[i]) {
        auto it = out.find(j);
        if (it == out.end()) {
          out.emplace(j, a * c);
        } else {
          it->second += a * c;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
    return out;
  }
};

enum class OpKind { XPlus, XMinus, Eps, HPlus, HMinus };

inline std::string op_kind_name(OpKind k) {
  switch (k) {
    case OpKind::XPlus: return "xplus";
    case OpKind::XMinus: return "xminus";
    case OpKind::Eps: return "eps";
    case OpKind::HPlus: return "hplus";
    case OpKind::HMinus: return "hminus";
  }
  return "?";
}

/// Per-(config, point) operator workspace. Matrices are built lazily per
/// (kind, k, mode, twisted) and cached; adjacency Lambda/Omega factors are
/// shared across modes, so the mode-s matrix costs one extra power of the
/// box monomial. Immutable once built; safe to share read-only.
template <FieldType F>
class FockEngine {
 public:
  FockEngine(ModelConfig cfg, int n_max, ParamPoint<F> pt, int series_order)
      : basis_(cfg, n_max), cfg_(basis_.cfg), pt_(std::move(pt)), series_order_(series_order) {}

  const Basis& basis() const { return basis_; }
  const ModelConfig& config() const { return cfg_; }
  const ParamPoint<F>& point() const { return pt_; }
  int series_order() const { return series_order_; }

  int eps_sign(std::size_t idx, int k) const {
    return basis_.vcounts[idx][mod(k)] % 2 == 0 ? 1 : -1;
  }

  /// Theta expansion coefficient of z^{-m} in the given direction: the
  /// at-infinity series supports m >= 0, the at-zero series m <= 0 (its z^|m|
  /// coefficient); outside the support or the order window the mode is 0.
  F theta_mode(std::size_t idx, int k, SeriesDir dir, int m) const {
    const auto& tab = theta_table(idx, mod(k));
    if (dir == SeriesDir::AtInfinity)
      return m >= 0 && m <= series_order_ ? tab.first.at(m) : F::zero();
    return m <= 0 && -m <= series_order_ ? tab.second.at(-m) : F::zero();
  }

  F h_mode_value(std::size_t idx, int k, SeriesDir dir, int m, bool twisted) const {
    F val = theta_mode(idx, k, dir, m);
    if (twisted) {
      int sgn = eps_sign(idx, k - 1) * eps_sign(idx, k + 1);
      val = sgn > 0 ? -val : val;
    }
    return val;
  }

  const SparseOp<F>& op(OpKind kind, int k, int mode, bool twisted) {
    Key key{kind, mod(k), mode, twisted};
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    auto built = std::make_unique<SparseOp<F>>(build(kind, mod(k), mode, twisted));
    return *cache_.emplace(key, std::move(built)).first->second;
  }

  /// Test hook: multiply one matrix entry by 2 during subsequent builds.
  void corrupt_entry(OpKind kind, int k, int mode, std::size_t src) {
    corrupt_ = std::make_tuple(kind, mod(k), mode, src);
    cache_.clear();
  }

  /// apply_current per the contract: raw or twisted action of x+/x-/eps/h.
  FockVector<F> apply(OpKind kind, int k, int mode, const FockVector<F>& vec, bool twisted) {
    for (const auto& [i, c] : vec) {
      if (i >= basis_.size()) throw std::out_of_range("vector exceeds basis");
      if (kind == OpKind::XMinus && basis_.degree[i] == basis_.n_max) throw TruncationError{};
    }
    return op(kind, k, mode, twisted).apply(vec);
  }

 private:
  using Key = std::tuple<OpKind, int, int, bool>;

  int mod(int k) const { return ((k % cfg_.n) + cfg_.n) % cfg_.n; }

  struct PairEntry {
    std::size_t other;  // target index
    F base;             // mode-0 coefficient
    F boxval;           // evaluated T_W part of the box monomial
  };

  // adjacency tables per residue k: down[src] lists x+ targets, up[src] x- targets
  struct Adjacency {
    std::vector<std::vector<PairEntry>> down, up;
  };

  const Adjacency& adjacency(int k) const {
    auto it = adj_.find(k);
    if (it != adj_.end()) return it->second;
    Adjacency a;
    a.down.resize(basis_.size());
    a.up.resize(basis_.size());
    for (std::size_t li = 0; li < basis_.size(); ++li) {
      const Multipartition& lam = basis_.elems[li];
      for (const Box& b : removable_boxes(cfg_, lam, k)) {
        Multipartition mu = remove_box(lam, b);
        std::size_t mi = basis_.index.at(mu);
        Monomial btw{b.i, b.j, std::vector<int>(cfg_.w, 0), 0};
        btw.dx[b.comp] = 1;
        F bv = eval_monomial(btw, pt_);
        a.down[li].push_back(PairEntry{mi, xplus_coeff(cfg_, lam, mu, k, 0, pt_), bv});
        a.up[mi].push_back(PairEntry{li, xminus_coeff(cfg_, mu, lam, k, 0, pt_), bv});
      }
    }
    return adj_.emplace(k, std::move(a)).first->second;
  }

  const std::pair<std::vector<F>, std::vector<F>>& theta_table(std::size_t idx, int k) const {
    auto key = std::make_pair(idx, k);
    auto it = theta_.find(key);
    if (it != theta_.end()) return it->second;
    auto inf = theta_series(cfg_, basis_.elems[idx], k, SeriesDir::AtInfinity, series_order_, pt_);
    auto zero = theta_series(cfg_, basis_.elems[idx], k, SeriesDir::AtZero, series_order_, pt_);
    return theta_.emplace(key, std::make_pair(std::move(inf.coeffs), std::move(zero.coeffs)))
        .first->second;
  }

  SparseOp<F> build(OpKind kind, int k, int mode, bool twisted) {
    SparseOp<F> m;
    m.rows.resize(basis_.size());
    switch (kind) {
      case OpKind::Eps: {
        m.diagonal = true;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
          F v = eps_sign(i, k) > 0 ? F::one() : -F::one();
          m.rows[i].emplace_back(i, v);
        }
        break;
      }
      case OpKind::HPlus:
      case OpKind::HMinus: {
        m.diagonal = true;
        SeriesDir dir = kind == OpKind::HPlus ? SeriesDir::AtInfinity : SeriesDir::AtZero;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
          F v = h_mode_value(i, k, dir, mode, twisted);
          if (!v.is_zero()) m.rows[i].emplace_back(i, v);
        }
        break;
      }
      case OpKind::XPlus: {
        m.grading_delta = -1;
        const Adjacency& a = adjacency(k);
        for (std::size_t li = 0; li < basis_.size(); ++li) {
          for (const PairEntry& e : a.down[li]) {
            F v = e.base * e.boxval.pow(mode);
            if (twisted) {
              int sgn = eps_sign(li, k) * eps_sign(li, k - 1);
              if (sgn < 0) v = -v;
            }
            if (!v.is_zero()) m.rows[li].emplace_back(e.other, v);
          }
        }
        break;
      }
      case OpKind::XMinus: {
        m.grading_delta = +1;
        const Adjacency& a = adjacency(k);
        for (std::size_t mi = 0; mi < basis_.size(); ++mi) {
          for (const PairEntry& e : a.up[mi]) {
            F v = e.base * e.boxval.pow(mode);
            if (twisted) {
              int sgn = eps_sign(mi, k + 1) * eps_sign(mi, k);
              if (sgn < 0) v = -v;
            }
            if (!v.is_zero()) m.rows[mi].emplace_back(e.other, v);
          }
        }
        break;
      }
    }
    if (corrupt_) {
      auto [ck, ckk, cs, csrc] = *corrupt_;
      if (ck == kind && ckk == k && cs == mode && csrc < m.rows.size()) {
        for (auto& [tgt, v] : m.rows[csrc]) v = v + v;
      }
    }
    return m;
  }

  Basis basis_;
  const ModelConfig& cfg_;
  ParamPoint<F> pt_;
  int series_order_;
  std::map<Key, std::unique_ptr<SparseOp<F>>> cache_;
  mutable std::map<int, Adjacency> adj_;
  mutable std::map<std::pair<std::size_t, int>, std::pair<std::vector<F>, std::vector<F>>> theta_;
  std::optional<std::tuple<OpKind, int, int, std::size_t>> corrupt_;
};

}  // namespace cqv
