#pragma once

#include "cqv/field.hpp"

#include <compare>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqv {

/// Cyclic-quiver model data: group order n, framing size w, framing colors.
struct ModelConfig {
  int n = 3;
  int w = 1;
  std::vector<int> colors;

  void validate() const {
    if (n < 3) throw std::invalid_argument("n must be >= 3");
    if (w < 1) throw std::invalid_argument("w must be >= 1");
    if (static_cast<int>(colors.size()) != w) throw std::invalid_argument("need exactly w colors");
    for (int c : colors)
      if (c < 0 || c >= n) throw std::invalid_argument("colors must lie in [0, n)");
  }

  int color(int a) const { return colors.at(a); }
};

/// Laurent monomial q^dq t^dt X_1^{dx[0]} ... X_w^{dx[w-1]} S^s with s mod n.
/// Ordering is lexicographic on (dq, dt, dx, s), which fixes the canonical
/// storage and serialization order.
struct Monomial {
  int dq = 0;
  int dt = 0;
  std::vector<int> dx;
  int s = 0;

  auto operator<=>(const Monomial&) const = default;
};

/// Element of R(T_W x Gamma): finite integer combination of monomials.
/// Immutable value type; all operations return fresh characters.
class Character {
 public:
  Character() = default;
  Character(int n, int w) : n_(n), w_(w) {}

  static Character monomial(const ModelConfig& cfg, int dq, int dt, std::vector<int> dx, int s,
                            Int coeff = 1) {
    Character c(cfg.n, cfg.w);
    if (static_cast<int>(dx.size()) != cfg.w) throw std::invalid_argument("dx must have w entries");
    Monomial m{dq, dt, std::move(dx), ((s % cfg.n) + cfg.n) % cfg.n};
    if (coeff != 0) c.terms_[std::move(m)] = std::move(coeff);
    return c;
  }

  static Character qt_monomial(const ModelConfig& cfg, int dq, int dt, Int coeff = 1) {
    return monomial(cfg, dq, dt, std::vector<int>(cfg.w, 0), 0, std::move(coeff));
  }

  int n() const { return n_; }
  int w() const { return w_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Monomial, Int>& terms() const { return terms_; }

  Int coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
  }

  friend Character operator+(const Character& a, const Character& b) {
    a.check_compatible(b);
    Character out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend Character operator-(const Character& a, const Character& b) {
    a.check_compatible(b);
    Character out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
  }

  friend Character operator*(const Character& a, const Character& b) {
    a.check_compatible(b);
    Character out(a.n_, a.w_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        m.dq = ma.dq + mb.dq;
        m.dt = ma.dt + mb.dt;
        m.dx.resize(ma.dx.size());
        for (std::size_t i = 0; i < ma.dx.size(); ++i) m.dx[i] = ma.dx[i] + mb.dx[i];
        m.s = (ma.s + mb.s) % a.n_;
        out.add_term(std::move(m), ca * cb);
      }
    }
    return out;
  }

  Character scaled(const Int& k) const {
    Character out(n_, w_);
    if (k == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_[m] = c * k;
    return out;
  }

  /// Termwise inverse of every monomial, including the Gamma weight.
  Character dual() const {
    Character out(n_, w_);
    for (const auto& [m, c] : terms_) {
      Monomial d;
      d.dq = -m.dq;
      d.dt = -m.dt;
      d.dx.reserve(m.dx.size());
      for (int e : m.dx) d.dx.push_back(-e);
      d.s = (n_ - m.s) % n_;
      out.terms_[std::move(d)] = c;
    }
    return out;
  }

  /// Gamma-weight-k part, with the weight reset to zero (a T_W-character).
  Character isotypic(int k) const {
    Character out(n_, w_);
    int kk = ((k % n_) + n_) % n_;
    for (const auto& [m, c] : terms_) {
      if (m.s == kk) {
        Monomial z = m;
        z.s = 0;
        out.terms_[std::move(z)] = c;
      }
    }
    return out;
  }

  /// Virtual dimension: signed coefficient sum.
  Int dim() const {
    Int d = 0;
    for (const auto& [m, c] : terms_) d += c;
    return d;
  }

  long dim_long() const { return dim().convert_to<long>(); }

  friend bool operator==(const Character& a, const Character& b) {
    return a.n_ == b.n_ && a.w_ == b.w_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.str() << "*" << monomial_str(m);
    }
    return os.str();
  }

  static std::string monomial_str(const Monomial& m) {
    std::ostringstream os;
    bool any = false;
    auto put = [&](const std::string& name, int e) {
      if (e == 0) return;
      if (any) os << " ";
      os << name << "^" << e;
      any = true;
    };
    put("q", m.dq);
    put("t", m.dt);
    for (std::size_t a = 0; a < m.dx.size(); ++a) put("X" + std::to_string(a + 1), m.dx[a]);
    put("S", m.s);
    if (!any) return "1";
    return os.str();
  }

 private:
  void check_compatible(const Character& o) const {
    if (n_ != o.n_ || w_ != o.w_)
      throw std::invalid_argument("character configuration mismatch (n or w differ)");
  }

  void add_term(Monomial m, Int c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int n_ = 0;
  int w_ = 0;
  std::map<Monomial, Int> terms_;
};

/// theta = t^-1 S + q^-1 S^-1 - 1 - q^-1 t^-1.
inline Character theta_char(const ModelConfig& cfg) {
  auto zero = std::vector<int>(cfg.w, 0);
  Character c(cfg.n, cfg.w);
  c = c + Character::monomial(cfg, 0, -1, zero, 1);
  c = c + Character::monomial(cfg, -1, 0, zero, -1);
  c = c + Character::monomial(cfg, 0, 0, zero, 0, -1);
  c = c + Character::monomial(cfg, -1, -1, zero, 0, -1);
  return c;
}

/// theta^* = t S^-1 + q S - 1 - qt (equals qt * theta).
inline Character theta_star_char(const ModelConfig& cfg) { return theta_char(cfg).dual(); }

/// Framing character W = sum_a X_a S_{k_a}.
inline Character framing_char(const ModelConfig& cfg) {
  Character c(cfg.n, cfg.w);
  for (int a = 0; a < cfg.w; ++a) {
    std::vector<int> dx(cfg.w, 0);
    dx[a] = 1;
    c = c + Character::monomial(cfg, 0, 0, std::move(dx), cfg.color(a));
  }
  return c;
}

}  // namespace cqv
