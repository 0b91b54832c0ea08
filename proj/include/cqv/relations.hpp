#pragma once

#include "cqv/fock.hpp"

#include <string>
#include <vector>

namespace cqv::rel {

enum class Cur { XP, XM, HP, HM };

/// One current in an operator product: kind, color offset from the base
/// color, and the formal variable its mode is read from.
struct Factor {
  Cur cur;
  int dk;
  int var;
};

/// c * q^eq * t^et; a coefficient is a small sum of these.
struct Scalar {
  int c;
  int eq;
  int et;
};

/// One term of a relation side: scalar coefficient, per-variable mode shift
/// (from the z^a w^b prefactor), and the operator product (leftmost factor
/// applies last).
struct Term {
  std::vector<Scalar> coef;
  std::vector<int> shift;
  std::vector<Factor> ops;
};

/// Mode-level relation LHS = sigma * RHS, quantified over the base color,
/// a mode window per variable, and all basis vectors in the check range.
struct Relation {
  int nvars = 2;
  std::vector<Term> lhs, rhs;
};

/// One candidate algebraic form of a family. Families whose stated form is
/// ambiguous carry several candidates; the checker reports which one holds.
struct Candidate {
  std::string label;
  std::vector<Relation> rels;
};

struct FamilySpec {
  std::string name;
  std::vector<Candidate> candidates;
};

namespace dsl {

inline Scalar s(int c, int eq = 0, int et = 0) { return Scalar{c, eq, et}; }
inline Term term(std::vector<Scalar> coef, std::vector<int> shift, std::vector<Factor> ops) {
  return Term{std::move(coef), std::move(shift), std::move(ops)};
}
inline Factor xp(int dk, int var) { return Factor{Cur::XP, dk, var}; }
inline Factor xm(int dk, int var) { return Factor{Cur::XM, dk, var}; }
inline Factor hp(int dk, int var) { return Factor{Cur::HP, dk, var}; }
inline Factor hm(int dk, int var) { return Factor{Cur::HM, dk, var}; }

}  // namespace dsl

// ---------------------------------------------------------------------------
// Raw-operator suite: the exchange relations of the untwisted currents in
// mode form.
// ---------------------------------------------------------------------------

/// (z - qt w) x^e(z) x^e(w) = s (qt z - w) x^e(w) x^e(z); e = -1 flips the
/// mode shifts (z^e, w^e in the display).
inline Relation xx_same_color(bool plus) {
  using namespace dsl;
  int sh = plus ? 1 : -1;
  auto X = [&](int dk, int var) { return plus ? xp(dk, var) : xm(dk, var); };
  Relation r;
  r.lhs = {term({s(1)}, {sh, 0}, {X(0, 0), X(0, 1)}),
           term({s(-1, 1, 1)}, {0, sh}, {X(0, 0), X(0, 1)})};
  r.rhs = {term({s(1, 1, 1)}, {sh, 0}, {X(0, 1), X(0, 0)}),
           term({s(-1)}, {0, sh}, {X(0, 1), X(0, 0)})};
  return r;
}

/// (t w - z) x+_{k+1}(w) x+_k(z) = s (q z - w) x+_k(z) x+_{k+1}(w).
inline Relation xx_adjacent_plus_raw() {
  using namespace dsl;
  Relation r;
  r.lhs = {term({s(1, 0, 1)}, {1, 0}, {xp(1, 0), xp(0, 1)}),
           term({s(-1)}, {0, 1}, {xp(1, 0), xp(0, 1)})};
  r.rhs = {term({s(1, 1, 0)}, {0, 1}, {xp(0, 1), xp(1, 0)}),
           term({s(-1)}, {1, 0}, {xp(0, 1), xp(1, 0)})};
  return r;
}

/// (w - t z) x-_{k+1}(w) x-_k(z) = s (z - q w) x-_k(z) x-_{k+1}(w).
inline Relation xx_adjacent_minus_primary() {
  using namespace dsl;
  Relation r;
  r.lhs = {term({s(1)}, {1, 0}, {xm(1, 0), xm(0, 1)}),
           term({s(-1, 0, 1)}, {0, 1}, {xm(1, 0), xm(0, 1)})};
  r.rhs = {term({s(1)}, {0, 1}, {xm(0, 1), xm(1, 0)}),
           term({s(-1, 1, 0)}, {1, 0}, {xm(0, 1), xm(1, 0)})};
  return r;
}

/// Same with q and t exchanged: (w - q z) ... = s (z - t w) ...
inline Relation xx_adjacent_minus_qt_swapped() {
  using namespace dsl;
  Relation r;
  r.lhs = {term({s(1)}, {1, 0}, {xm(1, 0), xm(0, 1)}),
           term({s(-1, 1, 0)}, {0, 1}, {xm(1, 0), xm(0, 1)})};
  r.rhs = {term({s(1)}, {0, 1}, {xm(0, 1), xm(1, 0)}),
           term({s(-1, 0, 1)}, {1, 0}, {xm(0, 1), xm(1, 0)})};
  return r;
}

/// [x^e_{k+d}(w), x^e_k(z)] = 0 for cyclic distance >= 2.
inline Relation xx_distant(bool plus, int d) {
  using namespace dsl;
  auto X = [&](int dk, int var) { return plus ? xp(dk, var) : xm(dk, var); };
  Relation r;
  r.lhs = {term({s(1)}, {0, 0}, {X(d, 0), X(0, 1)})};
  r.rhs = {term({s(1)}, {0, 0}, {X(0, 1), X(d, 0)})};
  return r;
}

/// (w - qt z) h+_k(w) x+_k(z) = s (qt w - z) x+_k(z) h+_k(w).
inline Relation hx_same_raw() {
  using namespace dsl;
  Relation r;
  r.lhs = {term({s(1)}, {1, 0}, {hp(0, 0), xp(0, 1)}),
           term({s(-1, 1, 1)}, {0, 1}, {hp(0, 0), xp(0, 1)})};
  r.rhs = {term({s(1, 1, 1)}, {1, 0}, {xp(0, 1), hp(0, 0)}),
           term({s(-1)}, {0, 1}, {xp(0, 1), hp(0, 0)})};
  return r;
}

/// (t w - z) h+_{k+1}(w) x+_k(z) = s (q z - w) x+_k(z) h+_{k+1}(w).
inline Relation hx_adjacent_raw() {
  using namespace dsl;
  Relation r;
  r.lhs = {term({s(1, 0, 1)}, {1, 0}, {hp(1, 0), xp(0, 1)}),
           term({s(-1)}, {0, 1}, {hp(1, 0), xp(0, 1)})};
  r.rhs = {term({s(1, 1, 0)}, {0, 1}, {xp(0, 1), hp(1, 0)}),
           term({s(-1)}, {1, 0}, {xp(0, 1), hp(1, 0)})};
  return r;
}

inline Relation hx_distant(int d) {
  using namespace dsl;
  Relation r;
  r.lhs = {term({s(1)}, {0, 0}, {hp(d, 0), xp(0, 1)})};
  r.rhs = {term({s(1)}, {0, 0}, {xp(0, 1), hp(d, 0)})};
  return r;
}

/// Serre sum in mode form: the z1 <-> z2 symmetrization is explicit, the
/// outer coefficients (c1 on x_k x_k x_{k+tau}, c3 on x_{k+tau} x_k x_k) come
/// as arguments, and the middle term is moved to the RHS so that sigma
/// resolves the +/-((qt)^tau + 1) question.
inline Relation serre(bool plus, int tau, bool outer_swapped) {
  using namespace dsl;
  auto X = [&](int dk, int var) { return plus ? xp(dk, var) : xm(dk, var); };
  int e = tau;  // exponent sign on t^tau, q^tau, (qt)^tau
  Scalar c1 = outer_swapped ? s(1, e, 0) : s(1, 0, e);  // q^tau vs t^tau
  Scalar c3 = outer_swapped ? s(1, 0, e) : s(1, e, 0);
  Relation r;
  r.nvars = 3;
  for (auto [va, vb] : {std::pair{0, 1}, std::pair{1, 0}}) {
    r.lhs.push_back(term({c1}, {0, 0, 0}, {X(0, va), X(0, vb), X(tau, 2)}));
    r.lhs.push_back(term({c3}, {0, 0, 0}, {X(tau, 2), X(0, va), X(0, vb)}));
    r.rhs.push_back(term({s(-1, e, e), s(-1)}, {0, 0, 0}, {X(0, va), X(tau, 2), X(0, vb)}));
  }
  return r;
}

inline std::vector<FamilySpec> untwisted_families(int n) {
  std::vector<FamilySpec> fams;
  fams.push_back({"xx-same", {{"standard", {xx_same_color(true), xx_same_color(false)}}}});
  fams.push_back({"xx-adjacent-plus", {{"standard", {xx_adjacent_plus_raw()}}}});
  fams.push_back({"xx-adjacent-minus",
                  {{"standard", {xx_adjacent_minus_primary()}},
                   {"qt-swapped", {xx_adjacent_minus_qt_swapped()}}}});
  {
    FamilySpec f{"xx-distant", {}};
    Candidate c{"standard", {}};
    for (int d = 2; d <= n - 2; ++d) {
      c.rels.push_back(xx_distant(true, d));
      c.rels.push_back(xx_distant(false, d));
    }
    f.candidates.push_back(std::move(c));
    fams.push_back(std::move(f));
  }
  fams.push_back({"hx-same", {{"standard", {hx_same_raw()}}}});
  fams.push_back({"hx-adjacent", {{"standard", {hx_adjacent_raw()}}}});
  {
    FamilySpec f{"hx-distant", {}};
    Candidate c{"standard", {}};
    for (int d = 2; d <= n - 2; ++d) c.rels.push_back(hx_distant(d));
    f.candidates.push_back(std::move(c));
    fams.push_back(std::move(f));
  }
  fams.push_back({"serre",
                  {{"standard", {serre(true, 1, false), serre(true, -1, false)}},
                   {"outer-swapped", {serre(true, 1, true), serre(true, -1, true)}}}});
  return fams;
}

// ---------------------------------------------------------------------------
// Twisted suite: the relation presentation satisfied by the sign-twisted
// generators, in mode form.
// ---------------------------------------------------------------------------

/// (z - qt w)^tau h^e_i(z) x^tau_i(w) = s (qt z - w)^tau x^tau_i(w) h^e_i(z),
/// with tau = -1 written after cross-multiplying the inverse factors.
inline Relation tw_hx_same(bool hplus, int tau) {
  using namespace dsl;
  auto H = [&](int var) { return hplus ? hp(0, var) : hm(0, var); };
  auto X = [&](int var) { return tau == 1 ? xp(0, var) : xm(0, var); };
  Relation r;
  if (tau == 1) {
    r.lhs = {term({s(1)}, {1, 0}, {H(0), X(1)}), term({s(-1, 1, 1)}, {0, 1}, {H(0), X(1)})};
    r.rhs = {term({s(1, 1, 1)}, {1, 0}, {X(1), H(0)}), term({s(-1)}, {0, 1}, {X(1), H(0)})};
  } else {
    r.lhs = {term({s(1, 1, 1)}, {1, 0}, {H(0), X(1)}), term({s(-1)}, {0, 1}, {H(0), X(1)})};
    r.rhs = {term({s(1)}, {1, 0}, {X(1), H(0)}), term({s(-1, 1, 1)}, {0, 1}, {X(1), H(0)})};
  }
  return r;
}

/// (t z - w)^tau h^e_{i+1}(z) x^tau_i(w) = s (z - q w)^tau x^tau_i(w) h^e_{i+1}(z).
inline Relation tw_hx_adjacent(bool hplus, int tau) {
  using namespace dsl;
  auto H = [&](int var) { return hplus ? hp(1, var) : hm(1, var); };
  auto X = [&](int var) { return tau == 1 ? xp(0, var) : xm(0, var); };
  Relation r;
  if (tau == 1) {
    r.lhs = {term({s(1, 0, 1)}, {1, 0}, {H(0), X(1)}), term({s(-1)}, {0, 1}, {H(0), X(1)})};
    r.rhs = {term({s(1)}, {1, 0}, {X(1), H(0)}), term({s(-1, 1, 0)}, {0, 1}, {X(1), H(0)})};
  } else {
    r.lhs = {term({s(1)}, {1, 0}, {H(0), X(1)}), term({s(-1, 1, 0)}, {0, 1}, {H(0), X(1)})};
    r.rhs = {term({s(1, 0, 1)}, {1, 0}, {X(1), H(0)}), term({s(-1)}, {0, 1}, {X(1), H(0)})};
  }
  return r;
}

/// (t z^e - w^e) x^e_{i+1}(z) x^e_i(w) = s (z^e - q w^e) x^e_i(w) x^e_{i+1}(z).
inline Relation tw_xx_adjacent(bool plus) {
  using namespace dsl;
  int sh = plus ? 1 : -1;
  auto X = [&](int dk, int var) { return plus ? xp(dk, var) : xm(dk, var); };
  Relation r;
  r.lhs = {term({s(1, 0, 1)}, {sh, 0}, {X(1, 0), X(0, 1)}),
           term({s(-1)}, {0, sh}, {X(1, 0), X(0, 1)})};
  r.rhs = {term({s(1)}, {sh, 0}, {X(0, 1), X(1, 0)}),
           term({s(-1, 1, 0)}, {0, sh}, {X(0, 1), X(1, 0)})};
  return r;
}

/// Variant with the two polynomial factors exchanged between the sides:
/// (z - q w) x-_{i+1}(z) x-_i(w) = s (t z - w) x-_i(w) x-_{i+1}(z).
inline Relation tw_xx_adjacent_minus_exchanged() {
  using namespace dsl;
  Relation r;
  r.lhs = {term({s(1)}, {1, 0}, {xm(1, 0), xm(0, 1)}),
           term({s(-1, 1, 0)}, {0, 1}, {xm(1, 0), xm(0, 1)})};
  r.rhs = {term({s(1, 0, 1)}, {1, 0}, {xm(0, 1), xm(1, 0)}),
           term({s(-1)}, {0, 1}, {xm(0, 1), xm(1, 0)})};
  return r;
}

inline std::vector<FamilySpec> twisted_families(int n) {
  std::vector<FamilySpec> fams;
  {
    FamilySpec f{"hx-same", {}};
    Candidate c{"standard", {}};
    for (bool hplus : {true, false})
      for (int tau : {1, -1}) c.rels.push_back(tw_hx_same(hplus, tau));
    f.candidates.push_back(std::move(c));
    fams.push_back(std::move(f));
  }
  {
    FamilySpec f{"hx-adjacent", {}};
    Candidate c{"standard", {}};
    for (bool hplus : {true, false})
      for (int tau : {1, -1}) c.rels.push_back(tw_hx_adjacent(hplus, tau));
    f.candidates.push_back(std::move(c));
    fams.push_back(std::move(f));
  }
  fams.push_back({"xx-same", {{"standard", {xx_same_color(true), xx_same_color(false)}}}});
  fams.push_back({"xx-adjacent-plus", {{"standard", {tw_xx_adjacent(true)}}}});
  fams.push_back({"xx-adjacent-minus",
                  {{"standard", {tw_xx_adjacent(false)}},
                   {"factors-exchanged", {tw_xx_adjacent_minus_exchanged()}}}});
  {
    FamilySpec f{"xx-distant", {}};
    Candidate c{"standard", {}};
    for (int d = 2; d <= n - 2; ++d) {
      c.rels.push_back(xx_distant(true, d));
      c.rels.push_back(xx_distant(false, d));
    }
    f.candidates.push_back(std::move(c));
    fams.push_back(std::move(f));
  }
  // The twisted Serre relation carries -(q^tau t^tau + 1) in the middle; the
  // serre() builder keeps the middle on the RHS, so that form is sigma = -1.
  fams.push_back({"serre",
                  {{"standard",
                    {serre(true, 1, false), serre(true, -1, false), serre(false, 1, false),
                     serre(false, -1, false)}},
                   {"outer-swapped",
                    {serre(true, 1, true), serre(true, -1, true), serre(false, 1, true),
                     serre(false, -1, true)}},
                   {"outer-swapped-plus-only",
                    {serre(true, 1, true), serre(true, -1, true), serre(false, 1, false),
                     serre(false, -1, false)}}}});
  return fams;
}

}  // namespace cqv::rel
