#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torlang/gaction.hpp"

namespace torlang {

class FrobeniusModule {
 public:
  FrobeniusModule(FgAbelianGroup p, IntMatrix f) : p_(std::move(p)), f_(std::move(f)) {
    if (f_.rows() != p_.generator_count() || f_.cols() != p_.generator_count())
      throw Error("bad-frobenius", "Frobenius matrix has the wrong size");
    GroupHom h(p_, p_, f_);
    if (!is_isomorphism(h)) throw Error("bad-frobenius", "Frobenius is not an automorphism");
  }

  const FgAbelianGroup& group() const { return p_; }
  const IntMatrix& matrix() const { return f_; }
  GroupHom frobenius() const { return GroupHom(p_, p_, f_); }

  IntMatrix power(long n) const {
    IntMatrix m = IntMatrix::identity(p_.generator_count());
    for (long k = 0; k < n; ++k) m = m * f_;
    return m;
  }

 private:
  FgAbelianGroup p_;
  IntMatrix f_;
};

inline GroupHom power_minus_identity(const FrobeniusModule& p, long n) {
  if (n < 1) throw Error("bad-level", "level must be at least 1");
  return GroupHom(p.group(), p.group(), p.power(n) - IntMatrix::identity(p.group().generator_count()));
}

// P / (F^n - 1) P with the projection from P.
inline GroupWithMap level_points(const FrobeniusModule& p, long n) { return cokernel(power_minus_identity(p, n)); }

// ker(F^n - 1) with its inclusion into P.
inline GroupWithMap fixed_points(const FrobeniusModule& p, long n) { return kernel(power_minus_identity(p, n)); }

// The natural projection P/(F^n - 1) -> P/(F - 1).
inline GroupHom norm_tower_map(const FrobeniusModule& p, long n) {
  return GroupHom(level_points(p, n).group, level_points(p, 1).group, IntMatrix::identity(p.group().generator_count()));
}

// P/(F - 1) -> P/(F^n - 1) induced by F^s summed over s = 0..n-1.
inline GroupHom norm_lift(const FrobeniusModule& p, long n) {
  IntMatrix s(p.group().generator_count(), p.group().generator_count());
  for (long k = 0; k < n; ++k) s = s + p.power(k);
  return GroupHom(level_points(p, 1).group, level_points(p, n).group, s);
}

// F^s summed over s = 1..n, as an endomorphism of P.
inline GroupHom norm_sum(const FrobeniusModule& p, long n) {
  IntMatrix s(p.group().generator_count(), p.group().generator_count());
  for (long k = 1; k <= n; ++k) s = s + p.power(k);
  return GroupHom(p.group(), p.group(), s);
}

struct DualNormReport {
  FgAbelianGroup level1_dual;   // Hom(level_1, Z/m)
  FgAbelianGroup fixed_dual;    // F-fixed part of Hom(level_n, Z/m)
  GroupHom map;                 // Hom(level_1) -> Hom(level_n)
  bool lands_in_fixed = false;
  bool injective = false;
  std::size_t level1_count = 0, fixed_count = 0;
  bool pass() const { return lands_in_fixed && injective && level1_count == fixed_count; }
};

inline DualNormReport dual_norm_check(const FrobeniusModule& p, long n, const Int& m) {
  GroupWithMap l1 = level_points(p, 1), ln = level_points(p, n);
  DualGroup d1(l1.group, m), dn(ln.group, m);
  GroupHom nm = norm_tower_map(p, n);
  GroupHom pull = dual_map(nm, d1, dn);
  GroupHom fstar = dual_map(GroupHom(ln.group, ln.group, p.matrix()), dn, dn);
  GroupWithMap fixed = kernel(minus_identity(fstar));
  DualNormReport rep{d1.group(), fixed.group, pull};
  rep.lands_in_fixed = true;
  std::vector<Vec> images;
  for (const auto& chi : d1.characters()) {
    Vec y = pull.apply(chi);
    if (!dn.group().equal(fstar.apply(y), y)) rep.lands_in_fixed = false;
    images.push_back(y);
    ++rep.level1_count;
  }
  rep.injective = true;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (dn.group().equal(images[i], images[j])) rep.injective = false;
  for (const auto& chi : dn.characters())
    if (dn.group().equal(fstar.apply(chi), chi)) ++rep.fixed_count;
  return rep;
}

struct SheafFunctionCell {
  std::string name;
  bool pass = false;
};

struct SheafFunctionReport {
  std::vector<SheafFunctionCell> cells;
  bool pass() const {
    for (const auto& c : cells)
      if (!c.pass) return false;
    return true;
  }
};

// Pullbacks Psi_1, Psi_n of characters along P -> level points, the dual norm between them,
// and evaluation of characters through the tower.
inline SheafFunctionReport sheaf_function_diagram(const FrobeniusModule& p, long n, const Int& m) {
  GroupWithMap l1 = level_points(p, 1), ln = level_points(p, n);
  DualGroup d1(l1.group, m), dn(ln.group, m), dp(p.group(), m);
  GroupHom nm = norm_tower_map(p, n);
  GroupHom dnorm = dual_map(nm, d1, dn);
  GroupHom psi1 = dual_map(l1.map, d1, dp), psin = dual_map(ln.map, dn, dp);
  GroupHom fp = dual_map(p.frobenius(), dp, dp);
  GroupHom fpn = dual_map(GroupHom(p.group(), p.group(), p.power(n)), dp, dp);
  SheafFunctionReport rep;
  rep.cells.push_back({"psi-square", compose(psin, dnorm).equals(psi1)});
  GroupWithMap fixed1 = kernel(minus_identity(fp));
  bool psi1_onto_fixed = false;
  try {
    psi1_onto_fixed = is_isomorphism(factor_through(psi1, fixed1.map));
  } catch (const Error&) {
  }
  rep.cells.push_back({"psi1-identifies-fixed-characters", psi1_onto_fixed});
  bool psin_fixed = true;
  for (std::size_t j = 0; j < dn.group().generator_count(); ++j) {
    Vec y = psin.apply(unit_vec(dn.group().generator_count(), j));
    if (!dp.group().equal(fpn.apply(y), y)) psin_fixed = false;
  }
  rep.cells.push_back({"psin-lands-in-fixed-characters", psin_fixed});
  bool trace = true;
  std::vector<Vec> points;
  if (ln.group.is_finite() && ln.group.order() <= 4096) {
    points = ln.group.elements();
  } else {
    for (std::size_t j = 0; j < ln.group.generator_count(); ++j) points.push_back(unit_vec(ln.group.generator_count(), j));
  }
  for (const auto& chi : d1.characters())
    for (const auto& x : points)
      if (d1.evaluate(chi, nm.apply(x)) != dn.evaluate(dnorm.apply(chi), x)) trace = false;
  rep.cells.push_back({"trace-through-tower", trace});
  return rep;
}

class FiltrationDatum {
 public:
  // chain[i] lists generators of Q_i as elements of P; Q_0 contains Q_1 contains ...
  FiltrationDatum(FrobeniusModule base, std::vector<std::vector<Vec>> chain) : base_(std::move(base)), chain_(std::move(chain)) {
    const FgAbelianGroup& P = base_.group();
    for (const auto& q : chain_) {
      GroupWithMap s = subgroup_generated(P, q);
      subs_.push_back(s);
      for (const auto& x : q)
        if (!s.map.in_image(P.reduce(base_.matrix() * x))) throw Error("chain-not-stable", "a term of the chain is not F-stable");
    }
    for (std::size_t i = 0; i + 1 < subs_.size(); ++i)
      for (const auto& x : chain_[i + 1])
        if (!subs_[i].map.in_image(P.reduce(x))) throw Error("chain-not-stable", "chain is not descending");
  }

  const FrobeniusModule& base() const { return base_; }
  const std::vector<std::vector<Vec>>& chain() const { return chain_; }
  std::size_t length() const { return chain_.size(); }

 private:
  FrobeniusModule base_;
  std::vector<std::vector<Vec>> chain_;
  std::vector<GroupWithMap> subs_;
};

// Least i with chi (values on P's generators, mod m) vanishing on Q_i; nullopt means infinite.
inline std::optional<std::size_t> depth(const Vec& chi, const Int& m, const FiltrationDatum& filt) {
  const FgAbelianGroup& P = filt.base().group();
  DualGroup(P, m).coords_from_values(chi);
  for (std::size_t i = 0; i < filt.length(); ++i) {
    bool vanishes = true;
    for (const auto& x : filt.chain()[i]) {
      Int s = 0;
      for (std::size_t j = 0; j < chi.size(); ++j) s += chi[j] * x[j];
      if (mod_floor(s, m) != 0) vanishes = false;
    }
    if (vanishes) return i;
  }
  return std::nullopt;
}

struct DepthReport {
  std::size_t characters = 0, mismatches = 0;
  bool pass() const { return mismatches == 0; }
};

// For each character of level n: depth against the image filtration equals depth of its pullback to P.
inline DepthReport depth_preservation_check(const FrobeniusModule& p, const FiltrationDatum& filt, long n, const Int& m) {
  GroupWithMap ln = level_points(p, n);
  DualGroup dn(ln.group, m);
  DepthReport rep;
  for (const auto& chi : dn.characters()) {
    Vec down = dn.values_on_generators(chi);  // generators of level n are those of P
    std::optional<std::size_t> dd;
    for (std::size_t i = 0; i < filt.length() && !dd; ++i) {
      bool vanishes = true;
      for (const auto& x : filt.chain()[i]) vanishes &= dn.evaluate(chi, ln.map.apply(x)) == 0;
      if (vanishes) dd = i;
    }
    Vec up(p.group().generator_count());
    for (std::size_t j = 0; j < up.size(); ++j) up[j] = dn.evaluate(chi, ln.map.apply(unit_vec(up.size(), j)));
    std::optional<std::size_t> du = depth(up, m, filt);
    ++rep.characters;
    if (dd != du || up != down) ++rep.mismatches;
  }
  return rep;
}

}  // namespace torlang
