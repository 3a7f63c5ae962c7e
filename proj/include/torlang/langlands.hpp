#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "torlang/extension.hpp"

namespace torlang {

// Gamma sits in the ambient group as a normal subgroup; the Frobenius element
// generates the ambient group modulo Gamma and acts on Gamma by conjugation.
struct AmbientDatum {
  FiniteGroup group;
  std::vector<int> embedding;
  int frobenius = 0;
};

// The torus is Ind_H^Gamma of the lattice `module` over H = members.
struct InducedFrom {
  std::vector<int> members;
  GModule module;
};

struct TorusDatum {
  std::string name;
  GModule cochar;
  std::optional<AmbientDatum> ambient;
  std::optional<IntMatrix> frobenius;
  std::optional<InducedFrom> induced_from;

  const FiniteGroup& gamma() const { return cochar.group(); }
  std::size_t rank() const { return cochar.dim(); }

  // gamma |-> phi gamma phi^-1, in Gamma's labels.
  std::vector<int> frobenius_on_gamma() const {
    if (!ambient) throw Error("no-ambient", "torus " + name + " has no ambient data");
    const FiniteGroup& big = ambient->group;
    std::vector<int> out;
    for (int g = 0; g < gamma().order(); ++g) {
      int c = big.mul(big.mul(ambient->frobenius, ambient->embedding[static_cast<std::size_t>(g)]), big.inv(ambient->frobenius));
      out.push_back(embedded_label(c));
    }
    return out;
  }

  void validate() const {
    const FiniteGroup& G = gamma();
    const std::size_t r = rank();
    if (cochar.module().relations().cols() != 0) throw Error("bad-torus", "cocharacter lattice must be free");
    for (const auto& a : cochar.actions()) {
      Int d = a.determinant();
      if (d != 1 && d != -1) throw Error("bad-torus", "action matrix is not in GL(r, Z)");
    }
    if (ambient.has_value() != frobenius.has_value())
      throw Error("bad-torus", "ambient group and Frobenius matrix must be given together");
    if (!ambient) return;
    const FiniteGroup& big = ambient->group;
    const auto& emb = ambient->embedding;
    if (emb.size() != static_cast<std::size_t>(G.order())) throw Error("bad-torus", "embedding has the wrong length");
    std::vector<int> image(emb);
    for (int x : emb)
      if (x < 0 || x >= big.order()) throw Error("bad-torus", "embedding label out of range");
    for (int a = 0; a < G.order(); ++a)
      for (int b = 0; b < G.order(); ++b)
        if (emb[static_cast<std::size_t>(G.mul(a, b))] != big.mul(emb[static_cast<std::size_t>(a)], emb[static_cast<std::size_t>(b)]))
          throw Error("bad-torus", "embedding is not a homomorphism");
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) throw Error("bad-torus", "embedding is not injective");
    if (!SubgroupDatum(big, image).is_normal()) throw Error("bad-torus", "Gamma is not normal in the ambient group");
    const int phi = ambient->frobenius;
    if (phi < 0 || phi >= big.order()) throw Error("bad-torus", "Frobenius element out of range");
    image.push_back(phi);
    if (generated_members(big, image).size() != static_cast<std::size_t>(big.order()))
      throw Error("bad-torus", "Frobenius does not generate the ambient group modulo Gamma");

    const IntMatrix& F = *frobenius;
    if (F.rows() != r || F.cols() != r) throw Error("bad-frobenius", "Frobenius matrix has the wrong size");
    Int d = F.determinant();
    if (d != 1 && d != -1) throw Error("bad-frobenius", "Frobenius matrix is not invertible over Z");
    auto beta = frobenius_on_gamma();
    for (int g = 0; g < G.order(); ++g)
      if (!(F * cochar.action(g) == cochar.action(beta[static_cast<std::size_t>(g)]) * F))
        throw Error("bad-frobenius", "Frobenius is not compatible with conjugation on Gamma");
    int f = 1, p = phi;
    while (!contains(emb, p)) {
      p = big.mul(p, phi);
      ++f;
    }
    IntMatrix Ff = IntMatrix::identity(r);
    for (int k = 0; k < f; ++k) Ff = Ff * F;
    if (!(Ff == cochar.action(embedded_label(p))))
      throw Error("bad-frobenius", "a power of Frobenius disagrees with the action of the element it lands on");
  }

 private:
  static bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }
  int embedded_label(int x) const {
    const auto& emb = ambient->embedding;
    auto it = std::find(emb.begin(), emb.end(), x);
    if (it == emb.end()) throw Error("bad-torus", "Gamma is not normal in the ambient group");
    return static_cast<int>(it - emb.begin());
  }
};

inline TorusDatum make_torus(std::string name, GModule cochar, std::optional<AmbientDatum> ambient = std::nullopt,
                             std::optional<IntMatrix> frobenius = std::nullopt,
                             std::optional<InducedFrom> induced_from = std::nullopt) {
  TorusDatum t{std::move(name), std::move(cochar), std::move(ambient), std::move(frobenius), std::move(induced_from)};
  t.validate();
  return t;
}

// The extension always carries a twist; the class formation report is recorded, not required.
struct ClassFormationDatum {
  std::string name;
  ExtensionGroup ext;
  ClassFormationReport report;
};

inline FrobeniusTwist identity_twist(const ExtensionGroup& e) {
  std::vector<int> g(static_cast<std::size_t>(e.base().order()));
  for (int x = 0; x < e.base().order(); ++x) g[static_cast<std::size_t>(x)] = x;
  return {g, IntMatrix::identity(e.kernel().dim()),
          std::vector<Vec>(static_cast<std::size_t>(e.base().order()), zero_vec(e.kernel().dim()))};
}

inline ClassFormationDatum make_formation(std::string name, const ExtensionGroup& e) {
  ExtensionGroup t = e.has_twist() ? e : ExtensionGroup(e.kernel(), e.cocycle_table(), identity_twist(e), e.offsets());
  ClassFormationReport rep = verify_class_formation(t);
  return {std::move(name), std::move(t), std::move(rep)};
}

// Raised when a finite-level duality needed by a construction fails; carries both groups.
class HypothesisFailed : public Error {
 public:
  HypothesisFailed(const std::string& message, FgAbelianGroup lhs, FgAbelianGroup rhs)
      : Error("hypothesis-failed", message + " (" + lhs.to_string() + " vs " + rhs.to_string() + ")"),
        lhs_(std::move(lhs)),
        rhs_(std::move(rhs)) {}
  const FgAbelianGroup& lhs() const { return lhs_; }
  const FgAbelianGroup& rhs() const { return rhs_; }

 private:
  FgAbelianGroup lhs_, rhs_;
};

// The endomorphism of a subgroup induced by an ambient matrix.
inline GroupHom restrict_endo(const GroupWithMap& sub, const IntMatrix& m) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < sub.group.generator_count(); ++j) {
    auto x = sub.map.preimage(sub.map.target().reduce(m * sub.map.matrix().column(j)));
    if (!x) throw Error("not-stable", "subgroup is not stable under the map");
    cols.push_back(*x);
  }
  return GroupHom(sub.group, sub.group, IntMatrix::from_columns(sub.group.generator_count(), cols));
}

inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  FgAbelianGroup z = FgAbelianGroup::free(m.rows());
  return inverse(GroupHom(z, z, m)).matrix();
}

struct Pi1Model {
  GModule tensor;
  GroupWithMap invariants;
  std::optional<GroupHom> frobenius;
  const FgAbelianGroup& group() const { return invariants.group; }
};

inline Pi1Model pi1_model(const TorusDatum& t, const ClassFormationDatum& f) {
  t.validate();
  if (!(f.ext.base() == t.gamma())) throw Error("group-mismatch", "torus and formation use different groups");
  GModule ten = tensor_module(t.cochar, f.ext.kernel());
  GroupWithMap inv = invariants(ten);
  std::optional<GroupHom> fr;
  if (t.frobenius) {
    if (f.ext.twist().on_group != t.frobenius_on_gamma())
      throw Error("incompatible-data", "formation twist on Gamma differs from the torus Frobenius conjugation");
    fr = restrict_endo(inv, IntMatrix::kron(*t.frobenius, f.ext.twist().on_kernel));
  }
  return {std::move(ten), std::move(inv), std::move(fr)};
}

struct Correspondence {
  Pi1Model pi1;
  DualGroup dual;       // Hom(pi1, Z/n)
  GModule tdual;        // dual torus points over Z/n
  HomModule hom;        // Hom(A, dual torus points)
  GroupWithMap coinv;   // Hom(A, dual torus points)_Gamma
  GroupHom adjunction;  // coinv -> dual
  H1Group h1;
  GroupHom cor;         // coinv -> H^1
  GroupHom phi;         // dual -> H^1
  GroupHom phi_inverse;
  bool coinvariant = false;
  bool additive = false;
};

inline Vec h1_element(const H1Group& h, const CocycleValues& c) {
  auto k = h.classify(c);
  if (!k) throw Error("not-a-cocycle", "values do not define a cocycle");
  return h.group().from_canonical(*k);
}

inline CocycleValues h1_values(const H1Group& h, const Vec& x) { return h.lift(h.group().to_canonical(x)); }

inline Correspondence correspondence_phi(const TorusDatum& t, const ClassFormationDatum& f, const Int& n) {
  Pi1Model pi = pi1_model(t, f);
  DualGroup dual(pi.group(), n);
  GModule td = dual_torus_points(t.cochar, n);
  const GModule& A = f.ext.kernel();
  const std::size_t na = A.dim();
  HomModule hom = hom_module(A, td);
  GroupWithMap coinv = coinvariants(hom.module);
  const std::size_t k = hom.module.dim();

  std::vector<Vec> rcols;
  for (std::size_t j = 0; j < k; ++j) {
    IntMatrix alpha = hom.as_matrix(unit_vec(k, j));
    Vec vals;
    for (std::size_t i = 0; i < pi.group().generator_count(); ++i) {
      Vec v = pi.invariants.map.matrix().column(i);
      Int s = 0;
      for (std::size_t x = 0; x < t.rank(); ++x)
        for (std::size_t a = 0; a < na; ++a) s += v[x * na + a] * alpha(x, a);
      vals.push_back(mod_floor(s, n));
    }
    rcols.push_back(dual.coords_from_values(vals));
  }
  GroupHom r(coinv.group, dual.group(), IntMatrix::from_columns(dual.group().generator_count(), rcols));
  if (!is_isomorphism(r))
    throw HypothesisFailed("Hom(pi1, Z/" + n.get_str() + ") differs from Hom(A, dual torus)_Gamma", dual.group(),
                           coinv.group);

  H1Group h1(f.ext, td, std::nullopt);
  std::vector<Vec> hom_cols;
  for (std::size_t j = 0; j < k; ++j)
    hom_cols.push_back(h1_element(h1, cor_hom_level(f.ext, td, hom.as_matrix(unit_vec(k, j)))));
  GroupHom cor_full(hom.module.module(), h1.group(), IntMatrix::from_columns(h1.group().generator_count(), hom_cols));

  bool coinvariant = true;
  for (int g = 0; g < t.gamma().order(); ++g)
    for (std::size_t j = 0; j < k; ++j) {
      Vec moved = h1_element(h1, cor_hom_level(f.ext, td, hom.as_matrix(hom.module.act(g, unit_vec(k, j)))));
      if (!h1.group().equal(moved, hom_cols[j])) coinvariant = false;
    }
  bool additive = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Vec sum = h1_element(h1, cor_hom_level(f.ext, td, hom.as_matrix(add_vec(unit_vec(k, i), unit_vec(k, j)))));
      if (!h1.group().equal(sum, add_vec(hom_cols[i], hom_cols[j]))) additive = false;
    }
  if (!coinvariant) throw Error("not-coinvariant", "corestriction is not constant on Gamma-orbits");
  GroupHom cor(coinv.group, h1.group(), cor_full.matrix());
  GroupHom phi = compose(cor, inverse(r));
  if (!is_isomorphism(phi))
    throw HypothesisFailed("corestriction is not bijective", dual.group(), h1.group());
  GroupHom phi_inv = inverse(phi);
  if (!compose(phi_inv, phi).equals(GroupHom::identity(dual.group())) ||
      !compose(phi, phi_inv).equals(GroupHom::identity(h1.group())))
    throw Error("internal", "inverse witness failed");
  return {std::move(pi), std::move(dual), std::move(td), std::move(hom), std::move(coinv), std::move(r),
          std::move(h1), std::move(cor), std::move(phi), std::move(phi_inv), coinvariant, additive};
}

// A tower of formations: Gamma' -> Gamma with kernel N, and A embedded in the preimage of N in E'.
struct TowerData {
  std::vector<int> quotient;                          // Gamma' -> Gamma
  std::vector<ExtensionGroup::Element> inclusion;     // per generator of A, an element of E' over N
  IntMatrix transfer_map;                             // A -> A'
};

struct TransferCompatReport {
  IntMatrix computed;  // the transfer E'_N -> A' on the included generators
  bool transfer_matches = false;
  bool pi1_iso = false;
  bool pass() const { return transfer_matches && pi1_iso; }
};

inline TransferCompatReport transfer_compat_check(const TorusDatum& t, const ClassFormationDatum& small,
                                                  const ClassFormationDatum& large, const TowerData& tower) {
  t.validate();
  const FiniteGroup &G = small.ext.base(), &Gp = large.ext.base();
  const GModule &A = small.ext.kernel(), &Ap = large.ext.kernel();
  if (!(t.gamma() == G)) throw Error("group-mismatch", "torus and small formation use different groups");
  try {
    check_quotient_map(Gp, G, tower.quotient);
  } catch (const Error& e) {
    throw Error("incompatible-data", e.what());
  }
  if (tower.inclusion.size() != A.dim()) throw Error("incompatible-data", "one included element per generator of A is needed");
  if (tower.transfer_map.rows() != Ap.dim() || tower.transfer_map.cols() != A.dim())
    throw Error("incompatible-data", "transfer map has the wrong shape");
  std::vector<int> nmem;
  for (int x = 0; x < Gp.order(); ++x)
    if (tower.quotient[static_cast<std::size_t>(x)] == 0) nmem.push_back(x);
  SubgroupDatum N(Gp, nmem);
  ExtensionGroup en = large.ext.restrict_to(N);
  SubgroupDatum one = SubgroupDatum::trivial(N.as_group());
  std::vector<Vec> cols;
  for (const auto& x : tower.inclusion) {
    if (x.g < 0 || x.g >= Gp.order() || !N.contains(x.g)) throw Error("incompatible-data", "included element does not lie over N");
    cols.push_back(transfer(en, one, {x.a, N.to_sub(x.g)}));
  }
  IntMatrix v = IntMatrix::from_columns(Ap.dim(), cols);
  TransferCompatReport rep{v};
  GroupHom vh = [&] {
    try {
      return GroupHom(A.module(), Ap.module(), v);
    } catch (const Error& e) {
      throw Error("incompatible-data", std::string("inclusion is not a homomorphism on A: ") + e.what());
    }
  }();
  GroupHom th = [&] {
    try {
      return GroupHom(A.module(), Ap.module(), tower.transfer_map);
    } catch (const Error& e) {
      throw Error("incompatible-data", std::string("transfer map is not a homomorphism: ") + e.what());
    }
  }();
  for (int x = 0; x < Gp.order(); ++x) {
    IntMatrix l = tower.transfer_map * A.action(tower.quotient[static_cast<std::size_t>(x)]);
    IntMatrix r = Ap.action(x) * tower.transfer_map;
    if (!GroupHom(A.module(), Ap.module(), l).equals(GroupHom(A.module(), Ap.module(), r)))
      throw Error("incompatible-data", "transfer map is not equivariant");
  }
  rep.transfer_matches = vh.equals(th);

  std::vector<IntMatrix> infl;
  for (int x = 0; x < Gp.order(); ++x) infl.push_back(t.cochar.action(tower.quotient[static_cast<std::size_t>(x)]));
  GModule xp(Gp, t.cochar.module(), std::move(infl));
  GroupWithMap lo = invariants(tensor_module(t.cochar, A)), hi = invariants(tensor_module(xp, Ap));
  IntMatrix m = IntMatrix::kron(IntMatrix::identity(t.rank()), tower.transfer_map);
  std::vector<Vec> pcols;
  for (std::size_t j = 0; j < lo.group.generator_count(); ++j) {
    auto y = hi.map.preimage(hi.map.target().reduce(m * lo.map.matrix().column(j)));
    if (!y) return rep;
    pcols.push_back(*y);
  }
  rep.pi1_iso = is_isomorphism(GroupHom(lo.group, hi.group, IntMatrix::from_columns(hi.group.generator_count(), pcols)));
  return rep;
}

struct FunctorialityReport {
  bool pi1_lands = false;
  bool frobenius_commutes = true;
  bool phi_checked = false;
  bool phi_commutes = true;
  bool pass() const { return pi1_lands && frobenius_commutes && phi_commutes; }
};

// The map on H^1 induced by a coefficient map given on dual torus points.
inline GroupHom h1_coefficient_map(const H1Group& src, const H1Group& tgt, const IntMatrix& m) {
  std::vector<Vec> cols;
  auto ap = [&](const Vec& v) { return tgt.module().module().reduce(m * v); };
  for (std::size_t j = 0; j < src.group().generator_count(); ++j) {
    CocycleValues c = h1_values(src, unit_vec(src.group().generator_count(), j)), d;
    for (const auto& v : c.on_kernel) d.on_kernel.push_back(ap(v));
    for (const auto& v : c.on_lifts) d.on_lifts.push_back(ap(v));
    d.on_frobenius = ap(c.on_frobenius);
    cols.push_back(h1_element(tgt, d));
  }
  return GroupHom(src.group(), tgt.group(), IntMatrix::from_columns(tgt.group().generator_count(), cols));
}

inline FunctorialityReport functoriality_check(const IntMatrix& fm, const TorusDatum& t1, const TorusDatum& t2,
                                               const ClassFormationDatum& f, const Int& n = 4) {
  t1.validate();
  t2.validate();
  if (!(t1.gamma() == t2.gamma())) throw Error("group-mismatch", "tori use different groups");
  if (fm.rows() != t2.rank() || fm.cols() != t1.rank()) throw Error("not-equivariant", "map has the wrong shape");
  if (!is_equivariant(t1.cochar, t2.cochar, fm)) throw Error("not-equivariant", "map does not commute with Gamma");
  if (t1.frobenius && t2.frobenius && !(fm * *t1.frobenius == *t2.frobenius * fm))
    throw Error("not-equivariant", "map does not commute with Frobenius");
  Pi1Model p1 = pi1_model(t1, f), p2 = pi1_model(t2, f);
  FunctorialityReport rep;
  IntMatrix m = IntMatrix::kron(fm, IntMatrix::identity(f.ext.kernel().dim()));
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < p1.group().generator_count(); ++j) {
    auto y = p2.invariants.map.preimage(p2.invariants.map.target().reduce(m * p1.invariants.map.matrix().column(j)));
    if (!y) return rep;
    cols.push_back(*y);
  }
  rep.pi1_lands = true;
  GroupHom fp(p1.group(), p2.group(), IntMatrix::from_columns(p2.group().generator_count(), cols));
  if (p1.frobenius && p2.frobenius)
    rep.frobenius_commutes = compose(*p2.frobenius, fp).equals(compose(fp, *p1.frobenius));
  try {
    Correspondence c1 = correspondence_phi(t1, f, n), c2 = correspondence_phi(t2, f, n);
    GroupHom df = dual_map(fp, c2.dual, c1.dual);
    GroupHom hf = h1_coefficient_map(c2.h1, c1.h1, fm.transpose());
    rep.phi_checked = true;
    rep.phi_commutes = compose(c1.phi, df).equals(compose(hf, c2.phi));
  } catch (const HypothesisFailed&) {
  }
  return rep;
}

struct ShapiroReport {
  GroupHom projection;  // (X (x) A)^Gamma -> (Y (x) A|_H)^H
  bool pi1_iso = false;
  FgAbelianGroup h1_gamma, h1_sub;
  bool h1_iso = false;
  bool pass() const { return pi1_iso && h1_iso; }
};

inline ShapiroReport shapiro_check(const TorusDatum& t, const ClassFormationDatum& f, const Int& n = 2) {
  t.validate();
  if (!t.induced_from) throw Error("not-induced", "torus " + t.name + " records no inducing subgroup");
  SubgroupDatum h(t.gamma(), t.induced_from->members);
  const GModule& y = t.induced_from->module;
  GModule ind = induce(h, y);
  if (ind.dim() != t.rank() || ind.actions() != t.cochar.actions())
    throw Error("not-induced", "cocharacter lattice is not the recorded induced module");
  if (!(f.ext.base() == t.gamma())) throw Error("group-mismatch", "torus and formation use different groups");
  const GModule& A = f.ext.kernel();
  const std::size_t na = A.dim(), top = y.dim() * na;
  GroupWithMap gx = invariants(tensor_module(t.cochar, A));
  GroupWithMap gy = invariants(tensor_module(y, restrict_module(A, h)));
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < gx.group.generator_count(); ++j) {
    Vec v = gx.map.matrix().column(j);
    v.resize(top);
    auto p = gy.map.preimage(v);
    if (!p) throw Error("internal", "projection of an invariant is not invariant");
    cols.push_back(*p);
  }
  GroupHom proj(gx.group, gy.group, IntMatrix::from_columns(gy.group.generator_count(), cols));
  H1Group hg(f.ext, dual_torus_points(t.cochar, n), std::nullopt);
  H1Group hh(f.ext.restrict_to(h), dual_torus_points(y, n), std::nullopt);
  bool iso = is_isomorphism(proj);
  return {std::move(proj), iso, hg.group(), hh.group(), hg.group().isomorphic(hh.group())};
}

struct KottwitzTarget {
  GroupWithMap coinvariants;  // X -> X_Gamma
  GroupHom frobenius;         // on X_Gamma
  GroupWithMap fixed;         // (X_Gamma)^Fr -> X_Gamma
  const FgAbelianGroup& target() const { return fixed.group; }
};

inline KottwitzTarget kottwitz_target(const TorusDatum& t) {
  t.validate();
  if (!t.ambient) throw Error("no-ambient", "torus " + t.name + " has no ambient data");
  GroupWithMap co = coinvariants(t.cochar);
  GroupHom fr(co.group, co.group, *t.frobenius);
  GroupWithMap fixed = kernel(minus_identity(fr));
  return {std::move(co), std::move(fr), std::move(fixed)};
}

// 0 -> Hom(Y, Z/n) -> Hom(T_O + Y, Z/n) -> Hom(T_O, Z/n) -> 0 for the split T(K)-model T_O + Y.
struct DualSequenceReport {
  FgAbelianGroup t_o, y, t_k;
  DualGroup dual_y, dual_k, dual_o;
  std::vector<GroupHom> sequence;
  ExactnessReport exactness;
};

inline DualSequenceReport split_dual_sequence(const FgAbelianGroup& t_o, const FgAbelianGroup& y, const Int& n) {
  if (n < 2) throw Error("bad-modulus", "modulus must be at least 2");
  FgAbelianGroup tk = direct_sum(t_o, y);
  const std::size_t a = t_o.generator_count(), b = y.generator_count();
  IntMatrix i1(a + b, a), p2(b, a + b);
  for (std::size_t i = 0; i < a; ++i) i1(i, i) = 1;
  for (std::size_t i = 0; i < b; ++i) p2(i, a + i) = 1;
  DualGroup dy(y, n), dk(tk, n), dd(t_o, n);
  FgAbelianGroup zero = FgAbelianGroup::free(0);
  std::vector<GroupHom> seq{GroupHom::zero(zero, dy.group()), dual_map(GroupHom(tk, y, p2), dy, dk),
                            dual_map(GroupHom(t_o, tk, i1), dk, dd), GroupHom::zero(dd.group(), zero)};
  ExactnessReport ex = is_exact(seq);
  return {t_o, y, tk, std::move(dy), std::move(dk), std::move(dd), std::move(seq), std::move(ex)};
}

inline DualSequenceReport kottwitz_dual_sequence(const TorusDatum& t, const Int& n) {
  KottwitzTarget kt = kottwitz_target(t);
  GroupWithMap inv = invariants(t.cochar);
  GroupWithMap t_o = cokernel(minus_identity(restrict_endo(inv, *t.frobenius)));
  return split_dual_sequence(t_o.group, kt.target(), n);
}

struct H1ZReport {
  DualGroup lhs;              // Hom((X_Gamma)^Fr, Z/n)
  GModule tdual;
  IntMatrix tdual_frobenius;  // (F^-1)^T
  GroupWithMap invariants;    // dual torus points fixed by Gamma
  GroupWithMap rhs;           // invariants / (Fr - 1)
  std::optional<GroupHom> restriction;  // rhs -> lhs
  bool bijective = false;
};

inline H1ZReport h1_Z_fixedpoints(const TorusDatum& t, const Int& n) {
  KottwitzTarget kt = kottwitz_target(t);
  DualGroup lhs(kt.target(), n);
  GModule td = dual_torus_points(t.cochar, n);
  IntMatrix ft = unimodular_inverse(*t.frobenius).transpose();
  GroupWithMap inv = invariants(td);
  GroupWithMap rhs = cokernel(minus_identity(restrict_endo(inv, ft)));
  std::optional<GroupHom> res;
  try {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < inv.group.generator_count(); ++j) {
      Vec chi = inv.map.matrix().column(j);
      Vec vals;
      for (std::size_t i = 0; i < kt.target().generator_count(); ++i) {
        Vec yv = kt.fixed.map.matrix().column(i);
        Int s = 0;
        for (std::size_t k = 0; k < chi.size(); ++k) s += chi[k] * yv[k];
        vals.push_back(mod_floor(s, n));
      }
      cols.push_back(lhs.coords_from_values(vals));
    }
    res = GroupHom(rhs.group, lhs.group(), IntMatrix::from_columns(lhs.group().generator_count(), cols));
  } catch (const Error&) {
  }
  bool bij = res && is_isomorphism(*res);
  return {std::move(lhs), std::move(td), std::move(ft), std::move(inv), std::move(rhs), std::move(res), bij};
}

struct DiagramCell {
  std::string name;
  std::string status;  // pass | fail | hypothesis-failed
  std::string detail;
};

struct DiagramReport {
  std::vector<DiagramCell> cells;
  const DiagramCell& cell(const std::string& name) const {
    for (const auto& c : cells)
      if (c.name == name) return c;
    throw Error("unknown-cell", name);
  }
  bool pass() const {
    return std::all_of(cells.begin(), cells.end(), [](const DiagramCell& c) { return c.status == "pass"; });
  }
  bool rows_and_squares_pass() const {
    for (const char* n : {"top-row-exact", "bottom-row-exact", "left-square", "right-square"})
      if (cell(n).status != "pass") return false;
    return true;
  }
};

inline DiagramReport main_diagram_check(const TorusDatum& t, const ClassFormationDatum& f, const Int& n) {
  t.validate();
  if (!t.ambient) throw Error("no-ambient", "torus " + t.name + " has no ambient data");
  Pi1Model pi = pi1_model(t, f);
  DiagramReport rep;
  auto put = [&](const std::string& name, const std::string& status, const std::string& detail = "") {
    rep.cells.push_back({name, status, detail});
  };
  auto put_bool = [&](const std::string& name, bool ok, const std::string& detail = "") {
    put(name, ok ? "pass" : "fail", detail);
  };

  GroupWithMap t_o = cokernel(minus_identity(*pi.frobenius));
  KottwitzTarget kt = kottwitz_target(t);
  DualSequenceReport top = split_dual_sequence(t_o.group, kt.target(), n);
  put_bool("top-row-exact", top.exactness.exact, top.exactness.diagnostic);

  H1ZReport z = h1_Z_fixedpoints(t, n);
  const GModule& td = z.tdual;
  H1Group hw(f.ext, td, z.tdual_frobenius);
  H1Group hg(f.ext, td, std::nullopt);
  const std::size_t na = f.ext.kernel().dim(), nd = td.dim();
  const int g = f.ext.base().order();
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < z.rhs.group.generator_count(); ++j) {
    CocycleValues c{std::vector<Vec>(na, zero_vec(nd)), std::vector<Vec>(static_cast<std::size_t>(g), zero_vec(nd)),
                    z.invariants.map.matrix().column(j)};
    cols.push_back(h1_element(hw, c));
  }
  GroupHom inf(z.rhs.group, hw.group(), IntMatrix::from_columns(hw.group().generator_count(), cols));
  cols.clear();
  for (std::size_t j = 0; j < hw.group().generator_count(); ++j) {
    CocycleValues c = h1_values(hw, unit_vec(hw.group().generator_count(), j));
    c.on_frobenius = zero_vec(nd);
    cols.push_back(h1_element(hg, c));
  }
  GroupHom res(hw.group(), hg.group(), IntMatrix::from_columns(hg.group().generator_count(), cols));
  GroupWithMap fixed = kernel(minus_identity(hg.frobenius_action(z.tdual_frobenius)));
  std::optional<GroupHom> res_fixed;
  try {
    res_fixed = factor_through(res, fixed.map);
  } catch (const Error&) {
  }
  if (res_fixed) {
    FgAbelianGroup zero = FgAbelianGroup::free(0);
    ExactnessReport ex = is_exact({GroupHom::zero(zero, z.rhs.group), inf, *res_fixed, GroupHom::zero(fixed.group, zero)});
    put_bool("bottom-row-exact", ex.exact, ex.diagnostic);
  } else {
    put("bottom-row-exact", "fail", "restriction does not land in the Frobenius-fixed part");
  }

  std::optional<GroupHom> v1;
  std::string v1_note;
  if (z.bijective) {
    v1 = inverse(*z.restriction);
  } else if (top.dual_y.group().is_trivial()) {
    v1 = GroupHom::zero(top.dual_y.group(), z.rhs.group);
  } else {
    v1_note = "Hom((X_Gamma)^Fr, Z/n) and the Frobenius coinvariants of the fixed dual points are not identified";
  }

  std::optional<GroupHom> v3;
  std::string v3_note;
  try {
    Correspondence c = correspondence_phi(t, f, n);
    bool lands = true;
    std::vector<Vec> vc;
    for (std::size_t k = 0; k < top.dual_o.group().generator_count(); ++k) {
      Vec vals = top.dual_o.values_on_generators(unit_vec(top.dual_o.group().generator_count(), k));
      Vec x = c.phi.apply(c.dual.coords_from_values(vals));
      auto y = fixed.map.preimage(x);
      if (!y) {
        lands = false;
        break;
      }
      vc.push_back(*y);
    }
    put_bool("phi-lands-in-fixed", lands);
    if (lands) v3 = GroupHom(top.dual_o.group(), fixed.group, IntMatrix::from_columns(fixed.group.generator_count(), vc));
    else v3_note = "phi leaves the Frobenius-fixed part";
  } catch (const HypothesisFailed& e) {
    put("phi-lands-in-fixed", "hypothesis-failed", e.what());
    v3_note = e.what();
  }

  std::optional<GroupHom> sigma;
  if (res_fixed) sigma = section_of(*res_fixed);
  std::optional<GroupHom> v2;
  std::string v2_note = !v1 ? v1_note : !v3 ? v3_note : !sigma ? "the bottom row does not split" : "";
  if (v1 && v3 && sigma) {
    const std::size_t a = top.t_o.generator_count();
    std::vector<Vec> vcols;
    for (std::size_t k = 0; k < top.dual_k.group().generator_count(); ++k) {
      Vec vals = top.dual_k.values_on_generators(unit_vec(top.dual_k.group().generator_count(), k));
      Vec psi = top.dual_o.coords_from_values(Vec(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(a)));
      Vec chi = top.dual_y.coords_from_values(Vec(vals.begin() + static_cast<std::ptrdiff_t>(a), vals.end()));
      vcols.push_back(hw.group().reduce(add_vec(sigma->apply(v3->apply(psi)), inf.apply(v1->apply(chi)))));
    }
    v2 = GroupHom(top.dual_k.group(), hw.group(), IntMatrix::from_columns(hw.group().generator_count(), vcols));
  }
  auto status_for = [&](bool ok) { return ok ? "pass" : "fail"; };
  auto missing = [&](const std::string& note) {
    return note.rfind("hypothesis-failed", 0) == 0 || note.find("not identified") != std::string::npos
               ? "hypothesis-failed"
               : "fail";
  };
  if (v2) {
    put("left-square", status_for(compose(*v2, top.sequence[1]).equals(compose(inf, *v1))));
    put("right-square", status_for(compose(*res_fixed, *v2).equals(compose(*v3, top.sequence[2]))));
  } else {
    put("left-square", missing(v2_note), v2_note);
    put("right-square", missing(v2_note), v2_note);
  }
  if (v1) put("v1-iso", status_for(is_isomorphism(*v1)), "Hom(Y, Z/n) vs " + z.rhs.group.to_string());
  else put("v1-iso", "hypothesis-failed", v1_note);
  if (v2) put("v2-iso", status_for(is_isomorphism(*v2)));
  else put("v2-iso", missing(v2_note), v2_note);
  if (v3) put("v3-iso", status_for(is_isomorphism(*v3)));
  else put("v3-iso", missing(v3_note), v3_note);
  return rep;
}

}  // namespace torlang
