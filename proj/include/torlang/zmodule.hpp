#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torlang/matrix.hpp"
#include "torlang/snf.hpp"

namespace torlang {

inline std::string format_invariants(const Vec& inv) {
  if (inv.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (i) s += " + ";
    s += inv[i] == 0 ? "Z" : "Z/" + inv[i].get_str();
  }
  return s;
}

// Z^n modulo the span of the relation columns, with its invariant-factor form.
// Canonical coordinates: c = P x, reduced modulo the invariant factors; raw = Q c.
class FgAbelianGroup {
 public:
  FgAbelianGroup() : FgAbelianGroup(0, IntMatrix(0, 0)) {}

  FgAbelianGroup(std::size_t generators, IntMatrix relations) : n_(generators), rel_(std::move(relations)) {
    if (rel_.rows() != n_) throw Error("bad-presentation", "relation matrix must have one row per generator");
    SmithForm f = smith_normal_form(rel_);
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < n_; ++i) {
      Int d = f.diag(i);
      if (d != 1) {
        pos.push_back(i);
        inv_.push_back(d);
      }
    }
    p_ = f.u.select_rows(pos);
    q_ = f.u_inv.select_columns(pos);
  }

  static FgAbelianGroup free(std::size_t n) { return FgAbelianGroup(n, IntMatrix(n, 0)); }
  static FgAbelianGroup cyclic(const Int& d) { return from_invariants({d}); }
  static FgAbelianGroup from_invariants(const Vec& d) { return FgAbelianGroup(d.size(), IntMatrix::diagonal(d)); }

  std::size_t generator_count() const { return n_; }
  const IntMatrix& relations() const { return rel_; }
  const Vec& invariants() const { return inv_; }
  std::size_t canonical_count() const { return inv_.size(); }
  const IntMatrix& to_canonical_matrix() const { return p_; }
  const IntMatrix& from_canonical_matrix() const { return q_; }

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& d : inv_) r += d == 0;
    return r;
  }
  bool is_finite() const { return rank() == 0; }
  bool is_trivial() const { return inv_.empty(); }

  Int order() const {
    Int o = 1;
    for (const auto& d : inv_) o *= d;
    return o;
  }

  Int exponent() const {
    Int e = 1;
    for (const auto& d : inv_) e = lcm_int(e, d);
    return e;
  }

  Vec to_canonical(const Vec& x) const {
    check_len(x);
    Vec c = p_ * x;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c[i], inv_[i]);
    return c;
  }

  Vec from_canonical(const Vec& c) const {
    if (c.size() != inv_.size()) throw Error("bad-element", "canonical coordinate length mismatch");
    return q_ * c;
  }

  Vec reduce(const Vec& x) const { return from_canonical(to_canonical(x)); }
  bool is_zero(const Vec& x) const { return is_zero_vec(to_canonical(x)); }
  bool equal(const Vec& x, const Vec& y) const { return is_zero(sub_vec(x, y)); }

  Vec element_order_vector() const { return inv_; }

  Int element_order(const Vec& x) const {
    Vec c = to_canonical(x);
    Int o = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      if (inv_[i] == 0) return 0;
      o = lcm_int(o, inv_[i] / gcd_int(c[i], inv_[i]));
    }
    return o;
  }

  // Canonical coordinate vectors of every element; requires a finite group.
  std::vector<Vec> elements_canonical() const {
    if (!is_finite()) throw Error("module-not-finite", "cannot enumerate an infinite group");
    std::vector<Vec> out;
    Vec c(inv_.size(), Int(0));
    for (;;) {
      out.push_back(c);
      std::size_t i = 0;
      while (i < c.size()) {
        c[i] += 1;
        if (c[i] < inv_[i]) break;
        c[i] = 0;
        ++i;
      }
      if (i == c.size()) break;
    }
    return out;
  }

  std::vector<Vec> elements() const {
    std::vector<Vec> out;
    for (const auto& c : elements_canonical()) out.push_back(from_canonical(c));
    return out;
  }

  bool isomorphic(const FgAbelianGroup& o) const { return inv_ == o.inv_; }
  bool same_presentation(const FgAbelianGroup& o) const { return n_ == o.n_ && rel_ == o.rel_; }

  std::string to_string() const { return format_invariants(inv_); }

 private:
  void check_len(const Vec& x) const {
    if (x.size() != n_) throw Error("bad-element", "coordinate length mismatch");
  }

  std::size_t n_;
  IntMatrix rel_;
  Vec inv_;
  IntMatrix p_, q_;
};

inline FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  return FgAbelianGroup(a.generator_count() + b.generator_count(),
                        IntMatrix::block_diag({a.relations(), b.relations()}));
}

// Homomorphism given by its matrix on the chosen generators (target gens x source gens).
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FgAbelianGroup source, FgAbelianGroup target, IntMatrix matrix)
      : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)) {
    if (m_.rows() != tgt_.generator_count() || m_.cols() != src_.generator_count())
      throw Error("bad-hom", "matrix shape does not match source and target");
    IntMatrix img = m_ * src_.relations();
    for (std::size_t j = 0; j < img.cols(); ++j)
      if (!tgt_.is_zero(img.column(j)))
        throw Error("not-well-defined", "relation " + std::to_string(j) + " is not carried into the target relations");
  }

  static GroupHom identity(const FgAbelianGroup& g) {
    return GroupHom(g, g, IntMatrix::identity(g.generator_count()));
  }
  static GroupHom zero(const FgAbelianGroup& s, const FgAbelianGroup& t) {
    return GroupHom(s, t, IntMatrix(t.generator_count(), s.generator_count()));
  }

  const FgAbelianGroup& source() const { return src_; }
  const FgAbelianGroup& target() const { return tgt_; }
  const IntMatrix& matrix() const { return m_; }

  Vec apply(const Vec& x) const { return tgt_.reduce(m_ * x); }

  // Matrix between canonical coordinates (unreduced).
  IntMatrix canonical_matrix() const {
    return tgt_.to_canonical_matrix() * m_ * src_.from_canonical_matrix();
  }

  bool is_zero() const {
    for (std::size_t j = 0; j < m_.cols(); ++j)
      if (!tgt_.is_zero(m_.column(j))) return false;
    return true;
  }

  bool equals(const GroupHom& o) const {
    if (!src_.same_presentation(o.src_) || !tgt_.same_presentation(o.tgt_)) return false;
    return GroupHom(src_, tgt_, m_ - o.m_).is_zero();
  }

  // Some x with h(x) == y, if y lies in the image.
  std::optional<Vec> preimage(const Vec& y) const {
    IntMatrix c = canonical_matrix();
    IntMatrix a = IntMatrix::hstack(c, IntMatrix::diagonal(tgt_.invariants()));
    auto z = solve_integer(a, tgt_.to_canonical(y));
    if (!z) return std::nullopt;
    Vec head(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(src_.canonical_count()));
    return src_.from_canonical(head);
  }

  bool in_image(const Vec& y) const { return preimage(y).has_value(); }

 private:
  FgAbelianGroup src_, tgt_;
  IntMatrix m_;
};

inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!f.target().same_presentation(g.source())) throw Error("not-composable", "target and source differ");
  return GroupHom(f.source(), g.target(), g.matrix() * f.matrix());
}

// A group together with a structure map (inclusion or projection).
struct GroupWithMap {
  FgAbelianGroup group;
  GroupHom map;
};

// The subgroup of g generated by the given elements, with its inclusion.
inline GroupWithMap subgroup_generated(const FgAbelianGroup& g, const std::vector<Vec>& gens) {
  const std::size_t m = gens.size(), k = g.canonical_count();
  IntMatrix yc(k, m);
  for (std::size_t j = 0; j < m; ++j) {
    Vec c = g.to_canonical(gens[j]);
    for (std::size_t i = 0; i < k; ++i) yc(i, j) = c[i];
  }
  IntMatrix rel = kernel_mod(yc, g.invariants(), zero_vec(m));
  FgAbelianGroup sub(m, rel);
  IntMatrix incl = IntMatrix::from_columns(g.generator_count(), gens);
  return {sub, GroupHom(sub, g, incl)};
}

inline GroupWithMap kernel(const GroupHom& h) {
  const FgAbelianGroup& s = h.source();
  IntMatrix rel = kernel_mod(h.canonical_matrix(), h.target().invariants(), s.invariants());
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    Vec x = s.from_canonical(rel.column(j));
    if (!s.is_zero(x)) gens.push_back(x);
  }
  return subgroup_generated(s, gens);
}

inline GroupWithMap image(const GroupHom& h) {
  return subgroup_generated(h.target(), h.matrix().columns());
}

inline GroupWithMap cokernel(const GroupHom& h) {
  const FgAbelianGroup& t = h.target();
  FgAbelianGroup q(t.generator_count(), IntMatrix::hstack(t.relations(), h.matrix()));
  return {q, GroupHom(t, q, IntMatrix::identity(t.generator_count()))};
}

inline bool is_injective(const GroupHom& h) { return kernel(h).group.is_trivial(); }
inline bool is_surjective(const GroupHom& h) { return cokernel(h).group.is_trivial(); }
inline bool is_isomorphism(const GroupHom& h) { return is_injective(h) && is_surjective(h); }

// g modulo the image of an injective map into g.
inline GroupWithMap quotient(const FgAbelianGroup& g, const GroupHom& sub) {
  if (!sub.target().same_presentation(g)) throw Error("not-a-subgroup", "inclusion does not land in the given group");
  if (!is_injective(sub)) throw Error("not-a-subgroup", "supplied inclusion is not injective");
  return cokernel(sub);
}

inline GroupWithMap quotient(const FgAbelianGroup& g, const std::vector<Vec>& sub_gens) {
  for (const auto& x : sub_gens)
    if (x.size() != g.generator_count()) throw Error("not-a-subgroup", "generator is not an element of the group");
  return cokernel(GroupHom(FgAbelianGroup::free(sub_gens.size()), g,
                           IntMatrix::from_columns(g.generator_count(), sub_gens)));
}

inline GroupHom inverse(const GroupHom& h) {
  if (!is_isomorphism(h)) throw Error("not-invertible", "map is not an isomorphism");
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < h.target().generator_count(); ++j)
    cols.push_back(*h.preimage(unit_vec(h.target().generator_count(), j)));
  return GroupHom(h.target(), h.source(), IntMatrix::from_columns(h.source().generator_count(), cols));
}

// f - id for an endomorphism f.
inline GroupHom minus_identity(const GroupHom& f) {
  return GroupHom(f.source(), f.target(), f.matrix() - IntMatrix::identity(f.matrix().rows()));
}

// h as a map into the source of the injective map incl, when its image lies there.
inline GroupHom factor_through(const GroupHom& h, const GroupHom& incl) {
  if (!h.target().same_presentation(incl.target())) throw Error("not-composable", "maps have different targets");
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < h.source().generator_count(); ++j) {
    auto x = incl.preimage(h.matrix().column(j));
    if (!x) throw Error("not-a-subgroup", "image does not lie in the subgroup");
    cols.push_back(*x);
  }
  return GroupHom(h.source(), incl.source(), IntMatrix::from_columns(incl.source().generator_count(), cols));
}

// Some s with p s = id, if one exists.
inline std::optional<GroupHom> section_of(const GroupHom& p) {
  const FgAbelianGroup &b = p.source(), &c = p.target();
  const std::size_t nb = b.generator_count(), nc = c.generator_count();
  const IntMatrix &rb = b.relations(), &rc = c.relations();
  const std::size_t kb = rb.cols(), kc = rc.cols();
  // Unknowns: b_j (nc blocks of nb), y_j (nc blocks of kc), z_l (kc blocks of kb).
  const std::size_t ob = 0, oy = nc * nb, oz = oy + nc * kc, cols = oz + kc * kb;
  IntMatrix a(nc * nc + kc * nb, cols);
  Vec rhs(a.rows(), Int(0));
  for (std::size_t j = 0; j < nc; ++j)
    for (std::size_t r = 0; r < nc; ++r) {
      std::size_t row = j * nc + r;
      for (std::size_t k = 0; k < nb; ++k) a(row, ob + j * nb + k) = p.matrix()(r, k);
      for (std::size_t k = 0; k < kc; ++k) a(row, oy + j * kc + k) = -rc(r, k);
      rhs[row] = r == j ? 1 : 0;
    }
  for (std::size_t l = 0; l < kc; ++l)
    for (std::size_t r = 0; r < nb; ++r) {
      std::size_t row = nc * nc + l * nb + r;
      for (std::size_t j = 0; j < nc; ++j) a(row, ob + j * nb + r) = rc(j, l);
      for (std::size_t k = 0; k < kb; ++k) a(row, oz + l * kb + k) = -rb(r, k);
    }
  auto x = solve_integer(a, rhs);
  if (!x) return std::nullopt;
  IntMatrix m(nb, nc);
  for (std::size_t j = 0; j < nc; ++j)
    for (std::size_t k = 0; k < nb; ++k) m(k, j) = (*x)[ob + j * nb + k];
  return GroupHom(c, b, m);
}

struct ExactnessReport {
  bool exact = true;
  int failing_joint = -1;
  std::string diagnostic;
};

// Joint i sits between seq[i] and seq[i+1].
inline ExactnessReport is_exact(const std::vector<GroupHom>& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!seq[i].target().same_presentation(seq[i + 1].source()))
      throw Error("not-composable", "maps " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not compose");
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const GroupHom& f = seq[i];
    const GroupHom& g = seq[i + 1];
    if (!compose(g, f).is_zero())
      return {false, static_cast<int>(i), "joint " + std::to_string(i) + ": composite is nonzero"};
    GroupWithMap k = kernel(g);
    for (std::size_t j = 0; j < k.group.generator_count(); ++j)
      if (!f.in_image(k.map.matrix().column(j)))
        return {false, static_cast<int>(i), "joint " + std::to_string(i) + ": kernel " + k.group.to_string() +
                                                " exceeds image " + image(f).group.to_string()};
  }
  return {};
}

// Hom(g, Z/n). A character is stored by its coordinates c in the dual group
// (generator i of the dual corresponds to canonical generator i of g), taking
// value c_i * (n / e_i) on that canonical generator, e_i = gcd(d_i, n).
class DualGroup {
 public:
  DualGroup(FgAbelianGroup g, Int n) : g_(std::move(g)), n_(std::move(n)) {
    if (n_ < 2) throw Error("bad-modulus", "modulus must be at least 2");
    for (const auto& d : g_.invariants()) e_.push_back(gcd_int(d, n_));
    dual_ = FgAbelianGroup::from_invariants(e_);
  }

  const FgAbelianGroup& group() const { return dual_; }
  const FgAbelianGroup& source() const { return g_; }
  const Int& modulus() const { return n_; }

  Vec values_on_canonical(const Vec& chi) const {
    Vec v(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) v[i] = mod_floor(chi[i] * (n_ / e_[i]), n_);
    return v;
  }

  Vec values_on_generators(const Vec& chi) const {
    Vec vc = values_on_canonical(chi);
    const IntMatrix& p = g_.to_canonical_matrix();
    Vec out(g_.generator_count(), Int(0));
    for (std::size_t j = 0; j < out.size(); ++j) {
      for (std::size_t i = 0; i < vc.size(); ++i) out[j] += p(i, j) * vc[i];
      out[j] = mod_floor(out[j], n_);
    }
    return out;
  }

  Int evaluate(const Vec& chi, const Vec& x) const {
    Vec vc = values_on_canonical(chi), c = g_.to_canonical(x);
    Int s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += vc[i] * c[i];
    return mod_floor(s, n_);
  }

  // Dual coordinates of the character with the given values on the generators.
  Vec coords_from_values(const Vec& vals) const {
    if (vals.size() != g_.generator_count()) throw Error("bad-element", "value vector length mismatch");
    const IntMatrix& rel = g_.relations();
    for (std::size_t l = 0; l < rel.cols(); ++l) {
      Int s = 0;
      for (std::size_t j = 0; j < vals.size(); ++j) s += vals[j] * rel(j, l);
      if (mod_floor(s, n_) != 0) throw Error("not-well-defined", "values do not vanish on relation " + std::to_string(l));
    }
    const IntMatrix& q = g_.from_canonical_matrix();
    Vec chi(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) {
      Int v = 0;
      for (std::size_t j = 0; j < vals.size(); ++j) v += vals[j] * q(j, i);
      v = mod_floor(v, n_);
      chi[i] = v / (n_ / e_[i]);
    }
    return chi;
  }

  std::vector<Vec> characters() const { return dual_.elements(); }

 private:
  FgAbelianGroup g_;
  Int n_;
  Vec e_;
  FgAbelianGroup dual_;
};

inline DualGroup dual_mod_n(const FgAbelianGroup& g, const Int& n) { return DualGroup(g, n); }

// The map Hom(target, Z/n) -> Hom(source, Z/n), chi -> chi o h.
inline GroupHom dual_map(const GroupHom& h, const DualGroup& dt, const DualGroup& ds) {
  std::vector<Vec> cols;
  const std::size_t k = dt.group().generator_count();
  for (std::size_t i = 0; i < k; ++i) {
    Vec vt = dt.values_on_generators(unit_vec(k, i));
    Vec vs(h.source().generator_count(), Int(0));
    for (std::size_t j = 0; j < vs.size(); ++j)
      for (std::size_t l = 0; l < vt.size(); ++l) vs[j] += vt[l] * h.matrix()(l, j);
    cols.push_back(ds.coords_from_values(vs));
  }
  return GroupHom(dt.group(), ds.group(), IntMatrix::from_columns(ds.group().generator_count(), cols));
}

// Values on b's generators of a character of b restricting to chi (given by
// its values on a's generators) along the injection incl: a -> b.
inline Vec extend_character(const FgAbelianGroup& b, const GroupHom& incl, const Vec& chi, const Int& n) {
  if (n < 2) throw Error("bad-modulus", "modulus must be at least 2");
  if (!incl.target().same_presentation(b)) throw Error("not-a-subgroup", "inclusion does not land in b");
  if (!is_injective(incl)) throw Error("not-a-subgroup", "inclusion is not injective");
  const FgAbelianGroup& a = incl.source();
  if (chi.size() != a.generator_count()) throw Error("bad-element", "character length mismatch");
  dual_mod_n(a, n).coords_from_values(chi);
  IntMatrix lhs = IntMatrix::vstack(b.relations().transpose(), incl.matrix().transpose());
  IntMatrix sys = IntMatrix::hstack(lhs, n * IntMatrix::identity(lhs.rows()));
  Vec rhs = concat_vec(zero_vec(b.relations().cols()), chi);
  auto sol = solve_integer(sys, rhs);
  if (!sol) throw Error("no-extension", "character does not extend over Z/" + n.get_str());
  Vec v(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(b.generator_count()));
  for (auto& x : v) x = mod_floor(x, n);
  return v;
}

// L / I for lattices I <= L <= Z^N, with representatives and a classifier.
class Subquotient {
 public:
  Subquotient(const IntMatrix& l_gens, const IntMatrix& i_gens) : lat_(l_gens), dim_(l_gens.rows()) {
    std::vector<Vec> rel;
    for (std::size_t j = 0; j < i_gens.cols(); ++j) {
      auto c = lat_.coords(i_gens.column(j));
      if (!c) throw Error("not-a-subgroup", "denominator lattice is not contained in the numerator");
      rel.push_back(*c);
    }
    group_ = FgAbelianGroup(lat_.rank(), IntMatrix::from_columns(lat_.rank(), rel));
  }

  const FgAbelianGroup& group() const { return group_; }
  std::size_t ambient_dim() const { return dim_; }

  // Vector in Z^N representing canonical generator i.
  Vec representative(std::size_t i) const {
    return lat_.basis() * group_.from_canonical(unit_vec(group_.canonical_count(), i));
  }

  Vec lift(const Vec& canonical) const { return lat_.basis() * group_.from_canonical(canonical); }

  // Canonical coordinates of the class of y, or nothing if y is outside L.
  std::optional<Vec> classify(const Vec& y) const {
    auto c = lat_.coords(y);
    if (!c) return std::nullopt;
    return group_.to_canonical(*c);
  }

 private:
  Lattice lat_;
  std::size_t dim_;
  FgAbelianGroup group_;
};

}  // namespace torlang
