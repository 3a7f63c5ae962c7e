#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torlang/cohomology.hpp"

namespace torlang {

// beta(a, g) = (on_kernel a + correction[g], on_group[g]).
struct FrobeniusTwist {
  std::vector<int> on_group;
  IntMatrix on_kernel;
  std::vector<Vec> correction;
};

// E = A x Gamma with (a, g)(b, h) = (a + g b + u(g, h), g h), u a normalized 2-cocycle.
// The transversal lifts g to (offset[g], g).
class ExtensionGroup {
 public:
  struct Element {
    Vec a;
    int g = 0;
  };

  ExtensionGroup(GModule kernel, std::vector<Vec> cocycle, std::optional<FrobeniusTwist> twist = std::nullopt,
                 std::vector<Vec> offsets = {})
      : a_(std::move(kernel)), u_(std::move(cocycle)), twist_(std::move(twist)), off_(std::move(offsets)) {
    const FiniteGroup& G = a_.group();
    const int g = G.order();
    if (u_.size() != static_cast<std::size_t>(g * g)) throw Error("bad-cocycle", "cocycle table has the wrong size");
    for (auto& v : u_) {
      if (v.size() != a_.dim()) throw Error("bad-cocycle", "cocycle value has the wrong length");
      v = a_.module().reduce(v);
    }
    for (int x = 0; x < g; ++x)
      if (!a_.module().is_zero(u(0, x)) || !a_.module().is_zero(u(x, 0)))
        throw Error("bad-cocycle", "cocycle is not normalized");
    for (int x = 0; x < g; ++x)
      for (int y = 0; y < g; ++y)
        for (int z = 0; z < g; ++z) {
          Vec s = sub_vec(add_vec(a_.act(x, u(y, z)), u(x, G.mul(y, z))), add_vec(u(G.mul(x, y), z), u(x, y)));
          if (!a_.module().is_zero(s)) throw Error("bad-cocycle", "cocycle identity fails");
        }
    if (off_.empty()) off_.assign(static_cast<std::size_t>(g), zero_vec(a_.dim()));
    if (off_.size() != static_cast<std::size_t>(g) || !a_.module().is_zero(off_[0]))
      throw Error("bad-transversal", "transversal must lift the identity to the identity");
    for (const auto& v : off_)
      if (v.size() != a_.dim()) throw Error("bad-transversal", "transversal offset has the wrong length");
    if (twist_) check_twist();
  }

  const FiniteGroup& base() const { return a_.group(); }
  const GModule& kernel() const { return a_; }
  const Vec& u(int x, int y) const { return u_[static_cast<std::size_t>(x * base().order() + y)]; }
  const std::vector<Vec>& cocycle_table() const { return u_; }
  bool has_twist() const { return twist_.has_value(); }
  const FrobeniusTwist& twist() const {
    if (!twist_) throw Error("no-twist", "extension carries no Frobenius twist");
    return *twist_;
  }
  const std::vector<Vec>& offsets() const { return off_; }

  Cochain cocycle() const {
    Cochain c = zero_cochain(a_, 2);
    c.values = u_;
    return c;
  }

  Element identity() const { return {zero_vec(a_.dim()), 0}; }
  Element section(int g) const { return {zero_vec(a_.dim()), g}; }
  Element lift(int g) const { return {off_[static_cast<std::size_t>(g)], g}; }
  Element kernel_element(const Vec& a) const { return {a_.module().reduce(a), 0}; }

  Element mul(const Element& x, const Element& y) const {
    return {a_.module().reduce(add_vec(add_vec(x.a, a_.act(x.g, y.a)), u(x.g, y.g))), base().mul(x.g, y.g)};
  }

  Element inverse(const Element& x) const {
    int gi = base().inv(x.g);
    return {a_.module().reduce(scale_vec(-1, a_.act(gi, add_vec(x.a, u(x.g, gi))))), gi};
  }

  bool equal(const Element& x, const Element& y) const { return x.g == y.g && a_.module().equal(x.a, y.a); }

  Element frobenius(const Element& x) const {
    const FrobeniusTwist& t = twist();
    return {a_.module().reduce(add_vec(t.on_kernel * x.a, t.correction[static_cast<std::size_t>(x.g)])),
            t.on_group[static_cast<std::size_t>(x.g)]};
  }

  // The extension of a subgroup H (in H's own labels) by the restricted module.
  ExtensionGroup restrict_to(const SubgroupDatum& h) const {
    GModule ah = restrict_module(a_, h);
    Cochain uh = restrict_cochain(h, cocycle());
    std::vector<Vec> off;
    for (int k = 0; k < h.order(); ++k) off.push_back(off_[static_cast<std::size_t>(h.from_sub(k))]);
    return ExtensionGroup(ah, uh.values, std::nullopt, off);
  }

  ExtensionGroup with_offsets(std::vector<Vec> offsets) const { return ExtensionGroup(a_, u_, twist_, std::move(offsets)); }

  // Elements (a, g) with a in {0} and the kernel generators; enough to test group laws.
  std::vector<Element> sample() const {
    std::vector<Element> out;
    for (int g = 0; g < base().order(); ++g) {
      out.push_back({zero_vec(a_.dim()), g});
      for (std::size_t i = 0; i < a_.dim(); ++i) out.push_back({a_.module().reduce(unit_vec(a_.dim(), i)), g});
    }
    return out;
  }

  bool check_associativity() const {
    auto s = sample();
    for (const auto& x : s)
      for (const auto& y : s)
        for (const auto& z : s)
          if (!equal(mul(mul(x, y), z), mul(x, mul(y, z)))) return false;
    return true;
  }

 private:
  void check_twist() const {
    const FiniteGroup& G = base();
    const FrobeniusTwist& t = *twist_;
    const int g = G.order();
    if (t.on_group.size() != static_cast<std::size_t>(g) || t.correction.size() != static_cast<std::size_t>(g))
      throw Error("bad-frobenius", "twist has the wrong size");
    std::vector<bool> hit(static_cast<std::size_t>(g), false);
    for (int x = 0; x < g; ++x) {
      int y = t.on_group[static_cast<std::size_t>(x)];
      if (y < 0 || y >= g || hit[static_cast<std::size_t>(y)]) throw Error("bad-frobenius", "twist is not a bijection of Gamma");
      hit[static_cast<std::size_t>(y)] = true;
      for (int z = 0; z < g; ++z)
        if (t.on_group[static_cast<std::size_t>(G.mul(x, z))] != G.mul(y, t.on_group[static_cast<std::size_t>(z)]))
          throw Error("bad-frobenius", "twist is not a homomorphism of Gamma");
    }
    try {
      if (!is_isomorphism(GroupHom(a_.module(), a_.module(), t.on_kernel)))
        throw Error("bad-frobenius", "twist is not an automorphism of the kernel");
    } catch (const Error& e) {
      throw Error("bad-frobenius", e.what());
    }
    for (int x = 0; x < g; ++x)
      if (!a_.same_map(t.on_kernel * a_.action(x), a_.action(t.on_group[static_cast<std::size_t>(x)]) * t.on_kernel))
        throw Error("bad-frobenius", "twist is not compatible with the action");
    for (int x = 0; x < g; ++x)
      for (int y = 0; y < g; ++y) {
        int bx = t.on_group[static_cast<std::size_t>(x)], by = t.on_group[static_cast<std::size_t>(y)];
        Vec lhs = add_vec(t.on_kernel * u(x, y), t.correction[static_cast<std::size_t>(G.mul(x, y))]);
        Vec rhs = add_vec(add_vec(t.correction[static_cast<std::size_t>(x)], a_.act(bx, t.correction[static_cast<std::size_t>(y)])), u(bx, by));
        if (!a_.module().equal(lhs, rhs)) throw Error("bad-frobenius", "twist does not respect the cocycle");
      }
  }

  GModule a_;
  std::vector<Vec> u_;
  std::optional<FrobeniusTwist> twist_;
  std::vector<Vec> off_;
};

// E^ab on kernel generators followed by lifts of the non-identity elements of Gamma.
inline FgAbelianGroup extension_abelianization(const ExtensionGroup& e) {
  const FiniteGroup& G = e.base();
  const std::size_t na = e.kernel().dim(), g = static_cast<std::size_t>(G.order()), n = na + g - 1;
  std::vector<Vec> rel;
  const IntMatrix& ra = e.kernel().module().relations();
  for (std::size_t j = 0; j < ra.cols(); ++j) {
    Vec v = zero_vec(n);
    for (std::size_t i = 0; i < na; ++i) v[i] = ra(i, j);
    rel.push_back(v);
  }
  auto lift_idx = [&](int x) { return na + static_cast<std::size_t>(x) - 1; };
  for (int x = 1; x < G.order(); ++x)
    for (int y = 1; y < G.order(); ++y) {
      Vec v = zero_vec(n);
      v[lift_idx(x)] += 1;
      v[lift_idx(y)] += 1;
      if (G.mul(x, y) != 0) v[lift_idx(G.mul(x, y))] -= 1;
      for (std::size_t i = 0; i < na; ++i) v[i] -= e.u(x, y)[i];
      rel.push_back(v);
    }
  for (int x = 1; x < G.order(); ++x) {
    IntMatrix d = e.kernel().action(x) - IntMatrix::identity(na);
    for (std::size_t j = 0; j < na; ++j) {
      Vec v = zero_vec(n);
      for (std::size_t i = 0; i < na; ++i) v[i] = d(i, j);
      rel.push_back(v);
    }
  }
  return FgAbelianGroup(n, IntMatrix::from_columns(n, rel));
}

inline Vec abelian_class(const ExtensionGroup& e, const ExtensionGroup::Element& x) {
  const std::size_t na = e.kernel().dim();
  Vec v = zero_vec(na + static_cast<std::size_t>(e.base().order()) - 1);
  for (std::size_t i = 0; i < na; ++i) v[i] = x.a[i];
  if (x.g != 0) v[na + static_cast<std::size_t>(x.g) - 1] = 1;
  return v;
}

// Verlagerung E -> (preimage of S)^ab, as a vector for extension_abelianization(e.restrict_to(s)).
inline Vec transfer(const ExtensionGroup& e, const SubgroupDatum& s, const ExtensionGroup::Element& x) {
  const FiniteGroup& G = e.base();
  ExtensionGroup es = e.restrict_to(s);
  Vec out = zero_vec(es.kernel().dim() + static_cast<std::size_t>(s.order()) - 1);
  for (int i = 0; i < s.index(); ++i) {
    int ri = s.reps()[static_cast<std::size_t>(i)];
    int j = s.coset_of(G.mul(x.g, ri));
    auto y = e.mul(e.mul(e.inverse(e.section(s.reps()[static_cast<std::size_t>(j)])), x), e.section(ri));
    out = add_vec(out, abelian_class(es, {y.a, s.to_sub(y.g)}));
  }
  return extension_abelianization(es).reduce(out);
}

// Verlagerung of a finite group to a subgroup, in Z^H modulo the abelianization relations.
inline Vec transfer(const SubgroupDatum& h, int x) {
  const FiniteGroup& G = h.parent();
  Vec out = zero_vec(static_cast<std::size_t>(h.order()));
  for (int i = 0; i < h.index(); ++i) {
    int y = G.mul(x, h.reps()[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(h.to_sub(h.h_part(y)))] += 1;
  }
  return abelianization(h.as_group()).reduce(out);
}

// 1-cocycles on E (or on W = E x| <phi> with a Frobenius twist) with values in a finite
// Gamma-module, stored by their values on the kernel generators, on the zero-offset
// lifts of non-identity g, and on phi.
struct CocycleValues {
  std::vector<Vec> on_kernel;
  std::vector<Vec> on_lifts;  // indexed by g; entry 0 is zero
  Vec on_frobenius;
};

class H1Group {
 public:
  H1Group(ExtensionGroup e, GModule m, std::optional<IntMatrix> frob)
      : e_(std::move(e)), m_(std::move(m)), f_(std::move(frob)), cm_(m_), sq_(IntMatrix(0, 0), IntMatrix(0, 0)) {
    if (!(m_.group() == e_.base())) throw Error("group-mismatch", "module and extension use different groups");
    if (!m_.module().is_finite()) throw Error("module-not-finite", "H^1 of the extension needs finite coefficients");
    if (f_) {
      if (!e_.has_twist()) throw Error("no-twist", "Frobenius on the module needs a twisted extension");
      if (!is_isomorphism(GroupHom(m_.module(), m_.module(), *f_)))
        throw Error("bad-frobenius", "Frobenius is not an automorphism of the module");
      for (int x = 0; x < e_.base().order(); ++x)
        if (!m_.same_map(*f_ * m_.action(x), m_.action(e_.twist().on_group[static_cast<std::size_t>(x)]) * *f_))
          throw Error("bad-frobenius", "Frobenius on the module is not compatible with the twist");
    }
    build();
  }

  const FgAbelianGroup& group() const { return sq_.group(); }
  const ExtensionGroup& extension() const { return e_; }
  const GModule& module() const { return m_; }
  bool twisted() const { return f_.has_value(); }

  Vec to_vector(const CocycleValues& c) const {
    Vec v;
    auto put = [&](const Vec& x) {
      Vec y = cm_.p * x;
      v.insert(v.end(), y.begin(), y.end());
    };
    for (const auto& x : c.on_kernel) put(x);
    for (int g = 1; g < e_.base().order(); ++g) put(c.on_lifts[static_cast<std::size_t>(g)]);
    if (f_) put(c.on_frobenius);
    return cm_.reduce(v);
  }

  CocycleValues from_vector(const Vec& v) const {
    std::size_t pos = 0;
    auto take = [&]() {
      Vec x(v.begin() + static_cast<std::ptrdiff_t>(pos), v.begin() + static_cast<std::ptrdiff_t>(pos + cm_.k));
      pos += cm_.k;
      return m_.module().reduce(cm_.q * x);
    };
    CocycleValues c;
    for (std::size_t i = 0; i < e_.kernel().dim(); ++i) c.on_kernel.push_back(take());
    c.on_lifts.push_back(zero_vec(m_.dim()));
    for (int g = 1; g < e_.base().order(); ++g) c.on_lifts.push_back(take());
    c.on_frobenius = f_ ? take() : zero_vec(m_.dim());
    return c;
  }

  CocycleValues representative(std::size_t i) const { return from_vector(sq_.representative(i)); }
  CocycleValues lift(const Vec& coords) const { return from_vector(sq_.lift(coords)); }
  std::optional<Vec> classify(const CocycleValues& c) const { return sq_.classify(to_vector(c)); }

  Vec evaluate(const CocycleValues& c, const ExtensionGroup::Element& x) const {
    Vec s = c.on_lifts[static_cast<std::size_t>(x.g)];
    for (std::size_t j = 0; j < x.a.size(); ++j) s = add_vec(s, scale_vec(x.a[j], c.on_kernel[j]));
    return m_.module().reduce(s);
  }

  // The values of a function on E, checked to be a cocycle.
  std::optional<Vec> classify_function(const std::function<Vec(const ExtensionGroup::Element&)>& f) const {
    if (f_) throw Error("unsupported", "function classification is for the untwisted group");
    CocycleValues c;
    for (std::size_t i = 0; i < e_.kernel().dim(); ++i) c.on_kernel.push_back(f(e_.kernel_element(unit_vec(e_.kernel().dim(), i))));
    for (int g = 0; g < e_.base().order(); ++g) c.on_lifts.push_back(g ? f(e_.section(g)) : zero_vec(m_.dim()));
    c.on_frobenius = zero_vec(m_.dim());
    for (const auto& x : e_.sample())
      if (!m_.module().equal(f(x), evaluate(c, x))) return std::nullopt;
    return classify(c);
  }

  // f |-> F^-1 f(beta(.)) on the untwisted group.
  GroupHom frobenius_action(const IntMatrix& frob) const {
    if (f_) throw Error("unsupported", "Frobenius action is defined on the untwisted group");
    GroupHom fi = inverse(GroupHom(m_.module(), m_.module(), frob));
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < group().generator_count(); ++i) {
      CocycleValues c = lift(group().to_canonical(unit_vec(group().generator_count(), i)));
      CocycleValues d;
      for (std::size_t j = 0; j < e_.kernel().dim(); ++j)
        d.on_kernel.push_back(fi.apply(evaluate(c, e_.frobenius(e_.kernel_element(unit_vec(e_.kernel().dim(), j))))));
      for (int g = 0; g < e_.base().order(); ++g)
        d.on_lifts.push_back(g ? fi.apply(evaluate(c, e_.frobenius(e_.section(g)))) : zero_vec(m_.dim()));
      d.on_frobenius = zero_vec(m_.dim());
      auto k = classify(d);
      if (!k) throw Error("bad-frobenius", "twist does not preserve cocycles");
      cols.push_back(group().from_canonical(*k));
    }
    return GroupHom(group(), group(), IntMatrix::from_columns(group().generator_count(), cols));
  }

 private:
  void build() {
    const FiniteGroup& G = e_.base();
    const std::size_t k = cm_.k, na = e_.kernel().dim(), g = static_cast<std::size_t>(G.order());
    const std::size_t blocks = na + g - 1 + (f_ ? 1 : 0), n = blocks * k;
    auto kidx = [&](std::size_t i) { return i * k; };
    auto lidx = [&](int x) { return (na + static_cast<std::size_t>(x) - 1) * k; };
    const std::size_t pidx = (na + g - 1) * k;
    IntMatrix id = IntMatrix::identity(k);
    std::vector<IntMatrix> eqs;
    auto new_eq = [&]() { return IntMatrix(k, n); };
    const IntMatrix& ra = e_.kernel().module().relations();
    for (std::size_t j = 0; j < ra.cols(); ++j) {
      IntMatrix q = new_eq();
      for (std::size_t i = 0; i < na; ++i) detail::add_block(q, 0, kidx(i), ra(i, j) * id, 1);
      eqs.push_back(q);
    }
    for (int x = 1; x < G.order(); ++x)
      for (int y = 1; y < G.order(); ++y) {
        IntMatrix q = new_eq();
        detail::add_block(q, 0, lidx(x), id, 1);
        detail::add_block(q, 0, lidx(y), cm_.act[static_cast<std::size_t>(x)], 1);
        if (G.mul(x, y) != 0) detail::add_block(q, 0, lidx(G.mul(x, y)), id, -1);
        for (std::size_t i = 0; i < na; ++i) detail::add_block(q, 0, kidx(i), e_.u(x, y)[i] * id, -1);
        eqs.push_back(q);
      }
    for (int x = 1; x < G.order(); ++x)
      for (std::size_t i = 0; i < na; ++i) {
        IntMatrix q = new_eq();
        detail::add_block(q, 0, kidx(i), cm_.act[static_cast<std::size_t>(x)], 1);
        for (std::size_t j = 0; j < na; ++j) detail::add_block(q, 0, kidx(j), e_.kernel().action(x)(j, i) * id, -1);
        eqs.push_back(q);
      }
    std::vector<Vec> bound;
    for (std::size_t c = 0; c < k; ++c) {
      Vec b = zero_vec(n);
      for (int x = 1; x < G.order(); ++x)
        for (std::size_t r = 0; r < k; ++r) b[lidx(x) + r] = cm_.act[static_cast<std::size_t>(x)](r, c) - (r == c ? 1 : 0);
      if (f_) {
        IntMatrix fc = cm_.p * *f_ * cm_.q;
        for (std::size_t r = 0; r < k; ++r) b[pidx + r] = fc(r, c) - (r == c ? 1 : 0);
      }
      bound.push_back(b);
    }
    if (f_) {
      const FrobeniusTwist& t = e_.twist();
      IntMatrix fc = cm_.p * *f_ * cm_.q;
      for (std::size_t i = 0; i < na; ++i) {
        IntMatrix q = new_eq();
        detail::add_block(q, 0, kidx(i), fc, 1);
        for (std::size_t j = 0; j < na; ++j) detail::add_block(q, 0, kidx(j), t.on_kernel(j, i) * id, -1);
        eqs.push_back(q);
      }
      for (int x = 1; x < G.order(); ++x) {
        int bx = t.on_group[static_cast<std::size_t>(x)];
        IntMatrix q = new_eq();
        detail::add_block(q, 0, pidx, id - cm_.act[static_cast<std::size_t>(bx)], 1);
        detail::add_block(q, 0, lidx(x), fc, 1);
        for (std::size_t j = 0; j < na; ++j) detail::add_block(q, 0, kidx(j), t.correction[static_cast<std::size_t>(x)][j] * id, -1);
        if (bx != 0) detail::add_block(q, 0, lidx(bx), id, -1);
        eqs.push_back(q);
      }
    }
    IntMatrix all(0, n);
    for (const auto& q : eqs) all = IntMatrix::vstack(all, q);
    Vec mods = cm_.moduli(blocks);
    IntMatrix l = kernel_mod(all, cm_.moduli(eqs.size()), mods);
    sq_ = Subquotient(l, detail::with_moduli(IntMatrix::from_columns(n, bound), mods));
  }

  ExtensionGroup e_;
  GModule m_;
  std::optional<IntMatrix> f_;
  detail::CanonicalModule cm_;
  Subquotient sq_;
};

inline H1Group h1_fp_group(const ExtensionGroup& e, const GModule& m, std::optional<IntMatrix> frob = std::nullopt) {
  return H1Group(e, m, std::move(frob));
}

// cor(alpha)(x) = sum_g g alpha(L_g^-1 x L_{pi(x)^-1 g}) over the transversal L of A in E.
inline CocycleValues cor_hom_level(const ExtensionGroup& e, const GModule& m, const IntMatrix& alpha) {
  const FiniteGroup& G = e.base();
  GroupHom a(e.kernel().module(), m.module(), alpha);
  auto cor = [&](const ExtensionGroup::Element& x) {
    Vec s = zero_vec(m.dim());
    for (int g = 0; g < G.order(); ++g) {
      auto y = e.mul(e.mul(e.inverse(e.lift(g)), x), e.lift(G.mul(G.inv(x.g), g)));
      s = add_vec(s, m.act(g, a.apply(y.a)));
    }
    return m.module().reduce(s);
  };
  CocycleValues c;
  for (std::size_t i = 0; i < e.kernel().dim(); ++i) c.on_kernel.push_back(cor(e.kernel_element(unit_vec(e.kernel().dim(), i))));
  for (int g = 0; g < G.order(); ++g) c.on_lifts.push_back(g ? cor(e.section(g)) : zero_vec(m.dim()));
  c.on_frobenius = zero_vec(m.dim());
  return c;
}

struct NakayamaReport {
  GroupHom map;  // Gamma^ab -> H^0-hat(Gamma, A)
  CohomologyGroup target;
  bool transfer_agrees = false;
};

// sigma |-> sum_tau u(tau, sigma) in A^Gamma / N A, cross-checked against the transfer E -> A.
inline NakayamaReport nakayama_delta(const ExtensionGroup& e) {
  const FiniteGroup& G = e.base();
  CohomologyGroup h0 = tate_cohomology(e.kernel(), 0);
  FgAbelianGroup ab = abelianization(G);
  std::vector<Vec> cols;
  bool agree = true;
  SubgroupDatum one = SubgroupDatum::trivial(G);
  for (int s = 0; s < G.order(); ++s) {
    Vec v = zero_vec(e.kernel().dim());
    for (int t = 0; t < G.order(); ++t) v = add_vec(v, e.u(t, s));
    Cochain c{0, {e.kernel().module().reduce(v)}};
    auto k = h0.classify(c);
    if (!k) throw Error("not-invariant", "Nakayama sum is not invariant");
    cols.push_back(h0.group().from_canonical(*k));
    Vec tr = transfer(e, one, e.section(s));
    auto kt = h0.classify(Cochain{0, {e.kernel().module().reduce(tr)}});
    if (!kt || *kt != *k) agree = false;
  }
  return {GroupHom(ab, h0.group(), IntMatrix::from_columns(h0.group().generator_count(), cols)), h0, agree};
}

struct TransgressionResult {
  CohomologyGroup h2;
  Cochain cocycle;
  Vec coords;
  bool tail_verified = false;
};

// alpha in Hom(A, M)^Gamma |-> class of -alpha o u, with the tail cochain beta(a L_g) = alpha(a) checked.
class Transgression {
 public:
  Transgression(const ExtensionGroup& e, const GModule& m) : e_(e), m_(m), h2_(check(e, m)) {}

  const CohomologyGroup& h2() const { return h2_; }

  TransgressionResult operator()(const IntMatrix& alpha) const {
    const FiniteGroup& G = e_.base();
    GroupHom a(e_.kernel().module(), m_.module(), alpha);
    for (int g = 0; g < G.order(); ++g)
      if (!GroupHom(e_.kernel().module(), m_.module(), alpha * e_.kernel().action(g))
               .equals(GroupHom(e_.kernel().module(), m_.module(), m_.action(g) * alpha)))
        throw Error("not-invariant", "alpha is not Gamma-invariant");
    Cochain c = make_cochain(m_, 2, [&](const std::vector<int>& t) { return scale_vec(-1, a.apply(e_.u(t[0], t[1]))); });
    auto k = h2_.classify(c);
    if (!k) throw Error("not-a-cocycle", "transgressed cochain is not a cocycle");
    bool ok = true;
    auto beta = [&](const ExtensionGroup::Element& x) { return a.apply(x.a); };
    for (const auto& x : e_.sample())
      for (const auto& y : e_.sample()) {
        Vec d = sub_vec(add_vec(m_.act(x.g, beta(y)), beta(x)), beta(e_.mul(x, y)));
        if (!m_.module().equal(d, eval(c, m_, {x.g, y.g}))) ok = false;
      }
    return {h2_, c, *k, ok};
  }

 private:
  static CohomologyGroup check(const ExtensionGroup& e, const GModule& m) {
    if (!(m.group() == e.base())) throw Error("group-mismatch", "module and extension use different groups");
    return cohomology(m, 2);
  }

  ExtensionGroup e_;
  GModule m_;
  CohomologyGroup h2_;
};

inline TransgressionResult transgression(const ExtensionGroup& e, const GModule& m, const IntMatrix& alpha) {
  return Transgression(e, m)(alpha);
}

struct DimensionShiftReport {
  GModule tensor;           // M (x) I_Gamma
  Cochain cup;              // d^-1 alpha u u
  Cochain shifted_cor;      // d^1 (cor alpha)
  Cochain witness;          // 1-cochain sum_g F_g (x) (g - 1)
  Cochain witness_boundary;
  Cochain cor_alpha;        // 1-cochain in M
  bool identity_holds = false;
};

// d(witness) == d^-1 alpha u u - d^1(cor alpha) with F_g(h) = (g alpha)(u(h, h^-1 g)).
class DimensionShift {
 public:
  DimensionShift(const ExtensionGroup& e, const GModule& m)
      : e_(e), m_(check(m)), hom_(hom_module(e.kernel(), m)), t_(tensor_module(m, augmentation_ideal_module(e.base()))),
        nmod_(tensor_module(hom_.module, augmentation_ideal_module(e.base()))), pr_(nmod_, e.kernel(), t_, pairing_matrix()) {}

  DimensionShiftReport operator()(const IntMatrix& alpha) const {
    const FiniteGroup& G = e_.base();
    const std::size_t g1 = static_cast<std::size_t>(G.order() - 1), nm = m_.dim();
    GroupHom(e_.kernel().module(), m_.module(), alpha);
    auto galpha = [&](int g) { return m_.action(g) * alpha * e_.kernel().action(G.inv(g)); };
    auto tens = [&](const Vec& x, int g) {
      Vec v = zero_vec(t_.dim());
      if (g == 0) return v;
      for (std::size_t i = 0; i < nm; ++i) v[i * g1 + static_cast<std::size_t>(g) - 1] = x[i];
      return v;
    };
    Vec dm1 = zero_vec(nmod_.dim());
    const std::size_t hd = hom_.module.dim();
    for (int g = 1; g < G.order(); ++g) {
      Vec h = hom_.from_matrix(galpha(g));
      for (std::size_t j = 0; j < hd; ++j) dm1[j * g1 + static_cast<std::size_t>(g) - 1] += h[j];
    }
    Cochain c0{0, {nmod_.module().reduce(dm1)}};
    Cochain cup = cup_product(c0, e_.cocycle(), pr_);
    auto F = [&](int g, int h) { return m_.module().reduce(galpha(g) * e_.u(h, G.mul(G.inv(h), g))); };
    Cochain cor = make_cochain(m_, 1, [&](const std::vector<int>& x) {
      Vec s = zero_vec(nm);
      for (int g = 0; g < G.order(); ++g) s = add_vec(s, F(g, x[0]));
      return s;
    });
    Cochain shifted = make_cochain(t_, 2, [&](const std::vector<int>& x) { return tens(m_.act(x[0], eval(cor, m_, {x[1]})), x[0]); });
    Cochain w = make_cochain(t_, 1, [&](const std::vector<int>& x) {
      Vec s = zero_vec(t_.dim());
      for (int g = 1; g < G.order(); ++g) s = add_vec(s, tens(F(g, x[0]), g));
      return s;
    });
    Cochain dw = coboundary(t_, w);
    bool holds = cochain_equal(t_, dw, add(t_, cup, shifted, -1));
    return {t_, cup, shifted, w, dw, cor, holds};
  }

 private:
  static const GModule& check(const GModule& m) {
    if (!m.module().is_finite()) throw Error("coefficients-not-finite", "dimension shifting needs finite coefficients");
    return m;
  }

  IntMatrix pairing_matrix() const {
    const std::size_t g1 = static_cast<std::size_t>(e_.base().order() - 1), na = e_.kernel().dim(), nm = m_.dim();
    const std::size_t hd = hom_.module.dim();
    IntMatrix pm(t_.dim(), nmod_.dim() * na);
    for (std::size_t j = 0; j < hd; ++j) {
      IntMatrix fj = hom_.as_matrix(unit_vec(hd, j));
      for (std::size_t gi = 0; gi < g1; ++gi)
        for (std::size_t l = 0; l < na; ++l)
          for (std::size_t i = 0; i < nm; ++i) pm(i * g1 + gi, (j * g1 + gi) * na + l) = fj(i, l);
    }
    return pm;
  }

  ExtensionGroup e_;
  GModule m_;
  HomModule hom_;
  GModule t_, nmod_;
  Pairing pr_;
};

inline DimensionShiftReport dimension_shift_maps(const ExtensionGroup& e, const GModule& m, const IntMatrix& alpha) {
  return DimensionShift(e, m)(alpha);
}

struct SubgroupFormationReport {
  std::vector<int> members;
  std::string h1, h2;
  Vec h1_invariants, h2_invariants;
  bool h1_trivial = false, h2_cyclic_of_order = false, restriction_generates = false;
  bool pass() const { return h1_trivial && h2_cyclic_of_order && restriction_generates; }
};

struct ClassFormationReport {
  std::vector<SubgroupFormationReport> subgroups;
  bool pass() const {
    for (const auto& s : subgroups)
      if (!s.pass()) return false;
    return true;
  }
};

inline ClassFormationReport verify_class_formation(const ExtensionGroup& e) {
  ClassFormationReport rep;
  for (const auto& h : all_subgroups(e.base())) {
    GModule ah = restrict_module(e.kernel(), h);
    CohomologyGroup h1 = cohomology(ah, 1), h2 = cohomology(ah, 2);
    SubgroupFormationReport s;
    s.members = h.members();
    s.h1 = h1.to_string();
    s.h2 = h2.to_string();
    s.h1_invariants = h1.group().invariants();
    s.h2_invariants = h2.group().invariants();
    s.h1_trivial = h1.group().is_trivial();
    s.h2_cyclic_of_order = h.order() == 1 ? h2.group().is_trivial() : h2.group().invariants() == Vec{Int(h.order())};
    auto k = h2.classify(restrict_cochain(h, e.cocycle()));
    s.restriction_generates = k && h2.is_generator(*k);
    rep.subgroups.push_back(s);
  }
  return rep;
}

}  // namespace torlang
