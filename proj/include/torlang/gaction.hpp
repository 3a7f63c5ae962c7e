#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "torlang/zmodule.hpp"

namespace torlang {

// Finite group on labels 0..order-1 with 0 the identity.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<int>>{{0}}) {}

  explicit FiniteGroup(std::vector<std::vector<int>> table) : t_(std::move(table)) {
    const int n = order();
    if (n == 0) throw Error("bad-group", "empty multiplication table");
    for (const auto& row : t_) {
      if (static_cast<int>(row.size()) != n) throw Error("bad-group", "multiplication table is not square");
      for (int x : row)
        if (x < 0 || x >= n) throw Error("bad-group", "table entry out of range");
    }
    for (int a = 0; a < n; ++a)
      if (t_[0][a] != a || t_[a][0] != a) throw Error("bad-group", "label 0 is not the identity");
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (t_[a][b] == 0 && t_[b][a] == 0) inv_[a] = b;
    for (int a = 0; a < n; ++a)
      if (inv_[a] < 0) throw Error("bad-group", "element " + std::to_string(a) + " has no inverse");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (t_[t_[a][b]][c] != t_[a][t_[b][c]]) throw Error("bad-group", "multiplication table is not associative");
  }

  static FiniteGroup trivial() { return FiniteGroup(); }

  static FiniteGroup cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t));
  }

  // Element (g, h) has label g * |H| + h.
  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h) {
    const int m = h.order(), n = g.order() * m;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[a][b] = g.mul(a / m, b / m) * m + h.mul(a % m, b % m);
    return FiniteGroup(std::move(t));
  }

  int order() const { return static_cast<int>(t_.size()); }
  int mul(int a, int b) const { return t_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  const std::vector<std::vector<int>>& table() const { return t_; }

  int power(int g, long k) const {
    if (k < 0) return power(inv(g), -k);
    int r = 0;
    for (long i = 0; i < k; ++i) r = mul(r, g);
    return r;
  }

  int element_order(int g) const {
    int k = 1;
    for (int x = g; x != 0; x = mul(x, g)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (int a = 0; a < order(); ++a)
      for (int b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool is_cyclic() const {
    for (int g = 0; g < order(); ++g)
      if (element_order(g) == order()) return true;
    return false;
  }

  std::optional<int> cyclic_generator() const {
    for (int g = 0; g < order(); ++g)
      if (element_order(g) == order()) return g;
    return std::nullopt;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.t_ == b.t_; }

 private:
  std::vector<std::vector<int>> t_;
  std::vector<int> inv_;
};

inline std::vector<int> generated_members(const FiniteGroup& g, const std::vector<int>& gens) {
  std::set<int> s{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int y : gens) {
        int z = g.mul(x, y);
        if (s.insert(z).second) next.push_back(z);
      }
    frontier = std::move(next);
  }
  return {s.begin(), s.end()};
}

// A subgroup with left coset representatives: the parent is the disjoint union of r_i H.
class SubgroupDatum {
 public:
  SubgroupDatum(FiniteGroup parent, std::vector<int> members, std::optional<std::vector<int>> reps = std::nullopt)
      : g_(std::move(parent)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    flag_.assign(g_.order(), false);
    for (int m : members_) {
      if (m < 0 || m >= g_.order()) throw Error("not-a-subgroup", "member label out of range");
      flag_[m] = true;
    }
    if (members_.empty() || members_[0] != 0) throw Error("not-a-subgroup", "identity is not a member");
    for (int a : members_)
      for (int b : members_)
        if (!flag_[g_.mul(a, g_.inv(b))]) throw Error("not-a-subgroup", "member set is not closed");
    sub_label_.assign(g_.order(), -1);
    for (std::size_t k = 0; k < members_.size(); ++k) sub_label_[members_[k]] = static_cast<int>(k);

    if (reps) {
      reps_ = *reps;
    } else {
      std::vector<bool> covered(g_.order(), false);
      for (int x = 0; x < g_.order(); ++x) {
        if (covered[x]) continue;
        reps_.push_back(x);
        for (int h : members_) covered[g_.mul(x, h)] = true;
      }
    }
    coset_.assign(g_.order(), -1);
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      if (reps_[i] < 0 || reps_[i] >= g_.order()) throw Error("bad-transversal", "representative out of range");
      for (int h : members_) {
        int x = g_.mul(reps_[i], h);
        if (coset_[x] != -1) throw Error("bad-transversal", "two representatives lie in the same coset");
        coset_[x] = static_cast<int>(i);
      }
    }
    if (reps_.empty() || reps_[0] != 0) throw Error("bad-transversal", "the trivial coset must be represented by the identity");
    for (int c : coset_)
      if (c < 0) throw Error("bad-transversal", "representatives miss a coset");
  }

  static SubgroupDatum whole(const FiniteGroup& g) {
    std::vector<int> all(g.order());
    for (int i = 0; i < g.order(); ++i) all[i] = i;
    return SubgroupDatum(g, all);
  }
  static SubgroupDatum trivial(const FiniteGroup& g) { return SubgroupDatum(g, {0}); }

  const FiniteGroup& parent() const { return g_; }
  const std::vector<int>& members() const { return members_; }
  const std::vector<int>& reps() const { return reps_; }
  bool contains(int g) const { return flag_[g]; }
  int order() const { return static_cast<int>(members_.size()); }
  int index() const { return static_cast<int>(reps_.size()); }

  // Coset index i and h in H with g = r_i h.
  int coset_of(int g) const { return coset_[g]; }
  int h_part(int g) const { return g_.mul(g_.inv(reps_[coset_[g]]), g); }

  int to_sub(int g) const {
    if (sub_label_[g] < 0) throw Error("not-a-subgroup", "element is not in the subgroup");
    return sub_label_[g];
  }
  int from_sub(int k) const { return members_[k]; }

  FiniteGroup as_group() const {
    const int n = order();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[a][b] = sub_label_[g_.mul(members_[a], members_[b])];
    return FiniteGroup(std::move(t));
  }

  // Same subgroup, each non-trivial representative moved to another coset member.
  SubgroupDatum rotated(int shift = 1) const {
    std::vector<int> r = reps_;
    for (std::size_t i = 1; i < r.size(); ++i) r[i] = g_.mul(r[i], members_[static_cast<std::size_t>(shift) % members_.size()]);
    return SubgroupDatum(g_, members_, r);
  }

  bool is_normal() const {
    for (int g = 0; g < g_.order(); ++g)
      for (int h : members_)
        if (!flag_[g_.mul(g_.mul(g, h), g_.inv(g))]) return false;
    return true;
  }

 private:
  FiniteGroup g_;
  std::vector<int> members_;
  std::vector<bool> flag_;
  std::vector<int> sub_label_;
  std::vector<int> reps_;
  std::vector<int> coset_;
};

inline std::vector<SubgroupDatum> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> seen{{0}};
  std::vector<std::vector<int>> queue{{0}};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int x = 0; x < g.order(); ++x) {
      std::vector<int> gens = queue[q];
      gens.push_back(x);
      auto s = generated_members(g, gens);
      if (seen.insert(s).second) queue.push_back(s);
    }
  std::sort(queue.begin(), queue.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<SubgroupDatum> out;
  for (auto& m : queue) out.emplace_back(g, m);
  return out;
}

// Checks that q: big -> small is a surjective homomorphism.
inline void check_quotient_map(const FiniteGroup& big, const FiniteGroup& small, const std::vector<int>& q) {
  if (static_cast<int>(q.size()) != big.order()) throw Error("bad-quotient", "map must be defined on every element");
  std::vector<bool> hit(small.order(), false);
  for (int a = 0; a < big.order(); ++a) {
    if (q[a] < 0 || q[a] >= small.order()) throw Error("bad-quotient", "image label out of range");
    hit[q[a]] = true;
    for (int b = 0; b < big.order(); ++b)
      if (q[big.mul(a, b)] != small.mul(q[a], q[b])) throw Error("bad-quotient", "map is not a homomorphism");
  }
  for (bool h : hit)
    if (!h) throw Error("bad-quotient", "map is not surjective");
}

// An abelian group with an action of a finite group by matrices on its generators.
class GModule {
 public:
  GModule() = default;

  GModule(FiniteGroup group, FgAbelianGroup module, std::vector<IntMatrix> action)
      : g_(std::move(group)), m_(std::move(module)), act_(std::move(action)) {
    const std::size_t n = m_.generator_count();
    if (static_cast<int>(act_.size()) != g_.order())
      throw Error("bad-action", "need one action matrix per group element");
    for (int a = 0; a < g_.order(); ++a) {
      if (act_[a].rows() != n || act_[a].cols() != n) throw Error("bad-action", "action matrix has the wrong shape");
      GroupHom(m_, m_, act_[a]);
    }
    if (!same_map(act_[0], IntMatrix::identity(n))) throw Error("bad-action", "identity does not act trivially");
    for (int a = 0; a < g_.order(); ++a)
      for (int b = 0; b < g_.order(); ++b)
        if (!same_map(act_[a] * act_[b], act_[g_.mul(a, b)]))
          throw Error("bad-action", "action(" + std::to_string(a) + ")action(" + std::to_string(b) +
                                        ") != action(product)");
  }

  static GModule trivial(const FiniteGroup& g, const FgAbelianGroup& m) {
    return GModule(g, m, std::vector<IntMatrix>(g.order(), IntMatrix::identity(m.generator_count())));
  }

  // Z^rank with the given matrices.
  static GModule lattice(const FiniteGroup& g, std::vector<IntMatrix> action) {
    std::size_t r = action.empty() ? 0 : action[0].rows();
    return GModule(g, FgAbelianGroup::free(r), std::move(action));
  }

  const FiniteGroup& group() const { return g_; }
  const FgAbelianGroup& module() const { return m_; }
  const IntMatrix& action(int g) const { return act_[g]; }
  const std::vector<IntMatrix>& actions() const { return act_; }
  std::size_t dim() const { return m_.generator_count(); }

  Vec act(int g, const Vec& x) const { return act_[g] * x; }

  bool same_map(const IntMatrix& a, const IntMatrix& b) const {
    IntMatrix d = a - b;
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (!m_.is_zero(d.column(j))) return false;
    return true;
  }

  bool is_trivial_action() const {
    for (const auto& a : act_)
      if (!same_map(a, IntMatrix::identity(dim()))) return false;
    return true;
  }

  // Same module re-presented with diagonal relations (canonical generators).
  GModule canonical() const {
    FgAbelianGroup c = FgAbelianGroup::from_invariants(m_.invariants());
    std::vector<IntMatrix> a;
    for (const auto& r : act_) a.push_back(m_.to_canonical_matrix() * r * m_.from_canonical_matrix());
    return GModule(g_, c, std::move(a));
  }

 private:
  FiniteGroup g_;
  FgAbelianGroup m_;
  std::vector<IntMatrix> act_;
};

inline bool is_equivariant(const GModule& src, const GModule& tgt, const IntMatrix& f) {
  if (!(src.group() == tgt.group())) return false;
  for (int g = 0; g < src.group().order(); ++g)
    if (!tgt.same_map(f * src.action(g), tgt.action(g) * f)) return false;
  return true;
}

inline GModule direct_sum(const GModule& a, const GModule& b) {
  if (!(a.group() == b.group())) throw Error("group-mismatch", "direct sum over different groups");
  std::vector<IntMatrix> act;
  for (int g = 0; g < a.group().order(); ++g) act.push_back(IntMatrix::block_diag({a.action(g), b.action(g)}));
  return GModule(a.group(), direct_sum(a.module(), b.module()), std::move(act));
}

inline GModule restrict_module(const GModule& m, const SubgroupDatum& h) {
  if (!(m.group() == h.parent())) throw Error("group-mismatch", "subgroup of a different group");
  std::vector<IntMatrix> act;
  for (int k = 0; k < h.order(); ++k) act.push_back(m.action(h.from_sub(k)));
  return GModule(h.as_group(), m.module(), std::move(act));
}

inline IntMatrix stacked_differences(const GModule& m) {
  const std::size_t n = m.dim();
  IntMatrix s(0, n);
  for (int g = 1; g < m.group().order(); ++g) s = IntMatrix::vstack(s, m.action(g) - IntMatrix::identity(n));
  return s;
}

inline FgAbelianGroup power_group(const FgAbelianGroup& a, std::size_t k) {
  std::vector<IntMatrix> blocks(k, a.relations());
  return FgAbelianGroup(a.generator_count() * k, IntMatrix::block_diag(blocks));
}

inline GroupWithMap invariants(const GModule& m) {
  const std::size_t k = static_cast<std::size_t>(m.group().order() - 1);
  return kernel(GroupHom(m.module(), power_group(m.module(), k), stacked_differences(m)));
}

inline GroupWithMap coinvariants(const GModule& m) {
  const std::size_t k = static_cast<std::size_t>(m.group().order() - 1);
  return cokernel(GroupHom(power_group(m.module(), k), m.module(), stacked_differences(m).transpose()));
}

inline GroupHom norm_map(const GModule& m) {
  IntMatrix n(m.dim(), m.dim());
  for (int g = 0; g < m.group().order(); ++g) n = n + m.action(g);
  return GroupHom(m.module(), m.module(), n);
}

// I_G M as a subgroup of M.
inline GroupWithMap augmentation_submodule(const GModule& m) {
  std::vector<Vec> gens;
  for (int g = 1; g < m.group().order(); ++g) {
    IntMatrix d = m.action(g) - IntMatrix::identity(m.dim());
    for (std::size_t j = 0; j < d.cols(); ++j) gens.push_back(d.column(j));
  }
  return subgroup_generated(m.module(), gens);
}

// Ind_H^G m; block i corresponds to the coset r_i H, and g r_i = r_j h puts action_H(h) in block (j, i).
inline GModule induce(const SubgroupDatum& h, const GModule& m) {
  if (!(m.group() == h.as_group())) throw Error("group-mismatch", "module is not over the given subgroup");
  const FiniteGroup& g = h.parent();
  const std::size_t k = static_cast<std::size_t>(h.index()), n = m.dim();
  std::vector<IntMatrix> act;
  for (int x = 0; x < g.order(); ++x) {
    IntMatrix a(k * n, k * n);
    for (std::size_t i = 0; i < k; ++i) {
      int y = g.mul(x, h.reps()[i]);
      std::size_t j = static_cast<std::size_t>(h.coset_of(y));
      const IntMatrix& b = m.action(h.to_sub(h.h_part(y)));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(j * n + r, i * n + c) = b(r, c);
    }
    act.push_back(std::move(a));
  }
  return GModule(g, power_group(m.module(), k), std::move(act));
}

// Generator (i, j) of x (x) a has index i * dim(a) + j.
inline GModule tensor_module(const GModule& x, const GModule& a) {
  if (!(x.group() == a.group())) throw Error("group-mismatch", "tensor over different groups");
  const std::size_t nx = x.dim(), na = a.dim();
  IntMatrix rel = IntMatrix::hstack(IntMatrix::kron(x.module().relations(), IntMatrix::identity(na)),
                                    IntMatrix::kron(IntMatrix::identity(nx), a.module().relations()));
  std::vector<IntMatrix> act;
  for (int g = 0; g < x.group().order(); ++g) act.push_back(IntMatrix::kron(x.action(g), a.action(g)));
  return GModule(x.group(), FgAbelianGroup(nx * na, rel), std::move(act));
}

// Hom(x, a) with (g f)(v) = g f(g^-1 v). An element is stored by its coordinates
// in `module`; `inclusion` sends it to the stacked values f(e_0), ..., f(e_{k-1}) in a^k.
struct HomModule {
  GModule module;
  GroupHom inclusion;
  std::size_t source_dim = 0, target_dim = 0;

  // Column i holds f(e_i).
  IntMatrix as_matrix(const Vec& f) const {
    Vec v = inclusion.matrix() * f;
    IntMatrix out(target_dim, source_dim);
    for (std::size_t i = 0; i < source_dim; ++i)
      for (std::size_t r = 0; r < target_dim; ++r) out(r, i) = v[i * target_dim + r];
    return out;
  }

  Vec from_matrix(const IntMatrix& fm) const {
    Vec v(source_dim * target_dim);
    for (std::size_t i = 0; i < source_dim; ++i)
      for (std::size_t r = 0; r < target_dim; ++r) v[i * target_dim + r] = fm(r, i);
    auto pre = inclusion.preimage(v);
    if (!pre) throw Error("not-well-defined", "matrix does not define a homomorphism");
    return *pre;
  }
};

inline HomModule hom_module(const GModule& x, const GModule& a) {
  if (!(x.group() == a.group())) throw Error("group-mismatch", "Hom over different groups");
  auto fin_or_free = [](const FgAbelianGroup& g) { return g.is_finite() || g.rank() == g.canonical_count(); };
  if (!fin_or_free(x.module()) && !fin_or_free(a.module()))
    throw Error("not-representable", "Hom requires one side finite or free");
  const std::size_t nx = x.dim(), na = a.dim();
  FgAbelianGroup ax = power_group(a.module(), nx);
  const IntMatrix& rx = x.module().relations();
  GroupWithMap k = rx.cols() == 0 ? GroupWithMap{ax, GroupHom::identity(ax)}
                                  : kernel(GroupHom(ax, power_group(a.module(), rx.cols()),
                                                    IntMatrix::kron(rx.transpose(), IntMatrix::identity(na))));
  std::vector<IntMatrix> act;
  const FiniteGroup& g = x.group();
  for (int e = 0; e < g.order(); ++e) {
    IntMatrix big = IntMatrix::kron(x.action(g.inv(e)).transpose(), a.action(e));
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < k.group.generator_count(); ++j) {
      auto pre = k.map.preimage(big * k.map.matrix().column(j));
      if (!pre) throw Error("bad-action", "Hom action does not preserve homomorphisms");
      cols.push_back(*pre);
    }
    act.push_back(IntMatrix::from_columns(k.group.generator_count(), cols));
  }
  return {GModule(g, k.group, std::move(act)), k.map, nx, na};
}

// (Z/n)^r with the contragredient g -> action(g^-1)^T of a lattice action.
inline GModule dual_torus_points(const GModule& cochar, const Int& n) {
  if (n < 2) throw Error("bad-modulus", "modulus must be at least 2");
  const std::size_t r = cochar.dim();
  Vec d(r, n);
  std::vector<IntMatrix> act;
  for (int g = 0; g < cochar.group().order(); ++g) act.push_back(cochar.action(cochar.group().inv(g)).transpose());
  return GModule(cochar.group(), FgAbelianGroup::from_invariants(d), std::move(act));
}

// Free on the elements g - 1 (g != e); basis index g - 1.
inline GModule augmentation_ideal_module(const FiniteGroup& g) {
  const std::size_t n = static_cast<std::size_t>(g.order() - 1);
  std::vector<IntMatrix> act;
  for (int x = 0; x < g.order(); ++x) {
    IntMatrix a(n, n);
    for (int d = 1; d < g.order(); ++d) {
      int xd = g.mul(x, d);
      if (xd != 0) a(static_cast<std::size_t>(xd - 1), static_cast<std::size_t>(d - 1)) += 1;
      if (x != 0) a(static_cast<std::size_t>(x - 1), static_cast<std::size_t>(d - 1)) -= 1;
    }
    act.push_back(std::move(a));
  }
  return GModule::lattice(g, std::move(act));
}

}  // namespace torlang
