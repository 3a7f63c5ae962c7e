#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torlang/gaction.hpp"

namespace torlang {

// Values on Gamma^n, tuple (g_1, ..., g_n) stored at index sum g_i |Gamma|^(n-i).
struct Cochain {
  int degree = 0;
  std::vector<Vec> values;
};

inline std::size_t int_pow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline std::vector<int> decode_tuple(std::size_t code, int g, int n) {
  std::vector<int> t(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::size_t>(g));
    code /= static_cast<std::size_t>(g);
  }
  return t;
}

inline std::size_t encode_tuple(const std::vector<int>& t, int g) {
  std::size_t c = 0;
  for (int x : t) c = c * static_cast<std::size_t>(g) + static_cast<std::size_t>(x);
  return c;
}

inline bool has_identity(const std::vector<int>& t) {
  for (int x : t)
    if (x == 0) return true;
  return false;
}

inline Cochain zero_cochain(const GModule& m, int n) {
  return {n, std::vector<Vec>(int_pow(static_cast<std::size_t>(m.group().order()), n), zero_vec(m.dim()))};
}

// Normalized cochain from a formula evaluated on tuples without identity entries.
inline Cochain make_cochain(const GModule& m, int n, const std::function<Vec(const std::vector<int>&)>& f) {
  Cochain c = zero_cochain(m, n);
  const int g = m.group().order();
  for (std::size_t code = 0; code < c.values.size(); ++code) {
    auto t = decode_tuple(code, g, n);
    if (!has_identity(t)) c.values[code] = m.module().reduce(f(t));
  }
  return c;
}

inline const Vec& eval(const Cochain& c, const GModule& m, const std::vector<int>& t) {
  return c.values[encode_tuple(t, m.group().order())];
}

inline bool is_normalized(const GModule& m, const Cochain& c) {
  const int g = m.group().order();
  for (std::size_t code = 0; code < c.values.size(); ++code)
    if (has_identity(decode_tuple(code, g, c.degree)) && !m.module().is_zero(c.values[code])) return false;
  return true;
}

inline Cochain add(const GModule& m, const Cochain& a, const Cochain& b, const Int& k = 1) {
  Cochain r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = m.module().reduce(add_vec(a.values[i], scale_vec(k, b.values[i])));
  return r;
}

inline bool cochain_equal(const GModule& m, const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (!m.module().equal(a.values[i], b.values[i])) return false;
  return true;
}

// (df)(g_1..g_{n+1}) = g_1 f(g_2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g_1..g_n).
inline Cochain coboundary(const GModule& m, const Cochain& f) {
  const FiniteGroup& G = m.group();
  const int n = f.degree, g = G.order();
  Cochain out = zero_cochain(m, n + 1);
  for (std::size_t code = 0; code < out.values.size(); ++code) {
    auto t = decode_tuple(code, g, n + 1);
    Vec s = m.act(t[0], eval(f, m, std::vector<int>(t.begin() + 1, t.end())));
    for (int i = 1; i <= n; ++i) {
      std::vector<int> u;
      for (int j = 0; j < n + 1; ++j) {
        if (j == i) continue;
        u.push_back(j == i - 1 ? G.mul(t[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j + 1)])
                               : t[static_cast<std::size_t>(j)]);
      }
      s = add_vec(s, scale_vec(i % 2 ? -1 : 1, eval(f, m, u)));
    }
    s = add_vec(s, scale_vec((n + 1) % 2 ? -1 : 1, eval(f, m, std::vector<int>(t.begin(), t.end() - 1))));
    out.values[code] = m.module().reduce(s);
  }
  return out;
}

// Bilinear G-equivariant map left x right -> target; matrix is target.dim x (left.dim * right.dim),
// column i * right.dim + j holding the image of (e_i, e_j).
struct Pairing {
  GModule left, right, target;
  IntMatrix matrix;

  Pairing(GModule l, GModule r, GModule t, IntMatrix m)
      : left(std::move(l)), right(std::move(r)), target(std::move(t)), matrix(std::move(m)) {
    if (!(left.group() == right.group()) || !(left.group() == target.group()))
      throw Error("group-mismatch", "pairing modules over different groups");
    if (matrix.rows() != target.dim() || matrix.cols() != left.dim() * right.dim())
      throw Error("not-bilinear", "pairing matrix has the wrong shape");
    GModule tensor = tensor_module(left, right);
    try {
      GroupHom(tensor.module(), target.module(), matrix);
    } catch (const Error&) {
      throw Error("not-bilinear", "pairing does not vanish on relations");
    }
    if (!is_equivariant(tensor, target, matrix)) throw Error("not-bilinear", "pairing is not equivariant");
  }

  Vec apply(const Vec& a, const Vec& b) const {
    Vec ab(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) ab[i * b.size() + j] = a[i] * b[j];
    return target.module().reduce(matrix * ab);
  }
};

// (c1 u c2)(g_1..g_{p+q}) = pairing(c1(g_1..g_p), g_1...g_p c2(g_{p+1}..)).
inline Cochain cup_product(const Cochain& c1, const Cochain& c2, const Pairing& pr) {
  const FiniteGroup& G = pr.target.group();
  const int p = c1.degree, q = c2.degree, g = G.order();
  Cochain out = zero_cochain(pr.target, p + q);
  for (std::size_t code = 0; code < out.values.size(); ++code) {
    auto t = decode_tuple(code, g, p + q);
    std::vector<int> head(t.begin(), t.begin() + p), tail(t.begin() + p, t.end());
    int prod = 0;
    for (int x : head) prod = G.mul(prod, x);
    out.values[code] = pr.apply(eval(c1, pr.left, head), pr.right.act(prod, eval(c2, pr.right, tail)));
  }
  return out;
}

namespace detail {

// Canonical coordinates of a module: k coordinates with moduli d, action matrices P rho Q.
struct CanonicalModule {
  IntMatrix p, q;
  Vec d;
  std::vector<IntMatrix> act;
  std::size_t k = 0;

  explicit CanonicalModule(const GModule& m)
      : p(m.module().to_canonical_matrix()), q(m.module().from_canonical_matrix()), d(m.module().invariants()) {
    k = d.size();
    for (const auto& a : m.actions()) act.push_back(p * a * q);
  }

  Vec moduli(std::size_t blocks) const {
    Vec out;
    for (std::size_t b = 0; b < blocks; ++b) out.insert(out.end(), d.begin(), d.end());
    return out;
  }

  Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i], d[i % k]);
    return v;
  }
};

inline std::size_t nonid_index(const std::vector<int>& t, int g) {
  std::size_t c = 0;
  for (int x : t) c = c * static_cast<std::size_t>(g - 1) + static_cast<std::size_t>(x - 1);
  return c;
}

inline std::vector<int> nonid_tuple(std::size_t code, int g, int n) {
  std::vector<int> t(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::size_t>(g - 1)) + 1;
    code /= static_cast<std::size_t>(g - 1);
  }
  return t;
}

inline void add_block(IntMatrix& m, std::size_t r0, std::size_t c0, const IntMatrix& b, int sign) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (b(i, j) != 0) m(r0 + i, c0 + j) += sign * b(i, j);
}

// Coboundary C^n -> C^{n+1} on normalized cochains in canonical coordinates.
inline IntMatrix coboundary_matrix(const FiniteGroup& G, const CanonicalModule& cm, int n) {
  const int g = G.order();
  const std::size_t k = cm.k, rows = int_pow(static_cast<std::size_t>(g - 1), n + 1),
                    cols = int_pow(static_cast<std::size_t>(g - 1), n);
  IntMatrix d(rows * k, cols * k);
  const IntMatrix id = IntMatrix::identity(k);
  for (std::size_t r = 0; r < rows; ++r) {
    auto t = nonid_tuple(r, g, n + 1);
    add_block(d, r * k, nonid_index(std::vector<int>(t.begin() + 1, t.end()), g) * k, cm.act[static_cast<std::size_t>(t[0])], 1);
    for (int i = 1; i <= n; ++i) {
      std::vector<int> u;
      bool zero = false;
      for (int j = 0; j < n + 1; ++j) {
        if (j == i) continue;
        int v = j == i - 1 ? G.mul(t[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j + 1)]) : t[static_cast<std::size_t>(j)];
        if (v == 0) zero = true;
        u.push_back(v);
      }
      if (!zero) add_block(d, r * k, nonid_index(u, g) * k, id, i % 2 ? -1 : 1);
    }
    add_block(d, r * k, nonid_index(std::vector<int>(t.begin(), t.end() - 1), g) * k, id, (n + 1) % 2 ? -1 : 1);
  }
  return d;
}

inline IntMatrix with_moduli(const IntMatrix& gens, const Vec& moduli) {
  IntMatrix diag(moduli.size(), 0);
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (moduli[i] != 0) cols.push_back(scale_vec(moduli[i], unit_vec(moduli.size(), i)));
  return IntMatrix::hstack(gens, IntMatrix::from_columns(moduli.size(), cols));
}

}  // namespace detail

// A cohomology group realized as a subquotient of integer vectors. For degrees >= 0
// (and Tate degrees 0, -1) the vectors are normalized cochains in canonical module
// coordinates; for Tate degree -2 they are formal sums of group elements.
class CohomologyGroup {
 public:
  CohomologyGroup(int degree, bool tate, GModule module, Subquotient sq, IntMatrix boundary)
      : degree_(degree), tate_(tate), m_(std::move(module)), cm_(m_), sq_(std::move(sq)), boundary_(std::move(boundary)) {}

  int degree() const { return degree_; }
  bool is_tate() const { return tate_; }
  const GModule& module() const { return m_; }
  const FgAbelianGroup& group() const { return sq_.group(); }
  const Subquotient& subquotient() const { return sq_; }

  int cochain_degree() const { return degree_ < 0 ? 0 : degree_; }

  Vec to_vector(const Cochain& c) const {
    const int g = m_.group().order(), n = cochain_degree();
    if (c.degree != n) throw Error("bad-cochain", "cochain degree does not match the cohomology group");
    const std::size_t cells = int_pow(static_cast<std::size_t>(g - 1), n);
    Vec v;
    v.reserve(cells * cm_.k);
    for (std::size_t r = 0; r < cells; ++r) {
      Vec x = cm_.p * c.values[encode_tuple(detail::nonid_tuple(r, g, n), g)];
      v.insert(v.end(), x.begin(), x.end());
    }
    return cm_.reduce(v);
  }

  Cochain from_vector(const Vec& v) const {
    const int g = m_.group().order(), n = cochain_degree();
    Cochain c = zero_cochain(m_, n);
    const std::size_t cells = int_pow(static_cast<std::size_t>(g - 1), n);
    for (std::size_t r = 0; r < cells; ++r) {
      Vec x(v.begin() + static_cast<std::ptrdiff_t>(r * cm_.k), v.begin() + static_cast<std::ptrdiff_t>((r + 1) * cm_.k));
      c.values[encode_tuple(detail::nonid_tuple(r, g, n), g)] = m_.module().reduce(cm_.q * x);
    }
    return c;
  }

  Cochain representative(std::size_t i) const { return from_vector(sq_.representative(i)); }
  Cochain lift(const Vec& coords) const { return from_vector(sq_.lift(coords)); }

  // Canonical coordinates of the class of a cocycle, or nothing if it is not a cocycle.
  std::optional<Vec> classify(const Cochain& c) const {
    if (degree_ == -2) throw Error("unsupported-degree", "use classify_element in degree -2");
    if (!is_normalized(m_, c)) throw Error("bad-cochain", "cochain is not normalized");
    return sq_.classify(to_vector(c));
  }

  // Degree -2 only: the class of a group element in the abelianization.
  Vec classify_element(int g) const {
    if (degree_ != -2) throw Error("unsupported-degree", "classify_element applies to degree -2");
    return *sq_.classify(unit_vec(static_cast<std::size_t>(m_.group().order()), static_cast<std::size_t>(g)));
  }

  // For ordinary degree n >= 1: some (n-1)-cochain w with dw == c, if c is a coboundary.
  std::optional<Cochain> coboundary_witness(const Cochain& c) const {
    if (degree_ < 1) throw Error("unsupported-degree", "witnesses exist in degrees >= 1");
    auto z = solve_integer(boundary_, to_vector(c));
    if (!z) return std::nullopt;
    const int g = m_.group().order(), n = degree_ - 1;
    const std::size_t cells = int_pow(static_cast<std::size_t>(g - 1), n);
    Cochain w = zero_cochain(m_, n);
    for (std::size_t r = 0; r < cells; ++r) {
      Vec x(z->begin() + static_cast<std::ptrdiff_t>(r * cm_.k), z->begin() + static_cast<std::ptrdiff_t>((r + 1) * cm_.k));
      w.values[encode_tuple(detail::nonid_tuple(r, g, n), g)] = m_.module().reduce(cm_.q * x);
    }
    return w;
  }

  bool is_generator(const Vec& coords) const {
    const FgAbelianGroup& g = group();
    return is_surjective(GroupHom(FgAbelianGroup::free(1), g, IntMatrix::from_columns(g.generator_count(), {g.from_canonical(coords)})));
  }

  std::string to_string() const { return group().to_string(); }

 private:
  int degree_;
  bool tate_;
  GModule m_;
  detail::CanonicalModule cm_;
  Subquotient sq_;
  IntMatrix boundary_;
};

inline CohomologyGroup cohomology(const GModule& m, int n, int max_degree = 3) {
  if (n < 0) throw Error("unsupported-degree", "ordinary cohomology needs degree >= 0");
  if (n > max_degree) throw Error("degree-too-large", "degree " + std::to_string(n) + " exceeds the bound " + std::to_string(max_degree));
  const FiniteGroup& G = m.group();
  detail::CanonicalModule cm(m);
  const std::size_t g1 = static_cast<std::size_t>(G.order() - 1);
  IntMatrix dn = detail::coboundary_matrix(G, cm, n);
  Vec src_mod = cm.moduli(int_pow(g1, n)), tgt_mod = cm.moduli(int_pow(g1, n + 1));
  IntMatrix l = kernel_mod(dn, tgt_mod, src_mod);
  IntMatrix b = n == 0 ? IntMatrix(src_mod.size(), 0) : detail::coboundary_matrix(G, cm, n - 1);
  IntMatrix i = detail::with_moduli(b, src_mod);
  return CohomologyGroup(n, false, m, Subquotient(l, i), i);
}

// Gamma^ab as Z^Gamma modulo [a] + [b] - [ab].
inline FgAbelianGroup abelianization(const FiniteGroup& G) {
  const std::size_t g = static_cast<std::size_t>(G.order());
  IntMatrix rel(g, g * g);
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b) {
      std::size_t c = static_cast<std::size_t>(a) * g + static_cast<std::size_t>(b);
      rel(static_cast<std::size_t>(a), c) += 1;
      rel(static_cast<std::size_t>(b), c) += 1;
      rel(static_cast<std::size_t>(G.mul(a, b)), c) -= 1;
    }
  return FgAbelianGroup(g, rel);
}

inline CohomologyGroup tate_cohomology(const GModule& m, int i) {
  if (i >= 1) return cohomology(m, i);
  const FiniteGroup& G = m.group();
  detail::CanonicalModule cm(m);
  IntMatrix id = IntMatrix::identity(cm.k);
  if (i == 0 || i == -1) {
    IntMatrix norm(cm.k, cm.k), diffs(cm.k, 0), stacked(0, cm.k);
    for (int g = 0; g < G.order(); ++g) norm = norm + cm.act[static_cast<std::size_t>(g)];
    for (int g = 1; g < G.order(); ++g) {
      diffs = IntMatrix::hstack(diffs, cm.act[static_cast<std::size_t>(g)] - id);
      stacked = IntMatrix::vstack(stacked, cm.act[static_cast<std::size_t>(g)] - id);
    }
    if (i == 0) {
      IntMatrix l = kernel_mod(stacked, cm.moduli(static_cast<std::size_t>(G.order() - 1)), cm.d);
      IntMatrix den = detail::with_moduli(norm, cm.d);
      return CohomologyGroup(0, true, m, Subquotient(l, den), den);
    }
    IntMatrix l = kernel_mod(norm, cm.d, cm.d);
    IntMatrix den = detail::with_moduli(diffs, cm.d);
    return CohomologyGroup(-1, true, m, Subquotient(l, den), den);
  }
  if (i == -2) {
    bool trivial_z = m.module().invariants() == Vec{Int(0)} && m.is_trivial_action();
    if (!trivial_z) throw Error("unsupported-degree", "degree -2 is only supported for trivial Z coefficients");
    FgAbelianGroup ab = abelianization(G);
    IntMatrix all = IntMatrix::identity(static_cast<std::size_t>(G.order()));
    return CohomologyGroup(-2, true, m, Subquotient(all, ab.relations()), ab.relations());
  }
  throw Error("unsupported-degree", "Tate degree " + std::to_string(i) + " is out of scope");
}

// res to H: evaluate on tuples of H (relabelled by the subgroup's own labels).
inline Cochain restrict_cochain(const SubgroupDatum& h, const Cochain& f) {
  const int gh = h.order(), g = h.parent().order();
  Cochain out{f.degree, std::vector<Vec>(int_pow(static_cast<std::size_t>(gh), f.degree))};
  for (std::size_t code = 0; code < out.values.size(); ++code) {
    auto t = decode_tuple(code, gh, f.degree);
    for (auto& x : t) x = h.from_sub(x);
    out.values[code] = f.values[encode_tuple(t, g)];
  }
  return out;
}

// cor(f)(g_1..g_n) = sum_c r_c f(h_c(g_1), h_{g_1^-1 c}(g_2), ...), h_c(g) = r_c^-1 g r_{g^-1 c}.
inline Cochain corestrict_cochain(const SubgroupDatum& h, const GModule& m, const Cochain& f) {
  const FiniteGroup& G = h.parent();
  if (!(m.group() == G)) throw Error("group-mismatch", "module is not over the parent group");
  const int n = f.degree, gh = h.order();
  return make_cochain(m, n, [&](const std::vector<int>& t) {
    Vec s = zero_vec(m.dim());
    for (int c = 0; c < h.index(); ++c) {
      int rc = h.reps()[static_cast<std::size_t>(c)];
      int cur = c;
      std::vector<int> args;
      for (int x : t) {
        int next = h.coset_of(G.mul(G.inv(x), h.reps()[static_cast<std::size_t>(cur)]));
        int hx = G.mul(G.mul(G.inv(h.reps()[static_cast<std::size_t>(cur)]), x), h.reps()[static_cast<std::size_t>(next)]);
        args.push_back(h.to_sub(hx));
        cur = next;
      }
      s = add_vec(s, m.act(rc, f.values[encode_tuple(args, gh)]));
    }
    return s;
  });
}

// The Gamma-module underlying a module over a bigger group on which the kernel of q acts trivially.
inline GModule descend_module(const GModule& big, const FiniteGroup& small, const std::vector<int>& q) {
  check_quotient_map(big.group(), small, q);
  std::vector<IntMatrix> act(static_cast<std::size_t>(small.order()));
  std::vector<bool> set(static_cast<std::size_t>(small.order()), false);
  for (int x = 0; x < big.group().order(); ++x) {
    auto s = static_cast<std::size_t>(q[static_cast<std::size_t>(x)]);
    if (!set[s]) {
      act[s] = big.action(x);
      set[s] = true;
    } else if (!big.same_map(act[s], big.action(x))) {
      throw Error("coefficient-not-fixed", "the kernel of the quotient map acts nontrivially on the coefficients");
    }
  }
  return GModule(small, big.module(), std::move(act));
}

inline Cochain inflate_cochain(const GModule& big, const FiniteGroup& small, const std::vector<int>& q, const Cochain& f) {
  descend_module(big, small, q);
  const int n = f.degree, gb = big.group().order(), gs = small.order();
  Cochain out{n, std::vector<Vec>(int_pow(static_cast<std::size_t>(gb), n))};
  for (std::size_t code = 0; code < out.values.size(); ++code) {
    auto t = decode_tuple(code, gb, n);
    for (auto& x : t) x = q[static_cast<std::size_t>(x)];
    out.values[code] = f.values[encode_tuple(t, gs)];
  }
  return out;
}

// Transport a class along a cochain map, returning target coordinates.
inline Vec map_class(const CohomologyGroup& src, const CohomologyGroup& tgt, const Vec& coords,
                     const std::function<Cochain(const Cochain&)>& f) {
  auto c = tgt.classify(f(src.lift(coords)));
  if (!c) throw Error("not-a-cocycle", "cochain map did not produce a cocycle");
  return *c;
}

// The induced map of abstract groups for a cochain map.
inline GroupHom induced_map(const CohomologyGroup& src, const CohomologyGroup& tgt,
                            const std::function<Cochain(const Cochain&)>& f) {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < src.group().generator_count(); ++i) {
    Vec c = src.group().to_canonical(unit_vec(src.group().generator_count(), i));
    cols.push_back(tgt.group().from_canonical(map_class(src, tgt, c, f)));
  }
  return GroupHom(src.group(), tgt.group(), IntMatrix::from_columns(tgt.group().generator_count(), cols));
}

}  // namespace torlang
