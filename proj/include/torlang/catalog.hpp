#pragma once

#include <string>
#include <vector>

#include "torlang/frobloop.hpp"
#include "torlang/langlands.hpp"

namespace torlang::catalog {

// u(a, b) = 1 if a + b >= n (reduced mod `mod` when nonzero): the class of 0 -> nZ -> Z -> Z/n -> 0.
inline std::vector<Vec> carry_cocycle(int n, const Int& mod = 0) {
  std::vector<Vec> u;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Int v = a + b >= n ? 1 : 0;
      u.push_back({mod == 0 ? v : mod_floor(v, mod)});
    }
  return u;
}

inline GModule sign_lattice(const FiniteGroup& c2) {
  return GModule::lattice(c2, {IntMatrix::identity(1), IntMatrix::from_rows({{-1}}, 1)});
}

inline GModule permutation_lattice(int n) {
  FiniteGroup c = FiniteGroup::cyclic(n);
  std::vector<IntMatrix> act;
  for (int g = 0; g < n; ++g) {
    IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m(static_cast<std::size_t>((i + g) % n), static_cast<std::size_t>(i)) = 1;
    act.push_back(m);
  }
  return GModule::lattice(c, act);
}

inline TorusDatum gm_split() {
  FiniteGroup one = FiniteGroup::trivial();
  return make_torus("gm_split", GModule::trivial(one, FgAbelianGroup::free(1)), AmbientDatum{one, {0}, 0},
                    IntMatrix::identity(1));
}

inline TorusDatum norm1_unramified() {
  FiniteGroup one = FiniteGroup::trivial();
  return make_torus("norm1_unramified", GModule::trivial(one, FgAbelianGroup::free(1)),
                    AmbientDatum{FiniteGroup::cyclic(2), {0}, 1}, IntMatrix::from_rows({{-1}}, 1));
}

inline TorusDatum norm1_ramified() {
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  return make_torus("norm1_ramified", sign_lattice(c2), AmbientDatum{c2, {0, 1}, 0}, IntMatrix::identity(1));
}

inline TorusDatum induced_torus(int n) {
  FiniteGroup c = FiniteGroup::cyclic(n);
  std::vector<int> emb;
  for (int g = 0; g < n; ++g) emb.push_back(g);
  FiniteGroup one = FiniteGroup::trivial();
  return make_torus(n == 2 ? "induced_quadratic" : n == 3 ? "induced_cubic" : "induced_c" + std::to_string(n),
                    permutation_lattice(n), AmbientDatum{c, emb, 0}, IntMatrix::identity(static_cast<std::size_t>(n)),
                    InducedFrom{{0}, GModule::trivial(one, FgAbelianGroup::free(1))});
}

inline TorusDatum induced_quadratic() { return induced_torus(2); }
inline TorusDatum induced_cubic() { return induced_torus(3); }

inline TorusDatum diag_swap() {
  FiniteGroup one = FiniteGroup::trivial();
  return make_torus("diag_swap", GModule::trivial(one, FgAbelianGroup::free(2)), AmbientDatum{FiniteGroup::cyclic(2), {0}, 1},
                    IntMatrix::from_rows({{0, 1}, {1, 0}}, 2));
}

inline std::vector<TorusDatum> default_tori() {
  return {gm_split(), norm1_unramified(), norm1_ramified(), induced_quadratic(), induced_cubic(), diag_swap()};
}

// Gamma = C_n, A = Z trivial, carry cocycle, identity Frobenius; n = 1 is the trivial-inertia model.
inline ClassFormationDatum unramified(int n) {
  FiniteGroup c = FiniteGroup::cyclic(n);
  return make_formation("unram_c" + std::to_string(n),
                        ExtensionGroup(GModule::trivial(c, FgAbelianGroup::free(1)), carry_cocycle(n)));
}

// Gamma = C_n, A = Z/mod trivial, carry cocycle reduced mod `mod`.
inline ClassFormationDatum finite_toy(int n, long mod) {
  FiniteGroup c = FiniteGroup::cyclic(n);
  return make_formation("toy_c" + std::to_string(n) + "_mod" + std::to_string(mod),
                        ExtensionGroup(GModule::trivial(c, FgAbelianGroup::cyclic(mod)), carry_cocycle(n, mod)));
}

template <class T>
struct Named {
  std::string name;
  T value;
};

inline std::vector<ClassFormationDatum> default_formations() {
  std::vector<ClassFormationDatum> out;
  for (int n = 1; n <= 6; ++n) out.push_back(unramified(n));
  out.push_back(finite_toy(2, 4));
  out.push_back(finite_toy(3, 2));
  return out;
}

inline std::vector<Named<GModule>> default_gmodules() {
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  return {{"c2_zminus", sign_lattice(c2)},
          {"c2_ztriv", GModule::trivial(c2, FgAbelianGroup::free(1))},
          {"c3_perm", permutation_lattice(3)},
          {"c4_z8_x3", GModule(FiniteGroup::cyclic(4), FgAbelianGroup::cyclic(8),
                               {IntMatrix::identity(1), IntMatrix::from_rows({{3}}, 1), IntMatrix::identity(1),
                                IntMatrix::from_rows({{3}}, 1)})}};
}

inline FrobeniusModule frobenius_module(const Vec& invariants, const IntMatrix& f) {
  return FrobeniusModule(FgAbelianGroup::from_invariants(invariants), f);
}

inline std::vector<Named<FrobeniusModule>> default_frobmodules() {
  return {{"z8_x3", frobenius_module({Int(8)}, IntMatrix::from_rows({{3}}, 1))},
          {"z16_x3", frobenius_module({Int(16)}, IntMatrix::from_rows({{3}}, 1))},
          {"z26_x3", frobenius_module({Int(26)}, IntMatrix::from_rows({{3}}, 1))},
          {"z_minus", frobenius_module({Int(0)}, IntMatrix::from_rows({{-1}}, 1))},
          {"z2_swap", frobenius_module({Int(0), Int(0)}, IntMatrix::from_rows({{0, 1}, {1, 0}}, 2))},
          {"z4z4_fib", frobenius_module({Int(4), Int(4)}, IntMatrix::from_rows({{0, 1}, {1, 1}}, 2))}};
}

struct ShippedFiltration {
  std::string name, base;
  FiltrationDatum filtration;
};

inline std::vector<ShippedFiltration> default_filtrations() {
  std::vector<ShippedFiltration> out;
  for (const auto& [name, p] : default_frobmodules()) {
    if (name == "z8_x3") out.push_back({"z8_x3_chain", name, FiltrationDatum(p, {{{1}}, {{2}}, {{4}}, {{0}}})});
    if (name == "z16_x3") out.push_back({"z16_x3_chain", name, FiltrationDatum(p, {{{1}}, {{2}}, {{4}}, {{8}}, {{0}}})});
    if (name == "z_minus") out.push_back({"z_minus_chain", name, FiltrationDatum(p, {{{1}}, {{2}}, {{4}}})});
    if (name == "z4z4_fib") out.push_back({"z4z4_fib_chain", name, FiltrationDatum(p, {{{1, 0}, {0, 1}}, {{2, 0}, {0, 2}}, {{0, 0}}})});
  }
  return out;
}

}  // namespace torlang::catalog
