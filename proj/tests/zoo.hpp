#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "torlang/gaction.hpp"

namespace zoo {

using namespace torlang;

struct Entry {
  std::string name;
  GModule module;
};

inline std::vector<int> generating_set(const FiniteGroup& g) {
  std::vector<int> gens;
  std::size_t covered = 1;
  for (int x = 1; x < g.order() && covered < static_cast<std::size_t>(g.order()); ++x) {
    auto with = gens;
    with.push_back(x);
    auto s = generated_members(g, with);
    if (s.size() > covered) gens = with, covered = s.size();
  }
  return gens;
}

// Homomorphisms g -> (Z/d)^x, as value tables.
inline std::vector<std::vector<long>> unit_characters(const FiniteGroup& g, long d) {
  std::vector<long> units;
  for (long u = 1; u < d; ++u)
    if (std::gcd(u, d) == 1) units.push_back(u);
  if (d == 2) units = {1};
  auto gens = generating_set(g);
  std::vector<std::vector<long>> out;
  std::vector<std::size_t> pick(gens.size(), 0);
  for (;;) {
    std::vector<long> val(g.order(), 0);
    val[0] = 1 % d;
    std::vector<int> frontier{0};
    bool ok = true;
    while (!frontier.empty() && ok) {
      std::vector<int> next;
      for (int x : frontier)
        for (std::size_t k = 0; k < gens.size(); ++k) {
          int y = g.mul(x, gens[k]);
          long v = val[x] * units[pick[k]] % d;
          if (val[y] == 0) {
            val[y] = v;
            next.push_back(y);
          } else if (val[y] != v) {
            ok = false;
          }
        }
      frontier = std::move(next);
    }
    for (int a = 0; ok && a < g.order(); ++a)
      for (int b = 0; ok && b < g.order(); ++b)
        if (val[g.mul(a, b)] != val[a] * val[b] % d) ok = false;
    if (ok) out.push_back(val);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == units.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

inline GModule character_module(const FiniteGroup& g, long d, const std::vector<long>& chi) {
  std::vector<IntMatrix> act;
  for (int x = 0; x < g.order(); ++x) act.push_back(IntMatrix{{chi[x]}});
  return GModule(g, FgAbelianGroup::cyclic(d), std::move(act));
}

inline std::string character_name(long d, const std::vector<long>& chi) {
  std::string s = "Z/" + std::to_string(d) + "(";
  for (std::size_t i = 0; i < chi.size(); ++i) s += (i ? "," : "") + std::to_string(chi[i]);
  return s + ")";
}

// Finite modules built from unit characters, induced characters and direct sums.
inline std::vector<Entry> finite_modules(const FiniteGroup& g, long max_order, const std::vector<long>& moduli,
                                         bool with_sums = true) {
  std::vector<Entry> base;
  for (long d : moduli) {
    if (d > max_order) continue;
    for (const auto& chi : unit_characters(g, d)) base.push_back({character_name(d, chi), character_module(g, d, chi)});
  }
  for (const auto& h : all_subgroups(g)) {
    if (h.order() == g.order()) continue;
    FiniteGroup hg = h.as_group();
    for (long d : moduli) {
      long ord = 1;
      for (int i = 0; i < h.index(); ++i) ord *= d;
      if (ord > max_order) continue;
      for (const auto& chi : unit_characters(hg, d))
        base.push_back({"Ind_" + std::to_string(h.order()) + " " + character_name(d, chi),
                        induce(h, character_module(hg, d, chi))});
    }
  }
  std::vector<Entry> out = base;
  if (with_sums)
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t j = i; j < base.size(); ++j)
        if (base[i].module.module().order() * base[j].module.module().order() <= max_order)
          out.push_back({base[i].name + " + " + base[j].name, direct_sum(base[i].module, base[j].module)});
  return out;
}

}  // namespace zoo
