#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "oracles.hpp"
#include "torlang/cohomology.hpp"

namespace oracle {

using torlang::GModule;

// A finite module as lookup tables on labels 0..size-1 (0 = zero).
struct ModuleTables {
  int size = 0;
  std::vector<std::vector<int>> add, act;
  std::vector<Vec> elems;  // raw coordinates

  explicit ModuleTables(const GModule& m) {
    const auto& a = m.module();
    Vec d = a.invariants();
    for (const auto& x : d)
      if (x == 0) throw torlang::Error("module-not-finite", "tables need a finite module");
    auto index = [&](const Vec& c) {
      long idx = 0, radix = 1;
      for (std::size_t i = 0; i < d.size(); ++i) {
        idx += torlang::mod_floor(c[i], d[i]).get_si() * radix;
        radix *= d[i].get_si();
      }
      return static_cast<int>(idx);
    };
    auto canon = a.elements_canonical();
    size = static_cast<int>(canon.size());
    std::vector<Vec> by_index(static_cast<std::size_t>(size));
    for (const auto& c : canon) by_index[static_cast<std::size_t>(index(c))] = c;
    for (const auto& c : by_index) elems.push_back(a.from_canonical(c));
    add.assign(static_cast<std::size_t>(size), std::vector<int>(static_cast<std::size_t>(size)));
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        add[i][j] = index(torlang::add_vec(by_index[static_cast<std::size_t>(i)], by_index[static_cast<std::size_t>(j)]));
    for (int g = 0; g < m.group().order(); ++g) {
      std::vector<int> row(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) row[static_cast<std::size_t>(i)] = index(a.to_canonical(m.act(g, elems[static_cast<std::size_t>(i)])));
      act.push_back(row);
    }
  }

  int neg(int x) const {
    for (int y = 0; y < size; ++y)
      if (add[x][y] == 0) return y;
    return 0;
  }
  int mul(long k, int x) const {
    int r = 0;
    for (long i = 0; i < k; ++i) r = add[r][x];
    return r;
  }
};

struct BruteCohomology {
  std::int64_t cocycles = 0, coboundaries = 0;
  Vec invariants;
};

// H^n(G, M) for n in {1, 2} by enumerating normalized cocycles and coboundaries.
inline BruteCohomology brute_cohomology(const GModule& m, int n) {
  const auto& G = m.group();
  const int g = G.order();
  ModuleTables t(m);
  const int cells = static_cast<int>(torlang::int_pow(static_cast<std::size_t>(g - 1), n));
  auto pos = [&](const std::vector<int>& tup) { return static_cast<int>(torlang::detail::nonid_index(tup, g)); };

  struct Term {
    int pos, act, sign;
  };
  std::vector<std::vector<Term>> all_conditions;
  const std::size_t nconds = torlang::int_pow(static_cast<std::size_t>(g - 1), n + 1);
  for (std::size_t c = 0; c < nconds; ++c) {
    auto tup = torlang::detail::nonid_tuple(c, g, n + 1);
    std::vector<Term> terms{{pos(std::vector<int>(tup.begin() + 1, tup.end())), tup[0], 1}};
    for (int i = 1; i <= n; ++i) {
      std::vector<int> u;
      bool zero = false;
      for (int j = 0; j < n + 1; ++j) {
        if (j == i) continue;
        int v = j == i - 1 ? G.mul(tup[j], tup[j + 1]) : tup[j];
        zero |= v == 0;
        u.push_back(v);
      }
      if (!zero) terms.push_back({pos(u), 0, i % 2 ? -1 : 1});
    }
    terms.push_back({pos(std::vector<int>(tup.begin(), tup.end() - 1)), 0, (n + 1) % 2 ? -1 : 1});
    all_conditions.push_back(terms);
  }
  // Branch on cells in an order that completes as many conditions as early as possible.
  std::vector<int> branch, rank(static_cast<std::size_t>(cells), -1);
  for (int step = 0; step < cells; ++step) {
    int best = -1, best_score = -1;
    for (int c = 0; c < cells; ++c) {
      if (rank[static_cast<std::size_t>(c)] >= 0) continue;
      int score = 0;
      for (const auto& cond : all_conditions) {
        bool uses = false, done = true;
        for (const auto& t : cond) {
          uses |= t.pos == c;
          done &= t.pos == c || rank[static_cast<std::size_t>(t.pos)] >= 0;
        }
        score += uses && done;
      }
      if (score > best_score) best = c, best_score = score;
    }
    rank[static_cast<std::size_t>(best)] = step;
    branch.push_back(best);
  }
  std::vector<std::vector<std::vector<Term>>> conditions(static_cast<std::size_t>(cells));
  for (const auto& cond : all_conditions) {
    int trig = 0;
    for (const auto& x : cond) trig = std::max(trig, rank[static_cast<std::size_t>(x.pos)]);
    conditions[static_cast<std::size_t>(trig)].push_back(cond);
  }
  auto encode = [&](const std::vector<int>& v) {
    std::uint64_t code = 0;
    for (int x : v) code = code * static_cast<std::uint64_t>(t.size) + static_cast<std::uint64_t>(x);
    return code;
  };

  std::vector<int> negs(static_cast<std::size_t>(t.size));
  for (int x = 0; x < t.size; ++x) negs[static_cast<std::size_t>(x)] = t.neg(x);

  // Coboundaries: images of all normalized (n-1)-cochains. Terms with pos = -1 vanish by normalization.
  std::vector<std::vector<Term>> dterms(static_cast<std::size_t>(cells));
  for (int c = 0; c < cells; ++c) {
    auto tup = torlang::detail::nonid_tuple(static_cast<std::size_t>(c), g, n);
    auto ppos = [&](const std::vector<int>& s) {
      for (int x : s)
        if (x == 0) return -1;
      return pos(s);
    };
    auto& d = dterms[static_cast<std::size_t>(c)];
    d.push_back({ppos(std::vector<int>(tup.begin() + 1, tup.end())), tup[0], 1});
    for (int i = 1; i < n; ++i) {
      std::vector<int> u;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        u.push_back(j == i - 1 ? G.mul(tup[j], tup[j + 1]) : tup[j]);
      }
      d.push_back({ppos(u), 0, i % 2 ? -1 : 1});
    }
    d.push_back({ppos(std::vector<int>(tup.begin(), tup.end() - 1)), 0, n % 2 ? -1 : 1});
  }
  std::unordered_set<std::uint64_t> bset;
  const int pcells = static_cast<int>(torlang::int_pow(static_cast<std::size_t>(g - 1), n - 1));
  std::vector<long> bounds(static_cast<std::size_t>(pcells), t.size);
  std::vector<int> v(static_cast<std::size_t>(cells));
  for_each_tuple(bounds, [&](const std::vector<long>& f) {
    for (int c = 0; c < cells; ++c) {
      int r = 0;
      for (const auto& term : dterms[static_cast<std::size_t>(c)]) {
        if (term.pos < 0) continue;
        int y = t.act[term.act][f[static_cast<std::size_t>(term.pos)]];
        r = t.add[r][term.sign > 0 ? y : negs[static_cast<std::size_t>(y)]];
      }
      v[static_cast<std::size_t>(c)] = r;
    }
    bset.insert(encode(v));
  });

  std::vector<long> divisors;
  for (long k = 1; k <= g; ++k)
    if (g % k == 0) divisors.push_back(k);
  std::vector<std::vector<int>> mult(divisors.size(), std::vector<int>(static_cast<std::size_t>(t.size)));
  for (std::size_t i = 0; i < divisors.size(); ++i)
    for (int x = 0; x < t.size; ++x) mult[i][static_cast<std::size_t>(x)] = t.mul(divisors[i], x);
  std::vector<std::int64_t> tors(divisors.size(), 0);

  // A condition mentioning the branch cell exactly once forces its value (each action is a bijection),
  // so values violating it are skipped without being tried.
  std::vector<int> pivot(static_cast<std::size_t>(cells), -1);
  for (int p = 0; p < cells; ++p) {
    const auto& conds = conditions[static_cast<std::size_t>(p)];
    for (std::size_t k = 0; k < conds.size() && pivot[static_cast<std::size_t>(p)] < 0; ++k) {
      int uses = 0;
      for (const auto& term : conds[k]) uses += term.pos == branch[static_cast<std::size_t>(p)];
      if (uses == 1) pivot[static_cast<std::size_t>(p)] = static_cast<int>(k);
    }
  }
  std::vector<std::vector<int>> act_inv(t.act.size(), std::vector<int>(static_cast<std::size_t>(t.size)));
  for (std::size_t a = 0; a < t.act.size(); ++a)
    for (int x = 0; x < t.size; ++x) act_inv[a][static_cast<std::size_t>(t.act[a][static_cast<std::size_t>(x)])] = x;

  BruteCohomology out;
  std::vector<int> val(static_cast<std::size_t>(cells), 0), scaled(static_cast<std::size_t>(cells));
  auto rec = [&](auto&& self, int p) -> void {
    if (p == cells) {
      ++out.cocycles;
      for (std::size_t i = 0; i < divisors.size(); ++i) {
        for (int c = 0; c < cells; ++c) scaled[static_cast<std::size_t>(c)] = mult[i][static_cast<std::size_t>(val[static_cast<std::size_t>(c)])];
        tors[i] += bset.count(encode(scaled));
      }
      return;
    }
    const std::size_t cell = static_cast<std::size_t>(branch[static_cast<std::size_t>(p)]);
    int lo = 0, hi = t.size;
    if (int k = pivot[static_cast<std::size_t>(p)]; k >= 0) {
      int s = 0;
      Term self_term{};
      for (const auto& term : conditions[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)]) {
        if (term.pos == static_cast<int>(cell)) {
          self_term = term;
          continue;
        }
        int y = t.act[term.act][val[static_cast<std::size_t>(term.pos)]];
        s = t.add[s][term.sign > 0 ? y : negs[static_cast<std::size_t>(y)]];
      }
      int target = self_term.sign > 0 ? negs[static_cast<std::size_t>(s)] : s;
      lo = act_inv[static_cast<std::size_t>(self_term.act)][static_cast<std::size_t>(target)];
      hi = lo + 1;
    }
    for (int x = lo; x < hi; ++x) {
      val[cell] = x;
      bool ok = true;
      for (const auto& cond : conditions[static_cast<std::size_t>(p)]) {
        int s = 0;
        for (const auto& term : cond) {
          int y = t.act[term.act][val[static_cast<std::size_t>(term.pos)]];
          s = t.add[s][term.sign > 0 ? y : negs[static_cast<std::size_t>(y)]];
        }
        if (s != 0) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, p + 1);
    }
  };
  rec(rec, 0);
  out.coboundaries = static_cast<std::int64_t>(bset.size());
  const std::int64_t order = out.cocycles / out.coboundaries;
  out.invariants = invariants_from_torsion_counts(order, [&](std::int64_t k) {
    long kk = std::gcd(static_cast<long>(k), static_cast<long>(g));
    for (std::size_t i = 0; i < divisors.size(); ++i)
      if (divisors[i] == kk) return tors[i] / out.coboundaries;
    return std::int64_t{0};
  });
  return out;
}

}  // namespace oracle
