#pragma once

#include <algorithm>
#include <optional>

#include "torlang/matrix.hpp"

namespace torlang {

// u * m * v == s, with u_inv the inverse of u.
struct SmithForm {
  IntMatrix s, u, v, u_inv;
  std::size_t rank = 0;

  Int diag(std::size_t i) const { return i < s.rows() && i < s.cols() ? s(i, i) : Int(0); }
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  SmithForm f{m, IntMatrix::identity(R), IntMatrix::identity(C), IntMatrix::identity(R), 0};
  IntMatrix& a = f.s;

  auto row_add = [&](std::size_t i, std::size_t j, const Int& k) {  // row_i += k row_j
    if (k == 0) return;
    for (std::size_t c = 0; c < C; ++c)
      if (a(j, c) != 0) a(i, c) += k * a(j, c);
    for (std::size_t c = 0; c < R; ++c)
      if (f.u(j, c) != 0) f.u(i, c) += k * f.u(j, c);
    for (std::size_t r = 0; r < R; ++r)
      if (f.u_inv(r, i) != 0) f.u_inv(r, j) -= k * f.u_inv(r, i);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < C; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < R; ++c) std::swap(f.u(i, c), f.u(j, c));
    for (std::size_t r = 0; r < R; ++r) std::swap(f.u_inv(r, i), f.u_inv(r, j));
  };
  auto row_neg = [&](std::size_t i) {
    for (std::size_t c = 0; c < C; ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < R; ++c) f.u(i, c) = -f.u(i, c);
    for (std::size_t r = 0; r < R; ++r) f.u_inv(r, i) = -f.u_inv(r, i);
  };
  auto col_add = [&](std::size_t i, std::size_t j, const Int& k) {  // col_i += k col_j
    if (k == 0) return;
    for (std::size_t r = 0; r < R; ++r)
      if (a(r, j) != 0) a(r, i) += k * a(r, j);
    for (std::size_t r = 0; r < C; ++r)
      if (f.v(r, j) != 0) f.v(r, i) += k * f.v(r, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < R; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < C; ++r) std::swap(f.v(r, i), f.v(r, j));
  };

  const std::size_t D = std::min(R, C);
  for (std::size_t t = 0; t < D; ++t) {
    for (;;) {
      std::size_t pi = R, pj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (a(i, j) != 0 && (pi == R || mpz_cmpabs(a(i, j).get_mpz_t(), a(pi, pj).get_mpz_t()) < 0)) pi = i, pj = j;
      if (pi == R) {
        f.rank = t;
        return f;
      }
      row_swap(t, pi);
      col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a(i, t) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_add(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a(t, j) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_add(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == R) break;
      row_add(t, bad, 1);
    }
    if (a(t, t) < 0) row_neg(t);
  }
  f.rank = D;
  for (std::size_t t = 0; t < D; ++t)
    if (a(t, t) == 0) {
      f.rank = t;
      break;
    }
  return f;
}

// Some x with a * x == b over Z, if one exists.
inline std::optional<Vec> solve_integer(const IntMatrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw Error("bad-matrix", "right-hand side length mismatch");
  SmithForm f = smith_normal_form(a);
  Vec z = f.u * b;
  Vec y(a.cols(), Int(0));
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i < f.rank) {
      if (!mpz_divisible_p(z[i].get_mpz_t(), f.s(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), z[i].get_mpz_t(), f.s(i, i).get_mpz_t());
    } else if (z[i] != 0) {
      return std::nullopt;
    }
  }
  return f.v * y;
}

// Generators (as columns) of { x in Z^N : c x == 0 mod row_moduli }, where the
// lattice is known to contain diag(col_moduli); those vectors are appended.
// A modulus of 0 means an exact equation / an unreduced coordinate.
inline IntMatrix kernel_mod(const IntMatrix& c, const Vec& row_moduli, const Vec& col_moduli) {
  const std::size_t N = c.cols();
  if (row_moduli.size() != c.rows() || col_moduli.size() != N)
    throw Error("bad-matrix", "modulus vector length mismatch");
  std::vector<Vec> basis;
  for (std::size_t j = 0; j < N; ++j) basis.push_back(unit_vec(N, j));

  auto reduce_col = [&](Vec& v) {
    for (std::size_t k = 0; k < N; ++k)
      if (col_moduli[k] != 0) v[k] = mod_floor(v[k], col_moduli[k]);
  };

  for (std::size_t i = 0; i < c.rows(); ++i) {
    const Int& m = row_moduli[i];
    std::vector<Int> w(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Int s = 0;
      for (std::size_t k = 0; k < N; ++k)
        if (c(i, k) != 0 && basis[j][k] != 0) s += c(i, k) * basis[j][k];
      w[j] = mod_floor(s, m);
    }
    auto weight = [](const Vec& v) {
      std::size_t b = 0;
      for (const auto& x : v)
        if (x != 0) b += mpz_sizeinbase(x.get_mpz_t(), 2);
      return b;
    };
    std::size_t p = basis.size();
    for (;;) {
      p = basis.size();
      std::size_t pw = 0;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (w[j] == 0) continue;
        int cmp = p == basis.size() ? -1 : mpz_cmpabs(w[j].get_mpz_t(), w[p].get_mpz_t());
        if (cmp > 0) continue;
        std::size_t wj = weight(basis[j]);
        if (cmp < 0 || wj < pw) p = j, pw = wj;
      }
      if (p == basis.size()) break;
      bool done = true;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (j == p || w[j] == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), w[j].get_mpz_t(), w[p].get_mpz_t());
        for (std::size_t k = 0; k < N; ++k)
          if (basis[p][k] != 0) basis[j][k] -= q * basis[p][k];
        reduce_col(basis[j]);
        w[j] = mod_floor(w[j] - q * w[p], m);
        if (w[j] != 0) done = false;
      }
      if (done) break;
    }
    if (p == basis.size()) continue;
    if (m == 0) {
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(p));
    } else {
      Int scale = m / gcd_int(w[p], m);
      for (auto& x : basis[p]) x *= scale;
      reduce_col(basis[p]);
    }
  }
  std::vector<Vec> out;
  for (auto& v : basis)
    if (!is_zero_vec(v)) out.push_back(std::move(v));
  for (std::size_t k = 0; k < N; ++k)
    if (col_moduli[k] != 0) out.push_back(scale_vec(col_moduli[k], unit_vec(N, k)));
  return IntMatrix::from_columns(N, out);
}

// A sublattice of Z^N with a basis and a coordinate solver.
class Lattice {
 public:
  explicit Lattice(const IntMatrix& generators) : f_(smith_normal_form(generators)) {
    const std::size_t N = generators.rows();
    basis_ = IntMatrix(N, f_.rank);
    for (std::size_t j = 0; j < f_.rank; ++j)
      for (std::size_t i = 0; i < N; ++i) basis_(i, j) = f_.u_inv(i, j) * f_.s(j, j);
  }

  std::size_t rank() const { return f_.rank; }
  const IntMatrix& basis() const { return basis_; }

  std::optional<Vec> coords(const Vec& y) const {
    Vec z = f_.u * y;
    Vec c(f_.rank);
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (i < f_.rank) {
        if (!mpz_divisible_p(z[i].get_mpz_t(), f_.s(i, i).get_mpz_t())) return std::nullopt;
        mpz_divexact(c[i].get_mpz_t(), z[i].get_mpz_t(), f_.s(i, i).get_mpz_t());
      } else if (z[i] != 0) {
        return std::nullopt;
      }
    }
    return c;
  }

  bool contains(const Vec& y) const { return coords(y).has_value(); }

 private:
  SmithForm f_;
  IntMatrix basis_;
};

}  // namespace torlang
