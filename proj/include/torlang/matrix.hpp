#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torlang/error.hpp"

namespace torlang {

using Int = mpz_class;
using Vec = std::vector<Int>;

inline Vec zero_vec(std::size_t n) { return Vec(n, Int(0)); }

inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, Int(0));
  v[i] = 1;
  return v;
}

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Vec add_vec(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Vec sub_vec(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline Vec scale_vec(const Int& c, const Vec& a) {
  Vec r(a);
  for (auto& x : r) x *= c;
  return r;
}

inline Vec concat_vec(const Vec& a, const Vec& b) {
  Vec r(a);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// Non-negative remainder; m == 0 leaves x untouched.
inline Int mod_floor(const Int& x, const Int& m) {
  if (m == 0) return x;
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Dense row-major integer matrix with exact entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Int(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (const auto& row : rows) {
      if (row.size() != c_) throw Error("bad-matrix", "ragged initializer");
      for (long x : row) a_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const Vec& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static IntMatrix from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error("bad-matrix", "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("bad-matrix", "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  const std::vector<Int>& entries() const { return a_; }

  Vec column(std::size_t j) const {
    Vec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vec row(std::size_t i) const { return Vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

  std::vector<Vec> columns() const {
    std::vector<Vec> out;
    out.reserve(c_);
    for (std::size_t j = 0; j < c_; ++j) out.push_back(column(j));
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  bool is_square() const { return r_ == c_; }

  IntMatrix select_columns(const std::vector<std::size_t>& idx) const {
    IntMatrix m(r_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t i = 0; i < r_; ++i) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  IntMatrix select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix m(idx.size(), c_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    check_same(a, b);
    IntMatrix r(a);
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
    return r;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    check_same(a, b);
    IntMatrix r(a);
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
    return r;
  }

  friend IntMatrix operator*(const Int& c, const IntMatrix& a) {
    IntMatrix r(a);
    for (auto& x : r.a_) x *= c;
    return r;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.c_ != b.r_) throw Error("bad-matrix", "dimension mismatch in product");
    IntMatrix r(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const Int& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.c_; ++j)
          if (b(k, j) != 0) r(i, j) += x * b(k, j);
      }
    return r;
  }

  friend Vec operator*(const IntMatrix& a, const Vec& v) {
    if (a.c_ != v.size()) throw Error("bad-matrix", "dimension mismatch in matrix-vector product");
    Vec r(a.r_, Int(0));
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k)
        if (v[k] != 0 && a(i, k) != 0) r[i] += a(i, k) * v[k];
    return r;
  }

  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.r_ != b.r_) throw Error("bad-matrix", "row mismatch in hstack");
    IntMatrix m(a.r_, a.c_ + b.c_);
    for (std::size_t i = 0; i < a.r_; ++i) {
      for (std::size_t j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.c_; ++j) m(i, a.c_ + j) = b(i, j);
    }
    return m;
  }

  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.c_ != b.c_) throw Error("bad-matrix", "column mismatch in vstack");
    IntMatrix m(a.r_ + b.r_, a.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.r_; ++i)
      for (std::size_t j = 0; j < a.c_; ++j) m(a.r_ + i, j) = b(i, j);
    return m;
  }

  static IntMatrix block_diag(const std::vector<IntMatrix>& blocks) {
    std::size_t R = 0, C = 0;
    for (const auto& b : blocks) R += b.r_, C += b.c_;
    IntMatrix m(R, C);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < b.r_; ++i)
        for (std::size_t j = 0; j < b.c_; ++j) m(r0 + i, c0 + j) = b(i, j);
      r0 += b.r_;
      c0 += b.c_;
    }
    return m;
  }

  // Kronecker product a (x) b.
  static IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.r_ * b.r_, a.c_ * b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t j = 0; j < a.c_; ++j) {
        if (a(i, j) == 0) continue;
        for (std::size_t k = 0; k < b.r_; ++k)
          for (std::size_t l = 0; l < b.c_; ++l) m(i * b.r_ + k, j * b.c_ + l) = a(i, j) * b(k, l);
      }
    return m;
  }

  // Fraction-free Bareiss elimination.
  Int determinant() const {
    if (r_ != c_) throw Error("bad-matrix", "determinant of non-square matrix");
    if (r_ == 0) return 1;
    IntMatrix m(*this);
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < r_; ++k) {
      if (m(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < r_ && m(p, k) == 0) ++p;
        if (p == r_) return 0;
        for (std::size_t j = 0; j < c_; ++j) std::swap(m(k, j), m(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < r_; ++i)
        for (std::size_t j = k + 1; j < c_; ++j) {
          Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
          mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
          m(i, j) = t;
        }
      prev = m(k, k);
    }
    return sign * m(r_ - 1, c_ - 1);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  static void check_same(const IntMatrix& a, const IntMatrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw Error("bad-matrix", "shape mismatch");
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<Int> a_;
};

}  // namespace torlang
