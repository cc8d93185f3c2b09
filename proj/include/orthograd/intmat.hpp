#pragma once

// Exact integer matrices and Smith normal form.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "orthograd/common.hpp"

namespace orthograd {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVec>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw precondition_error("from_rows: ragged row lengths");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVec row(std::size_t i) const {
    return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  bool operator==(const IntMatrix&) const = default;

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw precondition_error("matrix product: shape mismatch");
    IntMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Int& b = o(k, j);
          if (b != 0) p(i, j) += a * b;
        }
      }
    return p;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k)
      std::swap((*this)(i, k), (*this)(j, k));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k)
      std::swap((*this)(k, i), (*this)(k, j));
  }

  // row i -= q * row j
  void row_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) -= q * (*this)(j, k);
  }

  // col i -= q * col j
  void col_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) -= q * (*this)(k, j);
  }

  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      Int& x = (*this)(i, k);
      x = -x;
    }
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

// u * a * v = d with u, v unimodular and d diagonal, d(i,i) >= 0,
// d(i,i) | d(i+1,i+1).
struct SmithDecomposition {
  IntMatrix d, u, v;

  std::vector<Int> diagonal() const {
    std::vector<Int> out;
    std::size_t m = std::min(d.rows(), d.cols());
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back(d(i, i));
    return out;
  }
};

// Elimination with smallest-pivot selection to limit entry growth.
inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
  SmithDecomposition s{a, IntMatrix::identity(a.rows()),
                       IntMatrix::identity(a.cols())};
  IntMatrix& d = s.d;
  const std::size_t r = a.rows(), c = a.cols();
  const std::size_t m = std::min(r, c);

  for (std::size_t t = 0; t < m; ++t) {
    // Smallest nonzero entry of the trailing submatrix becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j) {
        const Int& x = d(i, j);
        if (x == 0) continue;
        if (!found || abs(x) < abs(d(pi, pj))) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    d.swap_rows(t, pi);
    s.u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    s.v.swap_cols(t, pj);

    for (;;) {
      // Clear column t below the pivot; swaps keep shrinking the pivot.
      for (std::size_t i = t + 1; i < r; ++i) {
        while (d(i, t) != 0) {
          Int q = d(i, t) / d(t, t);
          d.row_axpy(i, t, q);
          s.u.row_axpy(i, t, q);
          if (d(i, t) != 0) {
            d.swap_rows(i, t);
            s.u.swap_rows(i, t);
          }
        }
      }
      // Clear row t right of the pivot; a column swap dirties column t,
      // so restart the whole clearing pass when that happens.
      bool dirtied = false;
      for (std::size_t j = t + 1; j < c; ++j) {
        while (d(t, j) != 0) {
          Int q = d(t, j) / d(t, t);
          d.col_axpy(j, t, q);
          s.v.col_axpy(j, t, q);
          if (d(t, j) != 0) {
            d.swap_cols(j, t);
            s.v.swap_cols(j, t);
            dirtied = true;
          }
        }
      }
      if (dirtied) continue;
      // Pivot must divide the trailing submatrix; fold a bad row in and redo.
      bool fixed = true;
      for (std::size_t i = t + 1; i < r && fixed; ++i)
        for (std::size_t j = t + 1; j < c && fixed; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.row_axpy(t, i, Int(-1));
            s.u.row_axpy(t, i, Int(-1));
            fixed = false;
          }
      if (fixed) break;
    }

    if (d(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
    }
  }
  return s;
}

// Diagonal of the Smith form, min(rows, cols) entries, zeros trailing.
inline std::vector<Int> elementary_divisors(const IntMatrix& a) {
  return smith_normal_form(a).diagonal();
}

// Fraction-free elimination; exact for any square integer matrix.
inline Int det_bareiss(IntMatrix m) {
  if (m.rows() != m.cols()) throw precondition_error("det: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && m(i, k) == 0) ++i;
      if (i == n) return 0;
      m.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  Int out = m(n - 1, n - 1);
  if (sign < 0) out = -out;
  return out;
}

// Text format: optional '#' comment lines, a "rows cols" header, then one
// whitespace-separated row per line.
inline IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto next_content = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string content;
  if (!next_content(content)) throw input_error("matrix file: missing header");
  std::istringstream head(content);
  long long rows = -1, cols = -1;
  std::string extra;
  if (!(head >> rows >> cols) || (head >> extra) || rows < 0 || cols < 0)
    throw input_error("matrix file: bad header at line " + std::to_string(lineno));

  IntMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!next_content(content))
      throw input_error("matrix file: expected " + std::to_string(rows) +
                        " rows, got " + std::to_string(i));
    std::istringstream rowin(content);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::string tok;
      if (!(rowin >> tok))
        throw input_error("matrix file: short row at line " + std::to_string(lineno));
      try {
        m(i, j) = Int(tok);
      } catch (const std::exception&) {
        throw input_error("matrix file: bad integer '" + tok + "' at line " +
                          std::to_string(lineno));
      }
    }
    std::string tok;
    if (rowin >> tok)
      throw input_error("matrix file: trailing token '" + tok + "' at line " +
                        std::to_string(lineno));
  }
  if (next_content(content))
    throw input_error("matrix file: trailing content at line " + std::to_string(lineno));
  return m;
}

inline std::string write_matrix(const IntMatrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace orthograd
