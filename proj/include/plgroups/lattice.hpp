#pragma once

// Integer lattices in Z^n kept in row Hermite normal form.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plgroups/error.hpp"
#include "plgroups/scalar.hpp"

namespace plg {

using IntVector = std::vector<Integer>;

namespace detail {

struct Bezout {
  Integer g, x, y;  // g = x*a + y*b, g >= 0
};

inline Bezout extended_gcd(Integer a, Integer b) {
  Integer x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Integer q = a / b;
    Integer r = a - q * b;
    a = std::move(b);
    b = std::move(r);
    Integer nx = x0 - q * x1;
    Integer ny = y0 - q * y1;
    x0 = std::move(x1);
    x1 = std::move(nx);
    y0 = std::move(y1);
    y1 = std::move(ny);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

// Fraction-free (Bareiss) determinant.
inline Integer determinant(std::vector<IntVector> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace detail

class Lattice {
 public:
  explicit Lattice(std::size_t dim = 0) : dim_(dim) {}

  /// The lattice spanned by the given vectors.
  static Lattice span(std::size_t dim, const std::vector<IntVector>& vectors) {
    Lattice lat(dim);
    for (auto& v : vectors) {
      if (v.size() != dim) fail(ErrorKind::InvalidInput, "vector dimension mismatch");
    }
    lat.rows_ = hermite(vectors, dim);
    return lat;
  }

  /// L1 x L2 inside Z^(n1+n2).
  static Lattice product(const Lattice& a, const Lattice& b) {
    std::vector<IntVector> rows;
    for (auto& r : a.rows_) {
      IntVector v(r);
      v.resize(a.dim_ + b.dim_, 0);
      rows.push_back(std::move(v));
    }
    for (auto& r : b.rows_) {
      IntVector v(a.dim_, 0);
      v.insert(v.end(), r.begin(), r.end());
      rows.push_back(std::move(v));
    }
    return span(a.dim_ + b.dim_, rows);
  }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<IntVector>& rows() const { return rows_; }

  /// Integer coordinates of v in the HNF basis, if v lies in the lattice.
  std::optional<IntVector> coordinates(IntVector v) const {
    if (v.size() != dim_) fail(ErrorKind::InvalidInput, "vector dimension mismatch");
    IntVector coords;
    coords.reserve(rows_.size());
    std::size_t col = 0;
    for (auto& row : rows_) {
      std::size_t pivot = pivot_of(row);
      for (; col < pivot; ++col) {
        if (v[col] != 0) return std::nullopt;
      }
      if (v[pivot] % row[pivot] != 0) return std::nullopt;
      Integer q = v[pivot] / row[pivot];
      for (std::size_t j = pivot; j < dim_; ++j) v[j] -= q * row[j];
      coords.push_back(std::move(q));
      col = pivot + 1;
    }
    for (; col < dim_; ++col) {
      if (v[col] != 0) return std::nullopt;
    }
    return coords;
  }

  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }

  bool contains(const Lattice& sub) const {
    if (sub.dim_ != dim_) fail(ErrorKind::InvalidInput, "lattices live in different ambient spaces");
    for (auto& r : sub.rows_) {
      if (!contains(r)) return false;
    }
    return true;
  }

  /// Index [*this : sub] for a sublattice; nullopt when infinite.
  std::optional<Integer> index_of(const Lattice& sub) const {
    if (!contains(sub)) fail(ErrorKind::InvalidInput, "index requires a sublattice");
    if (sub.rank() < rank()) return std::nullopt;
    std::vector<IntVector> m;
    for (auto& r : sub.rows_) m.push_back(*coordinates(r));
    Integer det = detail::determinant(std::move(m));
    return det < 0 ? Integer(-det) : det;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i) s += ",";
      s += "[";
      for (std::size_t j = 0; j < dim_; ++j) {
        if (j) s += ",";
        s += rows_[i][j].str();
      }
      s += "]";
    }
    return s + "]";
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  static std::size_t pivot_of(const IntVector& row) {
    std::size_t j = 0;
    while (row[j] == 0) ++j;
    return j;
  }

  static std::vector<IntVector> hermite(std::vector<IntVector> m, std::size_t dim) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < m.size(); ++c) {
      // Fold every lower entry of column c into row r.
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        if (m[r][c] == 0) {
          std::swap(m[r], m[i]);
          continue;
        }
        auto [g, x, y] = detail::extended_gcd(m[r][c], m[i][c]);
        Integer u = m[r][c] / g;
        Integer w = m[i][c] / g;
        for (std::size_t j = c; j < dim; ++j) {
          Integer top = x * m[r][j] + y * m[i][j];
          Integer bottom = u * m[i][j] - w * m[r][j];
          m[r][j] = std::move(top);
          m[i][j] = std::move(bottom);
        }
      }
      if (m[r][c] == 0) continue;
      if (m[r][c] < 0) {
        for (std::size_t j = c; j < dim; ++j) m[r][j] = -m[r][j];
      }
      for (std::size_t i = 0; i < r; ++i) {
        Integer q = detail::floor_div(m[i][c], m[r][c]);
        if (q == 0) continue;
        for (std::size_t j = c; j < dim; ++j) m[i][j] -= q * m[r][j];
      }
      ++r;
    }
    m.resize(r);
    return m;
  }

  std::size_t dim_ = 0;
  std::vector<IntVector> rows_;
};

}  // namespace plg
