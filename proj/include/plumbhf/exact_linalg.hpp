#pragma once

// Exact integer/rational linear algebra used by all lattice computations.
// Nothing in here touches floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plumbhf/errors.hpp"

namespace plumbhf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<std::int64_t>;
using RationalVector = std::vector<Rational>;

// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RationalMatrix = Matrix<Rational>;

RationalMatrix to_rational(const IntMatrix& m);
RationalVector to_rational(std::span<const std::int64_t> v);

RationalVector multiply(const RationalMatrix& m, std::span<const Rational> v);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational dot(std::span<const std::int64_t> a, std::span<const Rational> b);
Integer dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

// Some exact solution a of M a = b, or nullopt when b is outside the column
// span. Gauss-Jordan elimination; free variables are set to zero.
std::optional<RationalVector> solve_linear(const RationalMatrix& m, std::span<const Rational> b);

// Basis of the null space, one vector per free column of the reduced row
// echelon form. Empty iff M has full column rank.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);

std::optional<RationalMatrix> inverse(const RationalMatrix& m);

// Fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);
std::size_t rank(const RationalMatrix& m);

struct Inertia {
  std::size_t positive = 0;
  std::size_t zero = 0;
  std::size_t negative = 0;

  bool operator==(const Inertia&) const = default;
};

// Signature of a symmetric matrix by congruence diagonalisation. When every
// remaining diagonal entry vanishes but an off-diagonal entry a_ij does not,
// row/column j is added to row/column i to create the pivot 2 a_ij.
Inertia symmetric_inertia(const RationalMatrix& m);

// Scale a nonzero rational vector to a primitive integer vector whose first
// nonzero entry is positive.
IntVector primitive_integer_vector(std::span<const Rational> v);

// Lattice spanned by integer row vectors, kept in row Hermite normal form
// (pivots positive, entries above a pivot reduced into [0, pivot)).
class HermiteLattice {
 public:
  HermiteLattice() = default;
  HermiteLattice(std::size_t dimension, const std::vector<IntVector>& rows);

  std::size_t dimension() const { return dimension_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<std::vector<Integer>>& basis() const { return basis_; }

  // Canonical representative of v modulo the lattice: every pivot coordinate
  // lands in [0, pivot). Constant on cosets and idempotent.
  IntVector reduce(std::span<const std::int64_t> v) const;

  bool contains(std::span<const std::int64_t> v) const;

 private:
  std::size_t dimension_ = 0;
  std::vector<std::vector<Integer>> basis_;
  std::vector<std::size_t> pivots_;
};

// Normalised "p/q" (or "p" when q == 1).
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

std::int64_t to_int64(const Integer& v);
std::int64_t to_int64(const Rational& v);  // requires an integral value

}  // namespace plumbhf
