#include "plumbhf/exact_linalg.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace plumbhf {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// In-place reduced row echelon form; returns the pivot column of each
// nonzero row.
std::vector<std::size_t> rref(RationalMatrix& a, RationalVector* rhs) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
      if (rhs) std::swap((*rhs)[p], (*rhs)[r]);
    }
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    if (rhs) (*rhs)[r] *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
      if (rhs) (*rhs)[i] -= f * (*rhs)[r];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

RationalVector to_rational(std::span<const std::int64_t> v) {
  return RationalVector(v.begin(), v.end());
}

RationalVector multiply(const RationalMatrix& m, std::span<const Rational> v) {
  if (m.cols() != v.size()) throw DimensionMismatch("multiply: matrix/vector size mismatch");
  RationalVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const std::int64_t> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Rational(a[i]) * b[i];
  return s;
}

Integer dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Integer(a[i]) * b[i];
  return s;
}

std::optional<RationalVector> solve_linear(const RationalMatrix& m, std::span<const Rational> b) {
  if (m.rows() != b.size()) throw DimensionMismatch("solve_linear: right-hand side has wrong length");
  RationalMatrix a = m;
  RationalVector rhs(b.begin(), b.end());
  const auto pivots = rref(a, &rhs);
  for (std::size_t i = pivots.size(); i < a.rows(); ++i)
    if (rhs[i] != 0) return std::nullopt;
  RationalVector x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rhs[i];
#ifndef NDEBUG
  const auto check = multiply(m, x);
  for (std::size_t i = 0; i < check.size(); ++i)
    if (check[i] != b[i]) throw Error("solve_linear: internal post-check failed");
#endif
  return x;
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
  RationalMatrix a = m;
  const auto pivots = rref(a, nullptr);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (!m.square()) throw DimensionMismatch("inverse: matrix is not square");
  const std::size_t n = m.rows();
  RationalMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  const auto pivots = rref(a, nullptr);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, n + j);
  return out;
}

namespace {

// Bareiss elimination; returns the rank and (for square input) the
// determinant up to the sign of the row swaps, which is tracked.
std::pair<std::size_t, Integer> bareiss(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);
  Integer prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  Integer det = 0;
  if (rows == cols && r == rows) det = sign * a[rows - 1][cols - 1];
  return {r, det};
}

}  // namespace

Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw DimensionMismatch("determinant: matrix is not square");
  if (m.rows() == 0) return 1;
  return bareiss(m).second;
}

std::size_t rank(const IntMatrix& m) { return bareiss(m).first; }

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix a = m;
  return rref(a, nullptr).size();
}

Inertia symmetric_inertia(const RationalMatrix& m) {
  if (!m.square()) throw DimensionMismatch("symmetric_inertia: matrix is not square");
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Inertia out;
  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, p) == 0) ++p;
    if (p == n) {
      // No diagonal pivot left; manufacture one from an off-diagonal entry.
      std::size_t bi = n, bj = n;
      for (std::size_t i = k; i < n && bi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi == n) {
        out.zero += n - k;
        break;
      }
      for (std::size_t c = 0; c < n; ++c) a(bi, c) += a(bj, c);
      for (std::size_t r = 0; r < n; ++r) a(r, bi) += a(r, bj);
      p = bi;
    }
    swap_index(k, p);
    const Rational pivot = a(k, k);
    (pivot > 0 ? out.positive : out.negative) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / pivot;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = k; j < n; ++j) a(j, i) = a(i, j);
    }
  }
  return out;
}

IntVector primitive_integer_vector(std::span<const Rational> v) {
  Integer lcm = 1;
  for (const auto& x : v) {
    const Integer d = boost::multiprecision::denominator(x);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<Integer> ints;
  ints.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    ints.push_back(boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x)));
    g = boost::multiprecision::gcd(g, ints.back());
  }
  if (g == 0) throw Error("primitive_integer_vector: zero vector");
  IntVector out;
  out.reserve(v.size());
  int sign = 0;
  for (const auto& x : ints) {
    if (sign == 0 && x != 0) sign = x > 0 ? 1 : -1;
  }
  for (const auto& x : ints) out.push_back(to_int64(Integer(x / g * sign)));
  return out;
}

HermiteLattice::HermiteLattice(std::size_t dimension, const std::vector<IntVector>& rows)
    : dimension_(dimension) {
  std::vector<std::vector<Integer>> a;
  for (const auto& row : rows) {
    if (row.size() != dimension) throw DimensionMismatch("HermiteLattice: row has wrong length");
    if (std::all_of(row.begin(), row.end(), [](auto x) { return x == 0; })) continue;
    a.emplace_back(row.begin(), row.end());
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < dimension && r < a.size(); ++c) {
    while (true) {
      std::size_t best = a.size();
      for (std::size_t i = r; i < a.size(); ++i)
        if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c]))) best = i;
      if (best == a.size()) break;
      std::swap(a[best], a[r]);
      bool cleared = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        const Integer q = a[i][c] / a[r][c];
        for (std::size_t j = c; j < dimension; ++j) a[i][j] -= q * a[r][j];
        if (a[i][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = floor_div(a[i][c], a[r][c]);
      if (q != 0)
        for (std::size_t j = c; j < dimension; ++j) a[i][j] -= q * a[r][j];
    }
    pivots_.push_back(c);
    ++r;
  }
  a.resize(r);
  basis_ = std::move(a);
}

IntVector HermiteLattice::reduce(std::span<const std::int64_t> v) const {
  if (v.size() != dimension_) throw DimensionMismatch("HermiteLattice::reduce: wrong vector length");
  std::vector<Integer> x(v.begin(), v.end());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const std::size_t p = pivots_[k];
    const Integer q = floor_div(x[p], basis_[k][p]);
    if (q == 0) continue;
    for (std::size_t j = p; j < dimension_; ++j) x[j] -= q * basis_[k][j];
  }
  IntVector out;
  out.reserve(dimension_);
  for (const auto& e : x) out.push_back(to_int64(e));
  return out;
}

bool HermiteLattice::contains(std::span<const std::int64_t> v) const {
  const auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; });
}

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    const Integer num(text.substr(0, slash));
    const Integer den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in rational '" + text + "'");
    // cpp_rational rejects a negative denominator
    return den < 0 ? Rational(-num, -den) : Rational(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed rational '" + text + "'");
  }
}

std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error("integer does not fit in 64 bits: " + v.str());
  return static_cast<std::int64_t>(v);
}

std::int64_t to_int64(const Rational& v) {
  if (boost::multiprecision::denominator(v) != 1) throw Error("expected an integral rational, got " + to_string(v));
  return to_int64(Integer(boost::multiprecision::numerator(v)));
}

}  // namespace plumbhf
