#include "plumbhf/char_lattice.hpp"

#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace plumbhf {

std::size_t CharVectorHash::operator()(const CharVector& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (auto x : k.pairings) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t UStateHash::operator()(const UState& s) const noexcept {
  std::size_t h = CharVectorHash{}(s.k);
  return h ^ (static_cast<std::size_t>(s.m) * 0x100000001b3ull + (h << 7));
}

Lattice::Lattice(PlumbingGraph graph)
    : graph_(std::move(graph)),
      form_(intersection_form(graph_).matrix),
      rational_form_(to_rational(form_)),
      form_class_(classify_form(graph_)) {
  if (form_class_.kind == FormKind::Unsupported)
    throw UnsupportedGraph("intersection form is neither negative definite nor corank-1 negative semidefinite");
  const std::size_t n = size();
  if (semidefinite()) {
    const auto kernel = kernel_basis(rational_form_);
    kernel_ = primitive_integer_vector(kernel.front());
    std::size_t r = 0;
    while ((*kernel_)[r] == 0) ++r;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 0, a = 0; i < n; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0, b = 0; j < n; ++j) {
        if (j == r) continue;
        minor(a, b++) = form_(i, j);
      }
      ++a;
    }
    const Integer z = (*kernel_)[r];
    torsion_count_ = abs(determinant(minor)) / (z * z);
  } else {
    torsion_count_ = abs(determinant(form_));
  }
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = 2 * form_(i, j);
    rows.push_back(std::move(row));
  }
  sector_lattice_ = HermiteLattice(n, rows);
}

bool Lattice::is_characteristic(const CharVector& k) const {
  if (k.size() != size()) return false;
  for (std::size_t v = 0; v < size(); ++v)
    if ((k[v] - weight(v)) % 2 != 0) return false;
  return true;
}

bool Lattice::is_torsion(const CharVector& k) const {
  if (!kernel_) return true;
  return dot(k.pairings, *kernel_) == 0;
}

std::int64_t Lattice::move_coefficient(const CharVector& k, std::size_t v) const { return (k[v] + weight(v)) / 2; }

void Lattice::shift_in_place(CharVector& k, std::size_t v, int s) const {
  const auto row = form_.row(v);
  for (std::size_t j = 0; j < size(); ++j) k[j] += 2 * s * row[j];
}

CharVector Lattice::shifted(const CharVector& k, std::size_t v, int s) const {
  CharVector out = k;
  shift_in_place(out, v, s);
  return out;
}

std::optional<UState> Lattice::apply_move(const UState& s, std::size_t v) const {
  const std::int64_t m = s.m + move_coefficient(s.k, v);
  if (m < 0) return std::nullopt;
  return UState{m, shifted(s.k, v, 1)};
}

std::optional<UState> Lattice::apply_inverse_move(const UState& s, std::size_t v) const {
  // n_v(K - 2PD[v]) = (<K,v> - 2m(v) + m(v))/2 = (<K,v> - m(v))/2
  const std::int64_t m = s.m - (s.k[v] - weight(v)) / 2;
  if (m < 0) return std::nullopt;
  return UState{m, shifted(s.k, v, -1)};
}

Rational Lattice::square(const CharVector& k) const {
  if (k.size() != size()) throw DimensionMismatch("square: vector has wrong length");
  const auto rhs = to_rational(k.pairings);
  const auto a = solve_linear(rational_form_, rhs);
  if (!a) throw NonTorsionError("K^2 is undefined for non-torsion vector " + format(k));
  return dot(k.pairings, *a);
}

Rational Lattice::level(const UState& s) const {
  const Rational shift = semidefinite() ? 3 : 0;
  return -(square(s.k) + static_cast<std::int64_t>(size()) - shift) / 4 + 2 * s.m;
}

std::optional<std::int64_t> Lattice::label_of(const CharVector& k) const {
  if (!kernel_) return std::nullopt;
  const Integer p = dot(k.pairings, *kernel_);
  return to_int64(Integer(p / 2));
}

SpinCClass Lattice::spinc_of(const CharVector& k) const {
  if (k.size() != size()) throw DimensionMismatch("spinc_of: vector has wrong length");
  SpinCClass out;
  out.representative.pairings = sector_lattice_.reduce(k.pairings);
  out.torsion = is_torsion(k);
  out.label = label_of(k);
  return out;
}

CharVector Lattice::some_torsion_vector() const {
  const std::size_t n = size();
  // Solve M a = diag(M) over F_2; the diagonal of a symmetric matrix always
  // lies in its column space mod 2.
  std::vector<std::vector<std::uint8_t>> rows(n, std::vector<std::uint8_t>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = static_cast<std::uint8_t>(form_(i, j) & 1);
    rows[i][n] = static_cast<std::uint8_t>(form_(i, i) & 1);
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t p = r;
    while (p < n && rows[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != r && rows[i][c])
        for (std::size_t j = c; j <= n; ++j) rows[i][j] ^= rows[r][j];
    pivots.push_back(c);
    ++r;
  }
  IntVector a(n, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) a[pivots[i]] = rows[i][n];
  CharVector k{IntVector(n, 0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k[i] += form_(i, j) * a[j];
  if (!is_characteristic(k)) throw Error("some_torsion_vector: parity solve failed");
  return k;
}

std::string Lattice::format(const CharVector& k) const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < k.size(); ++i) out << (i ? ", " : "") << k[i];
  out << ')';
  return out.str();
}

std::size_t default_max_states() {
  if (const char* env = std::getenv("PLUMBHF_MAX_STATES")) {
    try {
      const auto value = std::stoull(env);
      if (value > 0) return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
    }
  }
  return 2'000'000;
}

std::vector<SpinCClass> torsion_sectors(const Lattice& lattice, std::size_t cap) {
  // Torsion vectors are K0 + 2y with y in Z^n orthogonal to ker M; sectors are
  // the cosets of 2 im M. Generators of Z^n cap z-perp: e_i with z_i = 0 and
  // (z_j e_i - z_i e_j) / gcd for pairs.
  const std::size_t n = lattice.size();
  std::vector<IntVector> gens;
  const auto& z = lattice.kernel_generator();
  for (std::size_t i = 0; i < n; ++i) {
    if (!z || (*z)[i] == 0) {
      IntVector e(n, 0);
      e[i] = 1;
      gens.push_back(std::move(e));
      continue;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((*z)[j] == 0) continue;
      const auto g = std::gcd((*z)[i], (*z)[j]);
      IntVector e(n, 0);
      e[i] = (*z)[j] / g;
      e[j] = -(*z)[i] / g;
      gens.push_back(std::move(e));
    }
  }
  std::set<SpinCClass> seen;
  std::deque<CharVector> queue;
  const auto start = lattice.spinc_of(lattice.some_torsion_vector());
  seen.insert(start);
  queue.push_back(start.representative);
  while (!queue.empty()) {
    const auto k = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      CharVector next = k;
      for (std::size_t v = 0; v < n; ++v) next[v] += 2 * g[v];
      auto sector = lattice.spinc_of(next);
      if (seen.count(sector)) continue;
      if (seen.size() >= cap) throw StateCountExceeded("more than " + std::to_string(cap) + " torsion sectors");
      queue.push_back(sector.representative);
      seen.insert(std::move(sector));
    }
  }
  return {seen.begin(), seen.end()};
}

CharVector conjugate(const CharVector& k) {
  CharVector out = k;
  for (auto& x : out.pairings) x = -x;
  return out;
}

}  // namespace plumbhf
