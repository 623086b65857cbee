#pragma once

// Characteristic vectors, Spin^c sectors, squares and levels, and the moves
// K -> K + 2PD[v] of the dual model.
//
// A characteristic vector is stored as its pairing vector <K, v>, so adding
// 2PD[v] adds twice row v of the intersection form.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plumbhf/exact_linalg.hpp"
#include "plumbhf/graph_model.hpp"

namespace plumbhf {

struct CharVector {
  IntVector pairings;

  std::size_t size() const { return pairings.size(); }
  std::int64_t operator[](std::size_t v) const { return pairings[v]; }
  std::int64_t& operator[](std::size_t v) { return pairings[v]; }

  auto operator<=>(const CharVector&) const = default;
  bool operator==(const CharVector&) const = default;
};

// U^m (x) K.
struct UState {
  std::int64_t m = 0;
  CharVector k;

  auto operator<=>(const UState&) const = default;
  bool operator==(const UState&) const = default;
};

struct CharVectorHash {
  std::size_t operator()(const CharVector& k) const noexcept;
};

struct UStateHash {
  std::size_t operator()(const UState& s) const noexcept;
};

struct SpinCClass {
  CharVector representative;  // canonical coset representative
  bool torsion = false;
  std::optional<std::int64_t> label;  // (K.z)/2 for corank-1 graphs

  auto operator<=>(const SpinCClass& other) const { return representative <=> other.representative; }
  bool operator==(const SpinCClass& other) const { return representative == other.representative; }
};

// Precomputed lattice data for one supported plumbing graph.
class Lattice {
 public:
  explicit Lattice(PlumbingGraph graph);

  const PlumbingGraph& graph() const { return graph_; }
  std::size_t size() const { return graph_.size(); }
  const IntMatrix& form() const { return form_; }
  const FormClass& form_class() const { return form_class_; }
  bool semidefinite() const { return form_class_.kind == FormKind::NegativeSemidefiniteCorank1; }

  // Primitive integer generator of ker M with first nonzero entry positive;
  // empty for definite forms.
  const std::optional<IntVector>& kernel_generator() const { return kernel_; }

  // Number of torsion Spin^c structures on Y(G): |det M| when definite,
  // |det M_rr| / z_r^2 for corank 1.
  const Integer& torsion_count() const { return torsion_count_; }

  std::int64_t weight(std::size_t v) const { return form_(v, v); }

  bool is_characteristic(const CharVector& k) const;
  bool is_torsion(const CharVector& k) const;

  // n with 2n = <K,v> + v.v.
  std::int64_t move_coefficient(const CharVector& k, std::size_t v) const;

  // K + 2 s PD[v] for s = +1 or -1.
  CharVector shifted(const CharVector& k, std::size_t v, int s = 1) const;
  void shift_in_place(CharVector& k, std::size_t v, int s = 1) const;

  // (m, K) ~ (m + n_v(K), K + 2PD[v]); nullopt if the new power is negative.
  std::optional<UState> apply_move(const UState& s, std::size_t v) const;
  // Inverse move: (m, K) ~ (m - n_v(K - 2PD[v]), K - 2PD[v]).
  std::optional<UState> apply_inverse_move(const UState& s, std::size_t v) const;

  // K^2 = K.a for any a with M a = K. Throws NonTorsionError.
  Rational square(const CharVector& k) const;

  // -(K^2 + |G| - 3)/4 + 2m (semidefinite) or -(K^2 + |G|)/4 + 2m (definite).
  Rational level(const UState& s) const;

  SpinCClass spinc_of(const CharVector& k) const;
  std::optional<std::int64_t> label_of(const CharVector& k) const;

  // A torsion characteristic vector M a, with a solving M a = diag(M) mod 2.
  CharVector some_torsion_vector() const;

  std::string format(const CharVector& k) const;  // "(1, 0, -1)"

 private:
  PlumbingGraph graph_;
  IntMatrix form_;
  RationalMatrix rational_form_;
  FormClass form_class_;
  std::optional<IntVector> kernel_;
  Integer torsion_count_;
  HermiteLattice sector_lattice_;  // rows of 2M
};

// State cap used by every search: 2e6, or PLUMBHF_MAX_STATES when set.
std::size_t default_max_states();

// All torsion sectors, sorted by representative. Throws StateCountExceeded
// beyond `cap` sectors.
std::vector<SpinCClass> torsion_sectors(const Lattice& lattice, std::size_t cap = 100'000);

CharVector conjugate(const CharVector& k);

}  // namespace plumbhf
