#pragma once

#include <string>

#include "plumbhf/hf_assembly.hpp"

namespace plumbhf::testing {

inline PlumbingGraph fixture(const std::string& name) {
  return load_plumbing(std::string(PLUMBHF_FIXTURES) + "/" + name + ".json");
}

inline CharVector cv(IntVector v) { return CharVector{std::move(v)}; }

inline Rational q(std::int64_t p, std::int64_t r = 1) { return Rational(p, r); }

inline Summand tower(Rational bottom) {
  Summand s;
  s.bottom = bottom;
  return s;
}

inline Summand cyclic(std::int64_t length, std::optional<Rational> bottom, std::optional<std::int64_t> depth) {
  Summand s;
  s.kind = SummandKind::Cyclic;
  s.length = length;
  s.bottom = bottom;
  s.depth = depth;
  return s;
}

inline Summand even_tower(std::optional<Rational> bottom, Provenance provenance) {
  Summand s;
  s.kind = SummandKind::EvenTower;
  s.parity = Parity::Even;
  s.bottom = bottom;
  s.provenance = provenance;
  return s;
}

}  // namespace plumbhf::testing
