#pragma once

#include <stdexcept>
#include <string>

namespace plumbhf {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Structural violation of a plumbing graph: duplicate ids, dangling
// endpoints, cycles, multi-edges or self-loops.
class GraphError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedGraph : public Error {
 public:
  using Error::Error;
};

// Raised when K^2 or a level is requested for a non-torsion vector.
class NonTorsionError : public Error {
 public:
  using Error::Error;
};

class VisitCapExceeded : public Error {
 public:
  using Error::Error;
};

class StateCountExceeded : public Error {
 public:
  using Error::Error;
};

class RegionUnstable : public Error {
 public:
  using Error::Error;
};

class NotRelatedWithinDepth : public Error {
 public:
  using Error::Error;
};

class AmbiguousSectorMatching : public Error {
 public:
  using Error::Error;
};

class UnstableInput : public Error {
 public:
  using Error::Error;
};

}  // namespace plumbhf
