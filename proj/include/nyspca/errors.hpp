#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nyspca {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a precondition (non-finite entries, asymmetry, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied parameter is out of range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  RankError(const std::string& what, std::size_t rank) : Error(what), rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

/// The sampled block carries no information (numerically rank zero).
class DegenerateSketch : public Error {
 public:
  using Error::Error;
};

/// Nonpositive spectral gap: the requested bound is vacuous.
class GapError : public Error {
 public:
  GapError(const std::string& what, double gap) : Error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

class DegenerateReference : public Error {
 public:
  using Error::Error;
};

class DecompositionError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nyspca
