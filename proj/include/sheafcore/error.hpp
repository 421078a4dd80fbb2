#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sheafcore {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands carry different scalar kinds (or different moduli).
class KindMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed combinatorial structure: unknown names, cycles, redundant
/// covers, bad matrix shapes. The CLI maps all of these to exit status 2.
class StructureError : public Error {
 public:
  using Error::Error;
};

class UnknownElement : public StructureError {
 public:
  explicit UnknownElement(const std::string& name)
      : StructureError("unknown element '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class CycleError : public StructureError {
 public:
  explicit CycleError(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class RedundantCover : public StructureError {
 public:
  RedundantCover(const std::string& lower, const std::string& upper)
      : StructureError("redundant cover " + lower + "->" + upper +
                       ": implied by a longer path"),
        lower_(lower),
        upper_(upper) {}
  const std::string& lower() const noexcept { return lower_; }
  const std::string& upper() const noexcept { return upper_; }

 private:
  std::string lower_, upper_;
};

/// Restriction maps fail to commute for the comparable pair (lower, upper).
class CommutativityError : public Error {
 public:
  CommutativityError(const std::string& lower, const std::string& upper)
      : Error("restriction maps do not commute between " + lower + " and " +
              upper),
        lower_(lower),
        upper_(upper) {}
  const std::string& lower() const noexcept { return lower_; }
  const std::string& upper() const noexcept { return upper_; }

 private:
  std::string lower_, upper_;
};

/// An input violates a documented precondition (not an ideal, non-monotone
/// map, removal of a vertex that is not licensed, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A computed complex failed d∘d = 0.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sheafcore
