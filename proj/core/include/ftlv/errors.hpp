#pragma once

#include <stdexcept>
#include <string>

namespace ftlv {

// Typed failure conditions. Everything that can go wrong carries a kind so
// callers (and the CLI exit-code contract) can tell scope limits, bad input
// and genuine numerical failure apart.
enum class ErrorKind {
  NotPrime,
  NotCoprime,
  DependentInput,
  NoRelation,
  Unstable,
  NonMinimalAtL,
  BadPrime,
  HasseViolation,
  PrecisionExhausted,
  RamifiedPrime,
  RamifiedAtV,
  InvalidM,
  InsufficientSplitPrimes,
  JointAdditiveRamification,
  NeedMoreCoefficients,
  NoRootNumberConverged,
  ResidualTooLarge,
  NoCandidate,
  AmbiguousCandidates,
  ImprimitiveCharacter,
  ConventionMismatch,
  OrbitMismatch,
  CacheCorrupt,
  Unsupported,
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind k, const std::string& what) { throw Error(k, what); }

}  // namespace ftlv
