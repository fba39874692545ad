#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace forge {

enum class ErrorKind {
  InvalidInput,
  UnsupportedRing,
  ModulusTooLarge,
  MismatchedRing,
  IncompleteTargets,
  NotAField,
  NotZMod,
  DimensionTooLarge,
  NotIdempotent,
  PreconditionViolated,
  NotGeneratingModI,
  TooFewElements,
  NotUnimodular,
  NormTooLarge,
  NotSL,
  NotAFrame,
  NotInImage,
  NotGenerating,
  OnMinorLocus,
  NonConstantRank,
  WrongCharPoly,
  NotAUnit,
  BadRoot,
  SearchExhausted,
  NotCharP,
  RankMismatch,
  NoSolution,
  NotCyclicP,
};

const char* to_string(ErrorKind kind) noexcept;

// A violated precondition of a public operation. When the failure is
// localized at a maximal ideal, `ideal()` carries its enumeration index.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> ideal = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<std::size_t>& ideal() const noexcept { return ideal_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> ideal_;
};

// A certificate failed to re-verify. Never expected; the CLI maps it to exit 3.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message,
                       std::optional<std::size_t> ideal = std::nullopt);

inline void ensure(bool condition, const char* what) {
  if (!condition) throw InvariantBreach(what);
}

}  // namespace forge
