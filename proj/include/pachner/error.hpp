#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pachner {

enum class ErrorKind {
  // simplicial
  DegenerateTet,
  DuplicateTet,
  NonManifoldTriangle,
  InconsistentOrientation,
  InvalidLabel,
  EdgeNotFound,
  StarNotCyclic,
  // moves
  EdgeAlreadyPresent,
  SiteStale,
  WrongValence,
  PatternMismatch,
  TetAlreadyPresent,
  LabelInUse,
  TetNotFound,
  WrongLinkValence,
  ScriptError,
  // geometry
  GenericityFailed,
  NotRealizable,
  DegenerateFace,
  MissingCoordinate,
  // regge
  StepUnstable,
  NotBipyramid,
  DegenerateConfiguration,
  SamplingFailed,
  // complexkit
  ShapeMismatch,
  NotAChainComplex,
  NotAcyclic,
  SingularMinor,
  ChainConditionFailed,
  // io and front end
  ParseError,
  UnknownSeed,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and tests) can branch on the category rather than the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Move failure inside a script, tagged with the offending command index.
class ScriptError : public Error {
 public:
  ScriptError(std::size_t index, const Error& cause)
      : Error(ErrorKind::ScriptError,
              "command " + std::to_string(index) + ": " + cause.what()),
        index_(index),
        cause_(cause.kind()) {}

  std::size_t index() const noexcept { return index_; }
  ErrorKind cause() const noexcept { return cause_; }

 private:
  std::size_t index_;
  ErrorKind cause_;
};

}  // namespace pachner
