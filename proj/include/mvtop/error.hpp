#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvtop {

enum class ErrorKind {
  DuplicateLabel,
  UnknownLabel,
  MissingSelf,
  NotTransitive,
  SizeLimit,
  EmptySubspace,
  EmptySubset,
  EmptyValue,
  EmptyConstantValue,
  NotAProduct,
  DomainMismatch,
  NotContinuous,
  NotCommuting,
  NotOpen,
  EmptyPullback,
  NotPathConnected,
  NotSurjective,
  UnknownModel,
  BadParams,
  Schema,
};

std::string_view to_string(ErrorKind kind);

/// Every precondition violation in the library surfaces as an Error whose
/// kind names the violated rule; the message carries the offending data.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace mvtop
