#pragma once

#include <stdexcept>
#include <string>

namespace qortho {

enum class ErrorKind {
  InvalidParameter,
  TruncationCapExceeded,
  PoleInLowerParameter,
  DivergentSeries,
  DegenerateParameter,
  FormMismatch,
  NegativeBaseFractionalPower,
  SingularWronskian,
  NonSummable,
  WeightPole,
  UnknownFunction,
};

const char* to_string(ErrorKind kind);

class QError : public std::runtime_error {
 public:
  QError(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qortho
