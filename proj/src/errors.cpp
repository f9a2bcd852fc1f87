#include "qortho/errors.hpp"

namespace qortho {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::TruncationCapExceeded: return "TruncationCapExceeded";
    case ErrorKind::PoleInLowerParameter: return "PoleInLowerParameter";
    case ErrorKind::DivergentSeries: return "DivergentSeries";
    case ErrorKind::DegenerateParameter: return "DegenerateParameter";
    case ErrorKind::FormMismatch: return "FormMismatch";
    case ErrorKind::NegativeBaseFractionalPower: return "NegativeBaseFractionalPower";
    case ErrorKind::SingularWronskian: return "SingularWronskian";
    case ErrorKind::NonSummable: return "NonSummable";
    case ErrorKind::WeightPole: return "WeightPole";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
  }
  return "Unknown";
}

QError::QError(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace qortho
