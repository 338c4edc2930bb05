#include "clustan/error.hpp"

namespace clustan {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::NonNumericCell: return "NonNumericCell";
    case ErrorKind::ArffSyntax: return "ArffSyntax";
    case ErrorKind::UnsupportedAttributeType: return "UnsupportedAttributeType";
    case ErrorKind::UnknownColumn: return "UnknownColumn";
    case ErrorKind::InvalidClassValue: return "InvalidClassValue";
    case ErrorKind::MissingValue: return "MissingValue";
    case ErrorKind::Io: return "Io";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorKind::SampleTooLarge: return "SampleTooLarge";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::MissingCenter: return "MissingCenter";
    case ErrorKind::InvalidMedoid: return "InvalidMedoid";
    case ErrorKind::SingleCluster: return "SingleCluster";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::NoLabels: return "NoLabels";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedRow:
    case ErrorKind::NonNumericCell:
    case ErrorKind::ArffSyntax:
    case ErrorKind::UnsupportedAttributeType:
    case ErrorKind::UnknownColumn:
    case ErrorKind::InvalidClassValue:
    case ErrorKind::MissingValue:
    case ErrorKind::Io:
      return true;
    default:
      return false;
  }
}

}  // namespace clustan
