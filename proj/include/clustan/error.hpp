#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clustan {

enum class ErrorKind {
  // input / parse
  MalformedRow,
  NonNumericCell,
  ArffSyntax,
  UnsupportedAttributeType,
  UnknownColumn,
  InvalidClassValue,
  MissingValue,
  Io,
  // analysis
  DimensionMismatch,
  EmptyCandidateSet,
  SampleTooLarge,
  TooFewPoints,
  EmptyDataset,
  MissingCenter,
  InvalidMedoid,
  SingleCluster,
  DegenerateData,
  NoLabels,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for errors caused by the input file rather than by the analysis.
bool is_input_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace clustan
