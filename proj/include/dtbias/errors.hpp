#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtbias {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyInput : Error {
  using Error::Error;
};

struct NegativeWeight : Error {
  using Error::Error;
};

// No ingested row survived validation.
struct AllRowsInvalid : Error {
  using Error::Error;
};

// A complete row with u > x or x > v (or a non-finite value): corrupt data,
// not missingness, so ingestion aborts instead of dropping the row.
struct TruncationViolation : Error {
  TruncationViolation(std::size_t row_index, const std::string& what)
      : Error(what), row(row_index) {}
  std::size_t row;
};

// Operation requires a converged NPMLE fit.
struct NotConverged : Error {
  using Error::Error;
};

struct OriginalFitFailed : Error {
  using Error::Error;
};

struct AllReplicatesFailed : Error {
  using Error::Error;
};

struct AllTrialsDiscarded : Error {
  using Error::Error;
};

struct UnsupportedLaw : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

// I/O and parse problems in dataset or report files.
struct DatasetError : Error {
  using Error::Error;
};

}  // namespace dtbias
