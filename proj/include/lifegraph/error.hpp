#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lifegraph {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable stream / file.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input data or arguments that violate an operation's preconditions.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Fewer observations than the operation needs.
class InsufficientDataError : public DataError {
 public:
  using DataError::DataError;
};

/// Zero-variance or otherwise degenerate predictor.
class DegenerateInputError : public DataError {
 public:
  using DataError::DataError;
};

class RankDeficientError : public DataError {
 public:
  RankDeficientError(const std::string& what, std::vector<std::string> columns)
      : DataError(what), columns_(std::move(columns)) {}

  /// Predictor columns found to be linearly dependent on earlier ones.
  const std::vector<std::string>& columns() const noexcept { return columns_; }

 private:
  std::vector<std::string> columns_;
};

}  // namespace lifegraph
