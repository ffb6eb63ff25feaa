#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace svqa {

// Bad or inconsistent configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Anything wrong with stored data: unreadable shards, bad manifests,
// vocabulary mismatches (CLI exit code 3).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

struct ChecksumError : DataError {
  explicit ChecksumError(const std::string& what) : DataError(what) {}
};

struct TruncatedError : DataError {
  explicit TruncatedError(const std::string& what) : DataError(what) {}
};

struct VersionError : DataError {
  explicit VersionError(const std::string& what) : DataError(what) {}
};

// Rejection-sampling budget exhausted while placing entities.
struct PlacementError : std::runtime_error {
  explicit PlacementError(const std::string& what) : std::runtime_error(what) {}
};

// Rejection-sampling budget exhausted while searching for a caption with the
// requested type/label on a given scene. Callers resample the scene.
struct GenerationError : std::runtime_error {
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

// Token sequence not derivable from the grammar. `position` is the 0-based
// index of the offending token.
struct ParseError : std::runtime_error {
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error(what), position(position) {}
  std::size_t position;
};

// Tensor shape mismatch in the nn layer.
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite loss or similar numeric breakdown (CLI exit code 4).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace svqa
