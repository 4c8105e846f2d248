// Error types shared across the toolkit.

#pragma once

#include <stdexcept>
#include <string>

namespace melograph {

/// Base class for all toolkit errors.
class MelographError : public std::runtime_error {
 public:
  explicit MelographError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input document; message carries line context when known.
class ParseError : public MelographError {
 public:
  explicit ParseError(const std::string& msg) : MelographError(msg) {}
  ParseError(int line, const std::string& msg)
      : MelographError("line " + std::to_string(line) + ": " + msg) {}
};

/// Well-formed input using a feature outside the supported subset.
class UnsupportedFeatureError : public MelographError {
 public:
  explicit UnsupportedFeatureError(const std::string& element)
      : MelographError("unsupported feature: " + element), element_(element) {}
  const std::string& element() const { return element_; }

 private:
  std::string element_;
};

/// Score contains no pitched notes.
class EmptyScoreError : public MelographError {
 public:
  explicit EmptyScoreError(const std::string& msg) : MelographError(msg) {}
};

/// Invalid argument to an operation (precondition violation).
class ArgumentError : public MelographError {
 public:
  explicit ArgumentError(const std::string& msg) : MelographError(msg) {}
};

/// Cached data was produced under a different corpus or configuration.
class StaleCacheError : public MelographError {
 public:
  explicit StaleCacheError(const std::string& msg) : MelographError(msg) {}
};

/// Checkpoint chunk file or manifest fails validation.
class CorruptChunkError : public MelographError {
 public:
  explicit CorruptChunkError(const std::string& msg) : MelographError(msg) {}
};

/// A node could not be labeled.
class LabelingError : public MelographError {
 public:
  explicit LabelingError(const std::string& msg) : MelographError(msg) {}
};

/// Numerically degenerate input (e.g. all-zero distance matrix).
class DegenerateInputError : public MelographError {
 public:
  explicit DegenerateInputError(const std::string& msg) : MelographError(msg) {}
};

/// Pipeline stage invoked before its upstream artifacts exist.
class DependencyError : public MelographError {
 public:
  explicit DependencyError(const std::string& msg) : MelographError(msg) {}
};

}  // namespace melograph
