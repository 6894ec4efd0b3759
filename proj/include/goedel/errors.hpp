#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace goedel {

// Base class for all domain errors. `code()` is the stable machine-readable
// identifier used in CLI envelopes; `what()` carries the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Malformed input text. Carries the byte offset and the token kinds that
// would have been accepted at that point.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected,
              const std::string& message)
      : Error("SyntaxError", message),
        position_(position),
        expected_(std::move(expected)) {}
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

class OpenTermError : public Error {
 public:
  explicit OpenTermError(const std::string& message)
      : Error("OpenTermError", message) {}
};

class NumeralTooLarge : public Error {
 public:
  explicit NumeralTooLarge(const std::string& message)
      : Error("NumeralTooLarge", message) {}
};

class ConstantNotInL : public Error {
 public:
  explicit ConstantNotInL(const std::string& message)
      : Error("ConstantNotInL", message) {}
};

class NotACode : public Error {
 public:
  explicit NotACode(const std::string& message) : Error("NotACode", message) {}
};

class NotAClassSign : public Error {
 public:
  explicit NotAClassSign(const std::string& message)
      : Error("NotAClassSign", message) {}
};

class BadProperty : public Error {
 public:
  explicit BadProperty(const std::string& message)
      : Error("BadProperty", message) {}
};

class UnboundConstant : public Error {
 public:
  explicit UnboundConstant(const std::string& message)
      : Error("UnboundConstant", message) {}
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& message)
      : Error("ResourceLimit", message) {}
};

class ProofFormatError : public Error {
 public:
  explicit ProofFormatError(const std::string& message)
      : Error("ProofFormat", message) {}
};

class ProofConstructionFailure : public Error {
 public:
  explicit ProofConstructionFailure(const std::string& message)
      : Error("ProofConstructionFailure", message) {}
};

}  // namespace goedel
