#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mre {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input record violates the documented schema. Carries the 1-based line.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& msg, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Precondition violation on operation inputs.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Embedding provider failed or returned degenerate vectors.
class ProviderError : public Error {
 public:
  using Error::Error;
};

// Network-level failure talking to a remote endpoint.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Endpoint responded but not in the agreed wire format.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class CredentialError : public Error {
 public:
  using Error::Error;
};

// Paraphrase generation exhausted its retries; carries what was salvaged.
class GenerationError : public Error {
 public:
  GenerationError(const std::string& msg, std::vector<std::string> partial)
      : Error(msg), partial_(std::move(partial)) {}
  const std::vector<std::string>& partial() const { return partial_; }

 private:
  std::vector<std::string> partial_;
};

}  // namespace mre
