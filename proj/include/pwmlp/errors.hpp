#pragma once

#include <stdexcept>
#include <string>

namespace pwmlp {

enum class ErrorKind { Domain, Usage, Format, Numerical, Io };

/// Base of every exception thrown by the library. The kind selects the
/// C API status code and the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// Caller violated a precondition (shape, size, parity).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

/// Malformed model or CSV document. The message starts with the field path.
class FormatError : public Error {
 public:
  FormatError(const std::string& path, const std::string& what)
      : Error(ErrorKind::Format, path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace pwmlp
