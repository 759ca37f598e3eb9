#pragma once

#include <stdexcept>
#include <string>

namespace cknn {

enum class ErrorKind {
  InvalidInput,         // malformed or non-finite data
  InvalidParameter,     // out-of-range argument
  DegenerateBandwidth,  // zero local scale (duplicate points)
  ResourceLimit,        // simplex cap exceeded
  Contract,             // caller broke a precondition between objects
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::InvalidInput, what) {}
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what)
      : Error(ErrorKind::InvalidParameter, what) {}
};

class DegenerateBandwidth : public Error {
 public:
  DegenerateBandwidth(std::size_t index, const std::string& what)
      : Error(ErrorKind::DegenerateBandwidth, what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class ResourceLimit : public Error {
 public:
  ResourceLimit(std::size_t estimate, const std::string& what)
      : Error(ErrorKind::ResourceLimit, what), estimate_(estimate) {}

  std::size_t estimate() const noexcept { return estimate_; }

 private:
  std::size_t estimate_;
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what)
      : Error(ErrorKind::Contract, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace cknn
