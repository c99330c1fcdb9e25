#pragma once

#include <stdexcept>
#include <string>

namespace hatcc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance file: carries the JSON path of the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A state space or interface exceeded a configured enumeration cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace hatcc
