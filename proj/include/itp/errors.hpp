#pragma once

#include <stdexcept>
#include <string>

namespace itp {

// Root of every error the library throws. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class TautologyError : public Error {
public:
  using Error::Error;
};

class RangeError : public Error {
public:
  using Error::Error;
};

class UnassignedVar : public Error {
public:
  explicit UnassignedVar(unsigned var)
      : Error("variable " + std::to_string(var) + " has no value"), var_(var) {}
  unsigned var() const { return var_; }

private:
  unsigned var_;
};

class ResourceLimit : public Error {
public:
  using Error::Error;
};

class UnknownVar : public Error {
public:
  using Error::Error;
};

class SpecIncomplete : public Error {
public:
  using Error::Error;
};

class ConfigMismatch : public Error {
public:
  using Error::Error;
};

class UnsupportedCollective : public Error {
public:
  using Error::Error;
};

class UsageError : public Error {
public:
  using Error::Error;
};

// A collective was checked on a satisfiable formula; carries the model.
class NotUnsat : public Error {
public:
  NotUnsat(std::string model)
      : Error("formula is satisfiable: " + model), model_(std::move(model)) {}
  const std::string& model() const { return model_; }

private:
  std::string model_;
};

} // namespace itp
