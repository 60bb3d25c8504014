#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gfrev {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- polynomial algebra ---

class UnsupportedGate : public Error {
 public:
  using Error::Error;
};

class CyclicSubstitution : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  using Error::Error;
};

// --- netlist parsing / structure ---

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

class MultipleDrivers : public Error {
 public:
  using Error::Error;
};

class UndeclaredWire : public Error {
 public:
  using Error::Error;
};

class UnsupportedVerilog : public Error {
 public:
  using Error::Error;
};

class CombinationalCycle : public Error {
 public:
  using Error::Error;
};

class NotAnOutput : public Error {
 public:
  using Error::Error;
};

class UndrivenSignal : public Error {
 public:
  using Error::Error;
};

// --- specification / generation ---

class InvalidExponent : public Error {
 public:
  using Error::Error;
};

// --- extraction / verification ---

class InvalidOutputOrder : public Error {
 public:
  using Error::Error;
};

class MappingError : public Error {
 public:
  using Error::Error;
};

class TermCeilingExceeded : public Error {
 public:
  using Error::Error;
};

// --- reverse engineering ---

class NoValidEncoding : public Error {
 public:
  using Error::Error;
};

class InconsistentEncoding : public Error {
 public:
  using Error::Error;
};

class EmptySm : public Error {
 public:
  using Error::Error;
};

class NotReducible : public Error {
 public:
  using Error::Error;
};

}  // namespace gfrev
