#pragma once

#include <stdexcept>
#include <string>

namespace qdrinfeld {

/// Invalid or inconsistent algebra data (bad q-matrix, conflicting kappa, ...).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line` and `column` are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0 && column <= 0) return what;
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  int line_;
  int column_;
};

class NotAUnit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class HypothesisNotMet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AxiomsFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPurelyPositive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonUnitEpsilon : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation needing concrete values met an uninstantiated parameter.
class SymbolicParameter : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// epsilon(|v|,|v|) outside {1, -1}; cannot happen for an antisymmetric bicharacter.
class ValueNotSign : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qdrinfeld
