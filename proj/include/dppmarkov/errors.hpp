#ifndef DPPMARKOV_ERRORS_HPP
#define DPPMARKOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dppmarkov {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: unknown labels, overlapping sets, malformed matrices, invalid kernels.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A required inverse does not exist at working precision.
class DegeneracyError : public Error {
 public:
  DegeneracyError(std::string which, double determinant)
      : Error("singular matrix " + which + " (det = " + std::to_string(determinant) + ")"),
        which_(std::move(which)),
        determinant_(determinant) {}

  const std::string& which() const { return which_; }
  double determinant() const { return determinant_; }

 private:
  std::string which_;
  double determinant_;
};

/// Exhaustive operation requested on a ground set larger than its guard.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, int size, int limit)
      : Error(what + ": ground set of size " + std::to_string(size) + " exceeds limit " +
              std::to_string(limit)) {}
};

/// Conditioning on an event of (numerically) zero probability.
class NullEvidenceError : public Error {
 public:
  explicit NullEvidenceError(double probability)
      : Error("conditioning on null event (probability " + std::to_string(probability) + ")"),
        probability_(probability) {}

  double probability() const { return probability_; }

 private:
  double probability_;
};

/// Correlation requested for a coordinate with degenerate marginal (0 or 1).
class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

/// Text input that failed to parse; carries a 1-based location.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message
                       : message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace dppmarkov

#endif  // DPPMARKOV_ERRORS_HPP
