#pragma once

#include <stdexcept>
#include <string>

namespace scqsci {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad dimensions, wrong sector, ...).
class ContractViolation : public Error {
  public:
    using Error::Error;
};

class UnsupportedElement : public Error {
  public:
    using Error::Error;
};

class FcidumpError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

/// Iterative procedure (SCF, Davidson) stopped at its iteration cap.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &what, double last_residual)
        : Error(what), residual_(last_residual) {}
    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

/// Problem size exceeds a configured memory or simulation budget.
class SizeLimitError : public Error {
  public:
    using Error::Error;
};

} // namespace scqsci
