#pragma once

#include <stdexcept>

namespace kvol {

/// Base for computational failures. Bad arguments use std::invalid_argument.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A magnitude left the range of plain double arithmetic.
class OverflowError : public Error {
  public:
    using Error::Error;
};

/// The exact engine was asked for more terms than its budget allows.
class BudgetError : public Error {
  public:
    using Error::Error;
};

/// Quadrature did not converge (truncation tail or step-halving check).
class QuadratureError : public Error {
  public:
    using Error::Error;
};

/// Argument sits on a pole or zero of the quantum dilogarithm.
class PoleError : public Error {
  public:
    using Error::Error;
};

/// Stationary-point elimination or selection failed.
class SolverError : public Error {
  public:
    using Error::Error;
};

}  // namespace kvol
