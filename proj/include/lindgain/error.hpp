#pragma once

#include <stdexcept>
#include <string>

namespace lindgain {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input fails a structural check (non-Hermitian tensor, inconsistent split, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// |eps + 1| vanishes: the quasi-static response is singular at the SPP resonance.
class ResonanceSingularityError : public Error {
public:
    using Error::Error;
};

/// Closed form used outside its declared validity window.
class ValidityError : public Error {
public:
    using Error::Error;
};

/// Kossakowski matrix is not positive semidefinite.
class CompletePositivityError : public Error {
public:
    using Error::Error;
};

/// Closed-form steady state is ill-defined because the kernel is degenerate.
class DegenerateKernelError : public Error {
public:
    using Error::Error;
};

/// Kernel is degenerate and no initial state was supplied to resolve it.
class MissingInitialStateError : public Error {
public:
    using Error::Error;
};

/// No eigenvalue of the generator passes the kernel tolerance.
class SpectralToleranceError : public Error {
public:
    using Error::Error;
};

/// Density-matrix invariant violated during propagation.
class NumericalInstabilityError : public Error {
public:
    using Error::Error;
};

/// Quadrature oracle did not reach its accuracy target.
class OracleError : public Error {
public:
    using Error::Error;
};

} // namespace lindgain
