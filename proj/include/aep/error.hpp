#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace aep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
public:
    NotHermitian() : Error("operator is not Hermitian") {}
};

class NotUnitary : public Error {
public:
    NotUnitary() : Error("operator is not unitary") {}
};

/// An eigenphase sits on the branch cut of the logarithm; perturb the input.
class BranchAmbiguity : public Error {
public:
    BranchAmbiguity() : Error("eigenphase lies on the logarithm branch cut at pi") {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DegeneracyMismatch : public Error {
public:
    using Error::Error;
};

class NotConnectible : public Error {
public:
    using Error::Error;
};

/// A parameter point where the family loses non-degeneracy, i.e. the
/// family leaves its adiabatic class.
class DegeneracyEncountered : public Error {
public:
    DegeneracyEncountered(std::vector<double> point, double gap);

    const std::vector<double>& point() const noexcept { return point_; }
    double gap() const noexcept { return gap_; }

private:
    std::vector<double> point_;
    double gap_;
};

class NotAnEigenstate : public Error {
public:
    NotAnEigenstate() : Error("initial state is not an eigenvector of the initial Hamiltonian") {}
};

class NotClosed : public Error {
public:
    NotClosed() : Error("parameter path is not closed") {}
};

class ConstraintViolated : public Error {
public:
    using Error::Error;
};

class ZeroCoupling : public Error {
public:
    ZeroCoupling() : Error("coupling mu must be nonzero") {}
};

/// Roundoff produced a value that cannot be explained by roundoff.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or command-line value.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace aep
