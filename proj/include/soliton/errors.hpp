#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace soliton {

/// Base class for every error raised by the library.
class SolitonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input or configuration (CLI exit code 2).
class ConfigError : public SolitonError {
public:
    using SolitonError::SolitonError;
};

/// Numerical failure of a solver (CLI exit code 3).
class SolverError : public SolitonError {
public:
    using SolitonError::SolitonError;
};

/// An iterate of the contraction map left the ball D_eps.
class BallEscapeError : public SolverError {
public:
    enum class Component { W, V };

    BallEscapeError(Component which, double distance, double radius, int iteration)
        : SolverError(describe(which, distance, radius, iteration)),
          component(which), distance(distance), radius(radius), iteration(iteration) {}

    Component component;
    double distance;
    double radius;
    int iteration;

private:
    static std::string describe(Component which, double distance, double radius, int iteration);
};

class NonConvergenceError : public SolverError {
public:
    using SolverError::SolverError;
};

/// h dropped below the positivity floor during continuation.
class PositivityLossError : public SolverError {
public:
    PositivityLossError(double r, double h);
    double r;
    double h;
};

/// Step size underflow in the adaptive integrator.
class StiffnessError : public SolverError {
public:
    using SolverError::SolverError;
};

/// Non-finite integrand value fed to a quadrature kernel.
class QuadratureError : public SolitonError {
public:
    QuadratureError(std::size_t node, double value);
    std::size_t node;
};

class DivergentTailError : public SolitonError {
public:
    using SolitonError::SolitonError;
};

/// Output could not be written (unwritable directory, failed write).
class IoError : public SolitonError {
public:
    using SolitonError::SolitonError;
};

/// A grid/profile range precondition was violated (window, coverage, index).
class RangeError : public SolitonError {
public:
    using SolitonError::SolitonError;
};

}  // namespace soliton
