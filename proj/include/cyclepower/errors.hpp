#pragma once

#include <stdexcept>
#include <string>

namespace cyclepower {

/// Rejected input: bad (N, k), out-of-range vertex, pole-adjacent sample point.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An identity that must hold exactly did not (inexact division, non-integer
/// forest count, nonpositive eigenvalue). Always indicates a bug.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A numerical tolerance tied to the working precision was missed.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A base or inner root sits on the unit circle within tolerance.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SimulationBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cyclepower
