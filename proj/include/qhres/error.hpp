#ifndef QHRES_ERROR_HPP
#define QHRES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qhres {

/// Precondition on the shape of an argument was violated (index out of range,
/// mismatched variable lists, wrong image count, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition failed: the input is well-formed but lies
/// outside the domain of the operation (zero valuation, degenerate chart,
/// removable pole, weight-impure data, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Numerical failure inside the floating-point oracle.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qhres

#endif // QHRES_ERROR_HPP
