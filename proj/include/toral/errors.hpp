#ifndef TORAL_ERRORS_HPP
#define TORAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace toral {

/// Input does not satisfy an operation's documented precondition.
class PreconditionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A circle or torus action that was required to be free is not.
class FreenessViolation : public PreconditionError
{
public:
    using PreconditionError::PreconditionError;
};

/// Malformed input document; the message names the offending line or field.
class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An instance on which a classification statement would be false.
/// Never expected to fire; raising it means the classification (or
/// this implementation) is wrong for the instance described in what().
class ClassificationViolation : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace toral

#endif
