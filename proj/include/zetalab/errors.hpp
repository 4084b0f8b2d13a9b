#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

// Input outside the admissible range of an operation (t below t_min,
// X below the first Gram point, and so on).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A root-finder or iteration failed to converge within its cap.  This
// signals a bug in a monotone comparator, not a user error.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace zetalab
