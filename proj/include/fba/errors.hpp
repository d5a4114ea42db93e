#ifndef FBA_ERRORS_HPP
#define FBA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fba {

// Input files or textual specs that cannot be parsed.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition of an operation does not hold (singular channel,
// zero dispersion, tilt outside the simplex, ...). The message names the
// violated condition.
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Iterative numerics failed: no convergence, lost bracket, singular matrix.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fba

#endif
