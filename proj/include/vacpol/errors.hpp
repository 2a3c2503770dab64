#pragma once
#include <stdexcept>
#include <string>

namespace vacpol {

//! invalid input: bad parameters, malformed files, missing upstream artifacts
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string &msg) : std::runtime_error(msg) {}
};

//! numerical failure: non-convergence, tolerance not met
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace vacpol
