#ifndef THICKFLAME_ERRORS_HPP
#define THICKFLAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thickflame {

// Raised when a run leaves its numerical validity regime (CFL blow-up,
// degenerate interface denominators, failed brackets). The CLI maps this
// family to exit code 2; validation problems map to exit code 1.
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

class validation_error : public std::invalid_argument {
public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace thickflame

#endif
