#pragma once

#include <stdexcept>
#include <string>

namespace gti {

/// Raised when a descriptor, parameter, or precondition is malformed.
/// The CLI maps this to exit code 2.
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace gti
