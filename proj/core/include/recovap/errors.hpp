#pragma once

#include <stdexcept>

namespace recovap {

// Base for all "instance too large for this routine" refusals. These are
// loud guards, never silent truncation.
struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace recovap
