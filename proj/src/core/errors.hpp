#pragma once

#include <stdexcept>

namespace strmat {

// Split from std::runtime_error so the C layer can map failures onto the
// documented exit codes (2 invalid input, 3 I/O, 4 numerical).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace strmat
