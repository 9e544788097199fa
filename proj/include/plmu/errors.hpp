#pragma once

#include <stdexcept>
#include <string>

namespace plmu {

// Syntax error in formula or model text. Positions are 1-based.
struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_), col(col_) {}
};

// Violation of a structural invariant (model validation, normal-form
// preconditions, malformed trees, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace plmu
