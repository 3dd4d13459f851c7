#pragma once

#include <stdexcept>
#include <string>

namespace tll {

// Contract violations: bad parameters, mismatched shapes, malformed files.
class invalid_argument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Hard numerical failures: NaN/Inf where finite values are required,
// symbols evaluated on their cut, unreadable state. The CLI maps these
// to exit code 3.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-fatal diagnostics (zero-trace tolerance, parameter constraint
// violations that the caller may legitimately ignore). Goes to stderr;
// tests can swap the sink to capture it.
void warn(const std::string& message);

using warn_sink = void (*)(const std::string&);
warn_sink set_warn_sink(warn_sink sink); // returns previous sink

} // namespace tll
