#include "tll/errors.hpp"

#include <iostream>

namespace tll {

namespace {
void default_warn(const std::string& message) { std::cerr << "warning: " << message << "\n"; }
warn_sink g_sink = &default_warn;
}

void warn(const std::string& message) { g_sink(message); }

warn_sink set_warn_sink(warn_sink sink)
{
    warn_sink prev = g_sink;
    g_sink = sink ? sink : &default_warn;
    return prev;
}

} // namespace tll
