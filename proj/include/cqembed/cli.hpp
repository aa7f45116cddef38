#pragma once

#include <iosfwd>

namespace cqembed {

// Command-line front door. Exit codes: 0 success, 1 a verified claim failed
// (or no embedding exists), 2 usage or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cqembed
