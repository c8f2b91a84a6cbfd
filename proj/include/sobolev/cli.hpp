#pragma once

// Command-line front end: reproduce, verify, expand, sweep.

#include <iosfwd>

namespace sobolev {

/// Returns the process exit status: 0 when every gating criterion or property passes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sobolev
