#ifndef CSMOOTH_TOOLS_CLI_HPP
#define CSMOOTH_TOOLS_CLI_HPP

namespace csmooth_cli {

// Full command-line front end; returns the process exit code
// (0 success, 1 validation/property failure, 2 usage or parse error).
int run(int argc, const char* const* argv);

}  // namespace csmooth_cli

#endif
