#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fireprox {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitConfigError = 2;

/// Entry point of the `fireprox` command. `args` excludes the program name.
/// Subcommands: assess, stream, calibrate, render, synth.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace fireprox
