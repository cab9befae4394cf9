// commands.hpp — the eight rabi-cf commands
#pragma once

#include <string>

#include "config.hpp"

namespace rabicli {

// Runs one command against a fully merged configuration. Throws UsageError
// for bad inputs, the library error types for regime/numerical failures;
// main() maps those onto exit codes.
void run_command(const std::string& name, const Config& cfg);

}  // namespace rabicli
