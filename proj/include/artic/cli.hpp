// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// `articulate` command-line driver: classify, synth, register, inspect.

#ifndef ARTIC_CLI_HPP_
#define ARTIC_CLI_HPP_

#include <string>
#include <vector>

namespace artic {

/// Returns the process exit status: 0 on success, 1 on a runtime error,
/// CLI11's usage code on bad flags.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // args[0] is the program name

}  // namespace artic

#endif  // ARTIC_CLI_HPP_
