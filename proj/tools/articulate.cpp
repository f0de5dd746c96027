// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/cli.hpp"

int main(int argc, char** argv) { return artic::run_cli(argc, argv); }
