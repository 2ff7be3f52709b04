// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return v2xloc::cli::dispatch(argc, argv, std::cout, std::cerr); }
