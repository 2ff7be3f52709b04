// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

namespace v2xloc::cli {

// Environment variable that, when set, replaces the --out directory.
inline constexpr const char* kOutDirEnv = "V2XLOC_OUT_DIR";

// Entry point for the `v2xloc` tool. Returns the process exit status.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// A path that exists is returned unchanged; otherwise the name is looked up
// in the shipped preset directory.
std::string resolve_config_path(const std::string& name);

}  // namespace v2xloc::cli
