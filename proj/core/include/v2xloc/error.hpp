// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace v2xloc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration parse or validation failure. `field` is the dotted path of the
// offending key when one is known, `line` the 1-based document line (0 if n/a).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::string field = {}, int line = 0)
      : Error(message), field_(std::move(field)), line_(line) {}

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

// The detected measurements do not make the position observable.
class UnavailableFix : public Error {
 public:
  using Error::Error;
};

// Fewer than two detected neighbor ToAs.
class ZetaUndefined : public Error {
 public:
  using Error::Error;
};

}  // namespace v2xloc
