// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace scaleup {

/// Thrown when a config or argument violates a named invariant.
/// The message names the violated constraint and the offending values.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scaleup
