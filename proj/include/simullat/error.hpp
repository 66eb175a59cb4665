// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace simullat {

enum class ErrorKind {
    Parse,           // malformed input bytes (bad JSON, bad UTF-8)
    Schema,          // required field missing or of the wrong type
    Validation,      // well-formed input violating a domain invariant
    UndefinedInput,  // the quantity is not defined for this input
    Usage,           // inconsistent command-line configuration
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::optional<std::size_t> line = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    // 1-based input line the error refers to, when known.
    std::optional<std::size_t> line() const noexcept { return line_; }
    // The message without the kind/line prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
    std::optional<std::size_t> line_;
};

}  // namespace simullat
