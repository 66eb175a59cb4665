// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#include "simullat/error.hpp"
#include "simullat/types.hpp"

namespace simullat {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Schema: return "schema error";
        case ErrorKind::Validation: return "validation error";
        case ErrorKind::UndefinedInput: return "undefined input";
        case ErrorKind::Usage: return "usage error";
    }
    return "error";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& message,
                           std::optional<std::size_t> line) {
    std::string out(to_string(kind));
    if (line) out += " at line " + std::to_string(*line);
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(format_message(kind, message, line)),
      kind_(kind),
      detail_(message),
      line_(line) {}

std::vector<double> SegmentHypothesis::delays() const {
    std::vector<double> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.delay_ms);
    return out;
}

Aggregate mean_of_defined(std::span<const std::optional<double>> values) {
    Aggregate agg;
    double sum = 0.0;
    for (const auto& v : values) {
        if (v) {
            sum += *v;
            ++agg.n_defined;
        } else {
            ++agg.n_skipped;
        }
    }
    if (agg.n_defined == 0)
        throw Error(ErrorKind::UndefinedInput,
                    values.empty() ? "no values to aggregate"
                                   : "every value is undefined");
    agg.mean = sum / static_cast<double>(agg.n_defined);
    return agg;
}

}  // namespace simullat
