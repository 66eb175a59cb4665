// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace simullat {

enum class LangMode {
    Space,      // whitespace-delimited scripts
    Character,  // one token per character (Chinese, Japanese)
};

// One emitted hypothesis token.
struct TokenEvent {
    std::string token;    // normalized (case-folded) form used for alignment
    std::string surface;  // original-cased text
    double delay_ms = 0.0;  // source audio consumed at emission
    std::optional<double> elapsed_ms;  // opaque wall-clock metadata
    bool glued = false;  // no whitespace separated it from the previous token

    bool operator==(const TokenEvent&) const = default;
};

struct SegmentHypothesis {
    std::vector<TokenEvent> tokens;
    double source_duration_ms = 0.0;
    std::string raw_text;

    std::size_t size() const noexcept { return tokens.size(); }
    bool empty() const noexcept { return tokens.empty(); }
    std::vector<double> delays() const;

    bool operator==(const SegmentHypothesis&) const = default;
};

struct SegmentReference {
    std::vector<std::string> tokens;
    std::string raw_text;
    double start_ms = 0.0;     // offset within its stream, 0 in short-form
    double duration_ms = 0.0;  // 0 when unknown (short-form references)

    std::size_t size() const noexcept { return tokens.size(); }
    bool operator==(const SegmentReference&) const = default;
};

// An unsegmented stream: one continuous hypothesis, time-sorted references.
struct StreamRecord {
    SegmentHypothesis hypothesis;
    std::vector<SegmentReference> references;

    double total_duration_ms() const noexcept {
        return hypothesis.source_duration_ms;
    }
};

struct SourceWord {
    std::string word;
    double start_ms = 0.0;
    double end_ms = 0.0;

    bool operator==(const SourceWord&) const = default;
};

// Source-word timings plus (target_index, source_index) links, 0-based.
struct AlignmentTable {
    std::vector<SourceWord> source_words;
    std::vector<std::pair<std::size_t, std::size_t>> links;

    bool operator==(const AlignmentTable&) const = default;
};

// Mean over the defined entries of a list of possibly-undefined values.
struct Aggregate {
    double mean = 0.0;
    std::size_t n_defined = 0;
    std::size_t n_skipped = 0;
};

// Throws UndefinedInput when no entry is defined (including empty input).
Aggregate mean_of_defined(std::span<const std::optional<double>> values);

}  // namespace simullat
