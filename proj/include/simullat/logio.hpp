// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simullat/types.hpp"

namespace simullat::io {

struct LogOptions {
    LangMode lang_mode = LangMode::Space;
    // `source_length` is given in seconds; delays are always milliseconds.
    bool source_length_in_seconds = false;
    // Repair non-monotone delays with a running maximum instead of failing.
    bool fix_monotonic = false;
};

// Parses newline-delimited SimulEval instance records, one segment each.
// Every repair applied (monotonic fix, replicated final delay) is appended
// to `repairs` when it is non-null.
std::vector<SegmentHypothesis> parse_instance_log(
    std::string_view text, const LogOptions& options,
    std::vector<std::string>* repairs = nullptr);

// Inverse of parse_instance_log for already-parsed segments.
std::string serialize_instance_log(std::span<const SegmentHypothesis> segments,
                                   LangMode mode);

// Joins token surfaces, separating with a space unless a token is glued.
std::string detokenize(std::span<const TokenEvent> tokens);

// One reference per line.
std::vector<SegmentReference> load_references(std::string_view text,
                                              LangMode mode);

// JSON array of {start_ms, duration_ms, reference}, time-sorted and
// non-overlapping.
std::vector<SegmentReference> load_stream_manifest(std::string_view text,
                                                   LangMode mode);

// Builds a stream, checking that the references fit inside the hypothesis'
// source duration (1 ms tolerance).
StreamRecord make_stream(SegmentHypothesis hypothesis,
                         std::vector<SegmentReference> references);

// {source_words:[{word,start_ms,end_ms}], links:[[tgt,src]]}. Target
// indices are checked only when `n_target_tokens` is given.
AlignmentTable load_alignment_table(
    std::string_view text,
    std::optional<std::size_t> n_target_tokens = std::nullopt);

// One alignment table per non-empty line.
std::vector<AlignmentTable> load_alignment_tables(std::string_view text);

std::string read_file(const std::filesystem::path& path);

}  // namespace simullat::io
