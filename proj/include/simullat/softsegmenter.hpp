// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "simullat/types.hpp"

namespace simullat::seg {

// A match score, or nullopt when the match is forbidden.
using PairScore = std::optional<double>;

// Forbidden when the reference segment starts at or after the token's
// emission, or when exactly one of the tokens is punctuation; otherwise the
// character-set Jaccard similarity.
PairScore pair_score(std::string_view ref_token, double segment_start_ms,
                     std::string_view hyp_token, double delay_ms);

struct ResegmentedSegment {
    std::size_t index = 0;
    double start_ms = 0.0;
    double duration_ms = 0.0;
    std::size_t reference_length = 0;
    std::vector<TokenEvent> tokens;    // absolute delays
    std::vector<double> delays_rel_ms; // delay - start_ms
    std::string text;                  // original-cased, detokenized
};

struct Resegmentation {
    std::vector<ResegmentedSegment> segments;
    // Segment index of every hypothesis token, in stream order.
    std::vector<std::size_t> assignment;
    // Total match score of the alignment.
    double score = 0.0;
};

// Maximum-score monotone alignment of the hypothesis tokens against the
// concatenated reference tokens, with zero-cost gaps. Matched tokens follow
// their reference token's segment; unmatched ones follow the closest
// preceding matched token (the first segment when there is none). Ties in
// the backtrace prefer match, then skipping a hypothesis token.
Resegmentation align(std::span<const SegmentReference> references,
                     std::span<const TokenEvent> hypothesis);

Resegmentation resegment_stream(const StreamRecord& stream);

// Short-form view of one segment: relative delays, manifest duration.
SegmentHypothesis to_segment_hypothesis(const ResegmentedSegment& segment);

// Array of {segment_index, text, tokens, delays_abs_ms, delays_rel_ms}.
nlohmann::ordered_json to_json(const Resegmentation& reseg);

// Reads a segmentation in the to_json layout and checks that it partitions
// the stream's hypothesis (same tokens, same delays, same order) into the
// stream's reference segments.
Resegmentation resegmentation_from_json(const nlohmann::json& doc,
                                        const StreamRecord& stream);

// Rebuilds a Resegmentation from a per-token segment assignment.
Resegmentation from_assignment(std::span<const SegmentReference> references,
                               std::span<const TokenEvent> hypothesis,
                               std::vector<std::size_t> assignment);

}  // namespace simullat::seg
