// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "simullat/softsegmenter.hpp"
#include "simullat/types.hpp"

namespace simullat::truelat {

struct TrueLatency {
    double value_ms = 0.0;
    bool defined = false;
    // d_i - d_src_i for every eligible target token, in token order.
    std::vector<double> contributions;
};

// Mean gap between each aligned target token emitted before the end of the
// source and the latest end time among its linked source words.
TrueLatency true_latency(const SegmentHypothesis& seg, const AlignmentTable& table);

Aggregate true_latency_corpus(std::span<const TrueLatency> values);

// Long-form variant: one table per resegmented segment, target indices local
// to that segment, absolute times throughout. Tokens count as online when
// emitted before the end of the stream.
std::vector<TrueLatency> true_latency_stream(const seg::Resegmentation& reseg,
                                             std::span<const AlignmentTable> tables,
                                             double stream_duration_ms);

}  // namespace simullat::truelat
