// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "simullat/shortform.hpp"
#include "simullat/softsegmenter.hpp"
#include "simullat/types.hpp"

namespace simullat::longform {

enum class StreamMetricKind {
    StreamLAAL,  // LAAL over an externally supplied segmentation
    LongAL,
    LongLAAL,
    LongDAL,
    LongATD,
    LongAP,
    LongYAAL,
};

std::string_view to_string(StreamMetricKind kind);
// Long* counterpart of a short-form metric (YAAL maps to LongYAAL).
StreamMetricKind long_kind(metrics::MetricKind kind);

struct SegmentMetric {
    std::size_t index = 0;
    double value = 0.0;
    bool defined = false;
    std::size_t n_tokens = 0;
    std::size_t n_tail_excluded = 0;
};

struct StreamMetricValue {
    StreamMetricKind kind = StreamMetricKind::LongLAAL;
    double value = 0.0;  // mean of the defined per-segment values
    std::vector<SegmentMetric> per_segment;
    std::size_t n_undefined = 0;
};

// Short-form metric on every segment (relative delays, manifest duration,
// segment reference length), averaged. Segments without tokens are
// undefined. YAAL dispatches to long_yaal.
StreamMetricValue stream_metric(const StreamRecord& stream,
                                const seg::Resegmentation& reseg,
                                metrics::MetricKind kind);
StreamMetricValue stream_metric(const StreamRecord& stream,
                                metrics::MetricKind kind);

// Per segment: every token emitted strictly before the end of the whole
// stream, relative delays allowed past the segment end, LAAL-style ideal
// delays with rate max(included tokens, reference length) / duration.
StreamMetricValue long_yaal(const StreamRecord& stream,
                            const seg::Resegmentation& reseg);
StreamMetricValue long_yaal(const StreamRecord& stream);

// LAAL over a caller-supplied segmentation, which must partition the
// stream's hypothesis.
StreamMetricValue stream_laal_compat(const StreamRecord& stream,
                                     const seg::Resegmentation& segmentation);

// {stream_id, kind, value, per_segment:[{index, value, defined, n_tokens,
// n_tail_excluded}]}
nlohmann::ordered_json to_json(const StreamMetricValue& value,
                               std::string_view stream_id);

}  // namespace simullat::longform
