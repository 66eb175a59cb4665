// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#include "simullat/longform.hpp"

#include <algorithm>
#include <optional>

#include "simullat/error.hpp"

namespace simullat::longform {

using metrics::MetricKind;

std::string_view to_string(StreamMetricKind kind) {
    switch (kind) {
        case StreamMetricKind::StreamLAAL: return "StreamLAAL";
        case StreamMetricKind::LongAL: return "LongAL";
        case StreamMetricKind::LongLAAL: return "LongLAAL";
        case StreamMetricKind::LongDAL: return "LongDAL";
        case StreamMetricKind::LongATD: return "LongATD";
        case StreamMetricKind::LongAP: return "LongAP";
        case StreamMetricKind::LongYAAL: return "LongYAAL";
    }
    return "?";
}

StreamMetricKind long_kind(MetricKind kind) {
    switch (kind) {
        case MetricKind::AP: return StreamMetricKind::LongAP;
        case MetricKind::AL: return StreamMetricKind::LongAL;
        case MetricKind::LAAL: return StreamMetricKind::LongLAAL;
        case MetricKind::DAL: return StreamMetricKind::LongDAL;
        case MetricKind::ATD: return StreamMetricKind::LongATD;
        case MetricKind::YAAL: return StreamMetricKind::LongYAAL;
    }
    return StreamMetricKind::LongLAAL;
}

namespace {

void check_stream(const StreamRecord& stream, const seg::Resegmentation& reseg) {
    if (stream.references.empty())
        throw Error(ErrorKind::Validation, "stream has no reference segments");
    if (reseg.segments.size() != stream.references.size())
        throw Error(ErrorKind::Validation,
                    "segmentation does not match the stream's reference segments");
}

void finish(StreamMetricValue& out) {
    std::vector<std::optional<double>> values;
    values.reserve(out.per_segment.size());
    for (const auto& s : out.per_segment)
        values.push_back(s.defined ? std::optional<double>(s.value) : std::nullopt);
    const auto agg = mean_of_defined(values);
    out.value = agg.mean;
    out.n_undefined = agg.n_skipped;
}

StreamMetricValue per_segment_metric(const StreamRecord& stream,
                                     const seg::Resegmentation& reseg,
                                     MetricKind kind, StreamMetricKind label) {
    check_stream(stream, reseg);
    StreamMetricValue out;
    out.kind = label;
    for (const auto& segment : reseg.segments) {
        SegmentMetric sm;
        sm.index = segment.index;
        sm.n_tokens = segment.tokens.size();
        if (!segment.tokens.empty()) {
            const auto& delays = segment.delays_rel_ms;
            const auto v = metrics::compute(kind, delays, segment.duration_ms,
                                            segment.reference_length);
            sm.defined = v.defined;
            sm.value = v.value;
            sm.n_tail_excluded =
                metrics::excluded_token_count(kind, delays, segment.duration_ms);
        }
        out.per_segment.push_back(sm);
    }
    finish(out);
    return out;
}

}  // namespace

StreamMetricValue stream_metric(const StreamRecord& stream,
                                const seg::Resegmentation& reseg,
                                MetricKind kind) {
    if (kind == MetricKind::YAAL) return long_yaal(stream, reseg);
    return per_segment_metric(stream, reseg, kind, long_kind(kind));
}

StreamMetricValue stream_metric(const StreamRecord& stream, MetricKind kind) {
    return stream_metric(stream, seg::resegment_stream(stream), kind);
}

StreamMetricValue long_yaal(const StreamRecord& stream,
                            const seg::Resegmentation& reseg) {
    check_stream(stream, reseg);
    const double stream_end = stream.total_duration_ms();
    StreamMetricValue out;
    out.kind = StreamMetricKind::LongYAAL;
    for (const auto& segment : reseg.segments) {
        SegmentMetric sm;
        sm.index = segment.index;
        sm.n_tokens = segment.tokens.size();
        // Absolute delays are sorted, so the included tokens form a prefix.
        std::size_t included = 0;
        while (included < segment.tokens.size() &&
               segment.tokens[included].delay_ms < stream_end)
            ++included;
        sm.n_tail_excluded = segment.tokens.size() - included;
        if (included > 0) {
            if (segment.reference_length == 0)
                throw Error(ErrorKind::Validation,
                            "segment " + std::to_string(segment.index) +
                                " has an empty reference");
            sm.defined = true;
            sm.value = metrics::lagging_mean(
                segment.delays_rel_ms, included, segment.duration_ms,
                std::max(included, segment.reference_length));
        }
        out.per_segment.push_back(sm);
    }
    finish(out);
    return out;
}

StreamMetricValue long_yaal(const StreamRecord& stream) {
    return long_yaal(stream, seg::resegment_stream(stream));
}

StreamMetricValue stream_laal_compat(const StreamRecord& stream,
                                     const seg::Resegmentation& segmentation) {
    const auto& hyp = stream.hypothesis.tokens;
    std::size_t covered = 0;
    for (const auto& segment : segmentation.segments) {
        for (const auto& tok : segment.tokens) {
            if (covered >= hyp.size() || tok.token != hyp[covered].token ||
                tok.delay_ms != hyp[covered].delay_ms)
                throw Error(ErrorKind::Validation,
                            "segmentation is not a partition of the stream hypothesis");
            ++covered;
        }
    }
    if (covered != hyp.size())
        throw Error(ErrorKind::Validation,
                    "segmentation is not a partition of the stream hypothesis");
    return per_segment_metric(stream, segmentation, MetricKind::LAAL,
                              StreamMetricKind::StreamLAAL);
}

nlohmann::ordered_json to_json(const StreamMetricValue& value,
                               std::string_view stream_id) {
    nlohmann::ordered_json out;
    out["stream_id"] = stream_id;
    out["kind"] = to_string(value.kind);
    out["value"] = value.value;
    auto per = nlohmann::ordered_json::array();
    for (const auto& s : value.per_segment) {
        nlohmann::ordered_json item;
        item["index"] = s.index;
        item["value"] = s.defined ? nlohmann::ordered_json(s.value) : nullptr;
        item["defined"] = s.defined;
        item["n_tokens"] = s.n_tokens;
        item["n_tail_excluded"] = s.n_tail_excluded;
        per.push_back(std::move(item));
    }
    out["per_segment"] = std::move(per);
    return out;
}

}  // namespace simullat::longform
