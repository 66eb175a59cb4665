// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#include "simullat/true_latency.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "simullat/error.hpp"

namespace simullat::truelat {

TrueLatency true_latency(const SegmentHypothesis& seg, const AlignmentTable& table) {
    const std::size_t n = seg.size();
    std::vector<std::optional<double>> source_end(n);
    for (const auto& [tgt, src] : table.links) {
        if (tgt >= n)
            throw Error(ErrorKind::Validation,
                        "link target index " + std::to_string(tgt) +
                            " out of range for " + std::to_string(n) + " tokens");
        if (src >= table.source_words.size())
            throw Error(ErrorKind::Validation,
                        "link source index " + std::to_string(src) + " out of range");
        const double end = table.source_words[src].end_ms;
        source_end[tgt] = source_end[tgt] ? std::max(*source_end[tgt], end) : end;
    }

    TrueLatency out;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = seg.tokens[i].delay_ms;
        if (!source_end[i] || d >= seg.source_duration_ms) continue;
        out.contributions.push_back(d - *source_end[i]);
        sum += out.contributions.back();
    }
    if (!out.contributions.empty()) {
        out.defined = true;
        out.value_ms = sum / static_cast<double>(out.contributions.size());
    }
    return out;
}

Aggregate true_latency_corpus(std::span<const TrueLatency> values) {
    std::vector<std::optional<double>> opts;
    opts.reserve(values.size());
    for (const auto& v : values)
        opts.push_back(v.defined ? std::optional<double>(v.value_ms) : std::nullopt);
    return mean_of_defined(opts);
}

std::vector<TrueLatency> true_latency_stream(const seg::Resegmentation& reseg,
                                             std::span<const AlignmentTable> tables,
                                             double stream_duration_ms) {
    if (tables.size() != reseg.segments.size())
        throw Error(ErrorKind::Validation,
                    std::to_string(tables.size()) + " alignment tables for " +
                        std::to_string(reseg.segments.size()) + " segments");
    std::vector<TrueLatency> out;
    out.reserve(tables.size());
    for (std::size_t s = 0; s < tables.size(); ++s) {
        SegmentHypothesis window;
        window.tokens = reseg.segments[s].tokens;
        window.source_duration_ms = stream_duration_ms;
        out.push_back(true_latency(window, tables[s]));
    }
    return out;
}

}  // namespace simullat::truelat
