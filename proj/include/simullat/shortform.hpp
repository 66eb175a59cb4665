// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "simullat/types.hpp"

namespace simullat::metrics {

enum class MetricKind { AP, AL, LAAL, DAL, ATD, YAAL };

inline constexpr MetricKind kAllMetricKinds[] = {
    MetricKind::AL,  MetricKind::LAAL, MetricKind::DAL,
    MetricKind::ATD, MetricKind::AP,   MetricKind::YAAL};

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view name);
// Comma-separated list, e.g. "AL,LAAL,YAAL".
std::vector<MetricKind> parse_metric_list(std::string_view names);
// AL, LAAL and YAAL normalize by the reference length.
bool needs_reference(MetricKind kind);

// AP is a proportion; every other kind is in milliseconds.
struct MetricValue {
    MetricKind kind = MetricKind::AP;
    double value = 0.0;
    bool defined = true;

    std::optional<double> as_optional() const {
        return defined ? std::optional<double>(value) : std::nullopt;
    }
};

// Source token length assumed by ATD.
inline constexpr double kAtdSourceTokenMs = 300.0;

// The functions below take the raw delay sequence of one segment. Delays must
// be non-decreasing and the source duration positive. Empty delay sequences
// raise UndefinedInput; a zero reference length raises Validation.

double average_proportion(std::span<const double> delays, double source_ms);

// 1-based index of the first delay reaching the end of the source; the
// sequence length when none does.
std::size_t cutoff_tau(std::span<const double> delays, double source_ms);
// 1-based index of the last delay strictly before the end of the source;
// 0 when there is none.
std::size_t cutoff_tau_yaal(std::span<const double> delays, double source_ms);

double average_lagging(std::span<const double> delays, double source_ms,
                       std::size_t ref_len);
double length_adaptive_lagging(std::span<const double> delays, double source_ms,
                               std::size_t ref_len);
double differentiable_lagging(std::span<const double> delays, double source_ms);
double average_token_delay(std::span<const double> delays, double source_ms);
// nullopt when no token precedes the end of the source.
std::optional<double> yet_another_lagging(std::span<const double> delays,
                                          double source_ms,
                                          std::size_t ref_len);

// Mean of (d_i - (i-1) * source_ms / rate_len) over the first `count`
// delays. Shared by the AL family so their summands are computed identically.
double lagging_mean(std::span<const double> delays, std::size_t count,
                    double source_ms, std::size_t rate_len);

MetricValue compute(MetricKind kind, std::span<const double> delays,
                    double source_ms, std::size_t ref_len);
MetricValue compute(MetricKind kind, const SegmentHypothesis& seg,
                    std::size_t ref_len);

// Number of tokens a metric leaves out of its sum (AL/LAAL past the cutoff,
// YAAL at or after the end); 0 for AP, DAL and ATD.
std::size_t excluded_token_count(MetricKind kind, std::span<const double> delays,
                                 double source_ms);

MetricValue ap(const SegmentHypothesis& seg);
MetricValue al(const SegmentHypothesis& seg, std::size_t ref_len);
MetricValue laal(const SegmentHypothesis& seg, std::size_t ref_len);
MetricValue dal(const SegmentHypothesis& seg);
MetricValue atd(const SegmentHypothesis& seg);
MetricValue yaal(const SegmentHypothesis& seg, std::size_t ref_len);

// Unweighted mean over segments, skipping undefined values.
Aggregate corpus_aggregate(std::span<const MetricValue> values);

// Fraction of tokens emitted at or after the end of their segment.
double tail_fraction(std::span<const SegmentHypothesis> segments);

}  // namespace simullat::metrics
