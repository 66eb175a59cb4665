// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#include "simullat/shortform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simullat/error.hpp"

namespace simullat::metrics {

std::string_view to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::AP: return "AP";
        case MetricKind::AL: return "AL";
        case MetricKind::LAAL: return "LAAL";
        case MetricKind::DAL: return "DAL";
        case MetricKind::ATD: return "ATD";
        case MetricKind::YAAL: return "YAAL";
    }
    return "?";
}

MetricKind parse_metric_kind(std::string_view name) {
    for (auto kind : kAllMetricKinds)
        if (to_string(kind) == name) return kind;
    throw Error(ErrorKind::Usage, "unknown metric '" + std::string(name) + "'");
}

std::vector<MetricKind> parse_metric_list(std::string_view names) {
    std::vector<MetricKind> out;
    std::size_t pos = 0;
    while (pos <= names.size()) {
        auto end = names.find(',', pos);
        if (end == std::string_view::npos) end = names.size();
        auto item = names.substr(pos, end - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) {
            const auto kind = parse_metric_kind(item);
            if (std::find(out.begin(), out.end(), kind) == out.end())
                out.push_back(kind);
        }
        pos = end + 1;
    }
    if (out.empty()) throw Error(ErrorKind::Usage, "empty metric list");
    return out;
}

bool needs_reference(MetricKind kind) {
    return kind == MetricKind::AL || kind == MetricKind::LAAL ||
           kind == MetricKind::YAAL;
}

namespace {

void check_segment(std::span<const double> delays, double source_ms) {
    if (delays.empty())
        throw Error(ErrorKind::UndefinedInput, "hypothesis has no tokens");
    if (!(source_ms > 0.0))
        throw Error(ErrorKind::Validation, "source duration must be positive");
    if (!std::is_sorted(delays.begin(), delays.end()))
        throw Error(ErrorKind::Validation, "delays must be non-decreasing");
}

void check_reference(std::size_t ref_len) {
    if (ref_len == 0)
        throw Error(ErrorKind::Validation, "reference has no tokens");
}

}  // namespace

double average_proportion(std::span<const double> delays, double source_ms) {
    check_segment(delays, source_ms);
    double sum = 0.0;
    for (double d : delays) sum += std::clamp(d, 0.0, source_ms) / source_ms;
    return sum / static_cast<double>(delays.size());
}

std::size_t cutoff_tau(std::span<const double> delays, double source_ms) {
    if (delays.empty())
        throw Error(ErrorKind::UndefinedInput, "hypothesis has no tokens");
    for (std::size_t i = 0; i < delays.size(); ++i)
        if (delays[i] >= source_ms) return i + 1;
    return delays.size();
}

std::size_t cutoff_tau_yaal(std::span<const double> delays, double source_ms) {
    // Delays are sorted, so the tokens before the end form a prefix.
    return static_cast<std::size_t>(
        std::lower_bound(delays.begin(), delays.end(), source_ms) - delays.begin());
}

double lagging_mean(std::span<const double> delays, std::size_t count,
                    double source_ms, std::size_t rate_len) {
    double sum = 0.0;
    const double len = static_cast<double>(rate_len);
    for (std::size_t i = 0; i < count; ++i)
        sum += delays[i] - static_cast<double>(i) * source_ms / len;
    return sum / static_cast<double>(count);
}

double average_lagging(std::span<const double> delays, double source_ms,
                       std::size_t ref_len) {
    check_segment(delays, source_ms);
    check_reference(ref_len);
    return lagging_mean(delays, cutoff_tau(delays, source_ms), source_ms, ref_len);
}

double length_adaptive_lagging(std::span<const double> delays, double source_ms,
                               std::size_t ref_len) {
    check_segment(delays, source_ms);
    check_reference(ref_len);
    return lagging_mean(delays, cutoff_tau(delays, source_ms), source_ms,
                        std::max(delays.size(), ref_len));
}

double differentiable_lagging(std::span<const double> delays, double source_ms) {
    check_segment(delays, source_ms);
    const double n = static_cast<double>(delays.size());
    const double step = source_ms / n;  // 1/gamma with gamma = |Y|/|X|
    double sum = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < delays.size(); ++i) {
        const double adjusted = i == 0 ? delays[0] : std::max(delays[i], prev + step);
        sum += adjusted - static_cast<double>(i) * source_ms / n;
        prev = adjusted;
    }
    return sum / n;
}

double average_token_delay(std::span<const double> delays, double source_ms) {
    check_segment(delays, source_ms);
    const auto n_source =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(source_ms / kAtdSourceTokenMs)));
    // End time of source token k (1-based); the last one is cut at the end.
    auto token_end = [&](std::size_t k) {
        return std::min(static_cast<double>(k) * kAtdSourceTokenMs, source_ms);
    };
    auto tokens_read = [&](double delay) -> std::size_t {
        if (delay >= source_ms) return n_source;
        return std::min(n_source,
                        static_cast<std::size_t>(std::floor(delay / kAtdSourceTokenMs)));
    };

    // Accumulated source and target lengths at the previous chunk boundary.
    std::size_t prev_target = 0;
    std::size_t prev_source = 0;
    std::size_t source = 0;
    double sum = 0.0;
    for (std::size_t t = 0; t < delays.size(); ++t) {
        if (t == 0 || delays[t] > delays[t - 1]) {
            prev_source = source;
            prev_target = t;
            source = tokens_read(delays[t]);
        }
        const std::size_t surplus = prev_target > prev_source ? prev_target - prev_source : 0;
        const std::size_t shifted = t + 1 - surplus;
        const std::size_t aligned = std::min(shifted, source);
        const double source_time = aligned == 0 ? 0.0 : token_end(aligned);
        sum += delays[t] - source_time;
    }
    return sum / static_cast<double>(delays.size());
}

std::optional<double> yet_another_lagging(std::span<const double> delays,
                                          double source_ms, std::size_t ref_len) {
    check_segment(delays, source_ms);
    check_reference(ref_len);
    const std::size_t tau = cutoff_tau_yaal(delays, source_ms);
    if (tau == 0) return std::nullopt;
    return lagging_mean(delays, tau, source_ms, std::max(tau, ref_len));
}

MetricValue compute(MetricKind kind, std::span<const double> delays,
                    double source_ms, std::size_t ref_len) {
    MetricValue out{kind, 0.0, true};
    switch (kind) {
        case MetricKind::AP:
            out.value = average_proportion(delays, source_ms);
            break;
        case MetricKind::AL:
            out.value = average_lagging(delays, source_ms, ref_len);
            break;
        case MetricKind::LAAL:
            out.value = length_adaptive_lagging(delays, source_ms, ref_len);
            break;
        case MetricKind::DAL:
            out.value = differentiable_lagging(delays, source_ms);
            break;
        case MetricKind::ATD:
            out.value = average_token_delay(delays, source_ms);
            break;
        case MetricKind::YAAL: {
            const auto v = yet_another_lagging(delays, source_ms, ref_len);
            out.defined = v.has_value();
            out.value = v.value_or(0.0);
            break;
        }
    }
    return out;
}

MetricValue compute(MetricKind kind, const SegmentHypothesis& seg,
                    std::size_t ref_len) {
    const auto delays = seg.delays();
    return compute(kind, delays, seg.source_duration_ms, ref_len);
}

std::size_t excluded_token_count(MetricKind kind, std::span<const double> delays,
                                 double source_ms) {
    if (delays.empty()) return 0;
    switch (kind) {
        case MetricKind::AL:
        case MetricKind::LAAL:
            return delays.size() - cutoff_tau(delays, source_ms);
        case MetricKind::YAAL:
            return delays.size() - cutoff_tau_yaal(delays, source_ms);
        default:
            return 0;
    }
}

MetricValue ap(const SegmentHypothesis& seg) { return compute(MetricKind::AP, seg, 1); }
MetricValue al(const SegmentHypothesis& seg, std::size_t ref_len) {
    return compute(MetricKind::AL, seg, ref_len);
}
MetricValue laal(const SegmentHypothesis& seg, std::size_t ref_len) {
    return compute(MetricKind::LAAL, seg, ref_len);
}
MetricValue dal(const SegmentHypothesis& seg) { return compute(MetricKind::DAL, seg, 1); }
MetricValue atd(const SegmentHypothesis& seg) { return compute(MetricKind::ATD, seg, 1); }
MetricValue yaal(const SegmentHypothesis& seg, std::size_t ref_len) {
    return compute(MetricKind::YAAL, seg, ref_len);
}

Aggregate corpus_aggregate(std::span<const MetricValue> values) {
    std::vector<std::optional<double>> opts;
    opts.reserve(values.size());
    for (const auto& v : values) opts.push_back(v.as_optional());
    return mean_of_defined(opts);
}

double tail_fraction(std::span<const SegmentHypothesis> segments) {
    std::size_t total = 0;
    std::size_t tail = 0;
    for (const auto& seg : segments) {
        total += seg.size();
        for (const auto& t : seg.tokens)
            if (t.delay_ms >= seg.source_duration_ms) ++tail;
    }
    if (total == 0)
        throw Error(ErrorKind::UndefinedInput, "corpus has no hypothesis tokens");
    return static_cast<double>(tail) / static_cast<double>(total);
}

}  // namespace simullat::metrics
