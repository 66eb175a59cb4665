// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace simullat::meta {

struct SegmentCounts {
    std::size_t n_tokens = 0;
    std::size_t n_online = 0;  // emitted strictly before the segment end
    double source_ms = 0.0;
};

// Everything the pairwise protocol needs from one evaluated system.
struct SystemRun {
    std::string system_id;
    std::string testset_id;
    std::string language_pair;
    std::map<std::string, double> scores;  // corpus value per metric name
    std::optional<double> true_latency;
    std::vector<double> tl_per_segment;    // defined segments only
    std::vector<double> tl_token_samples;  // per-token TL contributions
    std::vector<SegmentCounts> segments;
};

// Reads the run fields out of an `eval` report.
SystemRun system_run_from_json(const nlohmann::json& report);

enum class SampleSource { SegmentTL, TokenTL };

struct ComparisonOutcome {
    std::string system_a;
    std::string system_b;
    double delta_tl = 0.0;                       // TL(a) - TL(b)
    std::map<std::string, double> delta_metric;  // M(a) - M(b)
    double p_value = 1.0;                        // Mann-Whitney on TL samples

    // sign(dTL) == sign(dM); a zero dM never agrees with a non-zero dTL.
    bool agrees(std::string_view metric) const;
};

struct Pairing {
    std::vector<ComparisonOutcome> outcomes;
    std::size_t n_skipped = 0;  // pairs across test sets or language pairs
};

// All unordered pairs sharing a test set and language pair. Runs are ordered
// by system_id first so system_a < system_b.
Pairing build_outcomes(std::span<const SystemRun> runs,
                       SampleSource source = SampleSource::SegmentTL);

// Share of pairs with dTL != 0 on which the metric agrees. Throws when no
// such pair exists.
double sign_accuracy(std::span<const ComparisonOutcome> outcomes,
                     std::string_view metric);

struct MannWhitney {
    double u_a = 0.0;
    double u_b = 0.0;
    double p_value = 1.0;  // two-sided
    bool exact = false;
};

// Exact distribution of the rank sum when either sample has fewer than 8
// values (midranks, so ties are handled); otherwise the normal approximation
// with tie and continuity corrections.
MannWhitney mann_whitney_u(std::span<const double> a, std::span<const double> b);

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;
};

// SplitMix64 finalizer; derives the per-resample seed.
std::uint64_t mix64(std::uint64_t x);

// 2.5 / 97.5 percentiles (linear interpolation) of sign_accuracy over
// `n_resamples` resamples of the outcome list with replacement. Resample r
// draws from std::mt19937_64 seeded with mix64(seed + r + 1), so the result
// does not depend on `threads`.
ConfidenceInterval bootstrap_accuracy_ci(std::span<const ComparisonOutcome> outcomes,
                                         std::string_view metric,
                                         std::size_t n_resamples, std::uint64_t seed,
                                         unsigned threads = 1);

enum class PValueBucket { All, Below005, Below0001, Between };
inline constexpr PValueBucket kAllBuckets[] = {
    PValueBucket::All, PValueBucket::Below005, PValueBucket::Below0001,
    PValueBucket::Between};

std::string_view to_string(PValueBucket bucket);
bool in_bucket(PValueBucket bucket, double p_value);
std::vector<ComparisonOutcome> filter_bucket(std::span<const ComparisonOutcome> outcomes,
                                             PValueBucket bucket);

struct AccuracyRow {
    std::string metric;
    PValueBucket bucket = PValueBucket::All;
    std::optional<double> accuracy;  // nullopt when the bucket has no usable pair
    ConfidenceInterval ci;
    std::size_t n_pairs = 0;  // pairs with dTL != 0
};

std::vector<AccuracyRow> accuracy_table(std::span<const ComparisonOutcome> outcomes,
                                        std::span<const std::string> metrics,
                                        std::size_t n_resamples, std::uint64_t seed,
                                        unsigned threads = 1);

// metric, bucket, accuracy, ci_low, ci_high, n_pairs
std::string accuracy_table_tsv(std::span<const AccuracyRow> rows);

// Metric names every run reports, in a fixed display order.
std::vector<std::string> common_metrics(std::span<const SystemRun> runs);

// Share of tokens emitted strictly before their segment end.
double observed_online_fraction(const SystemRun& run);

struct ExpectedFraction {
    double raw = 0.0;
    double clamped = 0.0;  // raw clipped to [0, 1]
};

// (avg_segment_ms - latency_ms) / avg_segment_ms
ExpectedFraction expected_online_fraction(double latency_ms, double avg_segment_ms);

struct AnomalyResult {
    bool flag = false;
    double observed = 0.0;
    ExpectedFraction expected;
};

inline constexpr double kDefaultAnomalyThreshold = 0.15;

// Flags the run when the clamped expected fraction exceeds the observed one
// by more than `threshold`.
AnomalyResult detect_anomalous(const SystemRun& run, std::string_view metric,
                               double threshold = kDefaultAnomalyThreshold);

}  // namespace simullat::meta
