// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#include "simullat/metaeval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "simullat/error.hpp"

namespace simullat::meta {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw Error(ErrorKind::Schema, std::string("run report lacks '") + key + "'");
    return *it;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

SystemRun system_run_from_json(const json& report) {
    if (!report.is_object())
        throw Error(ErrorKind::Schema, "run report must be a JSON object");
    SystemRun run;
    try {
        run.system_id = field(report, "system_id").get<std::string>();
        run.testset_id = field(report, "testset_id").get<std::string>();
        run.language_pair = field(report, "language_pair").get<std::string>();
        for (const auto& [name, entry] : field(report, "corpus").items())
            if (entry.is_object() && entry.contains("value") && entry["value"].is_number())
                run.scores[name] = entry["value"].get<double>();
        for (const auto& s : field(report, "segments")) {
            SegmentCounts c;
            c.n_tokens = field(s, "n_tokens").get<std::size_t>();
            c.n_online = field(s, "n_online").get<std::size_t>();
            c.source_ms = field(s, "source_ms").get<double>();
            run.segments.push_back(c);
        }
        if (auto it = report.find("true_latency"); it != report.end() && it->is_object()) {
            const auto& tl = *it;
            if (tl.contains("value") && tl["value"].is_number())
                run.true_latency = tl["value"].get<double>();
            for (const auto& v : field(tl, "per_segment"))
                if (v.is_number()) run.tl_per_segment.push_back(v.get<double>());
            if (auto ts = tl.find("token_samples"); ts != tl.end())
                run.tl_token_samples = ts->get<std::vector<double>>();
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Schema, std::string("malformed run report: ") + e.what());
    }
    return run;
}

bool ComparisonOutcome::agrees(std::string_view metric) const {
    auto it = delta_metric.find(std::string(metric));
    if (it == delta_metric.end())
        throw Error(ErrorKind::Validation,
                    "comparison lacks metric '" + std::string(metric) + "'");
    return sign(delta_tl) == sign(it->second);
}

Pairing build_outcomes(std::span<const SystemRun> runs, SampleSource source) {
    std::vector<const SystemRun*> sorted;
    for (const auto& r : runs) {
        if (!r.true_latency)
            throw Error(ErrorKind::Validation,
                        "run '" + r.system_id + "' has no true latency");
        sorted.push_back(&r);
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto* x, const auto* y) {
        return x->system_id < y->system_id;
    });

    Pairing out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const auto& a = *sorted[i];
            const auto& b = *sorted[j];
            if (a.testset_id != b.testset_id || a.language_pair != b.language_pair) {
                ++out.n_skipped;
                continue;
            }
            ComparisonOutcome c;
            c.system_a = a.system_id;
            c.system_b = b.system_id;
            c.delta_tl = *a.true_latency - *b.true_latency;
            for (const auto& [name, score] : a.scores)
                if (auto it = b.scores.find(name); it != b.scores.end())
                    c.delta_metric[name] = score - it->second;
            const auto& sa = source == SampleSource::SegmentTL ? a.tl_per_segment
                                                               : a.tl_token_samples;
            const auto& sb = source == SampleSource::SegmentTL ? b.tl_per_segment
                                                               : b.tl_token_samples;
            c.p_value = (sa.empty() || sb.empty()) ? 1.0 : mann_whitney_u(sa, sb).p_value;
            out.outcomes.push_back(std::move(c));
        }
    }
    return out;
}

namespace {

// 1 for agreement, 0 otherwise, over the pairs with a non-zero dTL.
std::vector<std::uint8_t> agreement_vector(std::span<const ComparisonOutcome> outcomes,
                                           std::string_view metric) {
    std::vector<std::uint8_t> out;
    out.reserve(outcomes.size());
    for (const auto& o : outcomes)
        if (o.delta_tl != 0.0) out.push_back(o.agrees(metric) ? 1 : 0);
    return out;
}

}  // namespace

double sign_accuracy(std::span<const ComparisonOutcome> outcomes,
                     std::string_view metric) {
    const auto agree = agreement_vector(outcomes, metric);
    if (agree.empty())
        throw Error(ErrorKind::UndefinedInput, "no system pair with a true-latency difference");
    const auto hits = std::accumulate(agree.begin(), agree.end(), std::size_t{0});
    return static_cast<double>(hits) / static_cast<double>(agree.size());
}

MannWhitney mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        throw Error(ErrorKind::UndefinedInput, "Mann-Whitney needs two non-empty samples");
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t n = na + nb;

    std::vector<std::pair<double, bool>> pooled;  // value, belongs to a
    pooled.reserve(n);
    for (double x : a) pooled.emplace_back(x, true);
    for (double x : b) pooled.emplace_back(x, false);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    // Doubled midranks keep every rank an integer.
    std::vector<std::uint64_t> rank2(n);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && pooled[j].first == pooled[i].first) ++j;
        const std::uint64_t mid2 = (i + 1) + j;  // 2 * mean of ranks i+1..j
        for (std::size_t k = i; k < j; ++k) rank2[k] = mid2;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    std::uint64_t sum2_a = 0, sum2_b = 0;
    for (std::size_t k = 0; k < n; ++k) (pooled[k].second ? sum2_a : sum2_b) += rank2[k];

    MannWhitney out;
    const double fa = static_cast<double>(na), fb = static_cast<double>(nb);
    out.u_a = static_cast<double>(sum2_a) / 2.0 - fa * (fa + 1.0) / 2.0;
    out.u_b = static_cast<double>(sum2_b) / 2.0 - fb * (fb + 1.0) / 2.0;

    if (na < 8 || nb < 8) {
        out.exact = true;
        // Count subsets of size k of the pooled doubled ranks by their sum;
        // the two-sided test is symmetric, so use the smaller sample.
        const bool use_a = na <= nb;
        const std::size_t k = use_a ? na : nb;
        const std::uint64_t observed = use_a ? sum2_a : sum2_b;
        const std::uint64_t centre2 = k * (n + 1);  // doubled expected rank sum
        std::uint64_t max_sum = 0;
        for (std::size_t i = 0; i < k; ++i) max_sum += rank2[n - 1 - i];
        std::vector<std::vector<long double>> ways(
            k + 1, std::vector<long double>(max_sum + 1, 0.0L));
        ways[0][0] = 1.0L;
        for (std::size_t e = 0; e < n; ++e) {
            const auto r = rank2[e];
            for (std::size_t c = std::min(k, e + 1); c >= 1; --c)
                for (std::uint64_t s = max_sum; s >= r; --s) {
                    ways[c][s] += ways[c - 1][s - r];
                    if (s == r) break;
                }
        }
        auto dist = [&](std::uint64_t s) {
            return s > centre2 ? s - centre2 : centre2 - s;
        };
        const auto obs_dist = dist(observed);
        long double total = 0.0L, extreme = 0.0L;
        for (std::uint64_t s = 0; s <= max_sum; ++s) {
            const auto w = ways[k][s];
            if (w == 0.0L) continue;
            total += w;
            if (dist(s) >= obs_dist) extreme += w;
        }
        out.p_value = static_cast<double>(std::min(1.0L, extreme / total));
        return out;
    }

    const double fn = static_cast<double>(n);
    const double mu = fa * fb / 2.0;
    const double var = fa * fb / 12.0 * ((fn + 1.0) - tie_term / (fn * (fn - 1.0)));
    if (!(var > 0.0)) {
        out.p_value = 1.0;
        return out;
    }
    const double z = (std::abs(out.u_a - mu) - 0.5) / std::sqrt(var);
    out.p_value = std::min(1.0, std::erfc(std::max(z, 0.0) / std::sqrt(2.0)));
    return out;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

namespace {

// Unbiased draw in [0, n) by rejection; std::uniform_int_distribution is
// implementation-defined and would break cross-platform reproducibility.
std::size_t draw_index(std::mt19937_64& engine, std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = engine();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

double percentile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

ConfidenceInterval bootstrap_accuracy_ci(std::span<const ComparisonOutcome> outcomes,
                                         std::string_view metric,
                                         std::size_t n_resamples, std::uint64_t seed,
                                         unsigned threads) {
    if (n_resamples == 0)
        throw Error(ErrorKind::Usage, "bootstrap needs at least one resample");
    const auto agree = agreement_vector(outcomes, metric);
    if (agree.empty())
        throw Error(ErrorKind::UndefinedInput, "no system pair with a true-latency difference");
    const std::size_t n = agree.size();

    std::vector<double> acc(n_resamples);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            std::mt19937_64 engine(mix64(seed + r + 1));
            std::size_t hits = 0;
            for (std::size_t k = 0; k < n; ++k) hits += agree[draw_index(engine, n)];
            acc[r] = static_cast<double>(hits) / static_cast<double>(n);
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_resamples)));
    if (threads == 1) {
        work(0, n_resamples);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n_resamples + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(n_resamples, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
    }
    std::sort(acc.begin(), acc.end());
    return {percentile(acc, 0.025), percentile(acc, 0.975)};
}

std::string_view to_string(PValueBucket bucket) {
    switch (bucket) {
        case PValueBucket::All: return "all";
        case PValueBucket::Below005: return "p<0.05";
        case PValueBucket::Below0001: return "p<0.001";
        case PValueBucket::Between: return "0.001<=p<0.05";
    }
    return "?";
}

bool in_bucket(PValueBucket bucket, double p) {
    switch (bucket) {
        case PValueBucket::All: return true;
        case PValueBucket::Below005: return p < 0.05;
        case PValueBucket::Below0001: return p < 0.001;
        case PValueBucket::Between: return p >= 0.001 && p < 0.05;
    }
    return false;
}

std::vector<ComparisonOutcome> filter_bucket(std::span<const ComparisonOutcome> outcomes,
                                             PValueBucket bucket) {
    std::vector<ComparisonOutcome> out;
    for (const auto& o : outcomes)
        if (in_bucket(bucket, o.p_value)) out.push_back(o);
    return out;
}

std::vector<AccuracyRow> accuracy_table(std::span<const ComparisonOutcome> outcomes,
                                        std::span<const std::string> metrics,
                                        std::size_t n_resamples, std::uint64_t seed,
                                        unsigned threads) {
    std::vector<AccuracyRow> rows;
    for (const auto& metric : metrics) {
        for (auto bucket : kAllBuckets) {
            const auto subset = filter_bucket(outcomes, bucket);
            AccuracyRow row;
            row.metric = metric;
            row.bucket = bucket;
            row.n_pairs = agreement_vector(subset, metric).size();
            if (row.n_pairs > 0) {
                row.accuracy = sign_accuracy(subset, metric);
                row.ci = bootstrap_accuracy_ci(subset, metric, n_resamples, seed, threads);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

std::string fixed4(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

}  // namespace

std::string accuracy_table_tsv(std::span<const AccuracyRow> rows) {
    std::string out = "metric\tbucket\taccuracy\tci_low\tci_high\tn_pairs\n";
    for (const auto& r : rows) {
        out += r.metric;
        out += '\t';
        out += to_string(r.bucket);
        if (r.accuracy) {
            out += '\t' + fixed4(*r.accuracy) + '\t' + fixed4(r.ci.low) + '\t' +
                   fixed4(r.ci.high);
        } else {
            out += "\tNA\tNA\tNA";
        }
        out += '\t' + std::to_string(r.n_pairs) + '\n';
    }
    return out;
}

std::vector<std::string> common_metrics(std::span<const SystemRun> runs) {
    static const std::vector<std::string> kOrder = {
        "StreamLAAL", "AL",       "LAAL",    "DAL",    "ATD",     "AP",
        "YAAL",       "LongAL",   "LongLAAL", "LongDAL", "LongATD", "LongAP",
        "LongYAAL"};
    std::vector<std::string> out;
    if (runs.empty()) return out;
    auto everywhere = [&](const std::string& name) {
        return std::all_of(runs.begin(), runs.end(),
                           [&](const SystemRun& r) { return r.scores.count(name) > 0; });
    };
    for (const auto& name : kOrder)
        if (everywhere(name)) out.push_back(name);
    for (const auto& [name, _] : runs.front().scores)
        if (std::find(kOrder.begin(), kOrder.end(), name) == kOrder.end() && everywhere(name))
            out.push_back(name);
    return out;
}

double observed_online_fraction(const SystemRun& run) {
    std::size_t total = 0, online = 0;
    for (const auto& s : run.segments) {
        total += s.n_tokens;
        online += s.n_online;
    }
    if (total == 0)
        throw Error(ErrorKind::UndefinedInput, "run has no hypothesis tokens");
    return static_cast<double>(online) / static_cast<double>(total);
}

ExpectedFraction expected_online_fraction(double latency_ms, double avg_segment_ms) {
    if (!(avg_segment_ms > 0.0))
        throw Error(ErrorKind::Validation, "average segment length must be positive");
    ExpectedFraction out;
    out.raw = (avg_segment_ms - latency_ms) / avg_segment_ms;
    out.clamped = std::clamp(out.raw, 0.0, 1.0);
    return out;
}

AnomalyResult detect_anomalous(const SystemRun& run, std::string_view metric,
                               double threshold) {
    auto it = run.scores.find(std::string(metric));
    if (it == run.scores.end())
        throw Error(ErrorKind::Validation, "run '" + run.system_id + "' has no " +
                                               std::string(metric) + " score");
    if (run.segments.empty())
        throw Error(ErrorKind::UndefinedInput, "run has no segments");
    double total_ms = 0.0;
    for (const auto& s : run.segments) total_ms += s.source_ms;
    const double avg = total_ms / static_cast<double>(run.segments.size());

    AnomalyResult out;
    out.observed = observed_online_fraction(run);
    out.expected = expected_online_fraction(it->second, avg);
    out.flag = out.expected.clamped - out.observed > threshold;
    return out;
}

}  // namespace simullat::meta
