// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>

#include "oracles.hpp"
#include "simullat/error.hpp"
#include "simullat/longform.hpp"
#include "simullat/metaeval.hpp"
#include "simullat/shortform.hpp"
#include "simullat/softsegmenter.hpp"

using namespace simullat;
using metrics::MetricKind;
using D = std::vector<double>;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

SegmentHypothesis to_hyp(const D& delays, double X) {
    SegmentHypothesis s;
    s.source_duration_ms = X;
    for (std::size_t i = 0; i < delays.size(); ++i)
        s.tokens.push_back({"w" + std::to_string(i % 3), "w", delays[i], std::nullopt, false});
    return s;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void metric_oracles() {
    std::mt19937_64 rng(1);
    const auto t0 = Clock::now();
    std::size_t mismatches = 0;
    for (int n = 0; n < 1000; ++n) {
        const auto s = oracle::random_segment(rng);
        const auto& d = s.delays;
        const double X = s.source_ms;
        const auto R = s.ref_len;
        mismatches += !oracle::close(metrics::average_proportion(d, X), oracle::ap(d, X));
        mismatches += !oracle::close(metrics::average_lagging(d, X, R), oracle::al(d, X, R));
        mismatches +=
            !oracle::close(metrics::length_adaptive_lagging(d, X, R), oracle::laal(d, X, R));
        mismatches += !oracle::close(metrics::differentiable_lagging(d, X), oracle::dal(d, X));
        mismatches += !oracle::close(metrics::average_token_delay(d, X), oracle::atd(d, X));
        const auto y = metrics::yet_another_lagging(d, X, R);
        const auto yo = oracle::yaal(d, X, R);
        mismatches += y.has_value() != yo.has_value() || (y && !oracle::close(*y, *yo));
    }
    const double secs = seconds_since(t0);
    report(1, "metric oracle equivalence", mismatches == 0 && secs < 10.0,
           fmt("%zu mismatches over 6000 comparisons, %.3f s", mismatches, secs));
}

void yaal_tail_invariance() {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> n_tail(1, 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t yaal_changed = 0, others_unchanged = 0, n = 0;
    while (n < 500) {
        auto s = oracle::random_segment(rng);
        if (s.delays.front() >= s.source_ms) continue;  // keep online segments
        ++n;
        const double X = s.source_ms;
        D tailed = s.delays;
        double last = std::max(X, tailed.back());
        for (int k = n_tail(rng); k > 0; --k) {
            last += std::round(u(rng) * 1000);
            tailed.push_back(last);
        }
        const auto y0 = metrics::yet_another_lagging(s.delays, X, s.ref_len);
        const auto y1 = metrics::yet_another_lagging(tailed, X, s.ref_len);
        if (!y0 || !y1 || !same_bits(*y0, *y1)) ++yaal_changed;
        const bool ap = metrics::average_proportion(s.delays, X) !=
                        metrics::average_proportion(tailed, X);
        const bool dal = metrics::differentiable_lagging(s.delays, X) !=
                         metrics::differentiable_lagging(tailed, X);
        const bool atd = metrics::average_token_delay(s.delays, X) !=
                         metrics::average_token_delay(tailed, X);
        if (!(ap || dal || atd)) ++others_unchanged;
    }
    report(2, "YAAL tail invariance", yaal_changed == 0 && others_unchanged == 0,
           fmt("YAAL changed on %zu/500, AP/DAL/ATD all unchanged on %zu/500", yaal_changed,
               others_unchanged));
}

void laal_dominates_al() {
    std::mt19937_64 rng(3);
    std::size_t below = 0, eq_violation = 0, strict_violation = 0, single_term = 0;
    for (int n = 0; n < 10000; ++n) {
        const auto s = oracle::random_segment(rng);
        const double al = metrics::average_lagging(s.delays, s.source_ms, s.ref_len);
        const double laal = metrics::length_adaptive_lagging(s.delays, s.source_ms, s.ref_len);
        below += laal < al;
        if (s.delays.size() <= s.ref_len) {
            eq_violation += laal != al;
        } else if (metrics::cutoff_tau(s.delays, s.source_ms) == 1) {
            // One summand with ideal delay 0: the rates cannot differ.
            ++single_term;
            eq_violation += laal != al;
        } else {
            strict_violation += !(laal > al);
        }
    }
    report(3, "LAAL >= AL", below == 0 && eq_violation == 0 && strict_violation == 0,
           fmt("LAAL<AL on %zu, equality broken on %zu, strict order broken on %zu of 10000 "
               "(%zu segments with |Y|>|Y^R| and tau=1 are equal by construction)",
               below, eq_violation, strict_violation, single_term));
}

void offline_edge_case() {
    bool ok = true;
    std::string worst;
    for (double X : {300.0, 1000.0, 2999.5, 3000.0, 7777.7}) {
        for (std::size_t n : {1u, 2u, 3u, 7u, 10u}) {
            const D d(n, X);
            const auto R = n;
            const double al = metrics::average_lagging(d, X, R);
            const double dal = metrics::differentiable_lagging(d, X);
            const double ap = metrics::average_proportion(d, X);
            const bool yaal_undef = !metrics::yet_another_lagging(d, X, R);
            const bool here = al == X && oracle::close(dal, X) && ap == 1.0 && yaal_undef;
            if (!here) worst = fmt("X=%g n=%zu AL=%.17g DAL=%.17g AP=%.17g", X, n, al, dal, ap);
            ok = ok && here;
        }
    }
    report(4, "offline edge case", ok,
           ok ? "AL=|X|, DAL=|X|, AP=1, YAAL undefined on 25 segments" : worst);
}

void long_yaal_identity() {
    std::mt19937_64 rng(5);
    std::size_t mismatches = 0, offline = 0;
    for (int n = 0; n < 200; ++n) {
        const auto s = oracle::random_segment(rng);
        StreamRecord stream;
        SegmentReference ref;
        for (std::size_t k = 0; k < s.ref_len; ++k) ref.tokens.push_back("w" + std::to_string(k % 3));
        ref.start_ms = 0;
        ref.duration_ms = s.source_ms;
        stream.references = {ref};
        stream.hypothesis = to_hyp(s.delays, s.source_ms);
        const auto y = metrics::yet_another_lagging(s.delays, s.source_ms, s.ref_len);
        try {
            const auto ly = longform::long_yaal(stream);
            mismatches += !y || !same_bits(ly.value, *y);
        } catch (const Error& e) {
            if (!y && e.kind() == ErrorKind::UndefinedInput) ++offline;
            else ++mismatches;
        }
    }
    report(5, "LongYAAL single-segment identity", mismatches == 0,
           fmt("%zu bitwise mismatches over 200 streams (%zu offline, undefined for both)",
               mismatches, offline));
}

void round_trip_resegmentation() {
    std::mt19937_64 rng(6);
    const std::vector<std::string> vocab = {"the", "a",  "cat", "sat",  "on",  "mat", "and",
                                            "dog", "ran", ",",   ".",    "it's", "über", "it"};
    std::uniform_int_distribution<std::size_t> n_segs(5, 20), n_tok(1, 12), ref_extra(0, 3),
        word(0, vocab.size() - 1);
    std::uniform_real_distribution<double> dur(500, 8000), gap(0, 500), u(0, 1);
    std::size_t boundary_errors = 0, value_errors = 0;
    double worst = 0;
    const int n_streams = 100;
    for (int trial = 0; trial < n_streams; ++trial) {
        StreamRecord stream;
        std::vector<SegmentHypothesis> gold;
        std::vector<std::size_t> gold_sizes, ref_lens;
        double start = 0;
        for (std::size_t s = 0, n = n_segs(rng); s < n; ++s) {
            SegmentReference ref;
            ref.start_ms = start;
            ref.duration_ms = std::round(dur(rng) * 100) / 100;
            D rel;
            for (std::size_t k = n_tok(rng); k > 0; --k) {
                ref.tokens.push_back(vocab[word(rng)]);
                double r;
                do r = std::round(u(rng) * ref.duration_ms * 100) / 100;
                while (r <= 0 || r >= ref.duration_ms);
                rel.push_back(r);
            }
            std::sort(rel.begin(), rel.end());
            SegmentHypothesis g;
            g.source_duration_ms = ref.duration_ms;
            for (std::size_t k = 0; k < rel.size(); ++k) {
                g.tokens.push_back({ref.tokens[k], ref.tokens[k], rel[k], std::nullopt, false});
                stream.hypothesis.tokens.push_back(
                    {ref.tokens[k], ref.tokens[k], start + rel[k], std::nullopt, false});
            }
            gold.push_back(g);
            gold_sizes.push_back(rel.size());
            ref_lens.push_back(ref.tokens.size());
            stream.references.push_back(ref);
            start += ref.duration_ms + std::round(gap(rng));
        }
        stream.hypothesis.source_duration_ms = start;

        const auto reseg = seg::resegment_stream(stream);
        for (std::size_t s = 0; s < gold.size(); ++s)
            boundary_errors += reseg.segments[s].tokens.size() != gold_sizes[s];

        for (auto kind : metrics::kAllMetricKinds) {
            std::vector<metrics::MetricValue> per;
            for (std::size_t s = 0; s < gold.size(); ++s)
                per.push_back(metrics::compute(kind, gold[s], ref_lens[s]));
            const double expected = metrics::corpus_aggregate(per).mean;
            const double got = longform::stream_metric(stream, reseg, kind).value;
            if (!oracle::close(got, expected)) ++value_errors;
            worst = std::max(worst, std::abs(got - expected) / std::max(std::abs(expected), 1.0));
        }
    }
    report(6, "round-trip resegmentation", boundary_errors == 0 && value_errors == 0,
           fmt("%d streams: %zu misplaced segments, %zu Long* values off (max rel err %.2e)",
               n_streams, boundary_errors, value_errors, worst));
}

void dp_optimality() {
    std::mt19937_64 rng(7);
    const std::vector<std::string> vocab = {"ab", "abc", "b", "ca", ",", ".", "d", "bd", "cab"};
    std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1), n_tok(0, 8),
        n_seg(1, 4);
    std::uniform_real_distribution<double> u(0, 1);
    const auto t0 = Clock::now();
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<SegmentReference> refs(n_seg(rng));
        std::vector<std::string> flat;
        std::vector<double> flat_start;
        const std::size_t n_ref = n_tok(rng);
        for (std::size_t s = 0; s < refs.size(); ++s) refs[s].start_ms = 600.0 * s;
        for (std::size_t k = 0; k < n_ref; ++k) {
            // Spread tokens over segments in order.
            const std::size_t s = k * refs.size() / std::max<std::size_t>(n_ref, 1);
            refs[s].tokens.push_back(vocab[word(rng)]);
        }
        for (const auto& r : refs)
            for (const auto& t : r.tokens) {
                flat.push_back(t);
                flat_start.push_back(r.start_ms);
            }
        std::vector<TokenEvent> hyp;
        double d = 0;
        for (std::size_t j = n_tok(rng); j > 0; --j) {
            d += u(rng) < 0.2 ? 0 : std::round(u(rng) * 700);
            hyp.push_back({vocab[word(rng)], "", d, std::nullopt, false});
        }
        const double got = seg::align(refs, hyp).score;
        const double best = oracle::best_alignment(
            flat.size(), hyp.size(), [&](std::size_t i, std::size_t j) {
                return seg::pair_score(flat[i], flat_start[i], hyp[j].token, hyp[j].delay_ms);
            });
        mismatches += !oracle::close(got, best, 1e-12);
    }
    const double secs = seconds_since(t0);
    report(7, "SoftSegmenter DP optimality", mismatches == 0 && secs < 30.0,
           fmt("%zu mismatches over 500 instances, %.3f s", mismatches, secs));
}

void atd_chunks() {
    const double a = metrics::average_token_delay(D{300, 600, 900}, 900);
    const double b = metrics::average_token_delay(D{600, 600}, 600);
    const double c = metrics::average_token_delay(D{300, 300, 600}, 600);
    const bool examples = a == 0.0 && b == 150.0 && c == 0.0;
    std::mt19937_64 rng(8);
    std::size_t mismatches = 0;
    for (int n = 0; n < 1000; ++n) {
        const auto s = oracle::random_segment(rng);
        mismatches +=
            !oracle::close(metrics::average_token_delay(s.delays, s.source_ms),
                           oracle::atd(s.delays, s.source_ms));
    }
    report(8, "ATD chunk simulation", examples && mismatches == 0,
           fmt("examples %g/%g/%g ms, %zu oracle mismatches over 1000", a, b, c, mismatches));
}

void statistics() {
    const D x = {1, 2, 3, 4}, y = {10, 11, 12, 13};
    const auto mw = meta::mann_whitney_u(x, y);
    const bool exact_ok = mw.exact && std::abs(mw.p_value - 2.0 / 70.0) <= 1e-12;

    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> len(1, 30), val(0, 20);
    std::size_t u_violations = 0;
    for (int n = 0; n < 1000; ++n) {
        D a(len(rng)), b(len(rng));
        for (auto& v : a) v = val(rng);
        for (auto& v : b) v = val(rng) + 0.5 * (n % 2);
        const auto r = meta::mann_whitney_u(a, b);
        u_violations += r.u_a + r.u_b != double(a.size() * b.size());
    }

    std::vector<meta::ComparisonOutcome> outcomes;
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 60; ++i) {
        meta::ComparisonOutcome o;
        o.delta_tl = u(rng);
        o.delta_metric["M"] = u(rng);
        outcomes.push_back(o);
    }
    const auto c1 = meta::bootstrap_accuracy_ci(outcomes, "M", 10000, 20250101);
    const auto c2 = meta::bootstrap_accuracy_ci(outcomes, "M", 10000, 20250101);
    const bool repeatable = same_bits(c1.low, c2.low) && same_bits(c1.high, c2.high);

    bool collapses = true;
    for (double sign_m : {1.0, -1.0}) {
        meta::ComparisonOutcome o;
        o.delta_tl = 2.0;
        o.delta_metric["M"] = sign_m;
        const std::vector<meta::ComparisonOutcome> constant(25, o);
        const auto ci = meta::bootstrap_accuracy_ci(constant, "M", 1000, 3);
        const double point = meta::sign_accuracy(constant, "M");
        collapses = collapses && ci.low == point && ci.high == point;
    }
    report(9, "statistics", exact_ok && u_violations == 0 && repeatable && collapses,
           fmt("exact p=%.17g, U-sum violations %zu/1000, CI [%.4f, %.4f] repeatable=%s, "
               "constant collapse=%s",
               mw.p_value, u_violations, c1.low, c1.high, repeatable ? "yes" : "no",
               collapses ? "yes" : "no"));
}

void tail_fraction_bookkeeping() {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> n_seg(1, 40);
    std::size_t violations = 0;
    for (int n = 0; n < 1000; ++n) {
        std::vector<SegmentHypothesis> corpus;
        meta::SystemRun run;
        for (int s = n_seg(rng); s > 0; --s) {
            const auto seg = oracle::random_segment(rng);
            corpus.push_back(to_hyp(seg.delays, seg.source_ms));
            meta::SegmentCounts c;
            c.n_tokens = seg.delays.size();
            for (double d : seg.delays) c.n_online += d < seg.source_ms;
            c.source_ms = seg.source_ms;
            run.segments.push_back(c);
        }
        violations += meta::observed_online_fraction(run) + metrics::tail_fraction(corpus) != 1.0;
    }

    // 25 segments of 4 tokens: 18 emit everything at or after the end, 7 none.
    std::vector<SegmentHypothesis> high;
    for (int s = 0; s < 25; ++s) {
        const double X = 1000.0 + 250.0 * s;
        const D d = s < 18 ? D{X, X, X + 10, X + 400} : D{100, 200, 300, X - 1};
        high.push_back(to_hyp(d, X));
    }
    const double tf = metrics::tail_fraction(high);
    report(10, "tail-fraction bookkeeping", violations == 0 && std::abs(tf - 0.72) <= 1e-9,
           fmt("O + tail != 1 on %zu/1000 corpora, synthetic tail_fraction=%.12f", violations,
               tf));
}

}  // namespace

int main() {
    metric_oracles();
    yaal_tail_invariance();
    laal_dominates_al();
    offline_edge_case();
    long_yaal_identity();
    round_trip_resegmentation();
    dp_optimality();
    atd_chunks();
    statistics();
    tail_fraction_bookkeeping();
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
