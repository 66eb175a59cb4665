// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#include "simullat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "simullat/error.hpp"
#include "simullat/logio.hpp"
#include "simullat/longform.hpp"
#include "simullat/metaeval.hpp"
#include "simullat/shortform.hpp"
#include "simullat/softsegmenter.hpp"
#include "simullat/textproc.hpp"
#include "simullat/true_latency.hpp"

namespace simullat::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using metrics::MetricKind;

namespace {

constexpr const char* kDefaultMetrics = "AL,LAAL,DAL,ATD,AP,YAAL";

ojson config_json(const RunConfig& c) {
    ojson j;
    j["subcommand"] = c.subcommand;
    j["logs"] = c.logs;
    j["refs"] = c.refs;
    j["manifests"] = c.manifests;
    j["segmentations"] = c.segmentations;
    j["align_tables"] = c.align_tables;
    j["runs"] = c.runs_dir;
    j["metrics"] = c.metrics;
    j["lang_mode"] = c.lang_mode;
    j["seconds"] = c.seconds;
    j["fix_monotonic"] = c.fix_monotonic;
    j["seed"] = c.seed;
    j["bootstrap_n"] = c.bootstrap_n;
    j["anomaly_threshold"] = c.anomaly_threshold;
    j["mw_samples"] = c.mw_samples;
    j["system_id"] = c.system_id;
    j["testset_id"] = c.testset_id;
    j["language_pair"] = c.language_pair;
    j["format"] = c.format;
    return j;
}

ojson report_header(const RunConfig& c) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = config_json(c);
    return j;
}

ojson optional_number(const std::optional<double>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

// Writes through a temporary file so a failed run never leaves a partial
// report behind.
void emit(const RunConfig& c, const std::string& payload, std::ostream& out) {
    if (c.out.empty() || c.out == "-") {
        out << payload;
        return;
    }
    const fs::path target(c.out);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorKind::Usage, "cannot write '" + tmp.string() + "'");
        f << payload;
        if (!f) throw Error(ErrorKind::Usage, "failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

io::LogOptions log_options(const RunConfig& c) {
    io::LogOptions o;
    o.lang_mode = text::parse_lang_mode(c.lang_mode);
    o.source_length_in_seconds = c.seconds;
    o.fix_monotonic = c.fix_monotonic;
    return o;
}

std::vector<SegmentHypothesis> read_logs(const RunConfig& c, std::ostream& err) {
    std::vector<std::string> repairs;
    auto segs = io::parse_instance_log(io::read_file(c.logs), log_options(c), &repairs);
    for (const auto& r : repairs) err << "note: " << c.logs << ": " << r << '\n';
    if (segs.empty()) throw Error(ErrorKind::Validation, "instance log has no records");
    return segs;
}

std::vector<StreamRecord> read_streams(const RunConfig& c,
                                       std::vector<SegmentHypothesis> records) {
    if (records.size() != c.manifests.size())
        throw Error(ErrorKind::Usage,
                    "the log has " + std::to_string(records.size()) +
                        " streams but " + std::to_string(c.manifests.size()) +
                        " manifests were given");
    const auto mode = text::parse_lang_mode(c.lang_mode);
    std::vector<StreamRecord> streams;
    for (std::size_t i = 0; i < records.size(); ++i)
        streams.push_back(io::make_stream(
            std::move(records[i]),
            io::load_stream_manifest(io::read_file(c.manifests[i]), mode)));
    return streams;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

struct SegmentSummary {
    double source_ms = 0.0;
    std::size_t n_tokens = 0;
    std::size_t n_online = 0;
};

SegmentSummary summarize(std::span<const double> delays, double source_ms) {
    SegmentSummary s{source_ms, delays.size(), 0};
    for (double d : delays)
        if (d < source_ms) ++s.n_online;
    return s;
}

void add_fractions(ojson& report, std::span<const SegmentSummary> segments) {
    std::size_t total = 0, online = 0;
    for (const auto& s : segments) {
        total += s.n_tokens;
        online += s.n_online;
    }
    if (total == 0) {
        report["tail_fraction"] = nullptr;
        report["observed_online_fraction"] = nullptr;
        return;
    }
    report["tail_fraction"] =
        static_cast<double>(total - online) / static_cast<double>(total);
    report["observed_online_fraction"] =
        static_cast<double>(online) / static_cast<double>(total);
}

ojson aggregate_json(const Aggregate& a) {
    ojson j;
    j["value"] = a.mean;
    j["n_defined"] = a.n_defined;
    j["n_skipped"] = a.n_skipped;
    return j;
}

ojson true_latency_json(std::span<const truelat::TrueLatency> values) {
    ojson j;
    const auto agg = truelat::true_latency_corpus(values);
    j["value"] = agg.mean;
    j["n_defined"] = agg.n_defined;
    j["n_skipped"] = agg.n_skipped;
    auto per = ojson::array();
    auto tokens = ojson::array();
    for (const auto& v : values) {
        per.push_back(v.defined ? ojson(v.value_ms) : ojson(nullptr));
        for (double x : v.contributions) tokens.push_back(x);
    }
    j["per_segment"] = std::move(per);
    j["token_samples"] = std::move(tokens);
    return j;
}

std::vector<AlignmentTable> read_tables(const RunConfig& c, std::size_t expected) {
    auto tables = io::load_alignment_tables(io::read_file(c.align_tables));
    if (tables.size() != expected)
        throw Error(ErrorKind::Validation,
                    std::to_string(tables.size()) + " alignment tables for " +
                        std::to_string(expected) + " segments");
    return tables;
}

std::string eval_tsv(const ojson& report) {
    std::string out = "metric\tvalue\tn_defined\tn_skipped\n";
    auto row = [&](const std::string& name, const ojson& a) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", a["value"].get<double>());
        out += name + '\t' + buf + '\t' + a["n_defined"].dump() + '\t' +
               a["n_skipped"].dump() + '\n';
    };
    for (const auto& [name, a] : report["corpus"].items()) row(name, a);
    if (report.contains("true_latency")) row("TL", report["true_latency"]);
    return out;
}

void eval_short(const RunConfig& c, const std::vector<MetricKind>& kinds,
                std::vector<SegmentHypothesis> segs, ojson& report) {
    std::vector<SegmentReference> refs;
    if (!c.refs.empty()) {
        refs = io::load_references(io::read_file(c.refs), text::parse_lang_mode(c.lang_mode));
        if (refs.size() != segs.size())
            throw Error(ErrorKind::Validation,
                        "the log has " + std::to_string(segs.size()) +
                            " segments but the reference file has " +
                            std::to_string(refs.size()) + " lines");
    }

    std::vector<SegmentSummary> summaries;
    auto seg_json = ojson::array();
    std::vector<std::vector<metrics::MetricValue>> values(kinds.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto delays = segs[i].delays();
        const std::size_t ref_len = refs.empty() ? 0 : refs[i].size();
        summaries.push_back(summarize(delays, segs[i].source_duration_ms));
        ojson item;
        item["index"] = i;
        item["source_ms"] = segs[i].source_duration_ms;
        item["n_tokens"] = summaries.back().n_tokens;
        item["n_online"] = summaries.back().n_online;
        ojson per;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            metrics::MetricValue v{kinds[k], 0.0, false};
            if (!delays.empty()) {
                try {
                    v = metrics::compute(kinds[k], delays, segs[i].source_duration_ms, ref_len);
                } catch (const Error& e) {
                    throw Error(e.kind(), "segment " + std::to_string(i) + ": " + e.detail());
                }
            }
            values[k].push_back(v);
            per[std::string(metrics::to_string(kinds[k]))] = optional_number(v.as_optional());
        }
        item["metrics"] = std::move(per);
        seg_json.push_back(std::move(item));
    }

    ojson corpus;
    for (std::size_t k = 0; k < kinds.size(); ++k)
        corpus[std::string(metrics::to_string(kinds[k]))] =
            aggregate_json(metrics::corpus_aggregate(values[k]));
    report["regime"] = "short";
    report["corpus"] = std::move(corpus);
    add_fractions(report, summaries);
    report["segments"] = std::move(seg_json);

    if (!c.align_tables.empty()) {
        const auto tables = read_tables(c, segs.size());
        std::vector<truelat::TrueLatency> tl;
        for (std::size_t i = 0; i < segs.size(); ++i)
            tl.push_back(truelat::true_latency(segs[i], tables[i]));
        report["true_latency"] = true_latency_json(tl);
    }
}

void eval_long(const RunConfig& c, const std::vector<MetricKind>& kinds,
               std::vector<SegmentHypothesis> records, ojson& report) {
    auto streams = read_streams(c, std::move(records));
    if (!c.segmentations.empty() && c.segmentations.size() != streams.size())
        throw Error(ErrorKind::Usage, "give one --segmentation per stream");

    std::vector<seg::Resegmentation> resegs;
    for (const auto& s : streams) resegs.push_back(seg::resegment_stream(s));

    auto stream_json = ojson::array();
    ojson corpus;
    auto add_kind = [&](const std::string& name,
                        const std::vector<longform::StreamMetricValue>& per_stream) {
        std::vector<std::optional<double>> vals;
        for (std::size_t s = 0; s < per_stream.size(); ++s) {
            vals.emplace_back(per_stream[s].value);
            stream_json.push_back(longform::to_json(per_stream[s], std::to_string(s)));
        }
        corpus[name] = aggregate_json(mean_of_defined(vals));
    };

    if (!c.segmentations.empty()) {
        std::vector<longform::StreamMetricValue> per_stream;
        for (std::size_t s = 0; s < streams.size(); ++s) {
            const auto doc = nlohmann::json::parse(io::read_file(c.segmentations[s]));
            auto external = seg::resegmentation_from_json(doc, streams[s]);
            per_stream.push_back(longform::stream_laal_compat(streams[s], external));
        }
        add_kind("StreamLAAL", per_stream);
    }
    for (auto kind : kinds) {
        std::vector<longform::StreamMetricValue> per_stream;
        for (std::size_t s = 0; s < streams.size(); ++s)
            per_stream.push_back(longform::stream_metric(streams[s], resegs[s], kind));
        add_kind(std::string(longform::to_string(longform::long_kind(kind))), per_stream);
    }

    std::vector<SegmentSummary> summaries;
    auto seg_json = ojson::array();
    for (std::size_t s = 0; s < streams.size(); ++s) {
        for (const auto& segment : resegs[s].segments) {
            summaries.push_back(summarize(segment.delays_rel_ms, segment.duration_ms));
            ojson item;
            item["stream"] = s;
            item["index"] = segment.index;
            item["source_ms"] = segment.duration_ms;
            item["n_tokens"] = summaries.back().n_tokens;
            item["n_online"] = summaries.back().n_online;
            seg_json.push_back(std::move(item));
        }
    }

    report["regime"] = "long";
    report["corpus"] = std::move(corpus);
    add_fractions(report, summaries);
    report["segments"] = std::move(seg_json);
    report["streams"] = std::move(stream_json);

    if (!c.align_tables.empty()) {
        const auto tables = read_tables(c, summaries.size());
        std::vector<truelat::TrueLatency> tl;
        std::size_t offset = 0;
        for (std::size_t s = 0; s < streams.size(); ++s) {
            const auto n = resegs[s].segments.size();
            const std::span<const AlignmentTable> slice(tables.data() + offset, n);
            auto part = truelat::true_latency_stream(resegs[s], slice,
                                                     streams[s].total_duration_ms());
            tl.insert(tl.end(), part.begin(), part.end());
            offset += n;
        }
        report["true_latency"] = true_latency_json(tl);
    }
}

void cmd_eval(RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.metrics.empty()) c.metrics = kDefaultMetrics;
    const auto kinds = metrics::parse_metric_list(c.metrics);
    if (c.manifests.empty() && c.refs.empty())
        for (auto k : kinds)
            if (metrics::needs_reference(k))
                throw Error(ErrorKind::Usage,
                            "--refs is required for " + std::string(metrics::to_string(k)));
    if (!c.segmentations.empty() && c.manifests.empty())
        throw Error(ErrorKind::Usage, "--segmentation requires --manifest");
    if (c.system_id.empty()) c.system_id = stem_of(c.logs);

    auto segs = read_logs(c, err);
    ojson report = report_header(c);
    report["system_id"] = c.system_id;
    report["testset_id"] = c.testset_id;
    report["language_pair"] = c.language_pair;
    if (c.manifests.empty())
        eval_short(c, kinds, std::move(segs), report);
    else
        eval_long(c, kinds, std::move(segs), report);

    emit(c, c.format == "tsv" ? eval_tsv(report) : report.dump(2) + "\n", out);
}

void cmd_reseg(RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.manifests.size() != 1)
        throw Error(ErrorKind::Usage, "reseg takes exactly one --manifest");
    auto streams = read_streams(c, read_logs(c, err));
    const auto reseg = seg::resegment_stream(streams.front());
    emit(c, seg::to_json(reseg).dump(2) + "\n", out);
}

void cmd_truelat(RunConfig& c, std::ostream& out, std::ostream& err) {
    auto segs = read_logs(c, err);
    std::vector<truelat::TrueLatency> tl;
    if (c.manifests.empty()) {
        const auto tables = read_tables(c, segs.size());
        for (std::size_t i = 0; i < segs.size(); ++i)
            tl.push_back(truelat::true_latency(segs[i], tables[i]));
    } else {
        auto streams = read_streams(c, std::move(segs));
        std::vector<seg::Resegmentation> resegs;
        std::size_t n_segments = 0;
        for (const auto& s : streams) {
            resegs.push_back(seg::resegment_stream(s));
            n_segments += resegs.back().segments.size();
        }
        const auto tables = read_tables(c, n_segments);
        std::size_t offset = 0;
        for (std::size_t s = 0; s < streams.size(); ++s) {
            const auto n = resegs[s].segments.size();
            auto part = truelat::true_latency_stream(
                resegs[s], std::span<const AlignmentTable>(tables.data() + offset, n),
                streams[s].total_duration_ms());
            tl.insert(tl.end(), part.begin(), part.end());
            offset += n;
        }
    }
    ojson report = report_header(c);
    report["true_latency"] = true_latency_json(tl);
    if (c.format == "tsv") {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", report["true_latency"]["value"].get<double>());
        emit(c, std::string("metric\tvalue\tn_defined\tn_skipped\nTL\t") + buf + '\t' +
                    report["true_latency"]["n_defined"].dump() + '\t' +
                    report["true_latency"]["n_skipped"].dump() + '\n',
             out);
        return;
    }
    emit(c, report.dump(2) + "\n", out);
}

std::vector<meta::SystemRun> read_runs(const RunConfig& c) {
    if (c.runs_dir.empty()) throw Error(ErrorKind::Usage, "--runs is required");
    if (!fs::is_directory(c.runs_dir))
        throw Error(ErrorKind::Usage, "'" + c.runs_dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(c.runs_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<meta::SystemRun> runs;
    for (const auto& f : files) {
        try {
            runs.push_back(meta::system_run_from_json(nlohmann::json::parse(io::read_file(f))));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::Parse, f.string() + ": " + e.what());
        } catch (const Error& e) {
            throw Error(e.kind(), f.string() + ": " + e.detail());
        }
    }
    return runs;
}

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        auto end = list.find(',', pos);
        if (end == std::string::npos) end = list.size();
        if (end > pos) out.push_back(list.substr(pos, end - pos));
        pos = end + 1;
    }
    return out;
}

void cmd_compare(RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto runs = read_runs(c);
    if (runs.size() < 2) throw Error(ErrorKind::Validation, "compare needs at least 2 runs");
    meta::SampleSource source;
    if (c.mw_samples == "segment")
        source = meta::SampleSource::SegmentTL;
    else if (c.mw_samples == "token")
        source = meta::SampleSource::TokenTL;
    else
        throw Error(ErrorKind::Usage, "--mw-samples must be segment or token");

    const auto pairing = meta::build_outcomes(runs, source);
    if (pairing.n_skipped > 0)
        err << "warning: skipped " << pairing.n_skipped
            << " pairs across different test sets or language pairs\n";
    if (pairing.outcomes.empty())
        throw Error(ErrorKind::Validation, "no runs share a test set and language pair");

    auto names = c.metrics.empty() ? meta::common_metrics(runs) : split_names(c.metrics);
    const auto rows = meta::accuracy_table(pairing.outcomes, names, c.bootstrap_n, c.seed,
                                           c.threads);
    if (c.format == "json") {
        ojson report = report_header(c);
        report["n_skipped_pairs"] = pairing.n_skipped;
        auto arr = ojson::array();
        for (const auto& r : rows) {
            ojson j;
            j["metric"] = r.metric;
            j["bucket"] = meta::to_string(r.bucket);
            j["accuracy"] = optional_number(r.accuracy);
            j["ci_low"] = r.accuracy ? ojson(r.ci.low) : ojson(nullptr);
            j["ci_high"] = r.accuracy ? ojson(r.ci.high) : ojson(nullptr);
            j["n_pairs"] = r.n_pairs;
            arr.push_back(std::move(j));
        }
        report["rows"] = std::move(arr);
        emit(c, report.dump(2) + "\n", out);
        return;
    }
    emit(c, meta::accuracy_table_tsv(rows), out);
}

void cmd_anomalous(RunConfig& c, std::ostream& out, std::ostream&) {
    const auto runs = read_runs(c);
    if (c.metrics.empty()) c.metrics = "YAAL";
    const auto names = split_names(c.metrics);
    if (names.size() != 1)
        throw Error(ErrorKind::Usage, "anomalous takes exactly one metric");
    const auto& metric = names.front();

    std::string tsv = "system\tO\tO_e(" + metric + ")\tflag\n";
    ojson rows = ojson::array();
    for (const auto& run : runs) {
        const auto r = meta::detect_anomalous(run, metric, c.anomaly_threshold);
        char buf[96];
        std::snprintf(buf, sizeof buf, "\t%.4f\t%.4f\t%d\n", r.observed, r.expected.clamped,
                      r.flag ? 1 : 0);
        tsv += run.system_id + buf;
        ojson j;
        j["system"] = run.system_id;
        j["O"] = r.observed;
        j["O_e"] = r.expected.clamped;
        j["O_e_raw"] = r.expected.raw;
        j["flag"] = r.flag;
        rows.push_back(std::move(j));
    }
    if (c.format == "json") {
        ojson report = report_header(c);
        report["metric"] = metric;
        report["rows"] = std::move(rows);
        emit(c, report.dump(2) + "\n", out);
        return;
    }
    emit(c, tsv, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Latency evaluation for simultaneous speech translation"};
    app.require_subcommand(1);

    auto add_text_options = [&](CLI::App* sub) {
        sub->add_option("--lang-mode", cfg.lang_mode, "Tokenization: space or char")
            ->check(CLI::IsMember({"space", "char"}));
        sub->add_flag("--seconds", cfg.seconds, "source_length in the log is in seconds");
        sub->add_flag("--fix-monotonic", cfg.fix_monotonic,
                      "Repair non-monotone delays with a running maximum");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "Output file (default: standard output)");
        sub->add_option("--format", cfg.format, "json or tsv")
            ->check(CLI::IsMember({"json", "tsv"}));
    };

    auto* eval = app.add_subcommand("eval", "Short-form or long-form latency report");
    eval->add_option("--logs", cfg.logs, "Instance log (JSON lines)")->required();
    eval->add_option("--refs", cfg.refs, "Reference file, one segment per line");
    eval->add_option("--manifest", cfg.manifests, "Stream manifest, one per stream");
    eval->add_option("--segmentation", cfg.segmentations,
                     "External segmentation per stream (adds StreamLAAL)");
    eval->add_option("--align-tables", cfg.align_tables, "Alignment tables (JSON lines)");
    eval->add_option("--metrics", cfg.metrics, "Comma-separated metrics");
    eval->add_option("--system-id", cfg.system_id);
    eval->add_option("--testset", cfg.testset_id);
    eval->add_option("--lang-pair", cfg.language_pair);
    add_text_options(eval);
    add_output(eval);

    auto* reseg = app.add_subcommand("reseg", "Resegment one stream");
    reseg->add_option("--logs", cfg.logs, "Stream log with one record")->required();
    reseg->add_option("--manifest", cfg.manifests, "Stream manifest")->required();
    add_text_options(reseg);
    reseg->add_option("--out", cfg.out, "Output file (default: standard output)");

    auto* tl = app.add_subcommand("truelat", "True latency from alignment tables");
    tl->add_option("--logs", cfg.logs, "Instance log")->required();
    tl->add_option("--align-tables", cfg.align_tables, "Alignment tables (JSON lines)")
        ->required();
    tl->add_option("--manifest", cfg.manifests, "Stream manifests for long-form logs");
    add_text_options(tl);
    add_output(tl);

    auto* compare = app.add_subcommand("compare", "Pairwise accuracy against true latency");
    compare->add_option("--runs", cfg.runs_dir, "Directory of eval reports")->required();
    compare->add_option("--metrics", cfg.metrics, "Metrics to score (default: all shared)");
    compare->add_option("--seed", cfg.seed);
    compare->add_option("--bootstrap-n", cfg.bootstrap_n)->check(CLI::PositiveNumber);
    compare->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
    compare->add_option("--mw-samples", cfg.mw_samples, "segment or token")
        ->check(CLI::IsMember({"segment", "token"}));
    add_output(compare);

    auto* anomalous = app.add_subcommand("anomalous", "Observed vs expected online fraction");
    anomalous->add_option("--runs", cfg.runs_dir, "Directory of eval reports")->required();
    anomalous->add_option("--metrics", cfg.metrics, "Metric for the expected fraction");
    anomalous->add_option("--anomaly-threshold", cfg.anomaly_threshold);
    add_output(anomalous);

    for (auto* sub : {compare, anomalous})
        sub->callback([&cfg, sub] {
            if (sub->count("--format") == 0) cfg.format = "tsv";
        });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) {
            cfg.subcommand = "eval";
            cmd_eval(cfg, out, err);
        } else if (reseg->parsed()) {
            cfg.subcommand = "reseg";
            cmd_reseg(cfg, out, err);
        } else if (tl->parsed()) {
            cfg.subcommand = "truelat";
            cmd_truelat(cfg, out, err);
        } else if (compare->parsed()) {
            cfg.subcommand = "compare";
            cmd_compare(cfg, out, err);
        } else {
            cfg.subcommand = "anomalous";
            cmd_anomalous(cfg, out, err);
        }
    } catch (const Error& e) {
        err << "simullat: " << e.what() << '\n';
        return e.kind() == ErrorKind::Usage ? 2 : 1;
    } catch (const nlohmann::json::exception& e) {
        err << "simullat: " << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "simullat: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace simullat::cli
