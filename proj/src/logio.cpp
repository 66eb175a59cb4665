// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#include "simullat/logio.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "simullat/error.hpp"
#include "simullat/textproc.hpp"

namespace simullat::io {

using nlohmann::json;

namespace {

constexpr double kStreamEndToleranceMs = 1.0;
constexpr double kOverlapToleranceMs = 1e-6;

// Splits on '\n', dropping a trailing '\r' from each line. A final newline
// does not open an extra line.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = end + 1;
    }
    return lines;
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

json parse_json(std::string_view text, std::optional<std::size_t> line) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, e.what(), line);
    }
}

const json& require(const json& obj, const char* key,
                    std::optional<std::size_t> line) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw Error(ErrorKind::Schema,
                    std::string("missing required field '") + key + "'", line);
    return *it;
}

double require_number(const json& obj, const char* key,
                      std::optional<std::size_t> line) {
    const auto& v = require(obj, key, line);
    if (!v.is_number())
        throw Error(ErrorKind::Schema,
                    std::string("field '") + key + "' must be a number", line);
    return v.get<double>();
}

std::string require_string(const json& obj, const char* key,
                           std::optional<std::size_t> line) {
    const auto& v = require(obj, key, line);
    if (!v.is_string())
        throw Error(ErrorKind::Schema,
                    std::string("field '") + key + "' must be a string", line);
    return v.get<std::string>();
}

std::vector<double> number_array(const json& v, const char* key,
                                 std::optional<std::size_t> line) {
    if (!v.is_array())
        throw Error(ErrorKind::Schema,
                    std::string("field '") + key + "' must be an array", line);
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number())
            throw Error(ErrorKind::Schema,
                        std::string("field '") + key +
                            "' must contain only numbers",
                        line);
        out.push_back(x.get<double>());
    }
    return out;
}

void note(std::vector<std::string>* repairs, std::size_t line,
          const std::string& what) {
    if (repairs) repairs->push_back("line " + std::to_string(line) + ": " + what);
}

SegmentHypothesis parse_record(const json& rec, std::size_t line,
                               const LogOptions& options,
                               std::vector<std::string>* repairs) {
    if (!rec.is_object())
        throw Error(ErrorKind::Schema, "record must be a JSON object", line);

    SegmentHypothesis seg;
    seg.raw_text = require_string(rec, "prediction", line);
    auto delays = number_array(require(rec, "delays", line), "delays", line);
    seg.source_duration_ms = require_number(rec, "source_length", line);
    if (options.source_length_in_seconds) seg.source_duration_ms *= 1000.0;
    if (!(seg.source_duration_ms > 0.0) || !std::isfinite(seg.source_duration_ms))
        throw Error(ErrorKind::Validation, "source_length must be positive", line);

    std::optional<std::vector<double>> elapsed;
    if (auto it = rec.find("elapsed"); it != rec.end() && !it->is_null()) {
        elapsed = number_array(*it, "elapsed", line);
        if (elapsed->size() != delays.size())
            throw Error(ErrorKind::Validation,
                        "elapsed has " + std::to_string(elapsed->size()) +
                            " entries but delays has " +
                            std::to_string(delays.size()),
                        line);
    }

    for (auto& d : delays) {
        if (!std::isfinite(d))
            throw Error(ErrorKind::Validation, "delays must be finite", line);
        if (d < 0.0) d = 0.0;
    }
    for (std::size_t i = 1; i < delays.size(); ++i) {
        if (delays[i] >= delays[i - 1]) continue;
        if (!options.fix_monotonic)
            throw Error(ErrorKind::Validation,
                        "non-monotone delays at position " + std::to_string(i),
                        line);
        note(repairs, line,
             "raised delay " + std::to_string(i) + " from " +
                 std::to_string(delays[i]) + " to " +
                 std::to_string(delays[i - 1]));
        delays[i] = delays[i - 1];
    }

    auto pieces = text::tokenize_pieces(seg.raw_text, options.lang_mode);
    std::size_t n_units = 0;
    for (const auto& p : pieces)
        if (text::starts_unit(p, options.lang_mode)) ++n_units;

    if (n_units < delays.size())
        throw Error(ErrorKind::Validation,
                    "prediction has " + std::to_string(n_units) +
                        " units but " + std::to_string(delays.size()) +
                        " delays",
                    line);
    if (n_units > delays.size()) {
        if (delays.empty())
            throw Error(ErrorKind::Validation,
                        "prediction is non-empty but delays is empty", line);
        note(repairs, line,
             "replicated the final delay for " +
                 std::to_string(n_units - delays.size()) + " extra units");
        delays.resize(n_units, delays.back());
        if (elapsed) elapsed->resize(n_units, elapsed->back());
    }

    std::size_t unit = 0;
    seg.tokens.reserve(pieces.size());
    for (auto& p : pieces) {
        const bool opens = text::starts_unit(p, options.lang_mode);
        if (opens && !seg.tokens.empty()) ++unit;
        TokenEvent ev;
        ev.token = std::move(p.token);
        ev.surface = std::move(p.surface);
        ev.glued = p.glued;
        ev.delay_ms = delays[unit];
        if (elapsed) ev.elapsed_ms = (*elapsed)[unit];
        seg.tokens.push_back(std::move(ev));
    }
    return seg;
}

}  // namespace

std::vector<SegmentHypothesis> parse_instance_log(
    std::string_view text, const LogOptions& options,
    std::vector<std::string>* repairs) {
    std::vector<SegmentHypothesis> out;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (is_blank(lines[i])) continue;
        const std::size_t line_no = i + 1;
        const json rec = parse_json(lines[i], line_no);
        out.push_back(parse_record(rec, line_no, options, repairs));
    }
    return out;
}

std::string detokenize(std::span<const TokenEvent> tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty() && !t.glued) out += ' ';
        out += t.surface;
    }
    return out;
}

std::string serialize_instance_log(std::span<const SegmentHypothesis> segments,
                                   LangMode mode) {
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& seg = segments[i];
        json delays = json::array();
        json elapsed = json::array();
        bool has_elapsed = !seg.tokens.empty();
        for (std::size_t k = 0; k < seg.tokens.size(); ++k) {
            const auto& t = seg.tokens[k];
            has_elapsed = has_elapsed && t.elapsed_ms.has_value();
            const bool opens = mode == LangMode::Character || k == 0 || !t.glued;
            if (!opens) continue;
            delays.push_back(t.delay_ms);
            elapsed.push_back(t.elapsed_ms.value_or(0.0));
        }
        nlohmann::ordered_json rec;
        rec["index"] = i;
        rec["prediction"] = detokenize(seg.tokens);
        rec["delays"] = delays;
        if (has_elapsed) rec["elapsed"] = elapsed;
        rec["source_length"] = seg.source_duration_ms;
        out += rec.dump();
        out += '\n';
    }
    return out;
}

std::vector<SegmentReference> load_references(std::string_view text,
                                              LangMode mode) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw Error(ErrorKind::Validation, "reference file is empty");
    std::vector<SegmentReference> out;
    out.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!text::is_valid_utf8(lines[i]))
            throw Error(ErrorKind::Parse, "invalid UTF-8", i + 1);
        SegmentReference ref;
        ref.raw_text = std::string(lines[i]);
        ref.tokens = text::tokenize(ref.raw_text, mode);
        out.push_back(std::move(ref));
    }
    return out;
}

std::vector<SegmentReference> load_stream_manifest(std::string_view text,
                                                   LangMode mode) {
    const json doc = parse_json(text, std::nullopt);
    if (!doc.is_array())
        throw Error(ErrorKind::Schema, "stream manifest must be a JSON array");
    if (doc.empty())
        throw Error(ErrorKind::Validation, "stream manifest has no segments");

    std::vector<SegmentReference> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& entry = doc[i];
        const std::string where = "segment " + std::to_string(i) + ": ";
        if (!entry.is_object())
            throw Error(ErrorKind::Schema, where + "must be a JSON object");
        SegmentReference ref;
        try {
            ref.start_ms = require_number(entry, "start_ms", std::nullopt);
            ref.duration_ms = require_number(entry, "duration_ms", std::nullopt);
            ref.raw_text = require_string(entry, "reference", std::nullopt);
        } catch (const Error& e) {
            throw Error(e.kind(), where + e.detail());
        }
        if (!std::isfinite(ref.start_ms) || ref.start_ms < 0.0)
            throw Error(ErrorKind::Validation, where + "start_ms must be >= 0");
        if (!std::isfinite(ref.duration_ms) || ref.duration_ms <= 0.0)
            throw Error(ErrorKind::Validation, where + "duration_ms must be > 0");
        if (!out.empty()) {
            const auto& prev = out.back();
            if (ref.start_ms < prev.start_ms)
                throw Error(ErrorKind::Validation,
                            where + "segments are not sorted by start_ms");
            if (ref.start_ms < prev.start_ms + prev.duration_ms - kOverlapToleranceMs)
                throw Error(ErrorKind::Validation,
                            where + "overlaps the previous segment");
        }
        ref.tokens = text::tokenize(ref.raw_text, mode);
        out.push_back(std::move(ref));
    }
    return out;
}

StreamRecord make_stream(SegmentHypothesis hypothesis,
                         std::vector<SegmentReference> references) {
    if (references.empty())
        throw Error(ErrorKind::Validation, "stream has no reference segments");
    for (std::size_t i = 1; i < references.size(); ++i) {
        const auto& prev = references[i - 1];
        if (references[i].start_ms <
            prev.start_ms + prev.duration_ms - kOverlapToleranceMs)
            throw Error(ErrorKind::Validation,
                        "reference segments must be sorted and non-overlapping");
    }
    const auto& last = references.back();
    if (last.start_ms + last.duration_ms >
        hypothesis.source_duration_ms + kStreamEndToleranceMs)
        throw Error(ErrorKind::Validation,
                    "last reference segment ends after the stream");
    return StreamRecord{std::move(hypothesis), std::move(references)};
}

AlignmentTable load_alignment_table(std::string_view text,
                                    std::optional<std::size_t> n_target_tokens) {
    const json doc = parse_json(text, std::nullopt);
    if (!doc.is_object())
        throw Error(ErrorKind::Schema, "alignment table must be a JSON object");
    AlignmentTable table;

    const auto& words = require(doc, "source_words", std::nullopt);
    if (!words.is_array())
        throw Error(ErrorKind::Schema, "source_words must be an array");
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto& w = words[i];
        SourceWord sw;
        // Accept both {word,start_ms,end_ms} and ["word", start, end].
        if (w.is_array() && w.size() == 3 && w[0].is_string() &&
            w[1].is_number() && w[2].is_number()) {
            sw = {w[0].get<std::string>(), w[1].get<double>(), w[2].get<double>()};
        } else if (w.is_object()) {
            sw.word = require_string(w, "word", std::nullopt);
            sw.start_ms = require_number(w, "start_ms", std::nullopt);
            sw.end_ms = require_number(w, "end_ms", std::nullopt);
        } else {
            throw Error(ErrorKind::Schema,
                        "source word " + std::to_string(i) + " is malformed");
        }
        if (sw.start_ms < 0.0)
            throw Error(ErrorKind::Validation,
                        "source word " + std::to_string(i) + " starts before 0");
        if (sw.end_ms < sw.start_ms)
            throw Error(ErrorKind::Validation,
                        "source word " + std::to_string(i) + " ends before it starts");
        table.source_words.push_back(std::move(sw));
    }

    const auto& links = require(doc, "links", std::nullopt);
    if (!links.is_array()) throw Error(ErrorKind::Schema, "links must be an array");
    for (const auto& l : links) {
        if (!l.is_array() || l.size() != 2 || !l[0].is_number_unsigned() ||
            !l[1].is_number_unsigned())
            throw Error(ErrorKind::Schema,
                        "each link must be a [target_index, source_index] pair");
        const auto tgt = l[0].get<std::size_t>();
        const auto src = l[1].get<std::size_t>();
        if (src >= table.source_words.size())
            throw Error(ErrorKind::Validation,
                        "link source index " + std::to_string(src) + " out of range");
        if (n_target_tokens && tgt >= *n_target_tokens)
            throw Error(ErrorKind::Validation,
                        "link target index " + std::to_string(tgt) + " out of range");
        table.links.emplace_back(tgt, src);
    }
    return table;
}

std::vector<AlignmentTable> load_alignment_tables(std::string_view text) {
    std::vector<AlignmentTable> out;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (is_blank(lines[i])) continue;
        try {
            out.push_back(load_alignment_table(lines[i]));
        } catch (const Error& e) {
            throw Error(e.kind(), e.detail(), i + 1);
        }
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Usage, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace simullat::io
