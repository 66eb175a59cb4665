// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#include "simullat/softsegmenter.hpp"

#include <algorithm>
#include <cstdint>

#include "simullat/error.hpp"
#include "simullat/logio.hpp"
#include "simullat/textproc.hpp"

namespace simullat::seg {

PairScore pair_score(std::string_view ref_token, double segment_start_ms,
                     std::string_view hyp_token, double delay_ms) {
    if (segment_start_ms >= delay_ms) return std::nullopt;
    if (text::is_punctuation(ref_token) != text::is_punctuation(hyp_token))
        return std::nullopt;
    return text::char_similarity(ref_token, hyp_token);
}

namespace {

struct PreparedToken {
    text::CharSet chars;
    bool punct = false;
    double time = 0.0;  // segment start for references, delay for hypotheses
    std::size_t segment = 0;
};

PairScore prepared_score(const PreparedToken& r, const PreparedToken& h) {
    if (r.time >= h.time) return std::nullopt;
    if (r.punct != h.punct) return std::nullopt;
    return text::char_similarity(r.chars, h.chars);
}

enum Move : std::uint8_t { kNone = 0, kMatch = 1, kSkipHyp = 2, kSkipRef = 3 };

}  // namespace

Resegmentation from_assignment(std::span<const SegmentReference> references,
                               std::span<const TokenEvent> hypothesis,
                               std::vector<std::size_t> assignment) {
    if (assignment.size() != hypothesis.size())
        throw Error(ErrorKind::Validation, "assignment does not cover the hypothesis");
    Resegmentation out;
    out.segments.resize(references.size());
    for (std::size_t s = 0; s < references.size(); ++s) {
        auto& seg = out.segments[s];
        seg.index = s;
        seg.start_ms = references[s].start_ms;
        seg.duration_ms = references[s].duration_ms;
        seg.reference_length = references[s].size();
    }
    for (std::size_t j = 0; j < hypothesis.size(); ++j) {
        if (assignment[j] >= references.size())
            throw Error(ErrorKind::Validation, "segment index out of range");
        if (j > 0 && assignment[j] < assignment[j - 1])
            throw Error(ErrorKind::Validation,
                        "segmentation does not preserve token order");
        auto& seg = out.segments[assignment[j]];
        seg.tokens.push_back(hypothesis[j]);
        seg.delays_rel_ms.push_back(hypothesis[j].delay_ms - seg.start_ms);
    }
    for (auto& seg : out.segments) seg.text = io::detokenize(seg.tokens);
    out.assignment = std::move(assignment);
    return out;
}

Resegmentation align(std::span<const SegmentReference> references,
                     std::span<const TokenEvent> hypothesis) {
    if (references.empty())
        throw Error(ErrorKind::Validation, "no reference segments to align to");

    std::vector<PreparedToken> refs;
    for (std::size_t s = 0; s < references.size(); ++s)
        for (const auto& tok : references[s].tokens)
            refs.push_back({text::CharSet(tok), text::is_punctuation(tok),
                            references[s].start_ms, s});
    std::vector<PreparedToken> hyps;
    hyps.reserve(hypothesis.size());
    for (const auto& ev : hypothesis)
        hyps.push_back({text::CharSet(ev.token), text::is_punctuation(ev.token),
                        ev.delay_ms, 0});

    const std::size_t n = refs.size();
    const std::size_t m = hyps.size();
    const std::size_t width = m + 1;

    // Rolling score rows; the move table is kept whole for the backtrace.
    std::vector<double> prev(width, 0.0), cur(width, 0.0);
    std::vector<std::uint8_t> moves((n + 1) * width, kNone);
    for (std::size_t j = 1; j <= m; ++j) moves[j] = kSkipHyp;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = 0.0;
        moves[i * width] = kSkipRef;
        for (std::size_t j = 1; j <= m; ++j) {
            double best = cur[j - 1];
            std::uint8_t move = kSkipHyp;
            if (prev[j] > best) {
                best = prev[j];
                move = kSkipRef;
            }
            if (auto s = prepared_score(refs[i - 1], hyps[j - 1])) {
                const double diag = prev[j - 1] + *s;
                if (diag >= best) {
                    best = diag;
                    move = kMatch;
                }
            }
            cur[j] = best;
            moves[i * width + j] = move;
        }
        std::swap(prev, cur);
    }
    const double total = prev[m];

    // matched_ref[j] = reference token matched with hypothesis token j.
    std::vector<std::optional<std::size_t>> matched_ref(m);
    for (std::size_t i = n, j = m; i > 0 || j > 0;) {
        switch (moves[i * width + j]) {
            case kMatch:
                matched_ref[j - 1] = i - 1;
                --i;
                --j;
                break;
            case kSkipHyp:
                --j;
                break;
            default:
                --i;
                break;
        }
    }

    std::vector<std::size_t> assignment(m, 0);
    std::size_t current = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (matched_ref[j]) current = refs[*matched_ref[j]].segment;
        assignment[j] = current;
    }
    auto out = from_assignment(references, hypothesis, std::move(assignment));
    out.score = total;
    return out;
}

Resegmentation resegment_stream(const StreamRecord& stream) {
    return align(stream.references, stream.hypothesis.tokens);
}

SegmentHypothesis to_segment_hypothesis(const ResegmentedSegment& segment) {
    SegmentHypothesis out;
    out.source_duration_ms = segment.duration_ms;
    out.raw_text = segment.text;
    out.tokens = segment.tokens;
    for (std::size_t k = 0; k < out.tokens.size(); ++k)
        out.tokens[k].delay_ms = segment.delays_rel_ms[k];
    return out;
}

nlohmann::ordered_json to_json(const Resegmentation& reseg) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& seg : reseg.segments) {
        nlohmann::ordered_json item;
        item["segment_index"] = seg.index;
        item["text"] = seg.text;
        auto tokens = nlohmann::ordered_json::array();
        auto abs = nlohmann::ordered_json::array();
        for (const auto& t : seg.tokens) {
            tokens.push_back(t.token);
            abs.push_back(t.delay_ms);
        }
        item["tokens"] = std::move(tokens);
        item["delays_abs_ms"] = std::move(abs);
        item["delays_rel_ms"] = seg.delays_rel_ms;
        out.push_back(std::move(item));
    }
    return out;
}

Resegmentation resegmentation_from_json(const nlohmann::json& doc,
                                        const StreamRecord& stream) {
    if (!doc.is_array())
        throw Error(ErrorKind::Schema, "segmentation must be a JSON array");
    if (doc.size() != stream.references.size())
        throw Error(ErrorKind::Validation,
                    "segmentation has " + std::to_string(doc.size()) +
                        " segments but the stream has " +
                        std::to_string(stream.references.size()));
    const auto& hyp = stream.hypothesis.tokens;
    std::vector<std::size_t> assignment;
    assignment.reserve(hyp.size());
    for (std::size_t s = 0; s < doc.size(); ++s) {
        const auto& item = doc[s];
        if (!item.is_object() || !item.contains("tokens") ||
            !item.contains("delays_abs_ms") || !item["tokens"].is_array() ||
            !item["delays_abs_ms"].is_array())
            throw Error(ErrorKind::Schema,
                        "segment " + std::to_string(s) +
                            " needs tokens and delays_abs_ms arrays");
        if (auto it = item.find("segment_index");
            it != item.end() && (!it->is_number_unsigned() || it->get<std::size_t>() != s))
            throw Error(ErrorKind::Validation,
                        "segment_index " + it->dump() + " out of order");
        const auto& tokens = item["tokens"];
        const auto& delays = item["delays_abs_ms"];
        if (tokens.size() != delays.size())
            throw Error(ErrorKind::Validation,
                        "segment " + std::to_string(s) +
                            " has mismatched tokens and delays");
        for (std::size_t k = 0; k < tokens.size(); ++k) {
            const std::size_t j = assignment.size();
            if (j >= hyp.size() || !tokens[k].is_string() || !delays[k].is_number() ||
                tokens[k].get<std::string>() != hyp[j].token ||
                delays[k].get<double>() != hyp[j].delay_ms)
                throw Error(ErrorKind::Validation,
                            "segmentation does not match the stream hypothesis at token " +
                                std::to_string(j));
            assignment.push_back(s);
        }
    }
    if (assignment.size() != hyp.size())
        throw Error(ErrorKind::Validation,
                    "segmentation covers " + std::to_string(assignment.size()) +
                        " of " + std::to_string(hyp.size()) + " hypothesis tokens");
    return from_assignment(stream.references, hyp, std::move(assignment));
}

}  // namespace simullat::seg
