// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#include "simullat/textproc.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <iterator>

#include "simullat/error.hpp"

namespace simullat::text {

LangMode parse_lang_mode(std::string_view name) {
    if (name == "space") return LangMode::Space;
    if (name == "char") return LangMode::Character;
    throw Error(ErrorKind::Usage,
                "unknown language mode '" + std::string(name) +
                    "' (expected space or char)");
}

std::string_view to_string(LangMode mode) {
    return mode == LangMode::Space ? "space" : "char";
}

namespace {

// Decodes one code point at `pos`, advancing it. Returns a negative value on
// malformed input.
UChar32 next_code_point(std::string_view text, int32_t& pos) {
    UChar32 c;
    const auto* s = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    U8_NEXT(s, pos, length, c);
    return c;
}

bool is_space(UChar32 c) { return u_isUWhiteSpace(c) != 0; }

bool is_punct_cp(UChar32 c) {
    switch (u_charType(c)) {
        case U_CONNECTOR_PUNCTUATION:
        case U_DASH_PUNCTUATION:
        case U_START_PUNCTUATION:
        case U_END_PUNCTUATION:
        case U_INITIAL_PUNCTUATION:
        case U_FINAL_PUNCTUATION:
        case U_OTHER_PUNCTUATION:
            return true;
        default:
            return false;
    }
}

void append_utf8(std::string& out, UChar32 c) {
    char buf[U8_MAX_LENGTH];
    int32_t len = 0;
    U8_APPEND_UNSAFE(reinterpret_cast<uint8_t*>(buf), len, c);
    out.append(buf, static_cast<std::size_t>(len));
}

// A decoded code point with its byte range in the source.
struct CodePoint {
    UChar32 value;
    std::size_t begin;
    std::size_t end;
};

std::vector<CodePoint> code_points(std::string_view text) {
    std::vector<CodePoint> out;
    int32_t pos = 0;
    const auto length = static_cast<int32_t>(text.size());
    while (pos < length) {
        const auto begin = static_cast<std::size_t>(pos);
        const UChar32 c = next_code_point(text, pos);
        if (c < 0)
            throw Error(ErrorKind::Parse,
                        "invalid UTF-8 at byte " + std::to_string(begin));
        out.push_back({c, begin, static_cast<std::size_t>(pos)});
    }
    return out;
}

TokenPiece make_piece(std::string_view text, std::size_t begin,
                      std::size_t end, bool glued) {
    const auto surface = text.substr(begin, end - begin);
    return {fold_case(surface), std::string(surface), glued};
}

}  // namespace

bool is_valid_utf8(std::string_view text) {
    int32_t pos = 0;
    const auto length = static_cast<int32_t>(text.size());
    while (pos < length)
        if (next_code_point(text, pos) < 0) return false;
    return true;
}

std::u32string decode_utf8(std::string_view text) {
    std::u32string out;
    for (const auto& cp : code_points(text))
        out.push_back(static_cast<char32_t>(cp.value));
    return out;
}

std::string encode_utf8(std::u32string_view text) {
    std::string out;
    for (char32_t c : text) append_utf8(out, static_cast<UChar32>(c));
    return out;
}

std::string fold_case(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const auto& cp : code_points(text))
        append_utf8(out, u_foldCase(cp.value, U_FOLD_CASE_DEFAULT));
    return out;
}

std::vector<TokenPiece> tokenize_pieces(std::string_view text, LangMode mode) {
    const auto cps = code_points(text);
    std::vector<TokenPiece> out;

    if (mode == LangMode::Character) {
        bool after_space = true;
        for (const auto& cp : cps) {
            if (is_space(cp.value)) {
                after_space = true;
                continue;
            }
            out.push_back(make_piece(text, cp.begin, cp.end,
                                     !after_space && !out.empty()));
            after_space = false;
        }
        return out;
    }

    std::size_t i = 0;
    while (i < cps.size()) {
        if (is_space(cps[i].value)) {
            ++i;
            continue;
        }
        std::size_t word_end = i;
        while (word_end < cps.size() && !is_space(cps[word_end].value))
            ++word_end;

        // [core_begin, core_end) is the word stripped of edge punctuation.
        std::size_t core_begin = i;
        while (core_begin < word_end && is_punct_cp(cps[core_begin].value))
            ++core_begin;
        std::size_t core_end = word_end;
        while (core_end > core_begin && is_punct_cp(cps[core_end - 1].value))
            --core_end;

        bool glued = false;
        for (std::size_t k = i; k < core_begin; ++k) {
            out.push_back(make_piece(text, cps[k].begin, cps[k].end, glued));
            glued = true;
        }
        if (core_begin < core_end) {
            out.push_back(make_piece(text, cps[core_begin].begin,
                                     cps[core_end - 1].end, glued));
            glued = true;
        }
        for (std::size_t k = core_end; k < word_end; ++k) {
            out.push_back(make_piece(text, cps[k].begin, cps[k].end, glued));
            glued = true;
        }
        i = word_end;
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text, LangMode mode) {
    std::vector<std::string> out;
    for (auto& piece : tokenize_pieces(text, mode))
        out.push_back(std::move(piece.token));
    return out;
}

bool starts_unit(const TokenPiece& piece, LangMode mode) {
    return mode == LangMode::Character || !piece.glued;
}

bool is_punctuation(std::string_view token) {
    const auto cps = code_points(token);
    if (cps.empty()) return false;
    return std::all_of(cps.begin(), cps.end(),
                       [](const CodePoint& cp) { return is_punct_cp(cp.value); });
}

CharSet::CharSet(std::string_view token) : chars_(decode_utf8(token)) {
    std::sort(chars_.begin(), chars_.end());
    chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
}

double char_similarity(const CharSet& a, const CharSet& b) {
    const auto& x = a.chars();
    const auto& y = b.chars();
    std::size_t common = 0;
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() && j != y.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    const std::size_t united = x.size() + y.size() - common;
    if (united == 0) return 0.0;
    return static_cast<double>(common) / static_cast<double>(united);
}

double char_similarity(std::string_view a, std::string_view b) {
    return char_similarity(CharSet(a), CharSet(b));
}

}  // namespace simullat::text
