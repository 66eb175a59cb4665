// Copyright 2026 The simullat Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "simullat/types.hpp"

namespace simullat::text {

// Accepts "space" or "char".
LangMode parse_lang_mode(std::string_view name);
std::string_view to_string(LangMode mode);

bool is_valid_utf8(std::string_view text);
// Throws Error(Parse) on malformed UTF-8.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

// Unicode simple case folding, code point by code point.
std::string fold_case(std::string_view text);

// A token together with the original text it came from.
struct TokenPiece {
    std::string token;    // case-folded
    std::string surface;  // original bytes
    bool glued = false;   // directly attached to the previous piece
};

// Space mode: case-fold, split on whitespace, then peel leading and
// trailing punctuation characters off into one-character tokens.
// Character mode: one token per non-whitespace code point.
std::vector<TokenPiece> tokenize_pieces(std::string_view text, LangMode mode);
std::vector<std::string> tokenize(std::string_view text, LangMode mode);

// Log delays refer to emission units: whitespace-delimited words in space
// mode, single characters in character mode. True when `piece` opens a unit.
bool starts_unit(const TokenPiece& piece, LangMode mode);

// True iff every code point is in Pc, Pd, Ps, Pe, Pi, Pf or Po.
bool is_punctuation(std::string_view token);

// Sorted, de-duplicated code points of a token.
class CharSet {
public:
    CharSet() = default;
    explicit CharSet(std::string_view token);

    std::size_t size() const noexcept { return chars_.size(); }
    const std::u32string& chars() const noexcept { return chars_; }

private:
    std::u32string chars_;
};

// Jaccard similarity of the two character sets.
double char_similarity(const CharSet& a, const CharSet& b);
double char_similarity(std::string_view a, std::string_view b);

}  // namespace simullat::text
