#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mwe::text {

// UTF-8 <-> codepoint helpers. Invalid bytes are passed through as U+FFFD.
std::vector<char32_t> decode_utf8(std::string_view s);
std::string encode_utf8(const std::vector<char32_t>& cps);

// Compose base letter + combining mark sequences into precomposed codepoints
// for the Latin repertoire used by English/Czech/Latvian. Idempotent.
std::string nfc(std::string_view s);

// Lowercase (ASCII + Latin-1 supplement + Latin Extended-A).
std::string lowercase(std::string_view s);

// Lowercase and strip diacritics: precomposed Latin letters map to their
// base letter, free-standing combining marks (U+0300..U+036F) are dropped.
std::string fold(std::string_view s);

std::size_t levenshtein(std::string_view a, std::string_view b);

std::vector<std::string> split_lines(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// FNV-1a over bytes, hex-encoded. Used for manifest content hashes.
std::string fnv1a_hex(std::string_view s);

}  // namespace mwe::text
