#include "mwe/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mwe::text {

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6 && i + 1 < s.size()) {
      cp = (c & 0x1F) << 6 | (s[i + 1] & 0x3F);
      len = 2;
    } else if ((c >> 4) == 0xE && i + 2 < s.size()) {
      cp = (c & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
      len = 3;
    } else if ((c >> 3) == 0x1E && i + 3 < s.size()) {
      cp = (c & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 | (s[i + 2] & 0x3F) << 6 |
           (s[i + 3] & 0x3F);
      len = 4;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  for (char32_t cp : cps) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

namespace {

struct Decomp {
  char32_t pre;
  char32_t base;
  char32_t mark;
};

// Latin letters with one combining mark, both cases, covering the
// English/Czech/Latvian repertoire plus the rest of Latin-1 for safety.
constexpr Decomp kDecomps[] = {
    {0x00C0, U'A', 0x0300}, {0x00C1, U'A', 0x0301}, {0x00C2, U'A', 0x0302},
    {0x00C3, U'A', 0x0303}, {0x00C4, U'A', 0x0308}, {0x00C5, U'A', 0x030A},
    {0x00C7, U'C', 0x0327}, {0x00C8, U'E', 0x0300}, {0x00C9, U'E', 0x0301},
    {0x00CA, U'E', 0x0302}, {0x00CB, U'E', 0x0308}, {0x00CC, U'I', 0x0300},
    {0x00CD, U'I', 0x0301}, {0x00CE, U'I', 0x0302}, {0x00CF, U'I', 0x0308},
    {0x00D1, U'N', 0x0303}, {0x00D2, U'O', 0x0300}, {0x00D3, U'O', 0x0301},
    {0x00D4, U'O', 0x0302}, {0x00D5, U'O', 0x0303}, {0x00D6, U'O', 0x0308},
    {0x00D9, U'U', 0x0300}, {0x00DA, U'U', 0x0301}, {0x00DB, U'U', 0x0302},
    {0x00DC, U'U', 0x0308}, {0x00DD, U'Y', 0x0301},
    {0x00E0, U'a', 0x0300}, {0x00E1, U'a', 0x0301}, {0x00E2, U'a', 0x0302},
    {0x00E3, U'a', 0x0303}, {0x00E4, U'a', 0x0308}, {0x00E5, U'a', 0x030A},
    {0x00E7, U'c', 0x0327}, {0x00E8, U'e', 0x0300}, {0x00E9, U'e', 0x0301},
    {0x00EA, U'e', 0x0302}, {0x00EB, U'e', 0x0308}, {0x00EC, U'i', 0x0300},
    {0x00ED, U'i', 0x0301}, {0x00EE, U'i', 0x0302}, {0x00EF, U'i', 0x0308},
    {0x00F1, U'n', 0x0303}, {0x00F2, U'o', 0x0300}, {0x00F3, U'o', 0x0301},
    {0x00F4, U'o', 0x0302}, {0x00F5, U'o', 0x0303}, {0x00F6, U'o', 0x0308},
    {0x00F9, U'u', 0x0300}, {0x00FA, U'u', 0x0301}, {0x00FB, U'u', 0x0302},
    {0x00FC, U'u', 0x0308}, {0x00FD, U'y', 0x0301}, {0x00FF, U'y', 0x0308},
    {0x0100, U'A', 0x0304}, {0x0101, U'a', 0x0304}, {0x0106, U'C', 0x0301},
    {0x0107, U'c', 0x0301}, {0x010C, U'C', 0x030C}, {0x010D, U'c', 0x030C},
    {0x010E, U'D', 0x030C}, {0x010F, U'd', 0x030C}, {0x0112, U'E', 0x0304},
    {0x0113, U'e', 0x0304}, {0x011A, U'E', 0x030C}, {0x011B, U'e', 0x030C},
    {0x0122, U'G', 0x0327}, {0x0123, U'g', 0x0327}, {0x012A, U'I', 0x0304},
    {0x012B, U'i', 0x0304}, {0x0136, U'K', 0x0327}, {0x0137, U'k', 0x0327},
    {0x013B, U'L', 0x0327}, {0x013C, U'l', 0x0327}, {0x0143, U'N', 0x0301},
    {0x0144, U'n', 0x0301}, {0x0145, U'N', 0x0327}, {0x0146, U'n', 0x0327},
    {0x0147, U'N', 0x030C}, {0x0148, U'n', 0x030C}, {0x014C, U'O', 0x0304},
    {0x014D, U'o', 0x0304}, {0x0154, U'R', 0x0301}, {0x0155, U'r', 0x0301},
    {0x0158, U'R', 0x030C}, {0x0159, U'r', 0x030C}, {0x015A, U'S', 0x0301},
    {0x015B, U's', 0x0301}, {0x0160, U'S', 0x030C}, {0x0161, U's', 0x030C},
    {0x0164, U'T', 0x030C}, {0x0165, U't', 0x030C}, {0x016A, U'U', 0x0304},
    {0x016B, U'u', 0x0304}, {0x016E, U'U', 0x030A}, {0x016F, U'u', 0x030A},
    {0x0179, U'Z', 0x0301}, {0x017A, U'z', 0x0301}, {0x017B, U'Z', 0x0307},
    {0x017C, U'z', 0x0307}, {0x017D, U'Z', 0x030C}, {0x017E, U'z', 0x030C},
};

const std::unordered_map<std::uint64_t, char32_t>& compose_map() {
  static const auto* m = [] {
    auto* map = new std::unordered_map<std::uint64_t, char32_t>();
    for (const auto& d : kDecomps)
      (*map)[(std::uint64_t{d.base} << 32) | d.mark] = d.pre;
    return map;
  }();
  return *m;
}

const std::unordered_map<char32_t, char32_t>& base_map() {
  static const auto* m = [] {
    auto* map = new std::unordered_map<char32_t, char32_t>();
    for (const auto& d : kDecomps) (*map)[d.pre] = d.base;
    return map;
  }();
  return *m;
}

bool is_combining(char32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

char32_t to_lower_cp(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  if (cp >= 0x0100 && cp <= 0x0177) {
    // Ext-A: even/odd case pairing except the 0139..0148 run.
    if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
  return cp;
}

}  // namespace

std::string nfc(std::string_view s) {
  auto cps = decode_utf8(s);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  const auto& cmap = compose_map();
  for (char32_t cp : cps) {
    if (!out.empty() && is_combining(cp)) {
      auto it = cmap.find((std::uint64_t{out.back()} << 32) | cp);
      if (it != cmap.end()) {
        out.back() = it->second;
        continue;
      }
    }
    out.push_back(cp);
  }
  return encode_utf8(out);
}

std::string lowercase(std::string_view s) {
  auto cps = decode_utf8(s);
  for (auto& cp : cps) cp = to_lower_cp(cp);
  return encode_utf8(cps);
}

std::string fold(std::string_view s) {
  auto cps = decode_utf8(nfc(s));
  std::vector<char32_t> out;
  out.reserve(cps.size());
  const auto& bmap = base_map();
  for (char32_t cp : cps) {
    cp = to_lower_cp(cp);
    if (is_combining(cp)) continue;
    auto it = bmap.find(cp);
    out.push_back(it != bmap.end() ? to_lower_cp(it->second) : cp);
  }
  return encode_utf8(out);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  auto ca = decode_utf8(a);
  auto cb = decode_utf8(b);
  std::vector<std::size_t> prev(cb.size() + 1), cur(cb.size() + 1);
  for (std::size_t j = 0; j <= cb.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= ca.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= cb.size(); ++j) {
      std::size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[cb.size()];
}

std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\n') {
      std::size_t end = i;
      if (end > start && s[end - 1] == '\r') --end;
      out.emplace_back(s.substr(start, end - start));
      start = i + 1;
    }
  }
  if (start < s.size()) out.emplace_back(s.substr(start));
  return out;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mwe::text
