#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mwe/text.hpp"

using namespace mwe::text;

TEST_CASE("utf8 round trip") {
  std::string s = "městském autobuse tīkla lietotāji";
  CHECK(encode_utf8(decode_utf8(s)) == s);
}

TEST_CASE("nfc composes combining sequences") {
  // "mě" with decomposed e + caron
  std::string decomposed = "me\xcc\x8csto";  // e + U+030C
  CHECK(nfc(decomposed) == "město");
  CHECK(nfc("město") == "město");
  CHECK(nfc(nfc(decomposed)) == nfc(decomposed));
}

TEST_CASE("lowercase handles Latin Extended-A") {
  CHECK(lowercase("Městském") == "městském");
  CHECK(lowercase("TĪKLA") == "tīkla");
  CHECK(lowercase("ŘEKA") == "řeka");
  CHECK(lowercase("ABC xyz") == "abc xyz");
}

TEST_CASE("fold strips diacritics and case") {
  CHECK(fold("elektronické") == "elektronicke");
  CHECK(fold("Tīkla") == "tikla");
  CHECK(fold("Nástěnné") == "nastenne");
  CHECK(fold("plain") == "plain");
}

TEST_CASE("levenshtein") {
  CHECK(levenshtein("map", "map") == 0);
  CHECK(levenshtein("map", "mapa") == 1);
  CHECK(levenshtein("abc", "xyz") == 3);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("kitten", "sitting") == 3);
}

TEST_CASE("split_lines ignores trailing newline") {
  CHECK(split_lines("a\nb\n") == std::vector<std::string>{"a", "b"});
  CHECK(split_lines("a\r\nb") == std::vector<std::string>{"a", "b"});
  CHECK(split_lines("").empty());
}

TEST_CASE("split_ws and join") {
  CHECK(split_ws("  a  b\tc ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(join({"a", "b"}, " ") == "a b");
}
