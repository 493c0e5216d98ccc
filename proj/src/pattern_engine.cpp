#include "mwe/pattern_engine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "mwe/text.hpp"

namespace mwe {

const std::set<std::string>& upos_tags() {
  static const std::set<std::string> tags = {
      "ADJ",  "ADP",  "ADV",  "AUX",   "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
      "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM",  "VERB", "X"};
  return tags;
}

namespace {

[[noreturn]] void bad_tag(const std::string& tag) {
  std::string msg = "unknown UPOS tag '" + tag + "'; valid tags:";
  for (const auto& t : upos_tags()) msg += " " + t;
  throw std::runtime_error(msg);
}

PatternAtom parse_atom(const std::string& tok) {
  if (tok == "*") return Wildcard{};
  if (tok.front() == '(' || tok.back() == ')') {
    if (tok.front() != '(' || tok.back() != ')' || tok.size() < 3)
      throw std::runtime_error("unbalanced parenthesis in '" + tok + "'");
    Alternation alt;
    std::size_t start = 1;
    while (start < tok.size() - 1) {
      std::size_t bar = tok.find('|', start);
      std::size_t end = (bar == std::string::npos || bar >= tok.size() - 1)
                            ? tok.size() - 1
                            : bar;
      std::string tag = tok.substr(start, end - start);
      if (!upos_tags().count(tag)) bad_tag(tag);
      alt.tags.insert(tag);
      start = end + 1;
    }
    if (alt.tags.empty())
      throw std::runtime_error("empty alternation in '" + tok + "'");
    return alt;
  }
  if (tok.find('(') != std::string::npos || tok.find(')') != std::string::npos)
    throw std::runtime_error("unbalanced parenthesis in '" + tok + "'");
  if (!upos_tags().count(tok)) bad_tag(tok);
  return Literal{tok};
}

int min_len(const PatternItem& item) {
  if (const auto* rep = std::get_if<Repeat>(&item)) return rep->min;
  return 1;
}

bool atom_matches(const PatternAtom& atom, const std::string& pos) {
  if (std::holds_alternative<Wildcard>(atom)) return true;
  if (const auto* lit = std::get_if<Literal>(&atom)) return lit->tag == pos;
  return std::get<Alternation>(atom).tags.count(pos) > 0;
}

// Offsets (token counts from the match start) reachable after consuming
// this item, given the offsets reachable before it.
std::vector<bool> advance(const PatternItem& item, const std::vector<bool>& in,
                          const TaggedSentence& sent, int start) {
  const int n = static_cast<int>(in.size()) - 1;
  auto step = [&](const PatternAtom& atom, const std::vector<bool>& from) {
    std::vector<bool> to(in.size(), false);
    for (int o = 0; o < n; ++o)
      if (from[o] && atom_matches(atom, sent.tokens[start + o].pos))
        to[o + 1] = true;
    return to;
  };
  if (const auto* rep = std::get_if<Repeat>(&item)) {
    std::vector<bool> cur = in;
    std::vector<bool> out(in.size(), false);
    for (int k = 0; k <= rep->max; ++k) {
      if (k >= rep->min)
        for (std::size_t i = 0; i < cur.size(); ++i)
          if (cur[i]) out[i] = true;
      if (k < rep->max) cur = step(rep->item, cur);
    }
    return out;
  }
  if (const auto* lit = std::get_if<Literal>(&item)) return step(*lit, in);
  if (const auto* alt = std::get_if<Alternation>(&item)) return step(*alt, in);
  return step(Wildcard{}, in);
}

// Longest span length the pattern generates starting at `start`, or 0.
int longest_match_at(const Pattern& pat, const TaggedSentence& sent, int start) {
  const int n = static_cast<int>(sent.tokens.size()) - start;
  std::vector<bool> reach(n + 1, false);
  reach[0] = true;
  for (const auto& item : pat.items) reach = advance(item, reach, sent, start);
  for (int len = n; len >= 2; --len)
    if (reach[len]) return len;
  return 0;
}

}  // namespace

Pattern parse_pattern(std::string_view line) {
  std::string s(line);
  auto colon = s.find(':');
  if (colon == std::string::npos)
    throw std::runtime_error("pattern missing 'name:' prefix: " + s);
  Pattern pat;
  pat.name = s.substr(0, colon);
  // trim
  while (!pat.name.empty() && pat.name.back() == ' ') pat.name.pop_back();
  while (!pat.name.empty() && pat.name.front() == ' ') pat.name.erase(0, 1);
  if (pat.name.empty()) throw std::runtime_error("empty pattern name: " + s);

  for (std::string tok : text::split_ws(s.substr(colon + 1))) {
    int rep_min = -1, rep_max = -1;
    auto brace = tok.find('{');
    if (brace != std::string::npos) {
      if (tok.back() != '}')
        throw std::runtime_error("malformed repetition in '" + tok + "'");
      std::string body = tok.substr(brace + 1, tok.size() - brace - 2);
      auto comma = body.find(',');
      if (comma == std::string::npos)
        throw std::runtime_error("repetition needs '{min,max}' in '" + tok + "'");
      try {
        rep_min = std::stoi(body.substr(0, comma));
        rep_max = std::stoi(body.substr(comma + 1));
      } catch (const std::exception&) {
        throw std::runtime_error("non-numeric repetition bound in '" + tok + "'");
      }
      if (rep_min < 0 || rep_max < rep_min || rep_max > 8)
        throw std::runtime_error("repetition bounds must satisfy 0 <= min <= max <= 8 in '" +
                                 tok + "'");
      tok = tok.substr(0, brace);
    }
    PatternAtom atom = parse_atom(tok);
    if (rep_min >= 0)
      pat.items.push_back(Repeat{std::move(atom), rep_min, rep_max});
    else
      std::visit([&](auto&& a) { pat.items.emplace_back(std::move(a)); },
                 std::move(atom));
  }
  if (pat.items.empty())
    throw std::runtime_error("pattern '" + pat.name + "' has no items");
  int min_total = 0;
  for (const auto& item : pat.items) min_total += min_len(item);
  if (min_total < 2)
    throw std::runtime_error("pattern '" + pat.name +
                             "' can match fewer than 2 tokens (an MWE spans at least 2)");
  return pat;
}

std::vector<Pattern> parse_pattern_file(std::string_view input) {
  std::vector<Pattern> patterns;
  std::set<std::string> names;
  for (const auto& line : text::split_lines(input)) {
    std::string trimmed = line;
    auto hash = trimmed.find('#');
    if (hash != std::string::npos) trimmed = trimmed.substr(0, hash);
    bool blank = trimmed.find_first_not_of(" \t") == std::string::npos;
    if (blank) continue;
    Pattern pat = parse_pattern(trimmed);
    if (!names.insert(pat.name).second)
      throw std::runtime_error("duplicate pattern name '" + pat.name + "'");
    patterns.push_back(std::move(pat));
  }
  return patterns;
}

std::vector<Match> match_patterns(const std::vector<Pattern>& patterns,
                                  const TaggedSentence& sentence) {
  std::vector<Match> out;
  const int n = static_cast<int>(sentence.tokens.size());
  for (const auto& pat : patterns) {
    std::vector<Match> cands;
    for (int start = 0; start < n; ++start) {
      int len = longest_match_at(pat, sentence, start);
      if (len >= 2) cands.push_back({pat.name, start, start + len - 1});
    }
    // Longest wins among overlapping matches of this pattern, earliest
    // start breaks ties.
    std::stable_sort(cands.begin(), cands.end(), [](const Match& a, const Match& b) {
      int la = a.end - a.start, lb = b.end - b.start;
      if (la != lb) return la > lb;
      return a.start < b.start;
    });
    std::vector<Match> kept;
    for (const auto& c : cands) {
      bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const Match& k) {
        return c.start <= k.end && k.start <= c.end;
      });
      if (!overlaps) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(),
              [](const Match& a, const Match& b) { return a.start < b.start; });
    out.insert(out.end(), kept.begin(), kept.end());
  }
  return out;
}

std::vector<MweCandidate> extract_candidates(
    const std::vector<Pattern>& patterns,
    const std::vector<TaggedSentence>& corpus, std::size_t min_freq) {
  std::map<std::vector<std::string>, MweCandidate> grouped;
  for (std::size_t si = 0; si < corpus.size(); ++si) {
    const auto& sent = corpus[si];
    for (const auto& m : match_patterns(patterns, sent)) {
      std::vector<std::string> key;
      for (int i = m.start; i <= m.end; ++i)
        key.push_back(text::lowercase(sent.tokens[i].lemma));
      auto [it, fresh] = grouped.try_emplace(key);
      MweCandidate& cand = it->second;
      if (fresh) {
        cand.lemma_key = key;
        for (int i = m.start; i <= m.end; ++i)
          cand.surface.push_back(sent.tokens[i].form);
        cand.pattern_name = m.pattern_name;
      }
      ++cand.freq;
      cand.occurrences.push_back({si, sent.id, m.start, m.end});
    }
  }
  std::vector<MweCandidate> out;
  for (auto& [key, cand] : grouped)
    if (cand.freq >= min_freq) out.push_back(std::move(cand));
  std::stable_sort(out.begin(), out.end(),
                   [](const MweCandidate& a, const MweCandidate& b) {
                     if (a.freq != b.freq) return a.freq > b.freq;
                     return a.lemma_key < b.lemma_key;
                   });
  return out;
}

double dice_score(std::size_t freq_a, std::size_t freq_b, std::size_t cooc) {
  if (freq_a < 1 || freq_b < 1)
    throw std::runtime_error("dice_score: frequencies must be >= 1");
  if (cooc > std::min(freq_a, freq_b))
    throw std::runtime_error("dice_score: cooc exceeds min(freq_a, freq_b)");
  return 2.0 * static_cast<double>(cooc) /
         static_cast<double>(freq_a + freq_b);
}

}  // namespace mwe
