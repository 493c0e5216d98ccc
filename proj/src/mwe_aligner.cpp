#include "mwe/mwe_aligner.hpp"

#include <algorithm>
#include <iostream>
#include <set>
#include <stdexcept>

#include "mwe/pattern_engine.hpp"
#include "mwe/text.hpp"

namespace mwe {

namespace {

std::vector<std::set<std::size_t>> line_sets(
    const std::vector<MweCandidate>& cands, std::size_t corpus_lines) {
  std::vector<std::set<std::size_t>> sets;
  sets.reserve(cands.size());
  for (const auto& c : cands) {
    std::set<std::size_t> s;
    for (const auto& occ : c.occurrences) {
      if (occ.sent_index >= corpus_lines)
        throw std::runtime_error(
            "candidate occurrence at line " + std::to_string(occ.sent_index) +
            " outside corpus of " + std::to_string(corpus_lines) + " lines");
      s.insert(occ.sent_index);
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

std::size_t intersection_size(const std::set<std::size_t>& a,
                              const std::set<std::size_t>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& big = a.size() <= b.size() ? b : a;
  std::size_t n = 0;
  for (auto x : small) n += big.count(x);
  return n;
}

}  // namespace

std::map<std::pair<std::size_t, std::size_t>, std::size_t> cooccurrence_counts(
    const std::vector<MweCandidate>& src_cands,
    const std::vector<MweCandidate>& trg_cands, std::size_t corpus_lines) {
  auto src_lines = line_sets(src_cands, corpus_lines);
  auto trg_lines = line_sets(trg_cands, corpus_lines);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
  for (std::size_t i = 0; i < src_cands.size(); ++i)
    for (std::size_t j = 0; j < trg_cands.size(); ++j) {
      std::size_t cooc = intersection_size(src_lines[i], trg_lines[j]);
      if (cooc > 0) counts[{i, j}] = cooc;
    }
  return counts;
}

double string_similarity(const std::string& a, const std::string& b) {
  std::string fa = text::fold(a);
  std::string fb = text::fold(b);
  std::size_t la = text::decode_utf8(fa).size();
  std::size_t lb = text::decode_utf8(fb).size();
  std::size_t longest = std::max(la, lb);
  if (longest == 0) return 1.0;
  double dist = static_cast<double>(text::levenshtein(fa, fb));
  return 1.0 - dist / static_cast<double>(longest);
}

std::vector<MwePair> align_pairs(const std::vector<MweCandidate>& src_cands,
                                 const std::vector<MweCandidate>& trg_cands,
                                 std::size_t corpus_lines, AlignWeights weights,
                                 double threshold) {
  if (weights.dice < 0.0 || weights.sim < 0.0 ||
      std::abs(weights.dice + weights.sim - 1.0) > 1e-9)
    throw std::runtime_error("align weights must be non-negative and sum to 1");
  if (threshold < 0.0 || threshold > 1.0)
    throw std::runtime_error("align threshold must be in [0,1]");

  auto counts = cooccurrence_counts(src_cands, trg_cands, corpus_lines);

  struct Scored {
    std::size_t src, trg;
    double score;
    std::size_t cooc;
  };
  std::vector<Scored> best(src_cands.size(),
                           {0, 0, -1.0, 0});
  for (const auto& [key, cooc] : counts) {
    auto [i, j] = key;
    double dice = dice_score(src_cands[i].freq, trg_cands[j].freq, cooc);
    double sim = string_similarity(text::join(src_cands[i].surface, " "),
                                   text::join(trg_cands[j].surface, " "));
    double score = weights.dice * dice + weights.sim * sim;
    if (score < threshold) continue;
    Scored& b = best[i];
    bool better =
        score > b.score ||
        (score == b.score &&
         (cooc > b.cooc ||
          (cooc == b.cooc && b.score >= 0.0 &&
           trg_cands[j].lemma_key < trg_cands[b.trg].lemma_key)));
    if (better) b = {i, j, score, cooc};
  }

  std::vector<MwePair> pairs;
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (best[i].score < 0.0) continue;
    const auto& s = src_cands[i];
    const auto& t = trg_cands[best[i].trg];
    MwePair p;
    p.src_surface = text::join(s.surface, " ");
    p.trg_surface = text::join(t.surface, " ");
    p.score = best[i].score;
    p.src_freq = s.freq;
    p.trg_freq = t.freq;
    p.cooc_freq = best[i].cooc;
    // Large token-count mismatch is a known aligner failure mode.
    std::size_t ls = s.surface.size(), lt = t.surface.size();
    if (ls > 2 * lt || lt > 2 * ls)
      std::cerr << "warning: token-count mismatch in pair '" << p.src_surface
                << "' / '" << p.trg_surface << "'\n";
    pairs.push_back(std::move(p));
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const MwePair& a, const MwePair& b) {
                     if (a.score != b.score) return a.score > b.score;
                     if (a.src_surface != b.src_surface)
                       return a.src_surface < b.src_surface;
                     return a.trg_surface < b.trg_surface;
                   });
  return pairs;
}

void locate_occurrences(std::vector<MweCandidate>& cands,
                        const std::vector<TaggedSentence>& corpus) {
  for (auto& cand : cands) {
    cand.occurrences.clear();
    const auto& key = cand.lemma_key;
    if (key.empty()) continue;
    for (std::size_t si = 0; si < corpus.size(); ++si) {
      const auto& toks = corpus[si].tokens;
      if (toks.size() < key.size()) continue;
      for (std::size_t start = 0; start + key.size() <= toks.size(); ++start) {
        bool hit = true;
        for (std::size_t k = 0; k < key.size(); ++k)
          if (text::lowercase(toks[start + k].lemma) != key[k]) {
            hit = false;
            break;
          }
        if (hit)
          cand.occurrences.push_back(
              {si, corpus[si].id, static_cast<int>(start),
               static_cast<int>(start + key.size() - 1)});
      }
    }
    cand.freq = cand.occurrences.size();
  }
}

}  // namespace mwe
