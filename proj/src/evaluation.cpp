#include "mwe/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mwe/text.hpp"

namespace mwe {

namespace {

using NgramCounts = std::map<std::string, std::size_t>;

std::string ngram_at(const std::vector<std::string>& toks, std::size_t i, int n) {
  std::string g = toks[i];
  for (int k = 1; k < n; ++k) {
    g += ' ';
    g += toks[i + k];
  }
  return g;
}

NgramCounts count_ngrams(const std::vector<std::string>& toks, int n) {
  NgramCounts counts;
  if (static_cast<int>(toks.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) ++counts[ngram_at(toks, i, n)];
  return counts;
}

// min(hyp count, ref count) per n-gram.
NgramCounts clipped_counts(const std::vector<std::string>& hyp,
                           const std::vector<std::string>& ref, int n) {
  NgramCounts hc = count_ngrams(hyp, n);
  NgramCounts rc = count_ngrams(ref, n);
  NgramCounts out;
  for (const auto& [g, c] : hc) {
    auto it = rc.find(g);
    if (it != rc.end()) out[g] = std::min(c, it->second);
  }
  return out;
}

}  // namespace

BleuReport corpus_bleu(const TokenLines& hyps, const TokenLines& refs,
                       bool smooth) {
  if (hyps.empty()) throw std::runtime_error("corpus_bleu: empty corpus");
  if (hyps.size() != refs.size())
    throw std::runtime_error("corpus_bleu: " + std::to_string(hyps.size()) +
                             " hypotheses vs " + std::to_string(refs.size()) +
                             " references");
  BleuReport rep;
  std::array<std::size_t, 4> matched{};
  std::array<std::size_t, 4> total{};
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    rep.hyp_length += hyps[s].size();
    rep.ref_length += refs[s].size();
    for (int n = 1; n <= 4; ++n) {
      if (static_cast<int>(hyps[s].size()) >= n)
        total[n - 1] += hyps[s].size() - n + 1;
      for (const auto& [g, c] : clipped_counts(hyps[s], refs[s], n))
        matched[n - 1] += c;
    }
  }
  double log_sum = 0.0;
  bool any_zero = false;
  for (int n = 0; n < 4; ++n) {
    double num = static_cast<double>(matched[n]);
    double den = static_cast<double>(total[n]);
    if (smooth) {
      num += 1.0;
      den += 1.0;
    }
    double p = den > 0.0 ? num / den : 0.0;
    rep.precisions[n] = p;
    if (p <= 0.0)
      any_zero = true;
    else
      log_sum += std::log(p);
  }
  rep.brevity_penalty =
      rep.hyp_length >= rep.ref_length || rep.hyp_length == 0
          ? 1.0
          : std::exp(1.0 - static_cast<double>(rep.ref_length) /
                               static_cast<double>(rep.hyp_length));
  rep.bleu = any_zero
                 ? 0.0
                 : 100.0 * rep.brevity_penalty * std::exp(log_sum / 4.0);
  return rep;
}

DevsetSubset extract_mwe_devset(const ParallelCorpus& dev,
                                const std::vector<MwePair>& lexicon) {
  std::vector<std::vector<std::string>> needles;
  for (const auto& p : lexicon) {
    auto toks = text::split_ws(text::lowercase(p.src_surface));
    if (!toks.empty()) needles.push_back(std::move(toks));
  }
  DevsetSubset subset;
  for (std::size_t i = 0; i < dev.size(); ++i) {
    auto toks = text::split_ws(text::lowercase(dev.source[i]));
    bool hit = false;
    for (const auto& needle : needles) {
      if (needle.size() > toks.size()) continue;
      for (std::size_t s = 0; !hit && s + needle.size() <= toks.size(); ++s)
        hit = std::equal(needle.begin(), needle.end(), toks.begin() + s);
      if (hit) break;
    }
    if (hit) {
      subset.corpus.source.push_back(dev.source[i]);
      subset.corpus.target.push_back(dev.target[i]);
      subset.indices.push_back(i);
    }
  }
  return subset;
}

namespace {

std::vector<HighlightSpan> cover_spans(const TokenLines& sents,
                                       const std::set<std::string>& grams,
                                       int max_n) {
  std::vector<HighlightSpan> spans;
  for (std::size_t s = 0; s < sents.size(); ++s) {
    const auto& toks = sents[s];
    std::vector<bool> covered(toks.size(), false);
    for (int n = 1; n <= max_n; ++n)
      for (std::size_t i = 0; static_cast<int>(toks.size()) >= n &&
                              i + n <= toks.size();
           ++i)
        if (grams.count(ngram_at(toks, i, n)))
          for (int k = 0; k < n; ++k) covered[i + k] = true;
    std::size_t i = 0;
    while (i < toks.size()) {
      if (!covered[i]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < toks.size() && covered[j + 1]) ++j;
      spans.push_back({s, i, j});
      i = j + 1;
    }
  }
  return spans;
}

}  // namespace

NgramDiff ngram_diff(const TokenLines& baseline_hyp, const TokenLines& new_hyp,
                     const TokenLines& ref, int max_n) {
  if (max_n < 1) throw std::runtime_error("ngram_diff: max_n must be >= 1");
  if (baseline_hyp.size() != ref.size() || new_hyp.size() != ref.size())
    throw std::runtime_error("ngram_diff: corpus size mismatch");
  NgramCounts base_shared, new_shared;
  for (std::size_t s = 0; s < ref.size(); ++s)
    for (int n = 1; n <= max_n; ++n) {
      for (const auto& [g, c] : clipped_counts(baseline_hyp[s], ref[s], n))
        base_shared[g] += c;
      for (const auto& [g, c] : clipped_counts(new_hyp[s], ref[s], n))
        new_shared[g] += c;
    }
  NgramCounts base_all, new_all;
  for (std::size_t s = 0; s < ref.size(); ++s)
    for (int n = 1; n <= max_n; ++n) {
      for (const auto& [g, c] : count_ngrams(baseline_hyp[s], n)) base_all[g] += c;
      for (const auto& [g, c] : count_ngrams(new_hyp[s], n)) new_all[g] += c;
    }
  auto shared_count = [](const NgramCounts& m, const std::string& g) {
    auto it = m.find(g);
    return it == m.end() ? std::size_t{0} : it->second;
  };
  NgramDiff diff;
  for (const auto& [g, c] : new_shared)
    if (c > shared_count(base_shared, g)) diff.improving.insert(g);
  for (const auto& [g, c] : base_shared)
    if (c > shared_count(new_shared, g)) diff.worsening.insert(g);
  // An n-gram one hypothesis gets wrong (unmatched by the reference) and the
  // other does not produce at all is flagged as well; this is what marks a
  // corrected error like a wrong inflection in the baseline.
  for (const auto& [g, c] : new_all)
    if (c > shared_count(new_shared, g) && !base_all.count(g))
      diff.improving.insert(g);
  for (const auto& [g, c] : base_all)
    if (c > shared_count(base_shared, g) && !new_all.count(g))
      diff.worsening.insert(g);
  diff.improving_spans = cover_spans(new_hyp, diff.improving, max_n);
  diff.worsening_spans = cover_spans(baseline_hyp, diff.worsening, max_n);
  return diff;
}

namespace {

std::string html_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_sentence(const std::vector<std::string>& toks,
                            const std::vector<HighlightSpan>& spans,
                            std::size_t sentence, const char* css_class) {
  std::vector<bool> covered(toks.size(), false);
  for (const auto& sp : spans)
    if (sp.sentence == sentence)
      for (std::size_t k = sp.start; k <= sp.end && k < toks.size(); ++k)
        covered[k] = true;
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i) out += ' ';
    if (covered[i]) {
      out += "<span class=\"";
      out += css_class;
      out += "\">";
      out += html_escape(toks[i]);
      out += "</span>";
    } else {
      out += html_escape(toks[i]);
    }
  }
  return out;
}

}  // namespace

std::string render_diff_html(const TokenLines& baseline_hyp,
                             const TokenLines& new_hyp, const TokenLines& ref,
                             const NgramDiff& diff) {
  std::string out =
      "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">\n"
      "<style>\n"
      ".good { background: #b4e8b4; }\n"
      ".bad { background: #f0b4b4; }\n"
      "td { padding: 2px 8px; font-family: sans-serif; }\n"
      "th { text-align: left; padding: 2px 8px; font-family: sans-serif; }\n"
      "</style></head><body>\n<table>\n";
  for (std::size_t s = 0; s < ref.size(); ++s) {
    out += "<tr><th>Baseline</th><td>" +
           render_sentence(baseline_hyp[s], diff.worsening_spans, s, "bad") +
           "</td></tr>\n";
    out += "<tr><th>New</th><td>" +
           render_sentence(new_hyp[s], diff.improving_spans, s, "good") +
           "</td></tr>\n";
    std::string ref_line;
    for (std::size_t i = 0; i < ref[s].size(); ++i) {
      if (i) ref_line += ' ';
      ref_line += html_escape(ref[s][i]);
    }
    out += "<tr><th>Reference</th><td>" + ref_line + "</td></tr>\n";
    out += "<tr><td colspan=\"2\">&nbsp;</td></tr>\n";
  }
  out += "</table>\n</body></html>\n";
  return out;
}

}  // namespace mwe
