#include "mwe/attention_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "mwe/text.hpp"

namespace mwe {

namespace {

bool is_continuation(const std::string& unit) {
  return unit.size() > 2 && unit.compare(unit.size() - 2, 2, "@@") == 0;
}

// Groups of consecutive subword indices forming one word each.
std::vector<WordSpan> word_groups(const std::vector<std::string>& units,
                                  const std::string& record_id) {
  std::vector<WordSpan> groups;
  std::size_t i = 0;
  while (i < units.size()) {
    std::size_t j = i;
    while (j < units.size() && is_continuation(units[j])) ++j;
    if (j == units.size())
      throw std::runtime_error("record '" + record_id +
                               "': dangling '@@' continuation at unit " +
                               std::to_string(i));
    groups.push_back({i, j});
    i = j + 1;
  }
  return groups;
}

std::string glue(const std::vector<std::string>& units, WordSpan span) {
  std::string word;
  for (std::size_t k = span.first; k <= span.second; ++k) {
    const std::string& u = units[k];
    word += k < span.second ? u.substr(0, u.size() - 2) : u;
  }
  return word;
}

}  // namespace

WordAttention merge_bpe(const AttentionRecord& record) {
  WordAttention wa;
  wa.src_map = word_groups(record.src_units, record.id);
  wa.trg_map = word_groups(record.trg_units, record.id);
  for (auto span : wa.src_map) wa.src_words.push_back(glue(record.src_units, span));
  for (auto span : wa.trg_map) wa.trg_words.push_back(glue(record.trg_units, span));

  // Source columns summed: total attention flowing into a source word.
  std::vector<std::vector<double>> col_merged(record.trg_units.size());
  for (std::size_t t = 0; t < record.trg_units.size(); ++t) {
    col_merged[t].resize(wa.src_map.size(), 0.0);
    for (std::size_t w = 0; w < wa.src_map.size(); ++w)
      for (std::size_t k = wa.src_map[w].first; k <= wa.src_map[w].second; ++k)
        col_merged[t][w] += record.matrix[t][k];
  }
  // Target rows averaged: per-emission attention, rows stay stochastic.
  wa.matrix.resize(wa.trg_map.size());
  for (std::size_t w = 0; w < wa.trg_map.size(); ++w) {
    auto [lo, hi] = wa.trg_map[w];
    wa.matrix[w].assign(wa.src_map.size(), 0.0);
    for (std::size_t t = lo; t <= hi; ++t)
      for (std::size_t s = 0; s < wa.src_map.size(); ++s)
        wa.matrix[w][s] += col_merged[t][s];
    double denom = static_cast<double>(hi - lo + 1);
    for (auto& v : wa.matrix[w]) v /= denom;
  }
  return wa;
}

std::vector<double> row_entropy(const std::vector<std::vector<double>>& matrix) {
  std::vector<double> out;
  out.reserve(matrix.size());
  for (const auto& row : matrix) {
    double h = 0.0;
    for (double p : row)
      if (p > 0.0) h -= p * std::log2(p);
    out.push_back(h);
  }
  return out;
}

SpanReport span_concentration(const WordAttention& wa, WordSpan src_span,
                              WordSpan trg_span) {
  if (src_span.first > src_span.second || trg_span.first > trg_span.second ||
      src_span.second >= wa.src_words.size() ||
      trg_span.second >= wa.trg_words.size())
    throw std::runtime_error("span out of bounds");
  SpanReport rep;
  rep.src_span = src_span;
  rep.trg_span = trg_span;
  double mass = 0.0;
  for (std::size_t t = trg_span.first; t <= trg_span.second; ++t)
    for (std::size_t s = src_span.first; s <= src_span.second; ++s)
      mass += wa.matrix[t][s];
  rep.concentration = mass / static_cast<double>(trg_span.second - trg_span.first + 1);
  auto entropies = row_entropy(wa.matrix);
  double hsum = 0.0;
  for (std::size_t t = trg_span.first; t <= trg_span.second; ++t)
    hsum += entropies[t];
  rep.mean_entropy_bits = hsum / static_cast<double>(trg_span.second - trg_span.first + 1);
  return rep;
}

namespace {

std::optional<WordSpan> find_sequence(const std::vector<std::string>& words,
                                      const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > words.size()) return std::nullopt;
  std::vector<std::string> folded;
  folded.reserve(words.size());
  for (const auto& w : words) folded.push_back(text::fold(w));
  for (std::size_t s = 0; s + needle.size() <= words.size(); ++s) {
    bool hit = true;
    for (std::size_t k = 0; k < needle.size(); ++k)
      if (folded[s + k] != needle[k]) {
        hit = false;
        break;
      }
    if (hit) return WordSpan{s, s + needle.size() - 1};
  }
  return std::nullopt;
}

std::vector<std::string> fold_tokens(const std::string& surface) {
  std::vector<std::string> toks = text::split_ws(surface);
  for (auto& t : toks) t = text::fold(t);
  return toks;
}

}  // namespace

std::optional<std::pair<WordSpan, WordSpan>> locate_mwe_spans(
    const WordAttention& wa, const MwePair& pair) {
  auto src = find_sequence(wa.src_words, fold_tokens(pair.src_surface));
  auto trg = find_sequence(wa.trg_words, fold_tokens(pair.trg_surface));
  if (!src || !trg) return std::nullopt;
  return std::make_pair(*src, *trg);
}

namespace {

constexpr char kShadeRamp[] = " .:-=+*#%@";

char shade(double p) {
  int bin = static_cast<int>(p * 10.0);
  bin = std::clamp(bin, 0, 9);
  return kShadeRamp[bin];
}

std::string render_text(const std::vector<std::string>& src_words,
                        const std::vector<std::string>& trg_words,
                        const std::vector<std::vector<double>>& matrix) {
  auto width = [](const std::string& w) { return text::decode_utf8(w).size(); };
  std::size_t label_w = 0;
  for (const auto& w : trg_words) label_w = std::max(label_w, width(w));
  std::string out;
  // Column header: one source word per line to keep columns one char wide.
  for (std::size_t s = 0; s < src_words.size(); ++s) {
    out += std::string(label_w + 2, ' ');
    out += std::string(s, ' ');
    out += src_words[s];
    out += '\n';
  }
  for (std::size_t t = 0; t < trg_words.size(); ++t) {
    out += std::string(label_w - width(trg_words[t]), ' ');
    out += trg_words[t];
    out += "  ";
    for (std::size_t s = 0; s < matrix[t].size(); ++s) out += shade(matrix[t][s]);
    out += '\n';
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string render_svg(const std::vector<std::string>& src_words,
                       const std::vector<std::string>& trg_words,
                       const std::vector<std::vector<double>>& matrix) {
  constexpr int cell = 20;
  constexpr int margin = 90;
  const std::size_t cols = src_words.size();
  const std::size_t rows = trg_words.size();
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(margin + cols * cell + 10) + "\" height=\"" +
         std::to_string(margin + rows * cell + 10) + "\">\n";
  for (std::size_t s = 0; s < cols; ++s)
    out += "<text x=\"" + std::to_string(margin + s * cell + cell / 2) +
           "\" y=\"" + std::to_string(margin - 5) +
           "\" font-size=\"10\" text-anchor=\"start\" transform=\"rotate(-60 " +
           std::to_string(margin + s * cell + cell / 2) + " " +
           std::to_string(margin - 5) + ")\">" + xml_escape(src_words[s]) +
           "</text>\n";
  for (std::size_t t = 0; t < rows; ++t)
    out += "<text x=\"" + std::to_string(margin - 5) + "\" y=\"" +
           std::to_string(margin + t * cell + cell / 2 + 4) +
           "\" font-size=\"10\" text-anchor=\"end\">" +
           xml_escape(trg_words[t]) + "</text>\n";
  for (std::size_t t = 0; t < rows; ++t)
    for (std::size_t s = 0; s < cols; ++s)
      out += "<rect x=\"" + std::to_string(margin + s * cell) + "\" y=\"" +
             std::to_string(margin + t * cell) + "\" width=\"" +
             std::to_string(cell) + "\" height=\"" + std::to_string(cell) +
             "\" fill=\"black\" fill-opacity=\"" + fmt(matrix[t][s]) +
             "\" stroke=\"#ccc\" stroke-width=\"0.5\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string render_matrix(const std::vector<std::string>& src_words,
                          const std::vector<std::string>& trg_words,
                          const std::vector<std::vector<double>>& matrix,
                          RenderFormat format) {
  switch (format) {
    case RenderFormat::text:
      return render_text(src_words, trg_words, matrix);
    case RenderFormat::svg:
      return render_svg(src_words, trg_words, matrix);
    case RenderFormat::html:
      return "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"></head>"
             "<body>\n" +
             render_svg(src_words, trg_words, matrix) + "</body></html>\n";
  }
  throw std::runtime_error("unknown render format");
}

std::string render_matrix(const WordAttention& wa, RenderFormat format) {
  return render_matrix(wa.src_words, wa.trg_words, wa.matrix, format);
}

std::string render_matrix(const AttentionRecord& record, RenderFormat format) {
  return render_matrix(record.src_units, record.trg_units, record.matrix, format);
}

CompareResult compare_systems(const std::vector<AttentionRecord>& records_a,
                              const std::vector<AttentionRecord>& records_b,
                              const std::vector<MwePair>& lexicon) {
  std::map<std::string, const AttentionRecord*> by_id_b;
  for (const auto& r : records_b) by_id_b[r.id] = &r;
  CompareResult result;
  std::map<std::string, std::vector<MweComparison>> by_id;
  std::size_t matched_a = 0;
  for (const auto& ra : records_a) {
    auto it = by_id_b.find(ra.id);
    if (it == by_id_b.end()) continue;
    ++matched_a;
    WordAttention wa = merge_bpe(ra);
    WordAttention wb = merge_bpe(*it->second);
    for (const auto& pair : lexicon) {
      auto spans_a = locate_mwe_spans(wa, pair);
      auto spans_b = locate_mwe_spans(wb, pair);
      if (!spans_a || !spans_b) continue;
      MweComparison cmp;
      cmp.record_id = ra.id;
      cmp.src_surface = pair.src_surface;
      cmp.trg_surface = pair.trg_surface;
      cmp.a = span_concentration(wa, spans_a->first, spans_a->second);
      cmp.b = span_concentration(wb, spans_b->first, spans_b->second);
      by_id[ra.id].push_back(std::move(cmp));
    }
  }
  result.unmatched_ids = records_a.size() - matched_a;
  for (auto& [id, rows] : by_id)
    for (auto& r : rows) result.rows.push_back(std::move(r));
  return result;
}

}  // namespace mwe
