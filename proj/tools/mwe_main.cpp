#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mwe/attention_analysis.hpp"
#include "mwe/corpus_composer.hpp"
#include "mwe/corpus_io.hpp"
#include "mwe/evaluation.hpp"
#include "mwe/mwe_aligner.hpp"
#include "mwe/pattern_engine.hpp"
#include "mwe/pipeline.hpp"
#include "mwe/text.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using mwe::text::read_file;
using mwe::text::write_file;

mwe::TokenLines read_token_lines(const std::string& path) {
  mwe::TokenLines out;
  for (const auto& line : mwe::text::split_lines(read_file(path)))
    out.push_back(mwe::text::split_ws(line));
  return out;
}

// "src.txt,trg.txt" pairs used by compose/mwe-devset arguments.
std::pair<std::string, std::string> split_pair(const std::string& arg,
                                               const char* what) {
  auto comma = arg.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError(std::string(what) +
                               " expects two comma-separated paths");
  return {arg.substr(0, comma), arg.substr(comma + 1)};
}

mwe::RenderFormat parse_format(const std::string& s) {
  if (s == "text") return mwe::RenderFormat::text;
  if (s == "svg") return mwe::RenderFormat::svg;
  if (s == "html") return mwe::RenderFormat::html;
  throw CLI::ValidationError("format must be text, svg or html");
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

nlohmann::json span_json(const mwe::SpanReport& rep) {
  return {{"src_span", {rep.src_span.first, rep.src_span.second}},
          {"trg_span", {rep.trg_span.first, rep.trg_span.second}},
          {"concentration", rep.concentration},
          {"mean_entropy_bits", rep.mean_entropy_bits}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MWE toolkit: extraction, alignment, corpus composition, "
               "evaluation and attention inspection"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // extract
  std::string x_tagged, x_patterns, x_out;
  std::size_t x_min_freq = 2;
  auto* extract = app.add_subcommand("extract", "Extract MWE candidates from a tagged corpus");
  extract->add_option("--tagged", x_tagged, "CoNLL-U corpus")->required();
  extract->add_option("--patterns", x_patterns, "pattern file")->required();
  extract->add_option("--min-freq", x_min_freq, "frequency threshold");
  extract->add_option("--out", x_out, "candidate TSV output (default stdout)");

  // align
  std::string a_src_cands, a_trg_cands, a_src_tagged, a_trg_tagged, a_out;
  double a_w_dice = 0.7, a_w_sim = 0.3, a_threshold = 0.5;
  auto* align = app.add_subcommand("align", "Align source and target MWE candidates");
  align->add_option("--src-cands", a_src_cands, "source candidate TSV")->required();
  align->add_option("--trg-cands", a_trg_cands, "target candidate TSV")->required();
  align->add_option("--src-tagged", a_src_tagged, "source CoNLL-U corpus")->required();
  align->add_option("--trg-tagged", a_trg_tagged, "target CoNLL-U corpus")->required();
  align->add_option("--w-dice", a_w_dice, "co-occurrence weight");
  align->add_option("--w-sim", a_w_sim, "string similarity weight");
  align->add_option("--threshold", a_threshold, "minimum score");
  align->add_option("--out", a_out, "lexicon TSV output (default stdout)");

  // compose
  std::string c_mode = "phrases", c_baseline, c_mwe, c_layout, c_out;
  std::uint64_t c_seed = 1;
  std::size_t c_limit = 0;
  auto* compose = app.add_subcommand("compose", "Build a synthetic training corpus");
  compose->add_option("--mode", c_mode, "phrases or sentences")
      ->check(CLI::IsMember({"phrases", "sentences"}));
  compose->add_option("--baseline", c_baseline, "baseline src,trg")->required();
  compose->add_option("--mwe", c_mwe, "MWE units src,trg")->required();
  compose->add_option("--limit", c_limit, "baseline prefix truncation");
  compose->add_option("--seed", c_seed, "shuffle seed");
  compose->add_option("--layout", c_layout, "layout file (base F / mwe N lines)");
  compose->add_option("--out", c_out, "output src,trg")->required();

  // mwe-devset
  std::string d_dev, d_lexicon, d_out;
  auto* devset = app.add_subcommand("mwe-devset", "Extract the MWE-specific devset subset");
  devset->add_option("--dev", d_dev, "devset src,trg")->required();
  devset->add_option("--lexicon", d_lexicon, "MWE lexicon TSV")->required();
  devset->add_option("--out", d_out, "output src,trg,idx")->required();

  // bleu
  std::string b_hyp, b_ref;
  bool b_smooth = false;
  auto* bleu = app.add_subcommand("bleu", "Corpus BLEU of a hypothesis file");
  bleu->add_option("--hyp", b_hyp, "hypothesis file")->required();
  bleu->add_option("--ref", b_ref, "reference file")->required();
  bleu->add_flag("--smooth", b_smooth, "add-one smoothing");

  // diff
  std::string g_base, g_new, g_ref, g_html;
  auto* diff = app.add_subcommand("diff", "Improving/worsening n-grams between two systems");
  diff->add_option("--base", g_base, "baseline hypothesis file")->required();
  diff->add_option("--new", g_new, "new hypothesis file")->required();
  diff->add_option("--ref", g_ref, "reference file")->required();
  diff->add_option("--html", g_html, "write highlighted HTML here");

  // attn
  auto* attn = app.add_subcommand("attn", "Attention tensor analysis");
  attn->require_subcommand(1);
  std::string s_dump, s_lexicon, s_json;
  auto* stats = attn->add_subcommand("stats", "Per-MWE concentration and entropy");
  stats->add_option("--dump", s_dump, "attention JSONL")->required();
  stats->add_option("--lexicon", s_lexicon, "MWE lexicon TSV")->required();
  stats->add_option("--json", s_json, "JSON output (default stdout)");

  std::string r_dump, r_id, r_format = "text", r_out;
  bool r_raw = false;
  auto* render = attn->add_subcommand("render", "Render a soft alignment matrix");
  render->add_option("--dump", r_dump, "attention JSONL")->required();
  render->add_option("--id", r_id, "sentence id")->required();
  render->add_option("--format", r_format, "text, svg or html")
      ->check(CLI::IsMember({"text", "svg", "html"}));
  render->add_flag("--raw", r_raw, "render subword units without BPE merging");
  render->add_option("--out", r_out, "output file (default stdout)");

  std::string m_a, m_b, m_lexicon, m_tsv;
  auto* cmp = attn->add_subcommand("compare", "Compare two systems' attention over MWEs");
  cmp->add_option("--a", m_a, "attention JSONL, system A")->required();
  cmp->add_option("--b", m_b, "attention JSONL, system B")->required();
  cmp->add_option("--lexicon", m_lexicon, "MWE lexicon TSV")->required();
  cmp->add_option("--tsv", m_tsv, "TSV output (default stdout)");

  // all
  std::string p_config;
  std::uint64_t p_seed = 0;
  bool p_seed_set = false;
  auto* all = app.add_subcommand("all", "Run extract -> align -> compose -> mwe-devset");
  all->add_option("--config", p_config, "flat key=value config file")->required();
  all->add_option("--seed", p_seed, "override config seed")
      ->each([&](const std::string&) { p_seed_set = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract) {
      auto corpus = mwe::parse_conllu(read_file(x_tagged));
      auto patterns = mwe::parse_pattern_file(read_file(x_patterns));
      auto cands = mwe::extract_candidates(patterns, corpus, x_min_freq);
      write_or_print(x_out, mwe::write_candidates(cands));
    } else if (*align) {
      auto src_corpus = mwe::parse_conllu(read_file(a_src_tagged));
      auto trg_corpus = mwe::parse_conllu(read_file(a_trg_tagged));
      if (src_corpus.size() != trg_corpus.size())
        throw std::runtime_error("tagged corpora differ in sentence count");
      auto src_cands = mwe::read_candidates(read_file(a_src_cands));
      auto trg_cands = mwe::read_candidates(read_file(a_trg_cands));
      mwe::locate_occurrences(src_cands, src_corpus);
      mwe::locate_occurrences(trg_cands, trg_corpus);
      auto pairs = mwe::align_pairs(src_cands, trg_cands, src_corpus.size(),
                                    {a_w_dice, a_w_sim}, a_threshold);
      write_or_print(a_out, mwe::write_mwe_lexicon(pairs));
    } else if (*compose) {
      auto [bs, bt] = split_pair(c_baseline, "--baseline");
      auto [ms, mt] = split_pair(c_mwe, "--mwe");
      auto [os, ot] = split_pair(c_out, "--out");
      auto baseline = mwe::read_parallel(read_file(bs), read_file(bt));
      auto units = mwe::read_parallel(read_file(ms), read_file(mt));
      mwe::LayoutSpec layout = mwe::default_layout(
          c_mode == "phrases" ? mwe::LayoutMode::phrases
                              : mwe::LayoutMode::sentences);
      if (!c_layout.empty())
        layout.segments = mwe::parse_layout_file(read_file(c_layout));
      layout.seed = c_seed;
      if (compose->count("--limit")) layout.baseline_limit = c_limit;
      auto composed = mwe::compose(baseline, units, layout);
      write_file(os, mwe::text::join(composed.source, "\n") + "\n");
      write_file(ot, mwe::text::join(composed.target, "\n") + "\n");
    } else if (*devset) {
      auto [ds, dt] = split_pair(d_dev, "--dev");
      auto comma1 = d_out.find(',');
      auto comma2 = d_out.find(',', comma1 == std::string::npos ? 0 : comma1 + 1);
      if (comma1 == std::string::npos || comma2 == std::string::npos)
        throw CLI::ValidationError("--out expects src,trg,idx paths");
      auto dev = mwe::read_parallel(read_file(ds), read_file(dt));
      auto lexicon = mwe::read_mwe_lexicon(read_file(d_lexicon));
      auto subset = mwe::extract_mwe_devset(dev, lexicon);
      write_file(d_out.substr(0, comma1),
                 mwe::text::join(subset.corpus.source, "\n") + "\n");
      write_file(d_out.substr(comma1 + 1, comma2 - comma1 - 1),
                 mwe::text::join(subset.corpus.target, "\n") + "\n");
      std::string idx;
      for (auto i : subset.indices) idx += std::to_string(i) + "\n";
      write_file(d_out.substr(comma2 + 1), idx);
    } else if (*bleu) {
      auto rep = mwe::corpus_bleu(read_token_lines(b_hyp),
                                  read_token_lines(b_ref), b_smooth);
      nlohmann::json j = {{"bleu", rep.bleu},
                          {"precisions", rep.precisions},
                          {"brevity_penalty", rep.brevity_penalty},
                          {"hyp_length", rep.hyp_length},
                          {"ref_length", rep.ref_length}};
      std::cout << j.dump(2) << "\n";
    } else if (*diff) {
      auto base = read_token_lines(g_base);
      auto newer = read_token_lines(g_new);
      auto ref = read_token_lines(g_ref);
      auto d = mwe::ngram_diff(base, newer, ref);
      for (const auto& g : d.improving) std::cout << "+ " << g << "\n";
      for (const auto& g : d.worsening) std::cout << "- " << g << "\n";
      if (!g_html.empty())
        write_file(g_html, mwe::render_diff_html(base, newer, ref, d));
    } else if (*stats) {
      auto records = mwe::read_attention_jsonl(read_file(s_dump));
      auto lexicon = mwe::read_mwe_lexicon(read_file(s_lexicon));
      nlohmann::json out = nlohmann::json::array();
      for (const auto& rec : records) {
        auto wa = mwe::merge_bpe(rec);
        for (const auto& pair : lexicon) {
          auto spans = mwe::locate_mwe_spans(wa, pair);
          if (!spans) continue;
          auto rep = mwe::span_concentration(wa, spans->first, spans->second);
          nlohmann::json row = span_json(rep);
          row["id"] = rec.id;
          row["src"] = pair.src_surface;
          row["trg"] = pair.trg_surface;
          out.push_back(std::move(row));
        }
      }
      write_or_print(s_json, out.dump(2) + "\n");
    } else if (*render) {
      auto records = mwe::read_attention_jsonl(read_file(r_dump));
      const mwe::AttentionRecord* rec = nullptr;
      for (const auto& r : records)
        if (r.id == r_id) rec = &r;
      if (!rec) throw std::runtime_error("no record with id '" + r_id + "'");
      std::string rendered =
          r_raw ? mwe::render_matrix(*rec, parse_format(r_format))
                : mwe::render_matrix(mwe::merge_bpe(*rec), parse_format(r_format));
      write_or_print(r_out, rendered);
    } else if (*cmp) {
      auto ra = mwe::read_attention_jsonl(read_file(m_a));
      auto rb = mwe::read_attention_jsonl(read_file(m_b));
      auto lexicon = mwe::read_mwe_lexicon(read_file(m_lexicon));
      auto result = mwe::compare_systems(ra, rb, lexicon);
      std::string out =
          "id\tsrc\ttrg\tconcentration_a\tconcentration_b\tentropy_a\tentropy_b\n";
      char buf[128];
      for (const auto& row : result.rows) {
        std::snprintf(buf, sizeof(buf), "%.6f\t%.6f\t%.6f\t%.6f",
                      row.a.concentration, row.b.concentration,
                      row.a.mean_entropy_bits, row.b.mean_entropy_bits);
        out += row.record_id + "\t" + row.src_surface + "\t" + row.trg_surface +
               "\t" + buf + "\n";
      }
      write_or_print(m_tsv, out);
      if (result.unmatched_ids)
        std::cerr << result.unmatched_ids << " record id(s) without a match\n";
    } else if (*all) {
      auto base_dir = std::filesystem::path(p_config).parent_path().string();
      auto cfg = mwe::parse_config(read_file(p_config), base_dir);
      if (p_seed_set) cfg.seed = p_seed;
      std::cout << mwe::run_pipeline(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
