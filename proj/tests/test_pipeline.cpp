#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>

#include "mwe/pattern_engine.hpp"
#include "mwe/pipeline.hpp"
#include "mwe/text.hpp"
#include "json.hpp"

using namespace mwe;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = FIXTURE_DIR;

PipelineConfig fixture_config(const std::string& out_dir) {
  auto cfg = parse_config(text::read_file(kFixtures + "/pipeline.cfg"), kFixtures);
  cfg.out_dir = out_dir;
  return cfg;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("parse_config reads every key and rejects unknown ones") {
  auto cfg = fixture_config("/tmp/x");
  CHECK(cfg.min_freq == 2);
  CHECK(cfg.weights.dice == doctest::Approx(0.7));
  CHECK(cfg.threshold == doctest::Approx(0.5));
  CHECK(cfg.mode == LayoutMode::phrases);
  CHECK(cfg.seed == 1);
  CHECK(fs::path(cfg.src_tagged).is_absolute());

  CHECK_THROWS_AS(parse_config("bogus_key = 1\n", ""), std::runtime_error);
  CHECK_THROWS_AS(parse_config("not a kv line\n", ""), std::runtime_error);
}

TEST_CASE("validate_config rejects missing paths before running") {
  TempDir tmp("mwe_pipe_validate");
  auto cfg = fixture_config((tmp.path / "out").string());
  cfg.src_tagged = (tmp.path / "missing.conllu").string();
  CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("missing.conllu"),
                       std::runtime_error);
  // nothing was written
  CHECK(!fs::exists(tmp.path / "out" / "manifest.json"));
}

TEST_CASE("run_pipeline produces a manifest with nonzero counts") {
  TempDir tmp("mwe_pipe_run");
  auto cfg = fixture_config((tmp.path / "out").string());
  auto manifest = nlohmann::json::parse(run_pipeline(cfg));
  CHECK(manifest["counts"]["src_candidates"].get<int>() > 0);
  CHECK(manifest["counts"]["trg_candidates"].get<int>() > 0);
  CHECK(manifest["counts"]["lexicon_pairs"].get<int>() > 0);
  CHECK(manifest["counts"]["composed_lines"].get<int>() > 20);
  CHECK(manifest["counts"]["mwe_devset"].get<int>() > 0);
  for (const auto& out : manifest["outputs"])
    CHECK(fs::exists(out.get<std::string>()));
}

TEST_CASE("rerun with the same config is byte-identical") {
  TempDir t1("mwe_pipe_a"), t2("mwe_pipe_b");
  auto m1 = run_pipeline(fixture_config((t1.path / "out").string()));
  auto m2 = run_pipeline(fixture_config((t2.path / "out").string()));
  // manifests differ only in the out_dir paths they record
  auto j1 = nlohmann::json::parse(m1), j2 = nlohmann::json::parse(m2);
  CHECK(j1["counts"] == j2["counts"]);
  CHECK(j1["inputs"] == j2["inputs"]);
  CHECK(j1["params"] == j2["params"]);
  for (const char* name :
       {"candidates.src.tsv", "lexicon.tsv", "composed.src.txt",
        "composed.trg.txt", "devset.mwe.src.txt", "devset.mwe.idx"})
    CHECK(text::read_file((t1.path / "out" / name).string()) ==
          text::read_file((t2.path / "out" / name).string()));
}

TEST_CASE("stage errors abort with a stage name and remove partial outputs") {
  TempDir tmp("mwe_pipe_err");
  auto cfg = fixture_config((tmp.path / "out").string());
  // a pattern file that parses but matches nothing leaves the lexicon empty,
  // which phrases-mode compose rejects (no MWE units)
  auto bad_patterns = (tmp.path / "none.pat").string();
  text::write_file(bad_patterns, "xx: SYM SYM\n");
  cfg.src_patterns = bad_patterns;
  cfg.trg_patterns = bad_patterns;
  CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("compose"),
                       std::runtime_error);
  CHECK(!fs::exists(tmp.path / "out" / "manifest.json"));
  CHECK(!fs::exists(tmp.path / "out" / "candidates.src.tsv"));
}

TEST_CASE("CLI extract matches the library byte for byte") {
  TempDir tmp("mwe_cli_eq");
  std::string out_path = (tmp.path / "cands.tsv").string();
  std::string cmd = std::string(CLI_PATH) + " extract --tagged " + kFixtures +
                    "/toy.src.conllu --patterns " + kFixtures +
                    "/patterns.pat --min-freq 2 --out " + out_path;
  REQUIRE(std::system(cmd.c_str()) == 0);
  auto corpus = parse_conllu(text::read_file(kFixtures + "/toy.src.conllu"));
  auto pats = parse_pattern_file(text::read_file(kFixtures + "/patterns.pat"));
  auto cands = extract_candidates(pats, corpus, 2);
  CHECK(text::read_file(out_path) == write_candidates(cands));
}

TEST_CASE("CLI all matches run_pipeline outputs") {
  TempDir tmp("mwe_cli_all");
  // config with absolute paths and a tmp out_dir
  auto cfg_path = (tmp.path / "cfg").string();
  std::string cfg_text;
  for (const char* key : {"src_tagged=toy.src.conllu", "trg_tagged=toy.trg.conllu",
                          "src_text=toy.src.txt", "trg_text=toy.trg.txt",
                          "src_patterns=patterns.pat", "trg_patterns=patterns.pat",
                          "dev_src=dev.src.txt", "dev_trg=dev.trg.txt"}) {
    std::string line = key;
    auto eq = line.find('=');
    cfg_text += line.substr(0, eq + 1) + kFixtures + "/" + line.substr(eq + 1) + "\n";
  }
  cfg_text += "out_dir = " + (tmp.path / "cli_out").string() + "\n";
  cfg_text += "mode = phrases\nseed = 1\nmin_freq = 2\n";
  text::write_file(cfg_path, cfg_text);
  std::string cmd = std::string(CLI_PATH) + " all --config " + cfg_path + " > " +
                    (tmp.path / "stdout").string();
  REQUIRE(std::system(cmd.c_str()) == 0);

  auto lib_cfg = fixture_config((tmp.path / "lib_out").string());
  run_pipeline(lib_cfg);
  for (const char* name : {"lexicon.tsv", "composed.src.txt", "composed.trg.txt"})
    CHECK(text::read_file((tmp.path / "cli_out" / name).string()) ==
          text::read_file((tmp.path / "lib_out" / name).string()));
}
