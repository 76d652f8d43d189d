// Copyright 2026 The subtok Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end: train, encode, sample, align-eval, inject, stats.
// Every run is a pure function of its inputs and flags; manifests carry no
// timestamps or output paths, so repeated runs produce identical bytes.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subtok/subtok.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct CorpusSpec {
  std::string raw;
  subtok::MixtureSpec mixture;
};

// "path" or "path=BUDGET" with K/M/G suffixes; no budget means the whole file.
CorpusSpec parse_corpus_spec(const std::string& raw) {
  CorpusSpec spec;
  spec.raw = raw;
  const std::size_t eq = raw.rfind('=');
  if (eq == std::string::npos) {
    spec.mixture = {fs::path(raw), UINT64_MAX};
  } else {
    spec.mixture = {fs::path(raw.substr(0, eq)), subtok::parse_byte_size(raw.substr(eq + 1))};
  }
  if (spec.mixture.path.empty()) throw subtok::ConfigError("empty corpus path in '" + raw + "'");
  return spec;
}

// "name=value" pairs used by --gold and similar repeatable flags.
std::pair<std::string, std::string> parse_named(const std::string& raw, const char* flag) {
  const std::size_t eq = raw.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= raw.size()) {
    throw subtok::ConfigError(std::string(flag) + " expects NAME=PATH, got '" + raw + "'");
  }
  return {raw.substr(0, eq), raw.substr(eq + 1)};
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw subtok::DataError("cannot write " + path.string());
  return out;
}

void write_manifest(const ordered_json& manifest, const fs::path& dir) {
  std::ofstream out = open_output(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

std::string hex64(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::uint64_t digest_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw subtok::DataError("cannot read " + path.string());
  std::uint64_t state = subtok::fnv1a64("");
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    state = subtok::fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())), state);
  }
  return state;
}

std::string percent2(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

ordered_json mixture_json(const subtok::MixtureManifest& manifest) {
  ordered_json components = ordered_json::array();
  for (const subtok::MixtureComponent& c : manifest.components) {
    ordered_json row;
    row["file"] = c.file;
    if (c.budget_bytes != UINT64_MAX) row["budget_bytes"] = c.budget_bytes;
    row["bytes"] = c.bytes;
    row["lines"] = c.lines;
    components.push_back(std::move(row));
  }
  ordered_json out;
  out["components"] = std::move(components);
  out["total_bytes"] = manifest.total_bytes;
  out["total_lines"] = manifest.total_lines;
  return out;
}

int run_train(const std::vector<std::string>& corpus_args, int vocab_size, bool lowercase,
              const std::string& name, const fs::path& out_dir) {
  std::vector<subtok::MixtureSpec> specs;
  for (const std::string& raw : corpus_args) specs.push_back(parse_corpus_spec(raw).mixture);

  subtok::TrainConfig config;
  config.vocab_size = vocab_size;
  config.model.normalization.lowercase = lowercase;
  config.model.name = name;

  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t digest = subtok::fnv1a64("");
  std::uint64_t occurrences = 0;
  const subtok::MixtureManifest manifest =
      subtok::for_each_mixture_line(specs, [&](const std::string& line) {
        digest = subtok::fnv1a64(line, digest);
        digest = subtok::fnv1a64("\n", digest);
        for (std::string& word :
             subtok::split_words(subtok::normalize(line, config.model.normalization))) {
          ++occurrences;
          ++counts[std::move(word)];
        }
      });

  const subtok::TokenizerModel model = subtok::train_bpe(counts, config);
  fs::create_directories(out_dir);
  subtok::save_model(model, out_dir);

  ordered_json meta;
  meta["command"] = "train";
  meta["vocab_size"] = vocab_size;
  meta["lowercase"] = lowercase;
  meta["corpus"] = mixture_json(manifest);
  meta["corpus_digest"] = hex64(digest);
  meta["word_types"] = counts.size();
  meta["word_occurrences"] = occurrences;
  meta["alphabet"] = model.alphabet().size();
  meta["merges"] = model.merges().size();
  meta["vocab"] = model.vocab_size();
  write_manifest(meta, out_dir);
  return 0;
}

int run_encode(const fs::path& model_dir, const std::string& input, const std::string& output,
               double p, std::uint64_t seed, bool ids) {
  // Checked here as well as per line so an empty input still rejects a bad p.
  if (!(p >= 0.0 && p <= 1.0)) {
    throw subtok::ConfigError("dropout probability must lie in [0, 1]");
  }
  const subtok::TokenizerModel model = subtok::load_model(model_dir);

  std::ifstream file_in;
  std::istream* in = &std::cin;
  if (input != "-") {
    file_in.open(input, std::ios::binary);
    if (!file_in) throw subtok::DataError("cannot read " + input);
    in = &file_in;
  }
  std::ofstream file_out;
  std::ostream* out = &std::cout;
  if (output != "-") {
    file_out = open_output(output);
    out = &file_out;
  }

  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(*in, line)) {
    const subtok::Segmentation seg =
        p == 0.0 ? subtok::encode_deterministic(model, line)
                 : subtok::encode_dropout(model, line, {p, subtok::derive_seed(seed, line_no)});
    if (ids) {
      const std::vector<int> id_list = subtok::token_ids(model, seg);
      for (std::size_t i = 0; i < id_list.size(); ++i) {
        if (i > 0) *out << ' ';
        *out << id_list[i];
      }
    } else {
      for (std::size_t i = 0; i < seg.units.size(); ++i) {
        if (i > 0) *out << ' ';
        *out << seg.units[i];
      }
    }
    *out << '\n';
    ++line_no;
  }
  return 0;
}

int run_sample(const fs::path& model_dir, std::vector<std::string> words,
               const std::string& words_file, double p, std::uint64_t samples, std::uint64_t seed,
               const std::string& output) {
  const subtok::TokenizerModel model = subtok::load_model(model_dir);
  if (!words_file.empty()) {
    std::ifstream in(words_file, std::ios::binary);
    if (!in) throw subtok::DataError("cannot read " + words_file);
    std::string line;
    while (std::getline(in, line)) {
      for (std::string& w : subtok::split_words(model.normalize_text(line))) {
        words.push_back(std::move(w));
      }
    }
  }
  if (words.empty()) throw subtok::ConfigError("no words given (use --word or --words)");

  std::vector<std::string> unique;
  for (std::string& w : words) unique.push_back(model.normalize_text(w));
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::ofstream file_out;
  std::ostream* out = &std::cout;
  if (output != "-") {
    file_out = open_output(output);
    out = &file_out;
  }

  for (const std::string& word : unique) {
    const auto dist = subtok::sample_distribution(model, word, p, samples,
                                                  subtok::word_seed(seed, word));
    if (!dist) {
      ordered_json warn;
      warn["warning"] = "word contains characters outside the model alphabet";
      warn["word"] = word;
      std::cerr << warn.dump() << '\n';
      continue;
    }
    subtok::write_distribution_jsonl(*dist, *out);
  }
  return 0;
}

int run_align_eval(const fs::path& model_dir, const std::vector<std::string>& gold_args,
                   const std::string& format_name, double p, std::uint64_t samples,
                   std::vector<std::uint64_t> thresholds, std::uint64_t seed,
                   const fs::path& out_dir) {
  const subtok::TokenizerModel model = subtok::load_model(model_dir);
  const subtok::GoldFormat format = subtok::parse_gold_format(format_name);

  subtok::EvalConfig config;
  config.dropout_p = p;
  config.samples = samples;
  config.thresholds = std::move(thresholds);
  config.seed = seed;

  fs::create_directories(out_dir);
  std::vector<subtok::AlignmentReport> reports;
  ordered_json languages = ordered_json::array();
  for (const std::string& raw : gold_args) {
    const auto [language, path] = parse_named(raw, "--gold");
    subtok::ParsedGold parsed =
        subtok::parse_gold_file(path, format, model.config().normalization);
    parsed.lexicon.language = language;

    subtok::AlignmentReport report = subtok::evaluate_language(model, parsed.lexicon, config);
    {
      std::ofstream records = open_output(out_dir / ("records_" + language + ".jsonl"));
      subtok::write_alignment_jsonl(report, records);
    }

    ordered_json lang;
    lang["language"] = language;
    lang["gold_file"] = path;
    lang["gold_digest"] = hex64(digest_file(path));
    lang["rows_read"] = parsed.report.rows_read;
    ordered_json rejected = ordered_json::object();
    for (const auto& [reason, count] : parsed.report.rejected) rejected[reason] = count;
    lang["rejected"] = std::move(rejected);
    lang["gold_words"] = parsed.report.words;
    lang["gold_analyses"] = parsed.report.analyses;
    lang["evaluated"] = report.evaluated;
    lang["skipped"] = report.skipped;
    lang["mean_regular"] = report.mean_regular;
    lang["mean_dropout"] = report.mean_dropout;
    ordered_json summaries = ordered_json::array();
    for (const subtok::ThresholdSummary& s : report.threshold_summaries) {
      ordered_json row;
      row["k"] = s.k;
      row["present"] = s.present;
      row["absent"] = s.absent;
      row["mean_present"] = s.mean_present;
      row["mean_zerofill"] = s.mean_zerofill;
      summaries.push_back(std::move(row));
    }
    lang["thresholds"] = std::move(summaries);
    languages.push_back(std::move(lang));
    reports.push_back(std::move(report));
  }

  {
    std::ofstream summary = open_output(out_dir / "summary.tsv");
    subtok::write_alignment_summary_tsv(reports, summary);
  }

  ordered_json meta;
  meta["command"] = "align-eval";
  meta["gold_format"] = format_name;
  meta["dropout_p"] = config.dropout_p;
  meta["samples"] = config.samples;
  meta["thresholds"] = config.thresholds;
  meta["seed"] = config.seed;
  meta["languages"] = std::move(languages);
  write_manifest(meta, out_dir);
  return 0;
}

int run_inject(const fs::path& model_dir, const std::string& gold_path,
               const std::string& format_name, const std::string& input, double replace_prob,
               std::uint64_t seed, const fs::path& out_dir) {
  // Checked here as well as per line so an empty input still rejects a bad r.
  if (!(replace_prob >= 0.0 && replace_prob <= 1.0)) {
    throw subtok::ConfigError("replacement probability must lie in [0, 1]");
  }
  const subtok::TokenizerModel model = subtok::load_model(model_dir);
  const subtok::GoldFormat format = subtok::parse_gold_format(format_name);
  const subtok::ParsedGold parsed =
      subtok::parse_gold_file(gold_path, format, model.config().normalization);
  const subtok::ReplacementTable table = subtok::build_replacement_table(model, parsed.lexicon);

  std::ifstream file_in;
  std::istream* in = &std::cin;
  if (input != "-") {
    file_in.open(input, std::ios::binary);
    if (!file_in) throw subtok::DataError("cannot read " + input);
    in = &file_in;
  }

  fs::create_directories(out_dir);
  std::ofstream out = open_output(out_dir / "tokens.txt");
  subtok::write_replacement_table_file(table, out_dir / "table.tsv");

  std::uint64_t eligible = 0, replaced = 0, lines = 0;
  std::string line;
  for (std::uint64_t line_no = 0; std::getline(*in, line); ++line_no) {
    const subtok::InjectionResult result = subtok::inject_replacements(
        model, table, line, replace_prob, subtok::derive_seed(seed, line_no));
    for (std::size_t i = 0; i < result.segmentation.units.size(); ++i) {
      if (i > 0) out << ' ';
      out << result.segmentation.units[i];
    }
    out << '\n';
    eligible += result.eligible_occurrences;
    replaced += result.replaced_occurrences;
    ++lines;
  }

  ordered_json meta;
  meta["command"] = "inject";
  meta["gold_file"] = gold_path;
  meta["gold_digest"] = hex64(digest_file(gold_path));
  meta["replace_prob"] = replace_prob;
  meta["seed"] = seed;
  meta["lines"] = lines;
  meta["table_words"] = table.entries.size();
  meta["table_words_total"] = table.words_total;
  meta["table_analyses_eligible"] = table.analyses_eligible;
  meta["table_analyses_total"] = table.analyses_total;
  meta["eligible_occurrences"] = eligible;
  meta["replaced_occurrences"] = replaced;
  write_manifest(meta, out_dir);
  return 0;
}

int run_stats(const std::vector<std::string>& corpus_args, const std::string& language,
              const std::vector<std::string>& model_args, const fs::path& out_dir) {
  std::vector<subtok::MixtureSpec> specs;
  for (const std::string& raw : corpus_args) specs.push_back(parse_corpus_spec(raw).mixture);

  std::vector<std::pair<std::string, subtok::TokenizerModel>> models;
  for (const std::string& raw : model_args) {
    const auto [name, dir] = parse_named(raw, "--model");
    models.emplace_back(name, subtok::load_model(dir));
  }

  // All models must normalize identically or the shared word counts would
  // mean different things.
  std::unordered_map<std::string, std::uint64_t> counts;
  const subtok::NormalizeOptions norm = models.front().second.config().normalization;
  for (const auto& [name, model] : models) {
    if (model.config().normalization.lowercase != norm.lowercase) {
      throw subtok::ConfigError("models disagree on lowercasing; cannot share one corpus scan");
    }
  }
  const subtok::MixtureManifest manifest =
      subtok::for_each_mixture_line(specs, [&](const std::string& line) {
        for (std::string& word : subtok::split_words(subtok::normalize(line, norm))) {
          ++counts[std::move(word)];
        }
      });
  std::vector<std::string> types;
  types.reserve(counts.size());
  for (const auto& [word, freq] : counts) types.push_back(word);
  std::sort(types.begin(), types.end());

  fs::create_directories(out_dir);
  std::ofstream tsv = open_output(out_dir / "stats.tsv");
  tsv << "language";
  for (const auto& [name, model] : models) tsv << '\t' << name;
  tsv << '\n' << language;
  ordered_json per_model = ordered_json::array();
  for (const auto& [name, model] : models) {
    const subtok::MultiTokenStats stats = subtok::multi_token_fraction(model, types);
    tsv << '\t' << percent2(stats.fraction);
    ordered_json row;
    row["model"] = name;
    row["multi_token_percent"] = stats.fraction * 100.0;
    row["counted_types"] = stats.counted;
    row["unknown_types"] = stats.unknown;
    per_model.push_back(std::move(row));
  }
  tsv << '\n';

  ordered_json meta;
  meta["command"] = "stats";
  meta["language"] = language;
  meta["corpus"] = mixture_json(manifest);
  meta["models"] = std::move(per_model);
  write_manifest(meta, out_dir);
  return 0;
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const subtok::ConfigError*>(&e)) return "config";
  if (dynamic_cast<const subtok::EncodingError*>(&e)) return "encoding";
  if (dynamic_cast<const subtok::SegmentationError*>(&e)) return "segmentation";
  if (dynamic_cast<const subtok::DataError*>(&e)) return "data";
  return "internal";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic subword tokenization and morphological alignment toolkit"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "learn a merge table from text");
  std::vector<std::string> train_corpus;
  int vocab_size = 30000;
  bool no_lowercase = false;
  std::string model_name = "bpe";
  std::string train_out;
  train->add_option("--corpus", train_corpus, "corpus file, optionally PATH=BYTES")
      ->required()
      ->take_all();
  train->add_option("--vocab-size", vocab_size, "total vocabulary size");
  train->add_flag("--no-lowercase", no_lowercase, "keep the original casing");
  train->add_option("--name", model_name, "model name recorded in model.json");
  train->add_option("--out", train_out, "output directory")->required();

  // encode
  auto* encode = app.add_subcommand("encode", "segment text line by line");
  std::string enc_model, enc_input = "-", enc_output = "-";
  double enc_p = 0.0;
  std::uint64_t enc_seed = 0;
  bool enc_ids = false;
  encode->add_option("--model", enc_model, "model directory")->required();
  encode->add_option("--input", enc_input, "input file, - for stdin");
  encode->add_option("--output", enc_output, "output file, - for stdout");
  encode->add_option("--dropout-p", enc_p, "merge dropout probability");
  encode->add_option("--seed", enc_seed, "random seed");
  encode->add_flag("--ids", enc_ids, "emit token ids instead of token strings");

  // sample
  auto* sample = app.add_subcommand("sample", "sample segmentation distributions");
  std::string smp_model, smp_words_file, smp_output = "-";
  std::vector<std::string> smp_words;
  double smp_p = 0.1;
  std::uint64_t smp_n = 2000, smp_seed = 0;
  sample->add_option("--model", smp_model, "model directory")->required();
  sample->add_option("--word", smp_words, "word to sample (repeatable)");
  sample->add_option("--words", smp_words_file, "file with words, one per line");
  sample->add_option("--dropout-p", smp_p, "merge dropout probability");
  sample->add_option("--samples", smp_n, "draws per word");
  sample->add_option("--seed", smp_seed, "random seed");
  sample->add_option("--output", smp_output, "output file, - for stdout");

  // align-eval
  auto* align = app.add_subcommand("align-eval", "score segmentations against gold boundaries");
  std::string aln_model, aln_format = "canonical", aln_out;
  std::vector<std::string> aln_gold;
  double aln_p = 0.1;
  std::uint64_t aln_n = 2000, aln_seed = 0;
  std::vector<std::uint64_t> aln_thresholds = {100, 10};
  align->add_option("--model", aln_model, "model directory")->required();
  align->add_option("--gold", aln_gold, "gold lexicon as LANG=PATH (repeatable)")
      ->required()
      ->take_all();
  align->add_option("--gold-format", aln_format,
                    "canonical, morphynet-inflectional or morphynet-derivational");
  align->add_option("--dropout-p", aln_p, "merge dropout probability");
  align->add_option("--samples", aln_n, "draws per word");
  align->add_option("--thresholds", aln_thresholds, "count thresholds for best-of filtering")
      ->delimiter(',');
  align->add_option("--seed", aln_seed, "random seed");
  align->add_option("--out", aln_out, "output directory")->required();

  // inject
  auto* inject = app.add_subcommand("inject", "emit tokens with gold-aligned replacements");
  std::string inj_model, inj_gold, inj_format = "canonical", inj_input = "-", inj_out;
  double inj_r = 0.25;
  std::uint64_t inj_seed = 0;
  inject->add_option("--model", inj_model, "model directory")->required();
  inject->add_option("--gold", inj_gold, "gold lexicon file")->required();
  inject->add_option("--gold-format", inj_format,
                     "canonical, morphynet-inflectional or morphynet-derivational");
  inject->add_option("--input", inj_input, "input file, - for stdin");
  inject->add_option("--replace-prob", inj_r, "per-occurrence replacement probability");
  inject->add_option("--seed", inj_seed, "random seed");
  inject->add_option("--out", inj_out, "output directory")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "multi-token word rates per model");
  std::vector<std::string> sts_corpus, sts_models;
  std::string sts_language = "xx", sts_out;
  stats->add_option("--corpus", sts_corpus, "corpus file, optionally PATH=BYTES")
      ->required()
      ->take_all();
  stats->add_option("--language", sts_language, "language label for the table");
  stats->add_option("--model", sts_models, "model as NAME=DIR (repeatable)")
      ->required()
      ->take_all();
  stats->add_option("--out", sts_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      return run_train(train_corpus, vocab_size, !no_lowercase, model_name, train_out);
    }
    if (encode->parsed()) {
      return run_encode(enc_model, enc_input, enc_output, enc_p, enc_seed, enc_ids);
    }
    if (sample->parsed()) {
      return run_sample(smp_model, smp_words, smp_words_file, smp_p, smp_n, smp_seed, smp_output);
    }
    if (align->parsed()) {
      return run_align_eval(aln_model, aln_gold, aln_format, aln_p, aln_n, aln_thresholds,
                            aln_seed, aln_out);
    }
    if (inject->parsed()) {
      return run_inject(inj_model, inj_gold, inj_format, inj_input, inj_r, inj_seed, inj_out);
    }
    if (stats->parsed()) {
      return run_stats(sts_corpus, sts_language, sts_models, sts_out);
    }
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"] = error_kind(e);
    err["message"] = e.what();
    std::cerr << err.dump() << '\n';
    return 1;
  }
  return 0;
}
