#pragma once

// The `idk` command line: respond, batch, build-dataset, eval, score-sheet, serve.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "idk/conllu.hpp"
#include "idk/dataset.hpp"
#include "idk/engine.hpp"
#include "idk/error.hpp"
#include "idk/metrics.hpp"
#include "idk/service.hpp"

#ifndef IDK_DATA_DIR
#define IDK_DATA_DIR "."
#endif

namespace idk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParser = 2;
inline constexpr int kExitConllu = 3;
inline constexpr int kExitUsage = 64;

inline constexpr const char* kExitCodeHelp =
    "Exit status: 0 success, 1 other failure, 2 parser service unreachable,\n"
    "3 malformed CoNLL-U, 64 usage error. Errors are written to standard error\n"
    "as one JSON object {\"error\": kind, \"message\": text}.\n"
    "Environment: IDK_SEED overrides the pools-file seed, IDK_PARSER_URL sets --parser-url.";

inline std::string default_templates() { return std::string(IDK_DATA_DIR) + "/templates/default.tpl"; }
inline std::string default_pools() { return std::string(IDK_DATA_DIR) + "/config/default_pools.cfg"; }

struct UsageError : Error {
  using Error::Error;
  const char* kind() const noexcept override { return "usage_error"; }
};

struct EngineOptions {
  std::string templates = default_templates();
  std::string pools = default_pools();
  std::optional<std::uint64_t> seed;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--templates", templates, "template file")->check(CLI::ExistingFile);
    cmd.add_option("--pools", pools, "response pools file")->check(CLI::ExistingFile);
    cmd.add_option("--seed", seed, "random seed (overrides the pools file)")->envname("IDK_SEED");
  }

  Engine build() const {
    ResponseConfig config = load_pools(pools);
    if (seed) config.seed = *seed;
    return Engine(TemplatePool::from_file(templates), std::move(config));
  }
};

inline std::string question_text(const Sentence& s) {
  if (!s.text.empty()) return s.text;
  std::string out;
  for (const auto& t : s.tokens) {
    if (!out.empty()) out += ' ';
    out += t.form;
  }
  return out;
}

inline nlohmann::json batch_record(const Sentence& s, const FallbackResponse& r, std::uint64_t counter) {
  nlohmann::json j = to_json(r);
  j["sent_id"] = s.id;
  j["question"] = question_text(s);
  j["counter"] = counter;
  return j;
}

inline int report_error(std::ostream& err, std::string_view kind, std::string_view message, int code) {
  err << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

inline void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    strings::write_file(path, content);
  }
}

// `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dependency-template fallback responder for unanswerable questions."};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  // respond
  EngineOptions respond_engine;
  std::string respond_conllu, respond_text, respond_parser;
  std::uint64_t respond_counter = 0;
  bool respond_json = false;
  auto* respond = app.add_subcommand("respond", "answer one question");
  respond_engine.add_to(*respond);
  auto* conllu_opt = respond->add_option("--conllu", respond_conllu, "pre-parsed question (one sentence)");
  auto* text_opt = respond->add_option("--text", respond_text, "raw question, sent to the parser service");
  conllu_opt->excludes(text_opt);
  respond->add_option("--parser-url", respond_parser, "parser endpoint: POST text, returns CoNLL-U")->envname("IDK_PARSER_URL");
  respond->add_option("--counter", respond_counter, "work-item counter for the random stream");
  respond->add_flag("--json", respond_json, "print the full response record");

  // batch
  EngineOptions batch_engine;
  std::string batch_conllu, batch_out;
  auto* batch = app.add_subcommand("batch", "answer every sentence of a CoNLL-U file");
  batch_engine.add_to(*batch);
  batch->add_option("--conllu", batch_conllu, "CoNLL-U corpus")->required();
  batch->add_option("--out", batch_out, "JSON-lines output (default: stdout)");

  // build-dataset
  EngineOptions build_engine;
  std::string build_corpus, build_parses, build_dir;
  double train_fraction = 0.8;
  bool single_direction = false;
  auto* build = app.add_subcommand("build-dataset", "build IDKD pairs and the train/validation split");
  build_engine.add_to(*build);
  build->add_option("--corpus", build_corpus, "paraphrase corpus (QQP TSV or JSON lines)")->required();
  build->add_option("--parses", build_parses, "CoNLL-U parses keyed by question id")->required()->check(CLI::ExistingFile);
  build->add_option("--out-dir", build_dir, "output directory")->required();
  build->add_option("--train-fraction", train_fraction, "fraction of pairs for training")->check(CLI::Range(0.0, 1.0));
  build->add_flag("--single-direction", single_direction, "pair only question2 with the response to question1");

  // eval
  std::string eval_in, eval_out, eval_sheet;
  std::uint64_t sheet_seed = 0;
  auto* eval = app.add_subcommand("eval", "metrics report over batch output");
  eval->add_option("--responses", eval_in, "batch output (JSON lines)")->required()->check(CLI::ExistingFile);
  eval->add_option("--out", eval_out, "report file (default: stdout)");
  eval->add_option("--sheet", eval_sheet, "also write a shuffled annotation sheet here");
  eval->add_option("--sheet-seed", sheet_seed, "shuffle seed for the annotation sheet");

  // score-sheet
  std::string score_in;
  auto* score = app.add_subcommand("score-sheet", "%GC and ARS from a filled annotation sheet");
  score->add_option("--sheet", score_in, "filled sheet")->required()->check(CLI::ExistingFile);

  // serve
  EngineOptions serve_engine;
  std::string serve_host = "127.0.0.1", serve_parser;
  int serve_port = 8080;
  auto* serve = app.add_subcommand("serve", "HTTP service: POST /v1/fallback, GET /v1/health");
  serve_engine.add_to(*serve);
  serve->add_option("--host", serve_host, "bind address");
  serve->add_option("--port", serve_port, "port, 0 picks a free one")->check(CLI::Range(0, 65535));
  serve->add_option("--parser-url", serve_parser, "parser endpoint for 'text' requests")->envname("IDK_PARSER_URL");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, "usage_error", e.what(), kExitUsage);
  }

  try {
    if (*respond) {
      if (respond_conllu.empty() && respond_text.empty()) throw UsageError("give --conllu or --text");
      const Engine engine = respond_engine.build();
      Sentence sentence;
      if (!respond_text.empty()) {
        if (respond_parser.empty()) throw UsageError("--text needs --parser-url (or IDK_PARSER_URL)");
        sentence = parse_with_service(respond_parser, respond_text);
      } else {
        auto sentences = read_conllu(strings::read_file(respond_conllu));
        if (sentences.size() != 1) {
          throw UsageError("respond takes one sentence, " + respond_conllu + " has " + std::to_string(sentences.size()) +
                           "; use batch");
        }
        sentence = std::move(sentences.front());
      }
      const auto r = engine.respond(sentence, respond_counter);
      out << (respond_json ? to_json(r).dump() : r.text) << '\n';
      return kExitOk;
    }

    if (*batch) {
      const Engine engine = batch_engine.build();
      const auto sentences = read_conllu(strings::read_file(batch_conllu));
      std::string lines;
      for (std::size_t i = 0; i < sentences.size(); ++i) {
        lines += batch_record(sentences[i], engine.respond(sentences[i], i), i).dump();
        lines += '\n';
      }
      write_output(batch_out, lines, out);
      return kExitOk;
    }

    if (*build) {
      if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw UsageError("--train-fraction must lie in (0, 1)");
      const Engine engine = build_engine.build();
      IngestionStats ingest;
      const auto records = load_paraphrase_corpus(build_corpus, &ingest);
      const auto parses = ParseLookup::from_file(build_parses);
      BuildStats stats;
      BuildOptions options;
      options.symmetric = !single_direction;
      const std::uint64_t seed = engine.config().seed;
      const auto pairs = build_idkd(records, parses, engine, seed, options, &stats);
      const auto split = split_idkd(pairs, train_fraction, seed);
      const DatasetHeader header{seed, std::string(kEngineVersion), engine.pool().fingerprint()};
      std::filesystem::create_directories(build_dir);
      const std::filesystem::path dir(build_dir);
      strings::write_file((dir / "pairs.jsonl").string(), write_pairs_jsonl(header, pairs));
      strings::write_file((dir / "train.jsonl").string(), write_pairs_jsonl(header, split.train));
      strings::write_file((dir / "validation.jsonl").string(), write_pairs_jsonl(header, split.validation));
      err << nlohmann::json{{"records", records.size()},
                            {"skipped_label", ingest.skipped_label},
                            {"skipped_empty", ingest.skipped_empty},
                            {"duplicates", stats.duplicates},
                            {"unresolved", stats.unresolved},
                            {"unmatched", stats.unmatched},
                            {"removed_duplicate_pairs", stats.removed_duplicate_pairs},
                            {"pairs", pairs.size()},
                            {"train", split.train.size()},
                            {"validation", split.validation.size()}}
                 .dump()
          << '\n';
      return kExitOk;
    }

    if (*eval) {
      std::vector<EvalItem> corpus;
      std::size_t line_no = 0;
      for (const auto& line : strings::split(strings::read_file(eval_in), '\n')) {
        ++line_no;
        if (strings::trim(line).empty()) continue;
        try {
          const auto j = nlohmann::json::parse(line);
          corpus.push_back(EvalItem{j.at("question").get<std::string>(), response_from_json(j)});
        } catch (const nlohmann::json::exception& e) {
          throw IngestionError(eval_in + " line " + std::to_string(line_no) + ": " + e.what());
        }
      }
      write_output(eval_out, format_report(report(corpus)), out);
      if (!eval_sheet.empty()) export_annotation_sheet(corpus, eval_sheet, sheet_seed);
      return kExitOk;
    }

    if (*score) {
      const auto scores = import_annotation_sheet(strings::read_file(score_in));
      out << "rows: " << scores.rated << '\n'
          << "percent_grammatical: " << format_fixed(scores.percent_grammatical, 2) << '\n'
          << "average_relevance: " << format_fixed(scores.average_relevance, 2) << '\n';
      return kExitOk;
    }

    if (*serve) {
      std::optional<std::string> parser;
      if (!serve_parser.empty()) parser = serve_parser;
      FallbackService service(serve_engine.build(), parser);
      httplib::Server server;
      service.install(server);
      int port = serve_port;
      if (port == 0) {
        port = server.bind_to_any_port(serve_host);
      } else if (!server.bind_to_port(serve_host, port)) {
        port = -1;
      }
      if (port < 0) throw IoError("cannot bind " + serve_host + ":" + std::to_string(serve_port));
      out << nlohmann::json{{"listening", serve_host}, {"port", port}}.dump() << std::endl;
      server.listen_after_bind();
      return kExitOk;
    }
  } catch (const UsageError& e) {
    return report_error(err, e.kind(), e.what(), kExitUsage);
  } catch (const ParserBackendError& e) {
    return report_error(err, e.kind(), e.what(), kExitParser);
  } catch (const ParseError& e) {
    return report_error(err, e.kind(), e.what(), kExitConllu);
  } catch (const StructuralError& e) {
    return report_error(err, e.kind(), e.what(), kExitConllu);
  } catch (const Error& e) {
    return report_error(err, e.kind(), e.what(), kExitFailure);
  } catch (const std::exception& e) {
    return report_error(err, "error", e.what(), kExitFailure);
  }
  return kExitUsage;
}

}  // namespace idk::cli
