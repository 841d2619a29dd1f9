// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "sapeval/align.hpp"
#include "sapeval/backend.hpp"
#include "sapeval/config.hpp"
#include "sapeval/corpus.hpp"
#include "sapeval/error.hpp"
#include "sapeval/fit.hpp"
#include "sapeval/http_server.hpp"
#include "sapeval/io.hpp"
#include "sapeval/normalize.hpp"
#include "sapeval/report.hpp"
#include "sapeval/scoring.hpp"
#include "sapeval/semantic.hpp"
#include "sapeval/service.hpp"
#include "sapeval/text.hpp"
#include "sapeval/wire.hpp"

namespace sapeval::cli {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::atomic<bool> g_shutdown{false};

class Streams {
 public:
  Streams(std::istream& in, std::ostream& out, std::ostream& err)
      : in_(in), out_(out), err_(err) {}

  std::istream& input(const std::string& path) {
    if (path == "-") return in_;
    auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*file) throw Error(ErrorCode::kIo, "cannot open " + path);
    inputs_.push_back(std::move(file));
    return *inputs_.back();
  }

  std::ostream& output(const std::string& path) {
    if (path == "-") return out_;
    auto file = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file) throw Error(ErrorCode::kIo, "cannot write " + path);
    outputs_.push_back(std::move(file));
    return *outputs_.back();
  }

  void flush() {
    out_.flush();
    for (auto& f : outputs_) {
      f->flush();
      if (!*f) throw Error(ErrorCode::kIo, "write failed");
    }
  }

  std::ostream& err() { return err_; }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::unique_ptr<std::ifstream>> inputs_;
  std::vector<std::unique_ptr<std::ofstream>> outputs_;
};

void print_error(std::ostream& err, const Error& e) {
  err << "error: " << error_name(e.code()) << ": " << e.what() << '\n';
  constexpr std::size_t kShownIds = 20;
  const auto& ids = e.ids();
  for (std::size_t i = 0; i < ids.size() && i < kShownIds; ++i) err << "  " << ids[i] << '\n';
  if (ids.size() > kShownIds) err << "  ... " << ids.size() - kShownIds << " more\n";
}

std::string percent(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << v * 100.0 << '%';
  return ss.str();
}

// Flags shared by every command that reads a Config.
struct ConfigFlags {
  std::string config_path;
  std::string backend;
  std::string weights_path;
  std::size_t jobs = 0;
  bool strict = false;

  void add_to(CLI::App& app, bool scoring) {
    app.add_option("--config", config_path, "JSON config file (SAPEVAL_* env overrides it)");
    if (!scoring) return;
    app.add_option("--backend", backend, "Scorer backend: stub or http://host:port");
    app.add_option("--weights", weights_path, "JSON file with alpha/beta/gamma");
    app.add_flag("--strict-backend", strict, "Require a healthy remote backend at startup");
  }

  Config load(Streams& io) const {
    Config c = load_config(config_path);
    if (!backend.empty()) c.backend = backend;
    if (strict) c.strict_backend = true;
    if (jobs > 0) c.jobs = jobs;
    if (!weights_path.empty()) {
      const Json j = Json::parse(io.input(weights_path), nullptr, false);
      if (j.is_discarded()) throw Error(ErrorCode::kInvalidArgument, "unreadable weights file");
      c.weights = io::weights_from_json(j);
    }
    return c;
  }
};

int cmd_normalize(Streams& io, const std::string& in_path, const std::string& out_path,
                  const ConfigFlags& flags, bool no_verbalize) {
  Config config = flags.load(io);
  if (no_verbalize) config.normalize.verbalize = false;
  std::istream& in = io.input(in_path);
  std::ostream& out = io.output(out_path);
  std::size_t failures = 0;
  std::string line;
  std::size_t n = 0;
  auto fail = [&](std::size_t at, std::string_view code, const std::string& message,
                  std::optional<std::size_t> offset = std::nullopt) {
    ++failures;
    OrderedJson rec = {{"line", at}, {"error", code}, {"message", message}};
    if (offset) rec["offset"] = *offset;
    io.err() << rec.dump() << '\n';
  };
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      fail(n, error_name(ErrorCode::kMalformedFile), "not a JSON object");
      continue;
    }
    if (!j.contains("utterance_id") || !j["utterance_id"].is_string() ||
        !j.contains("raw_transcript") || !j["raw_transcript"].is_string()) {
      fail(n, error_name(ErrorCode::kMalformedFile),
           "needs string fields utterance_id and raw_transcript");
      continue;
    }
    try {
      const ReferencePair refs = normalize(j["raw_transcript"].get<std::string>(), config.normalize);
      out << io::reference_to_json(j["utterance_id"].get<std::string>(), refs).dump() << '\n';
    } catch (const Error& e) {
      fail(n, error_name(e.code()), e.what(),
           e.has_position() ? std::optional(e.position()) : std::nullopt);
    }
  }
  io.flush();
  if (failures > 0) {
    io.err() << "error: " << failures << " of " << n << " lines failed\n";
    return 1;
  }
  return 0;
}

struct ScoreArgs {
  std::string refs;
  std::string hyps;
  std::string out = "-";
  std::string system;
  std::string metrics = "wer,semscore";
  bool summary = false;
};

int cmd_score(Streams& io, const ScoreArgs& args, const ConfigFlags& flags) {
  const Config config = flags.load(io);
  bool want_sem = false;
  std::stringstream metrics(args.metrics);
  std::string m;
  while (std::getline(metrics, m, ',')) {
    if (m == "semscore") {
      want_sem = true;
    } else if (m != "wer") {
      throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + m + "'");
    }
  }
  const auto refs = io::read_references(io.input(args.refs), config.normalize);
  const auto hyps = io::read_hypotheses(io.input(args.hyps));

  std::unique_ptr<ScorerBackend> backend;
  std::unique_ptr<SemanticScorer> scorer;
  if (want_sem) {
    backend = open_backend(config);
    scorer = std::make_unique<SemanticScorer>(*backend, config.weights);
  }
  auto scored = score_utterances(refs, hyps, scorer.get(), config.jobs);
  const EvaluationReport report = build_report(std::move(scored), args.system);

  OrderedJson body = io::report_to_json(report);
  if (scorer) {
    body["semantic"] = {{"backend", backend->describe()},
                        {"weights", io::weights_to_json(config.weights)},
                        {"backend_values", scorer->backend_values()},
                        {"clamped_values", scorer->clamped_values()}};
  }
  io.output(args.out) << body.dump(2) << '\n';
  io.flush();
  if (args.summary) {
    io.err() << "utterances " << report.per_utterance.size() << "  WER "
             << percent(report.corpus_wer.wer);
    if (report.corpus_semscore) io.err() << "  SemScore " << percent(*report.corpus_semscore);
    io.err() << '\n';
  }
  return 0;
}

struct ScoreSemArgs {
  std::string refs;
  std::string hyps;
  std::string out = "-";
  bool components = false;
};

// One JSON line per utterance, in reference order.
int cmd_score_sem(Streams& io, const ScoreSemArgs& args, const ConfigFlags& flags) {
  const Config config = flags.load(io);
  const auto refs = io::read_references(io.input(args.refs), config.normalize);
  const auto hyps = io::read_hypotheses(io.input(args.hyps));
  auto backend = open_backend(config);
  SemanticScorer scorer(*backend, config.weights);
  const auto scored = score_utterances(refs, hyps, &scorer, config.jobs);
  std::ostream& os = io.output(args.out);
  for (const auto& u : scored) {
    const UtteranceSem& sem = *u.sem;
    OrderedJson line = {{"utterance_id", u.utterance_id},
                        {"semscore", sem.semscore},
                        {"reference", sem.chosen_j}};
    if (args.components) {
      OrderedJson per = OrderedJson::array();
      for (const auto& c : sem.per_reference_components) {
        if (c) {
          per.push_back({{"nli", c->nli}, {"bert", c->bert}, {"soundex", c->soundex}});
        } else {
          per.push_back(nullptr);
        }
      }
      line["components"] = per;
    }
    os << line.dump() << '\n';
  }
  io.flush();
  return 0;
}

int cmd_pair(Streams& io, const std::string& ref, const std::string& hyp,
             const ConfigFlags& flags) {
  const Config config = flags.load(io);
  const ReferencePair refs = normalize(ref, config.normalize);
  const Tokens hyp_tokens = normalize_hypothesis(hyp);
  const UtteranceWer wer = utterance_wer(refs, hyp_tokens);
  auto backend = open_backend(config);
  SemanticScorer scorer(*backend, config.weights);
  const UtteranceSem sem = scorer.score(refs, hyp_tokens);
  const auto& counts = *wer.per_reference[static_cast<std::size_t>(wer.chosen_j)];
  OrderedJson body = {
      {"reference", join(refs.variant(wer.chosen_j))},
      {"hypothesis", join(hyp_tokens)},
      {"wer", wer.wer},
      {"wer_reference", wer.chosen_j},
      {"substitutions", counts.substitutions},
      {"deletions", counts.deletions},
      {"insertions", counts.insertions},
      {"reference_words", counts.reference_words},
      {"semscore", sem.semscore},
      {"semscore_reference", sem.chosen_j},
      {"nli", sem.components.nli},
      {"bert", sem.components.bert},
      {"soundex", sem.components.soundex},
  };
  io.output("-") << body.dump(2) << '\n';
  return 0;
}

int cmd_compare(Streams& io, const std::vector<std::string>& paths, const std::string& out,
                bool csv) {
  std::vector<EvaluationReport> reports;
  for (const auto& p : paths) {
    const Json j = Json::parse(io.input(p), nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::kMalformedFile, p + " is not JSON");
    EvaluationReport r = io::report_summary_from_json(j);
    if (r.system.empty()) r.system = p;
    reports.push_back(std::move(r));
  }
  const SystemComparison cmp = compare_systems(reports);
  std::ostream& os = io.output(out);
  if (csv) {
    os << "system,wer,semscore,wer_rank,sem_rank,rank_difference\n";
    for (const auto& row : cmp.rows) {
      os << row.system << ',' << row.wer << ',' << row.semscore << ',' << row.wer_rank << ','
         << row.sem_rank << ',' << row.rank_difference << '\n';
    }
  } else {
    os << io::comparison_to_json(cmp).dump(2) << '\n';
  }
  io.flush();
  return 0;
}

struct FitArgs {
  std::string ratings;
  std::string out = "-";
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::vector<double> likert;
};

int cmd_fit(Streams& io, const FitArgs& args, const ConfigFlags& flags) {
  const Config config = flags.load(io);
  const auto lines = io::read_ratings(io.input(args.ratings));
  double lo = 0.0, hi = 1.0;
  if (!args.likert.empty()) {
    if (args.likert.size() != 2 || !(args.likert[1] > args.likert[0])) {
      throw Error(ErrorCode::kInvalidArgument, "--likert needs MIN MAX with MIN < MAX");
    }
    lo = args.likert[0];
    hi = args.likert[1];
  }
  std::unique_ptr<ScorerBackend> backend;
  std::unique_ptr<SemanticScorer> scorer;
  std::vector<RatedSample> samples;
  for (const auto& l : lines) {
    RatedSample s;
    s.rating = (l.rating - lo) / (hi - lo);
    if (s.rating < 0.0 || s.rating > 1.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "line " + std::to_string(l.line) + ": rating outside the scale", l.line);
    }
    if (l.nli && l.bert && l.soundex) {
      s.components = {*l.nli, *l.bert, *l.soundex};
    } else {
      if (!scorer) {
        backend = open_backend(config);
        scorer = std::make_unique<SemanticScorer>(*backend, config.weights);
      }
      s.components = scorer->components(normalize_hypothesis(l.reference),
                                        normalize_hypothesis(l.hypothesis));
    }
    samples.push_back(s);
  }
  const FitResult fit = fit_weights(samples, args.folds, args.seed);
  io.output(args.out) << io::fit_to_json(fit).dump(2) << '\n';
  io.flush();
  return 0;
}

struct SplitArgs {
  std::string manifest;
  std::string out = "-";
  std::uint64_t seed = 0;
  std::vector<double> ratios;
  std::string stats;
};

int cmd_split(Streams& io, const SplitArgs& args, const ConfigFlags& flags) {
  const Config config = flags.load(io);
  SplitRatios ratios;
  if (!args.ratios.empty()) {
    if (args.ratios.size() != 3) {
      throw Error(ErrorCode::kInvalidArgument, "--ratios needs TRAIN DEV TEST");
    }
    ratios = {args.ratios[0], args.ratios[1], args.ratios[2]};
  }
  const Manifest manifest = io::read_manifest(io.input(args.manifest));
  SplitMap splits = split_manifest(manifest, ratios, args.seed);
  splits = mark_unshared(manifest, std::move(splits), config.normalize);
  std::ostream& os = io.output(args.out);
  for (const auto& [id, a] : splits) os << io::split_to_json(id, a).dump() << '\n';
  if (!args.stats.empty()) {
    const auto stats = split_stats(manifest, splits);
    OrderedJson body = OrderedJson::object();
    for (std::size_t i = 0; i < stats.size(); ++i) {
      const auto& s = stats[i];
      body[std::string(split_name(static_cast<Split>(i)))] = {
          {"speakers", s.speakers},
          {"utterances", s.utterances},
          {"duration_s", s.duration_s},
          {"unshared_utterances", s.unshared_utterances},
          {"unshared_duration_s", s.unshared_duration_s}};
    }
    io.output(args.stats) << body.dump(2) << '\n';
  }
  io.flush();
  return 0;
}

void write_port_file(const std::string& path, int port) {
  if (path.empty()) return;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    f << port << '\n';
  }
  std::filesystem::rename(tmp, path);
}

// Runs `serve` on a thread until request_shutdown(), then calls `stop`.
// stop() is a no-op until the server loop has started, so it is repeated
// until `serve` returns.
template <typename Serve, typename Stop>
void serve_until_shutdown(Serve serve, Stop stop) {
  auto done = std::async(std::launch::async, serve);
  while (!g_shutdown.load()) std::this_thread::sleep_for(std::chrono::milliseconds(50));
  do {
    stop();
  } while (done.wait_for(std::chrono::milliseconds(50)) != std::future_status::ready);
  done.get();
  g_shutdown = false;
}

struct ServeArgs {
  std::string listen;
  std::string data_dir;
  std::string refs;
  std::string splits;
  std::string teams;
  std::string admin_token;
  std::size_t rate_limit = 0;
  std::size_t workers = 0;
  std::string port_file;
};

int cmd_serve(Streams& io, const ServeArgs& args, const ConfigFlags& flags) {
  Config config = flags.load(io);
  auto& s = config.service;
  if (!args.listen.empty()) {
    const auto colon = args.listen.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "--listen needs host:port");
    s.listen_host = args.listen.substr(0, colon);
    s.listen_port = std::stoi(args.listen.substr(colon + 1));
  }
  if (!args.data_dir.empty()) s.data_dir = args.data_dir;
  if (!args.refs.empty()) s.refs = args.refs;
  if (!args.splits.empty()) s.splits = args.splits;
  if (!args.teams.empty()) {
    s.teams.clear();
    std::stringstream ss(args.teams);
    std::string t;
    while (std::getline(ss, t, ',')) {
      if (!t.empty()) s.teams.push_back(t);
    }
  }
  if (!args.admin_token.empty()) s.admin_token = args.admin_token;
  if (args.rate_limit > 0) s.rate_limit_per_day = args.rate_limit;
  if (args.workers > 0) s.workers = args.workers;
  if (s.refs.empty() || s.splits.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "serve needs references and splits");
  }
  if (s.teams.empty()) throw Error(ErrorCode::kInvalidArgument, "serve needs at least one team");

  const auto refs = io::read_references(io.input(s.refs.string()), config.normalize);
  const auto splits = io::read_splits(io.input(s.splits.string()));
  TestSets tests = select_test_sets(refs, splits);
  if (tests.test1.empty() && tests.test2.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no unshared test utterances among the references");
  }

  ChallengeOptions options;
  options.data_dir = s.data_dir;
  options.teams = s.teams;
  options.admin_token = s.admin_token;
  options.rate_limit_per_day = s.rate_limit_per_day;
  options.workers = s.workers;
  options.weights = config.weights;
  Challenge challenge(std::move(options), std::move(tests), open_backend(config));

  HttpServer server(challenge);
  const int port = server.bind(s.listen_host, s.listen_port);
  io.err() << "serving " << challenge.test_utterances() << " test utterances on "
           << s.listen_host << ':' << port << " (backend " << challenge.backend_name() << ")\n";
  io.err().flush();
  write_port_file(args.port_file, port);
  serve_until_shutdown([&] { server.serve(); }, [&] { server.stop(); });
  return 0;
}

int cmd_stub_scorer(Streams& io, const std::string& listen, const std::string& port_file) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "--listen needs host:port");
  const std::string host = listen.substr(0, colon);
  const int wanted = std::stoi(listen.substr(colon + 1));

  StubBackend stub;
  httplib::Server server;
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  server.Post("/v1/score", [&](const httplib::Request& req, httplib::Response& res) {
    try {
      const Json body = Json::parse(req.body, nullptr, false);
      const auto pairs = wire::decode_score_request(body);
      res.set_content(wire::encode_score_response(stub.score(pairs)).dump(), "application/json");
    } catch (const Error& e) {
      res.status = 400;
      res.set_content(error_body(e), "application/json");
    }
  });
  server.Get("/v1/health", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(wire::encode_health(stub.health()).dump(), "application/json");
  });
  const int port = wanted == 0 ? server.bind_to_any_port(host)
                               : (server.bind_to_port(host, wanted) ? wanted : -1);
  if (port <= 0) throw Error(ErrorCode::kIo, "cannot listen on " + listen);
  io.err() << "stub scorer on " << host << ':' << port << '\n';
  io.err().flush();
  write_port_file(port_file, port);
  serve_until_shutdown([&] { server.listen_after_bind(); }, [&] { server.stop(); });
  return 0;
}

}  // namespace

void request_shutdown() { g_shutdown = true; }

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Dual-reference WER and SemScore evaluation for atypical speech ASR", "sapeval"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sapeval 0.1.0");

  ConfigFlags flags;

  auto* normalize_cmd = app.add_subcommand("normalize", "Raw transcripts to reference pairs");
  std::string in_path = "-", out_path = "-";
  bool no_verbalize = false;
  normalize_cmd->add_option("--in", in_path, "Manifest JSONL ({utterance_id, raw_transcript})");
  normalize_cmd->add_option("--out", out_path, "Reference JSONL");
  normalize_cmd->add_flag("--no-verbalize", no_verbalize, "Keep digits and abbreviations as written");
  flags.add_to(*normalize_cmd, false);

  auto* score_cmd = app.add_subcommand("score", "Score hypotheses against references");
  ScoreArgs score;
  score_cmd->add_option("--refs", score.refs, "Reference JSONL")->required();
  score_cmd->add_option("--hyps", score.hyps, "Hypothesis JSONL")->required();
  score_cmd->add_option("--metrics", score.metrics, "Comma separated: wer,semscore");
  score_cmd->add_option("--out", score.out, "Report JSON");
  score_cmd->add_option("--system", score.system, "System name recorded in the report");
  score_cmd->add_option("--jobs", flags.jobs, "Worker threads for WER");
  score_cmd->add_flag("--summary", score.summary, "Print corpus metrics to stderr");
  flags.add_to(*score_cmd, true);

  auto* sem_cmd = app.add_subcommand("score-sem", "Per-utterance SemScore");
  ScoreSemArgs sem;
  sem_cmd->add_option("--refs", sem.refs, "Reference JSONL")->required();
  sem_cmd->add_option("--hyps", sem.hyps, "Hypothesis JSONL")->required();
  sem_cmd->add_option("--out", sem.out, "Output JSONL");
  sem_cmd->add_flag("--components", sem.components,
                    "Include nli, bert and soundex against both references");
  flags.add_to(*sem_cmd, true);

  auto* pair_cmd = app.add_subcommand("pair", "Score one hypothesis against one raw transcript");
  std::string pair_ref, pair_hyp;
  pair_cmd->add_option("--ref", pair_ref, "Raw reference transcript")->required();
  pair_cmd->add_option("--hyp", pair_hyp, "Hypothesis text")->required();
  flags.add_to(*pair_cmd, true);

  auto* compare_cmd = app.add_subcommand("compare", "Compare system reports by WER and SemScore");
  std::vector<std::string> report_paths;
  std::string compare_out = "-";
  bool csv = false;
  compare_cmd->add_option("reports", report_paths, "Report JSON files")->required()->expected(2, -1);
  compare_cmd->add_option("--out", compare_out, "Output file");
  compare_cmd->add_flag("--csv", csv, "CSV instead of JSON");

  auto* fit_cmd = app.add_subcommand("fit-weights", "Fit SemScore weights to human ratings");
  FitArgs fit;
  fit_cmd->add_option("--ratings", fit.ratings, "Rated pair JSONL")->required();
  fit_cmd->add_option("--out", fit.out, "Fit report JSON");
  fit_cmd->add_option("--folds", fit.folds, "Cross-validation folds")->capture_default_str();
  fit_cmd->add_option("--seed", fit.seed, "Fold assignment seed")->capture_default_str();
  fit_cmd->add_option("--likert", fit.likert, "Rescale ratings from MIN MAX to [0, 1]")
      ->expected(2);
  flags.add_to(*fit_cmd, true);

  auto* split_cmd = app.add_subcommand("split", "Speaker-disjoint Train/Dev/Test1/Test2 split");
  SplitArgs split;
  split_cmd->add_option("--manifest", split.manifest, "Manifest JSONL")->required();
  split_cmd->add_option("--out", split.out, "Split JSONL");
  split_cmd->add_option("--seed", split.seed, "Order of equal-duration speakers")
      ->capture_default_str();
  split_cmd->add_option("--ratios", split.ratios, "TRAIN DEV TEST duration shares")->expected(3);
  split_cmd->add_option("--stats", split.stats, "Write per-split totals as JSON");
  flags.add_to(*split_cmd, false);

  auto* serve_cmd = app.add_subcommand("serve", "Run the challenge service");
  ServeArgs serve;
  serve_cmd->add_option("--listen", serve.listen, "host:port (port 0 picks one)");
  serve_cmd->add_option("--data-dir", serve.data_dir, "Event log and blob directory");
  serve_cmd->add_option("--refs", serve.refs, "Reference JSONL");
  serve_cmd->add_option("--splits", serve.splits, "Split JSONL");
  serve_cmd->add_option("--teams", serve.teams, "Comma separated team ids");
  serve_cmd->add_option("--admin-token", serve.admin_token, "Bearer token for admin endpoints");
  serve_cmd->add_option("--rate-limit", serve.rate_limit, "Submissions per team per UTC day");
  serve_cmd->add_option("--workers", serve.workers, "Scoring threads");
  serve_cmd->add_option("--port-file", serve.port_file, "Write the bound port here");
  flags.add_to(*serve_cmd, true);

  auto* stub_cmd = app.add_subcommand("stub-scorer", "Serve the stub scorer over the wire protocol");
  std::string stub_listen = "127.0.0.1:8090", stub_port_file;
  stub_cmd->add_option("--listen", stub_listen, "host:port (port 0 picks one)")
      ->capture_default_str();
  stub_cmd->add_option("--port-file", stub_port_file, "Write the bound port here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  Streams io(in, out, err);
  try {
    if (*normalize_cmd) return cmd_normalize(io, in_path, out_path, flags, no_verbalize);
    if (*score_cmd) return cmd_score(io, score, flags);
    if (*sem_cmd) return cmd_score_sem(io, sem, flags);
    if (*pair_cmd) return cmd_pair(io, pair_ref, pair_hyp, flags);
    if (*compare_cmd) return cmd_compare(io, report_paths, compare_out, csv);
    if (*fit_cmd) return cmd_fit(io, fit, flags);
    if (*split_cmd) return cmd_split(io, split, flags);
    if (*serve_cmd) return cmd_serve(io, serve, flags);
    if (*stub_cmd) return cmd_stub_scorer(io, stub_listen, stub_port_file);
  } catch (const Error& e) {
    print_error(err, e);
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace sapeval::cli
