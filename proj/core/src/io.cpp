// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/io.hpp"

#include <istream>
#include <set>

#include "sapeval/error.hpp"

namespace sapeval::io {
namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::kMalformedFile,
              "line " + std::to_string(line) + ": " + why, line);
}

std::string required_string(const Json& j, const char* key, std::size_t line) {
  if (!j.contains(key) || !j[key].is_string()) {
    malformed(line, std::string("missing string field \"") + key + "\"");
  }
  return j[key].get<std::string>();
}

std::optional<double> optional_number(const Json& j, const char* key, std::size_t line) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_number()) {
    malformed(line, std::string("field \"") + key + "\" must be a number");
  }
  return j[key].get<double>();
}

Tokens token_array(const Json& j, const char* key, std::size_t line) {
  if (!j.contains(key) || !j[key].is_array()) {
    malformed(line, std::string("missing token array \"") + key + "\"");
  }
  Tokens out;
  for (const auto& t : j[key]) {
    if (!t.is_string()) malformed(line, std::string("non-string token in \"") + key + "\"");
    out.push_back(t.get<std::string>());
  }
  return out;
}

OrderedJson counts_json(const std::optional<AlignmentCounts>& c) {
  if (!c) return nullptr;
  return {{"S", c->substitutions}, {"D", c->deletions}, {"I", c->insertions},
          {"N", c->reference_words}};
}

OrderedJson components_json(const ComponentScores& c) {
  return {{"nli", c.nli}, {"bert", c.bert}, {"soundex", c.soundex}};
}

OrderedJson preference_json(const PreferenceBreakdown& p) {
  return {{"type1", p.type1},           {"type2", p.type2},
          {"none", p.none},             {"type1_count", p.type1_count},
          {"type2_count", p.type2_count}, {"none_count", p.none_count}};
}

template <typename T>
OrderedJson optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

void for_each_jsonl(std::istream& in,
                    const std::function<void(std::size_t, const Json&)>& fn) {
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) malformed(line, "not valid JSON");
    if (!j.is_object()) malformed(line, "expected a JSON object");
    fn(line, j);
  }
}

UtteranceRecord record_from_json(const Json& j, std::size_t line) {
  UtteranceRecord r;
  r.utterance_id = required_string(j, "utterance_id", line);
  r.speaker_id = j.contains("speaker_id") && j["speaker_id"].is_string()
                     ? j["speaker_id"].get<std::string>()
                     : std::string();
  r.raw_transcript = required_string(j, "raw_transcript", line);
  if (j.contains("etiology") && j["etiology"].is_string()) {
    r.etiology = parse_etiology(j["etiology"].get<std::string>());
  }
  r.duration_s = optional_number(j, "duration_s", line).value_or(0.0);
  return r;
}

Manifest read_manifest(std::istream& in) {
  Manifest m;
  for_each_jsonl(in, [&](std::size_t line, const Json& j) {
    m.push_back(record_from_json(j, line));
  });
  return m;
}

OrderedJson reference_to_json(const std::string& utterance_id, const ReferencePair& refs) {
  return {{"utterance_id", utterance_id},
          {"ref_with", refs.with_disfluencies},
          {"ref_without", refs.without_disfluencies}};
}

std::vector<ReferenceEntry> read_references(std::istream& in,
                                            const NormalizeOptions& options) {
  std::vector<ReferenceEntry> out;
  std::set<std::string> seen, duplicates;
  for_each_jsonl(in, [&](std::size_t line, const Json& j) {
    ReferenceEntry e;
    e.utterance_id = required_string(j, "utterance_id", line);
    if (!seen.insert(e.utterance_id).second) duplicates.insert(e.utterance_id);
    if (j.contains("ref_with") || j.contains("ref_without")) {
      e.refs.with_disfluencies = token_array(j, "ref_with", line);
      e.refs.without_disfluencies = token_array(j, "ref_without", line);
    } else if (j.contains("raw_transcript")) {
      try {
        e.refs = normalize(required_string(j, "raw_transcript", line), options);
      } catch (const Error& err) {
        malformed(line, err.what());
      }
    } else {
      malformed(line, "needs ref_with/ref_without or raw_transcript");
    }
    if (j.contains("speaker_id") && j["speaker_id"].is_string()) {
      e.speaker_id = j["speaker_id"].get<std::string>();
    }
    if (j.contains("etiology") && j["etiology"].is_string()) {
      e.etiology = parse_etiology(j["etiology"].get<std::string>());
    }
    out.push_back(std::move(e));
  });
  if (!duplicates.empty()) {
    throw Error(ErrorCode::kDuplicateUtterances,
                std::to_string(duplicates.size()) + " reference ids appear more than once",
                std::vector<std::string>(duplicates.begin(), duplicates.end()));
  }
  return out;
}

std::map<std::string, std::string> read_hypotheses(std::istream& in) {
  std::map<std::string, std::string> out;
  std::set<std::string> duplicates;
  for_each_jsonl(in, [&](std::size_t line, const Json& j) {
    std::string id = required_string(j, "utterance_id", line);
    std::string text = required_string(j, "text", line);
    if (!out.emplace(id, std::move(text)).second) duplicates.insert(id);
  });
  if (!duplicates.empty()) {
    throw Error(ErrorCode::kDuplicateUtterances,
                std::to_string(duplicates.size()) + " utterance ids appear more than once",
                std::vector<std::string>(duplicates.begin(), duplicates.end()));
  }
  return out;
}

OrderedJson split_to_json(const std::string& utterance_id, const SplitAssignment& a) {
  return {{"utterance_id", utterance_id},
          {"split", std::string(split_name(a.split))},
          {"unshared", a.unshared}};
}

SplitMap read_splits(std::istream& in) {
  SplitMap out;
  for_each_jsonl(in, [&](std::size_t line, const Json& j) {
    const std::string id = required_string(j, "utterance_id", line);
    const auto split = parse_split(required_string(j, "split", line));
    if (!split) malformed(line, "unknown split name");
    const bool unshared = j.contains("unshared") && j["unshared"].is_boolean() &&
                          j["unshared"].get<bool>();
    if (!out.emplace(id, SplitAssignment{*split, unshared}).second) {
      malformed(line, "duplicate utterance id " + id);
    }
  });
  return out;
}

std::vector<RatedLine> read_ratings(std::istream& in) {
  std::vector<RatedLine> out;
  for_each_jsonl(in, [&](std::size_t line, const Json& j) {
    RatedLine r;
    r.line = line;
    r.reference = required_string(j, "reference", line);
    r.hypothesis = required_string(j, "hypothesis", line);
    const auto rating = optional_number(j, "rating", line);
    if (!rating) malformed(line, "missing numeric field \"rating\"");
    r.rating = *rating;
    r.nli = optional_number(j, "nli", line);
    r.bert = optional_number(j, "bert", line);
    r.soundex = optional_number(j, "soundex", line);
    out.push_back(std::move(r));
  });
  return out;
}

OrderedJson weights_to_json(const ScorerWeights& w) {
  return {{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}};
}

ScorerWeights weights_from_json(const Json& j) {
  const Json& w = j.contains("weights") ? j["weights"] : j;
  for (const char* key : {"alpha", "beta", "gamma"}) {
    if (!w.contains(key) || !w[key].is_number()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("weights need numeric \"") + key + "\"");
    }
  }
  return {w["alpha"].get<double>(), w["beta"].get<double>(), w["gamma"].get<double>()};
}

OrderedJson fit_to_json(const FitResult& fit) {
  OrderedJson folds = OrderedJson::array();
  for (const auto& f : fit.report.folds) {
    folds.push_back({{"train_size", f.train_size},
                     {"test_size", f.test_size},
                     {"weights", weights_to_json(f.weights)},
                     {"mse", f.mse},
                     {"r2", optional_json(f.r2)}});
  }
  return {{"weights", weights_to_json(fit.weights)},
          {"cross_validation",
           {{"samples", fit.report.samples},
            {"folds", fit.report.folds.size()},
            {"seed", fit.report.seed},
            {"mean_mse", fit.report.mean_mse},
            {"mean_r2", optional_json(fit.report.mean_r2)},
            {"per_fold", std::move(folds)}}}};
}

OrderedJson report_to_json(const EvaluationReport& report) {
  OrderedJson utterances = OrderedJson::array();
  for (const auto& u : report.per_utterance) {
    OrderedJson item = {
        {"utterance_id", u.utterance_id},
        {"speaker_id", u.speaker_id},
        {"etiology", std::string(etiology_name(u.etiology))},
        {"wer", u.wer.wer},
        {"chosen_j", u.wer.chosen_j},
        {"n_star", u.wer.n_star},
        {"counts", {counts_json(u.wer.per_reference[0]), counts_json(u.wer.per_reference[1])}},
        {"wer_preference", std::string(preference_name(wer_preference(u.wer, u.identical_references)))},
    };
    if (u.sem) {
      OrderedJson per_ref = OrderedJson::array();
      for (int j : {0, 1}) {
        per_ref.push_back(optional_json(u.sem->per_reference[j]));
      }
      item["semscore"] = u.sem->semscore;
      item["sem_chosen_j"] = u.sem->chosen_j;
      item["components"] = components_json(u.sem->components);
      item["semscore_per_reference"] = std::move(per_ref);
      item["sem_preference"] =
          std::string(preference_name(sem_preference(*u.sem, u.identical_references)));
    }
    utterances.push_back(std::move(item));
  }

  OrderedJson speakers = OrderedJson::object();
  for (const auto& [id, s] : report.per_speaker) {
    speakers[id] = {{"etiology", std::string(etiology_name(s.etiology))},
                    {"utterances", s.utterances},
                    {"n_star", s.n_star},
                    {"wer", s.wer},
                    {"semscore", optional_json(s.semscore)}};
  }
  OrderedJson etiologies = OrderedJson::object();
  for (const auto& [name, e] : report.per_etiology) {
    etiologies[name] = {{"speakers", e.speakers},
                        {"utterances", e.utterances},
                        {"wer", e.wer},
                        {"semscore", optional_json(e.semscore)},
                        {"speaker_wer_mean", e.speaker_wer_mean},
                        {"speaker_wer_std", e.speaker_wer_std}};
  }
  OrderedJson preference = {{"wer", preference_json(report.wer_preference)}};
  preference["semscore"] =
      report.sem_preference ? preference_json(*report.sem_preference) : OrderedJson(nullptr);

  return {{"system", report.system},
          {"corpus",
           {{"utterances", report.per_utterance.size()},
            {"wer", report.corpus_wer.wer},
            {"total_n_star", report.corpus_wer.total_n_star},
            {"semscore", optional_json(report.corpus_semscore)}}},
          {"disfluency_preference", std::move(preference)},
          {"speaker_wer",
           {{"mean", report.speaker_wer_mean},
            {"std", report.speaker_wer_std},
            {"std_kind", "population"},
            {"speakers", report.per_speaker.size()}}},
          {"per_etiology", std::move(etiologies)},
          {"per_speaker", std::move(speakers)},
          {"per_utterance", std::move(utterances)}};
}

EvaluationReport report_summary_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("corpus") || !j["corpus"].is_object() ||
      !j["corpus"].contains("wer") || !j["corpus"]["wer"].is_number()) {
    throw Error(ErrorCode::kMalformedFile, "not an evaluation report");
  }
  EvaluationReport r;
  if (j.contains("system") && j["system"].is_string()) r.system = j["system"].get<std::string>();
  const Json& corpus = j["corpus"];
  r.corpus_wer.wer = corpus["wer"].get<double>();
  if (corpus.contains("total_n_star") && corpus["total_n_star"].is_number_unsigned()) {
    r.corpus_wer.total_n_star = corpus["total_n_star"].get<std::size_t>();
  }
  if (corpus.contains("semscore") && corpus["semscore"].is_number()) {
    r.corpus_semscore = corpus["semscore"].get<double>();
  }
  return r;
}

OrderedJson comparison_to_json(const SystemComparison& c) {
  OrderedJson rows = OrderedJson::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"system", r.system},
                    {"wer", r.wer},
                    {"semscore", r.semscore},
                    {"wer_rank", r.wer_rank},
                    {"sem_rank", r.sem_rank},
                    {"rank_difference", r.rank_difference}});
  }
  OrderedJson discordant = OrderedJson::array();
  for (const auto& [a, b] : c.discordant_pairs) discordant.push_back({a, b});
  return {{"systems", std::move(rows)},
          {"pearson", optional_json(c.pearson)},
          {"discordant_pairs", std::move(discordant)}};
}

}  // namespace sapeval::io
