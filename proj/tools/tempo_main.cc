// Copyright 2026 The Tempo Rerank Authors.
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

// Command-line entry point: gen, embed, index, train, search, eval,
// extract-time.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tempo/bench.h"
#include "tempo/extract.h"
#include "tempo/pipeline.h"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace tempo {
namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

// Whether `name` was given on the command line of `cmd`.
bool Given(const CLI::App& cmd, const std::string& name) {
  const CLI::Option* opt = cmd.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

// Falls back to RE3_SEED, then to `fallback`.
uint64_t EnvSeed(uint64_t fallback) {
  const char* env = std::getenv("RE3_SEED");
  if (!env || !*env) return fallback;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw ConfigError(std::string("RE3_SEED is not an unsigned integer: ") + env);
  }
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

class RunManifest {
 public:
  explicit RunManifest(std::string subcommand)
      : start_(std::chrono::steady_clock::now()) {
    j_["subcommand"] = std::move(subcommand);
    j_["config"] = ordered_json::object();
    j_["seeds"] = ordered_json::object();
    j_["inputs"] = ordered_json::object();
    j_["outputs"] = ordered_json::object();
    j_["artifact_versions"] = {{"dataset", 1},
                               {"embedding_binary", 1},
                               {"index", 1},
                               {"params", 1}};
  }

  ordered_json& config() { return j_["config"]; }
  void Seed(const std::string& name, uint64_t v) { j_["seeds"][name] = v; }
  void Input(const fs::path& p) {
    j_["inputs"][p.string()] =
        fs::is_directory(p) ? DirChecksum(p) : FileChecksum(p);
  }
  void Output(const fs::path& p) { j_["outputs"][p.string()] = FileChecksum(p); }
  void Set(const std::string& key, ordered_json v) { j_[key] = std::move(v); }

  void Write(const fs::path& path) {
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
    j_["duration_seconds"] = secs;
    WriteText(path, j_.dump(2) + "\n");
  }

 private:
  static std::string DirChecksum(const fs::path& dir) {
    std::string all;
    for (const char* name : {"docs.jsonl", "queries.jsonl", "manifest.json"}) {
      if (fs::exists(dir / name)) all += FileChecksum(dir / name);
    }
    return Checksum(all);
  }

  ordered_json j_;
  std::chrono::steady_clock::time_point start_;
};

// ---- gen ----

struct GenArgs {
  std::string scenario = "hyb";
  int queries = 0;
  int cdr = 0;
  int cdr_min = 0;
  int cdr_max = 0;
  uint64_t seed = 0;
  double blank_td = 0.0;
  int entity_pool = 0;
  int template_pool = 0;
  std::string window_start, window_end, today;
  std::string out;
};

int RunGen(const GenArgs& a, const CLI::App& cmd) {
  RunManifest run("gen");
  GenConfig cfg = GenConfig::Defaults(ParseScenario(a.scenario));
  if (Given(cmd, "--queries")) cfg.num_queries = a.queries;
  if (Given(cmd, "--cdr")) cfg.cdr = a.cdr;
  if (Given(cmd, "--cdr-min")) cfg.cdr_min = a.cdr_min;
  if (Given(cmd, "--cdr-max")) cfg.cdr_max = a.cdr_max;
  cfg.seed = Given(cmd, "--seed") ? a.seed : EnvSeed(cfg.seed);
  if (Given(cmd, "--blank-td")) cfg.blank_t_d = a.blank_td;
  if (Given(cmd, "--entity-pool")) cfg.entity_pool = a.entity_pool;
  if (Given(cmd, "--template-pool")) cfg.template_pool = a.template_pool;
  if (!a.window_start.empty()) cfg.window_start = ParseDate(a.window_start);
  if (!a.window_end.empty()) cfg.window_end = ParseDate(a.window_end);
  if (!a.today.empty()) cfg.today = ParseDate(a.today);

  const BenchDataset data = Generate(cfg);
  WriteDataset(data, a.out);
  const auto errors = ValidateDatasetFiles(a.out);
  if (!errors.empty()) {
    throw std::runtime_error("generated dataset failed validation: " +
                             errors.front());
  }
  run.config() = ordered_json::parse(GenConfigToJson(cfg));
  run.Seed("gen", cfg.seed);
  for (const char* f : {"docs.jsonl", "queries.jsonl", "groups.jsonl",
                        "manifest.json"}) {
    run.Output(fs::path(a.out) / f);
  }
  run.Write(fs::path(a.out) / "run.json");
  std::cout << "wrote " << data.queries.size() << " queries and "
            << data.documents.size() << " documents to " << a.out << "\n";
  return 0;
}

// ---- embed ----

struct EmbedArgs {
  std::string input;
  int dim = 64;
  uint64_t seed = 7;
  std::string out;
  bool binary = false;
  bool timestamp_tag = false;
};

// Embeds a docs.jsonl or queries.jsonl file; record kind is sniffed from
// the presence of the "gold" field.
int RunEmbed(const EmbedArgs& a, const CLI::App& cmd) {
  RunManifest run("embed");
  const uint64_t seed = Given(cmd, "--seed") ? a.seed : EnvSeed(a.seed);
  std::ifstream in(a.input, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + a.input);
  std::string first;
  std::getline(in, first);
  in.close();
  EmbeddingStore store;
  if (first.find("\"gold\"") != std::string::npos) {
    for (const Query& q : LoadQueries(a.input)) {
      store.Add(q.id, ToyEmbed(q.text, a.dim, seed));
    }
  } else {
    store = EmbedDocuments(LoadDocuments(a.input), a.dim, seed,
                           a.timestamp_tag);
  }
  if (a.binary) {
    SaveStoreBinary(store, a.out);
  } else {
    SaveStoreText(store, a.out);
  }
  run.config() = {{"dim", a.dim},
                  {"timestamp_tag", a.timestamp_tag},
                  {"format", a.binary ? "binary" : "text"}};
  run.Seed("embed", seed);
  run.Input(a.input);
  run.Output(a.out);
  run.Write(a.out + ".run.json");
  std::cout << "embedded " << store.size() << " records into " << a.out
            << "\n";
  return 0;
}

// ---- index ----

struct IndexArgs {
  std::string vectors;
  std::string out;
  uint64_t embed_seed = 7;
};

int RunIndex(const IndexArgs& a, const CLI::App& cmd) {
  RunManifest run("index");
  const uint64_t seed =
      Given(cmd, "--embed-seed") ? a.embed_seed : EnvSeed(a.embed_seed);
  const ExactIndex index(LoadStore(a.vectors), seed);
  index.Save(a.out);
  run.config() = {{"kind", "exact"}};
  run.Seed("embed", seed);
  run.Input(a.vectors);
  run.Output(a.out);
  run.Write(a.out + ".run.json");
  std::cout << "indexed " << index.store().size() << " vectors into " << a.out
            << "\n";
  return 0;
}

// ---- shared training / evaluation options ----

struct ModelArgs {
  std::string vectors;  // optional precomputed document vectors
  int dim = 64;
  uint64_t embed_seed = 7;
  bool timestamp_tag = false;
  int k = 50;
  int metric_k = 5;
  std::string config;  // JSON training config
  std::string mode = "full";
  // Training overrides.
  double lr = 0;
  int epochs = 0;
  int batch = 0;
  double temperature = 0;
  double weight_decay = 0;
  uint64_t seed = 0;
  uint64_t init_seed = 0;
};

void AddModelOptions(CLI::App* cmd, ModelArgs* m) {
  cmd->add_option("--vectors", m->vectors,
                  "Document vectors (text or binary); default: toy embedder");
  cmd->add_option("--dim", m->dim, "Toy embedding width")->capture_default_str();
  cmd->add_option("--embed-seed", m->embed_seed, "Toy embedder seed")
      ->capture_default_str();
  cmd->add_flag("--timestamp-tag", m->timestamp_tag,
                "Append the publication date to document text before embedding");
  cmd->add_option("--k", m->k, "Candidate pool size")->capture_default_str();
  cmd->add_option("--config", m->config, "Training config JSON");
  cmd->add_option("--mode", m->mode,
                  "semantic|full|no-gate-fixed|no-gate-semantic|scalar-repeat|"
                  "bge-diff|missing-aware-off")
      ->capture_default_str();
  cmd->add_option("--lr", m->lr, "Learning rate");
  cmd->add_option("--epochs", m->epochs, "Training epochs");
  cmd->add_option("--batch", m->batch, "Batch size");
  cmd->add_option("--temperature", m->temperature, "Softmax temperature");
  cmd->add_option("--weight-decay", m->weight_decay, "Weight decay");
  cmd->add_option("--seed", m->seed, "Shuffle seed (falls back to RE3_SEED)");
  cmd->add_option("--init-seed", m->init_seed, "Parameter init seed");
}

// Defaults, then the config file, then RE3_SEED for seeds, then flags.
PipelineConfig ResolvePipeline(const ModelArgs& m, const CLI::App& cmd) {
  PipelineConfig cfg;
  cfg.train.seed = EnvSeed(cfg.train.seed);
  cfg.init_seed = EnvSeed(cfg.init_seed);
  if (!m.config.empty()) {
    const auto j = nlohmann::json::parse(ReadText(m.config));
    for (const auto& [key, _] : j.items()) {
      static const std::vector<std::string> kKnown = {
          "learning_rate", "epochs",    "batch_size", "temperature",
          "weight_decay",  "seed",      "init_seed",  "k",
          "metric_k",      "frozen_alpha"};
      if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
        throw ConfigError("unknown key '" + key + "' in " + m.config);
      }
    }
    cfg.train.learning_rate = j.value("learning_rate", cfg.train.learning_rate);
    cfg.train.epochs = j.value("epochs", cfg.train.epochs);
    cfg.train.batch_size = j.value("batch_size", cfg.train.batch_size);
    cfg.train.temperature = j.value("temperature", cfg.train.temperature);
    cfg.train.weight_decay = j.value("weight_decay", cfg.train.weight_decay);
    cfg.train.seed = j.value("seed", cfg.train.seed);
    cfg.init_seed = j.value("init_seed", cfg.init_seed);
    cfg.k = j.value("k", cfg.k);
    cfg.metric_k = j.value("metric_k", cfg.metric_k);
    if (j.contains("frozen_alpha")) {
      cfg.train.frozen_alpha = j["frozen_alpha"].get<double>();
    }
  }
  if (Given(cmd, "--lr")) cfg.train.learning_rate = m.lr;
  if (Given(cmd, "--epochs")) cfg.train.epochs = m.epochs;
  if (Given(cmd, "--batch")) cfg.train.batch_size = m.batch;
  if (Given(cmd, "--temperature")) cfg.train.temperature = m.temperature;
  if (Given(cmd, "--weight-decay")) cfg.train.weight_decay = m.weight_decay;
  if (Given(cmd, "--seed")) cfg.train.seed = m.seed;
  if (Given(cmd, "--init-seed")) cfg.init_seed = m.init_seed;
  if (Given(cmd, "--k")) cfg.k = m.k;
  if (Given(cmd, "--metric-k")) cfg.metric_k = m.metric_k;
  cfg.embed_dim = m.dim;
  cfg.embed_seed = m.embed_seed;
  cfg.timestamp_tag = m.timestamp_tag;
  cfg.Validate();
  return cfg;
}

ordered_json PipelineJson(const PipelineConfig& cfg, std::string_view mode) {
  ordered_json j;
  j["mode"] = std::string(mode);
  j["k"] = cfg.k;
  j["metric_k"] = cfg.metric_k;
  j["embed_dim"] = cfg.embed_dim;
  j["timestamp_tag"] = cfg.timestamp_tag;
  j["time_dim"] = cfg.encoding.dim;
  j["time_base"] = cfg.encoding.base;
  j["hidden"] = cfg.Shape().hidden;
  j["learning_rate"] = cfg.train.learning_rate;
  j["epochs"] = cfg.train.epochs;
  j["batch_size"] = cfg.train.batch_size;
  j["temperature"] = cfg.train.temperature;
  j["weight_decay"] = cfg.train.weight_decay;
  j["frozen_alpha"] = cfg.train.frozen_alpha ? ordered_json(*cfg.train.frozen_alpha)
                                             : ordered_json(nullptr);
  j["optimizer"] = {{"name", "adam"},
                    {"beta1", 0.9},
                    {"beta2", 0.999},
                    {"eps", 1e-8}};
  j["loss"] = "listwise softmax cross-entropy";
  return j;
}

Corpus LoadCorpus(const std::string& dir, const ModelArgs& m,
                  const PipelineConfig& cfg, RunManifest* run) {
  BenchDataset data = ReadDataset(dir);
  run->Input(dir);
  if (m.vectors.empty()) return BuildCorpus(std::move(data), cfg);
  run->Input(m.vectors);
  return BuildCorpus(std::move(data), LoadStore(m.vectors), cfg.embed_seed);
}

// ---- train ----

struct TrainArgs {
  std::string dataset;
  std::string out;
  ModelArgs model;
};

int RunTrain(const TrainArgs& a, const CLI::App& cmd) {
  RunManifest run("train");
  const AblationMode mode = ParseMode(a.model.mode);
  const PipelineConfig cfg = ResolvePipeline(a.model, cmd);
  const Corpus corpus = LoadCorpus(a.dataset, a.model, cfg, &run);
  const TrainedScorer trained = TrainScorer(corpus, mode, cfg);
  SaveParams(trained.params, a.out);

  std::string csv = "epoch,mean_loss,train_R@1\n";
  char line[96];
  for (const EpochStats& e : trained.trace) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g\n", e.epoch, e.mean_loss,
                  e.train_r_at_1);
    csv += line;
  }
  WriteText(a.out + ".loss.csv", csv);

  run.config() = PipelineJson(cfg, ModeName(mode));
  run.Seed("shuffle", cfg.train.seed);
  run.Seed("init", cfg.init_seed);
  run.Seed("embed", cfg.embed_seed);
  run.Set("coverage", {{"examples", trained.examples},
                       {"dropped_gold_not_in_pool", trained.dropped}});
  run.Output(a.out);
  run.Output(a.out + ".loss.csv");
  run.Write(a.out + ".manifest.json");
  std::cout << "trained on " << trained.examples << " queries ("
            << trained.dropped << " dropped), alpha="
            << trained.params.alpha << ", wrote " << a.out << "\n";
  return 0;
}

// ---- search ----

struct SearchArgs {
  std::string index;
  std::string query;
  std::string t_q;
  int k = 50;
  std::string params;
  std::string docs;
  std::string policy = "query-time";
  std::string mode = "full";
  std::string manifest;
};

int RunSearch(const SearchArgs& a) {
  RunManifest run("search");
  const ExactIndex index = ExactIndex::Load(a.index);
  run.Input(a.index);
  const EmbeddingVector e_q =
      ToyEmbed(a.query, index.store().dim(), index.embed_seed());
  const CandidatePool pool = index.TopK(e_q, a.k, "query");
  ordered_json cfg = {{"k", a.k}, {"query", a.query}};

  if (a.params.empty()) {
    int rank = 1;
    for (const Candidate& c : pool.entries) {
      ordered_json j;
      j["rank"] = rank++;
      j["doc_id"] = c.doc_id;
      j["score_sem"] = c.score_sem;
      std::cout << j.dump() << "\n";
    }
  } else {
    if (a.docs.empty()) throw ConfigError("--params requires --docs");
    const ScorerParams params = LoadParams(a.params);
    run.Input(a.params);
    run.Input(a.docs);
    const DocumentTable table(LoadDocuments(a.docs));
    Query q;
    q.id = "query";
    q.text = a.query;
    q.t_q = a.t_q.empty() ? PrimaryDate(ExtractDates(a.query))
                          : std::optional<PartialDate>(ParseDate(a.t_q));
    const AblationMode mode = ParseMode(a.mode);
    PipelineConfig pc;
    pc.embed_seed = index.embed_seed();
    RerankContext ctx;
    ctx.docs = &table;
    ctx.doc_vectors = &index.store();
    ctx.features = FeaturesFor(mode, pc);
    ctx.policy = RefTimePolicy::Parse(a.policy);
    int rank = 1;
    for (const ScoredCandidate& c : Rerank(pool, q, e_q, params, ctx)) {
      ordered_json j;
      j["rank"] = rank++;
      j["doc_id"] = c.doc_id;
      j["score_sem"] = c.score_sem;
      j["score_time"] = c.score_time;
      j["score_final"] = c.score_final;
      j["delta_rel"] = c.delta_rel ? ordered_json(c.delta_rel->value)
                                   : ordered_json(nullptr);
      j["delta_rec"] = c.delta_rec ? ordered_json(c.delta_rec->value)
                                   : ordered_json(nullptr);
      j["m_rel"] = c.m_rel;
      j["m_rec"] = c.m_rec;
      std::cout << j.dump() << "\n";
    }
    cfg["policy"] = ctx.policy.ToString();
    cfg["mode"] = std::string(ModeName(mode));
    cfg["t_q"] = q.t_q ? ordered_json(FormatDate(*q.t_q)) : ordered_json(nullptr);
  }
  run.config() = cfg;
  run.Seed("embed", index.embed_seed());
  run.Write(a.manifest.empty() ? "search.run.json" : a.manifest);
  return 0;
}

// ---- eval ----

struct EvalArgs {
  std::string dataset;
  std::string train_dataset;
  std::string params;
  std::string out;
  std::string manifest;
  ModelArgs model;
};

int RunEval(const EvalArgs& a, const CLI::App& cmd) {
  RunManifest run("eval");
  const AblationMode mode = ParseMode(a.model.mode);
  const PipelineConfig cfg = ResolvePipeline(a.model, cmd);
  const Corpus eval = LoadCorpus(a.dataset, a.model, cfg, &run);

  MetricsReport report;
  if (mode == AblationMode::kSemantic) {
    report = RunAblation(mode, eval, eval, cfg);
  } else if (!a.params.empty()) {
    const ScorerParams params = LoadParams(a.params);
    run.Input(a.params);
    report = RunAblation(mode, eval, eval, cfg, &params);
  } else if (!a.train_dataset.empty()) {
    ModelArgs train_model = a.model;
    train_model.vectors.clear();  // vectors belong to the eval corpus
    const Corpus train = LoadCorpus(a.train_dataset, train_model, cfg, &run);
    report = RunAblation(mode, train, eval, cfg);
  } else {
    throw ConfigError("mode '" + a.model.mode +
                      "' needs --params or --train-dataset");
  }

  const std::string json = ReportToJson(report);
  std::cout << ReportToTable(report);
  if (!a.out.empty()) {
    WriteText(a.out, json);
    run.Output(a.out);
  } else {
    std::cout << json;
  }
  run.config() = PipelineJson(cfg, ModeName(mode));
  run.Seed("shuffle", cfg.train.seed);
  run.Seed("init", cfg.init_seed);
  run.Seed("embed", cfg.embed_seed);
  run.Write(!a.manifest.empty() ? a.manifest
            : !a.out.empty()    ? a.out + ".run.json"
                                : "eval.run.json");
  return 0;
}

// ---- extract-time ----

struct ExtractArgs {
  std::string text;
  std::string input;
  std::string manifest;
};

std::string ExtractionJson(std::string_view line) {
  const ExtractionResult r = ExtractDates(line);
  ordered_json j;
  j["dates"] = ordered_json::array();
  for (const PartialDate& d : r.dates) j["dates"].push_back(FormatDate(d));
  j["has_year"] = r.has_year;
  return j.dump();
}

int RunExtract(const ExtractArgs& a) {
  RunManifest run("extract-time");
  if (a.input.empty()) {
    std::cout << ExtractionJson(a.text) << "\n";
  } else {
    std::ifstream in(a.input, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + a.input);
    std::string line;
    while (std::getline(in, line)) std::cout << ExtractionJson(line) << "\n";
    run.Input(a.input);
  }
  run.Write(a.manifest.empty() ? "extract-time.run.json" : a.manifest);
  return 0;
}

std::string OneLine(std::string msg) {
  for (char& c : msg) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return msg;
}

int Main(int argc, char** argv) {
  CLI::App app{"Temporal re-ranking toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic benchmark");
  gen_cmd->add_option("--scenario", gen.scenario, "rel|rec|hyb")
      ->check(CLI::IsMember({"rel", "rec", "hyb"}))
      ->capture_default_str();
  gen_cmd->add_option("--queries", gen.queries, "Number of queries (default 100)");
  gen_cmd->add_option("--cdr", gen.cdr, "Confusers per query, rel/hyb (default 5)");
  gen_cmd->add_option("--cdr-min", gen.cdr_min, "rec: min older versions (default 2)");
  gen_cmd->add_option("--cdr-max", gen.cdr_max, "rec: max older versions (default 4)");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed (falls back to RE3_SEED)");
  gen_cmd->add_option("--blank-td", gen.blank_td, "rec: fraction of t_d blanked");
  gen_cmd->add_option("--entity-pool", gen.entity_pool, "Entities to draw from (0 = all)");
  gen_cmd->add_option("--template-pool", gen.template_pool, "Template pool id (0 or 1)");
  gen_cmd->add_option("--window-start", gen.window_start, "First date of the window");
  gen_cmd->add_option("--window-end", gen.window_end, "Last date of the window");
  gen_cmd->add_option("--today", gen.today, "rec: reference today");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  EmbedArgs embed;
  auto* embed_cmd = app.add_subcommand("embed", "Embed records with the toy embedder");
  embed_cmd->add_option("--input", embed.input, "docs.jsonl or queries.jsonl")->required();
  embed_cmd->add_option("--dim", embed.dim, "Embedding width")->capture_default_str();
  embed_cmd->add_option("--seed", embed.seed, "Hash seed")->capture_default_str();
  embed_cmd->add_option("--out", embed.out, "Output vectors file")->required();
  embed_cmd->add_flag("--binary", embed.binary, "Write the binary format");
  embed_cmd->add_flag("--timestamp-tag", embed.timestamp_tag,
                      "Append \"(proposed on YYYY-MM-DD)\" before embedding");

  IndexArgs index;
  auto* index_cmd = app.add_subcommand("index", "Build an exact search index");
  index_cmd->add_option("--vectors", index.vectors, "Vectors file")->required();
  index_cmd->add_option("--out", index.out, "Index file")->required();
  index_cmd->add_option("--embed-seed", index.embed_seed,
                        "Toy embedder seed used for queries")
      ->capture_default_str();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train the temporal scorer");
  train_cmd->add_option("--dataset", train.dataset, "Dataset directory")->required();
  train_cmd->add_option("--out", train.out, "Params file")->required();
  AddModelOptions(train_cmd, &train.model);

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Retrieve and optionally re-rank");
  search_cmd->add_option("--index", search.index, "Index file")->required();
  search_cmd->add_option("--query", search.query, "Query text")->required();
  search_cmd->add_option("--k", search.k, "Pool size")->capture_default_str();
  search_cmd->add_option("--params", search.params, "Trained params; enables re-ranking");
  search_cmd->add_option("--docs", search.docs, "docs.jsonl with timestamps");
  search_cmd->add_option("--t-q", search.t_q,
                         "Query time; default: first date found in the query");
  search_cmd->add_option("--policy", search.policy, "query-time|fixed:YYYY-MM-DD")
      ->capture_default_str();
  search_cmd->add_option("--mode", search.mode, "Feature variant of the params")
      ->capture_default_str();
  search_cmd->add_option("--manifest", search.manifest, "Run manifest path");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a ranking mode");
  eval_cmd->add_option("--dataset", eval.dataset, "Dataset to evaluate")->required();
  eval_cmd->add_option("--params", eval.params, "Trained params");
  eval_cmd->add_option("--train-dataset", eval.train_dataset,
                       "Train on this dataset first");
  eval_cmd->add_option("--out", eval.out, "Metrics JSON path");
  eval_cmd->add_option("--metric-k", eval.model.metric_k, "Cutoff for TimeVar/MFG")
      ->capture_default_str();
  eval_cmd->add_option("--manifest", eval.manifest, "Run manifest path");
  AddModelOptions(eval_cmd, &eval.model);

  ExtractArgs extract;
  auto* extract_cmd =
      app.add_subcommand("extract-time", "Extract dates, one JSON record per line");
  auto* text_opt = extract_cmd->add_option("--text", extract.text, "Input text");
  auto* input_opt =
      extract_cmd->add_option("--input", extract.input, "Input file, one text per line");
  text_opt->excludes(input_opt);
  extract_cmd->add_option("--manifest", extract.manifest, "Run manifest path");
  extract_cmd->require_option(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*gen_cmd) return RunGen(gen, *gen_cmd);
    if (*embed_cmd) return RunEmbed(embed, *embed_cmd);
    if (*index_cmd) return RunIndex(index, *index_cmd);
    if (*train_cmd) return RunTrain(train, *train_cmd);
    if (*search_cmd) return RunSearch(search);
    if (*eval_cmd) return RunEval(eval, *eval_cmd);
    if (*extract_cmd) return RunExtract(extract);
  } catch (const std::exception& e) {
    std::cerr << "error: " << OneLine(e.what()) << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace
}  // namespace tempo

int main(int argc, char** argv) { return tempo::Main(argc, argv); }
