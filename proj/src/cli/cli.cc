// src/cli/cli.cc

// Copyright 2026  vcvts authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "vcvts/cli/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <toml.hpp>

#include "vcvts/base/checksum.h"
#include "vcvts/base/error.h"
#include "vcvts/base/log.h"
#include "vcvts/corpus/synthetic-corpus.h"
#include "vcvts/lip2ind/target-store.h"
#include "vcvts/pipeline/experiments.h"
#include "vcvts/pipeline/vts.h"
#include "vcvts/trainer/checkpoint.h"
#include "vcvts/trainer/train-lip2ind.h"
#include "vcvts/trainer/train-vc.h"

namespace vcvts {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char *const kSeedKeys[] = {"/corpus/seed", "/train_vc/seed", "/train_lip2ind/seed",
                                 "/synthesis/sample_seed", "/analyze/seed"};

json AnalysisJson(const AnalysisConfig &c) {
  return {{"sample_rate", c.sample_rate}, {"fft_size", c.fft_size},
          {"hop", c.hop},                 {"window", c.window},
          {"mel_bins", c.mel_bins},       {"fmin", c.fmin},
          {"fmax", c.fmax},               {"log_floor", c.log_floor},
          {"gl_iterations", c.gl_iterations}, {"gl_seed", c.gl_seed},
          {"f0_min", c.f0_min},           {"f0_max", c.f0_max},
          {"voicing_threshold", c.voicing_threshold}};
}

AnalysisConfig AnalysisFrom(const json &j) {
  AnalysisConfig c;
  j.at("sample_rate").get_to(c.sample_rate);
  j.at("fft_size").get_to(c.fft_size);
  j.at("hop").get_to(c.hop);
  j.at("window").get_to(c.window);
  j.at("mel_bins").get_to(c.mel_bins);
  j.at("fmin").get_to(c.fmin);
  j.at("fmax").get_to(c.fmax);
  j.at("log_floor").get_to(c.log_floor);
  j.at("gl_iterations").get_to(c.gl_iterations);
  j.at("gl_seed").get_to(c.gl_seed);
  j.at("f0_min").get_to(c.f0_min);
  j.at("f0_max").get_to(c.f0_max);
  j.at("voicing_threshold").get_to(c.voicing_threshold);
  c.Validate();
  return c;
}

json CorpusJson(const SynthConfig &c) {
  return {{"num_speakers", c.num_speakers}, {"num_phonemes", c.num_phonemes},
          {"clips_per_speaker", c.clips_per_speaker}, {"clip_duration_s", c.clip_duration_s},
          {"seed", c.seed}};
}

SynthConfig CorpusFrom(const json &j) {
  SynthConfig c;
  j.at("num_speakers").get_to(c.num_speakers);
  j.at("num_phonemes").get_to(c.num_phonemes);
  j.at("clips_per_speaker").get_to(c.clips_per_speaker);
  j.at("clip_duration_s").get_to(c.clip_duration_s);
  j.at("seed").get_to(c.seed);
  c.Validate();
  return c;
}

SynthesisConfig SynthesisFrom(const json &cfg) {
  SynthesisConfig c;
  c.analysis = AnalysisFrom(cfg.at("analysis"));
  const json &j = cfg.at("synthesis");
  j.at("min_reference_sec").get_to(c.min_reference_sec);
  j.at("sample_indices").get_to(c.sample_indices);
  j.at("sample_seed").get_to(c.sample_seed);
  return c;
}

TsneConfig TsneFrom(const json &j) {
  TsneConfig c;
  j.at("perplexity").get_to(c.perplexity);
  j.at("iterations").get_to(c.iterations);
  j.at("seed").get_to(c.seed);
  return c;
}

// Every key of `overlay` must already exist in `base`.
void CheckKeys(const json &overlay, const json &base, const std::string &where) {
  for (const auto &[key, value] : overlay.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!base.contains(key)) throw FormatError("unknown config key " + path);
    if (value.is_object()) {
      if (!base.at(key).is_object()) throw FormatError("config key " + path + " is not a table");
      CheckKeys(value, base.at(key), path);
    }
  }
}

void SetSeed(json &cfg, std::uint64_t seed) {
  for (const char *key : kSeedKeys) cfg[json::json_pointer(key)] = seed;
}

// Parses every section once so type errors surface before any work starts.
void ValidateConfig(const json &cfg) {
  try {
    AnalysisFrom(cfg.at("analysis"));
    CorpusFrom(cfg.at("corpus"));
    cfg.at("vc").get<VCConfig>().Validate();
    cfg.at("train_vc").get<VCTrainConfig>();
    cfg.at("lip2ind").get<Lip2IndConfig>().Validate();
    cfg.at("train_lip2ind").get<L2ITrainConfig>();
    SynthesisFrom(cfg);
    ParseSplit(cfg.at("evaluate").at("split").get<std::string>());
    cfg.at("evaluate").at("pesq").get<std::string>();
    cfg.at("evaluate").at("shuffled_lips").get<bool>();
    ParseSplit(cfg.at("analyze").at("split").get<std::string>());
    TsneFrom(cfg.at("analyze"));
  } catch (const json::exception &e) {
    throw FormatError(std::string("config: ") + e.what());
  }
}

std::string Slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw IoError("cannot read " + p.string());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void Spit(const fs::path &p, const std::string &s) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  os << s;
  if (!os) throw IoError("cannot write " + p.string());
}

// Flag values that override the layered config when given.
class Overrides {
 public:
  explicit Overrides(const json &defaults) : defaults_(defaults) {}

  template <typename T>
  void Add(CLI::App *sub, const std::string &flag, const std::string &pointer,
           const std::string &help) {
    auto value = std::make_shared<T>(defaults_.at(json::json_pointer(pointer)).get<T>());
    CLI::Option *opt = sub->add_option(flag, *value, help)->capture_default_str();
    patches_.push_back([opt, value, pointer](json &cfg) {
      if (opt->count()) cfg[json::json_pointer(pointer)] = *value;
    });
  }

  void AddFlag(CLI::App *sub, const std::string &flag, const std::string &pointer,
               bool set_to, const std::string &help) {
    CLI::Option *opt = sub->add_flag(flag, help);
    patches_.push_back([opt, pointer, set_to](json &cfg) {
      if (opt->count()) cfg[json::json_pointer(pointer)] = set_to;
    });
  }

  void Apply(json &cfg) const {
    for (const auto &p : patches_) p(cfg);
  }

 private:
  const json &defaults_;
  std::vector<std::function<void(json &)>> patches_;
};

struct Invocation {
  fs::path workdir = ".";
  std::string config_path;
  std::optional<std::uint64_t> seed;
  // Paths by flag name, as typed.
  std::map<std::string, std::string> paths;
  bool overwrite = false;
  bool print_config = false;

  fs::path Path(const std::string &flag) const {
    const fs::path p = paths.at(flag);
    return p.is_absolute() ? p : workdir / p;
  }
  bool Has(const std::string &flag) const { return paths.count(flag) && !paths.at(flag).empty(); }
};

fs::path ManifestPath(const fs::path &p) {
  return fs::is_directory(p) ? p / "manifest.jsonl" : p;
}

fs::path DiagnosticsPath(const Invocation &inv) {
  if (inv.Has("--diagnostics")) return inv.Path("--diagnostics");
  fs::path p = inv.Path("--out");
  return p.replace_extension(".json");
}

void GenData(const json &cfg, const Invocation &inv, std::ostream &out) {
  const fs::path dir = inv.Path("--out");
  const Manifest m = GenerateSyntheticCorpus(CorpusFrom(cfg.at("corpus")), dir.string());
  out << (dir / "manifest.jsonl").string() << " (" << m.entries.size() << " clips)\n";
}

void TrainVc(const json &cfg, const Invocation &inv, std::ostream &out) {
  const Manifest m = LoadManifest(ManifestPath(inv.Path("--data")).string());
  VCTrainOptions opts;
  opts.out_dir = inv.Path("--out").string();
  opts.model = cfg.at("vc").get<VCConfig>();
  opts.analysis = AnalysisFrom(cfg.at("analysis"));
  fs::create_directories(opts.out_dir);
  Spit(fs::path(opts.out_dir) / "config.json", cfg.dump(2) + "\n");
  const VCTrainResult r = TrainVC(m, cfg.at("train_vc").get<VCTrainConfig>(), opts);
  const EpochLosses &last = r.history.back().dev;
  out << "best epoch " << r.best_epoch << " " << r.best_checkpoint << "\n"
      << "final dev " << last.ToJson().dump() << "\n";
}

void ExtractUnits(const json &cfg, const Invocation &inv, std::ostream &out) {
  const Manifest m = LoadManifest(ManifestPath(inv.Path("--data")).string());
  VCModel vc = LoadVCModel(inv.Path("--vc").string());
  const TargetStore store = ExtractTargets(vc, m, inv.Path("--out").string(),
                                           AnalysisFrom(cfg.at("analysis")), inv.overwrite);
  out << store.indices.size() << " target sequences, codebook " << HexU64(store.codebook_checksum)
      << "\n";
}

void TrainL2i(const json &cfg, const Invocation &inv, std::ostream &out) {
  const Manifest m = LoadManifest(ManifestPath(inv.Path("--data")).string());
  L2ITrainOptions opts;
  opts.out_dir = inv.Path("--out").string();
  opts.model = cfg.at("lip2ind").get<Lip2IndConfig>();
  opts.analysis = AnalysisFrom(cfg.at("analysis"));
  std::optional<std::uint64_t> expected;
  if (inv.Has("--vc")) expected = LoadVCModel(inv.Path("--vc").string())->codebook->Checksum();
  const TargetStore targets = LoadTargetStore(inv.Path("--targets").string(), expected);
  opts.expected_checksum = targets.codebook_checksum;
  fs::create_directories(opts.out_dir);
  Spit(fs::path(opts.out_dir) / "config.json", cfg.dump(2) + "\n");
  const L2ITrainResult r = TrainLip2Ind(m, targets, cfg.at("train_lip2ind").get<L2ITrainConfig>(), opts);
  out << "best epoch " << r.best_epoch << " dev accuracy " << r.best_dev_accuracy << " "
      << r.best_checkpoint << "\n";
}

void WriteResult(const SynthesisResult &r, const Invocation &inv, std::ostream &out) {
  const fs::path wav = inv.Path("--out");
  if (wav.has_parent_path()) fs::create_directories(wav.parent_path());
  WriteWav(r.wave, wav.string());
  Spit(DiagnosticsPath(inv), r.diagnostics.ToJson().dump(2) + "\n");
  out << wav.string() << " (" << r.wave.size() << " samples)\n";
}

void SynthesizeCmd(const json &cfg, const Invocation &inv, std::ostream &out) {
  const SynthesisConfig sc = SynthesisFrom(cfg);
  VtsSystem sys = LoadVtsSystem(inv.Path("--vc").string(), inv.Path("--l2i").string());
  const LipSequence lips = ReadLips(inv.Path("--lips").string());
  const Waveform ref = LoadWaveform(inv.Path("--ref").string(), sc.analysis.sample_rate);
  WriteResult(Synthesize(sys, lips, ref, sc), inv, out);
}

void ConvertCmd(const json &cfg, const Invocation &inv, std::ostream &out) {
  const SynthesisConfig sc = SynthesisFrom(cfg);
  VCModel vc = LoadVCModel(inv.Path("--vc").string());
  const Waveform src = LoadWaveform(inv.Path("--src").string(), sc.analysis.sample_rate);
  const Waveform ref = LoadWaveform(inv.Path("--ref").string(), sc.analysis.sample_rate);
  WriteResult(ConvertVoice(vc, src, ref, sc), inv, out);
}

void EvaluateCmd(const json &cfg, const Invocation &inv, std::ostream &out) {
  const Manifest m = LoadManifest(ManifestPath(inv.Path("--data")).string());
  VtsSystem sys = LoadVtsSystem(inv.Path("--vc").string(), inv.Path("--l2i").string());
  const json &ev = cfg.at("evaluate");
  VtsEvalOptions opts;
  opts.synthesis = SynthesisFrom(cfg);
  opts.eval.analysis = opts.synthesis.analysis;
  opts.shuffled_lips = ev.at("shuffled_lips").get<bool>();
  const fs::path prefix = inv.Path("--out");
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  if (const auto pesq = ev.at("pesq").get<std::string>(); !pesq.empty()) {
    opts.eval.pesq_executable = pesq;
    opts.eval.scratch_dir = (prefix.string() + ".pesq");
    fs::create_directories(opts.eval.scratch_dir);
  }
  const EvalReport report =
      EvaluateVts(sys, m, ParseSplit(ev.at("split").get<std::string>()), opts);
  WriteEvalReport(report, prefix.string());
  out << "clips " << report.rows.size() << " stoi " << report.mean.stoi << " estoi "
      << report.mean.estoi << " mcd " << report.mean.mcd << " f0_rmse " << report.mean.f0_rmse
      << "\n";
}

void AnalyzeCmd(const json &cfg, const Invocation &inv, std::ostream &out) {
  const Manifest m = LoadManifest(ManifestPath(inv.Path("--data")).string());
  VCModel vc = LoadVCModel(inv.Path("--vc").string());
  const json &an = cfg.at("analyze");
  const UnitAnalysis a = AnalyzeUnits(vc, m, ParseSplit(an.at("split").get<std::string>()),
                                      AnalysisFrom(cfg.at("analysis")), TsneFrom(an));
  const fs::path dir = inv.Path("--out");
  fs::create_directories(dir);
  Spit(dir / "analysis.json", a.ToJson().dump(2) + "\n");
  Spit(dir / "speakers.svg", ProjectionSvg(a.speakers, a.speaker_labels));
  const ManifestEntry &first = m.Find(a.sample_ids.front());
  Spit(dir / "units.svg", IndexOverlaySvg(a.indices.front(), *first.alignment, vc->codebook->NumCodes()));
  out << "purity " << a.purity.purity << " codes used " << a.purity.codes_used << " silhouette "
      << a.speakers.silhouette << "\n";
}

std::optional<std::uint64_t> EnvSeed() {
  const char *s = std::getenv("VCVTS_SEED");
  if (!s || !*s) return std::nullopt;
  char *end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end) throw FormatError(std::string("VCVTS_SEED is not an integer: ") + s);
  return v;
}

}  // namespace

json DefaultCliConfig() {
  return {{"analysis", AnalysisJson(AnalysisConfig{})},
          {"corpus", CorpusJson(SynthConfig{})},
          {"vc", VCConfig{}},
          {"train_vc", VCTrainConfig{}},
          {"lip2ind", Lip2IndConfig{}},
          {"train_lip2ind", L2ITrainConfig{}},
          {"synthesis",
           {{"min_reference_sec", 0.5}, {"sample_indices", false}, {"sample_seed", 0}}},
          {"evaluate", {{"split", "test"}, {"pesq", ""}, {"shuffled_lips", false}}},
          {"analyze", {{"split", "test"}, {"perplexity", 10.0}, {"iterations", 500}, {"seed", 0}}}};
}

json ResolveCliConfig(const std::optional<std::string> &toml_text,
                      std::optional<std::uint64_t> env_seed) {
  json cfg = DefaultCliConfig();
  if (env_seed) SetSeed(cfg, *env_seed);
  if (toml_text) {
    json overlay;
    try {
      std::ostringstream os;
      os << toml::json_formatter{toml::parse(*toml_text)};
      overlay = json::parse(os.str());
    } catch (const toml::parse_error &e) {
      std::ostringstream msg;
      msg << "config: " << e.description() << " at line " << e.source().begin.line;
      throw FormatError(msg.str());
    }
    if (overlay.contains("seed")) {
      if (!overlay["seed"].is_number_integer() || overlay["seed"].get<std::int64_t>() < 0)
        throw FormatError("config key seed must be a non-negative integer");
      SetSeed(cfg, overlay["seed"].get<std::uint64_t>());
      overlay.erase("seed");
    }
    CheckKeys(overlay, cfg, "");
    cfg.merge_patch(overlay);
  }
  ValidateConfig(cfg);
  return cfg;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  const json defaults = DefaultCliConfig();
  CLI::App app("Lip-to-speech synthesis through voice-conversion acoustic units", "vcvts");
  app.require_subcommand(1);
  Invocation inv;
  std::string workdir = ".";
  app.add_option("--workdir", workdir, "Directory that relative paths are resolved against")
      ->capture_default_str();
  app.add_option("--config", inv.config_path, "TOML configuration file");
  app.add_flag("--print-config", inv.print_config, "Print the resolved configuration and exit");

  Overrides over(defaults);
  using Runner = void (*)(const json &, const Invocation &, std::ostream &);
  std::map<CLI::App *, Runner> runners;
  auto path = [&](CLI::App *sub, const std::string &flag, const std::string &help,
                  bool required = true) {
    CLI::Option *o = sub->add_option(flag, inv.paths[flag], help);
    if (required) o->required();
  };
  auto command = [&](const std::string &name, const std::string &help, Runner run) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("--seed", inv.seed, "Seed for every random stream (fallback: VCVTS_SEED)");
    runners[sub] = run;
    return sub;
  };

  CLI::App *gen = command("gen-data", "Generate the synthetic audio-visual corpus", GenData);
  path(gen, "--out", "Output directory");
  over.Add<int>(gen, "--speakers", "/corpus/num_speakers", "Number of speakers");
  over.Add<int>(gen, "--clips", "/corpus/clips_per_speaker", "Clips per speaker");
  over.Add<int>(gen, "--phonemes", "/corpus/num_phonemes", "Pseudo-phoneme inventory size");
  over.Add<double>(gen, "--duration", "/corpus/clip_duration_s", "Clip duration in seconds");

  CLI::App *tvc = command("train-vc", "Train the voice-conversion model", TrainVc);
  path(tvc, "--data", "Manifest file or corpus directory");
  path(tvc, "--out", "Output directory for checkpoints and logs");
  over.Add<int>(tvc, "--epochs", "/train_vc/epochs", "Training epochs");
  over.Add<int>(tvc, "--warmup", "/train_vc/warmup_epochs", "Warmup epochs");
  over.Add<double>(tvc, "--lr", "/train_vc/lr_peak", "Peak learning rate");
  over.Add<int>(tvc, "--batch-size", "/train_vc/batch_size", "Batch size");
  over.Add<int>(tvc, "--crop", "/train_vc/crop_frames", "Crop length in mel frames");
  over.Add<int>(tvc, "--threads", "/train_vc/threads", "Intra-op threads");

  CLI::App *ext = command("extract-units", "Encode every clip into codebook indices", ExtractUnits);
  path(ext, "--data", "Manifest file or corpus directory");
  path(ext, "--vc", "Voice-conversion checkpoint");
  path(ext, "--out", "Target store directory");
  ext->add_flag("--overwrite", inv.overwrite, "Replace a store made from another codebook");

  CLI::App *tl = command("train-lip2ind", "Train the lip-to-index classifier", TrainL2i);
  path(tl, "--data", "Manifest file or corpus directory");
  path(tl, "--targets", "Target store directory");
  path(tl, "--out", "Output directory for checkpoints and logs");
  path(tl, "--vc", "Voice-conversion checkpoint the targets must match", false);
  over.Add<int>(tl, "--epochs", "/train_lip2ind/epochs", "Training epochs");
  over.Add<double>(tl, "--lr", "/train_lip2ind/lr_init", "Initial learning rate");
  over.Add<int>(tl, "--batch-size", "/train_lip2ind/batch_size", "Batch size");
  over.Add<int>(tl, "--crop", "/train_lip2ind/crop_frames", "Crop length in mel frames");
  over.Add<double>(tl, "--width", "/lip2ind/width_multiplier", "Channel width multiplier");
  over.AddFlag(tl, "--no-augment", "/lip2ind/augment/enabled", false,
               "Disable cropping, flipping and mixup");

  CLI::App *syn = command("synthesize", "Lips plus a reference utterance to speech", SynthesizeCmd);
  path(syn, "--lips", "Lip container");
  path(syn, "--ref", "Reference utterance (WAV)");
  path(syn, "--vc", "Voice-conversion checkpoint");
  path(syn, "--l2i", "Lip2Ind checkpoint");
  path(syn, "--out", "Output WAV");
  path(syn, "--diagnostics", "Diagnostics JSON (default: output path with .json)", false);
  over.AddFlag(syn, "--sample", "/synthesis/sample_indices", true,
               "Sample indices from the posteriors instead of argmax");

  CLI::App *conv = command("convert", "Convert a source utterance to the reference voice", ConvertCmd);
  path(conv, "--src", "Source utterance (WAV)");
  path(conv, "--ref", "Reference utterance (WAV)");
  path(conv, "--vc", "Voice-conversion checkpoint");
  path(conv, "--out", "Output WAV");
  path(conv, "--diagnostics", "Diagnostics JSON (default: output path with .json)", false);

  CLI::App *ev = command("evaluate", "Score synthesized speech against recordings", EvaluateCmd);
  path(ev, "--data", "Manifest file or corpus directory");
  path(ev, "--vc", "Voice-conversion checkpoint");
  path(ev, "--l2i", "Lip2Ind checkpoint");
  path(ev, "--out", "Report prefix (.json and .csv are appended)");
  over.Add<std::string>(ev, "--split", "/evaluate/split", "Split to evaluate");
  over.Add<std::string>(ev, "--pesq", "/evaluate/pesq", "External PESQ executable");
  over.AddFlag(ev, "--shuffled-lips", "/evaluate/shuffled_lips", true,
               "Control condition: lips of another clip");

  CLI::App *an = command("analyze", "Unit purity and speaker-embedding projection", AnalyzeCmd);
  path(an, "--data", "Manifest file or corpus directory");
  path(an, "--vc", "Voice-conversion checkpoint");
  path(an, "--out", "Output directory");
  over.Add<std::string>(an, "--split", "/analyze/split", "Split to analyze");
  over.Add<double>(an, "--perplexity", "/analyze/perplexity", "t-SNE perplexity");

  std::vector<char *> argv;
  std::vector<std::string> storage(args);
  for (std::string &a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  json cfg;
  try {
    inv.workdir = workdir;
    std::optional<std::string> toml_text;
    if (!inv.config_path.empty()) {
      fs::path p = inv.config_path;
      toml_text = Slurp(p.is_absolute() ? p : inv.workdir / p);
    }
    cfg = ResolveCliConfig(toml_text, EnvSeed());
    over.Apply(cfg);
    if (inv.seed) SetSeed(cfg, *inv.seed);
    ValidateConfig(cfg);
  } catch (const Error &e) {
    err << "vcvts: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App *sub = app.get_subcommands().front();
  if (inv.print_config) {
    out << cfg.dump(2) << "\n";
    return kExitOk;
  }
  try {
    LogInfo("vcvts " + sub->get_name() + " config " + cfg.dump());
    json seeds;
    for (const char *key : kSeedKeys) seeds[key] = cfg.at(json::json_pointer(key));
    LogInfo("vcvts " + sub->get_name() + " seeds " + seeds.dump());
    runners.at(sub)(cfg, inv, out);
  } catch (const std::exception &e) {
    err << "vcvts " << sub->get_name() << ": " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace vcvts
