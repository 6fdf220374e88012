// src/corpus/synthetic-corpus.cc

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

#include "vcvts/corpus/synthetic-corpus.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "vcvts/base/error.h"

namespace vcvts {

namespace fs = std::filesystem;

namespace {

constexpr int kHop = 160;
constexpr int kMelPerLip = kMelFramesPerLipFrame;
constexpr double kPi = std::numbers::pi;

constexpr std::array<std::array<double, 3>, 9> kVowels = {{
    {730, 1090, 2440},
    {270, 2290, 3010},
    {530, 1840, 2480},
    {300, 870, 2240},
    {570, 840, 2410},
    {660, 1720, 2410},
    {490, 1350, 1690},
    {440, 1020, 2240},
    {390, 1990, 2550},
}};

constexpr std::array<double, 3> kNoiseCenters = {2500, 4500, 6500};

std::mt19937_64 Rng(std::initializer_list<std::uint64_t> parts) {
  std::vector<std::uint32_t> words;
  for (std::uint64_t p : parts) {
    words.push_back(static_cast<std::uint32_t>(p));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

double Uniform(std::mt19937_64 &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int UniformInt(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Two-pole resonator with unit-ish peak gain.
struct Resonator {
  double y1 = 0.0, y2 = 0.0;

  double Step(double x, double freq, double bandwidth, int fs) {
    const double r = std::exp(-kPi * bandwidth / fs);
    const double theta = 2.0 * kPi * freq / fs;
    const double y = (1.0 - r) * x + 2.0 * r * std::cos(theta) * y1 - r * r * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

void RenderLipFrame(LipSequence &lips, int l, const LipShape &shape,
                    const SpeakerProfile &spk, double cx, double cy,
                    std::mt19937_64 &rng) {
  const double ry = kMouthHalfHeightBase + kMouthHalfHeightScale * shape.aperture;
  const double rx = kMouthHalfWidthBase + kMouthHalfWidthScale * shape.width;
  const double ly = ry + 4.0, lx = rx + 5.0;
  std::normal_distribution<double> grain(0.0, 0.01);
  for (int y = 0; y < lips.height; ++y) {
    for (int x = 0; x < lips.width; ++x) {
      double acc = 0.0;
      for (int sy = 0; sy < 2; ++sy) {
        for (int sx = 0; sx < 2; ++sx) {
          const double px = x + 0.25 + 0.5 * sx - cx;
          const double py = y + 0.25 + 0.5 * sy - cy;
          if ((px * px) / (rx * rx) + (py * py) / (ry * ry) <= 1.0)
            acc += kMouthIntensity;
          else if ((px * px) / (lx * lx) + (py * py) / (ly * ly) <= 1.0)
            acc += spk.lip_intensity;
          else
            acc += spk.skin_intensity - 0.1 * y / lips.height;
        }
      }
      lips.at(l, y, x) =
          static_cast<float>(std::clamp(acc / 4.0 + grain(rng), 0.0, 1.0));
    }
  }
}

}  // namespace

void SynthConfig::Validate() const {
  if (num_speakers < 1 || num_phonemes < 1 || clips_per_speaker < 1)
    throw ContractError("synthetic corpus counts must be >= 1");
  if (num_phonemes > 64) throw ContractError("at most 64 phonemes");
  if (!(clip_duration_s >= 0.2)) throw ContractError("clips must last >= 0.2 s");
}

PhonemeSpec Phoneme(int index, int num_phonemes) {
  if (index < 0 || index >= num_phonemes) throw ContractError("phoneme out of range");
  PhonemeSpec p;
  p.voiced = index % 4 != 3;
  if (p.voiced) {
    const int v = index - index / 4;
    if (v < static_cast<int>(kVowels.size())) {
      p.formants_hz = kVowels[v];
    } else {
      p.formants_hz = {280.0 + (v * 173) % 500, 900.0 + (v * 419) % 1400,
                       2300.0 + (v * 263) % 700};
    }
  } else {
    const int u = index / 4;
    p.noise_center_hz = u < static_cast<int>(kNoiseCenters.size())
                            ? kNoiseCenters[u]
                            : 2000.0 + (u * 1300) % 5000;
    p.noise_bandwidth_hz = 1500.0;
  }
  p.pitch_accent = ((index * 5) % 7 - 3) * 0.015;

  const int nw = std::max(1, static_cast<int>(std::sqrt(num_phonemes)));
  const int na = (num_phonemes + nw - 1) / nw;
  auto level = [](int i, int n) { return n == 1 ? 0.5 : 0.1 + 0.8 * i / (n - 1); };
  p.lips = {level(index / nw, na), level(index % nw, nw)};
  return p;
}

SpeakerProfile Speaker(const SynthConfig &cfg, int index) {
  if (index < 0 || index >= cfg.num_speakers) throw ContractError("speaker out of range");
  const int n = cfg.num_speakers;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  auto perm_rng = Rng({cfg.seed, 0x5eed, 1});
  std::shuffle(order.begin(), order.end(), perm_rng);

  SpeakerProfile s;
  char id[16];
  std::snprintf(id, sizeof id, "spk%02d", index);
  s.speaker_id = id;
  const double pos = n == 1 ? 0.5 : static_cast<double>(index) / (n - 1);
  s.base_f0_hz = 90.0 * std::pow(234.0 / 90.0, pos);
  s.formant_scale = 0.92 + 0.16 * (n == 1 ? 0.5 : static_cast<double>(order[index]) / (n - 1));
  auto rng = Rng({cfg.seed, 0x5eed, 2, static_cast<std::uint64_t>(index)});
  s.aperture_offset = Uniform(rng, -0.03, 0.03);
  s.width_offset = Uniform(rng, -0.03, 0.03);
  s.skin_intensity = static_cast<float>(Uniform(rng, 0.55, 0.85));
  s.lip_intensity = static_cast<float>(Uniform(rng, 0.3, 0.45));
  return s;
}

SyntheticClip RenderClip(const SynthConfig &cfg, int speaker, int clip) {
  cfg.Validate();
  const SpeakerProfile spk = Speaker(cfg, speaker);
  auto rng = Rng({cfg.seed, static_cast<std::uint64_t>(speaker),
                  static_cast<std::uint64_t>(clip), 17});
  const int fs = kDefaultSampleRate;
  const int n_lip = static_cast<int>(std::lround(cfg.clip_duration_s * kLipFrameRate));
  const int n_mel = n_lip * kMelPerLip;
  const int n_samples = n_mel * kHop;

  SyntheticClip out;
  char id[32];
  std::snprintf(id, sizeof id, "%s_clip%03d", spk.speaker_id.c_str(), clip);
  out.sample_id = id;
  out.speaker = speaker;

  // Phoneme sequence in whole lip frames.
  std::vector<int> lip_phoneme(n_lip);
  int prev = -1;
  for (int pos = 0; pos < n_lip;) {
    int p = UniformInt(rng, 0, cfg.num_phonemes - 1);
    if (cfg.num_phonemes > 1)
      while (p == prev) p = UniformInt(rng, 0, cfg.num_phonemes - 1);
    const int end = std::min(n_lip, pos + UniformInt(rng, 3, 6));
    out.alignment.push_back({p, pos * kMelPerLip, end * kMelPerLip});
    for (int l = pos; l < end; ++l) lip_phoneme[l] = p;
    prev = p;
    pos = end;
  }
  std::vector<PhonemeSpec> specs(cfg.num_phonemes);
  for (int p = 0; p < cfg.num_phonemes; ++p) specs[p] = Phoneme(p, cfg.num_phonemes);

  // Audio.
  const double drift_phase = Uniform(rng, 0.0, 2.0 * kPi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> raw(n_samples), f0_track(n_samples, 0.0);
  Resonator formant[3], band[2];
  double glottal_phase = 0.0, tilt = 0.0, accent = 0.0;
  const double accent_pole = std::exp(-1.0 / (0.02 * fs));
  for (int n = 0; n < n_samples; ++n) {
    const PhonemeSpec &ph = specs[lip_phoneme[n / (kHop * kMelPerLip)]];
    accent = accent_pole * accent + (1.0 - accent_pole) * ph.pitch_accent;
    const double t = static_cast<double>(n) / fs;
    const double f0 =
        spk.base_f0_hz * (1.0 + accent + 0.02 * std::sin(2.0 * kPi * 0.7 * t + drift_phase));
    f0_track[n] = f0;
    double pulse = 0.0;
    glottal_phase += f0 / fs;
    if (glottal_phase >= 1.0) {
      glottal_phase -= 1.0;
      pulse = 1.0;
    }
    tilt = 0.6 * tilt + pulse;
    if (ph.voiced) {
      double x = tilt;
      for (int k = 0; k < 3; ++k)
        x = formant[k].Step(x, ph.formants_hz[k] * spk.formant_scale, 70.0 + 40.0 * k, fs);
      raw[n] = x;
    } else {
      const double center = std::min(7200.0, ph.noise_center_hz * spk.formant_scale);
      double x = gauss(rng);
      for (Resonator &r : band) x = r.Step(x, center, ph.noise_bandwidth_hz, fs);
      raw[n] = x;
    }
  }

  // Per-segment level with short gain ramps across boundaries.
  std::vector<double> gain(n_samples);
  for (const PhonemeSegment &seg : out.alignment) {
    const int a = seg.start * kHop, b = seg.end * kHop;
    double energy = 0.0;
    for (int n = a; n < b; ++n) energy += raw[n] * raw[n];
    const double rms = std::sqrt(energy / (b - a)) + 1e-12;
    const double target = specs[seg.label].voiced ? 0.12 : 0.04;
    for (int n = a; n < b; ++n) {
      const double within = (n - a + 0.5) / (b - a);
      gain[n] = target / rms * (0.65 + 0.35 * std::sin(kPi * within));
    }
  }
  const int ramp = fs / 200;
  std::vector<double> smooth(gain);
  for (const PhonemeSegment &seg : out.alignment) {
    const int edge = seg.start * kHop;
    if (edge == 0) continue;
    const double lo = gain[edge - 1], hi = gain[edge];
    for (int k = -ramp; k < ramp; ++k) {
      const int n = edge + k;
      if (n < 0 || n >= n_samples) continue;
      const double w = (k + ramp + 0.5) / (2.0 * ramp);
      smooth[n] = (1.0 - w) * lo + w * hi;
    }
  }
  out.wave.sample_rate = fs;
  out.wave.samples.resize(n_samples);
  for (int n = 0; n < n_samples; ++n)
    out.wave.samples[n] = static_cast<float>(
        std::clamp(raw[n] * smooth[n] + 1e-4 * gauss(rng), -0.99, 0.99));

  // Ground-truth F0 at each mel frame centre.
  out.f0.frame_rate = 100.0;
  out.f0.values.assign(n_mel, 0.0f);
  out.f0.voiced.assign(n_mel, 0);
  for (int m = 0; m < n_mel; ++m) {
    if (!specs[lip_phoneme[m / kMelPerLip]].voiced) continue;
    out.f0.values[m] = static_cast<float>(f0_track[m * kHop]);
    out.f0.voiced[m] = 1;
  }

  // Lips.
  out.lips = LipSequence(n_lip, kLipImageSize, kLipImageSize);
  const double cx = kLipImageSize / 2.0 + UniformInt(rng, -2, 2);
  const double cy = kLipImageSize / 2.0 + UniformInt(rng, -2, 2);
  std::normal_distribution<double> jitter(0.0, 0.01);
  for (int l = 0; l < n_lip; ++l) {
    const LipShape &tmpl = specs[lip_phoneme[l]].lips;
    LipShape shape{std::clamp(tmpl.aperture + spk.aperture_offset + jitter(rng), 0.02, 1.0),
                   std::clamp(tmpl.width + spk.width_offset + jitter(rng), 0.02, 1.0)};
    RenderLipFrame(out.lips, l, shape, spk, cx, cy, rng);
  }
  return out;
}

Manifest GenerateSyntheticCorpus(const SynthConfig &cfg, const std::string &out_dir) {
  cfg.Validate();
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "wav", ec);
  if (!ec) fs::create_directories(fs::path(out_dir) / "lips", ec);
  if (ec) throw IoError("cannot create corpus directory " + out_dir + ": " + ec.message());

  Manifest manifest;
  manifest.base_dir = out_dir;
  nlohmann::ordered_json truth;
  truth["speakers"] = nlohmann::json::array();
  truth["clips"] = nlohmann::ordered_json::object();
  bool extra_to_dev = false;
  for (int s = 0; s < cfg.num_speakers; ++s) {
    const SpeakerProfile spk = Speaker(cfg, s);
    truth["speakers"].push_back({{"speaker_id", spk.speaker_id},
                                 {"base_f0_hz", spk.base_f0_hz},
                                 {"formant_scale", spk.formant_scale}});

    const int n = cfg.clips_per_speaker;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    auto rng = Rng({cfg.seed, static_cast<std::uint64_t>(s), 99});
    std::shuffle(order.begin(), order.end(), rng);
    const int n_train = static_cast<int>(std::lround(0.8 * n));
    const int rest = n - n_train;
    const int n_dev = rest / 2 + ((rest % 2 && extra_to_dev) ? 1 : 0);
    if (rest % 2) extra_to_dev = !extra_to_dev;
    std::vector<Split> split(n);
    for (int i = 0; i < n; ++i)
      split[order[i]] = i < n_train ? Split::kTrain
                        : i < n_train + n_dev ? Split::kDev
                                              : Split::kTest;

    for (int c = 0; c < n; ++c) {
      const SyntheticClip clip = RenderClip(cfg, s, c);
      ManifestEntry e;
      e.sample_id = clip.sample_id;
      e.wav_path = "wav/" + clip.sample_id + ".wav";
      e.lip_path = "lips/" + clip.sample_id + ".lips";
      e.speaker_id = spk.speaker_id;
      e.split = split[c];
      e.alignment = clip.alignment;
      WriteWav(clip.wave, manifest.Resolve(e.wav_path));
      WriteLips(clip.lips, manifest.Resolve(e.lip_path));
      truth["clips"][clip.sample_id] = {{"f0", clip.f0.values}};
      manifest.entries.push_back(std::move(e));
    }
  }
  WriteManifest(manifest, (fs::path(out_dir) / "manifest.jsonl").string());
  std::ofstream os(fs::path(out_dir) / "truth.json", std::ios::binary);
  if (!os) throw IoError("cannot write truth.json in " + out_dir);
  os << truth.dump() << '\n';
  return manifest;
}

const PitchContour &CorpusTruth::F0(const std::string &sample_id) const {
  for (std::size_t i = 0; i < sample_ids.size(); ++i)
    if (sample_ids[i] == sample_id) return f0[i];
  throw ContractError("no ground truth for '" + sample_id + "'");
}

const SpeakerProfile &CorpusTruth::SpeakerById(const std::string &speaker_id) const {
  for (const SpeakerProfile &s : speakers)
    if (s.speaker_id == speaker_id) return s;
  throw ContractError("no ground truth for speaker '" + speaker_id + "'");
}

CorpusTruth LoadCorpusTruth(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  CorpusTruth truth;
  try {
    const nlohmann::json j = nlohmann::json::parse(is);
    for (const auto &s : j.at("speakers")) {
      SpeakerProfile p;
      p.speaker_id = s.at("speaker_id").get<std::string>();
      p.base_f0_hz = s.at("base_f0_hz").get<double>();
      p.formant_scale = s.at("formant_scale").get<double>();
      truth.speakers.push_back(p);
    }
    for (const auto &[id, clip] : j.at("clips").items()) {
      PitchContour c;
      c.values = clip.at("f0").get<std::vector<float>>();
      for (float v : c.values) c.voiced.push_back(v > 0.0f ? 1 : 0);
      truth.sample_ids.push_back(id);
      truth.f0.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception &ex) {
    throw FormatError(path + ": " + ex.what());
  }
  return truth;
}

}  // namespace vcvts
