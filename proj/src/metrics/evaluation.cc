// src/metrics/evaluation.cc

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

#include "vcvts/metrics/evaluation.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "vcvts/base/error.h"
#include "vcvts/media/pitch.h"
#include "vcvts/metrics/distortion.h"
#include "vcvts/metrics/intelligibility.h"

namespace vcvts {

namespace {

std::string Quote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string FormatNumber(double v) {
  if (!std::isfinite(v)) return "nan";
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

nlohmann::json RowJson(const ClipScores &s) {
  nlohmann::json j;
  j["sample_id"] = s.sample_id;
  j["stoi"] = s.stoi;
  j["estoi"] = s.estoi;
  j["mcd"] = s.mcd;
  if (std::isfinite(s.f0_rmse)) j["f0_rmse"] = s.f0_rmse;
  else j["f0_rmse"] = nullptr;
  j["co_voiced"] = s.co_voiced;
  if (s.pesq) j["pesq"] = *s.pesq;
  return j;
}

}  // namespace

double RunPesq(const std::string &executable, const std::string &ref_wav,
               const std::string &deg_wav) {
  const std::string cmd =
      Quote(executable) + " " + Quote(ref_wav) + " " + Quote(deg_wav);
  std::unique_ptr<FILE, int (*)(FILE *)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) throw IoError("cannot run PESQ executable " + executable);
  std::string out;
  std::array<char, 256> buf;
  while (std::fgets(buf.data(), buf.size(), pipe.get())) out += buf.data();
  const int status = pclose(pipe.release());
  if (status != 0) throw Error("PESQ executable failed: " + executable);
  std::istringstream is(out);
  double value = 0.0;
  std::string rest;
  if (!(is >> value) || (is >> rest))
    throw FormatError("PESQ output is not a single number: " + out);
  return value;
}

ClipScores ScoreClip(const std::string &sample_id, const Waveform &reference,
                     const Waveform &degraded, const EvalOptions &opts) {
  ClipScores s;
  s.sample_id = sample_id;
  s.stoi = Stoi(reference, degraded);
  s.estoi = Estoi(reference, degraded);
  s.mcd = Mcd(reference, degraded, opts.analysis);
  try {
    const F0RmseResult f0 = F0Rmse(ExtractF0(reference, opts.analysis),
                                   ExtractF0(degraded, opts.analysis));
    s.f0_rmse = f0.rmse_hz;
    s.co_voiced = f0.co_voiced;
  } catch (const ContractError &) {
    s.f0_rmse = std::numeric_limits<double>::quiet_NaN();
  }
  if (opts.pesq_executable) {
    const std::filesystem::path dir(opts.scratch_dir);
    const std::string ref_path = (dir / (sample_id + ".ref.wav")).string();
    const std::string deg_path = (dir / (sample_id + ".deg.wav")).string();
    WriteWav(reference, ref_path);
    WriteWav(degraded, deg_path);
    s.pesq = RunPesq(*opts.pesq_executable, ref_path, deg_path);
  }
  return s;
}

EvalReport EvaluateSystem(const std::vector<std::string> &sample_ids,
                          const std::function<Waveform(const std::string &)> &reference,
                          const std::function<Waveform(const std::string &)> &system,
                          const EvalOptions &opts) {
  EvalReport report;
  for (const std::string &id : sample_ids)
    report.rows.push_back(ScoreClip(id, reference(id), system(id), opts));

  ClipScores &m = report.mean;
  m.sample_id = "mean";
  const double n = static_cast<double>(report.rows.size());
  int f0_rows = 0, pesq_rows = 0;
  double f0_sum = 0.0, pesq_sum = 0.0;
  for (const ClipScores &r : report.rows) {
    m.stoi += r.stoi / n;
    m.estoi += r.estoi / n;
    m.mcd += r.mcd / n;
    m.co_voiced += r.co_voiced;
    if (std::isfinite(r.f0_rmse)) {
      f0_sum += r.f0_rmse;
      ++f0_rows;
    }
    if (r.pesq) {
      pesq_sum += *r.pesq;
      ++pesq_rows;
    }
  }
  m.f0_rmse = f0_rows ? f0_sum / f0_rows : std::numeric_limits<double>::quiet_NaN();
  if (pesq_rows) m.pesq = pesq_sum / pesq_rows;
  return report;
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json j;
  j["clips"] = nlohmann::json::array();
  for (const ClipScores &r : rows) j["clips"].push_back(RowJson(r));
  j["mean"] = RowJson(mean);
  j["num_clips"] = rows.size();
  return j;
}

std::string EvalReport::ToCsv() const {
  const bool with_pesq = !rows.empty() && rows.front().pesq.has_value();
  std::ostringstream os;
  os << "sample_id," << (with_pesq ? "pesq," : "")
     << "stoi,estoi,mcd,f0_rmse,co_voiced\n";
  for (const ClipScores &r : rows) {
    os << r.sample_id << ',';
    if (with_pesq) os << FormatNumber(r.pesq.value_or(NAN)) << ',';
    os << FormatNumber(r.stoi) << ',' << FormatNumber(r.estoi) << ','
       << FormatNumber(r.mcd) << ',' << FormatNumber(r.f0_rmse) << ','
       << r.co_voiced << '\n';
  }
  return os.str();
}

void WriteEvalReport(const EvalReport &report, const std::string &prefix) {
  std::ofstream js(prefix + ".json");
  std::ofstream csv(prefix + ".csv");
  if (!js || !csv) throw IoError("cannot write report " + prefix);
  js << report.ToJson().dump(2) << '\n';
  csv << report.ToCsv();
  if (!js || !csv) throw IoError("error writing report " + prefix);
}

}  // namespace vcvts
