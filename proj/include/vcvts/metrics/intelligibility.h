// include/vcvts/metrics/intelligibility.h

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

#ifndef VCVTS_METRICS_INTELLIGIBILITY_H_
#define VCVTS_METRICS_INTELLIGIBILITY_H_

#include "vcvts/media/waveform.h"

namespace vcvts {

// Short-time objective intelligibility measures.  Both signals are resampled
// to 10 kHz, frames more than 40 dB below the loudest reference frame are
// dropped from both, and 15 one-third-octave band envelopes (lowest center
// 150 Hz) are compared over 30-frame (384 ms) segments.

/// Classic STOI: per-band envelope correlations after gain normalization and
/// clipping of the degraded envelope at -15 dB SDR.
double Stoi(const Waveform &reference, const Waveform &degraded);

/// Extended STOI: segment spectrograms are normalized over time (rows) and
/// then over bands (columns); no clipping.
double Estoi(const Waveform &reference, const Waveform &degraded);

}  // namespace vcvts

#endif  // VCVTS_METRICS_INTELLIGIBILITY_H_
