// include/vcvts/media/griffin-lim.h

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

#ifndef VCVTS_MEDIA_GRIFFIN_LIM_H_
#define VCVTS_MEDIA_GRIFFIN_LIM_H_

#include "vcvts/media/analysis-config.h"
#include "vcvts/media/mel-spectrogram.h"
#include "vcvts/media/waveform.h"

namespace vcvts {

/// Inverts a log-mel spectrogram: mel power is mapped back to linear
/// magnitudes through the filterbank pseudo-inverse (clipped at 0), then
/// cfg.gl_iterations Griffin-Lim phase refinements start from a random phase
/// drawn with cfg.gl_seed.  Returns NumFrames() * hop samples.
Waveform GriffinLim(const MelSpectrogram &mel, const AnalysisConfig &cfg);

}  // namespace vcvts

#endif  // VCVTS_MEDIA_GRIFFIN_LIM_H_
