// sfdi/sfdi.hpp

// Copyright 2026  SFDI toolkit authors

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

// Umbrella header: frame-wise LPC analysis, the arctan(sum-of-LPCs)
// feature, sonorant/fricative/silence classification, corpus tools, and
// the evaluation harness.

#pragma once

#include "sfdi/audio.hpp"
#include "sfdi/audio_io.hpp"
#include "sfdi/classify.hpp"
#include "sfdi/contour.hpp"
#include "sfdi/corpus.hpp"
#include "sfdi/errors.hpp"
#include "sfdi/eval.hpp"
#include "sfdi/framing.hpp"
#include "sfdi/lpc.hpp"
#include "sfdi/noise.hpp"
#include "sfdi/phone_labels.hpp"
#include "sfdi/reports.hpp"
