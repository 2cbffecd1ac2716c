// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Umbrella header.

#pragma once

#include "zharec/errors.hpp"
#include "zharec/framing.hpp"
#include "zharec/hmm.hpp"
#include "zharec/lpc.hpp"
#include "zharec/manifest.hpp"
#include "zharec/model_io.hpp"
#include "zharec/recognizer.hpp"
#include "zharec/rng.hpp"
#include "zharec/synth.hpp"
#include "zharec/vq.hpp"
#include "zharec/wav.hpp"
