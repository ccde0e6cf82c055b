#pragma once

// Umbrella header for the whole pipeline.

#include "vira/core.hpp"

#include "vira/audio/wav.hpp"
#include "vira/audio/framing.hpp"
#include "vira/audio/pitch.hpp"
#include "vira/audio/features.hpp"
#include "vira/audio/voice_quality.hpp"
#include "vira/audio/speech_rate.hpp"

#include "vira/cue/cue.hpp"
#include "vira/cue/stream.hpp"

#include "vira/model/turn.hpp"
#include "vira/model/baseline.hpp"
#include "vira/model/performance.hpp"

#include "vira/scenario/scenario.hpp"

#include "vira/affect/emotions.hpp"
#include "vira/affect/mood.hpp"
#include "vira/affect/attitudes.hpp"
#include "vira/affect/engine.hpp"

#include "vira/tom/mind.hpp"

#include "vira/session/config.hpp"
#include "vira/session/log.hpp"
#include "vira/session/session.hpp"
