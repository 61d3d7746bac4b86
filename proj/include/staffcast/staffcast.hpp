#pragma once

// Engine umbrella header (no HTTP dependency; include service.hpp for that).
#include "staffcast/dataset.hpp"
#include "staffcast/error.hpp"
#include "staffcast/evaluation.hpp"
#include "staffcast/forecast.hpp"
#include "staffcast/heuristics.hpp"
#include "staffcast/json_io.hpp"
#include "staffcast/lms.hpp"
#include "staffcast/ols.hpp"
#include "staffcast/random.hpp"
#include "staffcast/selector.hpp"
