#pragma once

// Umbrella header.

#include "scimeter/classification.hpp"
#include "scimeter/config_io.hpp"
#include "scimeter/corpus.hpp"
#include "scimeter/counting.hpp"
#include "scimeter/indicators.hpp"
#include "scimeter/normalization.hpp"
#include "scimeter/record_io.hpp"
#include "scimeter/reports.hpp"
#include "scimeter/stats.hpp"
#include "scimeter/synthgen.hpp"
