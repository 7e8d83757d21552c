#pragma once

#include "dlsml/classifiers/protocol.hpp"
#include "dlsml/dls.hpp"
#include "dlsml/match_data.hpp"
#include "dlsml/pso.hpp"
#include "dlsml/resource_table.hpp"
#include "dlsml/synth.hpp"
#include "dlsml/unpredictability.hpp"
