// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

#include "jcs/beam.hpp"
#include "jcs/channel.hpp"
#include "jcs/config.hpp"
#include "jcs/csv.hpp"
#include "jcs/error.hpp"
#include "jcs/estimators.hpp"
#include "jcs/evaluation.hpp"
#include "jcs/experiments.hpp"
#include "jcs/frontend.hpp"
#include "jcs/linalg.hpp"
#include "jcs/pipeline.hpp"
#include "jcs/rng.hpp"
#include "jcs/scenario.hpp"
#include "jcs/theory.hpp"
#include "jcs/version.hpp"
