#pragma once

// Umbrella header.

#include "stablike/errors.hpp"
#include "stablike/quadrature.hpp"
#include "stablike/specfun.hpp"
#include "stablike/thresholds.hpp"
#include "stablike/rng.hpp"
#include "stablike/stable.hpp"
#include "stablike/chain.hpp"
#include "stablike/parallel.hpp"
#include "stablike/io.hpp"
#include "stablike/drift.hpp"
#include "stablike/classify.hpp"
#include "stablike/mc.hpp"
#include "stablike/config.hpp"
