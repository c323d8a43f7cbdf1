// Umbrella header: the whole library.
#pragma once

#include "constants.hpp"
#include "entanglement.hpp"
#include "errors.hpp"
#include "evolution.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "specfun.hpp"
