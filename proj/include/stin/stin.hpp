#pragma once

#include "stin/channel.hpp"
#include "stin/config_io.hpp"
#include "stin/deployment.hpp"
#include "stin/engine.hpp"
#include "stin/errors.hpp"
#include "stin/geometry.hpp"
#include "stin/metrics.hpp"
#include "stin/policies.hpp"
#include "stin/random.hpp"
#include "stin/scenario.hpp"
#include "stin/spectrum.hpp"
