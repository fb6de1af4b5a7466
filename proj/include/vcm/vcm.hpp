#pragma once

#include "vcm/analysis.hpp"
#include "vcm/baselines.hpp"
#include "vcm/engine.hpp"
#include "vcm/error.hpp"
#include "vcm/graph.hpp"
#include "vcm/io.hpp"
#include "vcm/oracle.hpp"
