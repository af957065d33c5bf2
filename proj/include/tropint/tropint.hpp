#pragma once

#include "tropint/bergman.hpp"
#include "tropint/braid.hpp"
#include "tropint/cone.hpp"
#include "tropint/error.hpp"
#include "tropint/fan_cycle.hpp"
#include "tropint/intersection.hpp"
#include "tropint/json_io.hpp"
#include "tropint/linalg.hpp"
#include "tropint/matroid.hpp"
#include "tropint/moduli.hpp"
#include "tropint/numeric.hpp"
