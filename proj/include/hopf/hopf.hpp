#pragma once

#include "hopf/chern.hpp"
#include "hopf/collapse.hpp"
#include "hopf/connection.hpp"
#include "hopf/errors.hpp"
#include "hopf/fibration.hpp"
#include "hopf/line_bundle.hpp"
#include "hopf/ray.hpp"
#include "hopf/rng.hpp"
