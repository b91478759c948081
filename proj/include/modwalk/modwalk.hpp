#pragma once

#include "error.hpp"
#include "rational.hpp"
#include "scalar.hpp"
#include "group.hpp"
#include "measure.hpp"
#include "boundary.hpp"
#include "mediant.hpp"
#include "denjoy.hpp"
#include "solver.hpp"
#include "rng.hpp"
#include "simulator.hpp"
#include "counterexamples.hpp"
