#pragma once

#include "logwalk/audit.hpp"
#include "logwalk/errors.hpp"
#include "logwalk/estimators.hpp"
#include "logwalk/execution.hpp"
#include "logwalk/generators.hpp"
#include "logwalk/graph.hpp"
#include "logwalk/io.hpp"
#include "logwalk/oracle.hpp"
#include "logwalk/parallel.hpp"
#include "logwalk/registers.hpp"
#include "logwalk/rng.hpp"
#include "logwalk/solver.hpp"
#include "logwalk/spectral.hpp"
#include "logwalk/walk.hpp"
