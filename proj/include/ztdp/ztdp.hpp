#pragma once

#include "counting.hpp"
#include "decompose.hpp"
#include "engine.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "nice.hpp"
#include "oracle.hpp"
#include "problem.hpp"
#include "ring.hpp"
#include "set_function.hpp"
#include "table_dp.hpp"
#include "tree_decomposition.hpp"
