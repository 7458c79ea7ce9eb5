#pragma once

#include "errors.hpp"
#include "forbidden.hpp"
#include "game.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "graph_algorithms.hpp"
#include "gsp_build.hpp"
#include "gsp_tree.hpp"
#include "io.hpp"
#include "label_order.hpp"
#include "solver.hpp"
#include "subdivision.hpp"
#include "synth.hpp"
