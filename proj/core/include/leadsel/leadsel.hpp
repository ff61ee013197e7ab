#pragma once

#include "leadsel/centrality.hpp"
#include "leadsel/error.hpp"
#include "leadsel/graph.hpp"
#include "leadsel/graph_suite.hpp"
#include "leadsel/joint_centrality.hpp"
#include "leadsel/leader_set.hpp"
#include "leadsel/selection.hpp"
#include "leadsel/simulator.hpp"
#include "leadsel/spectral.hpp"
