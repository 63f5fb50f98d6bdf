#pragma once

#include "tcrank/centrality/degree.hpp"
#include "tcrank/centrality/gdd.hpp"
#include "tcrank/centrality/harmonic.hpp"
#include "tcrank/centrality/k_core.hpp"
#include "tcrank/centrality/ltc.hpp"
#include "tcrank/centrality/pagerank.hpp"
#include "tcrank/centrality/shapley.hpp"
