#pragma once

#include "tcrank/adopter_class.hpp"
#include "tcrank/adoption_analysis.hpp"
#include "tcrank/centrality.hpp"
#include "tcrank/diffusion.hpp"
#include "tcrank/errors.hpp"
#include "tcrank/generators.hpp"
#include "tcrank/graph.hpp"
#include "tcrank/io.hpp"
#include "tcrank/parallel.hpp"
#include "tcrank/random.hpp"
#include "tcrank/score_vector.hpp"
#include "tcrank/top_candidate.hpp"
