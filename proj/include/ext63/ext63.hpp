#pragma once

#include "ext63/chordal.hpp"
#include "ext63/forbidden.hpp"
#include "ext63/graph.hpp"
#include "ext63/marker.hpp"
#include "ext63/oracle.hpp"
#include "ext63/partition.hpp"
#include "ext63/pipeline.hpp"
#include "ext63/reducer.hpp"
#include "ext63/rng.hpp"
