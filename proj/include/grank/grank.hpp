#pragma once

// Umbrella header: pagerank computation on an implicit damped transition
// operator, plus the dense spectral machinery that certifies its eigenvalue
// structure at desk scale.

#include "grank/core.hpp"
#include "grank/dense.hpp"
#include "grank/eig.hpp"
#include "grank/google.hpp"
#include "grank/graph.hpp"
#include "grank/io.hpp"
#include "grank/power.hpp"
#include "grank/random.hpp"
#include "grank/rng.hpp"
#include "grank/similarity.hpp"
#include "grank/sparse.hpp"
#include "grank/verify.hpp"
