#pragma once

// Everything except the command-line layer.

#include "seba/arithmetic.hpp"
#include "seba/epstein.hpp"
#include "seba/error.hpp"
#include "seba/estimator.hpp"
#include "seba/lattice_sum_tree.hpp"
#include "seba/multifractal.hpp"
#include "seba/numeric.hpp"
#include "seba/parallel.hpp"
#include "seba/report.hpp"
#include "seba/special_functions.hpp"
#include "seba/spectrum.hpp"
#include "seba/table_cache.hpp"
