#pragma once

#include "cyclepower/arboreal.hpp"
#include "cyclepower/errors.hpp"
#include "cyclepower/exact_linalg.hpp"
#include "cyclepower/graph_model.hpp"
#include "cyclepower/numeric.hpp"
#include "cyclepower/sequences.hpp"
#include "cyclepower/simulate.hpp"
#include "cyclepower/spectral_factors.hpp"
#include "cyclepower/symbol_poly.hpp"
#include "cyclepower/walk_kernels.hpp"
#include "cyclepower/verify.hpp"
