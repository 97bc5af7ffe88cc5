#pragma once

#include "assembly.hpp"
#include "bc.hpp"
#include "boundary_ops.hpp"
#include "conditions.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "kernel.hpp"
#include "manufactured.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "solver.hpp"
#include "trace.hpp"
