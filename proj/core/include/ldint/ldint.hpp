#pragma once

#include "ldint/analytic.hpp"
#include "ldint/compensated.hpp"
#include "ldint/diagnostics.hpp"
#include "ldint/error.hpp"
#include "ldint/integrators.hpp"
#include "ldint/jet.hpp"
#include "ldint/linear_propagator.hpp"
#include "ldint/newton.hpp"
#include "ldint/quadrature.hpp"
#include "ldint/rational.hpp"
#include "ldint/stability.hpp"
#include "ldint/system.hpp"
