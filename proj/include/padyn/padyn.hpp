#pragma once

// Everything: arithmetic, polynomials, maps, p-adic roots, dynamics, heights,
// the analyzer and the CLI dispatcher.

#include "padyn/analyzer.hpp"
#include "padyn/arith.hpp"
#include "padyn/cli.hpp"
#include "padyn/dynamics.hpp"
#include "padyn/error.hpp"
#include "padyn/heights.hpp"
#include "padyn/padic.hpp"
#include "padyn/poly.hpp"
#include "padyn/ratmap.hpp"
