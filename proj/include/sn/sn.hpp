#pragma once

// Umbrella header for the full library.

#include <sn/calculus.hpp>
#include <sn/generators.hpp>
#include <sn/geometry.hpp>
#include <sn/multivector.hpp>
#include <sn/parser.hpp>
#include <sn/poisson.hpp>
#include <sn/polynomial.hpp>
#include <sn/rational.hpp>
#include <sn/schouten.hpp>
#include <sn/serialize.hpp>
#include <sn/suites.hpp>
