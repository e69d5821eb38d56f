#pragma once

/**
 * @file lucas.hpp
 * @brief Umbrella header: Lucas sequences, Moebius duals and their p-adic valuations.
 */

#include "arith.hpp"
#include "bigint.hpp"
#include "dual.hpp"
#include "error.hpp"
#include "explorer.hpp"
#include "factor.hpp"
#include "primes.hpp"
#include "report.hpp"
#include "sequence.hpp"
#include "valuation.hpp"
