#pragma once

// Exact Cartan decompositions g = h1 * t^lambda * h2 for gl, sl, and sp over
// the rational function field F_p(t), its local ring at t, and the formal
// completion F_p[[t]] at finite precision.

#include "cartan/census.hpp"
#include "cartan/cli.hpp"
#include "cartan/descent.hpp"
#include "cartan/json_io.hpp"
#include "cartan/parse.hpp"
#include "cartan/sampling.hpp"
#include "cartan/smith.hpp"
#include "cartan/symplectic.hpp"
#include "cartan/verify.hpp"
