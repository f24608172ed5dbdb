#pragma once
// Named tau fixtures for the command line and for tests, plus loading of
// user fixture files with schema {name: {n, tau: [[[re,im], ...], ...]}}.

#include "thetadiv/siegel.hpp"

#include <map>
#include <optional>
#include <string>

namespace thetadiv {

// Built-in fixtures, resolved by (name, n):
//   "i", "2i"           1x1 points on the imaginary axis
//   "iI2", "iI3", "iI4" i times the identity
//   "iI2+0.1S"          indecomposable surface, off-diagonal 0.1
//   "block"             decomposable block diagonal (n = 2 or 3, split 1+1 / 1+2)
//   "block-2-1"         n = 3 split 2+1 with an indecomposable 2x2 block
//   "random-near-iI"    handled by callers through the seed, not here
std::optional<SiegelMatrix> builtin_fixture(const std::string& name, int n);

// Parses a fixtures file; throws std::runtime_error on malformed content.
std::map<std::string, SiegelMatrix> load_fixtures_file(const std::string& path);

// Inline literal: row-major JSON array of [re,im] pairs, e.g.
// [[[0,1],[0.1,0]],[[0.1,0],[0,1]]], or a 1x1 shorthand like "i", "2i",
// "0.5+2i".
std::optional<SiegelMatrix> parse_tau_literal(const std::string& text);

}  // namespace thetadiv
