#pragma once

#include <random>
#include <string>
#include <vector>

#include "birconj/linearize.hpp"

namespace fixtures {

using namespace birconj;

/// A conjugate triple h o f1 = f2 o h with h carrying its inverse.
struct Fixture {
  std::string name;
  EndoP2 f1, f2;
  BirMapP2 h;
  ConfigTag expected;
};

PglElem random_pgl(std::mt19937_64& rng, Field f);
EndoP2 random_endo(std::mt19937_64& rng, Field f, int d);

/// R2^{-1} o h o R1 together with R1^{-1} f1 R1 and R2^{-1} f2 R2.
Fixture moved(const Fixture& base, const PglElem& r1, const PglElem& r2, const std::string& suffix);

/// Normal forms conjugated by random linear maps: P0 (random f and linear h),
/// P2 (both Jonquieres families, m = 1, -1 and larger |m|) and P3 (powers
/// composed with permutations, torus conjugators), over Q and F_5 with
/// d in {2, 3}.
std::vector<Fixture> conjugate_fixtures(std::uint64_t seed);

}  // namespace fixtures
