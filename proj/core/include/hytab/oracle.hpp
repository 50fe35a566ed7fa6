#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hytab/formula.hpp"
#include "hytab/kripke.hpp"

namespace hytab {

struct Countermodel {
  KripkeModel model;
  WorldId world = 0;
};

struct OracleLimits {
  std::size_t max_worlds = 3;
  // Upper bound on (frame, valuation) pairs examined; exceeding it throws BudgetError.
  std::uint64_t max_models = 200'000'000;
};

// Exhaustive search for a class-c model of at most max_worlds worlds with a world
// where f is true. Frames are enumerated up to isomorphism; valuations in full,
// but only for the atoms of f. None is not a validity proof for USPO, whose
// satisfiable formulas may need infinite models (no finite USPO frame exists).
std::optional<Countermodel> oracle_model(const Formula& f, FrameClass c, const OracleLimits& limits);

// A model and world falsifying f.
std::optional<Countermodel> oracle_countermodel(const Formula& f, FrameClass c, std::size_t max_worlds);
std::optional<Countermodel> oracle_countermodel(const Formula& f, FrameClass c, const OracleLimits& limits);

// Relation skeletons of the class on n worlds, one per isomorphism class.
// Each skeleton is a row-major n*n adjacency bitmask.
const std::vector<std::uint32_t>& frame_skeletons(FrameClass c, std::size_t n);

}  // namespace hytab
