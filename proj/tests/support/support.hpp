#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hytab/branch.hpp"
#include "hytab/calculus.hpp"
#include "hytab/formula.hpp"
#include "hytab/kripke.hpp"

namespace hytab::testing {

struct RandomFormulaOptions {
  std::size_t max_connectives = 12;
  std::vector<std::string> props{"p", "q"};
  std::vector<std::string> nominals{"a", "b"};
};

// A random NNF formula with a uniformly drawn number of connectives in
// [0, max_connectives]; negation of an atom counts as one connective.
Formula random_nnf(std::mt19937_64& rng, const RandomFormulaOptions& options = {});

// Plain adjacency-matrix model for the reference evaluator below.
struct TinyModel {
  std::size_t n = 0;
  std::vector<std::vector<bool>> rel;
  std::map<std::string, std::vector<bool>> val;
  std::map<std::string, std::size_t> noms;
};

TinyModel tiny(const KripkeModel& m);
KripkeModel to_kripke(const TinyModel& t);

// Textbook recursive satisfaction, one world at a time.
bool naive_eval(const TinyModel& m, std::size_t w, const Formula& f);

// Every relation on n worlds (no symmetry reduction), every valuation of the
// atoms of f. Returns a model and world where f is false, if any.
struct TinyCountermodel {
  TinyModel model;
  std::size_t world = 0;
};
std::optional<TinyCountermodel> brute_countermodel(const Formula& f, FrameClass c, std::size_t n);

// Finite serial transitive frames with every nominal on an irreflexive world.
// Unravelling each cluster into an infinite chain of copies gives a USPO model
// mapped onto this one by a bounded morphism that is injective on named
// worlds, so a falsifying model here refutes validity over USPO.
std::optional<TinyCountermodel> serial_unravelling_countermodel(const Formula& f, std::size_t n);

// Re-checks every entry of b against the schema of the rule it claims to come
// from (premises earlier, shapes, fresh nominals really new, rule in the
// calculus). Returns one message per problem.
std::vector<std::string> check_derivation(const Branch& b, const CalculusSpec& cal);

bool relation_in_class(const std::vector<std::vector<bool>>& rel, FrameClass c);

}  // namespace hytab::testing
