#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hytab/extract.hpp"
#include "hytab/kripke.hpp"

namespace hytab {

struct Cluster {
  std::size_t index = 0;
  // Members in the inserted order (introduction order of the world's nominal).
  std::vector<WorldId> members;
};

struct ClusterSplit {
  std::vector<WorldId> w_minus;
  std::vector<Cluster> clusters;
};

// Clusters of a transitive frame: maximal sets on which the relation is an
// equivalence, i.e. strongly connected components of reflexive worlds. With
// proper_only, single-world clusters stay in w_minus.
ClusterSplit detect_clusters(const KripkeModel& m, bool proper_only);

// Finite presentation of the bulldozed model: w_minus as is, each cluster
// replaced by copies (member, 0), (member, 1), ... laid out forward only.
struct BulldozedModel {
  ExtractedModel base;
  std::vector<WorldId> w_minus;
  std::vector<Cluster> clusters;
  ModelVariant variant = ModelVariant::I4;

  std::optional<std::size_t> cluster_of(WorldId w) const;
};

// K models are returned unchanged (no clusters). Throws PreconditionError
// unless the relation is transitive (I4) or reflexive and transitive (PO).
BulldozedModel bulldoze(const ExtractedModel& m);

// A world of the bulldozed model: a base world in w_minus, or a copy of a cluster member.
struct BWorld {
  WorldId world = 0;
  std::optional<std::size_t> copy;

  friend auto operator<=>(const BWorld&, const BWorld&) = default;
};

std::string world_name(const BulldozedModel& bm, const BWorld& w);
bool related(const BulldozedModel& bm, const BWorld& a, const BWorld& b);
// The world a nominal denotes: copy 0 of its base world if that is clustered.
BWorld denotation(const BulldozedModel& bm, const Nominal& i);
BWorld designated(const BulldozedModel& bm, WorldId base_world);

enum class Truncation {
  // Copies 0..K-1 with the relation restricted to them.
  Prefix,
  // As Prefix, but the members of copy K-1 of a cluster are all related to
  // each other (and themselves), standing in for the infinite tail.
  Closed,
};

struct TruncatedModel {
  KripkeModel model;
  std::vector<BWorld> refs;  // refs[w] is the bulldozed world behind model world w

  WorldId index_of(const BWorld& w) const;
};

TruncatedModel truncate(const BulldozedModel& bm, std::size_t copies, Truncation mode);

// Truth of f at w on the bulldozed model, computed on the closed truncation.
// Refuses (PreconditionError) when copies < modal depth + 1, copies < 2, or w
// refers to a copy at or beyond the truncation.
bool eval_truncated(const BulldozedModel& bm, const BWorld& w, const Formula& f, std::size_t copies);

// Frame-class check: exhaustive on the prefix truncation plus structural
// checks on the presentation (cluster orders, irreflexive or anti-symmetric
// base part, successor of the last copy). Seriality failures of the last copy
// layer are not failures of the infinite model and are excused.
ClassReport certify_class(const BulldozedModel& bm, FrameClass c, std::size_t copies);

std::string bulldozed_to_dot(const BulldozedModel& bm, std::size_t copies);

}  // namespace hytab
