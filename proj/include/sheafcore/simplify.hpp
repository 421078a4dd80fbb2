#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sheafcore/cohomology.hpp"
#include "sheafcore/sheaf.hpp"

namespace sheafcore {

enum class BeatKind { downbeat, upbeat };

struct BeatReport {
  std::string element;
  BeatKind kind = BeatKind::downbeat;
  /// Unique lower cover (downbeat) or unique upper cover (upbeat).
  std::string witness;
  /// Verdict on the outgoing restriction map; always true for reported
  /// upbeats, not applicable (true) for downbeats.
  bool map_invertible = true;
};

enum class RemovalRule { downbeat, upbeat, acyclic_downset, acyclic_upset };

std::string_view to_string(RemovalRule rule);
std::optional<RemovalRule> parse_rule(std::string_view text);

struct SimplificationStep {
  std::string removed;
  RemovalRule rule = RemovalRule::downbeat;
  friend bool operator==(const SimplificationStep&, const SimplificationStep&) = default;
};

struct SimplificationTrace {
  SheavedSpace initial;
  SheavedSpace final_space;
  std::vector<SimplificationStep> steps;
};

enum class Strategy { beats_only, beats_acyclic_down, constant_updown };

std::string_view to_string(Strategy s);
/// Accepts "beats", "acyclic-down", "constant-updown".
std::optional<Strategy> parse_strategy(std::string_view text);

/// Removal order among eligible vertices. The default picks the smallest
/// name; a seed picks uniformly at random (reproducibly).
struct RemovalOrder {
  std::optional<std::uint64_t> seed;
};

/// All beats. Downbeats need only a unique lower cover; upbeats need a
/// unique upper cover whose restriction map is square and invertible.
std::vector<BeatReport> find_beats(const SheavedSpace& sp);

/// Restriction to everything but v. Throws PreconditionError if v is not a
/// beat.
SheavedSpace collapse_beat(const SheavedSpace& sp, const std::string& v);

/// Collapses beats until none remain.
std::pair<SheavedSpace, SimplificationTrace> core(const SheavedSpace& sp,
                                                  RemovalOrder order = {});

/// The order complex of the strict downset of s is integrally acyclic.
bool removable_by_acyclic_downset(const SheavedSpace& sp, const std::string& s);
/// Throws PreconditionError when removable_by_acyclic_downset fails.
SheavedSpace remove_acyclic_downset(const SheavedSpace& sp, const std::string& s);

/// Downset or upset of s is integrally acyclic. Licenses removal for
/// constant coefficients only.
bool removable_by_acyclic_upset_constant(const Poset& p, const std::string& s);

/// Tiered removal loop: beats until none remain, then the acyclicity rules
/// the strategy allows until none apply, repeated until a fixed point. The returned trace is replayed and re-checked before return.
/// constant_updown requires a constant sheaf (PreconditionError otherwise).
std::pair<SheavedSpace, SimplificationTrace> simplify_pipeline(const SheavedSpace& sp,
                                                               Strategy strategy,
                                                               RemovalOrder order = {});

/// Replays a trace from its initial space, re-checking each removal's rule
/// on the intermediate space. Throws PreconditionError on the first step
/// that is not licensed, or if the replay does not end at final_space.
void verify_trace(const SimplificationTrace& trace);

}  // namespace sheafcore
