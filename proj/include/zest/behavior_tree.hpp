#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zest/apf.hpp"
#include "zest/colregs.hpp"
#include "zest/guidance.hpp"
#include "zest/path.hpp"
#include "zest/vessel.hpp"

namespace zest {

enum class NodeStatus { Success, Failure, Running };

const char* to_string(NodeStatus status);

// Behavior-tree node. Composites carry a recursion flag: a recursive composite
// restarts from its first child on every tick while Running; a non-recursive
// one resumes at the child that returned Running. resume_index is engine state
// and is reset to 0 whenever the composite finishes (Success or Failure).
struct BtNode {
  enum class Kind { Root, Sequence, Fallback, Condition, Leaf };

  Kind kind = Kind::Leaf;
  std::string name;
  bool recursive = false;
  std::vector<BtNode> children;
  std::size_t resume_index = 0;
};

// Supplies condition and action implementations to the tick engine, keeping
// the engine independent of any domain logic.
class TickDispatch {
 public:
  virtual ~TickDispatch() = default;
  virtual NodeStatus condition(const std::string& name) = 0;
  virtual NodeStatus action(const std::string& name) = 0;
};

struct TickTraceEntry {
  std::string node;
  NodeStatus status;
};

// Throws std::invalid_argument on a structurally invalid tree.
void validate_tree(const BtNode& node);

// One tick of the tree. Optionally records every visited node and its status.
NodeStatus tick_node(BtNode& node, TickDispatch& dispatch,
                     std::vector<TickTraceEntry>* trace = nullptr);

// Shared per-vessel state read by conditions and written by action leaves.
// Conditions are read-only; the simulation loop refreshes the world fields
// (own, other, vt, encounter, sim_time) before each tick.
struct Blackboard {
  VesselState own;
  std::optional<VesselState> other;
  PlanarPath path;
  VirtualTarget vt;
  VesselParams own_params;
  ColregsThresholds thresholds;
  FieldParams field;
  double cruise_speed = 2.5;      // [m/s]
  double arrival_radius = 5.0;    // [m]
  double arrival_tolerance = 2.0; // [m]
  double sim_time = 0.0;          // [s]

  EncounterType encounter = EncounterType::Clear;
  GuidanceCommand command;
  bool command_written = false;
  std::string active_leaf;

  // Final goal for open paths; for closed paths the mission has no terminal
  // goal and the field goal is the moving virtual target.
  Vec2 goal_point() const;
};

// True when no contact's predicted closest approach violates the safety
// radius (static contacts only count inside the influence radius).
bool way_is_free(const Blackboard& bb);

// Stand-on / fallback steering: the plain pursuit command, unless a contact
// inside the influence radius still violates the predicted safety margin, in
// which case the unbiased avoidance field (attractive + repulsive +
// predictive) takes over as last resort.
GuidanceCommand stand_on_command(const Blackboard& bb);

// Condition/leaf implementations by name (IsWayFree, MoveToTarget,
// ApplyRule13..17, ...). Throws std::invalid_argument for unknown names.
NodeStatus leaf_semantics(const std::string& name, Blackboard& bb);

// The mission tree: a recursive fallback over (way-free -> follow path),
// (static obstacle -> avoid) and the rule dispatch fallback of guarded
// (IsRuleNN -> ApplyRuleNN) sequences.
BtNode build_zest_tree();

// Ticks the tree against the blackboard via leaf_semantics.
NodeStatus tick(BtNode& root, Blackboard& bb, std::vector<TickTraceEntry>* trace = nullptr);

}  // namespace zest
