#include "zest/behavior_tree.hpp"

#include <cmath>
#include <stdexcept>

#include "zest/prediction.hpp"

namespace zest {

const char* to_string(NodeStatus status) {
  switch (status) {
    case NodeStatus::Success: return "Success";
    case NodeStatus::Failure: return "Failure";
    case NodeStatus::Running: return "Running";
  }
  return "Running";
}

void validate_tree(const BtNode& node) {
  switch (node.kind) {
    case BtNode::Kind::Root:
      if (node.children.size() != 1) {
        throw std::invalid_argument("invalid tree: root must have exactly one child");
      }
      break;
    case BtNode::Kind::Sequence:
    case BtNode::Kind::Fallback:
      if (node.children.empty()) {
        throw std::invalid_argument("invalid tree: composite without children");
      }
      if (node.resume_index >= node.children.size()) {
        throw std::invalid_argument("invalid tree: resume index out of range");
      }
      break;
    case BtNode::Kind::Condition:
    case BtNode::Kind::Leaf:
      if (!node.children.empty()) {
        throw std::invalid_argument("invalid tree: leaf with children");
      }
      break;
  }
  for (const BtNode& child : node.children) {
    validate_tree(child);
  }
}

namespace {

void record(std::vector<TickTraceEntry>* trace, const BtNode& node, NodeStatus status) {
  if (trace != nullptr) {
    trace->push_back({node.name, status});
  }
}

NodeStatus tick_composite(BtNode& node, TickDispatch& dispatch,
                          std::vector<TickTraceEntry>* trace) {
  const bool is_sequence = node.kind == BtNode::Kind::Sequence;
  const NodeStatus stop_status = is_sequence ? NodeStatus::Failure : NodeStatus::Success;
  const std::size_t start = node.recursive ? 0 : node.resume_index;
  for (std::size_t i = start; i < node.children.size(); ++i) {
    const NodeStatus st = tick_node(node.children[i], dispatch, trace);
    if (st == NodeStatus::Running) {
      node.resume_index = node.recursive ? 0 : i;
      return NodeStatus::Running;
    }
    if (st == stop_status) {
      node.resume_index = 0;
      return stop_status;
    }
  }
  node.resume_index = 0;
  return is_sequence ? NodeStatus::Success : NodeStatus::Failure;
}

}  // namespace

NodeStatus tick_node(BtNode& node, TickDispatch& dispatch,
                     std::vector<TickTraceEntry>* trace) {
  NodeStatus status;
  switch (node.kind) {
    case BtNode::Kind::Root:
      if (node.children.size() != 1) {
        throw std::invalid_argument("invalid tree: root must have exactly one child");
      }
      status = tick_node(node.children.front(), dispatch, trace);
      break;
    case BtNode::Kind::Sequence:
    case BtNode::Kind::Fallback:
      if (node.children.empty()) {
        throw std::invalid_argument("invalid tree: composite without children");
      }
      status = tick_composite(node, dispatch, trace);
      break;
    case BtNode::Kind::Condition:
      status = dispatch.condition(node.name);
      if (status == NodeStatus::Running) {
        throw std::runtime_error("invalid tree: condition '" + node.name +
                                 "' returned Running");
      }
      break;
    case BtNode::Kind::Leaf:
      status = dispatch.action(node.name);
      break;
    default:
      throw std::invalid_argument("invalid tree");
  }
  record(trace, node, status);
  return status;
}

// --- ZEST tree -------------------------------------------------------------

namespace {

BtNode condition(std::string name) {
  BtNode n;
  n.kind = BtNode::Kind::Condition;
  n.name = std::move(name);
  return n;
}

BtNode leaf(std::string name) {
  BtNode n;
  n.kind = BtNode::Kind::Leaf;
  n.name = std::move(name);
  return n;
}

BtNode composite(BtNode::Kind kind, std::string name, std::vector<BtNode> children) {
  BtNode n;
  n.kind = kind;
  n.name = std::move(name);
  n.recursive = true;  // conditions are re-evaluated on every tick
  n.children = std::move(children);
  return n;
}

BtNode guarded(const char* rule, const char* cond_name, const char* leaf_name) {
  return composite(BtNode::Kind::Sequence, rule, {condition(cond_name), leaf(leaf_name)});
}

}  // namespace

BtNode build_zest_tree() {
  BtNode rules = composite(
      BtNode::Kind::Fallback, "DispatchRule",
      {guarded("Rule13", "IsRule13", "ApplyRule13"),
       guarded("Rule14", "IsRule14", "ApplyRule14"),
       guarded("Rule15", "IsRule15", "ApplyRule15"),
       guarded("Rule17", "IsRule17", "ApplyRule17")});
  BtNode select = composite(
      BtNode::Kind::Fallback, "SelectBehavior",
      {guarded("FollowPath", "IsWayFree", "MoveToTarget"),
       guarded("HandleStatic", "IsStaticObstacle", "AvoidStatic"),
       std::move(rules)});
  BtNode root;
  root.kind = BtNode::Kind::Root;
  root.name = "Root";
  root.children.push_back(std::move(select));
  return root;
}

Vec2 Blackboard::goal_point() const {
  return path.closed ? vt.pos : path.samples.back();
}

bool way_is_free(const Blackboard& bb) {
  if (!bb.other.has_value()) {
    return true;
  }
  // The check extrapolates the intended track, not the instantaneous heading:
  // a vessel mid-deflection must not call the way free while resuming its
  // route would still conflict. The intended course aims at the path point
  // one influence radius ahead of the vessel's own path projection.
  VesselState intent = bb.own;
  const double s_ahead = project_arclength(bb.path, bb.own.position()) +
                         bb.field.influence_radius;
  const Vec2 ahead = point_at(bb.path, s_ahead);
  const Vec2 to_ahead = ahead - bb.own.position();
  if (norm(to_ahead) > 1e-9) {
    intent.psi = wrap_angle(std::atan2(to_ahead.y, to_ahead.x));
  }
  intent.u = std::abs(bb.own.u);  // the speed actually being made good
  const SeparationPrediction pred =
      predict_min_separation(intent, *bb.other, bb.field.predict_horizon, bb.field.scan_dt);
  const bool is_static = std::abs(bb.other->u) < bb.thresholds.static_speed_threshold;
  if (is_static) {
    const double range = distance(bb.own.position(), bb.other->position());
    return !(pred.min_separation <= bb.field.safety_radius &&
             range <= bb.field.influence_radius);
  }
  return pred.min_separation > bb.field.safety_radius;
}

namespace {

void write_command(Blackboard& bb, const std::string& leaf_name, const GuidanceCommand& cmd) {
  bb.command = cmd;
  bb.command_written = true;
  bb.active_leaf = leaf_name;
}

// Degenerate (fully cancelled) fields fall back to plain pursuit.
GuidanceCommand force_command(const Blackboard& bb, ForceVector f, EncounterType enc) {
  if (force_norm(f) < 1e-12) {
    return vtg_command(bb.own, bb.vt, bb.cruise_speed, bb.arrival_radius);
  }
  return force_to_guidance(f, enc, bb.cruise_speed);
}

NodeStatus apply_rule(Blackboard& bb, const std::string& name, EncounterType enc) {
  if (!bb.other.has_value()) {
    return NodeStatus::Failure;
  }
  GuidanceCommand cmd;
  if (enc == EncounterType::StandOn) {
    cmd = stand_on_command(bb);
  } else {
    cmd = force_command(bb, colregs_field(bb.own, *bb.other, enc, bb.goal_point(), bb.field),
                        enc);
  }
  write_command(bb, name, cmd);
  return encounter_cleared(encounter_geometry(bb.own, *bb.other), bb.thresholds)
             ? NodeStatus::Success
             : NodeStatus::Running;
}

NodeStatus from_bool(bool ok) { return ok ? NodeStatus::Success : NodeStatus::Failure; }

}  // namespace

GuidanceCommand stand_on_command(const Blackboard& bb) {
  // Stand-on conduct keeps the plain route; the unbiased field steps in when
  // a contact inside the influence radius keeps closing on the safety margin.
  // The 1.5x band re-engages pursuit only once the predicted miss has real
  // slack, so the limit cycle settles above the safety radius.
  if (bb.other.has_value() &&
      distance(bb.own.position(), bb.other->position()) <= bb.field.influence_radius) {
    const SeparationPrediction pred = predict_min_separation(
        bb.own, *bb.other, bb.field.predict_horizon, bb.field.scan_dt);
    if (pred.min_separation <= 1.5 * bb.field.safety_radius) {
      const ForceVector f =
          colregs_field(bb.own, *bb.other, EncounterType::StandOn, bb.goal_point(), bb.field);
      return force_command(bb, f, EncounterType::StandOn);
    }
  }
  return vtg_command(bb.own, bb.vt, bb.cruise_speed, bb.arrival_radius);
}

NodeStatus leaf_semantics(const std::string& name, Blackboard& bb) {
  // conditions
  if (name == "IsWayFree") return from_bool(way_is_free(bb));
  if (name == "IsStaticObstacle") {
    return from_bool(bb.other.has_value() && bb.encounter == EncounterType::StaticObstacle);
  }
  if (name == "IsRule13") {
    return from_bool(bb.other.has_value() && bb.encounter == EncounterType::Overtaking);
  }
  if (name == "IsRule14") {
    return from_bool(bb.other.has_value() && bb.encounter == EncounterType::HeadOn);
  }
  if (name == "IsRule15") {
    return from_bool(bb.other.has_value() && bb.encounter == EncounterType::CrossingGiveWay);
  }
  if (name == "IsRule17") {
    return from_bool(bb.other.has_value() && bb.encounter == EncounterType::StandOn);
  }

  // action leaves
  if (name == "MoveToTarget") {
    write_command(bb, name, vtg_command(bb.own, bb.vt, bb.cruise_speed, bb.arrival_radius));
    if (!bb.path.closed &&
        distance(bb.own.position(), bb.path.samples.back()) <= bb.arrival_tolerance) {
      return NodeStatus::Success;
    }
    return NodeStatus::Running;
  }
  if (name == "AvoidStatic") {
    if (!bb.other.has_value()) {
      return NodeStatus::Failure;
    }
    const ForceVector f =
        attractive_force(bb.own.position(), bb.goal_point(), bb.field.k_att) +
        repulsive_force(bb.own.position(), bb.other->position(), bb.field);
    write_command(bb, name, force_command(bb, f, EncounterType::StaticObstacle));
    return way_is_free(bb) ? NodeStatus::Success : NodeStatus::Running;
  }
  if (name == "ApplyRule13") return apply_rule(bb, name, EncounterType::Overtaking);
  if (name == "ApplyRule14") return apply_rule(bb, name, EncounterType::HeadOn);
  if (name == "ApplyRule15") return apply_rule(bb, name, EncounterType::CrossingGiveWay);
  if (name == "ApplyRule17") return apply_rule(bb, name, EncounterType::StandOn);

  throw std::invalid_argument("unknown leaf '" + name + "'");
}

namespace {

class ZestDispatch : public TickDispatch {
 public:
  explicit ZestDispatch(Blackboard& bb) : bb_(bb) {}
  NodeStatus condition(const std::string& name) override { return leaf_semantics(name, bb_); }
  NodeStatus action(const std::string& name) override { return leaf_semantics(name, bb_); }

 private:
  Blackboard& bb_;
};

}  // namespace

NodeStatus tick(BtNode& root, Blackboard& bb, std::vector<TickTraceEntry>* trace) {
  ZestDispatch dispatch(bb);
  return tick_node(root, dispatch, trace);
}

}  // namespace zest
