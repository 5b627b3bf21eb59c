#pragma once

#include "chsim/geometry.hpp"

namespace chsim {

enum class NodeState { Active, Sleep, Dead };
enum class NodeRole { Unassigned, ClusterHead, Member };

struct SensorNode {
  int id = 0;
  Position pos;
  double residual_energy = 0.0;     // J
  NodeState state = NodeState::Active;
  NodeRole role = NodeRole::Unassigned;
  double arrival_rate = 0.0;        // packets/s entering the node's queue
  double forwarding_capacity = 0.0; // packets/s the node can forward
  int queue_length = 1;             // packets currently buffered

  bool alive() const { return state != NodeState::Dead; }
};

struct BaseStation {
  Position pos;
};

}  // namespace chsim
