#pragma once

#include <string>

#include "cea/actions.hpp"
#include "cea/planner.hpp"

namespace cea {

struct ValidationResult {
  bool ok = true;
  int step = -1;  // offending step, -1 for plan-level problems
  std::string reason;

  explicit operator bool() const { return ok; }
};

// Replays the plan with its own transition rules, independent of the
// planner's: preconditions and effects, board consistency, the comfort
// constraint after every step, the predicted trace, the speaking condition,
// and the goal at the end.
ValidationResult validate_plan(const Plan& plan, const PlanState& init,
                               const ActionCatalog& catalog, const PersonalityVector& p,
                               bool speaking, const PlannerConfig& config = {});

}  // namespace cea
