// Copyright 2026 The hybridsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYBRIDSIM_ENSEMBLE_SELECT_HPP_
#define HYBRIDSIM_ENSEMBLE_SELECT_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hybridsim {

// A candidate member of an ensemble: an algorithm with a run time and an
// additive contribution to the ensemble's quality.
struct Component {
  std::string id;
  double exec_time_s = 0.0;
  double value = 0.0;
};

// `selected` holds component ids in ascending order. `objective` is always
// evaluated on the selected components in that order, so two solvers that
// pick the same set report bit-identical objectives.
struct EnsemblePlan {
  std::vector<std::string> selected;
  double total_time_s = 0.0;
  double objective = 0.0;

  friend bool operator==(const EnsemblePlan&, const EnsemblePlan&) = default;
};

inline constexpr double kDefaultTimeResolutionS = 1e-3;
inline constexpr int kMaxExhaustiveComponents = 30;

// Execution time in whole multiples of `resolution_s`, rounded up. A budget is
// discretized by rounding down, so discretized solutions never overrun it.
std::int64_t discretize_up(double seconds, double resolution_s);
std::int64_t discretize_down(double seconds, double resolution_s);

// Maximizes the summed value under the budget by dynamic programming over
// discretized time. Ties prefer fewer components, then the lexicographically
// smallest id list.
EnsemblePlan select_additive(std::span<const Component> components,
                             double budget_s,
                             double resolution_s = kDefaultTimeResolutionS);

// Objective over a subset; receives the selected components in ascending id
// order. Must be monotone nondecreasing under set inclusion.
using SetFunction = std::function<double(std::span<const Component>)>;

enum class SearchMode { kExhaustive, kBranchAndBound };

// Globally optimal subset for an arbitrary monotone set function. Exhaustive
// search accepts at most kMaxExhaustiveComponents components. Branch and
// bound prunes with objective(S + every remaining component that still fits
// on its own) and throws ContractViolation if it observes non-monotonicity.
EnsemblePlan select_general(std::span<const Component> components,
                            const SetFunction& objective, double budget_s,
                            SearchMode mode,
                            double resolution_s = kDefaultTimeResolutionS);

SetFunction additive_objective();
SetFunction cardinality_objective();
// 1 - prod(1 - v): probability that at least one member fires, reading each
// value as an independent detection probability in [0, 1].
SetFunction noisy_or_objective();

// [{"id": ..., "exec_time_s": ..., "value": ...}, ...]
std::vector<Component> parse_components_json(std::string_view text);
std::string components_to_json(std::span<const Component> components);
// {"selected": [...], "total_time_s": ..., "objective": ...}
std::string plan_to_json(const EnsemblePlan& plan);
EnsemblePlan parse_plan_json(std::string_view text);

}  // namespace hybridsim

#endif  // HYBRIDSIM_ENSEMBLE_SELECT_HPP_
