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

#include "hybridsim/ensemble_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "hybridsim/device_model.hpp"
#include "hybridsim/errors.hpp"
#include "json_util.hpp"

namespace hybridsim {
namespace {

// Objective values closer than this are considered tied.
bool nearly_equal(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-9 * scale;
}

// Instance sorted by id with discretized weights.
struct Prepared {
  std::vector<Component> items;
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;
};

Prepared prepare(std::span<const Component> components, double budget_s,
                 double resolution_s) {
  if (!(resolution_s > 0.0) || !std::isfinite(resolution_s))
    throw InvalidParameter("time resolution must be positive");
  if (!(budget_s >= 0.0) || !std::isfinite(budget_s))
    throw InvalidParameter("budget must be a finite value >= 0");
  Prepared p;
  p.items.assign(components.begin(), components.end());
  std::sort(p.items.begin(), p.items.end(),
            [](const Component& a, const Component& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < p.items.size(); ++i) {
    const Component& c = p.items[i];
    if (!is_valid_id(c.id))
      throw InvalidParameter("invalid component id '" + c.id + "'");
    if (i > 0 && p.items[i - 1].id == c.id)
      throw InvalidParameter("duplicate component id '" + c.id + "'");
    if (!(c.exec_time_s > 0.0) || !std::isfinite(c.exec_time_s))
      throw InvalidParameter("component '" + c.id + "': exec_time must be > 0");
    if (!(c.value >= 0.0) || !std::isfinite(c.value))
      throw InvalidParameter("component '" + c.id + "': value must be >= 0");
    p.weights.push_back(discretize_up(c.exec_time_s, resolution_s));
  }
  p.capacity = discretize_down(budget_s, resolution_s);
  return p;
}

EnsemblePlan make_plan(const Prepared& p, const std::vector<std::size_t>& chosen,
                       double objective) {
  EnsemblePlan plan;
  for (std::size_t i : chosen) {
    plan.selected.push_back(p.items[i].id);
    plan.total_time_s += p.items[i].exec_time_s;
  }
  plan.objective = objective;
  return plan;
}

std::vector<Component> gather(const Prepared& p,
                              const std::vector<std::size_t>& chosen) {
  std::vector<Component> out;
  out.reserve(chosen.size());
  for (std::size_t i : chosen) out.push_back(p.items[i]);
  return out;
}

// Candidate ordering shared by every solver: larger objective, then fewer
// components, then the lexicographically smaller index list (indices follow
// id order).
bool better(double value, const std::vector<std::size_t>& set, double best_value,
            const std::vector<std::size_t>& best_set) {
  if (!nearly_equal(value, best_value)) return value > best_value;
  if (set.size() != best_set.size()) return set.size() < best_set.size();
  return set < best_set;
}

double additive_sum(std::span<const Component> selected) {
  double sum = 0.0;
  for (const Component& c : selected) sum += c.value;
  return sum;
}

}  // namespace

std::int64_t discretize_up(double seconds, double resolution_s) {
  const double q = seconds / resolution_s;
  const double nearest = std::round(q);
  if (std::fabs(q - nearest) <= 1e-9 * std::max(1.0, std::fabs(q)))
    return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(q));
}

std::int64_t discretize_down(double seconds, double resolution_s) {
  const double q = seconds / resolution_s;
  const double nearest = std::round(q);
  if (std::fabs(q - nearest) <= 1e-9 * std::max(1.0, std::fabs(q)))
    return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::floor(q));
}

EnsemblePlan select_additive(std::span<const Component> components,
                             double budget_s, double resolution_s) {
  const Prepared p = prepare(components, budget_s, resolution_s);
  const std::size_t n = p.items.size();
  const std::int64_t total_weight =
      std::accumulate(p.weights.begin(), p.weights.end(), std::int64_t{0});
  const std::int64_t cap = std::min(p.capacity, total_weight);
  const std::size_t width = static_cast<std::size_t>(cap) + 1;
  if (static_cast<double>(n) * static_cast<double>(width) > 2e8)
    throw SizeLimitError("knapsack table too large; coarsen the resolution");

  // Suffix tables over items i..n-1: best value, member count, and whether
  // item i is taken. Taking wins exact ties so that reconstruction from the
  // smallest id yields the lexicographically smallest optimal set.
  std::vector<double> value((n + 1) * width, 0.0);
  std::vector<std::uint32_t> count((n + 1) * width, 0);
  std::vector<std::uint8_t> take(n * width, 0);
  for (std::size_t i = n; i-- > 0;) {
    const std::int64_t w = p.weights[i];
    for (std::int64_t c = 0; c <= cap; ++c) {
      const std::size_t skip_at = (i + 1) * width + static_cast<std::size_t>(c);
      double best_v = value[skip_at];
      std::uint32_t best_n = count[skip_at];
      bool took = false;
      if (w <= c) {
        const std::size_t rest = (i + 1) * width + static_cast<std::size_t>(c - w);
        const double v = p.items[i].value + value[rest];
        const std::uint32_t k = count[rest] + 1;
        const bool wins = nearly_equal(v, best_v) ? k <= best_n : v > best_v;
        if (wins) {
          best_v = v;
          best_n = k;
          took = true;
        }
      }
      value[i * width + static_cast<std::size_t>(c)] = best_v;
      count[i * width + static_cast<std::size_t>(c)] = best_n;
      take[i * width + static_cast<std::size_t>(c)] = took;
    }
  }

  std::vector<std::size_t> chosen;
  std::int64_t c = cap;
  for (std::size_t i = 0; i < n; ++i) {
    if (take[i * width + static_cast<std::size_t>(c)]) {
      chosen.push_back(i);
      c -= p.weights[i];
    }
  }
  return make_plan(p, chosen, additive_sum(gather(p, chosen)));
}

EnsemblePlan select_general(std::span<const Component> components,
                            const SetFunction& objective, double budget_s,
                            SearchMode mode, double resolution_s) {
  if (!objective) throw InvalidParameter("objective must be callable");
  const Prepared p = prepare(components, budget_s, resolution_s);
  const std::size_t n = p.items.size();
  auto eval = [&](const std::vector<std::size_t>& set) {
    const std::vector<Component> members = gather(p, set);
    return objective(members);
  };

  std::vector<std::size_t> best_set;
  double best_value = eval(best_set);

  if (mode == SearchMode::kExhaustive) {
    if (n > static_cast<std::size_t>(kMaxExhaustiveComponents))
      throw SizeLimitError("exhaustive search is limited to " +
                           std::to_string(kMaxExhaustiveComponents) +
                           " components");
    std::vector<std::size_t> set;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
      std::int64_t used = 0;
      set.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) {
          set.push_back(i);
          used += p.weights[i];
        }
      }
      if (used > p.capacity) continue;
      const double v = eval(set);
      if (better(v, set, best_value, best_set)) {
        best_value = v;
        best_set = set;
      }
    }
    return make_plan(p, best_set, best_value);
  }

  // Depth-first branch and bound, include-branch first.
  std::vector<std::size_t> current;
  std::vector<std::size_t> bound_set;
  auto violation = [](const std::string& what) {
    throw ContractViolation("objective is not monotone: " + what);
  };
  auto search = [&](auto&& self, std::size_t i, std::int64_t used,
                    double current_value) -> void {
    if (i == n) return;
    bound_set = current;
    for (std::size_t j = i; j < n; ++j)
      if (p.weights[j] <= p.capacity - used) bound_set.push_back(j);
    const double bound = eval(bound_set);
    if (current_value > bound && !nearly_equal(current_value, bound))
      violation("a subset scored above its superset bound");
    if (bound < best_value && !nearly_equal(bound, best_value)) return;

    if (p.weights[i] <= p.capacity - used) {
      current.push_back(i);
      const double v = eval(current);
      if (v < current_value && !nearly_equal(v, current_value))
        violation("adding component '" + p.items[i].id + "' lowered it");
      if (better(v, current, best_value, best_set)) {
        best_value = v;
        best_set = current;
      }
      self(self, i + 1, used + p.weights[i], v);
      current.pop_back();
    }
    self(self, i + 1, used, current_value);
  };
  search(search, 0, 0, best_value);
  return make_plan(p, best_set, best_value);
}

SetFunction additive_objective() { return additive_sum; }

SetFunction cardinality_objective() {
  return [](std::span<const Component> selected) {
    return static_cast<double>(selected.size());
  };
}

SetFunction noisy_or_objective() {
  return [](std::span<const Component> selected) {
    double miss = 1.0;
    for (const Component& c : selected) miss *= 1.0 - std::clamp(c.value, 0.0, 1.0);
    return 1.0 - miss;
  };
}

std::vector<Component> parse_components_json(std::string_view text) {
  using json_util::json;
  const json root = json_util::parse(text, "components");
  json_util::expect_array(root, "components");
  std::vector<Component> out;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const std::string where = "components[" + std::to_string(i) + "]";
    json_util::expect_object(root[i], where);
    json_util::reject_unknown_keys(root[i], where, {"id", "exec_time_s", "value"});
    Component c;
    c.id = json_util::string(root[i], "id", where);
    c.exec_time_s = json_util::number(root[i], "exec_time_s", where);
    c.value = json_util::number(root[i], "value", where);
    out.push_back(std::move(c));
  }
  return out;
}

std::string components_to_json(std::span<const Component> components) {
  using json_util::json;
  json root = json::array();
  for (const Component& c : components)
    root.push_back({{"id", c.id}, {"exec_time_s", c.exec_time_s}, {"value", c.value}});
  return root.dump(2) + "\n";
}

std::string plan_to_json(const EnsemblePlan& plan) {
  using json_util::json;
  json root;
  root["selected"] = plan.selected;
  root["total_time_s"] = plan.total_time_s;
  root["objective"] = plan.objective;
  return root.dump(2) + "\n";
}

EnsemblePlan parse_plan_json(std::string_view text) {
  using json_util::json;
  const json root = json_util::parse(text, "plan");
  json_util::expect_object(root, "plan");
  json_util::reject_unknown_keys(root, "plan", {"selected", "total_time_s", "objective"});
  EnsemblePlan plan;
  if (!root.contains("selected") || !root["selected"].is_array())
    json_util::schema_error("plan", "'selected' must be an array");
  for (const json& id : root["selected"]) {
    if (!id.is_string()) json_util::schema_error("plan", "ids must be strings");
    plan.selected.push_back(id.get<std::string>());
  }
  plan.total_time_s = json_util::number(root, "total_time_s", "plan");
  plan.objective = json_util::number(root, "objective", "plan");
  return plan;
}

}  // namespace hybridsim
