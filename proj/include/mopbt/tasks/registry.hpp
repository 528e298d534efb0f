// Copyright 2026 The mopbt Authors.
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

#pragma once

#include <algorithm>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "mopbt/tasks/task.hpp"
#include "mopbt/tasks/toy_quadratic.hpp"
#include "mopbt/tasks/zdt1.hpp"

namespace mopbt::tasks {

inline std::vector<std::string> task_names() {
  return {"toy-quadratic-mo", "toy-quadratic-3", "toy-quadratic-constrained",
          "zdt1-noisy"};
}

/// Builds a task from its JSON spec: {"name": ..., <task parameters>}.
inline std::unique_ptr<TrainableTask> make_task(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("name")) {
    throw ContractError("task spec needs a \"name\"");
  }
  const auto name = spec.at("name").get<std::string>();
  const auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : spec.items()) {
      if (key == "name") continue;
      if (std::find_if(allowed.begin(), allowed.end(),
                       [&](const char* a) { return key == a; }) == allowed.end()) {
        throw ContractError("unknown parameter \"" + key + "\" for task " + name);
      }
    }
  };
  if (name.starts_with("toy-quadratic")) {
    ToyQuadraticParams p;
    if (name == "toy-quadratic-3") p.num_objectives = 3;
    else if (name == "toy-quadratic-constrained") p.constraint_threshold = 0.0;
    else if (name != "toy-quadratic-mo") throw ContractError("unknown task: " + name);
    check_keys({"noise_sigma", "steps_per_epoch", "seconds_per_step", "weight_values",
                "lr_values", "init_scale", "constraint_threshold"});
    p.noise_sigma = spec.value("noise_sigma", p.noise_sigma);
    p.steps_per_epoch = spec.value("steps_per_epoch", p.steps_per_epoch);
    p.seconds_per_step = spec.value("seconds_per_step", p.seconds_per_step);
    p.weight_values = spec.value("weight_values", p.weight_values);
    p.lr_values = spec.value("lr_values", p.lr_values);
    p.init_scale = spec.value("init_scale", p.init_scale);
    if (spec.contains("constraint_threshold")) {
      p.constraint_threshold = spec["constraint_threshold"].get<double>();
    }
    return std::make_unique<ToyQuadraticTask>(p, name);
  }
  if (name == "zdt1-noisy") {
    check_keys({"dimensions", "values_per_dimension", "sigma0", "steps_per_epoch",
                "seconds_per_step"});
    Zdt1Params p;
    p.dimensions = spec.value("dimensions", p.dimensions);
    p.values_per_dimension = spec.value("values_per_dimension", p.values_per_dimension);
    p.sigma0 = spec.value("sigma0", p.sigma0);
    p.steps_per_epoch = spec.value("steps_per_epoch", p.steps_per_epoch);
    p.seconds_per_step = spec.value("seconds_per_step", p.seconds_per_step);
    return std::make_unique<Zdt1NoisyTask>(p);
  }
  throw ContractError("unknown task: " + name);
}

}  // namespace mopbt::tasks
