// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "mmwsim/scene.hpp"

namespace mmwsim {

/// Parses a scene description in TOML (subset: [section], key = value with
/// number / boolean / string / number-array / inline-table-array values,
/// '#' comments). Diagnostics carry "file:line:" prefixes and key names.
Scene load_scene_toml(const std::string& path);

/// Same, from an in-memory string; `name` is used in diagnostics.
Scene parse_scene_toml(const std::string& text, const std::string& name = "<string>");

/// Serializes a scene to the same schema (round-trips through the parser).
std::string scene_to_toml(const Scene& scene);

void save_scene_toml(const std::string& path, const Scene& scene);

}  // namespace mmwsim
