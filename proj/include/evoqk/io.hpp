// Copyright 2025-2026 The evoqk developers.
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

#include <filesystem>
#include <string>

namespace evoqk {

// Shortest decimal representation that parses back to exactly `value`.
std::string format_double(double value);

// Fixed 17 significant digits, for formats that pin the width.
std::string format_double17(double value);

std::string read_text_file(const std::filesystem::path& path);

// Writes to a temporary sibling file and renames it into place, so an
// interrupted run never leaves a truncated artifact behind.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace evoqk
