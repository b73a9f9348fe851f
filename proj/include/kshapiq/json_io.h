// Copyright 2026 The kshapiq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KSHAPIQ_JSON_IO_H_
#define KSHAPIQ_JSON_IO_H_

#include <filesystem>
#include <ostream>
#include <string>

#include "json.hpp"

namespace kshapiq {

// "%.17g"; throws std::invalid_argument for NaN or infinity.
std::string FormatDouble(double value);

// Serialises `value` with every floating-point number printed to 17
// significant digits, so output is byte-stable and round-trips exactly.
void WriteJson(std::ostream& out, const nlohmann::json& value, int indent = 2);
std::string DumpJson(const nlohmann::json& value, int indent = 2);

// Throws std::runtime_error if the file cannot be opened and
// std::invalid_argument if it is not valid JSON.
nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path,
                   const nlohmann::json& value);

}  // namespace kshapiq

#endif  // KSHAPIQ_JSON_IO_H_
