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

#include "kshapiq/json_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kshapiq {

std::string FormatDouble(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot serialise non-finite value");
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

void WriteValue(std::ostream& out, const nlohmann::json& v, int indent,
                int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << nlohmann::json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        WriteValue(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const auto& e) {
        return e.is_primitive();
      });
      out << '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out << (flat && indent >= 0 ? ", " : ",");
        first = false;
        if (!flat) newline(depth + 1);
        WriteValue(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << ']';
      return;
    }
    case nlohmann::json::value_t::number_float:
      out << FormatDouble(v.get<double>());
      return;
    default:
      out << v.dump();
      return;
  }
}

}  // namespace

void WriteJson(std::ostream& out, const nlohmann::json& value, int indent) {
  WriteValue(out, value, indent, 0);
}

std::string DumpJson(const nlohmann::json& value, int indent) {
  std::ostringstream os;
  WriteJson(os, value, indent);
  return os.str();
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string() + " for reading");
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path.string() + ": " +
                                e.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path,
                   const nlohmann::json& value) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  WriteJson(out, value);
  out << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace kshapiq
