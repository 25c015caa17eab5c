// Copyright 2026 The QRAC Authors
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

// Serialization helpers shared by every exported artifact: floats are
// always written with 17 significant digits in the C locale, and files are
// written to a temporary sibling and renamed into place.

#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

namespace qrac {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("format_double: non-finite value");
  if (v == 0.0) return "0";  // folds -0
  return fmt::format("{:.17g}", v);
}

namespace detail {

inline void dump_json_to(const ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case ordered_json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ',';
          out += nl;
        }
        first = false;
        out += pad;
        out += ordered_json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_json_to(it.value(), out, indent, depth + 1);
      }
      out += nl;
      out += close_pad;
      out += '}';
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ',';
          out += nl;
        }
        out += pad;
        dump_json_to(j[i], out, indent, depth + 1);
      }
      out += nl;
      out += close_pad;
      out += ']';
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// Like ordered_json::dump, but floats use 17 significant digits.
inline std::string dump_json(const ordered_json& j, int indent = 2) {
  std::string out;
  detail::dump_json_to(j, out, indent, 0);
  return out;
}

inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << contents;
    if (!f.flush()) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qrac
