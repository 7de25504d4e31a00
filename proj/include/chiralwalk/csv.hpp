// Copyright 2026 The Chiralwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>

#include "chiralwalk/errors.hpp"

namespace chiralwalk {

/// Locale-independent float formatting: 12 significant digits, general form.
/// Identical input bits always produce identical text.
inline std::string format_float(double value) {
  std::array<char, 40> buf;
  const auto result =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 12);
  return std::string(buf.data(), result.ptr);
}

/// Builds CSV text with '#'-prefixed comment lines and '\n' endings.
/// All numeric cells go through format_float, so a fixed configuration
/// yields byte-identical output.
class CsvWriter {
 public:
  void comment(std::string_view text) {
    body_ += "# ";
    body_ += text;
    body_ += '\n';
  }

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    (append_cell(cells, first), ...);
    body_ += '\n';
  }

  const std::string& str() const { return body_; }

 private:
  void append_cell(double v, bool& first) { append_raw(format_float(v), first); }
  void append_cell(int v, bool& first) { append_raw(std::to_string(v), first); }
  void append_cell(long v, bool& first) { append_raw(std::to_string(v), first); }
  void append_cell(std::size_t v, bool& first) { append_raw(std::to_string(v), first); }
  void append_cell(bool v, bool& first) { append_raw(v ? "1" : "0", first); }
  void append_cell(std::string_view v, bool& first) { append_raw(v, first); }
  void append_cell(const std::string& v, bool& first) { append_raw(v, first); }
  void append_cell(const char* v, bool& first) { append_raw(v, first); }

  void append_raw(std::string_view text, bool& first) {
    if (!first) body_ += ',';
    first = false;
    body_ += text;
  }

  std::string body_;
};

/// Write content to path atomically: temp file in the same directory, then
/// rename over the target.
inline void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace chiralwalk
