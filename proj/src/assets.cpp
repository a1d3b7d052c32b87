// Copyright 2026 The lir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lir/assets.hpp"

#include <cstdlib>
#include <fstream>
#include <string>

#include "lir/errors.hpp"

#ifndef LIR_DEFAULT_DATA_DIR
#define LIR_DEFAULT_DATA_DIR "data"
#endif

namespace lir {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("LIR_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return LIR_DEFAULT_DATA_DIR;
}

void for_each_entry(const std::filesystem::path& path,
                    const std::function<void(std::string_view, std::string_view)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string_view view(line);
    const auto tab = view.find('\t');
    if (tab == std::string_view::npos) {
      fn(view, {});
    } else {
      fn(view.substr(0, tab), view.substr(tab + 1));
    }
  }
}

}  // namespace lir
