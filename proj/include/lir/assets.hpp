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

#pragma once

#include <filesystem>
#include <functional>
#include <string_view>

namespace lir {

/// Root of the bundled assets: $LIR_DATA_DIR if set, else the build-time default.
std::filesystem::path data_dir();

/// Streams a `surface<TAB>field field ...` asset. Blank lines and lines
/// starting with '#' are skipped; `fields` is empty for single-column lines.
/// Throws IoFailure when the file cannot be opened.
void for_each_entry(const std::filesystem::path& path,
                    const std::function<void(std::string_view surface, std::string_view fields)>& fn);

}  // namespace lir
