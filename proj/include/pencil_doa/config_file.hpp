// SPDX-License-Identifier: Apache-2.0
//
// pencil-doa: matrix-pencil direction-of-arrival estimation for fully-digital
// and hybrid analog/digital uniform linear arrays.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef PENCIL_DOA_CONFIG_FILE_HPP
#define PENCIL_DOA_CONFIG_FILE_HPP

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "pencil_doa/harness.hpp"

namespace pencil_doa
{
    // Flat "key = value" text. '#' starts a comment, lists are comma separated.
    using KeyValues = std::vector<std::pair<std::string, std::string>>;

    KeyValues parse_key_values(std::istream &is, const std::string &source = "<input>");

    /// Keys accept either snake_case or kebab-case spelling.
    void apply_setting(ExperimentConfig &cfg, const std::string &key, const std::string &value);

    ExperimentConfig load_config(const std::string &path, ExperimentConfig base = {});

    std::vector<std::string> config_keys();

    std::string to_config_text(const ExperimentConfig &cfg);

} // namespace pencil_doa

#endif
