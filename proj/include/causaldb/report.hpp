/*
 * Copyright (c) 2026 The causaldb Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <json.hpp>

#include "causaldb/analytics.hpp"

namespace causaldb {

/// Summary as JSON with a fixed key order. Numbers are full precision; the
/// "display" object repeats them rounded to 4 decimals (tail_ratio to 1).
nlohmann::ordered_json summary_json(const AtlasSummary& summary);

/// summary_json(atlas_summary(atlas)). Propagates DegenerateAtlas.
nlohmann::ordered_json stats_report(const Atlas& atlas);

/// Inverse of summary_json; ignores "display". Throws FormatError.
AtlasSummary summary_from_json(const nlohmann::json& j);

}  // namespace causaldb
