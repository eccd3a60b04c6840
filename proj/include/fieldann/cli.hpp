// Copyright 2026-present the fieldann project
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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fieldann/vecspace.hpp"

namespace fieldann {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Weight sums within this distance of 1 are rescaled; others are rejected.
inline constexpr double kWeightParseTolerance = 1e-6;

// "0.4,0.4,0.2" -> weights. Throws ParameterError on malformed text,
// non-positive entries or a sum off by more than kWeightParseTolerance.
WeightVector parse_weights(std::string_view text);
// "3,6,9" -> {3, 6, 9}; every entry must be a positive integer.
std::vector<std::size_t> parse_budgets(std::string_view text);
// One weight vector per non-empty, non-comment ('#') line.
std::vector<WeightVector> read_weight_sets(std::istream& in);

// Subcommands: gen-corpus, ingest, build, query, eval. Returns kExitOk,
// kExitUsage for bad flags or parameters, kExitData for unreadable or
// inconsistent inputs.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fieldann
