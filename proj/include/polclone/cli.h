// Copyright 2026 The polclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLCLONE_CLI_H
#define POLCLONE_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "polclone/cloner.h"
#include "polclone/elements.h"
#include "polclone/theory.h"

namespace polclone::cli {

using Json = nlohmann::ordered_json;

enum class FilterMode { Ideal, Realistic };
enum class OutputFormat { Csv, Json };
/// Splitter reflectance preset used when R values are not given explicitly.
enum class SplitterPreset { Measured, Design };

struct RunSpec {
    SetupKind setup = SetupKind::Sbs;
    FilterMode mode = FilterMode::Ideal;
    SplitterPreset splitter = SplitterPreset::Measured;
    std::optional<std::vector<double>> q_grid;
    std::optional<double> reflectance_v;
    std::optional<double> reflectance_h;
    double coupler_reflectance = 0.5;
    ImperfectionParams imperfections;
    FresnelPlate plate;
    // Count sampling.
    std::optional<double> pair_rate;  // pairs per second
    std::optional<double> duration;   // seconds per repetition
    int repetitions = 10;
    double input_phi = 0;
    // HOM dip.
    std::optional<std::vector<double>> s_grid;
    double hom_reflectance = 0.5;

    uint64_t seed = 1;
    OutputFormat format = OutputFormat::Csv;

    double r_v() const;
    double r_h() const;
};

/// Parses "a:b:n" (n points, both ends included) or a single number.
std::vector<double> parse_grid(const std::string &text);

/// Overlays values from a (nested) JSON config object onto `spec`.
void apply_config(RunSpec &spec, const Json &config);
Json spec_to_json(const RunSpec &spec);

/// Builds the setup config for one asymmetry, including imperfections and
/// Fresnel filters in realistic mode.
SetupConfig make_setup(const RunSpec &spec, double q);

using Cell = std::variant<std::monostate, double, int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Column lookup on one row; throws std::out_of_range.
    const Cell &at(size_t row, const std::string &column) const;
    double number(size_t row, const std::string &column) const;
};

Table cmd_frontier(const RunSpec &spec);
Table cmd_filters(const RunSpec &spec);
Table cmd_clone(const RunSpec &spec);
Table cmd_psucc(const RunSpec &spec);
Table cmd_sample_counts(const RunSpec &spec);
Table cmd_hom(const RunSpec &spec);

/// Header row plus one line per row; 6 significant digits, LF endings.
std::string to_csv(const Table &table);
/// {"spec": ..., "rows": [{column: value}, ...]}; 12 significant digits.
Json to_json(const Table &table, const RunSpec &spec);
Table table_from_json(const Json &doc);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace polclone::cli

#endif
