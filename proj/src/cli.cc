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

#include "polclone/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "polclone/imperfections.h"

namespace polclone::cli {

namespace {

constexpr double kMeasuredSbsV = 0.758;
constexpr double kMeasuredSbsH = 0.179;
constexpr double kMeasuredBsV = 0.509;
constexpr double kMeasuredBsH = 0.466;

std::string_view mode_name(FilterMode m) {
    return m == FilterMode::Ideal ? "ideal" : "realistic";
}

FilterMode parse_mode(const std::string &s) {
    if (s == "ideal") {
        return FilterMode::Ideal;
    }
    if (s == "realistic") {
        return FilterMode::Realistic;
    }
    throw std::invalid_argument("unknown mode '" + s + "' (expected ideal or realistic)");
}

std::string_view preset_name(SplitterPreset p) {
    return p == SplitterPreset::Measured ? "measured" : "design";
}

SplitterPreset parse_preset(const std::string &s) {
    if (s == "measured") {
        return SplitterPreset::Measured;
    }
    if (s == "design") {
        return SplitterPreset::Design;
    }
    throw std::invalid_argument("unknown splitter preset '" + s + "' (expected measured or design)");
}

OutputFormat parse_format(const std::string &s) {
    if (s == "csv") {
        return OutputFormat::Csv;
    }
    if (s == "json") {
        return OutputFormat::Json;
    }
    throw std::invalid_argument("unknown format '" + s + "' (expected csv or json)");
}

std::vector<double> grid_from_json(const Json &j) {
    if (j.is_string()) {
        return parse_grid(j.get<std::string>());
    }
    if (j.is_number()) {
        return {j.get<double>()};
    }
    return j.get<std::vector<double>>();
}

void check_keys(const Json &obj, std::initializer_list<std::string_view> allowed, const std::string &where) {
    if (!obj.is_object()) {
        throw std::invalid_argument("config: '" + where + "' must be an object");
    }
    for (const auto &[key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
        }
    }
}

std::vector<double> q_grid_or(const RunSpec &spec, const std::string &fallback) {
    auto grid = spec.q_grid ? *spec.q_grid : parse_grid(fallback);
    for (double q : grid) {
        if (!(q >= 0 && q <= 1)) {
            throw std::invalid_argument("q values must lie in [0, 1]");
        }
    }
    return grid;
}

void require_open(const std::vector<double> &grid) {
    for (double q : grid) {
        if (!(q > 0 && q < 1)) {
            throw std::invalid_argument("q values must lie in (0, 1) for this command");
        }
    }
}

// Rounds to `digits` significant digits.
double round_sig(double x, int digits) {
    if (!std::isfinite(x) || x == 0) {
        return x;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

Cell opt_cell(const std::optional<double> &v) {
    if (v) {
        return *v;
    }
    return std::monostate{};
}

// Mean and sample standard deviation; empty cells when undefined.
std::pair<Cell, Cell> mean_std(const std::vector<double> &v) {
    if (v.empty()) {
        return {std::monostate{}, std::monostate{}};
    }
    double m = 0;
    for (double x : v) {
        m += x / static_cast<double>(v.size());
    }
    if (v.size() < 2) {
        return {m, std::monostate{}};
    }
    double ss = 0;
    for (double x : v) {
        ss += (x - m) * (x - m);
    }
    return {m, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

}  // namespace

double RunSpec::r_v() const {
    if (reflectance_v) {
        return *reflectance_v;
    }
    if (splitter == SplitterPreset::Design) {
        return setup == SetupKind::Sbs ? kSymmetricSbsReflectanceV : 0.5;
    }
    return setup == SetupKind::Sbs ? kMeasuredSbsV : kMeasuredBsV;
}

double RunSpec::r_h() const {
    if (reflectance_h) {
        return *reflectance_h;
    }
    if (splitter == SplitterPreset::Design) {
        return setup == SetupKind::Sbs ? 1 - kSymmetricSbsReflectanceV : 0.5;
    }
    return setup == SetupKind::Sbs ? kMeasuredSbsH : kMeasuredBsH;
}

std::vector<double> parse_grid(const std::string &text) {
    auto fail = [&]() -> std::vector<double> {
        throw std::invalid_argument("bad grid '" + text + "' (expected a:b:n or a number)");
    };
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    try {
        if (parts.size() == 1) {
            size_t used = 0;
            double v = std::stod(parts[0], &used);
            if (used != parts[0].size()) {
                return fail();
            }
            return {v};
        }
        if (parts.size() != 3) {
            return fail();
        }
        double a = std::stod(parts[0]);
        double b = std::stod(parts[1]);
        int n = std::stoi(parts[2]);
        if (n < 1) {
            return fail();
        }
        if (n == 1) {
            return {a};
        }
        std::vector<double> out;
        for (int k = 0; k < n; k++) {
            out.push_back(a + (b - a) * k / (n - 1));
        }
        return out;
    } catch (const std::logic_error &) {
        return fail();
    }
}

void apply_config(RunSpec &spec, const Json &config) {
    check_keys(config,
               {"setup", "mode", "q_grid", "splitter", "imperfections", "plate", "sampling", "hom", "seed", "format"},
               "config");
    if (config.contains("setup")) {
        spec.setup = parse_setup(config["setup"].get<std::string>());
    }
    if (config.contains("mode")) {
        spec.mode = parse_mode(config["mode"].get<std::string>());
    }
    if (config.contains("q_grid")) {
        spec.q_grid = grid_from_json(config["q_grid"]);
    }
    if (config.contains("splitter")) {
        const auto &s = config["splitter"];
        check_keys(s, {"preset", "R_V", "R_H", "R_fc"}, "splitter");
        if (s.contains("preset")) {
            spec.splitter = parse_preset(s["preset"].get<std::string>());
        }
        if (s.contains("R_V")) {
            spec.reflectance_v = s["R_V"].get<double>();
        }
        if (s.contains("R_H")) {
            spec.reflectance_h = s["R_H"].get<double>();
        }
        if (s.contains("R_fc")) {
            spec.coupler_reflectance = s["R_fc"].get<double>();
        }
    }
    if (config.contains("imperfections")) {
        const auto &i = config["imperfections"];
        check_keys(i, {"overlap", "residual_phase", "ancilla_theta", "ancilla_phi"}, "imperfections");
        auto &imp = spec.imperfections;
        imp.overlap = i.value("overlap", imp.overlap);
        imp.residual_phase = i.value("residual_phase", imp.residual_phase);
        imp.ancilla = PolarizationQubit(i.value("ancilla_theta", imp.ancilla.theta),
                                        i.value("ancilla_phi", imp.ancilla.phi));
    }
    if (config.contains("plate")) {
        const auto &p = config["plate"];
        check_keys(p, {"refractive_index", "plates_per_filter", "passes_per_plate"}, "plate");
        spec.plate.refractive_index = p.value("refractive_index", spec.plate.refractive_index);
        spec.plate.plates_per_filter = p.value("plates_per_filter", spec.plate.plates_per_filter);
        spec.plate.passes_per_plate = p.value("passes_per_plate", spec.plate.passes_per_plate);
    }
    if (config.contains("sampling")) {
        const auto &s = config["sampling"];
        check_keys(s, {"pair_rate", "duration", "repetitions", "phi"}, "sampling");
        if (s.contains("pair_rate")) {
            spec.pair_rate = s["pair_rate"].get<double>();
        }
        if (s.contains("duration")) {
            spec.duration = s["duration"].get<double>();
        }
        spec.repetitions = s.value("repetitions", spec.repetitions);
        spec.input_phi = s.value("phi", spec.input_phi);
    }
    if (config.contains("hom")) {
        const auto &h = config["hom"];
        check_keys(h, {"s_grid", "reflectance"}, "hom");
        if (h.contains("s_grid")) {
            spec.s_grid = grid_from_json(h["s_grid"]);
        }
        spec.hom_reflectance = h.value("reflectance", spec.hom_reflectance);
    }
    if (config.contains("seed")) {
        spec.seed = config["seed"].get<uint64_t>();
    }
    if (config.contains("format")) {
        spec.format = parse_format(config["format"].get<std::string>());
    }
}

Json spec_to_json(const RunSpec &spec) {
    Json j;
    j["setup"] = std::string(setup_name(spec.setup));
    j["mode"] = std::string(mode_name(spec.mode));
    if (spec.q_grid) {
        j["q_grid"] = *spec.q_grid;
    }
    j["splitter"] = {{"preset", std::string(preset_name(spec.splitter))},
                     {"R_V", spec.r_v()},
                     {"R_H", spec.r_h()},
                     {"R_fc", spec.coupler_reflectance}};
    j["imperfections"] = {{"overlap", spec.imperfections.overlap},
                          {"residual_phase", spec.imperfections.residual_phase},
                          {"ancilla_theta", spec.imperfections.ancilla.theta},
                          {"ancilla_phi", spec.imperfections.ancilla.phi}};
    j["plate"] = {{"refractive_index", spec.plate.refractive_index},
                  {"plates_per_filter", spec.plate.plates_per_filter},
                  {"passes_per_plate", spec.plate.passes_per_plate}};
    Json sampling = {{"repetitions", spec.repetitions}, {"phi", spec.input_phi}};
    if (spec.pair_rate) {
        sampling["pair_rate"] = *spec.pair_rate;
    }
    if (spec.duration) {
        sampling["duration"] = *spec.duration;
    }
    j["sampling"] = sampling;
    Json hom = {{"reflectance", spec.hom_reflectance}};
    if (spec.s_grid) {
        hom["s_grid"] = *spec.s_grid;
    }
    j["hom"] = hom;
    j["seed"] = spec.seed;
    j["format"] = spec.format == OutputFormat::Csv ? "csv" : "json";
    return j;
}

SetupConfig make_setup(const RunSpec &spec, double q) {
    SetupConfig cfg;
    if (spec.setup == SetupKind::Sbs) {
        cfg = SbsConfig::for_asymmetry(q, spec.r_v(), spec.r_h());
    } else {
        cfg = HybridConfig::for_asymmetry(q, spec.r_v(), spec.r_h(), spec.coupler_reflectance);
    }
    imperfections(cfg) = spec.imperfections;
    if (spec.mode == FilterMode::Realistic) {
        cfg = with_fresnel_filters(std::move(cfg), spec.plate);
    }
    return cfg;
}

const Cell &Table::at(size_t row, const std::string &column) const {
    auto it = std::find(columns.begin(), columns.end(), column);
    if (it == columns.end()) {
        throw std::out_of_range("no column '" + column + "'");
    }
    return rows.at(row).at(static_cast<size_t>(it - columns.begin()));
}

double Table::number(size_t row, const std::string &column) const {
    const auto &c = at(row, column);
    if (const auto *d = std::get_if<double>(&c)) {
        return *d;
    }
    if (const auto *i = std::get_if<int64_t>(&c)) {
        return static_cast<double>(*i);
    }
    throw std::invalid_argument("column '" + column + "' is not numeric in row " + std::to_string(row));
}

Table cmd_frontier(const RunSpec &spec) {
    Table t{{"q", "f1_pc", "f2_pc", "p", "f1_univ", "f2_univ"}, {}};
    for (double q : q_grid_or(spec, "0:1:101")) {
        auto pc = pc_fidelities(q);
        auto u = universal_fidelities(q);
        t.rows.push_back({q, pc.f1, pc.f2, q, u.f1, u.f2});
    }
    return t;
}

Table cmd_filters(const RunSpec &spec) {
    Table t{{"q", "sigma_eta", "sigma_nu", "sigma_nu_inv", "tilt_eta", "tilt_nu", "feasible"}, {}};
    auto grid = q_grid_or(spec, "0.05:0.95:19");
    require_open(grid);
    for (double q : grid) {
        auto s = with_tilts(filter_settings(spec.setup, q, spec.r_v(), spec.r_h()), spec.plate);
        t.rows.push_back({q, s.sigma_eta, s.sigma_nu, 1 / s.sigma_nu, opt_cell(s.tilt_eta), opt_cell(s.tilt_nu),
                          int64_t{s.feasible ? 1 : 0}});
    }
    return t;
}

Table cmd_clone(const RunSpec &spec) {
    Table t{{"q", "row", "k", "phi", "f1", "f2", "p_succ", "c_pp", "c_pm", "c_mp", "c_mm", "f1_std", "f2_std"}, {}};
    auto grid = q_grid_or(spec, "0.5");
    require_open(grid);
    for (double q : grid) {
        auto cfg = make_setup(spec, q);
        double sums[5] = {0, 0, 0, 0, 0};
        std::vector<double> f1s;
        std::vector<double> f2s;
        for (int k = -4; k <= 4; k++) {
            double phi = k * std::numbers::pi / 4;
            auto o = run(PolarizationQubit::equatorial(phi), cfg);
            t.rows.push_back({q, std::string("state"), int64_t{k}, phi, o.f1, o.f2, o.success, o.c_pp, o.c_pm,
                              o.c_mp, o.c_mm, std::monostate{}, std::monostate{}});
            f1s.push_back(o.f1);
            f2s.push_back(o.f2);
            double vals[5] = {o.success, o.c_pp, o.c_pm, o.c_mp, o.c_mm};
            for (int i = 0; i < 5; i++) {
                sums[i] += vals[i] / 9;
            }
        }
        auto [m1, s1] = mean_std(f1s);
        auto [m2, s2] = mean_std(f2s);
        t.rows.push_back({q, std::string("mean"), std::monostate{}, std::monostate{}, m1, m2, sums[0], sums[1],
                          sums[2], sums[3], sums[4], s1, s2});
    }
    return t;
}

Table cmd_psucc(const RunSpec &spec) {
    Table t{{"q", "p_succ", "p_succ_closed", "feasible"}, {}};
    auto grid = q_grid_or(spec, "0.05:0.95:19");
    require_open(grid);
    for (double q : grid) {
        SetupConfig cfg;
        try {
            cfg = make_setup(spec, q);
        } catch (const InfeasibleFilterError &) {
            t.rows.push_back({q, std::monostate{}, std::monostate{}, int64_t{0}});
            continue;
        }
        auto o = run(PolarizationQubit::equatorial(0), cfg);
        double closed = std::visit(
            [](const auto &c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, SbsConfig>) {
                    return sbs_success(c.reflectance_v, c.eta(), c.nu());
                } else {
                    return hybrid_success(c.coupler_reflectance, c.reflectance_v, c.eta(), c.nu());
                }
            },
            cfg);
        t.rows.push_back({q, o.success, closed, int64_t{1}});
    }
    return t;
}

Table cmd_sample_counts(const RunSpec &spec) {
    if (!spec.pair_rate || !(*spec.pair_rate > 0)) {
        throw std::invalid_argument("sample-counts: --pair-rate must be given and positive");
    }
    if (!spec.duration || !(*spec.duration > 0)) {
        throw std::invalid_argument("sample-counts: --duration must be given and positive");
    }
    if (spec.repetitions < 1) {
        throw std::invalid_argument("sample-counts: --repetitions must be at least 1");
    }
    Table t{{"q", "row", "rep", "n_pp", "n_pm", "n_mp", "n_mm", "f1", "f2", "f1_std", "f2_std", "f1_true", "f2_true"},
            {}};
    auto grid = q_grid_or(spec, "0.5");
    require_open(grid);
    std::mt19937_64 rng(spec.seed);
    double pairs = *spec.pair_rate * *spec.duration;
    for (double q : grid) {
        auto o = run(PolarizationQubit::equatorial(spec.input_phi), make_setup(spec, q));
        double probs[4] = {o.c_pp, o.c_pm, o.c_mp, o.c_mm};
        std::vector<double> f1s;
        std::vector<double> f2s;
        for (int rep = 0; rep < spec.repetitions; rep++) {
            int64_t n[4];
            for (int c = 0; c < 4; c++) {
                std::poisson_distribution<int64_t> draw(pairs * probs[c]);
                n[c] = probs[c] > 0 ? draw(rng) : 0;
            }
            int64_t total = n[0] + n[1] + n[2] + n[3];
            Cell f1 = std::monostate{};
            Cell f2 = std::monostate{};
            if (total > 0) {
                double e1 = static_cast<double>(n[0] + n[1]) / static_cast<double>(total);
                double e2 = static_cast<double>(n[0] + n[2]) / static_cast<double>(total);
                f1s.push_back(e1);
                f2s.push_back(e2);
                f1 = e1;
                f2 = e2;
            }
            t.rows.push_back({q, std::string("rep"), int64_t{rep}, n[0], n[1], n[2], n[3], f1, f2, std::monostate{},
                              std::monostate{}, o.f1, o.f2});
        }
        auto [m1, s1] = mean_std(f1s);
        auto [m2, s2] = mean_std(f2s);
        t.rows.push_back({q, std::string("summary"), std::monostate{}, std::monostate{}, std::monostate{},
                          std::monostate{}, std::monostate{}, m1, m2, s1, s2, o.f1, o.f2});
    }
    return t;
}

Table cmd_hom(const RunSpec &spec) {
    Table t{{"s", "coincidence"}, {}};
    auto grid = spec.s_grid ? *spec.s_grid : parse_grid("0:1:11");
    for (const auto &p : hom_dip_curve(spec.hom_reflectance, grid)) {
        t.rows.push_back({p.overlap, p.coincidence});
    }
    return t;
}

std::string to_csv(const Table &table) {
    std::string out;
    for (size_t c = 0; c < table.columns.size(); c++) {
        out += (c ? "," : "") + table.columns[c];
    }
    out += "\n";
    char buf[64];
    for (const auto &row : table.rows) {
        for (size_t c = 0; c < row.size(); c++) {
            if (c) {
                out += ",";
            }
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        std::snprintf(buf, sizeof buf, "%.6g", v);
                        out += buf;
                    } else if constexpr (std::is_same_v<T, int64_t>) {
                        out += std::to_string(v);
                    } else if constexpr (std::is_same_v<T, std::string>) {
                        out += v;
                    }
                },
                row[c]);
        }
        out += "\n";
    }
    return out;
}

Json to_json(const Table &table, const RunSpec &spec) {
    Json rows = Json::array();
    for (const auto &row : table.rows) {
        Json r = Json::object();
        for (size_t c = 0; c < row.size(); c++) {
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        if (std::isfinite(v)) {
                            r[table.columns[c]] = round_sig(v, 12);
                        } else {
                            r[table.columns[c]] = nullptr;
                        }
                    } else if constexpr (std::is_same_v<T, std::monostate>) {
                        r[table.columns[c]] = nullptr;
                    } else {
                        r[table.columns[c]] = v;
                    }
                },
                row[c]);
        }
        rows.push_back(std::move(r));
    }
    Json doc;
    doc["spec"] = spec_to_json(spec);
    doc["rows"] = std::move(rows);
    return doc;
}

Table table_from_json(const Json &doc) {
    Table t;
    const auto &rows = doc.at("rows");
    for (const auto &r : rows) {
        if (t.columns.empty()) {
            for (const auto &[key, _] : r.items()) {
                t.columns.push_back(key);
            }
        }
        std::vector<Cell> row;
        for (const auto &col : t.columns) {
            const auto &v = r.at(col);
            if (v.is_null()) {
                row.emplace_back(std::monostate{});
            } else if (v.is_number_integer()) {
                row.emplace_back(v.get<int64_t>());
            } else if (v.is_number()) {
                row.emplace_back(v.get<double>());
            } else {
                row.emplace_back(v.get<std::string>());
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

// Flag values; set ones override the config file.
struct Overrides {
    std::string config;
    std::optional<std::string> setup, mode, splitter, q_grid, s_grid, format, out;
    std::optional<double> q, rv, rh, rfc, overlap, residual_phase, ancilla_theta, ancilla_phi;
    std::optional<double> glass_index, pair_rate, duration, phi, hom_r;
    std::optional<int> plates, repetitions;
    std::optional<uint64_t> seed;
};

void add_common_options(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--config", o.config, "JSON configuration file");
    cmd->add_option("--setup", o.setup, "sbs | hybrid");
    cmd->add_option("--mode", o.mode, "ideal | realistic filters");
    cmd->add_option("--splitter", o.splitter, "measured | design reflectance preset");
    cmd->add_option("--q", o.q, "single asymmetry value");
    cmd->add_option("--q-grid", o.q_grid, "asymmetry grid a:b:n");
    cmd->add_option("--rv", o.rv, "splitter V reflectance");
    cmd->add_option("--rh", o.rh, "splitter H reflectance");
    cmd->add_option("--rfc", o.rfc, "fiber coupler reflectance");
    cmd->add_option("--overlap", o.overlap, "photon overlap amplitude s");
    cmd->add_option("--residual-phase", o.residual_phase, "uncompensated phase on clone 1 (rad)");
    cmd->add_option("--ancilla-theta", o.ancilla_theta, "ancilla polar angle (rad)");
    cmd->add_option("--ancilla-phi", o.ancilla_phi, "ancilla azimuth (rad)");
    cmd->add_option("--glass-index", o.glass_index, "glass plate refractive index");
    cmd->add_option("--plates", o.plates, "glass plates per filter");
    cmd->add_option("--pair-rate", o.pair_rate, "photon pairs per second");
    cmd->add_option("--duration", o.duration, "seconds per repetition");
    cmd->add_option("--repetitions", o.repetitions, "number of repetitions");
    cmd->add_option("--phi", o.phi, "input phase for count sampling (rad)");
    cmd->add_option("--s-grid", o.s_grid, "overlap grid a:b:n");
    cmd->add_option("--hom-r", o.hom_r, "splitter reflectance for the HOM dip");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--format", o.format, "csv | json");
    cmd->add_option("--out", o.out, "output file (default stdout)");
}

RunSpec resolve(const Overrides &o) {
    RunSpec spec;
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) {
            throw std::invalid_argument("cannot open config file " + o.config);
        }
        apply_config(spec, Json::parse(in));
    }
    if (o.setup) spec.setup = parse_setup(*o.setup);
    if (o.mode) spec.mode = parse_mode(*o.mode);
    if (o.splitter) spec.splitter = parse_preset(*o.splitter);
    if (o.q_grid) spec.q_grid = parse_grid(*o.q_grid);
    if (o.q) spec.q_grid = std::vector<double>{*o.q};
    if (o.rv) spec.reflectance_v = *o.rv;
    if (o.rh) spec.reflectance_h = *o.rh;
    if (o.rfc) spec.coupler_reflectance = *o.rfc;
    if (o.overlap) spec.imperfections.overlap = *o.overlap;
    if (o.residual_phase) spec.imperfections.residual_phase = *o.residual_phase;
    if (o.ancilla_theta || o.ancilla_phi) {
        spec.imperfections.ancilla = PolarizationQubit(o.ancilla_theta.value_or(spec.imperfections.ancilla.theta),
                                                       o.ancilla_phi.value_or(spec.imperfections.ancilla.phi));
    }
    if (o.glass_index) spec.plate.refractive_index = *o.glass_index;
    if (o.plates) spec.plate.plates_per_filter = *o.plates;
    if (o.pair_rate) spec.pair_rate = *o.pair_rate;
    if (o.duration) spec.duration = *o.duration;
    if (o.repetitions) spec.repetitions = *o.repetitions;
    if (o.phi) spec.input_phi = *o.phi;
    if (o.s_grid) spec.s_grid = parse_grid(*o.s_grid);
    if (o.hom_r) spec.hom_reflectance = *o.hom_r;
    if (o.seed) spec.seed = *o.seed;
    if (o.format) spec.format = parse_format(*o.format);
    return spec;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulator for linear-optical asymmetric phase-covariant cloners"};
    app.require_subcommand(1);
    Overrides o;
    struct Command {
        const char *name;
        const char *help;
        Table (*fn)(const RunSpec &);
    };
    const Command commands[] = {
        {"frontier", "optimal phase-covariant and universal fidelity frontiers", cmd_frontier},
        {"filters", "filter transmittance ratios and plate tilts versus q", cmd_filters},
        {"clone", "simulate the cloner over the nine equatorial inputs", cmd_clone},
        {"psucc", "success probability versus q", cmd_psucc},
        {"sample-counts", "synthetic coincidence counts with fidelity estimates", cmd_sample_counts},
        {"hom", "Hong-Ou-Mandel dip versus photon overlap", cmd_hom},
    };
    std::vector<CLI::App *> subs;
    for (const auto &c : commands) {
        auto *sub = app.add_subcommand(c.name, c.help);
        add_common_options(sub, o);
        subs.push_back(sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }
    try {
        RunSpec spec = resolve(o);
        Table table;
        for (size_t k = 0; k < subs.size(); k++) {
            if (subs[k]->parsed()) {
                table = commands[k].fn(spec);
            }
        }
        std::string text = spec.format == OutputFormat::Csv ? to_csv(table) : to_json(table, spec).dump(2) + "\n";
        if (o.out) {
            std::ofstream f(*o.out, std::ios::binary);
            if (!f) {
                throw std::invalid_argument("cannot write " + *o.out);
            }
            f << text;
        } else {
            out << text;
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace polclone::cli
