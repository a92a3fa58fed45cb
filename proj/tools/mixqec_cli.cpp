// Copyright 2026 The mixqec Authors
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

// mixqec command-line front end. Talks to the library only through mixqec.h.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixqec/mixqec.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitPropertyFailure = 2;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(mixqec_status s) {
    if (s != MIXQEC_OK) {
        throw CliError(std::string(mixqec_status_name(s)) + ": " + mixqec_last_error());
    }
}

struct CodeDeleter {
    void operator()(mixqec_code *c) const { mixqec_code_destroy(c); }
};
struct TextDeleter {
    void operator()(mixqec_text *t) const { mixqec_text_destroy(t); }
};
struct PolyDeleter {
    void operator()(mixqec_poly *p) const { mixqec_poly_destroy(p); }
};
struct OptDeleter {
    void operator()(mixqec_opt_result *r) const { mixqec_opt_result_destroy(r); }
};
using CodePtr = std::unique_ptr<mixqec_code, CodeDeleter>;
using TextPtr = std::unique_ptr<mixqec_text, TextDeleter>;
using PolyPtr = std::unique_ptr<mixqec_poly, PolyDeleter>;
using OptPtr = std::unique_ptr<mixqec_opt_result, OptDeleter>;

std::string take(mixqec_text *t) {
    TextPtr owned(t);
    return std::string(mixqec_text_data(t), mixqec_text_size(t));
}

struct Config {
    std::vector<std::string> codes;
    std::string channel;
    std::string augment = "none";
    std::vector<std::string> augment_values;
    std::optional<double> p;
    std::optional<double> q;
    std::string p_grid;
    int max_order = 1;
    std::string format;
    std::string out;
    std::optional<uint64_t> seed;
    int workers = 1;
    int restarts = 8;
    int oracle_points = 20;
    bool inject_corruption = false;
};

// Maps a base label plus --augment mode onto a library label.
std::string resolve_label(const std::string &code, const std::string &mode) {
    if (mode != "none" && mode != "on" && mode != "top" && mode != "full") {
        throw CliError("--augment must be one of none, on, top, full");
    }
    if (code == "concat3") {
        if (mode == "none") return "concat3-unaug";
        if (mode == "top") return "concat3-top";
        return "concat3-full";
    }
    bool already = code.ends_with("+aug") || code == "concat3-top" || code == "concat3-full";
    if (mode == "none" || already || code == "concat3-unaug") {
        if (mode != "none" && code == "concat3-unaug") {
            throw CliError("use --code concat3 with --augment top or full to pick a concatenated variant");
        }
        return code;
    }
    if (mode == "top") {
        throw CliError("--augment top only applies to concat3");
    }
    return code + "+aug";
}

CodePtr open_code(const std::string &label, const Config &cfg) {
    mixqec_code *raw = nullptr;
    check(mixqec_code_create(resolve_label(label, cfg.augment).c_str(), &raw));
    CodePtr code(raw);
    if (!cfg.channel.empty()) {
        mixqec_channel ch;
        if (cfg.channel == "bitflip") {
            ch = MIXQEC_BITFLIP;
        } else if (cfg.channel == "depolarizing") {
            ch = MIXQEC_DEPOLARIZING;
        } else {
            throw CliError("--channel must be bitflip or depolarizing");
        }
        check(mixqec_code_set_channel(code.get(), ch));
    }
    check(mixqec_code_set_workers(code.get(), cfg.workers));
    return code;
}

std::string code_label(const mixqec_code *code) {
    size_t needed = 0;
    check(mixqec_code_label(code, nullptr, 0, &needed));
    std::string s(needed, '\0');
    check(mixqec_code_label(code, s.data(), s.size(), nullptr));
    s.resize(needed - 1);
    return s;
}

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw CliError("cannot open '" + path + "' for writing");
    }
    f << text;
}

std::vector<double> grid_from(const Config &cfg) {
    if (!cfg.p_grid.empty() && cfg.p) {
        throw CliError("give either --p or --p-grid, not both");
    }
    if (cfg.p) {
        return {*cfg.p};
    }
    if (cfg.p_grid.empty()) {
        throw CliError("--p or --p-grid is required");
    }
    size_t count = 0;
    check(mixqec_parse_grid(cfg.p_grid.c_str(), nullptr, 0, &count));
    std::vector<double> grid(count);
    check(mixqec_parse_grid(cfg.p_grid.c_str(), grid.data(), grid.size(), &count));
    return grid;
}

std::string coefficient_csv(const nlohmann::json &table) {
    std::string out = "code,k,q_pow,coeff\n";
    char buf[64];
    for (const auto &c : table["coefficients"]) {
        for (const auto &t : c["terms"]) {
            std::snprintf(buf, sizeof(buf), ",%d,%d,%.17g\n", c["k"].get<int>(), t["q_pow"].get<int>(),
                          t["coeff"].get<double>());
            out += table["code"].get<std::string>() + buf;
        }
    }
    return out;
}

int cmd_coeffs(const Config &cfg) {
    std::string format = cfg.format.empty() ? "json" : cfg.format;
    if (format != "json" && format != "csv") {
        throw CliError("--format must be json or csv");
    }
    if (cfg.codes.size() != 1) {
        throw CliError("coeffs takes exactly one --code");
    }
    CodePtr code = open_code(cfg.codes[0], cfg);
    std::string json = take([&] {
        mixqec_text *t = nullptr;
        check(mixqec_coefficient_table_json(code.get(), cfg.max_order, &t));
        return t;
    }());
    emit(format == "json" ? json : coefficient_csv(nlohmann::json::parse(json)), cfg.out);
    return kExitOk;
}

int cmd_tolerable_q(const Config &cfg) {
    std::string format = cfg.format.empty() ? "csv" : cfg.format;
    if (format != "csv" && format != "json") {
        throw CliError("--format must be csv or json");
    }
    if (cfg.codes.empty()) {
        throw CliError("at least one --code is required");
    }
    std::vector<double> grid = grid_from(cfg);
    std::vector<CodePtr> codes;
    std::vector<mixqec_code *> raw;
    for (const auto &c : cfg.codes) {
        codes.push_back(open_code(c, cfg));
        raw.push_back(codes.back().get());
    }
    if (format == "csv") {
        mixqec_text *t = nullptr;
        check(mixqec_curves_csv(raw.data(), raw.size(), grid.data(), grid.size(), cfg.workers, &t));
        emit(take(t), cfg.out);
        return kExitOk;
    }
    nlohmann::json curves = nlohmann::json::array();
    for (auto *code : raw) {
        std::vector<double> qs(grid.size());
        check(mixqec_curve_sweep(code, grid.data(), grid.size(), cfg.workers, qs.data()));
        nlohmann::json samples = nlohmann::json::array();
        for (size_t i = 0; i < grid.size(); i++) {
            samples.push_back({{"p", grid[i]}, {"q_star", qs[i]}});
        }
        curves.push_back({{"code", code_label(code)}, {"resolution", 1e-6}, {"samples", samples}});
    }
    emit(curves.dump(2) + "\n", cfg.out);
    return kExitOk;
}

int cmd_eval(const Config &cfg) {
    if (cfg.codes.size() != 1 || !cfg.p || !cfg.q) {
        throw CliError("eval needs one --code, --p and --q");
    }
    CodePtr code = open_code(cfg.codes[0], cfg);
    mixqec_poly *raw = nullptr;
    check(mixqec_code_fidelity(code.get(), &raw));
    PolyPtr poly(raw);
    double f = 0, oracle = 0, base = 0;
    int useful = 0;
    mixqec_channel ch;
    check(mixqec_code_info(code.get(), nullptr, nullptr, &ch));
    check(mixqec_poly_eval(poly.get(), *cfg.p, *cfg.q, &f));
    check(mixqec_oracle_fidelity(code.get(), *cfg.p, *cfg.q, &oracle));
    check(mixqec_baseline(ch, *cfg.p, &base));
    check(mixqec_usefulness(code.get(), *cfg.p, *cfg.q, &useful));
    nlohmann::json j = {{"code", code_label(code.get())},
                        {"p", *cfg.p},
                        {"q", *cfg.q},
                        {"fidelity", f},
                        {"oracle_fidelity", oracle},
                        {"baseline", base},
                        {"useful", useful != 0}};
    emit(j.dump(2) + "\n", cfg.out);
    return kExitOk;
}

void print_property(const char *name, int passed, const char *detail, void *) {
    std::printf("%s %s (%s)\n", passed ? "PASS" : "FAIL", name, detail);
    std::fflush(stdout);
}

int cmd_verify(const Config &cfg) {
    mixqec_verify_options o;
    mixqec_verify_options_default(&o);
    o.oracle_points = cfg.oracle_points;
    o.workers = cfg.workers;
    o.inject_corruption = cfg.inject_corruption ? 1 : 0;
    if (cfg.seed) {
        o.seed = *cfg.seed;
    }
    int all = 0;
    check(mixqec_verify(&o, print_property, nullptr, &all));
    std::printf("%s\n", all ? "all properties hold" : "property failures detected");
    return all ? kExitOk : kExitPropertyFailure;
}

int cmd_optimize(const Config &cfg) {
    if (cfg.codes.size() != 1 || !cfg.p || !cfg.q) {
        throw CliError("optimize needs one --code, --p and --q");
    }
    if (cfg.restarts < 1) {
        throw CliError("--restarts must be at least 1");
    }
    if (cfg.augment != "none") {
        throw CliError("optimize works on the unaugmented code; drop --augment");
    }
    CodePtr code = open_code(cfg.codes[0], cfg);
    mixqec_opt_options o;
    mixqec_opt_options_default(&o);
    o.restarts = cfg.restarts;
    if (cfg.seed) {
        o.seed = *cfg.seed;
    }
    o.workers = cfg.workers;
    mixqec_opt_result *raw = nullptr;
    check(mixqec_optimize(code.get(), *cfg.p, *cfg.q, &o, &raw));
    OptPtr result(raw);
    mixqec_text *t = nullptr;
    check(mixqec_opt_result_json(result.get(), &t));
    emit(take(t), cfg.out);
    return kExitOk;
}

int cmd_report(const Config &cfg) {
    if (cfg.out.empty()) {
        throw CliError("report needs --out DIR");
    }
    std::filesystem::create_directories(cfg.out);
    std::filesystem::path dir(cfg.out);
    Config base = cfg;
    base.augment = "none";
    base.out.clear();
    base.channel.clear();
    base.p.reset();
    if (base.p_grid.empty()) {
        base.p_grid = "0.0001:0.3:50";
    }
    std::vector<double> grid = grid_from(base);

    const std::vector<std::pair<std::string, std::vector<std::string>>> tables = {
        {"table1", {"rep3", "rep3+aug", "rep5", "rep5+aug", "rep7", "rep7+aug", "rep9", "rep9+aug"}},
        {"table2", {"perfect5", "perfect5+aug"}},
        {"table3", {"concat3-unaug", "concat3-top", "concat3-full"}},
    };
    const std::vector<std::pair<std::string, std::vector<std::string>>> figures = {
        {"fig3", {"rep3", "rep3+aug", "rep5", "rep5+aug", "rep7", "rep7+aug", "rep9", "rep9+aug"}},
        {"fig4", {"perfect5", "perfect5+aug"}},
        {"fig5", {"concat3-unaug", "concat3-top", "concat3-full", "rep3", "rep3+aug"}},
    };
    for (const auto &[name, labels] : tables) {
        nlohmann::json all = nlohmann::json::array();
        for (const auto &label : labels) {
            CodePtr code = open_code(label, base);
            mixqec_text *t = nullptr;
            check(mixqec_coefficient_table_json(code.get(), cfg.max_order, &t));
            all.push_back(nlohmann::json::parse(take(t)));
        }
        emit(all.dump(2) + "\n", (dir / (name + ".json")).string());
    }
    for (const auto &[name, labels] : figures) {
        std::vector<CodePtr> codes;
        std::vector<mixqec_code *> raw;
        for (const auto &label : labels) {
            codes.push_back(open_code(label, base));
            raw.push_back(codes.back().get());
        }
        mixqec_text *t = nullptr;
        check(mixqec_curves_csv(raw.data(), raw.size(), grid.data(), grid.size(), cfg.workers, &t));
        emit(take(t), (dir / (name + ".csv")).string());
    }
    std::printf("wrote table1-3.json and fig3-5.csv to %s\n", cfg.out.c_str());
    return kExitOk;
}

void add_code_options(CLI::App *cmd, Config &cfg, bool many) {
    if (many) {
        cmd->add_option("--code", cfg.codes, "Code label (repeatable)")->required();
    } else {
        cmd->add_option("--code", cfg.codes, "Code label")->required()->expected(1);
    }
    cmd->add_option("--augment", cfg.augment_values, "Augmentation: none, on, top, full (bare flag means on)")
        ->expected(0, 1);
    cmd->add_option("--channel", cfg.channel, "Main error channel: bitflip or depolarizing");
}

}  // namespace

int main(int argc, char **argv) {
    Config cfg;
    CLI::App app{"Error-correction fidelity with mixed-state ancillas"};
    app.set_version_flag("--version", std::string(mixqec_version()));
    app.require_subcommand(1);

    auto *coeffs = app.add_subcommand("coeffs", "Fidelity coefficients c_k(q) of a code");
    add_code_options(coeffs, cfg, false);
    coeffs->add_option("--max-order", cfg.max_order, "Largest power of p to report")->check(CLI::NonNegativeNumber);
    coeffs->add_option("--format", cfg.format, "json or csv");
    coeffs->add_option("--out", cfg.out, "Output file (default stdout)");
    coeffs->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);

    auto *tol = app.add_subcommand("tolerable-q", "Largest tolerable ancilla noise q* per p");
    add_code_options(tol, cfg, true);
    tol->add_option("--p", cfg.p, "Single p value");
    tol->add_option("--p-grid", cfg.p_grid, "Grid start:stop:count");
    tol->add_option("--format", cfg.format, "csv or json");
    tol->add_option("--out", cfg.out, "Output file (default stdout)");
    tol->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);

    auto *eval = app.add_subcommand("eval", "Fidelity, oracle fidelity and baseline at one point");
    add_code_options(eval, cfg, false);
    eval->add_option("--p", cfg.p, "Main error parameter")->required();
    eval->add_option("--q", cfg.q, "Ancilla noise parameter")->required();
    eval->add_option("--out", cfg.out, "Output file (default stdout)");

    auto *verify = app.add_subcommand("verify", "Run the property suites");
    verify->add_option("--seed", cfg.seed, "Seed for oracle sample points");
    verify->add_option("--oracle-points", cfg.oracle_points, "Oracle points per code")->check(CLI::NonNegativeNumber);
    verify->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    verify->add_flag("--inject-corruption", cfg.inject_corruption, "Swap in a broken rep3+aug (negative control)");

    auto *opt = app.add_subcommand("optimize", "Optimize the controlled-unitary encoder prefix");
    add_code_options(opt, cfg, false);
    opt->add_option("--p", cfg.p, "Main error parameter")->required();
    opt->add_option("--q", cfg.q, "Ancilla noise parameter")->required();
    opt->add_option("--restarts", cfg.restarts, "Number of restarts");
    opt->add_option("--seed", cfg.seed, "Seed for random restarts");
    opt->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    opt->add_option("--out", cfg.out, "Output file (default stdout)");

    auto *report = app.add_subcommand("report", "Write every table and curve dataset into a directory");
    report->add_option("--out", cfg.out, "Output directory")->required();
    report->add_option("--p-grid", cfg.p_grid, "Grid start:stop:count (default 0.0001:0.3:50)");
    report->add_option("--max-order", cfg.max_order, "Largest power of p to report")->check(CLI::NonNegativeNumber);
    report->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalid;
    }
    for (auto *cmd : {coeffs, tol, eval, opt}) {
        if (cmd->parsed() && cmd->count("--augment") > 0) {
            cfg.augment = (cfg.augment_values.empty() || cfg.augment_values.front().empty()) ? "on" : cfg.augment_values.front();
        }
    }

    try {
        if (coeffs->parsed()) return cmd_coeffs(cfg);
        if (tol->parsed()) return cmd_tolerable_q(cfg);
        if (eval->parsed()) return cmd_eval(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (opt->parsed()) return cmd_optimize(cfg);
        if (report->parsed()) return cmd_report(cfg);
    } catch (const CliError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
