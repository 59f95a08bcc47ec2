// teich: surfaces, move words, verification suites and the quantum dilogarithm.

#include "teich/json_io.hpp"
#include "teich/qdilog.hpp"
#include "teich/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using teich::json_io::Json;

// Explicit path, else $TEICH_OUT_DIR/<fallback>, else stdout.
void emit(const std::string& text, const std::string& out, const std::string& fallback) {
    std::string path = out;
    if (path.empty())
        if (const char* dir = std::getenv("TEICH_OUT_DIR"); dir && *dir) path = (std::filesystem::path(dir) / fallback).string();
    if (path.empty()) {
        std::cout << text;
        return;
    }
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
    std::cerr << "wrote " << path << "\n";
}

Json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

teich::qdilog::Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(text), 0};
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("z must be RE,IM");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decorated Teichmuller coordinates and their quantization"};
    app.require_subcommand(1);
    std::string out;

    // surface
    auto* surface = app.add_subcommand("surface", "build the standard triangulation of a punctured surface");
    int genus = 1, punctures = 1;
    surface->add_option("-g,--genus", genus, "genus")->required();
    surface->add_option("-s,--punctures", punctures, "number of punctures")->required();
    surface->add_option("-o,--out", out, "output path");

    // moves
    auto* moves = app.add_subcommand("moves", "apply a move word and transport coordinates");
    std::string tri_path, word_path, penner_path, kashaev_path;
    std::uint64_t seed = 7;
    moves->add_option("triangulation", tri_path, "triangulation JSON")->required();
    moves->add_option("word", word_path, "move word JSON")->required();
    moves->add_option("--penner", penner_path, "edge values JSON (random if absent)");
    moves->add_option("--kashaev", kashaev_path, "triangle values JSON (random if absent)");
    moves->add_option("--seed", seed, "seed for random points");
    moves->add_option("-o,--out", out, "output path");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    teich::verify::SuiteOptions opts;
    std::string grid_text = "-5:5:0.25";
    int criterion = 0;
    bool timing = false;
    verify->add_option("suite", suite, "classical | quantum-compact | qdilog | all | acceptance")->required();
    verify->add_option("-g,--genus", opts.genus, "genus");
    verify->add_option("-s,--punctures", opts.punctures, "number of punctures");
    verify->add_option("--seed", opts.seed, "sampler seed");
    verify->add_option("--samples", opts.samples, "random points per property");
    verify->add_option("--N", opts.N, "roots of unity orders")->delimiter(',');
    verify->add_option("--hbar", opts.hbar, "Planck constants")->delimiter(',');
    verify->add_option("--grid", grid_text, "x grid lo:hi:step");
    verify->add_option("--criterion", criterion, "acceptance criterion (1-11)");
    verify->add_flag("--timing", timing, "include the runtime in the report");
    verify->add_option("-o,--out", out, "output path");

    // qdilog
    auto* qd = app.add_subcommand("qdilog", "non-compact quantum dilogarithm");
    qd->require_subcommand(1);
    teich::qdilog::Params params;
    std::string z_text = "0,0";
    std::string format;
    auto* eval = qd->add_subcommand("eval", "evaluate psi(z)");
    eval->add_option("--hbar", params.hbar, "Planck constant")->required();
    eval->add_option("--z", z_text, "RE,IM")->required();
    eval->add_option("--delta", params.delta, "contour offset");
    eval->add_option("--tol", params.tol, "relative tolerance");
    eval->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    eval->add_option("-o,--out", out, "output path");
    auto* qverify = qd->add_subcommand("verify", "tabulate psi and the functional equation residual");
    std::string qgrid = "-5:5:0.25";
    qverify->add_option("--hbar", params.hbar, "Planck constant")->required();
    qverify->add_option("--grid", qgrid, "lo:hi:step");
    qverify->add_option("--tol", params.tol, "relative tolerance");
    qverify->add_option("--format", format, "csv | json")->check(CLI::IsMember({"json", "csv"}));
    qverify->add_option("-o,--out", out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (surface->parsed()) {
            const auto d = teich::new_surface(genus, punctures);
            emit(teich::json_io::to_json(d).dump(2) + "\n", out,
                 "surface_g" + std::to_string(genus) + "_s" + std::to_string(punctures) + ".json");
            return 0;
        }
        if (moves->parsed()) {
            const auto d = teich::json_io::triangulation_from_json(read_json(tri_path));
            const auto word = teich::json_io::word_from_json(read_json(word_path));
            teich::RationalSampler rng(seed);
            const auto p = penner_path.empty() ? teich::random_penner(d, rng)
                                               : teich::json_io::penner_from_json(read_json(penner_path));
            const auto k = kashaev_path.empty() ? teich::kashaev_from_penner(d, p)
                                                : teich::json_io::kashaev_from_json(read_json(kashaev_path));
            const auto end = teich::apply_word(d, word);
            Json j;
            j["triangulation"] = teich::json_io::to_json(end);
            j["penner"] = {{"before", teich::json_io::to_json(p)},
                           {"after", teich::json_io::to_json(teich::transport(d, p, word))}};
            j["kashaev"] = {{"before", teich::json_io::to_json(k)},
                            {"after", teich::json_io::to_json(teich::transport(d, k, word))}};
            emit(j.dump(2) + "\n", out, "moves.json");
            return 0;
        }
        if (verify->parsed()) {
            const auto& names = teich::verify::suite_names();
            if (suite != "acceptance" && std::find(names.begin(), names.end(), suite) == names.end()) {
                std::cerr << "unknown suite '" << suite
                          << "'; expected classical, quantum-compact, qdilog, all or acceptance\n"
                          << verify->help();
                return 2;
            }
            opts.grid = teich::qdilog::parse_grid(grid_text);
            const auto start = std::chrono::steady_clock::now();
            teich::verify::VerificationReport report;
            if (suite == "acceptance") {
                if (criterion == 0) {
                    report.suite = "acceptance";
                    report.seed = opts.seed;
                    for (const auto& c : teich::verify::acceptance_criteria())
                        report.append(teich::verify::run_criterion(c.id, opts.seed), "criterion_" + std::to_string(c.id));
                } else {
                    report = teich::verify::run_criterion(criterion, opts.seed);
                }
            } else {
                report = teich::verify::run_suite(suite, opts);
            }
            if (timing)
                report.runtime_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            emit(report.to_json().dump(2) + "\n", out, "verify_" + suite + ".json");
            return report.passed() ? 0 : 1;
        }
        if (eval->parsed()) {
            const auto z = parse_complex(z_text);
            const auto v = teich::qdilog::psi(z, params);
            std::ostringstream s;
            s.precision(17);
            if (format == "csv") {
                s << "re_z,im_z,re_psi,im_psi,abs_psi\n"
                  << z.real() << "," << z.imag() << "," << v.real() << "," << v.imag() << "," << std::abs(v) << "\n";
            } else {
                Json j{{"hbar", params.hbar}, {"delta", params.effective_delta()}, {"z", {z.real(), z.imag()}},
                       {"psi", {v.real(), v.imag()}}, {"abs", std::abs(v)}};
                s << j.dump(2) << "\n";
            }
            emit(s.str(), out, format == "csv" ? "qdilog_eval.csv" : "qdilog_eval.json");
            return 0;
        }
        if (qverify->parsed()) {
            const auto rows = teich::qdilog::tabulate(teich::qdilog::parse_grid(qgrid), params);
            bool ok = true;
            for (const auto& r : rows) ok = ok && r.residual <= 1e-8 && std::abs(r.modulus - 1) <= 1e-8;
            if (format == "json") {
                Json table = Json::array();
                for (const auto& r : rows)
                    table.push_back({{"x", r.x}, {"re", r.value.real()}, {"im", r.value.imag()}, {"abs", r.modulus},
                                     {"residual", r.residual}});
                emit(Json{{"hbar", params.hbar}, {"rows", table}, {"passed", ok}}.dump(2) + "\n", out, "qdilog_table.json");
            } else {
                emit(teich::qdilog::to_csv(rows), out, "qdilog_table.csv");
            }
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
