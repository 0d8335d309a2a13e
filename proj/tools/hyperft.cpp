// hyperft: Fourier transforms by continued-fraction continuation of the
// defining functions, plus the two DE-type reference methods.
//
// Exit status: 0 success, 1 method failure or failed truncation check,
// 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "hyperft/hyperft.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

// Writes to --out when given, otherwise stdout.
template <class Writer>
void emit(const std::optional<std::string>& path, Writer&& write) {
    if (!path) {
        write(std::cout);
        return;
    }
    std::ofstream out(*path);
    if (!out) throw hyperft::UsageError("cannot write output file '" + *path + "'");
    write(out);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace hyperft;

    CLI::App app{"Fourier transforms of slowly decaying functions via hyperfunction continuation"};
    app.set_version_flag("--version", "hyperft 1.0.0");

    RunConfig config;
    std::string method = "hyper";
    std::string emit_format = "csv";
    const std::map<std::string, EmitFormat> formats{{"csv", EmitFormat::csv}, {"json", EmitFormat::json}};

    app.add_option("--function", config.function, "runge, tanh_pi, log_abs, abs_val or const_one")
        ->capture_default_str();
    app.add_option("--method", method, "hyper, ooura-mori or sugihara")
        ->check(CLI::IsMember({"hyper", "ooura-mori", "sugihara"}))
        ->capture_default_str();
    app.add_option("--centers", config.centers, "upper,lower center pair, e.g. +i,-i or 1+i,1-i")->capture_default_str();
    app.add_option("--digits", config.digits, "decimal digits of precision")
        ->envname("HYPERFT_DIGITS")
        ->capture_default_str();
    app.add_option("--taylor-terms", config.taylor_terms, "Taylor terms M per defining function")->capture_default_str();
    app.add_option("--depth", config.depth, "continued-fraction depth (default M)");
    app.add_option("--mesh", config.mesh, "DE mesh for unit |Im| centers (default 2.5/digits)");
    app.add_option("--quad-eps", config.quad_eps, "DE truncation threshold");
    app.add_option("--max-nodes", config.max_nodes, "DE node budget per side");
    app.add_option("--xi", config.xi, "evaluation points (repeatable)");
    app.add_option("--xi-grid", config.xi_grid, "start:stop:step, inclusive (default 0.25:4:0.25)");
    app.add_option("--om-mesh", config.om_mesh, "Ooura-Mori mesh h");
    app.add_option("--om-trunc", config.om_trunc, "Ooura-Mori truncation threshold");
    app.add_option("--sugihara-levels", config.sugihara_levels, "Sugihara extrapolation levels n_max");
    app.add_option("--emit", emit_format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--out", config.out, "output file (default stdout)");
    app.add_option("--save-transform", config.save_transform, "write the continued fractions to a file");
    app.add_option("--load-transform", config.load_transform, "evaluate a saved transform instead of building one");
    bool serial = false;
    app.add_flag("--serial", serial, "evaluate sweep points on one thread");

    auto* counts = app.add_subcommand("eval-counts", "evaluation counts for the four test functions at the standard centers");
    counts->fallthrough();

    FixtureGridConfig grid;
    std::string kind = "delta";
    auto* fixture = app.add_subcommand("fixture-grid", "real part of a defining function over a grid");
    fixture->fallthrough();
    fixture->add_option("--kind", kind, "delta or step")->check(CLI::IsMember({"delta", "step"}))->capture_default_str();
    fixture->add_option("--re", grid.re_range, "lo:hi")->capture_default_str();
    fixture->add_option("--im", grid.im_range, "lo:hi, must not contain 0")->capture_default_str();
    fixture->add_option("--n", grid.n, "points along Re")->capture_default_str();
    fixture->add_option("--m", grid.m, "points along Im")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    config.method = *parse_method(method);
    config.emit = formats.at(emit_format);
    config.concurrent = !serial;

    try {
        if (*counts) {
            const EvalCounts t = eval_counts(config);
            emit(config.out, [&](std::ostream& os) { write_eval_counts(os, t, config.emit); });
            return exit_ok;
        }
        if (*fixture) {
            grid.kind = kind == "step" ? FixtureKind::step : FixtureKind::delta;
            grid.digits = config.digits;
            const auto points = fixture_grid(grid);
            emit(config.out, [&](std::ostream& os) { write_fixture_grid(os, points, grid.digits); });
            return exit_ok;
        }

        const RunReport report = run(config);
        emit(config.out, [&](std::ostream& os) { write_rows(os, report.rows, config.emit, report.digits); });
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
        return report.ok ? exit_ok : exit_failure;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
}
