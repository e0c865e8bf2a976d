#include "fermatk/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fermatk/report.hpp"

namespace fermatk {

namespace {

int write_output(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err)
{
    if (path.empty()) {
        out << text;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        err << "error: cannot write " << path << "\n";
        return 2;
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Modular-method elimination for Fermat's equation over Q(i), Q(sqrt(-2)), Q(sqrt(-7))", "fermatk"};
    app.require_subcommand(1);

    int d = 0;
    std::string data = "bundled", format = "text", out_path;
    std::int64_t aux_bound = 50;
    bool explain = false;

    auto* levels = app.add_subcommand("levels", "predicted Serre levels at the primes over 2, with the local audit");
    auto* bound = app.add_subcommand("bound", "irreducibility threshold and its case table");
    auto* pipeline = app.add_subcommand("pipeline", "run the elimination pipeline on a newform dataset");
    for (auto* sc : {levels, bound, pipeline}) {
        sc->add_option("--field", d, "d in {-1, -2, -7}")->required();
        sc->add_option("--out", out_path, "write output to this file");
    }
    bound->add_flag("--explain", explain, "print the case table");
    pipeline->add_flag("--explain", explain, "print per-prime elimination steps");
    pipeline->add_option("--data", data, "newform file, or 'bundled'");
    pipeline->add_option("--aux-bound", aux_bound, "norm bound for auxiliary primes")
        ->check(CLI::PositiveNumber);
    pipeline->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        QuadraticField K = QuadraticField::make(d);
        if (levels->parsed())
            return write_output(levels_to_text(predicted_levels(K)), out_path, out, err);
        if (bound->parsed())
            return write_output(irreducibility_to_text(K, irreducibility_threshold(K), explain), out_path, out,
                                err);

        NewformDataset ds = load_newform_file(data == "bundled" ? bundled_newform_path(d) : data);
        PipelineConfig config;
        config.aux_bound = aux_bound;
        EliminationReport rep = run_pipeline(K, ds, config);
        std::string text = format == "json" ? report_to_json(rep) : report_to_text(rep, explain);
        if (int rc = write_output(text, out_path, out, err))
            return rc;
        return rep.all_eliminated && rep.final_threshold == expected_final_threshold(d) ? 0 : 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace fermatk
