#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "netprice/errors.hpp"
#include "netprice/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string spec_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> jobs;
};

netprice::RunSpec load_spec(const CommonOptions& options) {
    netprice::RunSpec spec = netprice::RunSpec::load(options.spec_path);
    if (options.seed) spec.seed = *options.seed;
    if (options.jobs) spec.jobs = *options.jobs;
    return spec;
}

void add_common(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("--spec", options.spec_path, "Run-spec JSON file")->required();
    cmd->add_option("--seed", options.seed, "Override the spec seed");
    cmd->add_option("--jobs", options.jobs, "Cap worker threads (default from spec, 1 = serial)");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw netprice::IoError("cannot write " + path);
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"netprice: college net-price regression benchmark"};
    app.require_subcommand(1);

    CommonOptions ingest_opts, train_opts, importance_opts;
    std::string compare_in, compare_out, importance_model;
    bool compare_text = false;

    CLI::App* ingest = app.add_subcommand("ingest", "Read yearly scorecard CSVs into a labeled snapshot");
    add_common(ingest, ingest_opts);

    CLI::App* train = app.add_subcommand(
        "train", "Tune, fit and evaluate every enabled estimator under every enabled validator");
    add_common(train, train_opts);

    CLI::App* compare =
        app.add_subcommand("compare", "Rank eval-report rows by accuracy, RMSE and fit time");
    compare->add_option("--in", compare_in, "Eval report JSON (from train)")->required();
    compare->add_option("--out", compare_out,
                        "Output basename (default: comparison.json/.txt beside the input)");
    compare->add_flag("--text", compare_text, "Print the aligned text table instead of JSON");

    CLI::App* importance =
        app.add_subcommand("importance", "Permutation feature importance on the outer test set");
    importance->add_option("--model", importance_model, "Persisted model JSON")->required();
    add_common(importance, importance_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ingest->parsed()) {
            netprice::cmd_ingest(load_spec(ingest_opts), &std::cout);
        } else if (train->parsed()) {
            const netprice::TrainOutcome outcome = netprice::cmd_train(load_spec(train_opts), &std::cout);
            if (outcome.all_failed()) {
                std::cerr << "error: every estimator/validator cell failed\n";
                return 3;
            }
        } else if (compare->parsed()) {
            const netprice::ComparisonReport report = netprice::cmd_compare(compare_in);
            fs::path base = compare_out.empty()
                                ? fs::path(compare_in).parent_path() / "comparison"
                                : fs::path(compare_out);
            base.replace_extension();
            write_text_file(base.string() + ".json", report.to_json_string());
            write_text_file(base.string() + ".txt", report.to_text());
            std::cout << (compare_text ? report.to_text() : report.to_json_string());
        } else if (importance->parsed()) {
            netprice::cmd_importance(importance_model, load_spec(importance_opts), &std::cout);
        }
    } catch (const netprice::NoRowsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const netprice::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
