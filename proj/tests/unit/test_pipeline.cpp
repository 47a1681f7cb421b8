#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "netprice/errors.hpp"
#include "netprice/pipeline.hpp"
#include "netprice/split.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

using namespace netprice;
namespace nt = netprice::testing;
namespace fs = std::filesystem;

namespace {

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Two tiny yearly files: 5 rows total, 3 with usable labels.
RunSpec tiny_spec(const nt::TempDir& dir, const std::string& estimators_json,
                  const std::string& validators_json, const std::string& policy = "combined") {
    write_text(dir.file("y2020.csv"),
               "UNITID,CONTROL,COSTT4_A,TUITIONFEE_IN,NPT4_PUB,NPT4_PRIV\n"
               "1,1,20000,9000,12000,NULL\n"
               "2,2,30000,15000,NULL,22000\n"
               "3,1,NULL,NULL,NULL,NULL\n");
    write_text(dir.file("y2021.csv"),
               "UNITID,CONTROL,COSTT4_A,TUITIONFEE_IN,NPT4_PUB,NPT4_PRIV\n"
               "4,3,40000,21000,,31000\n"
               "5,2,25000,PrivacySuppressed,NULL,NULL\n");
    write_text(dir.file("cols.json"),
               R"([{"name":"COSTT4_A","kind":"numeric"},
                   {"name":"CONTROL","kind":"categorical"},
                   {"name":"TUITIONFEE_IN","kind":"numeric"},
                   {"name":"YEAR","kind":"numeric"}])");
    const std::string spec_json = std::string("{\n") +
        R"("inputs": [{"path": ")" + dir.file("y2020.csv") + R"(", "year": 2020},)" +
        R"({"path": ")" + dir.file("y2021.csv") + R"(", "year": 2021}],)" +
        R"("column_spec": ")" + dir.file("cols.json") + R"(",)" +
        R"("label_policy": ")" + policy + R"(",)" +
        R"("split": {"ratio": 0.7, "seed": 11},)" +
        R"("estimators": )" + estimators_json + "," +
        R"("validators": )" + validators_json + "," +
        R"("out_dir": ")" + dir.file("out") + R"(")" + "\n}";
    write_text(dir.file("run.json"), spec_json);
    return RunSpec::load(dir.file("run.json"));
}

} // namespace

TEST_CASE("cmd_ingest writes a snapshot and an accurate report") {
    nt::TempDir dir;
    const RunSpec spec = tiny_spec(dir, R"({"LR": {}})", R"({"tvs": {}})");
    const IngestOutcome outcome = cmd_ingest(spec);

    CHECK(outcome.rows_read == 5);
    CHECK(outcome.rows_labeled == 3);
    CHECK(outcome.dropped_no_label == 2);
    CHECK(outcome.dropped_negative_label == 0);
    CHECK(fs::exists(outcome.snapshot_path));
    CHECK(fs::exists(outcome.report_path));

    const LabeledTable snap = ingest::load_labeled(outcome.snapshot_path);
    CHECK(snap.n_rows() == 3);
    // column-spec order preserved
    CHECK(snap.table.columns[0].name == "COSTT4_A");
    CHECK(snap.table.columns[3].name == "YEAR");

    const auto report = nlohmann::json::parse(slurp(outcome.report_path));
    CHECK(report.at("rows_read") == 5);
    CHECK(report.at("rows_dropped_no_label") == 2);
    CHECK(report.at("warnings").at("null-sentinel").get<int>() == 8);
    CHECK(report.at("warnings").at("privacy-suppressed").get<int>() == 1);
}

TEST_CASE("cmd_ingest respects the public-only label policy") {
    nt::TempDir dir;
    const RunSpec spec = tiny_spec(dir, R"({"LR": {}})", R"({"tvs": {}})", "public_only");
    const IngestOutcome outcome = cmd_ingest(spec);
    CHECK(outcome.rows_labeled == 1);
    CHECK(outcome.dropped_by_policy == 2);
    const LabeledTable snap = ingest::load_labeled(outcome.snapshot_path);
    for (const LabelSource s : snap.label_source) CHECK(s == LabelSource::Public);
}

TEST_CASE("cmd_ingest fails atomically on a missing input") {
    nt::TempDir dir;
    RunSpec spec = tiny_spec(dir, R"({"LR": {}})", R"({"tvs": {}})");
    spec.inputs[1].path = dir.file("nope.csv");
    CHECK_THROWS_AS(cmd_ingest(spec), IoError);
    CHECK(!fs::exists(spec.snapshot_path()));
}

TEST_CASE("run spec validation rejects bad configs") {
    nt::TempDir dir;
    CHECK_THROWS_AS(RunSpec::load(dir.file("absent.json")), IoError);
    write_text(dir.file("bad.json"), "{");
    CHECK_THROWS_AS(RunSpec::load(dir.file("bad.json")), ConfigError);
    write_text(dir.file("no_inputs.json"),
               R"({"inputs": [], "estimators": {"LR": {}}, "validators": {"tvs": {}}})");
    CHECK_THROWS_AS(RunSpec::load(dir.file("no_inputs.json")), ConfigError);
    // referenced input path must exist at validation time
    write_text(dir.file("ghost.json"),
               R"({"inputs": [{"path": "ghost.csv", "year": 2020}],
                   "estimators": {"LR": {}}, "validators": {"tvs": {}}})");
    CHECK_THROWS_AS(RunSpec::load(dir.file("ghost.json")), ConfigError);
}

TEST_CASE("cmd_train emits one row per estimator-validator cell") {
    nt::TempDir dir;
    nt::ScorecardFiles files = nt::write_scorecard_files(dir.file("data"), 160, 5);
    write_text(dir.file("run.json"), nt::scorecard_runspec_json(files, dir.file("out"), 7));
    RunSpec spec = RunSpec::load(dir.file("run.json"));

    SUBCASE("single cell") {
        spec.estimators.clear();
        ParamGrid lr_grid;
        lr_grid.add("regParam", {0.0});
        spec.estimators.emplace_back(EstimatorKind::Linear, lr_grid);
        spec.run_cv = false;
        const TrainOutcome outcome = cmd_train(spec);
        REQUIRE(outcome.rows.size() == 1);
        CHECK(outcome.rows[0].ok);
        CHECK(outcome.rows[0].kind == EstimatorKind::Linear);
        CHECK(fs::exists(spec.model_path(EstimatorKind::Linear, ValidatorKind::TVS)));
        CHECK(fs::exists(spec.eval_report_path()));
        CHECK(fs::exists(spec.transform_path()));

        // compare carries the winning hyperparameters through
        const ComparisonReport comparison = cmd_compare(spec.eval_report_path());
        REQUIRE(comparison.rows.size() == 1);
        CHECK(comparison.rows[0].algorithm == "LR");
        CHECK(comparison.rows[0].best_params.reg_param() == 0.0);
        CHECK(comparison.rows[0].best_params.has("seed"));
    }

    SUBCASE("full four-by-two matrix") {
        // shrink the grids so the matrix stays quick
        spec.estimators.clear();
        ParamGrid rf, gbt, dt, lr;
        rf.add("n_estimators", {std::int64_t{5}});
        rf.add("max_depth", {std::int64_t{4}});
        gbt.add("maxIter", {std::int64_t{8}});
        dt.add("max_depth", {std::int64_t{4}});
        lr.add("regParam", {0.0});
        spec.estimators.emplace_back(EstimatorKind::Forest, rf);
        spec.estimators.emplace_back(EstimatorKind::Gbt, gbt);
        spec.estimators.emplace_back(EstimatorKind::Tree, dt);
        spec.estimators.emplace_back(EstimatorKind::Linear, lr);
        const TrainOutcome outcome = cmd_train(spec);
        REQUIRE(outcome.rows.size() == 8);
        for (const EvalRow& row : outcome.rows) CHECK(row.ok);
        // report order: validator blocks, Table-1 algorithm order inside
        CHECK(outcome.rows[0].kind == EstimatorKind::Forest);
        CHECK(outcome.rows[0].validator == ValidatorKind::TVS);
        CHECK(outcome.rows[4].validator == ValidatorKind::CV);
        CHECK(std::count_if(outcome.rows.begin(), outcome.rows.end(), [](const EvalRow& r) {
                  return r.validator == ValidatorKind::CV;
              }) == 4);
    }
}

TEST_CASE("reruns reproduce everything except fit times") {
    nt::TempDir dir;
    nt::ScorecardFiles files = nt::write_scorecard_files(dir.file("data"), 120, 9);
    write_text(dir.file("run.json"), nt::scorecard_runspec_json(files, dir.file("out"), 3));
    RunSpec spec = RunSpec::load(dir.file("run.json"));
    spec.estimators.clear();
    ParamGrid dt;
    dt.add("max_depth", {std::int64_t{3}, std::int64_t{5}});
    spec.estimators.emplace_back(EstimatorKind::Tree, dt);
    spec.run_cv = false;

    const TrainOutcome first = cmd_train(spec);
    auto strip = [](const std::string& path) {
        auto doc = nlohmann::json::parse(std::ifstream(path));
        for (auto& row : doc.at("rows")) row.erase("fit_time_sec");
        return doc.dump();
    };
    const std::string report_a = strip(spec.eval_report_path());
    const std::string model_a = slurp(spec.model_path(EstimatorKind::Tree, ValidatorKind::TVS));

    fs::remove_all(spec.out_dir);
    const TrainOutcome second = cmd_train(spec);
    CHECK(strip(spec.eval_report_path()) == report_a);
    CHECK(slurp(spec.model_path(EstimatorKind::Tree, ValidatorKind::TVS)) == model_a);
    CHECK(first.rows[0].test_r2 == second.rows[0].test_r2);
}

TEST_CASE("worker count never changes results") {
    nt::TempDir dir;
    nt::ScorecardFiles files = nt::write_scorecard_files(dir.file("data"), 200, 41);
    write_text(dir.file("run.json"), nt::scorecard_runspec_json(files, dir.file("out"), 19));
    RunSpec spec = RunSpec::load(dir.file("run.json"));
    spec.estimators.clear();
    ParamGrid rf, lr;
    rf.add("n_estimators", {std::int64_t{8}});
    rf.add("max_depth", {std::int64_t{4}, std::int64_t{6}});
    lr.add("regParam", {0.0, 0.1});
    spec.estimators.emplace_back(EstimatorKind::Forest, rf);
    spec.estimators.emplace_back(EstimatorKind::Linear, lr);

    auto run_with_jobs = [&](unsigned jobs) {
        fs::remove_all(spec.out_dir);
        spec.jobs = jobs;
        cmd_train(spec);
        auto doc = nlohmann::json::parse(slurp(spec.eval_report_path()));
        for (auto& row : doc.at("rows")) row.erase("fit_time_sec");
        std::string models;
        models += slurp(spec.model_path(EstimatorKind::Forest, ValidatorKind::TVS));
        models += slurp(spec.model_path(EstimatorKind::Linear, ValidatorKind::CV));
        return doc.dump() + models;
    };
    CHECK(run_with_jobs(1) == run_with_jobs(4));
}

TEST_CASE("training never reads the test partition") {
    // Two snapshots differing only in rows that land in the test partition
    // must produce byte-identical models.
    nt::TempDir dir;
    nt::ScorecardFiles files = nt::write_scorecard_files(dir.file("data"), 100, 17);
    write_text(dir.file("run.json"), nt::scorecard_runspec_json(files, dir.file("out"), 23));
    RunSpec spec = RunSpec::load(dir.file("run.json"));
    spec.estimators.clear();
    ParamGrid dt;
    dt.add("max_depth", {std::int64_t{4}});
    spec.estimators.emplace_back(EstimatorKind::Tree, dt);
    spec.run_cv = false;

    cmd_ingest(spec);
    LabeledTable snapshot = ingest::load_labeled(spec.snapshot_path());
    const auto [train_idx, test_idx] =
        split_indices(snapshot.n_rows(), spec.split_ratio, spec.seed);

    cmd_train(spec);
    const std::string model_before = slurp(spec.model_path(EstimatorKind::Tree, ValidatorKind::TVS));

    // poison every test-partition label and rerun
    for (const std::size_t r : test_idx) snapshot.label[r] = 1e9 + static_cast<double>(r);
    ingest::save_labeled(snapshot, spec.snapshot_path());
    const TrainOutcome poisoned = cmd_train(spec);
    const std::string model_after = slurp(spec.model_path(EstimatorKind::Tree, ValidatorKind::TVS));

    CHECK(model_before == model_after);
    CHECK(poisoned.rows[0].ok);
}

TEST_CASE("comparison rankings and text table") {
    std::vector<ComparisonRow> rows{
        {"RF", "TVS", 0.8471, 2724.013, 128.63},
        {"GBT", "TVS", 0.8480, 2773.352, 2167.57},
        {"DT", "TVS", 0.7657, 3414.359, 133.31},
        {"LR", "TVS", 0.7700, 3314.532, 513.58},
    };
    const ComparisonReport report = make_comparison(rows);

    REQUIRE(report.accuracy_ranking.size() == 4);
    CHECK(report.accuracy_ranking[0] == RankEntry{"GBT", "TVS"});
    CHECK(report.accuracy_ranking[1] == RankEntry{"RF", "TVS"});
    CHECK(report.accuracy_ranking[2] == RankEntry{"LR", "TVS"});
    CHECK(report.accuracy_ranking[3] == RankEntry{"DT", "TVS"});

    CHECK(report.time_ranking[0] == RankEntry{"RF", "TVS"});
    CHECK(report.time_ranking[1] == RankEntry{"DT", "TVS"});
    CHECK(report.time_ranking[2] == RankEntry{"LR", "TVS"});
    CHECK(report.time_ranking[3] == RankEntry{"GBT", "TVS"});

    CHECK(report.rmse_ranking[0] == RankEntry{"RF", "TVS"});

    const std::string text = report.to_text();
    CHECK(text.find("0.8471") != std::string::npos);
    CHECK(text.find("2724.0130") != std::string::npos);
    CHECK(text.find("128.63") != std::string::npos);
    CHECK(text.find("Algorithm") != std::string::npos);

    // singleton: every ranking is that row
    const ComparisonReport one = make_comparison({{"LR", "CV", 0.5, 10.0, 1.0}});
    CHECK(one.accuracy_ranking.size() == 1);
    CHECK(one.accuracy_ranking[0] == RankEntry{"LR", "CV"});
    CHECK(one.time_ranking[0] == RankEntry{"LR", "CV"});

    CHECK_THROWS_AS(make_comparison({}), NoRowsError);
}

TEST_CASE("cmd_importance runs on the outer test partition") {
    nt::TempDir dir;
    nt::ScorecardFiles files = nt::write_scorecard_files(dir.file("data"), 150, 29);
    write_text(dir.file("run.json"), nt::scorecard_runspec_json(files, dir.file("out"), 31));
    RunSpec spec = RunSpec::load(dir.file("run.json"));
    spec.estimators.clear();
    ParamGrid dt;
    dt.add("max_depth", {std::int64_t{5}});
    spec.estimators.emplace_back(EstimatorKind::Tree, dt);
    spec.run_cv = false;

    cmd_train(spec);
    const std::string model_path = spec.model_path(EstimatorKind::Tree, ValidatorKind::TVS);
    const ImportanceReport a = cmd_importance(model_path, spec);
    const ImportanceReport b = cmd_importance(model_path, spec);

    // one row per feature, sorted descending, deterministic across runs
    const Model model = Model::load(model_path);
    CHECK(a.features.size() == model.n_features());
    for (std::size_t i = 0; i + 1 < a.features.size(); ++i)
        CHECK(a.features[i].rmse_increase >= a.features[i + 1].rmse_increase);
    REQUIRE(a.features.size() == b.features.size());
    for (std::size_t i = 0; i < a.features.size(); ++i) {
        CHECK(a.features[i].name == b.features[i].name);
        CHECK(a.features[i].rmse_increase == b.features[i].rmse_increase);
    }
    CHECK(fs::exists(spec.importance_path("model_DT_TVS", false)));
    CHECK(fs::exists(spec.importance_path("model_DT_TVS", true)));
}
