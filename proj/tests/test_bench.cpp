#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "dgs/bench.hpp"

using namespace dgs;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.n = 40;
    cfg.num_graphs = 2;
    cfg.num_signals_per_graph = 3;
    cfg.budgets = {4, 8};
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Method, Names) {
    EXPECT_EQ(to_string(Method::EOptimal), "e-optimal");
    EXPECT_EQ(parse_method("gda-direct"), Method::GdaDirect);
    EXPECT_THROW(parse_method("sdp"), Error);
    EXPECT_EQ(parse_format("json"), ResultFormat::Json);
    EXPECT_THROW(parse_format("xml"), Error);
}

TEST(Config, JsonRoundTripAndDefaults) {
    const auto cfg = config_from_json(nlohmann::json::object());
    EXPECT_EQ(cfg.n, 200u);
    EXPECT_EQ(cfg.num_graphs, 5u);
    EXPECT_EQ(cfg.num_signals_per_graph, 200u);
    EXPECT_EQ(cfg.budgets, (std::vector<std::size_t>{10, 20, 30, 40, 50, 60}));
    EXPECT_EQ(cfg.mu, 0.001);
    EXPECT_EQ(cfg.signals.size(), 3u);
    auto c2 = small_config();
    c2.eps = 0.3;
    c2.signals[0].band = 5;
    const auto back = config_from_json(config_to_json(c2));
    EXPECT_EQ(config_to_json(back), config_to_json(c2));
}

TEST(Config, Validation) {
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"budgets":[0]})")), Error);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"n":50,"budgets":[50]})")), Error);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"methods":[]})")), Error);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"methods":["nope"]})")), Error);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"mu":-1})")), Error);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"n":"big"})")), Error);
    const auto ok = config_from_json(nlohmann::json::parse(R"({"signals":["GS3",{"kind":"GS1","m":4}]})"));
    EXPECT_EQ(ok.signals.size(), 2u);
    EXPECT_EQ(ok.signals[1].band.value(), 4u);
}

TEST(RunExperiment, NoGraphsGivesHeaderOnly) {
    auto cfg = small_config();
    cfg.num_graphs = 0;
    const auto rows = run_experiment(cfg);
    EXPECT_TRUE(rows.empty());
    EXPECT_EQ(results_to_csv(rows), std::string(kCsvHeader) + "\n");
}

TEST(RunExperiment, RowOrderAndContents) {
    const auto cfg = small_config();
    const auto rows = run_experiment(cfg);
    ASSERT_EQ(rows.size(), 2u * 3u * 2u * 3u * 3u);
    std::size_t i = 0;
    for (std::size_t g = 0; g < 2; ++g)
        for (auto m : cfg.methods)
            for (auto k : cfg.budgets)
                for (const auto& s : cfg.signals)
                    for (std::size_t t = 0; t < 3; ++t, ++i) {
                        const auto& r = rows[i];
                        EXPECT_EQ(r.graph_idx, g);
                        EXPECT_EQ(r.method, m);
                        EXPECT_EQ(r.budget, k);
                        EXPECT_EQ(r.signal_kind, s.kind);
                        EXPECT_EQ(r.trial, t);
                        EXPECT_FALSE(r.error.has_value());
                        EXPECT_GE(r.mse, 0.0);
                        EXPECT_GE(r.sample_time_s, 0.0);
                        EXPECT_GE(r.recon_time_s, 0.0);
                    }
}

TEST(RunExperiment, DeterministicAcrossJobCounts) {
    const auto cfg = small_config();
    auto a = run_experiment(cfg, 1);
    auto b = run_experiment(cfg, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i].sample_time_s = b[i].sample_time_s = 0;
        a[i].recon_time_s = b[i].recon_time_s = 0;
        EXPECT_EQ(a[i], b[i]);
    }
}

TEST(RunExperiment, NoiseChangesOnlyMse) {
    auto cfg = small_config();
    cfg.methods = {Method::Random};
    const auto clean = run_experiment(cfg);
    cfg.noise_std = 0.1;
    const auto noisy = run_experiment(cfg);
    ASSERT_EQ(clean.size(), noisy.size());
    int differ = 0;
    for (std::size_t i = 0; i < clean.size(); ++i) differ += clean[i].mse != noisy[i].mse;
    EXPECT_GT(differ, 0);
}

TEST(RunExperiment, FailingCellIsMarked) {
    auto cfg = small_config();
    cfg.methods = {Method::EOptimal};
    cfg.eoptimal_bandwidth = 6;  // below budget 8 → sampler error for that cell
    const auto rows = run_experiment(cfg);
    std::size_t errored = 0;
    for (const auto& r : rows) {
        if (r.budget == 8) {
            EXPECT_TRUE(r.error.has_value());
            ++errored;
        } else {
            EXPECT_FALSE(r.error.has_value());
        }
    }
    EXPECT_EQ(errored, rows.size() / 2);
    const auto csv = results_to_csv(rows);
    EXPECT_NE(csv.find(",ERROR,"), std::string::npos);
    const auto js = results_to_json(rows);
    EXPECT_TRUE(js.back().contains("error"));
}

TEST(Results, CsvRoundTripIsBitExact) {
    ResultRow r;
    r.method = Method::Random;
    r.budget = 20;
    r.graph_idx = 3;
    r.signal_kind = SignalKind::GS2;
    r.trial = 17;
    r.mse = 0.1 + 0.2;
    r.sample_time_s = 1e-7 / 3;
    r.recon_time_s = 123.456789012345678;
    const auto path = (std::filesystem::temp_directory_path() / "dgs_results_test.csv").string();
    write_results({r}, path, ResultFormat::Csv);
    const auto text = slurp(path);
    EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
    const auto back = read_results_csv(path);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0], r);
    std::remove(path.c_str());
}

TEST(Results, JsonArray) {
    const auto rows = run_experiment(small_config());
    const auto path = (std::filesystem::temp_directory_path() / "dgs_results_test.json").string();
    write_results(rows, path, ResultFormat::Json);
    const auto doc = nlohmann::json::parse(slurp(path));
    ASSERT_TRUE(doc.is_array());
    EXPECT_EQ(doc.size(), rows.size());
    EXPECT_EQ(doc[0].at("method"), "gda-direct");
    EXPECT_EQ(doc[0].at("mse").get<double>(), rows[0].mse);
    std::remove(path.c_str());
}

TEST(Results, NoEmbeddedDelimiters) {
    const auto csv = results_to_csv(run_experiment(small_config()));
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
    EXPECT_THROW(parse_results_csv("bad,header\n"), Error);
    EXPECT_THROW(write_results({}, "/nonexistent/dir/out.csv", ResultFormat::Csv), Error);
}

TEST(TimingSweep, SingleSizeSingleMethod) {
    const auto rows = timing_sweep({60}, 0.1, 0.3, {Method::GdaDirect}, 1);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].n, 60u);
    EXPECT_GE(rows[0].seconds, 0.0);
    EXPECT_THROW(timing_sweep({80, 40}, 0.1, 0.3, {Method::Random}, 1), Error);
}
