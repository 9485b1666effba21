#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>

#include "dgs/graph_io.hpp"

using namespace dgs;

TEST(GraphJson, Shape) {
    const auto g = DiGraph::from_edges(2, {{{0, 1, 0.5}, {1, 0, 2.0}}});
    const auto j = graph_to_json(g);
    EXPECT_EQ(j.at("n"), 2);
    EXPECT_EQ(j.at("edges").size(), 2u);
    EXPECT_EQ(j.at("edges")[0][0], 0);
    EXPECT_EQ(j.at("edges")[0][1], 1);
    EXPECT_DOUBLE_EQ(j.at("edges")[0][2].get<double>(), 0.5);
}

TEST(GraphJson, FileRoundTripIsExact) {
    Rng rng(42);
    const auto g = gen_er_digraph(60, 0.2, rng);
    const auto path = (std::filesystem::temp_directory_path() / "dgs_graph_io_test.json").string();
    write_graph(g, path);
    EXPECT_EQ(read_graph(path), g);
    std::remove(path.c_str());
}

TEST(GraphJson, ValidationApplies) {
    const auto sink = nlohmann::json::parse(R"({"n":3,"edges":[[0,1,1],[1,0,1]]})");
    try {
        graph_from_json(sink);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SinkNode);
    }
    const auto loop = nlohmann::json::parse(R"({"n":2,"edges":[[0,0,1],[0,1,1],[1,0,1]]})");
    EXPECT_THROW(graph_from_json(loop), Error);
}

TEST(GraphJson, MalformedInput) {
    EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"edges":[]})")), Error);
    EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"n":2,"edges":[[0,1]]})")), Error);
    EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"n":"two","edges":[]})")), Error);
    try {
        read_graph("/nonexistent/dir/graph.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Io);
    }
}
