#include <gtest/gtest.h>

#include "dgs/digraph.hpp"
#include "oracles.hpp"

using namespace dgs;

namespace {

ErrorCode code_of(std::size_t n, const std::vector<Edge>& edges) {
    try {
        DiGraph::from_edges(n, edges);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::Io;
}

}  // namespace

TEST(FromEdges, TwoCycleIsValid) {
    const auto g = DiGraph::from_edges(2, oracle::two_cycle());
    EXPECT_EQ(g.n(), 2u);
    EXPECT_EQ(g.num_edges(), 2u);
    EXPECT_TRUE(validate(g).ok());
}

TEST(FromEdges, SelfLoopRejected) {
    EXPECT_EQ(code_of(2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}}), ErrorCode::SelfLoop);
}

TEST(FromEdges, ThreeCycleReachesEverything) {
    const std::vector<Edge> e{{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
    const auto d = validate(3, e);
    EXPECT_TRUE(d.ok());
    EXPECT_TRUE(d.co_reachable);
    ASSERT_TRUE(d.root.has_value());
    EXPECT_NO_THROW(DiGraph::from_edges(3, e));
}

TEST(FromEdges, BadInputs) {
    EXPECT_EQ(code_of(2, {{0, 1, 0.0}, {1, 0, 1}}), ErrorCode::NonPositiveWeight);
    EXPECT_EQ(code_of(2, {{0, 1, -1.0}, {1, 0, 1}}), ErrorCode::NonPositiveWeight);
    EXPECT_EQ(code_of(2, {{0, 1, std::nan("")}, {1, 0, 1}}), ErrorCode::NonPositiveWeight);
    EXPECT_EQ(code_of(2, {{0, 1, 1}, {0, 1, 2}, {1, 0, 1}}), ErrorCode::DuplicateEdge);
    EXPECT_EQ(code_of(2, {{0, 2, 1}, {1, 0, 1}}), ErrorCode::NodeOutOfRange);
    EXPECT_EQ(code_of(2, {{-1, 0, 1}, {1, 0, 1}}), ErrorCode::NodeOutOfRange);
    EXPECT_EQ(code_of(3, {{0, 1, 1}, {1, 0, 1}}), ErrorCode::SinkNode);
}

TEST(Validate, OutwardStarHasSinkLeaves) {
    const std::vector<Edge> e{{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
    const auto d = validate(4, e);
    EXPECT_FALSE(d.ok());
    EXPECT_EQ(d.sink_nodes, (std::vector<NodeId>{1, 2, 3}));
    for (const auto& issue : d.issues) {
        if (issue.code == ErrorCode::SinkNode) EXPECT_NE(issue.node, 0);
    }
}

TEST(Validate, DisjointCyclesNotCoReachable) {
    const std::vector<Edge> e{{0, 1, 1}, {1, 0, 1}, {2, 3, 1}, {3, 2, 1}};
    const auto d = validate(4, e);
    EXPECT_FALSE(d.co_reachable);
    EXPECT_FALSE(d.root.has_value());
    EXPECT_EQ(code_of(4, e), ErrorCode::NotCoReachable);
}

TEST(Validate, RootIsReachedByAll) {
    // 0 → 1 → 2 ⇄ 3: only 2 and 3 are reachable from everyone
    const std::vector<Edge> e{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 2, 1}};
    const auto d = validate(4, e);
    EXPECT_TRUE(d.ok());
    ASSERT_TRUE(d.root.has_value());
    EXPECT_TRUE(*d.root == 2 || *d.root == 3);
}

TEST(NormalizedAdjacency, TwoCycle) {
    const auto w = normalized_adjacency(DiGraph::from_edges(2, oracle::two_cycle()));
    EXPECT_EQ(w.rows.to_dense(), (Eigen::Matrix2d() << 0, 1, 1, 0).finished());
    EXPECT_EQ(w.cols.to_dense(), w.rows.to_dense().transpose());
}

TEST(NormalizedAdjacency, RatioPreserved) {
    const std::vector<Edge> e{{0, 1, 2}, {0, 2, 6}, {1, 0, 1}, {2, 0, 1}};
    const auto w = normalized_adjacency(DiGraph::from_edges(3, e));
    EXPECT_DOUBLE_EQ(w.rows.at(0, 1), 0.25);
    EXPECT_DOUBLE_EQ(w.rows.at(0, 2), 0.75);
}

TEST(NormalizedAdjacency, MatchesDenseOracleOnEr) {
    Rng rng(11);
    const auto g = gen_er_digraph(120, 0.1, rng);
    const auto w = normalized_adjacency(g);
    const Eigen::MatrixXd ref = oracle::dense_wbar(g.n(), g.to_edges());
    EXPECT_LE((w.rows.to_dense() - ref).cwiseAbs().maxCoeff(), 1e-15);
    const Eigen::VectorXd sums = w.rows.to_dense().rowwise().sum();
    EXPECT_LE((sums.array() - 1.0).abs().maxCoeff(), 1e-12);
}

TEST(RwLaplacian, TwoCycle) {
    const auto l = random_walk_laplacian(DiGraph::from_edges(2, oracle::two_cycle()));
    EXPECT_EQ(l.rows.to_dense(), (Eigen::Matrix2d() << 1, -1, -1, 1).finished());
}

TEST(RwLaplacian, ThreeCycle) {
    const auto l = random_walk_laplacian(DiGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}));
    Eigen::Matrix3d ref;
    ref << 1, -1, 0, 0, 1, -1, -1, 0, 1;
    EXPECT_EQ(l.rows.to_dense(), ref);
    EXPECT_EQ(l.cols.to_dense(), ref.transpose());
}

TEST(RwLaplacian, AnnihilatesConstants) {
    Rng rng(5);
    const auto l = random_walk_laplacian(gen_er_digraph(300, 0.05, rng));
    const Eigen::VectorXd c = Eigen::VectorXd::Constant(300, -3.7);
    EXPECT_LE(l.apply(c).cwiseAbs().maxCoeff(), 1e-12);
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(300, -1, 2);
    EXPECT_LE((l.apply_transpose(x) - l.rows.to_dense().transpose() * x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GramDense, MatchesProduct) {
    Rng rng(9);
    const auto g = gen_er_digraph(40, 0.2, rng);
    const Eigen::MatrixXd l = oracle::dense_lrw(g);
    EXPECT_LE((gram_dense(random_walk_laplacian(g)) - l.transpose() * l).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(GenEr, EmptyErPartLeavesOnlyHubEdges) {
    Rng rng(1);
    const auto g = gen_er_digraph(5, 0.0, rng);
    const auto edges = g.to_edges();
    ASSERT_EQ(edges.size(), 5u);
    int hub_out = 0;
    for (const auto& e : edges) {
        if (e.src == 4) {
            ++hub_out;
            EXPECT_LT(e.dst, 4);
        } else {
            EXPECT_EQ(e.dst, 4);
        }
        EXPECT_GT(e.weight, 0.0);
        EXPECT_LE(e.weight, 1.0);
    }
    EXPECT_EQ(hub_out, 1);
}

TEST(GenEr, BenchSizeEdgeCount) {
    Rng rng(2023);
    const auto g = gen_er_digraph(200, 0.1, rng);
    const double expected = 199.0 * 198.0 * 0.1 + 200.0;
    const double sd = std::sqrt(199.0 * 198.0 * 0.1 * 0.9);
    EXPECT_NEAR(static_cast<double>(g.num_edges()), expected, 5 * sd);
    EXPECT_TRUE(validate(g).ok());
}

TEST(GenEr, SeedDeterminism) {
    Rng a(77), b(77);
    EXPECT_EQ(gen_er_digraph(150, 0.1, a), gen_er_digraph(150, 0.1, b));
}

TEST(GenEr, RejectsBadParameters) {
    Rng rng(0);
    EXPECT_THROW(gen_er_digraph(1, 0.1, rng), Error);
    EXPECT_THROW(gen_er_digraph(10, 1.0, rng), Error);
    EXPECT_THROW(gen_er_digraph(10, -0.1, rng), Error);
}

TEST(DiGraph, EdgeRoundTripIsExact) {
    Rng rng(3);
    const auto g = gen_er_digraph(80, 0.15, rng);
    EXPECT_EQ(DiGraph::from_edges(g.n(), g.to_edges()), g);
}

TEST(DiGraph, UnsortedInputGivesSortedRows) {
    const std::vector<Edge> e{{0, 2, 1}, {2, 0, 1}, {0, 1, 1}, {1, 0, 1}};
    const auto g = DiGraph::from_edges(3, e);
    const auto& out = g.out_adjacency();
    EXPECT_EQ(out.col_indices[out.row_begin(0)], 1);
    EXPECT_EQ(out.col_indices[out.row_begin(0) + 1], 2);
    EXPECT_DOUBLE_EQ(g.out_degree(0), 2.0);
    EXPECT_EQ(g.in_adjacency().to_dense(), out.to_dense().transpose());
}
