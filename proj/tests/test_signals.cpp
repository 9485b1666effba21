#include <gtest/gtest.h>

#include "dgs/recon.hpp"
#include "dgs/signals.hpp"
#include "oracles.hpp"

using namespace dgs;

namespace {

RwLaplacian er_lap(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return random_walk_laplacian(gen_er_digraph(n, 0.1, rng));
}

}  // namespace

TEST(SignalKind, Names) {
    EXPECT_EQ(to_string(SignalKind::GS2), "GS2");
    EXPECT_EQ(parse_signal_kind("GS3"), SignalKind::GS3);
    EXPECT_EQ(parse_signal_kind("gs1"), SignalKind::GS1);
    EXPECT_THROW(parse_signal_kind("GS4"), Error);
    EXPECT_EQ(default_band(200), 20u);
    EXPECT_EQ(default_band(201), 21u);
    EXPECT_EQ(default_band(5), 1u);
}

TEST(Gs1, FullBand) {
    const auto lap = er_lap(50, 1);
    const auto eig = dense_sym_eig(gram_dense(lap));
    Rng rng(2);
    const auto x = gen_gs1(eig, 50, rng);
    EXPECT_TRUE(std::isfinite(gsv(x, lap)));
    EXPECT_GT(x.norm(), 0.0);
}

TEST(Gs1, SingleBandIsConstant) {
    const auto lap = er_lap(60, 3);
    const auto eig = dense_sym_eig(gram_dense(lap));
    Rng rng(4);
    const auto x = gen_gs1(eig, 1, rng);
    EXPECT_LE(gsv(x, lap), 1e-10);
    EXPECT_LE((x.array() - x.mean()).abs().maxCoeff(), 1e-8 * x.norm());
}

TEST(Gs1, Bandlimited) {
    const auto lap = er_lap(80, 5);
    const auto eig = dense_sym_eig(gram_dense(lap));
    Rng rng(6);
    for (std::size_t m : {1, 8, 30}) {
        const auto x = gen_gs1(eig, m, rng);
        const Eigen::VectorXd tail = eig.vectors.rightCols(80 - static_cast<Eigen::Index>(m)).transpose() * x;
        EXPECT_LE(tail.norm(), 1e-8 * x.norm());
    }
    EXPECT_THROW(gen_gs1(eig, 0, rng), Error);
    EXPECT_THROW(gen_gs1(eig, 81, rng), Error);
}

TEST(Gs2, LargeOmegaNearWhite) {
    const auto lap = er_lap(40, 7);
    Rng a(8), b(8);
    const double omega = 1e8;
    const auto x = gen_gs2(gram_dense(lap), omega, a);
    std::normal_distribution<double> z;
    Eigen::VectorXd w(40);
    for (auto& v : w) v = z(b);
    EXPECT_LE((x * std::sqrt(omega) - w).norm(), 1e-3 * w.norm());
}

TEST(Gs2, TwoCycleCovariance) {
    Eigen::Matrix2d gram;
    gram << 2, -2, -2, 2;
    Eigen::Matrix2d prec = gram;
    prec.diagonal().array() += 0.1;
    const Eigen::Matrix2d cov = prec.inverse();
    const auto r = cholesky_factor(prec);
    Rng rng(9);
    Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) {
        const Eigen::Vector2d x = gen_gs2_factored(r, rng);
        acc += x * x.transpose();
    }
    acc /= draws;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(acc(i, j), cov(i, j), 0.05 * std::abs(cov(i, j)));
}

TEST(Gs2, SeedDeterminismAndGuard) {
    const auto lap = er_lap(30, 10);
    Rng a(11), b(11);
    EXPECT_EQ(gen_gs2(gram_dense(lap), 0.1, a), gen_gs2(gram_dense(lap), 0.1, b));
    EXPECT_THROW(gen_gs2(gram_dense(lap), 0.0, a), Error);
}

TEST(Gs3, ZeroAlphaIsIdentity) {
    const auto lap = er_lap(30, 12);
    const Eigen::VectorXd x0 = Eigen::VectorXd::LinSpaced(30, -1, 1);
    EXPECT_EQ(diffuse(lap.wbar, x0, 0.0, 50), x0);
}

TEST(Gs3, ConstantIsFixed) {
    const auto lap = er_lap(100, 13);
    const Eigen::VectorXd c = Eigen::VectorXd::Constant(100, 0.7);
    EXPECT_LE((diffuse(lap.wbar, c, 0.1, 50) - c).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Gs3, DiffusionSmooths) {
    const auto lap = er_lap(200, 14);
    Rng rng(15);
    std::normal_distribution<double> z;
    int smoother = 0;
    for (int t = 0; t < 1000; ++t) {
        Eigen::VectorXd x0(200);
        for (auto& v : x0) v = z(rng);
        if (gsv(diffuse(lap.wbar, x0, 0.1, 50), lap) < gsv(x0, lap)) ++smoother;
    }
    EXPECT_GE(smoother, 950);
}

TEST(Gs3, MatchesDenseIteration) {
    Rng g(16);
    const auto graph = gen_er_digraph(25, 0.2, g);
    const auto lap = random_walk_laplacian(graph);
    const Eigen::MatrixXd w = oracle::dense_wbar(graph.n(), graph.to_edges());
    Rng a(17), b(17);
    const auto x = gen_gs3(lap.wbar, 0.1, 50, a);
    std::normal_distribution<double> z;
    Eigen::VectorXd ref(25);
    for (auto& v : ref) v = z(b);
    for (int t = 0; t < 50; ++t) ref = 0.9 * ref + 0.1 * (w * ref);
    EXPECT_LE((x - ref).norm(), 1e-12);
    EXPECT_THROW(diffuse(lap.wbar, ref, 1.5, 1), Error);
}

TEST(Normalize, HandExample) {
    const auto x = normalize_signal(Eigen::Vector3d(1, 2, 3));
    EXPECT_NEAR(x[0], -1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(x[1], 0.0, 1e-15);
    EXPECT_NEAR(x[2], 1 / std::sqrt(2.0), 1e-15);
}

TEST(Normalize, ConstantRejected) {
    try {
        normalize_signal(Eigen::VectorXd::Constant(5, 3.3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstantSignal);
    }
}

TEST(Normalize, UnitNormZeroMean) {
    Rng rng(18);
    std::normal_distribution<double> z(5.0, 100.0);
    for (int t = 0; t < 50; ++t) {
        Eigen::VectorXd x(37 + t);
        for (auto& v : x) v = z(rng);
        const auto y = normalize_signal(x);
        EXPECT_LE(std::abs(y.norm() - 1.0), 1e-12);
        EXPECT_LE(std::abs(y.mean()), 1e-12);
    }
}

TEST(Generator, DeterministicPerKind) {
    const auto lap = er_lap(80, 19);
    for (auto kind : {SignalKind::GS1, SignalKind::GS2, SignalKind::GS3}) {
        SignalSpec spec;
        spec.kind = kind;
        const SignalGenerator gen(lap, spec);
        Rng a(20), b(20);
        EXPECT_EQ(gen.draw(a), gen.draw(b));
    }
    SignalSpec bad;
    bad.band = 81;
    EXPECT_THROW(SignalGenerator(lap, bad), Error);
}
