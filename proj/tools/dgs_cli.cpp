#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dgs/baselines.hpp"
#include "dgs/bench.hpp"
#include "dgs/gda_direct.hpp"
#include "dgs/graph_io.hpp"
#include "dgs/recon.hpp"
#include "dgs/signals.hpp"

using nlohmann::json;

namespace {

// Accepts either inline JSON or a path to a JSON file.
json load_json_arg(const std::string& text) {
    auto parsed = json::parse(text, nullptr, false);
    if (!parsed.is_discarded()) {
        return parsed;
    }
    std::ifstream in(text);
    if (!in) {
        throw dgs::Error(dgs::ErrorCode::InvalidArgument, "not JSON and not a readable file: " + text);
    }
    parsed = json::parse(in, nullptr, false);
    if (parsed.is_discarded()) {
        throw dgs::Error(dgs::ErrorCode::InvalidArgument, "invalid JSON in " + text);
    }
    return parsed;
}

void emit(const json& doc, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << doc.dump() << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) {
        throw dgs::Error(dgs::ErrorCode::Io, "cannot write " + out);
    }
    f << doc.dump() << '\n';
}

json vector_json(const Eigen::VectorXd& x) {
    return json(std::vector<double>(x.data(), x.data() + x.size()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampling and reconstruction of signals on directed graphs"};
    app.require_subcommand(1);

    // gen-graph
    std::size_t gg_n = 200;
    double gg_p = 0.1;
    std::uint64_t gg_seed = 0;
    std::string gg_out;
    auto* gen_graph = app.add_subcommand("gen-graph", "Random directed graph with a hub node");
    gen_graph->add_option("--n", gg_n, "Number of nodes")->check(CLI::Range(2, 1 << 30));
    gen_graph->add_option("--p", gg_p, "Edge probability in [0, 1)");
    gen_graph->add_option("--seed", gg_seed, "RNG seed");
    gen_graph->add_option("--out", gg_out, "Output file (default stdout)");

    // gen-signal
    std::string gs_graph, gs_kind = "GS1", gs_out;
    std::optional<std::size_t> gs_band;
    dgs::SignalSpec gs_spec;
    std::uint64_t gs_seed = 0;
    bool gs_raw = false;
    auto* gen_signal = app.add_subcommand("gen-signal", "Draw one graph signal");
    gen_signal->add_option("--graph", gs_graph, "Graph JSON file")->required();
    gen_signal->add_option("--kind", gs_kind, "GS1, GS2 or GS3");
    gen_signal->add_option("--m", gs_band, "GS1 band size (default ceil(0.1 n))");
    gen_signal->add_option("--omega", gs_spec.omega, "GS2 precision shift");
    gen_signal->add_option("--alpha", gs_spec.alpha, "GS3 diffusion rate");
    gen_signal->add_option("--steps", gs_spec.steps, "GS3 diffusion steps");
    gen_signal->add_option("--seed", gs_seed, "RNG seed");
    gen_signal->add_flag("--raw", gs_raw, "Skip mean removal and unit-norm scaling");
    gen_signal->add_option("--out", gs_out, "Output file (default stdout)");

    // reconstruct
    std::string rc_graph, rc_samples, rc_obs, rc_out;
    double rc_mu = dgs::kDefaultMu;
    double rc_tol = 1e-8;
    auto* recon = app.add_subcommand("reconstruct", "Recover a signal from node samples");
    recon->add_option("--graph", rc_graph, "Graph JSON file")->required();
    recon->add_option("--samples", rc_samples, "JSON list of node ids (inline or file)")->required();
    recon->add_option("--observations", rc_obs, "JSON list of observed values (inline or file)")->required();
    recon->add_option("--mu", rc_mu, "Smoothness weight");
    recon->add_option("--tol", rc_tol, "CG relative tolerance");
    recon->add_option("--out", rc_out, "Output file (default stdout)");

    // sample
    std::string sm_graph, sm_method = "gda-direct", sm_out;
    double sm_mu = dgs::kDefaultMu;
    std::size_t sm_budget = 0;
    std::optional<double> sm_eps;
    std::uint64_t sm_seed = 0;
    auto* sample = app.add_subcommand("sample", "Select a sampling set");
    sample->add_option("--graph", sm_graph, "Graph JSON file")->required();
    sample->add_option("--mu", sm_mu, "Smoothness weight");
    sample->add_option("--budget", sm_budget, "Number of nodes to sample")->required();
    sample->add_option("--eps", sm_eps, "Override epsilon");
    sample->add_option("--method", sm_method, "gda-direct, random or e-optimal")
        ->check(CLI::IsMember({"gda-direct", "random", "e-optimal"}));
    sample->add_option("--seed", sm_seed, "RNG seed (random method)");
    sample->add_option("--out", sm_out, "Output file (default stdout)");

    // bench
    std::string bn_config, bn_out, bn_format = "csv";
    unsigned bn_jobs = 1;
    auto* bench = app.add_subcommand("bench", "Run the MSE experiment grid");
    bench->add_option("--config", bn_config, "Experiment config JSON")->required();
    bench->add_option("--out", bn_out, "Result file")->required();
    bench->add_option("--format", bn_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--jobs", bn_jobs, "Worker threads")->check(CLI::Range(1u, 1024u));

    // timing
    std::vector<std::size_t> tm_ns{400, 800, 1600};
    double tm_p = 0.1, tm_fraction = 0.3;
    std::uint64_t tm_seed = 2023;
    std::vector<std::string> tm_methods{"gda-direct", "random", "e-optimal"};
    auto* timing = app.add_subcommand("timing", "Sampling wall time versus graph size");
    timing->add_option("--ns", tm_ns, "Graph sizes, ascending");
    timing->add_option("--p", tm_p, "Edge probability");
    timing->add_option("--fraction", tm_fraction, "Budget as a fraction of n");
    timing->add_option("--methods", tm_methods, "Samplers to time");
    timing->add_option("--seed", tm_seed, "Master seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_graph) {
            dgs::Rng rng(gg_seed);
            emit(dgs::graph_to_json(dgs::gen_er_digraph(gg_n, gg_p, rng)), gg_out);
        } else if (*gen_signal) {
            const dgs::RwLaplacian lap = dgs::random_walk_laplacian(dgs::read_graph(gs_graph));
            gs_spec.kind = dgs::parse_signal_kind(gs_kind);
            gs_spec.band = gs_band;
            const dgs::SignalGenerator gen(lap, gs_spec);
            dgs::Rng rng(gs_seed);
            Eigen::VectorXd x = gen.draw(rng);
            if (!gs_raw) {
                x = dgs::normalize_signal(x);
            }
            emit(vector_json(x), gs_out);
        } else if (*recon) {
            const dgs::RwLaplacian lap = dgs::random_walk_laplacian(dgs::read_graph(rc_graph));
            const auto ids = load_json_arg(rc_samples).get<std::vector<dgs::NodeId>>();
            const auto obs = load_json_arg(rc_obs).get<std::vector<double>>();
            if (ids.size() != obs.size()) {
                throw dgs::Error(dgs::ErrorCode::DimensionMismatch, "samples and observations differ in length");
            }
            // Observations follow the order of --samples; the solver wants ascending ids.
            std::vector<std::size_t> order(ids.size());
            for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
            const dgs::SampleSet set(lap.n(), ids);
            Eigen::VectorXd y(static_cast<Eigen::Index>(obs.size()));
            for (std::size_t k = 0; k < order.size(); ++k) {
                y[static_cast<Eigen::Index>(k)] = obs[order[k]];
            }
            dgs::ReconOptions opts;
            opts.tol = rc_tol;
            const dgs::ReconResult r = dgs::reconstruct(y, set, rc_mu, lap, opts);
            emit(vector_json(r.x), rc_out);
        } else if (*sample) {
            const dgs::RwLaplacian lap = dgs::random_walk_laplacian(dgs::read_graph(sm_graph));
            const dgs::Method method = dgs::parse_method(sm_method);
            json doc;
            if (method == dgs::Method::GdaDirect) {
                dgs::GdaDirectOptions opts;
                opts.eps = sm_eps;
                const auto res = dgs::gda_direct_sample(lap, sm_mu, sm_budget, opts);
                doc["samples"] = res.samples.nodes();
                doc["params"] = {{"eps", res.params.eps},
                                 {"c", res.params.c},
                                 {"delta", res.params.delta},
                                 {"rho", res.params.rho}};
                doc["threshold"] = res.outcome.threshold;
            } else {
                dgs::Rng rng(sm_seed);
                const dgs::SamplerSettings settings{sm_mu, sm_eps, 0};
                doc["samples"] = dgs::run_sampler(method, lap, sm_budget, settings, rng).nodes();
                doc["params"] = nullptr;
                doc["threshold"] = nullptr;
            }
            emit(doc, sm_out);
        } else if (*bench) {
            const dgs::ExperimentConfig cfg = dgs::read_config(bn_config);
            const auto rows = dgs::run_experiment(cfg, bn_jobs);
            dgs::write_results(rows, bn_out, dgs::parse_format(bn_format));
            std::size_t errored = 0;
            for (const auto& r : rows) {
                if (r.error) ++errored;
            }
            if (errored > 0) {
                std::cerr << errored << " of " << rows.size() << " rows errored\n";
                return 1;
            }
        } else if (*timing) {
            std::vector<dgs::Method> methods;
            for (const auto& m : tm_methods) methods.push_back(dgs::parse_method(m));
            std::cout << "method,n,seconds\n";
            for (const auto& row : dgs::timing_sweep(tm_ns, tm_p, tm_fraction, methods, tm_seed)) {
                std::printf("%s,%zu,%.6f\n", std::string(dgs::to_string(row.method)).c_str(), row.n, row.seconds);
            }
        }
    } catch (const dgs::Error& ex) {
        std::cerr << "error [" << dgs::to_string(ex.code()) << "]: " << ex.what() << '\n';
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    return 0;
}
