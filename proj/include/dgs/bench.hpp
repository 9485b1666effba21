#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dgs/gda_direct.hpp"
#include "dgs/recon.hpp"
#include "dgs/signals.hpp"

namespace dgs {

enum class Method { GdaDirect, Random, EOptimal };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

struct SamplerSettings {
    double mu = kDefaultMu;
    std::optional<double> eps;        // GDA-Direct ε override
    std::size_t eoptimal_bandwidth = 0;  // 0 means m = K
};

/// Dispatch to one of the three samplers. `rng` is only consumed by Random.
SampleSet run_sampler(Method method, const RwLaplacian& lap, std::size_t budget, const SamplerSettings& settings,
                      Rng& rng);

inline std::vector<SignalSpec> default_signals() {
    std::vector<SignalSpec> out(3);
    out[1].kind = SignalKind::GS2;
    out[2].kind = SignalKind::GS3;
    return out;
}

struct ExperimentConfig {
    std::size_t n = 200;
    double p = 0.1;
    std::size_t num_graphs = 5;
    std::size_t num_signals_per_graph = 200;
    std::vector<std::size_t> budgets{10, 20, 30, 40, 50, 60};
    std::vector<Method> methods{Method::GdaDirect, Method::Random, Method::EOptimal};
    std::vector<SignalSpec> signals = default_signals();
    double mu = kDefaultMu;
    double cg_tol = 1e-8;
    bool cg_jacobi = false;
    std::uint64_t seed = 2023;
    double noise_std = 0.0;
    std::optional<double> eps;
    std::size_t eoptimal_bandwidth = 0;

    /// Throws InvalidArgument describing the first violated constraint.
    void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig read_config(const std::string& path);

struct ResultRow {
    Method method = Method::GdaDirect;
    std::size_t budget = 0;
    std::size_t graph_idx = 0;
    SignalKind signal_kind = SignalKind::GS1;
    std::size_t trial = 0;
    double mse = 0.0;
    double sample_time_s = 0.0;
    double recon_time_s = 0.0;
    std::optional<std::string> error;

    bool operator==(const ResultRow&) const = default;
};

/// Rows ordered by (graph, method, budget, signal kind, trial) in config order.
/// Each (graph, method, budget) cell runs its sampler once and reuses the
/// sample set for every signal. `jobs` > 1 runs cells on worker threads.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, unsigned jobs = 1);

enum class ResultFormat { Csv, Json };

ResultFormat parse_format(std::string_view text);

inline constexpr std::string_view kCsvHeader =
    "method,K,graph_idx,signal_kind,trial,mse,sample_time_s,recon_time_s";

/// CSV uses 17 significant digits; errored rows carry ERROR in the mse column.
void write_results(const std::vector<ResultRow>& rows, const std::string& path, ResultFormat format);
std::string results_to_csv(const std::vector<ResultRow>& rows);
nlohmann::json results_to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(const std::string& path);
std::vector<ResultRow> parse_results_csv(std::string_view text);

struct TimingRow {
    Method method;
    std::size_t n;
    double seconds;
};

/// One graph per size, one timed sampling run per method at K = fraction·n.
std::vector<TimingRow> timing_sweep(const std::vector<std::size_t>& ns, double p, double budget_fraction,
                                    const std::vector<Method>& methods, std::uint64_t seed,
                                    double mu = kDefaultMu);

}  // namespace dgs
