#include "dgs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "dgs/baselines.hpp"

namespace dgs {

std::string_view to_string(Method method) {
    switch (method) {
        case Method::GdaDirect: return "gda-direct";
        case Method::Random: return "random";
        case Method::EOptimal: return "e-optimal";
    }
    return "?";
}

Method parse_method(std::string_view text) {
    if (text == "gda-direct") return Method::GdaDirect;
    if (text == "random") return Method::Random;
    if (text == "e-optimal") return Method::EOptimal;
    throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(text) + "'");
}

ResultFormat parse_format(std::string_view text) {
    if (text == "csv") return ResultFormat::Csv;
    if (text == "json") return ResultFormat::Json;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(text) + "'");
}

SampleSet run_sampler(Method method, const RwLaplacian& lap, std::size_t budget, const SamplerSettings& settings,
                      Rng& rng) {
    switch (method) {
        case Method::GdaDirect: {
            GdaDirectOptions opts;
            opts.eps = settings.eps;
            return gda_direct_sample(lap, settings.mu, budget, opts).samples;
        }
        case Method::Random: return random_sample(lap.n(), budget, rng);
        case Method::EOptimal: return e_optimal_greedy(lap, budget, settings.eoptimal_bandwidth);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown method");
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, "config: " + msg); };
    if (n < 2) fail("n must be >= 2");
    if (!(p >= 0.0 && p < 1.0)) fail("p must lie in [0, 1)");
    if (methods.empty()) fail("methods must be nonempty");
    if (signals.empty()) fail("signals must be nonempty");
    for (std::size_t k : budgets) {
        if (k < 1 || k >= n) fail("every budget must satisfy 1 <= K < n");
    }
    if (!(mu > 0.0)) fail("mu must be positive");
    if (!(cg_tol > 0.0)) fail("cg_tol must be positive");
    if (!(noise_std >= 0.0)) fail("noise_std must be nonnegative");
    if (eps && !(*eps > 0.0 && *eps < 1.0)) fail("eps must lie in (0, 1)");
    for (const SignalSpec& s : signals) {
        if (s.band && (*s.band < 1 || *s.band > n)) fail("GS1 band must satisfy 1 <= m <= n");
        if (!(s.omega > 0.0)) fail("GS2 omega must be positive");
        if (!(s.alpha >= 0.0 && s.alpha <= 1.0)) fail("GS3 alpha must lie in [0, 1]");
    }
}

namespace {

nlohmann::json signal_to_json(const SignalSpec& s) {
    nlohmann::json j{{"kind", to_string(s.kind)}};
    switch (s.kind) {
        case SignalKind::GS1:
            if (s.band) j["m"] = *s.band;
            break;
        case SignalKind::GS2: j["omega"] = s.omega; break;
        case SignalKind::GS3:
            j["alpha"] = s.alpha;
            j["steps"] = s.steps;
            break;
    }
    return j;
}

SignalSpec signal_from_json(const nlohmann::json& j) {
    SignalSpec s;
    if (j.is_string()) {
        s.kind = parse_signal_kind(j.get<std::string>());
        return s;
    }
    s.kind = parse_signal_kind(j.at("kind").get<std::string>());
    if (j.contains("m")) s.band = j.at("m").get<std::size_t>();
    s.omega = j.value("omega", s.omega);
    s.alpha = j.value("alpha", s.alpha);
    s.steps = j.value("steps", s.steps);
    return s;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& doc) {
    ExperimentConfig cfg;
    try {
        cfg.n = doc.value("n", cfg.n);
        cfg.p = doc.value("p", cfg.p);
        cfg.num_graphs = doc.value("num_graphs", cfg.num_graphs);
        cfg.num_signals_per_graph = doc.value("num_signals_per_graph", cfg.num_signals_per_graph);
        if (doc.contains("budgets")) cfg.budgets = doc.at("budgets").get<std::vector<std::size_t>>();
        if (doc.contains("methods")) {
            cfg.methods.clear();
            for (const auto& m : doc.at("methods")) cfg.methods.push_back(parse_method(m.get<std::string>()));
        }
        if (doc.contains("signals")) {
            cfg.signals.clear();
            for (const auto& s : doc.at("signals")) cfg.signals.push_back(signal_from_json(s));
        }
        cfg.mu = doc.value("mu", cfg.mu);
        cfg.cg_tol = doc.value("cg_tol", cfg.cg_tol);
        cfg.cg_jacobi = doc.value("cg_jacobi", cfg.cg_jacobi);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.noise_std = doc.value("noise_std", cfg.noise_std);
        if (doc.contains("eps") && !doc.at("eps").is_null()) cfg.eps = doc.at("eps").get<double>();
        cfg.eoptimal_bandwidth = doc.value("eoptimal_bandwidth", cfg.eoptimal_bandwidth);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::InvalidArgument, std::string("config: ") + ex.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : cfg.methods) methods.push_back(to_string(m));
    nlohmann::json signals = nlohmann::json::array();
    for (const SignalSpec& s : cfg.signals) signals.push_back(signal_to_json(s));
    nlohmann::json doc{{"n", cfg.n},
                       {"p", cfg.p},
                       {"num_graphs", cfg.num_graphs},
                       {"num_signals_per_graph", cfg.num_signals_per_graph},
                       {"budgets", cfg.budgets},
                       {"methods", methods},
                       {"signals", signals},
                       {"mu", cfg.mu},
                       {"cg_tol", cfg.cg_tol},
                       {"cg_jacobi", cfg.cg_jacobi},
                       {"seed", cfg.seed},
                       {"noise_std", cfg.noise_std},
                       {"eoptimal_bandwidth", cfg.eoptimal_bandwidth}};
    doc["eps"] = cfg.eps ? nlohmann::json(*cfg.eps) : nlohmann::json(nullptr);
    return doc;
}

ExperimentConfig read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::InvalidArgument, path + ": " + ex.what());
    }
    return config_from_json(doc);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stream tags keep graph, signal, sampler and noise draws independent.
enum : std::uint64_t { kGraphStream = 1, kSignalStream = 2, kSamplerStream = 3, kNoiseStream = 4 };

struct GraphData {
    RwLaplacian lap;
    // signals[kind_idx][trial], normalized
    std::vector<std::vector<Eigen::VectorXd>> signals;
};

GraphData prepare_graph(const ExperimentConfig& cfg, std::size_t graph_idx) {
    Rng graph_rng(derive_seed(cfg.seed, {kGraphStream, graph_idx}));
    GraphData data{random_walk_laplacian(gen_er_digraph(cfg.n, cfg.p, graph_rng)), {}};
    data.signals.resize(cfg.signals.size());
    for (std::size_t k = 0; k < cfg.signals.size(); ++k) {
        const SignalGenerator gen(data.lap, cfg.signals[k]);
        for (std::size_t t = 0; t < cfg.num_signals_per_graph; ++t) {
            Rng rng(derive_seed(cfg.seed, {kSignalStream, graph_idx, k, t}));
            data.signals[k].push_back(normalize_signal(gen.draw(rng)));
        }
    }
    return data;
}

std::vector<ResultRow> run_cell(const ExperimentConfig& cfg, const GraphData& data, std::size_t graph_idx,
                                std::size_t method_idx, std::size_t budget) {
    const Method method = cfg.methods[method_idx];
    std::vector<ResultRow> rows;
    rows.reserve(cfg.signals.size() * cfg.num_signals_per_graph);

    ResultRow base;
    base.method = method;
    base.budget = budget;
    base.graph_idx = graph_idx;

    SampleSet samples;
    std::optional<std::string> sample_error;
    const SamplerSettings settings{cfg.mu, cfg.eps, cfg.eoptimal_bandwidth};
    Rng sampler_rng(derive_seed(cfg.seed, {kSamplerStream, graph_idx, static_cast<std::uint64_t>(method), budget}));
    const auto sample_start = Clock::now();
    try {
        samples = run_sampler(method, data.lap, budget, settings, sampler_rng);
    } catch (const std::exception& ex) {
        sample_error = ex.what();
    }
    base.sample_time_s = seconds_since(sample_start);

    const ReconOptions recon{cfg.cg_tol, 0, cfg.cg_jacobi};
    for (std::size_t k = 0; k < cfg.signals.size(); ++k) {
        for (std::size_t t = 0; t < cfg.num_signals_per_graph; ++t) {
            ResultRow row = base;
            row.signal_kind = cfg.signals[k].kind;
            row.trial = t;
            if (sample_error) {
                row.error = sample_error;
                row.mse = std::nan("");
                rows.push_back(std::move(row));
                continue;
            }
            const Eigen::VectorXd& x = data.signals[k][t];
            Eigen::VectorXd y(static_cast<Eigen::Index>(samples.size()));
            for (std::size_t s = 0; s < samples.size(); ++s) {
                y[static_cast<Eigen::Index>(s)] = x[samples.nodes()[s]];
            }
            if (cfg.noise_std > 0.0) {
                Rng noise_rng(derive_seed(
                    cfg.seed, {kNoiseStream, graph_idx, k, t, static_cast<std::uint64_t>(method), budget}));
                std::normal_distribution<double> noise(0.0, cfg.noise_std);
                for (Eigen::Index s = 0; s < y.size(); ++s) {
                    y[s] += noise(noise_rng);
                }
            }
            const auto recon_start = Clock::now();
            try {
                const ReconResult r = reconstruct(y, samples, cfg.mu, data.lap, recon);
                row.mse = mse(x, r.x);
            } catch (const std::exception& ex) {
                row.error = ex.what();
                row.mse = std::nan("");
            }
            row.recon_time_s = seconds_since(recon_start);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, unsigned jobs) {
    cfg.validate();
    std::vector<ResultRow> rows;
    const std::size_t cells_per_graph = cfg.methods.size() * cfg.budgets.size();
    for (std::size_t g = 0; g < cfg.num_graphs; ++g) {
        const GraphData data = prepare_graph(cfg, g);
        std::vector<std::vector<ResultRow>> cell_rows(cells_per_graph);
        auto work = [&](std::size_t cell) {
            const std::size_t method_idx = cell / cfg.budgets.size();
            const std::size_t budget = cfg.budgets[cell % cfg.budgets.size()];
            cell_rows[cell] = run_cell(cfg, data, g, method_idx, budget);
        };
        if (jobs <= 1) {
            for (std::size_t cell = 0; cell < cells_per_graph; ++cell) {
                work(cell);
            }
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < jobs; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t cell = next++; cell < cells_per_graph; cell = next++) {
                        work(cell);
                    }
                });
            }
            for (auto& th : pool) {
                th.join();
            }
        }
        for (auto& cr : cell_rows) {
            rows.insert(rows.end(), std::make_move_iterator(cr.begin()), std::make_move_iterator(cr.end()));
        }
    }
    return rows;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string results_to_csv(const std::vector<ResultRow>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const ResultRow& r : rows) {
        out += to_string(r.method);
        out += ',' + std::to_string(r.budget);
        out += ',' + std::to_string(r.graph_idx);
        out += ',';
        out += to_string(r.signal_kind);
        out += ',' + std::to_string(r.trial);
        out += ',' + (r.error ? std::string("ERROR") : format_double(r.mse));
        out += ',' + format_double(r.sample_time_s);
        out += ',' + format_double(r.recon_time_s);
        out += '\n';
    }
    return out;
}

nlohmann::json results_to_json(const std::vector<ResultRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ResultRow& r : rows) {
        nlohmann::json j{{"method", to_string(r.method)},
                         {"K", r.budget},
                         {"graph_idx", r.graph_idx},
                         {"signal_kind", to_string(r.signal_kind)},
                         {"trial", r.trial},
                         {"sample_time_s", r.sample_time_s},
                         {"recon_time_s", r.recon_time_s}};
        if (r.error) {
            j["mse"] = nullptr;
            j["error"] = *r.error;
        } else {
            j["mse"] = r.mse;
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

void write_results(const std::vector<ResultRow>& rows, const std::string& path, ResultFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path);
    }
    if (format == ResultFormat::Csv) {
        out << results_to_csv(rows);
    } else {
        out << results_to_json(rows).dump(1) << '\n';
    }
    if (!out) {
        throw Error(ErrorCode::Io, "write failed for " + path);
    }
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
    std::vector<ResultRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw Error(ErrorCode::InvalidArgument, "results CSV: unexpected header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            f.push_back(field);
        }
        if (f.size() != 8) {
            throw Error(ErrorCode::InvalidArgument, "results CSV: expected 8 fields in '" + line + "'");
        }
        ResultRow r;
        r.method = parse_method(f[0]);
        r.budget = std::stoul(f[1]);
        r.graph_idx = std::stoul(f[2]);
        r.signal_kind = parse_signal_kind(f[3]);
        r.trial = std::stoul(f[4]);
        if (f[5] == "ERROR") {
            r.error = "ERROR";
            r.mse = std::nan("");
        } else {
            r.mse = std::strtod(f[5].c_str(), nullptr);
        }
        r.sample_time_s = std::strtod(f[6].c_str(), nullptr);
        r.recon_time_s = std::strtod(f[7].c_str(), nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_results_csv(buf.str());
}

std::vector<TimingRow> timing_sweep(const std::vector<std::size_t>& ns, double p, double budget_fraction,
                                    const std::vector<Method>& methods, std::uint64_t seed, double mu) {
    if (!std::is_sorted(ns.begin(), ns.end())) {
        throw Error(ErrorCode::InvalidArgument, "timing_sweep: sizes must be ascending");
    }
    if (!(budget_fraction > 0.0 && budget_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "timing_sweep: budget fraction must lie in (0, 1)");
    }
    std::vector<TimingRow> rows;
    for (std::size_t n : ns) {
        Rng graph_rng(derive_seed(seed, {kGraphStream, n}));
        const DiGraph g = gen_er_digraph(n, p, graph_rng);
        const auto budget = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::llround(budget_fraction * static_cast<double>(n))), 1, n - 1);
        for (Method method : methods) {
            Rng rng(derive_seed(seed, {kSamplerStream, n, static_cast<std::uint64_t>(method)}));
            const auto start = Clock::now();
            // The Laplacian is part of every sampler's input preparation, so it is timed.
            const RwLaplacian lap = random_walk_laplacian(g);
            const SampleSet s = run_sampler(method, lap, budget, SamplerSettings{mu, std::nullopt, 0}, rng);
            rows.push_back({method, n, seconds_since(start)});
            (void)s;
        }
    }
    return rows;
}

}  // namespace dgs
