#include "corona/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "corona/oracle.hpp"
#include "corona/spectral.hpp"
#include "corona/structural.hpp"
#include "corona/verify.hpp"

namespace corona {
namespace {

using json = nlohmann::ordered_json;

constexpr int kSchema = 1;

struct RawArgs {
    std::string command;
    std::string seed;
    std::uint64_t m = 0;
    std::string kind = "adjacency";
    std::string out = "-";
    std::string format;
    bool betweenness = false;
    double tolerance = 1e-8;
    std::size_t node_cap = kDefaultNodeCap;
    bool force = false;
};

std::unique_ptr<CLI::App> make_app(RawArgs& raw) {
    auto app = std::make_unique<CLI::App>("Corona graph generator and analyzer", "corona");
    app->add_option("command", raw.command, "generate | stats | spectrum | verify")
        ->required()
        ->check(CLI::IsMember({"generate", "stats", "spectrum", "verify"}));
    app->add_option("--seed", raw.seed, std::string(kSeedGrammar))->required();
    app->add_option("--m", raw.m, "number of corona steps");
    app->add_option("--kind", raw.kind, "adjacency | laplacian | signless")
        ->check(CLI::IsMember({"adjacency", "laplacian", "signless"}));
    app->add_option("--out", raw.out, "output path, - for stdout");
    app->add_option("--format", raw.format, "json | csv | edges")->check(CLI::IsMember({"json", "csv", "edges"}));
    app->add_flag("--betweenness", raw.betweenness, "include betweenness in stats");
    app->add_option("--tolerance", raw.tolerance, "spectral match tolerance")->check(CLI::PositiveNumber);
    app->add_option("--node-cap", raw.node_cap, "largest graph to materialize");
    app->add_flag("--force", raw.force, "lift the all-source analysis cap");
    return app;
}

RunConfig finish(const RawArgs& raw) {
    RunConfig cfg;
    cfg.command = raw.command;
    try {
        cfg.seed = SeedDescriptor::parse(raw.seed).canonical();
    } catch (const GraphError& e) {
        throw ConfigError(e.what());
    }
    cfg.m = raw.m;
    cfg.kind = parse_matrix_kind(raw.kind);
    cfg.out = raw.out;
    cfg.format = raw.format.empty() ? (raw.command == "generate" ? "edges" : "json") : raw.format;
    if (cfg.command == "generate" && cfg.format != "edges")
        throw ConfigError("generate writes edge lists only (--format edges)");
    if (cfg.command != "generate" && cfg.format == "edges")
        throw ConfigError(cfg.command + " writes json or csv, not edges");
    if (cfg.command == "verify" && cfg.format != "json") throw ConfigError("verify writes json only");
    cfg.betweenness = raw.betweenness;
    cfg.tolerance = raw.tolerance;
    cfg.node_cap = raw.node_cap;
    cfg.force = raw.force;
    return cfg;
}

RunConfig parse_with(const std::function<void(CLI::App&)>& run_parse) {
    RawArgs raw;
    auto app = make_app(raw);
    try {
        run_parse(*app);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    return finish(raw);
}

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(" \t\"'") == std::string::npos && !s.empty()) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') q += '\\';
        q += c;
    }
    return q + "\"";
}

json wide(u128 v) {
    if (fits_u64(v)) return static_cast<std::uint64_t>(v);
    return to_string(v);
}

json series_json(const DistributionSeries& d) {
    json points = json::array();
    for (const auto& pt : d.points) points.push_back({{"value", pt.value}, {"p", pt.p}});
    return {{"cumulative", d.cumulative}, {"population", wide(d.population)}, {"points", std::move(points)}};
}

void write_series_csv(std::ostream& os, const DistributionSeries& d) {
    os << "# cumulative=" << (d.cumulative ? "true" : "false") << " population=" << to_string(d.population) << '\n';
    os << "value,probability\n";
    for (const auto& pt : d.points) os << shortest(pt.value) << ',' << shortest(pt.p) << '\n';
}

json discrepancy_json(const DiscrepancyLog& log) {
    json arr = json::array();
    for (const auto& d : log)
        arr.push_back({{"operation", d.operation},
                       {"category", d.category},
                       {"kind", std::string(to_string(d.kind))},
                       {"k", d.k},
                       {"mu", d.mu},
                       {"branch", d.branch},
                       {"formula_value", d.formula_value},
                       {"reference_value", d.reference_value},
                       {"delta", d.delta}});
    return arr;
}

json spectrum_json(const Spectrum& s) {
    json entries = json::array();
    for (const auto& e : s.entries) entries.push_back({{"value", e.value}, {"multiplicity", wide(e.multiplicity)}});
    return {{"schema", kSchema},
            {"kind", std::string(to_string(s.kind))},
            {"m", s.level},
            {"n", s.seed_nodes},
            {"entries", std::move(entries)},
            {"provenance", std::string(to_string(s.provenance))}};
}

// Output sink: the --out file when given, else the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path == "-") {
            os_ = &fallback;
            return;
        }
        file_.open(path, std::ios::binary);
        if (!file_) throw ConfigError("cannot open output file " + path);
        os_ = &file_;
    }
    std::ostream& stream() { return *os_; }
    void finish() {
        os_->flush();
        if (!*os_) throw std::runtime_error("write failed");
    }

private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

Seed load_seed(const RunConfig& cfg, std::ostream& err) {
    Seed seed;
    try {
        seed = resolve_seed(SeedDescriptor::parse(cfg.seed));
    } catch (const GraphError& e) {
        throw ConfigError(e.what());
    }
    if (seed.disconnected_warning) err << "warning: seed " << cfg.seed << " is disconnected\n";
    return seed;
}

Graph materialize(const CoronaPlan& plan, const RunConfig& cfg) {
    if (!plan.within_cap(cfg.node_cap))
        throw CapExceeded("G^(" + std::to_string(cfg.m) + ") would have " + to_string(plan.predicted_nodes) +
                          " nodes, above --node-cap " + std::to_string(cfg.node_cap));
    return corona_iterate(plan, cfg.node_cap);
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const CoronaPlan plan = CoronaPlan::make(load_seed(cfg, err), cfg.m);
    const Graph g = materialize(plan, cfg);
    Sink sink(cfg.out, out);
    write_edge_list(sink.stream(), g);
    sink.finish();
    err << "nodes predicted " << to_string(plan.predicted_nodes) << " actual " << g.node_count() << '\n';
    err << "edges predicted " << to_string(plan.predicted_edges) << " actual " << g.edge_count() << '\n';
    return kExitOk;
}

bool analysis_allowed(const Graph& g, const RunConfig& cfg) { return cfg.force || g.node_count() <= kAnalysisCap; }

json lattice_check(const Seed& seed, std::uint64_t m, const DistributionSeries& cumulative) {
    const auto r = seed.graph.regular_degree();
    if (!r || m == 0) return nullptr;
    const std::uint64_t n = seed.graph.node_count();
    json points = json::array();
    double worst = 0;
    for (std::uint64_t j = 0; j < m; ++j) {
        const double k = static_cast<double>(*r + 1 + n * j);
        double measured = 0;
        for (const auto& pt : cumulative.points)
            if (pt.value >= k) {
                measured = pt.p;
                break;
            }
        const double formula = cumulative_degree_formula_regular(n, *r, k);
        worst = std::max(worst, std::abs(measured - formula));
        points.push_back({{"k", k}, {"measured", measured}, {"formula", formula}});
    }
    return {{"r", *r}, {"points", std::move(points)}, {"max_abs_delta", worst}};
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const CoronaPlan plan = CoronaPlan::make(load_seed(cfg, err), cfg.m);
    const Graph g = materialize(plan, cfg);
    const bool analysis = analysis_allowed(g, cfg);
    if (cfg.betweenness && !analysis)
        throw CapExceeded("betweenness refused on " + std::to_string(g.node_count()) + " nodes (cap " +
                          std::to_string(kAnalysisCap) + "); pass --force to override");

    const DistributionSeries hist = degree_histogram(g);
    const DistributionSeries cum = cumulative_series(hist);
    std::optional<BetweennessVector> b;
    if (cfg.betweenness) b = betweenness_exact(g);

    Sink sink(cfg.out, out);
    std::ostream& os = sink.stream();
    if (cfg.format == "csv") {
        write_series_csv(os, hist);
        os << '\n';
        write_series_csv(os, cum);
        if (b) {
            os << "\nnode,b\n";
            for (std::size_t v = 0; v < b->values.size(); ++v) os << v << ',' << shortest(b->values[v]) << '\n';
        }
        sink.finish();
        return kExitOk;
    }

    const Seed& seed = plan.seed;
    json report;
    report["schema"] = kSchema;
    report["command"] = "stats";
    report["seed"] = cfg.seed;
    report["m"] = cfg.m;
    report["seed_connected"] = !seed.disconnected_warning;
    report["nodes"] = {{"predicted", wide(plan.predicted_nodes)}, {"actual", g.node_count()}};
    report["edges"] = {{"predicted", wide(plan.predicted_edges)}, {"actual", g.edge_count()}};
    report["average_degree"] = {{"measured", average_degree(g)},
                                {"limit", average_degree_limit(plan.n, plan.seed_edges)}};
    report["density"] = g.node_count() >= 2 ? json(density(g)) : json(nullptr);

    json diameter = {{"measured", nullptr}, {"formula", nullptr}};
    if (!seed.disconnected_warning) {
        diameter["formula"] = diameter_formula(diameter_measured(seed.graph), cfg.m);
        if (analysis) diameter["measured"] = diameter_measured(g);
        else diameter["note"] = "measured diameter skipped above the analysis cap; pass --force";
    } else {
        diameter["note"] = "graph is disconnected";
    }
    report["diameter"] = std::move(diameter);

    report["degree_formula_agrees"] = degree_counts(g) == degree_count_formula(seed.graph, cfg.m);
    report["degree_distribution"] = series_json(hist);
    report["cumulative_degree"] = series_json(cum);
    report["cumulative_degree_law"] = lattice_check(seed, cfg.m, cum);
    if (cum.points.size() >= 3) {
        const ExponentialFit fit = fit_exponential(cum);
        report["degree_exponential_fit"] = {
            {"rate", fit.rate}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}};
    } else {
        report["degree_exponential_fit"] = nullptr;
    }

    if (b) {
        const DistributionSeries bdist = value_distribution(b->values);
        const DistributionSeries bcum = cumulative_series(bdist);
        json bj = {{"convention", "unordered"}, {"cumulative", series_json(bcum)}};
        try {
            const PowerLawFit fit = fit_power_law(bdist);
            bj["gamma"] = fit.gamma;
            bj["intercept"] = fit.intercept;
            bj["r_squared"] = fit.r_squared;
            bj["fit_range"] = {fit.fit_range.first, fit.fit_range.second};
        } catch (const DomainError& e) {
            bj["gamma"] = nullptr;
            bj["note"] = e.what();
        }
        report["betweenness"] = std::move(bj);
    }
    os << report.dump(2) << '\n';
    sink.finish();
    return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Seed seed = load_seed(cfg, err);
    DiscrepancyLog log;
    std::optional<Spectrum> s = closed_form_spectrum(seed.graph, cfg.kind, cfg.m, &log);
    std::string notice;
    if (!s) {
        notice = "no closed form for " + std::string(to_string(cfg.kind)) + " spectrum of seed " + cfg.seed +
                 "; values come from the numerical oracle";
        err << "notice: " << notice << '\n';
        const CoronaPlan plan = CoronaPlan::make(seed, cfg.m);
        if (plan.predicted_nodes > kDefaultOracleCap)
            throw CapExceeded("oracle-only spectrum limited to " + std::to_string(kDefaultOracleCap) + " nodes");
        const Graph g = materialize(plan, cfg);
        s = Spectrum::from_values(cfg.kind, sym_eigenvalues(build_matrix(g, cfg.kind)), cfg.m,
                                  seed.graph.node_count(), Provenance::oracle);
    }

    Sink sink(cfg.out, out);
    std::ostream& os = sink.stream();
    if (cfg.format == "csv") {
        os << "# kind=" << to_string(s->kind) << " m=" << s->level << " n=" << s->seed_nodes
           << " provenance=" << to_string(s->provenance) << '\n';
        os << "value,multiplicity\n";
        for (const auto& e : s->entries) os << shortest(e.value) << ',' << to_string(e.multiplicity) << '\n';
    } else {
        json j = spectrum_json(*s);
        if (!notice.empty()) j["notice"] = notice;
        if (!log.empty()) j["discrepancies"] = discrepancy_json(log);
        os << j.dump(2) << '\n';
    }
    sink.finish();
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Seed seed = load_seed(cfg, err);
    VerificationReport rep;
    try {
        rep = verify_spectrum(seed, cfg.kind, cfg.m, cfg.tolerance, cfg.node_cap);
    } catch (const SpectralError& e) {
        throw ConfigError(e.what());
    }
    json mismatches = json::array();
    for (const auto& mm : rep.match.mismatches)
        mismatches.push_back({{"index", mm.index}, {"closed", mm.closed}, {"numeric", mm.numeric}});
    json j;
    j["schema"] = kSchema;
    j["seed"] = rep.seed;
    j["kind"] = std::string(to_string(rep.kind));
    j["m"] = rep.m;
    j["nodes"] = rep.nodes;
    j["max_abs_delta"] = rep.match.max_abs_delta;
    j["mean_abs_delta"] = rep.match.mean_abs_delta;
    j["residual_max"] = rep.match.residual_max;
    j["discrepancies"] = discrepancy_json(rep.discrepancies);
    j["tolerance"] = rep.match.tolerance;
    j["count_mismatched"] = rep.match.count_mismatched;
    j["mismatches"] = std::move(mismatches);
    j["passed"] = rep.passed();

    Sink sink(cfg.out, out);
    sink.stream() << j.dump(2) << '\n';
    sink.finish();
    err << (rep.passed() ? "verification passed" : "verification FAILED") << '\n';
    return rep.passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

RunConfig RunConfig::parse(const std::vector<std::string>& args) {
    return parse_with([&](CLI::App& app) {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    });
}

RunConfig RunConfig::parse_canonical(const std::string& line) {
    return parse_with([&](CLI::App& app) { app.parse(line, false); });
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    os << command << " --seed " << quote_if_needed(seed) << " --m " << m << " --kind " << to_string(kind)
       << " --out " << quote_if_needed(out) << " --format " << format << " --tolerance " << shortest(tolerance)
       << " --node-cap " << node_cap;
    if (betweenness) os << " --betweenness";
    if (force) os << " --force";
    return os.str();
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "generate") return cmd_generate(cfg, out, err);
        if (cfg.command == "stats") return cmd_stats(cfg, out, err);
        if (cfg.command == "spectrum") return cmd_spectrum(cfg, out, err);
        if (cfg.command == "verify") return cmd_verify(cfg, out, err);
        throw ConfigError("unknown command " + cfg.command);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    for (const auto& a : args)
        if (a == "-h" || a == "--help") {
            RawArgs raw;
            out << make_app(raw)->help();
            return kExitOk;
        }
    RunConfig cfg;
    try {
        cfg = RunConfig::parse(args);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SpectralError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return run_command(cfg, out, err);
}

}  // namespace corona
