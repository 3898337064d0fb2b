#include "discbound/serialize.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using discbound::json;

int log_level() {
    const char* env = std::getenv("DISCBOUND_LOG");
    if (!env) return 1;
    std::string v(env);
    if (v == "quiet") return 0;
    if (v == "debug") return 2;
    return 1;
}

void info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "discbound: " << msg << "\n";
}

// Ladder specs: "a..b" for 2^-a .. 2^-b, or a comma list of radii.
std::vector<double> parse_ladder(const std::string& spec) {
    std::vector<double> out;
    if (auto dots = spec.find(".."); dots != std::string::npos) {
        int a = std::stoi(spec.substr(0, dots));
        int b = std::stoi(spec.substr(dots + 2));
        if (b < a) std::swap(a, b);
        for (int k = a; k <= b; ++k) out.push_back(std::exp2(-k));
        return out;
    }
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        out.push_back(std::stod(spec.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return json::parse(in);
}

struct CommonOpts {
    std::string out;
    std::string format = "json";
    std::string config_file;
    unsigned seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "output path ('-' for stdout)");
    cmd->add_option("--format", c.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    cmd->add_option("--config", c.config_file, "JSON config file overriding flags");
    cmd->add_option("--seed", c.seed, "echoed in reports; outputs are deterministic");
}

// config file overrides a flag value when the key is present
template <typename T>
void cfg_override(const json& cfg, const char* key, T& value) {
    if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary approach regions, projective adjacency, and the "
                 "divergence construction on the unit disc"};
    app.require_subcommand(1);

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "classify an approach region");
    std::string cl_region = "prop2b", cl_ladder = "3..20";
    int cl_budget = 256;
    CommonOpts cl_common;
    classify_cmd->add_option("--region", cl_region, "region spec");
    classify_cmd->add_option("--ladder", cl_ladder, "radius ladder");
    classify_cmd->add_option("--budget", cl_budget, "samples per radius");
    add_common(classify_cmd, cl_common);

    // adjacency
    auto* adj_cmd = app.add_subcommand("adjacency", "projective-adjacency test");
    std::string aj_region = "prop2b", aj_ladder = "3..10", aj_mode = "auto";
    unsigned aj_b = 2;
    int aj_budget = 256;
    CommonOpts aj_common;
    adj_cmd->add_option("--region", aj_region, "region spec");
    adj_cmd->add_option("--b", aj_b, "aperture parameter");
    adj_cmd->add_option("--ladder", aj_ladder, "radius ladder");
    adj_cmd->add_option("--budget", aj_budget, "samples per radius");
    adj_cmd->add_option("--mode", aj_mode, "witness, refute, or auto")
        ->check(CLI::IsMember({"witness", "refute", "auto"}));
    add_common(adj_cmd, aj_common);

    // poisson
    auto* poi_cmd = app.add_subcommand("poisson", "evaluate Poisson data of an indicator");
    std::string poi_indicator, poi_points;
    CommonOpts poi_common;
    poi_cmd->add_option("--indicator", poi_indicator, "indicator spec JSON")->required();
    poi_cmd->add_option("--points", poi_points, "JSON list of [re, im] points")->required();
    add_common(poi_cmd, poi_common);

    // tent-constant
    auto* tent_cmd = app.add_subcommand("tent-constant", "estimate the tent constant");
    std::string tc_ladder = "0.001,0.01,0.1,1.0";
    int tc_density = 48;
    CommonOpts tc_common;
    tent_cmd->add_option("--theta-ladder", tc_ladder, "arc-length ladder");
    tent_cmd->add_option("--density", tc_density, "grid density");
    add_common(tent_cmd, tc_common);

    // build
    auto* build_cmd = app.add_subcommand("build", "run the divergence construction");
    discbound::CounterexampleConfig bc;
    CommonOpts b_common;
    build_cmd->add_option("--family", bc.family, "family spec (rotation-invariant)");
    build_cmd->add_option("--b", bc.family_b, "family adjacency parameter");
    build_cmd->add_option("--levels", bc.levels, "J");
    build_cmd->add_option("--truncation", bc.truncation, "K");
    build_cmd->add_option("--grid", bc.grid, "boundary grid size");
    build_cmd->add_option("--egorov-c", bc.egorov_c, "threshold constant");
    build_cmd->add_option("--tent-density", bc.tent_grid_density, "tent sampling density");
    add_common(build_cmd, b_common);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verify oscillation of an artifact");
    std::string vf_artifact;
    int vf_samples = 0, vf_threads = 0;
    CommonOpts vf_common;
    verify_cmd->add_option("--artifact", vf_artifact, "artifact JSON")->required();
    verify_cmd->add_option("--samples", vf_samples, "cap on verified points (0 = all)");
    verify_cmd->add_option("--threads", vf_threads, "worker threads (0 = hardware)");
    add_common(verify_cmd, vf_common);

    // figures
    auto* fig_cmd = app.add_subcommand("figures", "SVG plot of an artifact");
    std::string fg_artifact;
    CommonOpts fg_common;
    fig_cmd->add_option("--artifact", fg_artifact, "artifact JSON")->required();
    add_common(fig_cmd, fg_common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify_cmd->parsed()) {
            if (!cl_common.config_file.empty()) {
                json cfg = load_json(cl_common.config_file);
                cfg_override(cfg, "region", cl_region);
                cfg_override(cfg, "ladder", cl_ladder);
                cfg_override(cfg, "budget", cl_budget);
            }
            auto region = discbound::parse_region_spec(cl_region);
            auto ladder = parse_ladder(cl_ladder);
            auto rep = discbound::classify(region, ladder, cl_budget);
            json out = discbound::to_json(rep);
            out["region"] = cl_region;
            out["seed"] = cl_common.seed;
            write_output(cl_common.out, cl_common.format == "csv"
                                            ? discbound::to_csv(rep)
                                            : discbound::dump_json(out) + "\n");
            info(std::string("verdict ") + discbound::to_string(rep.verdict));
        } else if (adj_cmd->parsed()) {
            if (!aj_common.config_file.empty()) {
                json cfg = load_json(aj_common.config_file);
                cfg_override(cfg, "region", aj_region);
                cfg_override(cfg, "b", aj_b);
                cfg_override(cfg, "ladder", aj_ladder);
                cfg_override(cfg, "budget", aj_budget);
                cfg_override(cfg, "mode", aj_mode);
            }
            auto region = discbound::parse_region_spec(aj_region);
            auto ladder = parse_ladder(aj_ladder);
            auto mode = aj_mode == "witness" ? discbound::AdjacencyMode::Witness
                        : aj_mode == "refute" ? discbound::AdjacencyMode::Refute
                                              : discbound::AdjacencyMode::Auto;
            auto wit = discbound::test_projective_adjacency(region, aj_b, ladder,
                                                            aj_budget, mode);
            json out = discbound::to_json(wit);
            out["region"] = aj_region;
            out["seed"] = aj_common.seed;
            write_output(aj_common.out, discbound::dump_json(out) + "\n");
            info(std::string("verdict ") + discbound::to_string(wit.verdict));
        } else if (poi_cmd->parsed()) {
            auto f = discbound::indicator_from_json(load_json(poi_indicator));
            json pts = load_json(poi_points);
            json rows = json::array();
            for (const auto& p : pts) {
                discbound::DiscPoint z(p.at(0).get<double>(), p.at(1).get<double>());
                bool clamped = false;
                double u = discbound::poisson_eval(f, z, &clamped);
                double v = discbound::conjugate_eval(f, z);
                auto h = discbound::holo_eval(f, z);
                rows.push_back({{"z", {z.re(), z.im()}},
                                {"u", u},
                                {"v", v},
                                {"h", {h.real(), h.imag()}},
                                {"clamped", clamped}});
            }
            json out{{"type", "poisson_values"}, {"rows", rows}, {"seed", poi_common.seed}};
            write_output(poi_common.out, discbound::dump_json(out) + "\n");
        } else if (tent_cmd->parsed()) {
            auto ladder = parse_ladder(tc_ladder);
            auto est = discbound::estimate_tent_constant(ladder, tc_density);
            json out = discbound::to_json(est);
            out["seed"] = tc_common.seed;
            write_output(tc_common.out, discbound::dump_json(out) + "\n");
            info("c0 = " + std::to_string(est.c0));
        } else if (build_cmd->parsed()) {
            if (!b_common.config_file.empty()) {
                json cfg = load_json(b_common.config_file);
                cfg_override(cfg, "family", bc.family);
                cfg_override(cfg, "family_b", bc.family_b);
                cfg_override(cfg, "levels", bc.levels);
                cfg_override(cfg, "truncation", bc.truncation);
                cfg_override(cfg, "grid", bc.grid);
                cfg_override(cfg, "egorov_c", bc.egorov_c);
                cfg_override(cfg, "tent_grid_density", bc.tent_grid_density);
            }
            bc.seed = b_common.seed;
            auto art = discbound::build_counterexample(bc);
            write_output(b_common.out, discbound::dump_json(discbound::to_json(art)) + "\n");
            info("artifact built: c0 = " + std::to_string(art.c0) +
                 ", s = " + std::to_string(art.s));
        } else if (verify_cmd->parsed()) {
            auto art = discbound::artifact_from_json(load_json(vf_artifact));
            auto family = discbound::family_from_config(art.config);
            auto samples = discbound::verification_samples(art);
            if (vf_samples > 0 && (std::size_t)vf_samples < samples.size()) {
                // deterministic thinning
                std::vector<discbound::BoundaryPoint> thin;
                double step = (double)samples.size() / vf_samples;
                for (int i = 0; i < vf_samples; ++i)
                    thin.push_back(samples[(std::size_t)(i * step)]);
                samples = std::move(thin);
            }
            auto rep = discbound::verify_oscillation(art, family, samples, vf_threads);
            json out = discbound::to_json(rep);
            out["seed"] = vf_common.seed;
            write_output(vf_common.out, vf_common.format == "csv"
                                            ? discbound::to_csv(rep)
                                            : discbound::dump_json(out) + "\n");
            info("oscillation pass rate " + std::to_string(rep.pass_rate) +
                 ", fatou pass rate " + std::to_string(rep.fatou_pass_rate));
        } else if (fig_cmd->parsed()) {
            auto art = discbound::artifact_from_json(load_json(fg_artifact));
            auto family = discbound::family_from_config(art.config);
            write_output(fg_common.out, discbound::artifact_figure_svg(art, family));
        }
    } catch (const discbound::hypothesis_error& e) {
        std::cerr << "hypothesis gate failed [" << e.hypothesis() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
