#include "discbound/serialize.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace discbound {

ApproachRegion parse_region_spec(const std::string& spec) {
    std::string body = spec;
    double rotation = 0.0;
    if (auto at = spec.find('@'); at != std::string::npos) {
        body = spec.substr(0, at);
        rotation = std::stod(spec.substr(at + 1));
    }
    BoundaryPoint w(rotation);
    if (body == "prop2b") return make_prop2b_region(w);
    if (body == "prop2c") return make_prop2c_region(w);
    if (body == "radial") return make_radial_region(w);
    if (body == "attached") return make_attached_example(w);
    if (body == "oscillating") return make_oscillating_example(w);
    if (body == "curve-demo") {
        auto rule = [rotation](double sp) {
            return std::polar(sp, (1.0 - sp) * (1.0 - sp) + rotation);
        };
        return make_curve_region(rule, w);
    }
    if (body.rfind("stolz:", 0) == 0)
        return make_stolz_region((unsigned)std::stoul(body.substr(6)), w);
    if (body.rfind("explicit:", 0) == 0) {
        std::ifstream in(body.substr(9));
        if (!in) throw std::invalid_argument("explicit region: cannot open " + body.substr(9));
        json j = json::parse(in);
        std::vector<DiscPoint> pts;
        for (const auto& p : j) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        for (auto& p : pts) p = p.rotated(rotation);
        return make_explicit(std::move(pts), w);
    }
    throw std::invalid_argument("unknown region spec: " + spec);
}

json to_json(const ClassificationReport& rep) {
    json rows = json::array();
    for (std::size_t i = 0; i < rep.ladder.size(); ++i)
        rows.push_back({{"r", rep.ladder[i]},
                        {"lower_tau", rep.lower_tau[i]},
                        {"upper_tau", rep.upper_tau[i]}});
    return json{{"type", "classification"},
                {"verdict", to_string(rep.verdict)},
                {"a_lower", rep.a_lower},
                {"a_upper", rep.a_upper},
                {"eps_class", rep.eps_class},
                {"evidence_only", rep.evidence_only},
                {"note", "sampled lower_tau over-estimates the true inf; "
                         "upper_tau under-estimates the true sup"},
                {"rows", rows}};
}

static const char* side_name(Side s) {
    return s == Side::Left ? "left" : (s == Side::Right ? "right" : "either");
}

json to_json(const AdjacencyWitness& wit) {
    json per = json::array();
    for (const auto& rw : wit.per_radius) {
        json row{{"r", rw.r},
                 {"found", rw.found},
                 {"shadow_components", rw.shadow_components},
                 {"shadow_measure", rw.shadow_measure}};
        if (rw.found) {
            row["witness"] = {{"start", rw.witness.start}, {"length", rw.witness.length}};
            row["side"] = side_name(rw.side);
        }
        per.push_back(row);
    }
    json probes = json::array();
    for (const auto& p : wit.probes)
        probes.push_back({{"side", side_name(p.side)},
                          {"k", p.k},
                          {"angle", p.angle},
                          {"angle_lg2", p.angle_lg2},
                          {"tau_sq_lg2_bound", p.tau_sq_lg2_bound}});
    return json{{"type", "adjacency"},
                {"b", wit.b},
                {"verdict", to_string(wit.verdict)},
                {"ladder", wit.ladder},
                {"per_radius", per},
                {"refutation_r_lg2", wit.refutation_r_lg2},
                {"n_b", wit.n_b},
                {"first_tail_index", wit.first_tail_index},
                {"probes", probes},
                {"note", wit.note}};
}

json to_json(const TentConstantEstimate& est) {
    json per = json::array();
    for (std::size_t i = 0; i < est.theta_ladder.size(); ++i)
        per.push_back({{"theta", est.theta_ladder[i]}, {"min", est.per_theta[i]}});
    return json{{"type", "tent_constant"}, {"c0", est.c0}, {"per_theta", per}};
}

json to_json(const OscillationEstimate& est) {
    json rows = json::array();
    for (std::size_t i = 0; i < est.ladder.size(); ++i)
        rows.push_back({{"r", est.ladder[i]}, {"sup", est.sup[i]}, {"inf", est.inf[i]}});
    return json{{"type", "oscillation"}, {"osc", est.osc}, {"rows", rows}};
}

json to_json(const ArcUnion& u) {
    json arcs = json::array();
    for (const Arc& a : u.components())
        arcs.push_back({a.start, a.length});
    json parts = json::array();
    for (const auto& p : u.intervals()) parts.push_back({p.a, p.b});
    return json{{"full_circle", u.is_full_circle()},
                {"seam_interior", u.seam_interior()},
                {"arcs", arcs},
                {"intervals", parts}};
}

ArcUnion arc_union_from_json(const json& j) {
    if (j.at("full_circle").get<bool>()) return ArcUnion::full_circle();
    if (j.contains("intervals")) {       // exact reload path
        std::vector<ArcUnion::Interval> parts;
        for (const auto& p : j.at("intervals"))
            parts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        return ArcUnion::from_raw(std::move(parts),
                                  j.value("seam_interior", false), false);
    }
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs"))
        arcs.push_back(Arc{a.at(0).get<double>(), a.at(1).get<double>()});
    if (arcs.empty()) return {};
    return ArcUnion::normalize(arcs);
}

json to_json(const CounterexampleArtifact& art) {
    const auto& c = art.config;
    json levels = json::array();
    for (const auto& l : art.levels)
        levels.push_back({{"k", l.k}, {"phi", l.phi}, {"arc_length", l.arc_length}});
    json vsets = json::array();
    for (std::size_t j = 0; j < art.V.size(); ++j) {
        vsets.push_back({{"j", j + 1},
                         {"divisor", art.V[j].divisor()},
                         {"measure", art.V[j].measure()},
                         {"pattern", to_json(art.V[j].pattern())}});
    }
    return json{
        {"type", "counterexample_artifact"},
        {"config",
         {{"family", c.family},
          {"family_rotation", c.family_rotation},
          {"family_b", c.family_b},
          {"levels", c.levels},
          {"truncation", c.truncation},
          {"grid", c.grid},
          {"egorov_c", c.egorov_c},
          {"gate_gauge_threshold", c.gate_gauge_threshold},
          {"gate_gauge_index", c.gate_gauge_index},
          {"tent_grid_density", c.tent_grid_density},
          {"osc_rmin_exp", c.osc_rmin_exp},
          {"fatou_rmin_exp", c.fatou_rmin_exp},
          {"fatou_rmax_exp", c.fatou_rmax_exp},
          {"osc_slack", c.osc_slack},
          {"fatou_threshold", c.fatou_threshold},
          {"seed", c.seed}}},
        {"v", art.v},
        {"phi", art.phi},
        {"levels_table", levels},
        {"c0", art.c0},
        {"s", art.s},
        {"tent_per_theta", art.tent_per_theta},
        // V_j arc lists in periodic form: the true set is the preimage of the
        // pattern under t -> divisor * t
        {"V", vsets},
        {"grid_resolves_truncation", art.grid_resolves_truncation},
        {"regularity_note", art.regularity_note}};
}

CounterexampleArtifact artifact_from_json(const json& j) {
    CounterexampleArtifact art;
    const json& c = j.at("config");
    art.config.family = c.at("family").get<std::string>();
    art.config.family_rotation = c.at("family_rotation").get<double>();
    art.config.family_b = c.at("family_b").get<unsigned>();
    art.config.levels = c.at("levels").get<unsigned>();
    art.config.truncation = c.at("truncation").get<unsigned>();
    art.config.grid = c.at("grid").get<unsigned>();
    art.config.egorov_c = c.at("egorov_c").get<double>();
    art.config.gate_gauge_threshold = c.at("gate_gauge_threshold").get<double>();
    art.config.gate_gauge_index = c.at("gate_gauge_index").get<std::uint64_t>();
    art.config.tent_grid_density = c.at("tent_grid_density").get<int>();
    art.config.osc_rmin_exp = c.at("osc_rmin_exp").get<int>();
    art.config.fatou_rmin_exp = c.at("fatou_rmin_exp").get<int>();
    art.config.fatou_rmax_exp = c.at("fatou_rmax_exp").get<int>();
    art.config.osc_slack = c.at("osc_slack").get<double>();
    art.config.fatou_threshold = c.at("fatou_threshold").get<double>();
    art.config.seed = c.at("seed").get<unsigned>();
    art.v = j.at("v").get<std::vector<unsigned>>();
    art.phi = j.at("phi").get<std::vector<std::uint64_t>>();
    for (const auto& l : j.at("levels_table"))
        art.levels.push_back(LatticeLevel{l.at("k").get<unsigned>(),
                                          l.at("phi").get<std::uint64_t>(),
                                          l.at("arc_length").get<double>()});
    art.c0 = j.at("c0").get<double>();
    art.s = j.at("s").get<double>();
    art.tent_per_theta = j.at("tent_per_theta").get<std::vector<double>>();
    for (const auto& v : j.at("V"))
        art.V.emplace_back(v.at("divisor").get<std::uint64_t>(),
                           arc_union_from_json(v.at("pattern")));
    art.grid_resolves_truncation = j.at("grid_resolves_truncation").get<bool>();
    art.regularity_note = j.at("regularity_note").get<std::string>();
    return art;
}

BoundaryIndicator indicator_from_json(const json& j) {
    std::vector<BoundaryIndicator::Term> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({t.at("coeff").get<double>(), arc_union_from_json(t.at("support"))});
    return BoundaryIndicator(std::move(terms));
}

namespace {

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string to_csv(const ClassificationReport& rep) {
    std::ostringstream out;
    out << "r,lower_tau,upper_tau\n";
    for (std::size_t i = 0; i < rep.ladder.size(); ++i)
        out << fmt17(rep.ladder[i]) << ',' << fmt17(rep.lower_tau[i]) << ','
            << fmt17(rep.upper_tau[i]) << '\n';
    return out.str();
}

std::string to_csv(const VerificationReport& rep) {
    std::ostringstream out;
    out << "w_angle,escape_level,osc,bound,pass,fatou_included,fatou_osc,fatou_pass\n";
    for (const auto& r : rep.rows)
        out << fmt17(r.w_angle) << ',' << r.escape_level << ',' << fmt17(r.osc) << ','
            << fmt17(r.bound) << ',' << (r.pass ? 1 : 0) << ',' << (r.fatou_included ? 1 : 0)
            << ',' << fmt17(r.fatou_osc) << ',' << (r.fatou_pass ? 1 : 0) << '\n';
    return out.str();
}

json to_json(const VerificationReport& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"w_angle", r.w_angle},
                        {"escape_level", r.escape_level},
                        {"osc", r.osc},
                        {"bound", r.bound},
                        {"pass", r.pass},
                        {"fatou_included", r.fatou_included},
                        {"fatou_osc", r.fatou_osc},
                        {"fatou_pass", r.fatou_pass}});
    return json{{"type", "oscillation_report"},
                {"checked", rep.checked},
                {"passed", rep.passed},
                {"pass_rate", rep.pass_rate},
                {"fatou_checked", rep.fatou_checked},
                {"fatou_passed", rep.fatou_passed},
                {"fatou_pass_rate", rep.fatou_pass_rate},
                {"truncation_error_budget", rep.truncation_error_budget},
                {"rows", rows}};
}

std::string artifact_figure_svg(const CounterexampleArtifact& art, const RegionFamily& family) {
    std::ostringstream svg;
    const int S = 720;
    const double cx = S / 2.0, cy = S / 2.0, R = S * 0.46;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << S << "\" height=\"" << S
        << "\" viewBox=\"0 0 " << S << " " << S << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << R
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    const char* colors[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400"};
    // draw V_j as tick bands just outside the circle (coarser level: wider ring)
    for (std::size_t j = 0; j < art.V.size() && j < 5; ++j) {
        double r0 = R + 6.0 + 7.0 * (double)j;
        ArcUnion arcs;
        try {
            arcs = art.V[j].materialize(40'000);
        } catch (const std::length_error&) {
            continue;                           // too fine to draw
        }
        for (const Arc& a : arcs.components()) {
            double a0 = a.start, a1 = a.start + a.length;
            svg << "<path d=\"M " << cx + r0 * std::cos(a0) << ' ' << cy - r0 * std::sin(a0)
                << " A " << r0 << ' ' << r0 << " 0 " << (a.length > kPi ? 1 : 0) << " 0 "
                << cx + r0 * std::cos(a1) << ' ' << cy - r0 * std::sin(a1)
                << "\" fill=\"none\" stroke=\"" << colors[j] << "\" stroke-width=\"4\"/>\n";
        }
    }
    // sampled base region at w = 1
    try {
        ApproachRegion base = family.region_at(BoundaryPoint(0.0));
        for (double r : {0.5, 0.25, 0.125, 0.0625}) {
            for (const DiscPoint& z : base.sample_tail(r, 64)) {
                svg << "<circle cx=\"" << cx + R * z.re() << "\" cy=\"" << cy - R * z.im()
                    << "\" r=\"1.6\" fill=\"#34495e\"/>\n";
            }
        }
    } catch (const std::exception&) {
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string dump_json(const json& j) {
    return j.dump(2);
}

}  // namespace discbound
