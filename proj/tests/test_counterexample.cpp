#include <doctest.h>

#include "discbound/counterexample.hpp"
#include "discbound/harmonic.hpp"
#include "discbound/serialize.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <random>
#include <set>

using namespace discbound;

namespace {
const BoundaryPoint kOne(0.0);

RegionFamily prop2b_family() {
    return RegionFamily::rotation_invariant(make_prop2b_region(kOne), 2);
}

CounterexampleConfig small_config() {
    CounterexampleConfig c;
    c.levels = 2;
    c.truncation = 8;
    c.grid = 512;
    c.tent_grid_density = 24;
    c.osc_rmin_exp = 12;
    return c;
}
}  // namespace

TEST_CASE("v sequence block enumeration") {
    std::vector<unsigned> expect = {2, 3, 2, 3, 4, 2};
    for (unsigned j = 1; j <= 6; ++j) CHECK(v_sequence(j) == expect[j - 1]);
    std::set<unsigned> seen;
    for (unsigned j = 1; j <= 25; ++j) {
        CHECK(v_sequence(j) >= 2);
        seen.insert(v_sequence(j));
    }
    for (unsigned b = 2; b <= 6; ++b) CHECK(seen.count(b) == 1);
}

TEST_CASE("lattice and O_n measures") {
    auto u8 = build_lattice(8);
    REQUIRE(u8.size() == 8);
    CHECK(u8[3].angle() == doctest::Approx(3.0 * kTwoPi / 8));

    for (unsigned n = 1; n <= 4; ++n) {
        std::uint64_t phi = 12 * ((std::uint64_t)1 << n);
        ArcUnion o = build_O(n, phi);
        CHECK(o.component_count() == phi);
        CHECK(o.measure() == doctest::Approx(std::exp2(-(double)n) * kTwoPi).epsilon(1e-12));
    }
}

TEST_CASE("V_j nesting and measure bound") {
    std::vector<std::uint64_t> phi = {6, 12, 24, 96};
    for (unsigned j = 1; j <= 4; ++j) {
        ArcUnion vj = build_V(j, phi, 4);
        CHECK(vj.measure() <= std::exp2(1.0 - (double)j) * kTwoPi + 1e-12);
    }
    PeriodicArcSet v1 = build_V_periodic(1, phi, 4);
    PeriodicArcSet v2 = build_V_periodic(2, phi, 4);
    CHECK(v2.subset_of(v1));
    CHECK(build_V(2, phi, 4).subset_of(build_V(1, phi, 4)));
    // phi_j | phi_k is required
    std::vector<std::uint64_t> bad = {6, 10};
    CHECK_THROWS_AS(build_V(1, bad, 2), std::invalid_argument);
}

TEST_CASE("periodic poisson matches the flat evaluation") {
    std::vector<std::uint64_t> phi = {6, 12, 24};
    PeriodicArcSet v1 = build_V_periodic(1, phi, 3);
    ArcUnion flat = v1.materialize();
    CHECK(v1.measure() == doctest::Approx(flat.measure()).epsilon(1e-12));

    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        // spread moduli so both the Fourier and the direct branches are hit
        double rho = (i % 2 == 0) ? 0.999 * ur(rng) : 1.0 - std::exp2(-1.0 - 14.0 * ur(rng));
        DiscPoint z(std::polar(rho, kTwoPi * ur(rng)));
        double fast = v1.poisson(z);
        double ref = harmonic_measure(z, flat);
        CHECK(std::abs(fast - ref) < 1e-10);
        double fast_c = v1.conjugate(z);
        double ref_c = conjugate_measure(z, flat);
        CHECK(std::abs(fast_c - ref_c) < 1e-9);
    }

    // membership agrees with the flat union
    for (int i = 0; i < 2000; ++i) {
        double t = kTwoPi * ur(rng);
        CHECK(v1.contains(t) == flat.contains(t));
    }

    // larger divisor: stresses the angle-reduction path
    std::vector<std::uint64_t> phi2 = {277, 1108};
    PeriodicArcSet w1 = build_V_periodic(1, phi2, 2);
    ArcUnion wflat = w1.materialize();
    for (int i = 0; i < 200; ++i) {
        double rho = (i % 2 == 0) ? 0.999 * ur(rng) : 1.0 - std::exp2(-1.0 - 16.0 * ur(rng));
        DiscPoint z(std::polar(rho, kTwoPi * ur(rng)));
        CHECK(std::abs(w1.poisson(z) - harmonic_measure(z, wflat)) < 1e-9);
    }
}

TEST_CASE("tangency gauge behavior") {
    RegionFamily fam = prop2b_family();
    double g1000 = tangency_gauge(fam, kOne, 1000);
    CHECK(g1000 < 0.05);
    CHECK(tangency_gauge(fam, kOne, 100) > g1000);

    std::mt19937 rng(15);
    std::uniform_real_distribution<double> ur(0.0, kTwoPi);
    for (int i = 0; i < 10; ++i) {
        BoundaryPoint w(ur(rng));
        CHECK(std::abs(tangency_gauge(fam, w, 500) - tangency_gauge(fam, kOne, 500)) < 1e-12);
    }

    RegionFamily stolz = RegionFamily::rotation_invariant(make_stolz_region(3, kOne), 3);
    CHECK(tangency_gauge(stolz, kOne, 1000) >= 1.0 / 4.0);
}

TEST_CASE("phi selection") {
    RegionFamily fam = prop2b_family();
    const double c = std::sqrt(3.0 / 64.0);
    std::uint64_t phi1 = select_phi(fam, 512, 1, c, 0);
    double thr1 = c * (10.0 / 22.0) * 0.5 / 2.0;
    CHECK(tangency_gauge(fam, kOne, phi1) < thr1);
    CHECK(phi1 > 1);
    // minimality at the default step
    CHECK(tangency_gauge(fam, kOne, phi1 - 1) >= thr1);

    std::uint64_t phi2 = select_phi(fam, 512, 2, c, phi1, phi1);
    CHECK(phi2 > phi1);
    CHECK(phi2 % phi1 == 0);
    double thr2 = c * (10.0 / 22.0) * 0.25 / 3.0;
    CHECK(tangency_gauge(fam, kOne, phi2) < thr2);
}

TEST_CASE("tabulated family path") {
    // three tabulated base points with the rotation-invariant rule
    std::vector<ApproachRegion> regions;
    std::vector<double> angles = {0.0, 2.0, 4.0};
    for (double a : angles) regions.push_back(make_prop2b_region(BoundaryPoint(a)));
    RegionFamily fam = RegionFamily::tabulated(regions, 2);
    CHECK_FALSE(fam.is_rotation_invariant());
    CHECK(fam.region_at(BoundaryPoint(2.0)).base().angle() == doctest::Approx(2.0));
    CHECK_THROWS_AS(fam.region_at(BoundaryPoint(1.0)), std::out_of_range);

    // tabulated Egorov selection thresholds the grid; with every grid point
    // carrying the same rule it matches the rotation-invariant answer
    std::vector<ApproachRegion> table;
    unsigned grid = 16;
    for (unsigned g = 0; g < grid; ++g)
        table.push_back(make_prop2b_region(BoundaryPoint(kTwoPi * g / grid)));
    RegionFamily tab = RegionFamily::tabulated(
        table, 2, [](const BoundaryPoint& w) { return w.angle() < kPi ? 2u : 3u; });
    CHECK(tab.b_at(BoundaryPoint(0.5)) == 2);
    CHECK(tab.b_at(BoundaryPoint(4.0)) == 3);
    const double c = std::sqrt(3.0 / 64.0);
    EgorovSelection sel = select_phi_recorded(tab, grid, 1, c, 0);
    std::uint64_t phi_rot = select_phi(prop2b_family(), grid, 1, c, 0);
    CHECK(sel.phi == phi_rot);
    // the recorded set keeps all but a 2^-j sliver of the grid
    CHECK(sel.egorov_grid.size() >=
          (std::size_t)std::ceil((1.0 - 0.5 / kTwoPi) * grid));
}

TEST_CASE("hypothesis gates") {
    CounterexampleConfig bad = small_config();
    bad.family = "stolz:2";
    bad.family_b = 2;
    try {
        build_counterexample(bad);
        FAIL("expected hypothesis_error");
    } catch (const hypothesis_error& e) {
        CHECK(e.hypothesis() == "t");
    }

    CounterexampleConfig nopa = small_config();
    nopa.family_b = 1;          // prop2b has no certificate below b = 2
    try {
        build_counterexample(nopa);
        FAIL("expected hypothesis_error");
    } catch (const hypothesis_error& e) {
        CHECK(e.hypothesis() == "p");
    }
}

TEST_CASE("degenerate single-level artifact") {
    CounterexampleConfig c = small_config();
    c.levels = 1;
    c.truncation = 1;
    CounterexampleArtifact art = build_counterexample(c);
    REQUIRE(art.V.size() == 1);
    CHECK(art.V[0].measure() == doctest::Approx(kPi).epsilon(1e-12));   // |O_1| = 2^-1 2pi
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    double smax = 1.0 / art.s;
    for (int i = 0; i < 200; ++i) {
        DiscPoint z(std::polar(0.999 * ur(rng), kTwoPi * ur(rng)));
        double u = art.poisson_f(z);
        CHECK(u >= -1e-13);
        CHECK(u <= smax + 1e-13);
    }
}

TEST_CASE("small artifact invariants") {
    CounterexampleConfig cfg = small_config();
    CounterexampleArtifact art = build_counterexample(cfg);

    REQUIRE(art.phi.size() == cfg.truncation);
    for (unsigned j = 0; j < cfg.truncation; ++j) {
        CHECK(art.phi[j] > j + 1);
        if (j > 0) {
            CHECK(art.phi[j] > art.phi[j - 1]);
            CHECK(art.phi[j] % art.phi[j - 1] == 0);
        }
        CHECK(art.v[j] == v_sequence(j + 1));
    }
    CHECK(art.c0 > 0.0);
    CHECK(art.s == doctest::Approx(1.0 + (1.0 + art.c0) / art.c0));
    CHECK(art.s > 2.0);

    // exact O_n measures through the level table
    for (const LatticeLevel& lvl : art.levels) {
        double measure = (double)lvl.phi * lvl.arc_length;
        CHECK(measure == doctest::Approx(std::exp2(-(double)lvl.k) * kTwoPi).epsilon(1e-12));
    }

    REQUIRE(art.V.size() == cfg.levels);
    CHECK(art.V[1].subset_of(art.V[0]));
    for (unsigned j = 1; j <= cfg.levels; ++j)
        CHECK(art.V[j - 1].measure() <= std::exp2(1.0 - (double)j) * kTwoPi + 1e-12);

    // indicator bound: f <= sum s^-j < 1/(s-1)
    double fsum = 0.0;
    for (unsigned j = 1; j <= cfg.levels; ++j) fsum += std::pow(art.s, -(double)j);
    CHECK(fsum < 1.0 / (art.s - 1.0));
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ur(0.0, kTwoPi);
    for (int i = 0; i < 500; ++i) {
        double t = ur(rng);
        CHECK(art.indicator_value(t) <= fsum + 1e-15);
        unsigned esc = art.escape_level(t);
        if (esc >= 1) CHECK_FALSE(art.V[esc - 1].contains(t));
        for (unsigned j = 1; j < esc; ++j) CHECK(art.V[j - 1].contains(t));
    }

    // truncated W = intersection of the V_j equals V_J
    for (int i = 0; i < 2000; ++i) {
        double t = ur(rng);
        bool in_all = true;
        for (const PeriodicArcSet& v : art.V) in_all = in_all && v.contains(t);
        CHECK(in_all == art.V.back().contains(t));
    }

    // reproducibility: rebuilding yields the identical artifact
    CounterexampleArtifact again = build_counterexample(cfg);
    CHECK(dump_json(to_json(art)) == dump_json(to_json(again)));
}

TEST_CASE("zygmund membership on explicit unions") {
    RegionFamily fam = prop2b_family();
    // tent over an arc near 1 catches z_40 = (1 - 1/1600) e^{i/40}
    ArcUnion v = ArcUnion::normalize({centered_arc(BoundaryPoint(1.0 / 40.0), 0.01)});
    std::vector<double> ladder = {0.5, 0.2, 0.1};
    CHECK(zygmund_member(fam, v, kOne, ladder));

    // (i) fails: w inside V
    ArcUnion covering = ArcUnion::normalize({centered_arc(kOne, 0.2)});
    CHECK_FALSE(zygmund_member(fam, covering, kOne, ladder));

    // V empty near w
    ArcUnion far_v = ArcUnion::normalize({centered_arc(BoundaryPoint(kPi), 0.01)});
    CHECK_FALSE(zygmund_member(fam, far_v, kOne, std::vector<double>{0.5}));
}

TEST_CASE("zygmund membership at artifact scale") {
    CounterexampleConfig cfg = small_config();
    CounterexampleArtifact art = build_counterexample(cfg);
    RegionFamily fam = prop2b_family();
    std::vector<double> ladder;
    for (int k = 3; k <= 9; ++k) ladder.push_back(std::exp2(-k));
    int total = 0, pass = 0;
    for (unsigned g = 0; g < cfg.grid && total < 60; g += 7) {
        double a = kTwoPi * g / cfg.grid;
        if (art.V[0].contains(a)) continue;          // need w in C \ V_1
        ++total;
        if (zygmund_member_artifact(art, fam, 1, BoundaryPoint(a), ladder)) ++pass;
    }
    REQUIRE(total >= 20);
    CHECK((double)pass / total >= 0.9);
}

TEST_CASE("poisson stays above the tent constant at Zygmund witnesses") {
    // along lambda(w) for w outside V_1, the tail points caught by lattice
    // tents keep P(1_{V_1}) at or above the tent constant
    CounterexampleConfig cfg = small_config();
    CounterexampleArtifact art = build_counterexample(cfg);
    ApproachRegion base = make_prop2b_region(kOne);
    int witnesses = 0, strong = 0;
    for (unsigned g = 1; g < cfg.grid && witnesses < 25; g += 5) {
        double theta0 = kTwoPi * g / cfg.grid;
        if (art.V[0].contains(theta0)) continue;
        ApproachRegion region = base.rotated(theta0);
        double best = 0.0;
        for (const LatticeLevel& lvl : art.levels) {
            double spacing = kTwoPi / (double)lvl.phi;
            double tent_radius = 2.0 * std::sin(lvl.arc_length / 4.0);
            std::uint64_t p0 = (std::uint64_t)std::floor(theta0 / spacing) + 1;
            for (std::uint64_t m = 0; m < 6; ++m) {
                double rel = spacing * (double)(p0 + m) - theta0;
                if (rel <= 0.0) continue;
                std::complex<double> y = std::polar(1.0, spacing * (double)(p0 + m));
                std::uint64_t n0 = (std::uint64_t)std::llround(1.0 / rel);
                for (std::uint64_t n = (n0 > 2 ? n0 - 2 : 2); n <= n0 + 2; ++n) {
                    DiscPoint z = region.sequence_point(n);
                    if (std::abs(z.value() - y) < tent_radius)
                        best = std::max(best, art.V[0].poisson(z));
                }
            }
        }
        if (best > 0.0) {
            ++witnesses;
            if (best >= 0.9 * art.c0) ++strong;
        }
    }
    REQUIRE(witnesses >= 20);
    CHECK(strong == witnesses);

    // oscillation bound algebra: s^-j (c0 - 1/(s-1)) = s^-j c0^2/(1+c0) > 0
    for (unsigned j = 1; j <= cfg.levels; ++j) {
        double direct = std::pow(art.s, -(double)j) * (art.c0 - 1.0 / (art.s - 1.0));
        CHECK(art.oscillation_bound(j) == doctest::Approx(direct).epsilon(1e-12));
        CHECK(art.oscillation_bound(j) > 0.0);
    }
}

TEST_CASE("small-scale oscillation verification") {
    CounterexampleConfig cfg = small_config();
    CounterexampleArtifact art = build_counterexample(cfg);
    RegionFamily fam = prop2b_family();
    auto samples = verification_samples(art);
    REQUIRE_FALSE(samples.empty());
    // thin to keep the unit suite fast
    std::vector<BoundaryPoint> thin;
    for (std::size_t i = 0; i < samples.size(); i += 4) thin.push_back(samples[i]);
    VerificationReport rep = verify_oscillation(art, fam, thin, 4);
    CHECK(rep.checked == thin.size());
    CHECK(rep.pass_rate >= 0.85);
    CHECK(rep.fatou_checked > 0);
    CHECK(rep.fatou_pass_rate >= 0.9);
    CHECK(rep.truncation_error_budget ==
          doctest::Approx(2.0 * std::exp2(-(double)cfg.truncation) * kTwoPi));
    for (const auto& row : rep.rows) {
        CHECK(row.escape_level >= 1);
        CHECK(row.escape_level <= cfg.levels);
        CHECK(row.bound == doctest::Approx(art.oscillation_bound(row.escape_level)));
        CHECK(row.osc >= 0.0);
    }

    // worker count must not change the report
    VerificationReport serial = verify_oscillation(art, fam, thin, 1);
    REQUIRE(serial.rows.size() == rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        CHECK(serial.rows[i].osc == rep.rows[i].osc);
        CHECK(serial.rows[i].pass == rep.rows[i].pass);
        CHECK(serial.rows[i].fatou_osc == rep.rows[i].fatou_osc);
    }
}
