#include <doctest.h>

#include "discbound/adjacency.hpp"
#include "discbound/counterexample.hpp"

#include <cmath>
#include <random>

using namespace discbound;

namespace {
const BoundaryPoint kOne(0.0);

std::vector<double> dyadic_ladder(int a, int b) {
    std::vector<double> v;
    for (int k = a; k <= b; ++k) v.push_back(std::exp2(-k));
    return v;
}
}  // namespace

TEST_CASE("set shadow basics") {
    std::vector<DiscPoint> origin = {DiscPoint(0.0, 0.0)};
    CHECK(set_shadow(3, origin).is_full_circle());
    CHECK(set_shadow(1, std::vector<DiscPoint>{}).empty());
    CHECK_THROWS_AS(set_shadow(0, origin), std::domain_error);

    // two points with overlapping shadows merge into one component whose
    // measure matches the arccos endpoint formula
    DiscPoint z1 = DiscPoint::from_boundary_coords(0.00, 0.05);
    DiscPoint z2 = DiscPoint::from_boundary_coords(0.10, 0.05);
    auto half_width = [](const DiscPoint& z, unsigned b) {
        double rho = z.modulus(), R = (1.0 + b) * (1.0 - rho);
        return std::acos((1.0 + rho * rho - R * R) / (2.0 * rho));
    };
    ArcUnion sh = set_shadow(2, std::vector<DiscPoint>{z1, z2});
    double h1 = half_width(z1, 2), h2 = half_width(z2, 2);
    REQUIRE(h1 + h2 > 0.10);                        // they overlap
    CHECK(sh.component_count() == 1);
    CHECK(sh.measure() == doctest::Approx(0.10 + h1 + h2).epsilon(1e-12));
}

TEST_CASE("shadow monotonicity properties") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<DiscPoint> pts, more;
        for (int i = 0; i < 6; ++i)
            pts.emplace_back(std::polar(0.2 + 0.79 * ur(rng), ur(rng) * kTwoPi));
        more = pts;
        for (int i = 0; i < 3; ++i)
            more.emplace_back(std::polar(0.2 + 0.79 * ur(rng), ur(rng) * kTwoPi));
        unsigned b = 1 + (unsigned)(ur(rng) * 6);
        // more points widen the shadow; larger b widens the shadow
        CHECK(set_shadow(b, pts).subset_of(set_shadow(b, more)));
        CHECK(set_shadow(b, pts).subset_of(set_shadow(b + 1, pts)));
    }
}

TEST_CASE("adjacency of boundary sets") {
    Side side;
    auto full = adjacent_to(ArcUnion::full_circle(), BoundaryPoint(1.0), Side::Either, &side);
    REQUIRE(full.has_value());
    CHECK(full->length == doctest::Approx(kTwoPi).epsilon(1e-9));

    ArcUnion one = ArcUnion::normalize({Arc{1.0, 0.7}});
    auto right = adjacent_to(one, BoundaryPoint(1.0), Side::Right, &side);
    REQUIRE(right.has_value());
    CHECK(right->length == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(side == Side::Right);
    CHECK_FALSE(adjacent_to(one, BoundaryPoint(1.0), Side::Left).has_value());

    // interior point: witnesses on both sides
    CHECK(adjacent_to(one, BoundaryPoint(1.3), Side::Right).has_value());
    CHECK(adjacent_to(one, BoundaryPoint(1.3), Side::Left).has_value());

    // component strictly left of w with a gap: no right witness
    ArcUnion left_of = ArcUnion::normalize({Arc{0.2, 0.5}});
    CHECK_FALSE(adjacent_to(left_of, BoundaryPoint(1.0), Side::Right).has_value());
    auto lw = adjacent_to(left_of, BoundaryPoint(0.7), Side::Left, &side);
    REQUIRE(lw.has_value());
    CHECK(lw->length == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("prop2b witness reproduces the alpha_r arc") {
    ApproachRegion region = make_prop2b_region(kOne);
    auto ladder = dyadic_ladder(3, 10);
    AdjacencyWitness wit = test_projective_adjacency(region, 2, ladder, 256);
    CHECK(wit.verdict == AdjacencyVerdict::WitnessFound);
    REQUIRE(wit.per_radius.size() == ladder.size());
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        const RadiusWitness& rw = wit.per_radius[i];
        REQUIRE(rw.found);
        CHECK(rw.side == Side::Right);
        double alpha_r = 4.0 * ladder[i] / 25.0;
        CHECK(rw.witness.start == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(rw.witness.length >= alpha_r - 1e-12);
    }

    // witness soundness: interior samples live in the recomputed shadow
    double r = ladder[2];
    ArcUnion shadow = set_shadow(2, region.sample_tail(r, 256));
    for (const Arc& cert : region.certified_shadow(2, r))
        shadow = shadow.unite(ArcUnion::normalize({cert}));
    const Arc& witness = wit.per_radius[2].witness;
    for (int i = 1; i <= 100; ++i) {
        double x = witness.start + witness.length * i / 101.0;
        CHECK(shadow.contains(x));
    }
}

TEST_CASE("stolz region is projectively adjacent") {
    AdjacencyWitness wit = test_projective_adjacency(make_stolz_region(1, kOne), 2,
                                                     dyadic_ladder(3, 10), 256);
    CHECK(wit.verdict == AdjacencyVerdict::WitnessFound);
}

TEST_CASE("prop2c refutation at b = 10") {
    ApproachRegion region = make_prop2c_region(kOne);
    AdjacencyWitness wit = test_projective_adjacency(region, 10, dyadic_ladder(3, 6), 64,
                                                     AdjacencyMode::Refute);
    CHECK(wit.verdict == AdjacencyVerdict::RefutedAtProbes);
    CHECK(wit.n_b == 10);                     // ($1) already holds at n = 3; floor is 10
    CHECK(wit.first_tail_index == 20);
    // r_b = |1 - z_19| ~ theta_19 = 2^{-2^19}
    CHECK(wit.refutation_r_lg2 == doctest::Approx(-524288.0).epsilon(1e-4));
    REQUIRE_FALSE(wit.probes.empty());
    double tau_limit_lg2 = -2.0 * std::log2(11.0);
    for (const auto& p : wit.probes) {
        CHECK(p.tau_sq_lg2_bound < tau_limit_lg2);
        if (p.side == Side::Left) {
            CHECK(p.k >= 10);
            CHECK(p.angle == doctest::Approx(-1.0 / (double)p.k));
        } else {
            CHECK(p.k >= 20);
            CHECK(p.angle == 0.0);            // underflowed; exponent carries it
            CHECK(p.angle_lg2 < -1e5);
        }
    }

    // auto mode falls back to refutation for the same inputs
    AdjacencyWitness auto_wit =
        test_projective_adjacency(region, 10, dyadic_ladder(3, 6), 64);
    CHECK(auto_wit.verdict == AdjacencyVerdict::RefutedAtProbes);

    // refutation requires exponent data
    CHECK_THROWS_AS(test_projective_adjacency(make_prop2b_region(kOne), 10,
                                              dyadic_ladder(3, 6), 64,
                                              AdjacencyMode::Refute),
                    std::invalid_argument);
}

TEST_CASE("witness arcs verified against membership brute force") {
    std::mt19937 rng(909);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Arc> arcs;
        int n = 1 + (int)(ur(rng) * 5);
        for (int i = 0; i < n; ++i)
            arcs.push_back(Arc{ur(rng) * kTwoPi, 0.02 + ur(rng) * 1.5});
        ArcUnion s = ArcUnion::normalize(arcs);
        // probe w at component endpoints, interiors, and random spots
        std::vector<double> probes;
        for (const Arc& c : s.components()) {
            probes.push_back(c.start);
            probes.push_back(reduce_angle(c.start + c.length));
            probes.push_back(reduce_angle(c.start + c.length * ur(rng)));
        }
        probes.push_back(ur(rng) * kTwoPi);
        for (double wa : probes) {
            BoundaryPoint w(wa);
            for (Side side : {Side::Right, Side::Left}) {
                auto j = adjacent_to(s, w, side);
                double sgn = (side == Side::Right) ? 1.0 : -1.0;
                if (j.has_value()) {
                    // every interior sample of the claimed arc lies in S,
                    // and the arc really hangs off w on the requested side
                    for (int q = 1; q <= 40; ++q)
                        CHECK(s.contains(wa + sgn * j->length * q / 41.0));
                    double anchor = (side == Side::Right)
                                        ? j->start
                                        : reduce_angle(j->start + j->length);
                    CHECK(std::abs(reduce_angle(anchor - wa + kPi) - kPi) < 1e-9);
                } else {
                    // no witness: some point arbitrarily close to w escapes S
                    bool escape = false;
                    for (int q = 1; q <= 60 && !escape; ++q)
                        if (!s.contains(wa + sgn * 1e-7 * q / 60.0)) escape = true;
                    CHECK(escape);
                }
            }
        }
    }
}

TEST_CASE("witnesses across the angle seam") {
    ArcUnion s = ArcUnion::normalize({Arc{kTwoPi - 0.4, 0.9}});   // covers the seam
    Side side;
    auto r = adjacent_to(s, BoundaryPoint(0.0), Side::Right, &side);
    REQUIRE(r.has_value());
    CHECK(r->length == doctest::Approx(0.5).epsilon(1e-9));
    auto l = adjacent_to(s, BoundaryPoint(0.0), Side::Left, &side);
    REQUIRE(l.has_value());
    CHECK(l->length == doctest::Approx(0.4).epsilon(1e-9));
    // subset relation across the seam
    ArcUnion inner = ArcUnion::normalize({Arc{kTwoPi - 0.2, 0.3}});
    CHECK(inner.subset_of(s));
    CHECK_FALSE(s.subset_of(inner));
}

TEST_CASE("shadow monotone along nested tails") {
    // budget wide enough that the tail at the larger radius contains the
    // whole tail at the smaller one
    ApproachRegion region = make_prop2b_region(kOne);
    auto small = region.sample_tail(std::exp2(-6), 32);
    auto big = region.sample_tail(std::exp2(-4), 512);
    std::size_t found = 0;
    for (const DiscPoint& zs : small)
        for (const DiscPoint& zb : big)
            if (zs.value() == zb.value()) { ++found; break; }
    REQUIRE(found == small.size());
    CHECK(set_shadow(2, small).subset_of(set_shadow(2, big)));
}

TEST_CASE("family shadow of a point matches the point shadow") {
    RegionFamily stolz2 = RegionFamily::rotation_invariant(make_stolz_region(2, kOne), 2);
    DiscPoint z = DiscPoint::from_boundary_coords(1.0, 0.02);
    int grid = 512;
    auto hits = family_shadow(stolz2, std::vector<DiscPoint>{z}, grid);
    PointShadow ps = point_shadow(2, z);
    int expected = 0;
    for (int g = 0; g < grid; ++g)
        if (ps.contains(BoundaryPoint(kTwoPi * g / grid))) ++expected;
    CHECK((int)hits.size() == expected);
    for (const BoundaryPoint& w : hits) CHECK(ps.contains(w));
}

TEST_CASE("family shadow rotation equivariance") {
    RegionFamily stolz2 = RegionFamily::rotation_invariant(make_stolz_region(2, kOne), 2);
    const int grid = 256;
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> shift(1, grid - 1);
    DiscPoint z = DiscPoint::from_boundary_coords(0.4, 0.03);
    auto base = family_shadow(stolz2, std::vector<DiscPoint>{z}, grid);
    for (int trial = 0; trial < 10; ++trial) {
        double alpha = kTwoPi * shift(rng) / grid;      // grid-aligned rotation
        auto rotated = family_shadow(stolz2, std::vector<DiscPoint>{z.rotated(alpha)}, grid);
        REQUIRE(rotated.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            bool found = false;
            for (const auto& w : rotated)
                if (std::abs(reduce_angle(w.angle() - alpha) - base[i].angle()) < 1e-9)
                    found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("regularity probe on a tent") {
    RegionFamily stolz2 = RegionFamily::rotation_invariant(make_stolz_region(2, kOne), 2);
    ArcUnion o2 = build_O(2, 16);
    Arc comp = o2.components().front();
    double m = regularity_probe(stolz2, tent_of(comp), 4096);
    CHECK(m > 0.9 * comp.length);
    CHECK(m < 6.0 * comp.length);
}
