#include "discbound/adjacency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace discbound {

namespace {
constexpr double kWitnessLengthTol = 1e-10;
}

ArcUnion set_shadow(unsigned b, std::span<const DiscPoint> points) {
    if (b < 1) throw std::domain_error("set_shadow: requires b >= 1");
    std::vector<Arc> arcs;
    for (const DiscPoint& z : points) {
        PointShadow sh = point_shadow(b, z);
        if (sh.full_circle) return ArcUnion::full_circle();
        arcs.push_back(sh.arc);
    }
    if (arcs.empty()) return {};
    return ArcUnion::normalize(arcs);
}

std::optional<Arc> adjacent_to(const ArcUnion& s, const BoundaryPoint& w, Side side,
                               Side* found_side) {
    if (s.is_full_circle()) {
        Side out = (side == Side::Left) ? Side::Left : Side::Right;
        if (found_side) *found_side = out;
        double start = (out == Side::Right) ? w.angle() : w.angle() + kWitnessLengthTol;
        return make_arc(start, kTwoPi - kWitnessLengthTol);
    }
    const double wa = w.angle();
    auto right_witness = [&]() -> std::optional<Arc> {
        for (const Arc& c : s.components()) {
            double rel = reduce_angle(wa - c.start);
            bool starts_at_w = std::abs(rel) < kWitnessLengthTol ||
                               std::abs(rel - kTwoPi) < kWitnessLengthTol;
            bool interior = rel > 0.0 && rel < c.length;
            if (!starts_at_w && !interior) continue;
            double len = starts_at_w ? c.length : c.length - rel;
            if (len > kWitnessLengthTol)
                return Arc{wa, std::min(len, kTwoPi - kWitnessLengthTol)};
        }
        return std::nullopt;
    };
    auto left_witness = [&]() -> std::optional<Arc> {
        for (const Arc& c : s.components()) {
            double rel = reduce_angle(wa - c.start);   // w position within component
            double end_rel = c.length;
            bool ends_at_w = std::abs(rel - c.length) < kWitnessLengthTol ||
                             (rel < kWitnessLengthTol && std::abs(c.length - kTwoPi) < 1e-9);
            bool interior = rel > 0.0 && rel < end_rel;
            if (!ends_at_w && !interior) continue;
            double len = interior ? rel : c.length;
            if (len > kWitnessLengthTol)
                return Arc{reduce_angle(wa - std::min(len, kTwoPi - kWitnessLengthTol)),
                           std::min(len, kTwoPi - kWitnessLengthTol)};
        }
        return std::nullopt;
    };

    if (side == Side::Right || side == Side::Either) {
        if (auto arc = right_witness()) {
            if (found_side) *found_side = Side::Right;
            return arc;
        }
        if (side == Side::Right) return std::nullopt;
    }
    if (auto arc = left_witness()) {
        if (found_side) *found_side = Side::Left;
        return arc;
    }
    return std::nullopt;
}

std::optional<Arc> adjacent_to(const ArcUnion& s, const BoundaryPoint& w, Side side) {
    return adjacent_to(s, w, side, nullptr);
}

const char* to_string(AdjacencyVerdict v) {
    switch (v) {
        case AdjacencyVerdict::WitnessFound: return "WitnessFound";
        case AdjacencyVerdict::RefutedAtProbes: return "RefutedAtProbes";
        default: return "Inconclusive";
    }
}

namespace {

// Refutation along the lines of the tail split: indices below the split are
// excluded from the ball by construction of r_b; indices at or beyond it are
// bounded through the chord estimate, entirely in base-2 exponents.
AdjacencyWitness refute_sequence(const ApproachRegion& region, unsigned b,
                                 std::uint64_t probe_count) {
    AdjacencyWitness out;
    out.b = b;
    if (!region.has_sequence_rule() || !region.sequence_exponents(1))
        throw std::invalid_argument(
            "projective-adjacency refutation requires a sequence with exponent data");
    if (b < 10)
        throw std::domain_error("refutation path assumes b >= 10");

    const double lhs_const = std::log2(128.0 / 3.0);        // covers both probe families
    const double rhs = -2.0 * std::log2(1.0 + (double)b);

    // ($1): n_b >= 10 such that (128/3) * 4^{-d(n)} < (1+b)^{-2} for n >= n_b.
    // 4^{-d(n)} = delta_n, so the log2 form is lhs_const + lg2_delta(n) < rhs.
    std::uint64_t n_b = 10;
    while (lhs_const + region.sequence_exponents(n_b)->lg2_delta >= rhs) ++n_b;

    const std::uint64_t first = 10 + n_b;
    out.n_b = n_b;
    out.first_tail_index = first;

    // r_b = min |w - z_n| over n < first; distances shrink doubly
    // exponentially, so the minimum sits at n = first - 1. Bracket the chord
    // through the estimate: |w - z_n|^2 in [3/64, 125/64] * (theta^2 + delta^2).
    auto chord_lg2 = [&](std::uint64_t n, bool upper) {
        SequenceExponents e = *region.sequence_exponents(n);
        // theta dominates delta by a doubly exponential factor
        double base = e.lg2_theta;                      // log2 sqrt(theta^2(1+eps))
        double c = upper ? 0.5 * std::log2(125.0 / 64.0 * 2.0)
                         : 0.5 * std::log2(3.0 / 64.0);
        return base + c;
    };
    out.refutation_r_lg2 = chord_lg2(first - 1, false);

    // Ball membership split: z_n inside B(w, r_b) iff n >= first. The
    // brackets must separate cleanly.
    if (!(chord_lg2(first, true) < out.refutation_r_lg2))
        throw std::logic_error("refutation: chord brackets fail to separate the tail");

    // Certified bound for every n >= first, monotone in n: check at `first`.
    auto tail_bound_lg2 = [&](std::uint64_t n) {
        return lhs_const + region.sequence_exponents(n)->lg2_delta;
    };
    if (!(tail_bound_lg2(first) < rhs))
        throw std::logic_error("refutation: tail bound does not certify");

    // Right-side probes c_k = (theta_k + theta_{k+1})/2, k >= first; their
    // angles underflow doubles, so record exponents. Left-side probes
    // e^{-i/k} stay representable.
    for (std::uint64_t i = 0; i < probe_count; ++i) {
        std::uint64_t k = first + i;
        RefutationProbe p;
        p.side = Side::Right;
        p.k = k;
        p.angle_lg2 = region.sequence_exponents(k)->lg2_theta - 1.0;   // ~ theta_k / 2
        p.angle = std::exp2(p.angle_lg2);                              // 0.0 once underflowed
        p.tau_sq_lg2_bound = tail_bound_lg2(first);
        out.probes.push_back(p);
    }
    for (std::uint64_t i = 0; i < probe_count; ++i) {
        std::uint64_t k = 10 + i;
        RefutationProbe p;
        p.side = Side::Left;
        p.k = k;
        p.angle = -1.0 / (double)k;
        p.angle_lg2 = -std::log2((double)k);
        p.tau_sq_lg2_bound = std::log2(64.0 / 3.0) +
                             region.sequence_exponents(first)->lg2_delta;
        out.probes.push_back(p);
    }

    // The double-representable part of the tail inside B(w, r_b) is empty
    // (coordinates collapse onto w itself), so every probe is vacuously
    // outside the sampled shadow; the content is the exponent bound above.
    out.verdict = AdjacencyVerdict::RefutedAtProbes;
    out.note = "tau^2 bound certified for all tail indices by monotonicity";
    return out;
}

}  // namespace

AdjacencyWitness test_projective_adjacency(const ApproachRegion& region, unsigned b,
                                           std::span<const double> ladder, int budget,
                                           AdjacencyMode mode, std::uint64_t probe_count) {
    if (b < 1) throw std::domain_error("test_projective_adjacency: b >= 1");
    if (mode == AdjacencyMode::Refute)
        return refute_sequence(region, b, probe_count);

    AdjacencyWitness out;
    out.b = b;
    out.ladder.assign(ladder.begin(), ladder.end());
    bool all_found = !ladder.empty();
    for (double r : ladder) {
        RadiusWitness rw;
        rw.r = r;
        std::vector<DiscPoint> tail;
        try {
            tail = region.sample_tail(r, budget);
        } catch (const std::domain_error&) {
            all_found = false;
            out.per_radius.push_back(rw);
            continue;
        }
        ArcUnion shadow = set_shadow(b, tail);
        std::vector<Arc> certified = region.certified_shadow(b, r);
        if (!certified.empty()) {
            std::vector<Arc> rotated;
            for (const Arc& a : certified)
                rotated.push_back(Arc{reduce_angle(a.start + region.base().angle()), a.length});
            shadow = shadow.unite(ArcUnion::normalize(rotated));
        }
        rw.shadow_components = shadow.component_count();
        rw.shadow_measure = shadow.measure();
        Side found_side;
        if (auto arc = adjacent_to(shadow, region.base(), Side::Either, &found_side)) {
            rw.found = true;
            rw.witness = *arc;
            rw.side = found_side;
        } else {
            all_found = false;
        }
        out.per_radius.push_back(rw);
    }
    if (all_found) {
        out.verdict = AdjacencyVerdict::WitnessFound;
        return out;
    }
    if (mode == AdjacencyMode::Auto && region.has_sequence_rule() &&
        region.sequence_exponents(1) && b >= 10) {
        try {
            return refute_sequence(region, b, probe_count);
        } catch (const std::exception&) {
            // fall through to Inconclusive
        }
    }
    out.verdict = AdjacencyVerdict::Inconclusive;
    out.note = "no witness at some radius; refutation unavailable";
    return out;
}

std::vector<BoundaryPoint> family_shadow(const RegionFamily& family,
                                         std::span<const DiscPoint> u, int grid) {
    if (grid < 1) throw std::domain_error("family_shadow: grid must be >= 1");
    std::vector<BoundaryPoint> hits;
    for (int g = 0; g < grid; ++g) {
        BoundaryPoint w(kTwoPi * g / grid);
        ApproachRegion lam = family.region_at(w);
        bool any = false;
        for (const DiscPoint& z : u) {
            auto m = lam.member(z, 1e-12);
            if (m.has_value() && *m) { any = true; break; }
        }
        if (any) hits.push_back(w);
    }
    return hits;
}

double regularity_probe(const RegionFamily& family, const Tent& tent, int grid) {
    // sample the tent with a small polar grid, take the family shadow
    std::vector<DiscPoint> u;
    const std::complex<double> y = tent.center.embed();
    for (int k = 1; k <= 8; ++k) {
        for (int q = 0; q < 16; ++q) {
            std::complex<double> zv =
                y + (k / 8.0) * tent.radius * std::polar(1.0, kTwoPi * q / 16.0);
            if (std::abs(zv) >= 1.0 - 1e-12) continue;
            DiscPoint z(zv);
            if (tent_contains(tent, z)) u.push_back(z);
        }
    }
    auto hits = family_shadow(family, u, grid);
    return kTwoPi * (double)hits.size() / (double)grid;
}

}  // namespace discbound
