#pragma once

#include "discbound/arc_union.hpp"
#include "discbound/regions.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace discbound {

/// Shadow of a finite point set along Gamma_b: the normalized union of the
/// per-point boundary shadows. A subset of the true shadow of any superset.
ArcUnion set_shadow(unsigned b, std::span<const DiscPoint> points);

enum class Side { Left, Right, Either };

/// Maximal arc of S with w as the requested endpoint (w itself excluded).
/// Arcs shorter than the length tolerance (1e-10 rad) are discarded.
std::optional<Arc> adjacent_to(const ArcUnion& s, const BoundaryPoint& w, Side side);
std::optional<Arc> adjacent_to(const ArcUnion& s, const BoundaryPoint& w, Side side,
                               Side* found_side);

enum class AdjacencyVerdict { WitnessFound, RefutedAtProbes, Inconclusive };

const char* to_string(AdjacencyVerdict v);

/// Per-radius outcome of the witness search.
struct RadiusWitness {
    double r = 0.0;
    bool found = false;
    Arc witness;                    // valid when found
    Side side = Side::Right;
    std::size_t shadow_components = 0;
    double shadow_measure = 0.0;
};

/// A probe shown to lie outside the shadow of the full enumerated tail.
/// Angles are relative to the base point and carried in log2 form when they
/// underflow doubles.
struct RefutationProbe {
    Side side = Side::Right;
    std::uint64_t k = 0;            // probe index (c_k midpoints / e^{-i/k})
    double angle = 0.0;             // relative angle; 0.0 if underflowed
    double angle_lg2 = 0.0;         // log2 |angle|
    double tau_sq_lg2_bound = 0.0;  // certified log2 upper bound on tau^2 vs all tail points
};

struct AdjacencyWitness {
    unsigned b = 0;
    std::vector<double> ladder;
    AdjacencyVerdict verdict = AdjacencyVerdict::Inconclusive;
    std::vector<RadiusWitness> per_radius;
    // refutation record
    double refutation_r_lg2 = 0.0;      // log2 of the ball radius r_b
    std::uint64_t n_b = 0;              // analytic split index
    std::uint64_t first_tail_index = 0; // smallest index inside B(w, r_b)
    std::vector<RefutationProbe> probes;
    std::string note;
};

enum class AdjacencyMode { Auto, Witness, Refute };

/// Witness mode: per ladder radius, the sampled-tail shadow (plus any arcs
/// the region's analytic certificate proves) is searched for an arc with
/// endpoint w. Positive verdicts are sound. Refute mode splits the tail at
/// an analytic index: points outside the probe ball are excluded exactly,
/// deeper ones are bounded through the chord estimate in exponent
/// arithmetic; it requires a sequence kind with exponent data.
AdjacencyWitness test_projective_adjacency(const ApproachRegion& region, unsigned b,
                                           std::span<const double> ladder, int budget,
                                           AdjacencyMode mode = AdjacencyMode::Auto,
                                           std::uint64_t probe_count = 12);

/// Grid restriction of the family shadow of a finite set U.
std::vector<BoundaryPoint> family_shadow(const RegionFamily& family,
                                         std::span<const DiscPoint> u, int grid);

/// Sampled measure of the family shadow of a tent (grid fraction times 2pi).
double regularity_probe(const RegionFamily& family, const Tent& tent, int grid);

}  // namespace discbound
