#pragma once

#include "discbound/geometry.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace discbound {

/// Relative boundary coordinates of a sequence point as base-2 exponents,
/// for sequences whose coordinates underflow double precision.
struct SequenceExponents {
    double lg2_theta;
    double lg2_delta;
};

/// An approach region ending at a boundary point, with a deterministic
/// tail sampler. Samples are sound: every returned point belongs to the
/// region (by rule or exact membership) and to the requested ball.
class ApproachRegion {
public:
    enum class Kind { Sequence, Curve, Stolz, Radial, Attached, Explicit, Union };

    Kind kind() const;
    const BoundaryPoint& base() const;
    const std::string& name() const;
    unsigned stolz_b() const;                 // Stolz kind only

    /// Largest radius at which tails are guaranteed nonempty.
    double r_max() const;
    /// Resolution floor: tails below this radius are not representable
    /// (truncated sequences, double-precision limits).
    double r_floor() const;

    /// Up to `budget` points of (region) ∩ B(w, r), drawn from the region's
    /// fixed deterministic stream. Throws std::domain_error when the tail is
    /// empty within resolution.
    std::vector<DiscPoint> sample_tail(double r, int budget) const;

    /// Kinds with exact, enumerable membership (Sequence, Explicit, unions
    /// of those).
    bool exact_kind() const;

    /// Exact membership where the kind supports it; nullopt for rule kinds
    /// without a decidable test (Curve).
    std::optional<bool> member(const DiscPoint& z, double tol = 1e-14) const;

    ApproachRegion rotated(double alpha) const;

    // Sequence access
    bool has_sequence_rule() const;
    std::uint64_t sequence_cutoff() const;
    DiscPoint sequence_point(std::uint64_t n) const;
    double sequence_distance(std::uint64_t n) const;   // |z_n - w|
    std::optional<SequenceExponents> sequence_exponents(std::uint64_t n) const;

    /// Arcs (relative to the base angle) proven to lie inside the shadow
    /// Gamma_b^*(tail(r)) by the region's own analytic estimate. Empty when
    /// no certificate applies.
    std::vector<Arc> certified_shadow(unsigned b, double r) const;

    const std::vector<ApproachRegion>& union_members() const;

    struct Data;
    explicit ApproachRegion(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

private:
    std::shared_ptr<const Data> d_;
};

// --- constructors -----------------------------------------------------------

/// z_n = (1 - n^-2) e^{i/n}, rotated to w. Sequential and tangential.
ApproachRegion make_prop2b_region(const BoundaryPoint& w);

/// z_n = (1 - 4^{-2^n}) exp(i 4^{-2^{n-1}}), rotated to w. The coordinates
/// collapse in double precision past index `cutoff` (at most 6); deeper
/// indices are reachable only through sequence_exponents().
ApproachRegion make_prop2c_region(const BoundaryPoint& w, std::uint64_t cutoff = 6);

ApproachRegion make_stolz_region(unsigned b, const BoundaryPoint& w);
ApproachRegion make_radial_region(const BoundaryPoint& w);

/// Curve region from a parameter rule on [0, 1) with phi(s) -> w as s -> 1.
/// `density` is the number of sample parameters per dyadic octave.
ApproachRegion make_curve_region(std::function<std::complex<double>(double)> rule,
                                 const BoundaryPoint& w, int density = 8);

/// (0,1) ∪ ⋃_{n>=2} {(1-1/n) e^{i t} : 0 <= t < 1/n}, rotated to w.
ApproachRegion make_attached_example(const BoundaryPoint& w);

ApproachRegion make_explicit(std::vector<DiscPoint> points, const BoundaryPoint& w);
ApproachRegion union_regions(std::vector<ApproachRegion> members);

/// Interleaving of radial and prop2b points (very oscillatory at w).
ApproachRegion make_oscillating_example(const BoundaryPoint& w);

// --- classification ---------------------------------------------------------

enum class RegionClass { Nontangential, Tangential, VeryOscillatory, Inconclusive };

const char* to_string(RegionClass c);

struct ClassificationReport {
    std::vector<double> ladder;              // strictly decreasing radii
    std::vector<double> lower_tau;           // sampled inf tau per radius (upper estimate of true inf)
    std::vector<double> upper_tau;           // sampled sup tau per radius (lower estimate of true sup)
    double a_lower = 0.0;                    // estimate of A_natural
    double a_upper = 0.0;                    // estimate of A^natural
    double eps_class = 0.0;
    RegionClass verdict = RegionClass::Inconclusive;
    bool evidence_only = false;              // VeryOscillatory verdicts are evidence, not proof
};

std::vector<double> default_ladder();        // 2^-k, k = 3..20

ClassificationReport classify(const ApproachRegion& region, std::span<const double> ladder,
                              int budget, double eps_class = 0.02);

/// Exact germ comparison of tails at radius r for enumerable kinds.
/// Point sets are compared up to 1e-14; enumeration is capped at `budget`
/// points per region.
bool germ_equal_upto(const ApproachRegion& a, const ApproachRegion& b, double r, int budget);

// --- families ----------------------------------------------------------------

/// A family of approach regions w -> lambda(w), either rotation invariant
/// (one base region at w = 1) or tabulated on finitely many points, with a
/// per-point adjacency parameter b(w) (constant unless a rule is given).
class RegionFamily {
public:
    using BRule = std::function<unsigned(const BoundaryPoint&)>;

    static RegionFamily rotation_invariant(ApproachRegion base_at_one, unsigned b);
    static RegionFamily tabulated(std::vector<ApproachRegion> regions, unsigned b,
                                  BRule b_rule = nullptr);

    bool is_rotation_invariant() const { return rotation_invariant_; }
    unsigned b() const { return b_; }
    unsigned b_at(const BoundaryPoint& w) const { return b_rule_ ? b_rule_(w) : b_; }
    const ApproachRegion& base() const { return regions_.front(); }
    ApproachRegion region_at(const BoundaryPoint& w) const;
    const std::vector<ApproachRegion>& table() const { return regions_; }

private:
    RegionFamily(std::vector<ApproachRegion> rs, unsigned b, bool rot, BRule rule)
        : regions_(std::move(rs)), b_(b), rotation_invariant_(rot), b_rule_(std::move(rule)) {}
    std::vector<ApproachRegion> regions_;
    unsigned b_;
    bool rotation_invariant_;
    BRule b_rule_;
};

}  // namespace discbound
