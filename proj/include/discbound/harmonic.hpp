#pragma once

#include "discbound/arc_union.hpp"
#include "discbound/regions.hpp"

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace discbound {

/// Harmonic measure of an open arc seen from z: the Poisson integral of the
/// arc indicator, evaluated in closed form through the angle subtended at z
/// by the arc endpoints. Additive over disjoint arcs; equals |arc|/2pi at the
/// origin and 1 for the full circle.
double harmonic_measure_arc(const DiscPoint& z, const Arc& arc);

/// Sum of harmonic_measure_arc over the components of a normalized union.
double harmonic_measure(const DiscPoint& z, const ArcUnion& s);

/// Harmonic conjugate of the arc-indicator Poisson integral, normalized to
/// vanish at the origin (log-of-chord form).
double conjugate_measure_arc(const DiscPoint& z, const Arc& arc);
double conjugate_measure(const DiscPoint& z, const ArcUnion& s);

/// Weighted sum of arc-union indicators: f = sum coeff * 1_support.
class BoundaryIndicator {
public:
    struct Term {
        double coeff;
        ArcUnion support;
    };

    BoundaryIndicator() = default;
    explicit BoundaryIndicator(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    double eval_boundary(double angle) const;

private:
    std::vector<Term> terms_;
};

/// Near-boundary evaluations clamp delta to >= 1e-12 and report it.
struct ClampedPoint {
    DiscPoint z;
    bool clamped;
};
ClampedPoint clamp_near_boundary(const DiscPoint& z);

double poisson_eval(const BoundaryIndicator& f, const DiscPoint& z, bool* clamped = nullptr);
double conjugate_eval(const BoundaryIndicator& f, const DiscPoint& z, bool* clamped = nullptr);
/// h = e^{-u-iv}; |h| = e^{-u} <= 1 whenever f >= 0.
std::complex<double> holo_eval(const BoundaryIndicator& f, const DiscPoint& z);

/// Minimum of the arc-indicator Poisson integral over a sampled Carleson
/// tent, minimized over a ladder of arc lengths. Grids are nested under
/// density doubling, so refinement can only lower the estimate.
struct TentConstantEstimate {
    double c0 = 0.0;
    std::vector<double> theta_ladder;
    std::vector<double> per_theta;            // per-arc-length sampled minimum
};

TentConstantEstimate estimate_tent_constant(std::span<const double> theta_ladder,
                                            int grid_density);
std::vector<double> default_tent_theta_ladder();   // {1e-3, 1e-2, 1e-1, 1}

/// Sampled sup/inf of an evaluator along the tails of an approach region.
/// Samples are pooled over the ladder so the recorded sup sequence is
/// nonincreasing and the inf sequence nondecreasing as r shrinks.
struct OscillationEstimate {
    std::vector<double> ladder;
    std::vector<double> sup;
    std::vector<double> inf;
    double osc = 0.0;                          // sup - inf at the smallest radius
};

OscillationEstimate oscillation(const std::function<double(const DiscPoint&)>& u,
                                const ApproachRegion& region,
                                std::span<const double> ladder, int budget);

/// Variant that also folds caller-supplied extra sample points (must be
/// sound region members; the caller is responsible) into the pool.
OscillationEstimate oscillation_with_pool(const std::function<double(const DiscPoint&)>& u,
                                          const ApproachRegion& region,
                                          std::span<const double> ladder, int budget,
                                          std::span<const DiscPoint> extra);

}  // namespace discbound
