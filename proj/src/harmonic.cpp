#include "discbound/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace discbound {

namespace {

// Subtended-angle form: omega = (2 alpha - ell) / 2pi where alpha is the
// angle at z between the chords to the arc endpoints, taken in the branch
// (ell/2, pi + ell/2] that is continuous across the disc.
double omega_interval(std::complex<double> z, double a, double b) {
    double ell = b - a;
    std::complex<double> sa(std::cos(a), std::sin(a));
    std::complex<double> sb(std::cos(b), std::sin(b));
    double t = std::arg((sb - z) / (sa - z));
    if (t <= ell / 2.0 - 1e-15) t += kTwoPi;
    if (t > kPi + ell / 2.0 + 1e-15) t -= kTwoPi;
    return (2.0 * t - ell) / kTwoPi;
}

double conj_interval(std::complex<double> z, double a, double b) {
    std::complex<double> sa(std::cos(a), std::sin(a));
    std::complex<double> sb(std::cos(b), std::sin(b));
    return (std::log(std::abs(z - sa)) - std::log(std::abs(z - sb))) / kPi;
}

}  // namespace

double harmonic_measure_arc(const DiscPoint& z, const Arc& arc) {
    return omega_interval(z.value(), arc.start, arc.start + arc.length);
}

double harmonic_measure(const DiscPoint& z, const ArcUnion& s) {
    if (s.is_full_circle()) return 1.0;
    double total = 0.0;
    for (const auto& p : s.intervals()) total += omega_interval(z.value(), p.a, p.b);
    return total;
}

double conjugate_measure_arc(const DiscPoint& z, const Arc& arc) {
    return conj_interval(z.value(), arc.start, arc.start + arc.length);
}

double conjugate_measure(const DiscPoint& z, const ArcUnion& s) {
    if (s.is_full_circle()) return 0.0;
    double total = 0.0;
    for (const auto& p : s.intervals()) total += conj_interval(z.value(), p.a, p.b);
    return total;
}

BoundaryIndicator::BoundaryIndicator(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (const Term& t : terms_)
        if (!std::isfinite(t.coeff))
            throw std::domain_error("BoundaryIndicator: coefficients must be finite");
}

double BoundaryIndicator::eval_boundary(double angle) const {
    double v = 0.0;
    for (const Term& t : terms_)
        if (t.support.contains(angle)) v += t.coeff;
    return v;
}

ClampedPoint clamp_near_boundary(const DiscPoint& z) {
    constexpr double kMinDelta = 1e-12;
    if (z.delta() >= kMinDelta) return {z, false};
    return {DiscPoint::from_boundary_coords(z.theta(), kMinDelta), true};
}

double poisson_eval(const BoundaryIndicator& f, const DiscPoint& z, bool* clamped) {
    ClampedPoint c = clamp_near_boundary(z);
    if (clamped) *clamped = c.clamped;
    double v = 0.0;
    for (const auto& t : f.terms()) v += t.coeff * harmonic_measure(c.z, t.support);
    return v;
}

double conjugate_eval(const BoundaryIndicator& f, const DiscPoint& z, bool* clamped) {
    ClampedPoint c = clamp_near_boundary(z);
    if (clamped) *clamped = c.clamped;
    double v = 0.0;
    for (const auto& t : f.terms()) v += t.coeff * conjugate_measure(c.z, t.support);
    return v;
}

std::complex<double> holo_eval(const BoundaryIndicator& f, const DiscPoint& z) {
    double u = poisson_eval(f, z);
    double v = conjugate_eval(f, z);
    return std::exp(std::complex<double>(-u, -v));
}

std::vector<double> default_tent_theta_ladder() {
    return {1e-3, 1e-2, 1e-1, 1.0};
}

TentConstantEstimate estimate_tent_constant(std::span<const double> theta_ladder,
                                            int grid_density) {
    if (theta_ladder.empty())
        throw std::domain_error("estimate_tent_constant: empty ladder");
    if (grid_density < 2)
        throw std::domain_error("estimate_tent_constant: grid density too small");
    TentConstantEstimate est;
    est.c0 = 1.0;
    for (double theta : theta_ladder) {
        if (!(theta > 0.0 && theta < kTwoPi))
            throw std::domain_error("estimate_tent_constant: theta outside (0, 2pi)");
        Arc j = centered_arc(BoundaryPoint(0.0), theta);
        Tent tent = tent_of(j);
        const std::complex<double> y = tent.center.embed();
        double best = 1.0;
        // nested polar grid in the tent ball: radius fractions k/n, angles 2pi q/m
        int n = grid_density, m = 2 * grid_density;
        for (int k = 1; k <= n; ++k) {
            double f = (double)k / n;
            for (int q = 0; q < m; ++q) {
                double psi = kTwoPi * q / m;
                std::complex<double> zv = y + f * tent.radius * std::polar(1.0, psi);
                if (std::abs(zv) >= 1.0 - 1e-12) continue;
                DiscPoint z(zv);
                if (!tent_contains(tent, z)) continue;
                best = std::min(best, harmonic_measure_arc(z, j));
            }
        }
        est.theta_ladder.push_back(theta);
        est.per_theta.push_back(best);
        est.c0 = std::min(est.c0, best);
    }
    return est;
}

OscillationEstimate oscillation_with_pool(const std::function<double(const DiscPoint&)>& u,
                                          const ApproachRegion& region,
                                          std::span<const double> ladder, int budget,
                                          std::span<const DiscPoint> extra) {
    if (ladder.empty()) throw std::domain_error("oscillation: empty ladder");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (!(ladder[i] < ladder[i - 1]))
            throw std::domain_error("oscillation: ladder must be strictly decreasing");

    std::vector<DiscPoint> pool(extra.begin(), extra.end());
    for (double r : ladder)
        for (const DiscPoint& z : region.sample_tail(r, budget)) pool.push_back(z);

    const std::complex<double> wv = region.base().embed();
    std::vector<double> dist(pool.size()), val(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        dist[i] = std::abs(pool[i].value() - wv);
        val[i] = u(pool[i]);
    }

    OscillationEstimate est;
    est.ladder.assign(ladder.begin(), ladder.end());
    for (double r : ladder) {
        double lo = 0.0, hi = 0.0;
        bool any = false;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (dist[i] >= r) continue;
            if (!any) { lo = hi = val[i]; any = true; }
            else { lo = std::min(lo, val[i]); hi = std::max(hi, val[i]); }
        }
        if (!any)
            throw std::domain_error("oscillation: empty tail at ladder radius");
        est.sup.push_back(hi);
        est.inf.push_back(lo);
    }
    est.osc = est.sup.back() - est.inf.back();
    return est;
}

OscillationEstimate oscillation(const std::function<double(const DiscPoint&)>& u,
                                const ApproachRegion& region,
                                std::span<const double> ladder, int budget) {
    return oscillation_with_pool(u, region, ladder, budget, {});
}

}  // namespace discbound
