#include "discbound/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace discbound {

double reduce_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;      // fmod rounding at the seam
    return r;
}

std::complex<double> BoundaryPoint::embed() const {
    return {std::cos(angle_), std::sin(angle_)};
}

DiscPoint::DiscPoint(std::complex<double> z) : z_(z) {
    if (!(std::abs(z) < 1.0))
        throw std::domain_error("DiscPoint: point not strictly inside the unit disc");
}

DiscPoint DiscPoint::from_boundary_coords(double theta, double delta) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::domain_error("DiscPoint: delta must be in (0, 1]");
    return DiscPoint((1.0 - delta) * std::polar(1.0, theta));
}

double DiscPoint::theta() const {
    return reduce_angle(std::arg(z_));
}

double DiscPoint::delta() const {
    return 1.0 - std::abs(z_);
}

DiscPoint DiscPoint::rotated(double alpha) const {
    return DiscPoint(z_ * std::polar(1.0, alpha));
}

bool Arc::contains(double angle) const {
    double rel = reduce_angle(angle - start);
    if (rel == 0.0) return false;           // left endpoint excluded
    return rel < length;                    // right endpoint excluded
}

Arc make_arc(double start, double length) {
    if (!(length > 0.0 && length <= kTwoPi))
        throw std::domain_error("Arc: length must be in (0, 2pi]");
    return Arc{reduce_angle(start), length};
}

Arc centered_arc(const BoundaryPoint& y, double theta) {
    if (!(theta > 0.0 && theta <= kTwoPi))
        throw std::domain_error("centered_arc: length must be in (0, 2pi]");
    return Arc{reduce_angle(y.angle() - theta / 2.0), theta};
}

Tent tent_of(const Arc& arc) {
    BoundaryPoint y(arc.midpoint_angle());
    // |y - y e^{i theta/2}| = 2 sin(theta/4)
    double radius = 2.0 * std::sin(arc.length / 4.0);
    return Tent{arc, y, radius};
}

bool tent_contains(const Tent& t, const DiscPoint& z) {
    return std::abs(z.value() - t.center.embed()) < t.radius;
}

double tau(const BoundaryPoint& w, const DiscPoint& z) {
    double d = std::abs(w.embed() - z.value());
    return (1.0 - std::abs(z.value())) / d;
}

BoundaryCoords boundary_coords(const DiscPoint& z) {
    return {z.theta(), z.delta()};
}

ChordBounds chord_bounds(const BoundaryCoords& p1, const BoundaryCoords& p2) {
    auto in_S = [](const BoundaryCoords& p) {
        return std::abs(p.theta) < 0.25 && std::abs(p.delta) < 0.25;
    };
    if (!in_S(p1) || !in_S(p2))
        throw std::domain_error("chord_bounds: points must lie in S = (-1/4,1/4)^2");
    double dth = p1.theta - p2.theta;
    double dde = p1.delta - p2.delta;
    double d2 = dth * dth + dde * dde;
    std::complex<double> a = (1.0 - p1.delta) * std::polar(1.0, p1.theta);
    std::complex<double> b = (1.0 - p2.delta) * std::polar(1.0, p2.theta);
    double chord_sq = std::norm(a - b);
    return {3.0 / 64.0 * d2, chord_sq, 125.0 / 64.0 * d2};
}

bool stolz_contains(unsigned b, const BoundaryPoint& w, const DiscPoint& z) {
    if (b == 0) {
        // on the open radius {r w : 0 <= r < 1}
        std::complex<double> wv = w.embed(), zv = z.value();
        if (zv == std::complex<double>(0.0, 0.0)) return true;
        double cross = zv.imag() * wv.real() - zv.real() * wv.imag();
        double dot = zv.real() * wv.real() + zv.imag() * wv.imag();
        return std::abs(cross) <= 4e-16 * std::abs(zv) && dot > 0.0;
    }
    return tau(w, z) > 1.0 / (1.0 + b);
}

PointShadow point_shadow(unsigned b, const DiscPoint& z) {
    if (b < 1)
        throw std::domain_error("point_shadow: requires b >= 1");
    double rho = std::abs(z.value());
    double R = (1.0 + b) * (1.0 - rho);
    if (rho == 0.0 || R > 1.0 + rho) return PointShadow{true, {}};
    // boundary angles phi with cos(phi - theta_z) > (1 + rho^2 - R^2)/(2 rho)
    double mu = (1.0 + rho * rho - R * R) / (2.0 * rho);
    if (mu < -1.0) return PointShadow{true, {}};
    // mu < 1 always: z/|z| is at distance 1-rho < R from z
    double half = std::acos(mu);
    return PointShadow{false, Arc{reduce_angle(z.theta() - half), 2.0 * half}};
}

}  // namespace discbound
