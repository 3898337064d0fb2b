#pragma once

#include <complex>
#include <optional>

namespace discbound {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Reduce an angle into [0, 2pi).
double reduce_angle(double a);

/// A point of the unit circle, stored as its canonical angle in [0, 2pi).
class BoundaryPoint {
public:
    BoundaryPoint() : angle_(0.0) {}
    explicit BoundaryPoint(double angle) : angle_(reduce_angle(angle)) {}

    double angle() const { return angle_; }
    std::complex<double> embed() const;

    BoundaryPoint rotated(double alpha) const { return BoundaryPoint(angle_ + alpha); }

    friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
        return a.angle_ == b.angle_;
    }

private:
    double angle_;
};

/// A point strictly inside the unit disc. delta = 1 - |z| is in (0, 1].
class DiscPoint {
public:
    explicit DiscPoint(std::complex<double> z);
    DiscPoint(double re, double im) : DiscPoint(std::complex<double>(re, im)) {}

    static DiscPoint from_boundary_coords(double theta, double delta);

    std::complex<double> value() const { return z_; }
    double re() const { return z_.real(); }
    double im() const { return z_.imag(); }
    double modulus() const { return std::abs(z_); }
    double theta() const;                  // argument, in [0, 2pi)
    double delta() const;                  // 1 - |z|

    DiscPoint rotated(double alpha) const;

private:
    std::complex<double> z_;
};

/// Open counterclockwise arc: { e^{i(start+t)} : 0 < t < length }.
/// start is in [0, 2pi); length in (0, 2pi]. A length of 2pi is the full
/// circle minus the start point (both endpoints coincide there).
struct Arc {
    double start = 0.0;
    double length = 0.0;

    double end() const { return start + length; }      // may exceed 2pi
    double midpoint_angle() const { return reduce_angle(start + length / 2.0); }
    bool contains(double angle) const;
};

Arc make_arc(double start, double length);
/// Arc centered at y of arc-length theta (theta <= 2pi).
Arc centered_arc(const BoundaryPoint& y, double theta);

/// Carleson tent above a centered arc: the part of the disc within
/// |z - y| < |y - y e^{i theta/2}| where y is the arc midpoint.
struct Tent {
    Arc base;
    BoundaryPoint center;
    double radius = 0.0;
};

Tent tent_of(const Arc& arc);
bool tent_contains(const Tent& t, const DiscPoint& z);

/// Normalized distance to the boundary, (1-|z|)/|w-z|, always in (0, 1].
double tau(const BoundaryPoint& w, const DiscPoint& z);

struct BoundaryCoords {
    double theta;
    double delta;
};

/// z = (1 - delta) e^{i theta}.
BoundaryCoords boundary_coords(const DiscPoint& z);

struct ChordBounds {
    double lower;
    double chord_sq;
    double upper;
};

/// Two-sided estimate (3/64) d^2 <= |p(t1,d1)-p(t2,d2)|^2 <= (125/64) d^2
/// valid on the square S = (-1/4, 1/4)^2 of boundary coordinates.
ChordBounds chord_bounds(const BoundaryCoords& p1, const BoundaryCoords& p2);

/// Membership in the Stolz region Gamma_b(w). For b >= 1 this is
/// tau(w, z) > 1/(1+b); Gamma_0(w) is the open radius {r w : 0 <= r < 1}.
bool stolz_contains(unsigned b, const BoundaryPoint& w, const DiscPoint& z);

/// Shadow of a single point: the boundary trace of B(z, (1+b)(1-|z|)).
/// Either the full circle or an arc centered at the argument of z.
struct PointShadow {
    bool full_circle = false;
    Arc arc;                       // valid when !full_circle

    bool contains(const BoundaryPoint& u) const {
        return full_circle || arc.contains(u.angle());
    }
};

PointShadow point_shadow(unsigned b, const DiscPoint& z);

}  // namespace discbound
