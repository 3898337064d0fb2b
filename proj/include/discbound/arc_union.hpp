#pragma once

#include "discbound/geometry.hpp"

#include <span>
#include <vector>

namespace discbound {

/// Normalized finite union of open arcs. Components are kept sorted and
/// pairwise disjoint as intervals of [0, 2pi]; arcs crossing the angle seam
/// are split internally and rejoined for reporting. Gaps below the merge
/// tolerance (1e-12 rad) are absorbed.
class ArcUnion {
public:
    static constexpr double kMergeTol = 1e-12;

    ArcUnion() = default;
    static ArcUnion normalize(std::span<const Arc> arcs);
    static ArcUnion normalize(std::initializer_list<Arc> arcs);
    static ArcUnion full_circle();

    bool empty() const { return !full_ && parts_.empty(); }
    bool is_full_circle() const { return full_; }

    double measure() const;
    bool contains(double angle) const;
    bool contains(const BoundaryPoint& u) const { return contains(u.angle()); }

    /// Seam-rejoined component arcs, sorted by start angle.
    std::vector<Arc> components() const;
    std::size_t component_count() const { return components().size(); }

    ArcUnion unite(const ArcUnion& other) const;
    /// Open gaps between components (endpoints dropped).
    ArcUnion complement_components() const;

    /// True when every component of this union lies inside `other`.
    bool subset_of(const ArcUnion& other) const;

    /// Distance from `angle` to the nearest component endpoint, considering
    /// only components of length >= min_len. Returns +inf if none qualify.
    double edge_distance(double angle, double min_len = 0.0) const;

    struct Interval {
        double a, b;               // 0 <= a < b <= 2pi
    };
    const std::vector<Interval>& intervals() const { return parts_; }
    bool seam_interior() const { return seam_; }

    /// Exact reconstruction from a previously serialized normalized form.
    /// Validates ordering and disjointness; no tolerance merging is applied.
    static ArcUnion from_raw(std::vector<Interval> parts, bool seam_interior, bool full);

private:
    std::vector<Interval> parts_;
    bool seam_ = false;            // angle 0 is an interior point
    bool full_ = false;

    void canonicalize();
    friend bool operator==(const ArcUnion&, const ArcUnion&);
};

bool operator==(const ArcUnion& x, const ArcUnion& y);

}  // namespace discbound
