#include "discbound/arc_union.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace discbound {

ArcUnion ArcUnion::normalize(std::span<const Arc> arcs) {
    ArcUnion u;
    for (const Arc& arc : arcs) {
        if (!(arc.length > 0.0 && arc.length <= kTwoPi))
            throw std::domain_error("ArcUnion: arc length must be in (0, 2pi]");
        double a = reduce_angle(arc.start);
        double b = a + arc.length;
        if (b > kTwoPi) {
            u.parts_.push_back({a, kTwoPi});
            u.parts_.push_back({0.0, b - kTwoPi});
            u.seam_ = true;                    // the seam point is interior
        } else {
            u.parts_.push_back({a, b});
        }
    }
    u.canonicalize();
    return u;
}

ArcUnion ArcUnion::normalize(std::initializer_list<Arc> arcs) {
    return normalize(std::span<const Arc>(arcs.begin(), arcs.end()));
}

ArcUnion ArcUnion::full_circle() {
    ArcUnion u;
    u.full_ = true;
    u.seam_ = true;
    u.parts_ = {{0.0, kTwoPi}};
    return u;
}

void ArcUnion::canonicalize() {
    if (parts_.empty()) return;
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    std::vector<Interval> merged;
    merged.push_back(parts_.front());
    for (std::size_t i = 1; i < parts_.size(); ++i) {
        Interval& cur = merged.back();
        if (parts_[i].a <= cur.b + kMergeTol)
            cur.b = std::max(cur.b, parts_[i].b);
        else
            merged.push_back(parts_[i]);
    }
    parts_ = std::move(merged);
    // absorb a sub-tolerance gap across the seam
    double seam_gap = (kTwoPi - parts_.back().b) + parts_.front().a;
    if (seam_gap <= kMergeTol && (parts_.size() > 1 || seam_))
        seam_ = true;
    if (seam_ && parts_.size() == 1 && parts_.front().a <= kMergeTol &&
        parts_.front().b >= kTwoPi - kMergeTol) {
        full_ = true;
        parts_ = {{0.0, kTwoPi}};
    }
}

double ArcUnion::measure() const {
    if (full_) return kTwoPi;
    double m = 0.0;
    for (const Interval& p : parts_) m += p.b - p.a;
    return m;
}

bool ArcUnion::contains(double angle) const {
    if (full_) return true;
    double x = reduce_angle(angle);
    if (x == 0.0) return seam_;
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](double v, const Interval& p) { return v < p.a; });
    if (it == parts_.begin()) return false;
    --it;
    return it->a < x && x < it->b;
}

std::vector<Arc> ArcUnion::components() const {
    if (full_) return {Arc{0.0, kTwoPi}};
    if (parts_.empty()) return {};
    std::vector<Arc> out;
    std::size_t n = parts_.size();
    bool rejoin = seam_ && n >= 2 && parts_.front().a <= kMergeTol &&
                  parts_.back().b >= kTwoPi - kMergeTol;
    std::size_t first = rejoin ? 1 : 0;
    for (std::size_t i = first; i + 1 < n || (!rejoin && i < n); ++i)
        out.push_back(Arc{parts_[i].a, parts_[i].b - parts_[i].a});
    if (rejoin) {
        const Interval& last = parts_.back();
        const Interval& head = parts_.front();
        out.push_back(Arc{last.a, (kTwoPi - last.a) + head.b});
    }
    return out;
}

ArcUnion ArcUnion::unite(const ArcUnion& other) const {
    if (full_ || other.full_) return full_circle();
    std::vector<Arc> all = components();
    for (const Arc& a : other.components()) all.push_back(a);
    if (all.empty()) return {};
    return normalize(all);
}

ArcUnion ArcUnion::complement_components() const {
    if (full_) return {};
    if (parts_.empty()) return full_circle();
    std::vector<Arc> gaps;
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
        double len = parts_[i + 1].a - parts_[i].b;
        if (len > kMergeTol) gaps.push_back(Arc{parts_[i].b, len});
    }
    if (!seam_) {
        double len = (kTwoPi - parts_.back().b) + parts_.front().a;
        if (len > kMergeTol)
            gaps.push_back(Arc{reduce_angle(parts_.back().b), len});
    }
    if (gaps.empty()) return {};
    return normalize(gaps);
}

bool ArcUnion::subset_of(const ArcUnion& other) const {
    if (other.full_) return true;
    if (full_) return false;
    if (seam_ && !other.seam_) return false;
    for (const Interval& p : parts_) {
        auto it = std::upper_bound(other.parts_.begin(), other.parts_.end(), p.a + kMergeTol,
                                   [](double v, const Interval& q) { return v < q.a; });
        if (it == other.parts_.begin()) return false;
        --it;
        if (!(it->a <= p.a + kMergeTol && it->b >= p.b - kMergeTol)) return false;
    }
    return true;
}

double ArcUnion::edge_distance(double angle, double min_len) const {
    double x = reduce_angle(angle);
    double best = std::numeric_limits<double>::infinity();
    for (const Arc& c : components()) {
        if (c.length < min_len) continue;
        for (double e : {c.start, reduce_angle(c.start + c.length)}) {
            double d = std::abs(x - e);
            d = std::min(d, kTwoPi - d);
            best = std::min(best, d);
        }
    }
    return best;
}

ArcUnion ArcUnion::from_raw(std::vector<Interval> parts, bool seam_interior, bool full) {
    ArcUnion u;
    if (full) return full_circle();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!(parts[i].a >= 0.0 && parts[i].a < parts[i].b && parts[i].b <= kTwoPi))
            throw std::invalid_argument("ArcUnion::from_raw: malformed interval");
        if (i > 0 && !(parts[i].a > parts[i - 1].b))
            throw std::invalid_argument("ArcUnion::from_raw: intervals not disjoint/sorted");
    }
    u.parts_ = std::move(parts);
    u.seam_ = seam_interior;
    return u;
}

bool operator==(const ArcUnion& x, const ArcUnion& y) {
    if (x.full_ != y.full_ || x.seam_ != y.seam_) return false;
    if (x.parts_.size() != y.parts_.size()) return false;
    for (std::size_t i = 0; i < x.parts_.size(); ++i)
        if (x.parts_[i].a != y.parts_[i].a || x.parts_[i].b != y.parts_[i].b) return false;
    return true;
}

}  // namespace discbound
