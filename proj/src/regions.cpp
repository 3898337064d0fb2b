#include "discbound/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace discbound {

struct ApproachRegion::Data {
    Kind kind = Kind::Explicit;
    BoundaryPoint w;
    std::string name;

    // Sequence: rule at base w = 1, rotated on access
    std::function<std::complex<double>(std::uint64_t)> seq_rule;
    std::uint64_t cutoff = 0;
    std::function<SequenceExponents(std::uint64_t)> exp_rule;
    std::function<std::vector<Arc>(unsigned, double)> cert_rule;   // relative arcs

    std::function<std::complex<double>(double)> curve_rule;        // already at w
    int curve_density = 8;

    unsigned b = 0;                                                // Stolz

    std::vector<DiscPoint> points;                                 // Explicit

    std::vector<ApproachRegion> members;                           // Union

    double r_max = 2.0;
    double r_floor = 0.0;
};

namespace {

using Data = ApproachRegion::Data;

std::complex<double> rotate(std::complex<double> z, double alpha) {
    return z * std::polar(1.0, alpha);
}

double seq_dist_at_one(const Data& d, std::uint64_t n) {
    return std::abs(d.seq_rule(n) - std::complex<double>(1.0, 0.0));
}

// Smallest index whose point enters B(w, r); sequences used here have
// eventually decreasing distances, so exponential + binary search with a
// short safety rescan suffices.
std::optional<std::uint64_t> seq_crossing(const Data& d, double r) {
    if (seq_dist_at_one(d, 1) < r) return 1;
    std::uint64_t lo = 1, hi = 2;
    while (hi <= d.cutoff && seq_dist_at_one(d, hi) >= r) {
        lo = hi;
        if (hi > d.cutoff / 2) { hi = d.cutoff; break; }
        hi *= 2;
    }
    if (seq_dist_at_one(d, hi) >= r) return std::nullopt;
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (seq_dist_at_one(d, mid) < r) hi = mid; else lo = mid;
    }
    // rescan a few indices back in case of local non-monotonicity
    std::uint64_t first = hi;
    for (std::uint64_t k = (hi > 16 ? hi - 16 : 1); k < hi; ++k)
        if (seq_dist_at_one(d, k) < r) { first = k; break; }
    return first;
}

}  // namespace

ApproachRegion::Kind ApproachRegion::kind() const { return d_->kind; }
const BoundaryPoint& ApproachRegion::base() const { return d_->w; }
const std::string& ApproachRegion::name() const { return d_->name; }
unsigned ApproachRegion::stolz_b() const { return d_->b; }
double ApproachRegion::r_max() const { return d_->r_max; }
double ApproachRegion::r_floor() const { return d_->r_floor; }
bool ApproachRegion::has_sequence_rule() const { return d_->kind == Kind::Sequence; }
std::uint64_t ApproachRegion::sequence_cutoff() const { return d_->cutoff; }

DiscPoint ApproachRegion::sequence_point(std::uint64_t n) const {
    if (d_->kind != Kind::Sequence) throw std::logic_error("not a sequence region");
    if (n < 1 || n > d_->cutoff) throw std::out_of_range("sequence index beyond cutoff");
    return DiscPoint(rotate(d_->seq_rule(n), d_->w.angle()));
}

double ApproachRegion::sequence_distance(std::uint64_t n) const {
    if (d_->kind != Kind::Sequence) throw std::logic_error("not a sequence region");
    return seq_dist_at_one(*d_, n);
}

std::optional<SequenceExponents> ApproachRegion::sequence_exponents(std::uint64_t n) const {
    if (d_->kind == Kind::Sequence && d_->exp_rule) return d_->exp_rule(n);
    return std::nullopt;
}

std::vector<Arc> ApproachRegion::certified_shadow(unsigned b, double r) const {
    if (d_->kind == Kind::Sequence && d_->cert_rule) return d_->cert_rule(b, r);
    if (d_->kind == Kind::Union) {
        std::vector<Arc> all;
        for (const auto& m : d_->members)
            for (const Arc& a : m.certified_shadow(b, r)) all.push_back(a);
        return all;
    }
    return {};
}

const std::vector<ApproachRegion>& ApproachRegion::union_members() const {
    return d_->members;
}

bool ApproachRegion::exact_kind() const {
    switch (d_->kind) {
        case Kind::Sequence:
        case Kind::Explicit:
            return true;
        case Kind::Union:
            return std::all_of(d_->members.begin(), d_->members.end(),
                               [](const ApproachRegion& m) { return m.exact_kind(); });
        default:
            return false;
    }
}

std::vector<DiscPoint> ApproachRegion::sample_tail(double r, int budget) const {
    if (!(r > 0.0 && r <= d_->r_max))
        throw std::domain_error("sample_tail: radius outside (0, r_max]");
    if (budget < 1) throw std::domain_error("sample_tail: budget must be >= 1");
    std::vector<DiscPoint> out;
    const double wang = d_->w.angle();

    switch (d_->kind) {
        case Kind::Sequence: {
            auto first = seq_crossing(*d_, r);
            if (!first)
                throw std::domain_error(
                    "sample_tail: empty tail; region does not end at base within resolution");
            for (std::uint64_t n = *first; n <= d_->cutoff && (int)out.size() < budget; ++n) {
                if (seq_dist_at_one(*d_, n) < r)
                    out.emplace_back(rotate(d_->seq_rule(n), wang));
            }
            break;
        }
        case Kind::Curve: {
            for (int k = 0; (int)out.size() < budget && k <= 52 * d_->curve_density; ++k) {
                double s = 1.0 - std::exp2(-double(k) / d_->curve_density);
                std::complex<double> z = d_->curve_rule(s);
                if (std::abs(z) < 1.0 && std::abs(z - d_->w.embed()) < r)
                    out.emplace_back(z);
            }
            break;
        }
        case Kind::Stolz: {
            const double low = 1.0 / (1.0 + d_->b);
            for (int m = 0; (int)out.size() < budget && m < 2 * budget + 64; ++m) {
                double dd = r * std::exp2(-(m + 1) / 2.0);
                if (dd < 1e-15) break;
                for (int i = 1; i <= 6 && (int)out.size() < budget; ++i) {
                    double t = (i == 6) ? 1.0 : low + (1.0 - low) * i / 6.0;
                    double delta = t * dd;
                    if (delta >= 1.0) continue;
                    double ca = (1.0 + (1.0 - delta) * (1.0 - delta) - dd * dd) /
                                (2.0 * (1.0 - delta));
                    double th = std::acos(std::min(1.0, std::max(-1.0, ca)));
                    for (int sgn : {+1, -1}) {
                        if ((int)out.size() >= budget) break;
                        DiscPoint z(std::polar(1.0 - delta, wang + sgn * th));
                        if (std::abs(z.value() - d_->w.embed()) < r) out.push_back(z);
                        if (th == 0.0) break;
                    }
                }
            }
            break;
        }
        case Kind::Radial: {
            for (int m = 0; (int)out.size() < budget; ++m) {
                double dd = r * std::exp2(-(m + 1));
                if (1.0 - dd >= 1.0 || dd <= 0.0) break;
                out.emplace_back(std::polar(1.0 - dd, wang));
            }
            break;
        }
        case Kind::Attached: {
            std::uint64_t n0 = std::max<std::uint64_t>(2, (std::uint64_t)std::ceil(0.5 / r));
            std::uint64_t n = n0;
            int radial_m = 0;
            while ((int)out.size() < budget && n < (std::uint64_t)1 << 40) {
                for (int q = 0; q < 8 && (int)out.size() < budget; ++q) {
                    double t = q / (8.0 * n);
                    DiscPoint z(std::polar(1.0 - 1.0 / n, wang + t));
                    if (std::abs(z.value() - d_->w.embed()) < r) out.push_back(z);
                }
                if ((int)out.size() < budget) {       // interleave one radial point
                    double dd = r * std::exp2(-(radial_m + 1));
                    if (1.0 - dd < 1.0 && dd > 0.0)
                        out.emplace_back(std::polar(1.0 - dd, wang));
                    ++radial_m;
                }
                n = std::max(n + 1, n + n / 4);
            }
            break;
        }
        case Kind::Explicit: {
            for (const DiscPoint& z : d_->points) {
                if ((int)out.size() >= budget) break;
                if (std::abs(z.value() - d_->w.embed()) < r) out.push_back(z);
            }
            break;
        }
        case Kind::Union: {
            int per = std::max(1, budget / (int)d_->members.size());
            for (const auto& m : d_->members) {
                std::vector<DiscPoint> part;
                try {
                    part = m.sample_tail(r, per);
                } catch (const std::domain_error&) {
                    continue;                          // member tail empty at this radius
                }
                for (const DiscPoint& z : part)
                    if ((int)out.size() < budget) out.push_back(z);
            }
            break;
        }
    }
    if (out.empty())
        throw std::domain_error(
            "sample_tail: empty tail; region does not end at base within resolution");
    return out;
}

std::optional<bool> ApproachRegion::member(const DiscPoint& z, double tol) const {
    const double wang = d_->w.angle();
    switch (d_->kind) {
        case Kind::Sequence: {
            double dz = std::abs(z.value() - d_->w.embed());
            auto first = seq_crossing(*d_, dz * (1.0 + 1e-9) + tol);
            if (!first) return false;
            std::uint64_t start = (*first > 64) ? *first - 64 : 1;
            for (std::uint64_t n = start;
                 n <= d_->cutoff && n < *first + 4096; ++n) {
                if (std::abs(rotate(d_->seq_rule(n), wang) - z.value()) <= tol) return true;
                if (seq_dist_at_one(*d_, n) < dz * 0.25) break;
            }
            return false;
        }
        case Kind::Explicit:
            for (const DiscPoint& p : d_->points)
                if (std::abs(p.value() - z.value()) <= tol) return true;
            return false;
        case Kind::Stolz:
            return stolz_contains(d_->b, d_->w, z);
        case Kind::Radial:
            return stolz_contains(0, d_->w, z);
        case Kind::Attached: {
            if (stolz_contains(0, d_->w, z)) return true;
            double delta = z.delta();
            if (delta <= 0.0 || delta > 0.5 + tol) return false;
            double nreal = 1.0 / delta;
            auto on_piece = [&](std::uint64_t n) {
                if (n < 2) return false;
                if (std::abs(1.0 / n - delta) > tol) return false;
                double t = reduce_angle(z.theta() - wang);
                if (t > kPi) t -= kTwoPi;
                return t >= -tol && t < 1.0 / n;
            };
            return on_piece((std::uint64_t)std::floor(nreal)) ||
                   on_piece((std::uint64_t)std::ceil(nreal));
        }
        case Kind::Union: {
            bool unknown = false;
            for (const auto& m : d_->members) {
                auto r = m.member(z, tol);
                if (r.has_value() && *r) return true;
                if (!r.has_value()) unknown = true;
            }
            if (unknown) return std::nullopt;
            return false;
        }
        case Kind::Curve:
        default:
            return std::nullopt;
    }
}

ApproachRegion ApproachRegion::rotated(double alpha) const {
    auto nd = std::make_shared<Data>(*d_);
    nd->w = d_->w.rotated(alpha);
    if (d_->kind == Kind::Explicit) {
        nd->points.clear();
        for (const DiscPoint& p : d_->points) nd->points.push_back(p.rotated(alpha));
    } else if (d_->kind == Kind::Curve) {
        auto rule = d_->curve_rule;
        nd->curve_rule = [rule, alpha](double s) { return rotate(rule(s), alpha); };
    } else if (d_->kind == Kind::Union) {
        nd->members.clear();
        for (const auto& m : d_->members) nd->members.push_back(m.rotated(alpha));
    }
    return ApproachRegion(std::move(nd));
}

// --- constructors ------------------------------------------------------------

ApproachRegion make_prop2b_region(const BoundaryPoint& w) {
    auto d = std::make_shared<Data>();
    d->kind = ApproachRegion::Kind::Sequence;
    d->w = w;
    d->name = "prop2b";
    d->seq_rule = [](std::uint64_t n) {
        double inv = 1.0 / (double)n;
        return std::polar(1.0 - inv * inv, inv);
    };
    d->cutoff = (std::uint64_t)1 << 26;
    d->r_floor = 2.0e-8;
    // Every angle t in (0, 4r/25) satisfies tau(e^{it}, z_{n_t}) > 1/3 with
    // z_{n_t} in B(w, r), so the shadow of the full tail contains that arc
    // for every b >= 2. Valid for r < 1/4; larger radii use the r = 1/4 arc.
    d->cert_rule = [](unsigned b, double r) -> std::vector<Arc> {
        if (b < 2) return {};
        double rr = std::min(r, 0.2499);
        return {Arc{0.0, 4.0 * rr / 25.0}};
    };
    return ApproachRegion(std::move(d));
}

ApproachRegion make_prop2c_region(const BoundaryPoint& w, std::uint64_t cutoff) {
    if (cutoff > 6)
        throw std::out_of_range("prop2c: index cutoff beyond 6 underflows doubles");
    auto d = std::make_shared<Data>();
    d->kind = ApproachRegion::Kind::Sequence;
    d->w = w;
    d->name = "prop2c";
    d->seq_rule = [](std::uint64_t n) {
        double dn = std::exp2((double)((std::uint64_t)1 << n));        // 2^{2^n}
        double dn1 = std::exp2((double)((std::uint64_t)1 << (n - 1)));
        double delta = 1.0 / (dn * dn);                                // 4^{-2^n}
        double theta = 1.0 / (dn1 * dn1);                              // 4^{-2^{n-1}}
        return std::polar(1.0 - delta, theta);
    };
    d->cutoff = cutoff;
    d->r_floor = 1.2 * std::exp2(-(double)((std::uint64_t)1 << cutoff));   // ~ theta_cutoff
    d->exp_rule = [](std::uint64_t n) -> SequenceExponents {
        // theta_n = 2^{-2^n}, delta_n = 2^{-2^{n+1}}
        return {-std::exp2((double)n), -std::exp2((double)(n + 1))};
    };
    return ApproachRegion(std::move(d));
}

ApproachRegion make_stolz_region(unsigned b, const BoundaryPoint& w) {
    if (b < 1) throw std::domain_error("make_stolz_region: b >= 1 (use radial for b = 0)");
    auto d = std::make_shared<Data>();
    d->kind = ApproachRegion::Kind::Stolz;
    d->w = w;
    d->b = b;
    d->name = "stolz:" + std::to_string(b);
    d->r_floor = 1e-14;
    return ApproachRegion(std::move(d));
}

ApproachRegion make_radial_region(const BoundaryPoint& w) {
    auto d = std::make_shared<Data>();
    d->kind = ApproachRegion::Kind::Radial;
    d->w = w;
    d->name = "radial";
    d->r_floor = 1e-14;
    return ApproachRegion(std::move(d));
}

ApproachRegion make_curve_region(std::function<std::complex<double>(double)> rule,
                                 const BoundaryPoint& w, int density) {
    if (density < 1) throw std::domain_error("make_curve_region: density >= 1");
    for (double s : {0.9999999, 1.0 - std::exp2(-40.0)}) {
        std::complex<double> z = rule(s);
        if (!(std::abs(z) < 1.0) || std::abs(z - w.embed()) > 1e-3)
            throw std::invalid_argument("make_curve_region: rule does not converge to w");
    }
    auto d = std::make_shared<Data>();
    d->kind = ApproachRegion::Kind::Curve;
    d->w = w;
    d->name = "curve";
    d->curve_rule = std::move(rule);
    d->curve_density = density;
    d->r_floor = 1e-11;
    return ApproachRegion(std::move(d));
}

ApproachRegion make_attached_example(const BoundaryPoint& w) {
    auto d = std::make_shared<Data>();
    d->kind = ApproachRegion::Kind::Attached;
    d->w = w;
    d->name = "attached";
    d->r_floor = 1e-12;
    return ApproachRegion(std::move(d));
}

ApproachRegion make_explicit(std::vector<DiscPoint> points, const BoundaryPoint& w) {
    auto d = std::make_shared<Data>();
    d->kind = ApproachRegion::Kind::Explicit;
    d->w = w;
    d->name = "explicit";
    d->points = std::move(points);
    double rf = 2.0;
    for (const DiscPoint& p : d->points)
        rf = std::min(rf, std::abs(p.value() - w.embed()));
    d->r_floor = rf;
    return ApproachRegion(std::move(d));
}

ApproachRegion union_regions(std::vector<ApproachRegion> members) {
    if (members.empty()) throw std::invalid_argument("union_regions: empty union");
    for (const auto& m : members)
        if (!(m.base() == members.front().base()))
            throw std::invalid_argument("union_regions: members must share the base point");
    auto d = std::make_shared<Data>();
    d->kind = ApproachRegion::Kind::Union;
    d->w = members.front().base();
    d->name = "union";
    double rf = 2.0;
    for (const auto& m : members) rf = std::min(rf, m.r_floor());
    d->r_floor = rf;
    d->members = std::move(members);
    return ApproachRegion(std::move(d));
}

ApproachRegion make_oscillating_example(const BoundaryPoint& w) {
    return union_regions({make_radial_region(w), make_prop2b_region(w)});
}

// --- classification ----------------------------------------------------------

const char* to_string(RegionClass c) {
    switch (c) {
        case RegionClass::Nontangential: return "Nontangential";
        case RegionClass::Tangential: return "Tangential";
        case RegionClass::VeryOscillatory: return "VeryOscillatory";
        default: return "Inconclusive";
    }
}

std::vector<double> default_ladder() {
    std::vector<double> v;
    for (int k = 3; k <= 20; ++k) v.push_back(std::exp2(-k));
    return v;
}

ClassificationReport classify(const ApproachRegion& region, std::span<const double> ladder,
                              int budget, double eps_class) {
    if (ladder.empty()) throw std::domain_error("classify: empty ladder");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0 && ladder[i] <= region.r_max()))
            throw std::domain_error("classify: ladder outside (0, r_max]");
        if (i > 0 && !(ladder[i] < ladder[i - 1]))
            throw std::domain_error("classify: ladder must be strictly decreasing");
    }

    // Pool all per-radius samples, then take per-radius extrema over the
    // pool restricted to each ball: monotone by construction.
    std::vector<DiscPoint> pool;
    for (double r : ladder)
        for (const DiscPoint& z : region.sample_tail(r, budget)) pool.push_back(z);

    ClassificationReport rep;
    rep.ladder.assign(ladder.begin(), ladder.end());
    rep.eps_class = eps_class;
    const std::complex<double> wv = region.base().embed();
    for (double r : ladder) {
        double lo = 2.0, hi = -1.0;
        for (const DiscPoint& z : pool) {
            if (std::abs(z.value() - wv) < r) {
                double t = tau(region.base(), z);
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
        }
        rep.lower_tau.push_back(lo <= 1.0 ? lo : 1.0);
        rep.upper_tau.push_back(hi >= 0.0 ? hi : 0.0);
    }
    rep.a_lower = rep.lower_tau.back();
    rep.a_upper = rep.upper_tau.back();

    if (rep.a_lower > eps_class) {
        rep.verdict = RegionClass::Nontangential;
    } else if (rep.a_upper < eps_class) {
        rep.verdict = RegionClass::Tangential;
    } else if (rep.a_upper > 2.0 * eps_class) {
        rep.verdict = RegionClass::VeryOscillatory;
        rep.evidence_only = true;
    } else {
        rep.verdict = RegionClass::Inconclusive;
    }
    return rep;
}

namespace {

void enumerate_tail(const ApproachRegion& region, double r, int budget,
                    std::vector<std::complex<double>>& out) {
    switch (region.kind()) {
        case ApproachRegion::Kind::Sequence:
        case ApproachRegion::Kind::Union:
        case ApproachRegion::Kind::Explicit: {
            for (const DiscPoint& z : region.sample_tail(r, budget))
                out.push_back(z.value());
            break;
        }
        default:
            throw std::invalid_argument("germ_equal_upto: kind without exact membership");
    }
}

}  // namespace

bool germ_equal_upto(const ApproachRegion& a, const ApproachRegion& b, double r, int budget) {
    if (!(a.base() == b.base()))
        throw std::invalid_argument("germ_equal_upto: regions must share their base point");
    if (!a.exact_kind() || !b.exact_kind())
        throw std::invalid_argument("germ_equal_upto: kind without exact membership");
    std::vector<std::complex<double>> pa, pb;
    try {
        enumerate_tail(a, r, budget, pa);
    } catch (const std::domain_error&) {}
    try {
        enumerate_tail(b, r, budget, pb);
    } catch (const std::domain_error&) {}
    auto less = [](std::complex<double> x, std::complex<double> y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(pa.begin(), pa.end(), less);
    std::sort(pb.begin(), pb.end(), less);
    if (pa.size() != pb.size()) return false;
    for (std::size_t i = 0; i < pa.size(); ++i)
        if (std::abs(pa[i] - pb[i]) > 1e-14) return false;
    return true;
}

// --- families ----------------------------------------------------------------

RegionFamily RegionFamily::rotation_invariant(ApproachRegion base_at_one, unsigned b) {
    if (!(base_at_one.base() == BoundaryPoint(0.0)))
        throw std::invalid_argument("rotation_invariant: base region must sit at w = 1");
    std::vector<ApproachRegion> rs;
    rs.push_back(std::move(base_at_one));
    return RegionFamily(std::move(rs), b, true, nullptr);
}

RegionFamily RegionFamily::tabulated(std::vector<ApproachRegion> regions, unsigned b,
                                     BRule b_rule) {
    if (regions.empty()) throw std::invalid_argument("tabulated: empty table");
    return RegionFamily(std::move(regions), b, false, std::move(b_rule));
}

ApproachRegion RegionFamily::region_at(const BoundaryPoint& w) const {
    if (rotation_invariant_) return regions_.front().rotated(w.angle());
    for (const auto& r : regions_)
        if (std::abs(r.base().angle() - w.angle()) < 1e-12) return r;
    throw std::out_of_range("tabulated family has no region at the requested point");
}

}  // namespace discbound
