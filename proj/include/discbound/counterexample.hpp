#pragma once

#include "discbound/adjacency.hpp"
#include "discbound/arc_union.hpp"
#include "discbound/harmonic.hpp"
#include "discbound/regions.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace discbound {

/// Violation of one of the pipeline hypotheses: "t" (tangential ends),
/// "p" (projective adjacency), "reg" (regularity).
class hypothesis_error : public std::runtime_error {
public:
    hypothesis_error(std::string which, const std::string& msg)
        : std::runtime_error(msg), which_(std::move(which)) {}
    const std::string& hypothesis() const { return which_; }

private:
    std::string which_;
};

/// Block enumeration 2,3, 2,3,4, 2,3,4,5, ...: block m lists 2..m+2, so every
/// integer >= 2 appears infinitely often.
unsigned v_sequence(unsigned j);

/// Sampled sup of tau(w, .) over lambda(w) ∩ B(w, (11/10) 2pi/j).
double tangency_gauge(const RegionFamily& family, const BoundaryPoint& w, std::uint64_t j);

/// Smallest phi (optionally constrained to multiples of `multiple_of`)
/// exceeding max(j, prior_phi) whose gauge clears c (10/22) 2^-j / v_j on the
/// Egorov set (the full grid for rotation-invariant families).
std::uint64_t select_phi(const RegionFamily& family, unsigned grid, unsigned j, double c,
                         std::uint64_t prior_phi, std::uint64_t multiple_of = 1);

/// Same selection with the Egorov set recorded: the grid indices whose gauge
/// clears the threshold at the selected phi (all of them when rotation
/// invariant). The set keeps all but a 2^-j sliver of the grid.
struct EgorovSelection {
    std::uint64_t phi = 0;
    std::vector<unsigned> egorov_grid;
};
EgorovSelection select_phi_recorded(const RegionFamily& family, unsigned grid, unsigned j,
                                    double c, std::uint64_t prior_phi,
                                    std::uint64_t multiple_of = 1);

/// n-th roots of unity.
std::vector<BoundaryPoint> build_lattice(std::uint64_t n);

/// A union of arcs that is periodic under rotation by 2pi/divisor, stored as
/// its single-period pattern in the scaled circle: theta belongs to the set
/// iff divisor*theta (mod 2pi) belongs to the pattern. Poisson integrals pull
/// back exactly through z -> z^divisor.
class PeriodicArcSet {
public:
    PeriodicArcSet() = default;
    PeriodicArcSet(std::uint64_t divisor, ArcUnion pattern);

    std::uint64_t divisor() const { return m_; }
    const ArcUnion& pattern() const { return pattern_; }
    double measure() const { return measure_; }

    bool contains(double theta) const;
    double scaled_position(double theta) const;

    /// True-scale distance from theta to the nearest component edge,
    /// restricted to components of true length >= min_len.
    double edge_distance(double theta, double min_len = 0.0) const;

    double poisson(const DiscPoint& z) const;
    double conjugate(const DiscPoint& z) const;

    /// Flat arc-union representation; guarded against blowup.
    ArcUnion materialize(std::size_t max_components = 2'000'000) const;

    bool subset_of(const PeriodicArcSet& other) const;

private:
    std::uint64_t m_ = 1;
    ArcUnion pattern_;
    double measure_ = 0.0;
    // flattened pattern intervals for the direct evaluation path
    std::vector<double> ca_, sa_, cb_, sb_, half_ell_;
    std::vector<std::complex<double>> fourier_;   // I_k = ∫ e^{ikt} dt, k = 1..M
    static constexpr int kFourierTerms = 120;
    static constexpr double kFourierRhoMax = 0.7;
};

/// O_n: centered arcs of length 2^-n 2pi/phi_n around the phi_n-th roots of
/// unity, as a periodic set. |O_n| = 2^-n 2pi.
PeriodicArcSet build_O_periodic(unsigned n, std::uint64_t phi_n);
ArcUnion build_O(unsigned n, std::uint64_t phi_n);

/// V_j = union of O_k for k = j..K. Requires phi_j | phi_k for k >= j.
PeriodicArcSet build_V_periodic(unsigned j, std::span<const std::uint64_t> phi, unsigned K);
ArcUnion build_V(unsigned j, std::span<const std::uint64_t> phi, unsigned K);

struct CounterexampleConfig {
    std::string family = "prop2b";
    double family_rotation = 0.0;          // rotate the base construction
    unsigned family_b = 2;
    unsigned levels = 5;                   // J
    unsigned truncation = 12;              // K >= J
    unsigned grid = 4096;
    double egorov_c = 0.21650635094610965; // sqrt(3/64)
    double gate_gauge_threshold = 0.05;
    std::uint64_t gate_gauge_index = 4096;
    int tent_grid_density = 48;
    // verification; 0 resolves the oscillation radius from the finest
    // lattice spacing at build time
    int osc_rmin_exp = 0;
    int fatou_rmin_exp = 20;
    int fatou_rmax_exp = 23;
    double osc_slack = 0.2;
    double fatou_threshold = 0.05;
    unsigned seed = 0;                     // echoed in outputs; sampling is deterministic

    void validate() const;
};

struct LatticeLevel {
    unsigned k = 0;
    std::uint64_t phi = 0;
    double arc_length = 0.0;               // 2^-k 2pi / phi
};

struct CounterexampleArtifact {
    CounterexampleConfig config;
    std::vector<unsigned> v;               // v_1..v_K
    std::vector<std::uint64_t> phi;        // phi_1..phi_K
    std::vector<LatticeLevel> levels;
    double c0 = 0.0;
    double s = 0.0;
    std::vector<double> tent_per_theta;
    std::vector<PeriodicArcSet> V;         // V_1..V_J
    bool grid_resolves_truncation = false;
    std::string regularity_note;

    double poisson_f(const DiscPoint& z) const;
    double conjugate_f(const DiscPoint& z) const;
    std::complex<double> holo_f(const DiscPoint& z) const;
    double indicator_value(double angle) const;
    /// Smallest j <= J with angle outside V_j; 0 when the angle is in V_J.
    unsigned escape_level(double angle) const;
    double oscillation_bound(unsigned escape) const;   // s^-j c0^2/(1+c0)
};

RegionFamily family_from_config(const CounterexampleConfig& config);

CounterexampleArtifact build_counterexample(const CounterexampleConfig& config);

/// Zygmund-map membership: w outside V and, for every ladder epsilon, some
/// arc of V inside B(w, epsilon) whose tent meets the sampled region.
bool zygmund_member(const RegionFamily& family, const ArcUnion& v, const BoundaryPoint& w,
                    std::span<const double> eps_ladder, int budget = 256);

/// Artifact-scale variant: candidate arcs come from the lattice levels
/// k = n..K adjacent to w.
bool zygmund_member_artifact(const CounterexampleArtifact& art, const RegionFamily& family,
                             unsigned n, const BoundaryPoint& w,
                             std::span<const double> eps_ladder);

struct OscillationRow {
    double w_angle = 0.0;
    unsigned escape_level = 0;
    double osc = 0.0;
    double bound = 0.0;
    bool pass = false;
    bool fatou_included = false;
    double fatou_osc = 0.0;
    bool fatou_pass = false;
};

struct VerificationReport {
    std::vector<OscillationRow> rows;
    std::size_t checked = 0;
    std::size_t passed = 0;
    double pass_rate = 0.0;
    std::size_t fatou_checked = 0;
    std::size_t fatou_passed = 0;
    double fatou_pass_rate = 0.0;
    double truncation_error_budget = 0.0;   // 2 * 2^-K * 2pi
};

VerificationReport verify_oscillation(const CounterexampleArtifact& art,
                                      const RegionFamily& family,
                                      std::span<const BoundaryPoint> samples,
                                      int threads = 0);

/// Default verification samples: the artifact grid points outside V_J.
std::vector<BoundaryPoint> verification_samples(const CounterexampleArtifact& art);

}  // namespace discbound
