#pragma once

#include "discbound/adjacency.hpp"
#include "discbound/counterexample.hpp"
#include "discbound/harmonic.hpp"
#include "discbound/regions.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace discbound {

using json = nlohmann::json;

/// Region specs: "prop2b", "prop2c", "stolz:<b>", "radial", "attached",
/// "oscillating", "curve-demo", "explicit:<file>", each optionally rotated
/// with "@<angle>".
ApproachRegion parse_region_spec(const std::string& spec);

json to_json(const ClassificationReport& rep);
json to_json(const AdjacencyWitness& wit);
json to_json(const TentConstantEstimate& est);
json to_json(const OscillationEstimate& est);
json to_json(const ArcUnion& u);
json to_json(const CounterexampleArtifact& art);
json to_json(const VerificationReport& rep);

ArcUnion arc_union_from_json(const json& j);
CounterexampleArtifact artifact_from_json(const json& j);
BoundaryIndicator indicator_from_json(const json& j);

std::string to_csv(const ClassificationReport& rep);
std::string to_csv(const VerificationReport& rep);

/// SVG plot of the boundary sets and a sampled region.
std::string artifact_figure_svg(const CounterexampleArtifact& art, const RegionFamily& family);

/// Deterministic serialization: stable field order, shortest round-trip
/// number formatting (within the 17-significant-digit budget).
std::string dump_json(const json& j);

}  // namespace discbound
