#pragma once

#include <filesystem>

#include "json.hpp"

#include "gtent/atomic.hpp"
#include "gtent/duality.hpp"
#include "gtent/embedding.hpp"
#include "gtent/whitney.hpp"

namespace gtent {

using Json = nlohmann::ordered_json;

// Non-finite doubles become the strings "inf", "-inf" and "nan".
Json number(double v);

Json to_json(const Point& p);
Json to_json(const Ball& b);
Json to_json(const HalfSpaceGrid& g);
GridPtr grid_from_json(const Json& j);

Json to_json(const AtomReport& r);
Json to_json(const DecompositionAudit& a);
Json to_json(const CoefficientReport& r);
Json to_json(const DensityReport& r);
Json to_json(const CarlesonReport& r, bool per_ball = false);
Json to_json(const CarlesonPairingReport& r);
Json to_json(const StoppingReport& r);
Json to_json(const DualityOneQReport& r);
Json to_json(const DualityPqReport& r);
Json to_json(const H1AtomReport& r);
Json to_json(const CubeAudit& a);
Json to_json(const BallAudit& a);
Json to_json(const IndependenceSweep& s);

// Writes decomposition.json into dir plus one binary file per atom.
void export_decomposition(const Decomposition& d, const std::filesystem::path& dir);
Decomposition import_decomposition(const std::filesystem::path& json_path);

}  // namespace gtent
