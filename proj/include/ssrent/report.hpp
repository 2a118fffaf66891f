#pragma once

#include <string>

#include <json.hpp>

#include "ssrent/classify.hpp"
#include "ssrent/density.hpp"
#include "ssrent/protocols.hpp"

namespace ssrent {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "ssr-ent/1";

/// Rounds to 12 significant digits and normalizes -0 to 0, so serialized
/// reports are byte-stable across runs and platforms.
double round12(double x);

ordered_json json_number(double x);
ordered_json json_complex(cplx z); // [re, im]

ordered_json state_to_json(const PureState& psi);
ordered_json density_to_json(const DensityOperator& rho);
ordered_json sector_to_json(const SectorKey& key);
ordered_json report_to_json(const ClassificationReport& report);
ordered_json outcome_to_json(const ProtocolOutcome& outcome);

/// Serialization with a fixed key order and trailing newline.
std::string dump_report(const ordered_json& doc);

} // namespace ssrent
