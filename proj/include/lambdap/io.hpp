// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "lambdap/compactness.hpp"
#include "lambdap/covering.hpp"
#include "lambdap/measure.hpp"

namespace lambdap {

using Json = nlohmann::json;

// Wire formats. Objects use sorted keys; doubles use shortest round-trip
// decimal, so a parsed certificate re-verifies bit for bit.
//
//   space        {"weights": [...]}
//   function     {"values": [...]}
//   family file  {"space": space, "family": {"label": ..., "members": [function, ...]}}
//   cover        {"epsilon": e, "centers": [...], "assignment": [[member, center, distance], ...]}
//   packing      {"epsilon": e, "points": [...]}
//   metric       {"kind": "lambda" | "lp", "p": p, "level": M | null}

Json to_json(const MeasureSpace& space);
Json to_json(const SimpleFunction& f);
Json to_json(const FunctionFamily& family);  // family file layout
Json to_json(const CoveringCertificate& cert);
Json to_json(const PackingWitness& witness);
Json metric_json(const DistanceOracle& oracle);
Json to_json(const ConditionProfile& profile);
Json to_json(const CompactnessReport& report);
Json to_json(const LadderTrend& trend);

// Parsers throw Error(parse) on malformed documents.
MeasureSpace space_from_json(const Json& j);
SimpleFunction function_from_json(const Json& j, const MeasureSpace& space);
FunctionFamily family_from_json(const Json& j);
CoveringCertificate cover_from_json(const Json& j);
PackingWitness packing_from_json(const Json& j);
/// Rebuilds the oracle described by a metric object over `family`.
DistanceOracle oracle_from_json(const Json& metric, const FunctionFamily& family);

/// Throws Error(io) if the file cannot be read, Error(parse) if it is not JSON.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
FunctionFamily read_family_file(const std::string& path);

std::string dump(const Json& j);

/// index,cover_size,packing_size,min_M_for_half_epsilon
void write_trend_csv(std::ostream& out, const LadderTrend& trend);

}  // namespace lambdap
