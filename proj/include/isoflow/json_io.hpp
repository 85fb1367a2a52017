#pragma once

#include <string>

#include "json.hpp"

#include "isoflow/block_operator.hpp"
#include "isoflow/flow.hpp"
#include "isoflow/foliation.hpp"
#include "isoflow/foliation_config.hpp"
#include "isoflow/root_data.hpp"
#include "isoflow/solvable_model.hpp"

namespace isoflow {

using json = nlohmann::ordered_json;

/// Parses text; malformed JSON raises ParseError with the byte offset.
json parse_json(const std::string& text, const std::string& source = "<input>");
json read_json_file(const std::string& path);

/// {"rank": r, "roots": [[..]], "mult": [..], "double_mult": [..]}
json to_json(const RootDatum& datum);
/// Throws ConfigError on schema or invariant violations.
RootDatum datum_from_json(const json& j);

/// {"model", "root_datum", "b_basis", "chosen_roots", "xi_index", "offsets"}
json to_json(const FoliationConfig& cfg);
/// A non-null "model" loads the matrix model and takes its root datum; a
/// "root_datum" given alongside must agree with it.
FoliationConfig config_from_json(const json& j);

/// Adapted basis as row-major matrices of the realization, plus the datum.
json to_json(const SolvableModel& model);
json to_json(const BlockOperator& op);
json to_json(const AdaptednessReport& report);
json to_json(const FlowVerdict& verdict);
json to_json(const MeanCurvatureCoefficients& coeffs);

json matrix_to_json(const Mat& m);
json vector_to_json(const Vec& v);
Vec vector_from_json(const json& j);

}  // namespace isoflow
