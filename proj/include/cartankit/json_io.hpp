#pragma once

#include <string>

#include <json.hpp>

#include "cartankit/classifier.hpp"

namespace cartankit {

using nlohmann::json;

/// Scalars serialize as [re, im]; over R a bare number is also accepted.
json scalar_to_json(Scalar z, FieldTag f);
Scalar scalar_from_json(const json& j, FieldTag f, const char* what);

/// ANElement: {"t1","t2","phi","x":[..],"y":[..],"eta","xx","yy"}; the
/// context (field, n) travels separately.
json an_to_json(const ANElement& u);
ANElement an_from_json(const json& j, const GroupContext& ctx);

/// GroupMatrix: {"field":"R"|"C", "n":int, "entries":[[[re,im],..],..]}.
json group_to_json(const GroupMatrix& g);
GroupMatrix group_from_json(const json& j);

/// SubalgebraSpec: {"field","n","name","basis":[ANElement,..]}.
json spec_to_json(const SubalgebraSpec& s);
SubalgebraSpec spec_from_json(const json& j);

/// BMap: {"field","n","convention":"xB","entries":[[r,..],..]} (real).
json bmap_to_json(const BMap& b);
BMap bmap_from_json(const json& j);

json verdict_to_json(const Verdict& v);
json condition_report_to_json(const ConditionReport& r);
json compatibility_to_json(const CompatibilityReport& r);

/// Reads a whole file and parses it; wraps parse failures (including
/// unreadable files) in parse_error with the byte position when available.
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

} // namespace cartankit
