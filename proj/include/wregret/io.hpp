#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wregret/axioms.hpp"
#include "wregret/core.hpp"
#include "wregret/learning.hpp"
#include "wregret/regret.hpp"

// JSON documents. Rationals are strings ("p/q" or "p"); output is always
// canonical so that parse followed by serialize reproduces canonical input
// byte for byte.
namespace wregret::io {

using Json = nlohmann::ordered_json;

Rat rat_from_json(const Json& j, const std::string& where);
Json rat_to_json(const Rat& r);

SpacePtr space_from_json(const Json& doc);
// Reads the optional "states" field of a document tied to an existing space
// and checks it matches.
void check_states(const Json& doc, const SpacePtr& space, const std::string& what);

// {"states": [...], "entries": [{"mass": [...], "weight": "..."}]}
WeightedCredalSet credal_set_from_json(const Json& doc);
Json to_json(const WeightedCredalSet& set);

// {"states": [...], "mass": [...]}
ProbMeasure measure_from_json(const Json& doc, const SpacePtr& space);
Json to_json(const ProbMeasure& pr);

// {"states": [...] (optional), "acts": [{"name": "...", "utility": [...]}]}
std::vector<Act> acts_from_json(const Json& doc, const SpacePtr& space);
Json to_json(const std::vector<Act>& acts);

// {"states": [...], "values": {"": "1", "a": "2/3", ...}}; the table must be total.
SetFunction set_function_from_json(const Json& doc);
Json to_json(const SetFunction& f);

// {"alphabet": [...], "likelihoods": [[...], ...]}
ObservationModel model_from_json(const Json& doc);
Json to_json(const ObservationModel& model);

Json to_json(const LinearSystem& sys);

Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);
// Two-space indentation plus a trailing newline.
std::string dump(const Json& doc);

} // namespace wregret::io
