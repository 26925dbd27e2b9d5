#include "wregret/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "wregret/error.hpp"

namespace wregret::io {

namespace {

const Json& field(const Json& doc, const char* key, const std::string& what) {
    if (!doc.is_object()) {
        throw ParseError(what + " must be a JSON object");
    }
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw ParseError(what + " is missing \"" + key + "\"");
    }
    return *it;
}

void only_keys(const Json& doc, std::initializer_list<const char*> allowed, const std::string& what) {
    for (const auto& [key, _] : doc.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            throw ParseError(what + " has unknown key \"" + key + "\"");
        }
    }
}

const Json& array_field(const Json& doc, const char* key, const std::string& what) {
    const Json& v = field(doc, key, what);
    if (!v.is_array()) {
        throw ParseError(what + ": \"" + key + "\" must be an array");
    }
    return v;
}

std::vector<Rat> rat_array(const Json& arr, const std::string& where) {
    if (!arr.is_array()) {
        throw ParseError(where + " must be an array of rationals");
    }
    std::vector<Rat> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(rat_from_json(arr[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Json rat_array_json(std::span<const Rat> values) {
    Json arr = Json::array();
    for (const auto& v : values) {
        arr.push_back(rat_to_json(v));
    }
    return arr;
}

std::vector<std::string> string_array(const Json& arr, const std::string& where) {
    if (!arr.is_array()) {
        throw ParseError(where + " must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto& v : arr) {
        if (!v.is_string()) {
            throw ParseError(where + " must contain only strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

Json labels_json(const SpacePtr& space) {
    Json arr = Json::array();
    for (const auto& l : space->labels()) {
        arr.push_back(l);
    }
    return arr;
}

} // namespace

Rat rat_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) {
        return Rat(j.get<long>());
    }
    throw ParseError(where + ": expected a rational string such as \"2/3\"");
}

Json rat_to_json(const Rat& r) { return r.to_string(); }

SpacePtr space_from_json(const Json& doc) {
    auto labels = string_array(field(doc, "states", "document"), "\"states\"");
    try {
        return StateSpace::make(std::move(labels));
    } catch (const DomainError& e) {
        throw ParseError(std::string("\"states\": ") + e.what());
    }
}

void check_states(const Json& doc, const SpacePtr& space, const std::string& what) {
    if (!doc.is_object() || !doc.contains("states")) {
        return;
    }
    const auto labels = string_array(doc.at("states"), what + " \"states\"");
    if (labels != space->labels()) {
        throw ParseError(what + " \"states\" do not match the credal set's states");
    }
}

WeightedCredalSet credal_set_from_json(const Json& doc) {
    const std::string what = "credal set document";
    only_keys(doc, {"states", "entries"}, what);
    const auto space = space_from_json(doc);
    const Json& entries = array_field(doc, "entries", what);
    std::vector<WeightedMeasure> out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string where = "entries[" + std::to_string(i) + "]";
        only_keys(entries[i], {"mass", "weight"}, where);
        auto mass = rat_array(field(entries[i], "mass", where), where + ".mass");
        Rat weight = rat_from_json(field(entries[i], "weight", where), where + ".weight");
        try {
            out.push_back({ProbMeasure(space, std::move(mass)), std::move(weight)});
        } catch (const DomainError& e) {
            throw DomainError(where + ": " + e.what());
        }
    }
    return WeightedCredalSet(std::move(out));
}

Json to_json(const WeightedCredalSet& set) {
    Json doc;
    doc["states"] = labels_json(set.space());
    Json entries = Json::array();
    for (const auto& e : set.entries()) {
        Json entry;
        entry["mass"] = rat_array_json(e.measure.masses());
        entry["weight"] = rat_to_json(e.weight);
        entries.push_back(std::move(entry));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

ProbMeasure measure_from_json(const Json& doc, const SpacePtr& space) {
    const std::string what = "measure document";
    only_keys(doc, {"states", "mass"}, what);
    check_states(doc, space, what);
    return {space, rat_array(field(doc, "mass", what), "mass")};
}

Json to_json(const ProbMeasure& pr) {
    Json doc;
    doc["states"] = labels_json(pr.space());
    doc["mass"] = rat_array_json(pr.masses());
    return doc;
}

std::vector<Act> acts_from_json(const Json& doc, const SpacePtr& space) {
    const std::string what = "acts document";
    only_keys(doc, {"states", "acts"}, what);
    check_states(doc, space, what);
    const Json& acts = array_field(doc, "acts", what);
    std::vector<Act> out;
    std::set<std::string> names;
    for (std::size_t i = 0; i < acts.size(); ++i) {
        const std::string where = "acts[" + std::to_string(i) + "]";
        only_keys(acts[i], {"name", "utility"}, where);
        const Json& name = field(acts[i], "name", where);
        if (!name.is_string()) {
            throw ParseError(where + ".name must be a string");
        }
        if (!names.insert(name.get<std::string>()).second) {
            throw ParseError(where + ": duplicate act name \"" + name.get<std::string>() + "\"");
        }
        out.emplace_back(space, rat_array(field(acts[i], "utility", where), where + ".utility"),
                         name.get<std::string>());
    }
    return out;
}

Json to_json(const std::vector<Act>& acts) {
    Json doc;
    if (!acts.empty()) {
        doc["states"] = labels_json(acts.front().space());
    }
    Json arr = Json::array();
    for (const auto& a : acts) {
        Json item;
        item["name"] = a.name();
        item["utility"] = rat_array_json(a.utilities());
        arr.push_back(std::move(item));
    }
    doc["acts"] = std::move(arr);
    return doc;
}

SetFunction set_function_from_json(const Json& doc) {
    const std::string what = "set function document";
    only_keys(doc, {"states", "values"}, what);
    const auto space = space_from_json(doc);
    const Json& values = field(doc, "values", what);
    if (!values.is_object()) {
        throw ParseError(what + ": \"values\" must be an object keyed by event");
    }
    std::vector<std::optional<Rat>> table(space->event_count());
    for (const auto& [key, value] : values.items()) {
        const Event e = Event::parse(space, key);
        if (e.key() != key) {
            throw ParseError(what + ": event key \"" + key + "\" is not in canonical form \"" +
                             e.key() + "\" (labels in state order)");
        }
        if (table[e.mask()]) {
            throw ParseError(what + ": duplicate event key \"" + key + "\"");
        }
        table[e.mask()] = rat_from_json(value, "values[\"" + key + "\"]");
    }
    std::vector<Rat> out;
    out.reserve(table.size());
    for (std::size_t m = 0; m < table.size(); ++m) {
        if (!table[m]) {
            throw ParseError(what + ": missing value for event \"" + Event(space, m).key() + "\"");
        }
        out.push_back(*table[m]);
    }
    return {space, std::move(out)};
}

Json to_json(const SetFunction& f) {
    Json doc;
    doc["states"] = labels_json(f.space());
    Json values = Json::object();
    for (std::uint64_t m = 0; m < f.values().size(); ++m) {
        values[Event(f.space(), m).key()] = rat_to_json(f.at(m));
    }
    doc["values"] = std::move(values);
    return doc;
}

ObservationModel model_from_json(const Json& doc) {
    const std::string what = "observation model document";
    only_keys(doc, {"alphabet", "likelihoods"}, what);
    auto alphabet = string_array(field(doc, "alphabet", what), "\"alphabet\"");
    const Json& rows = array_field(doc, "likelihoods", what);
    std::vector<std::vector<Rat>> table;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        table.push_back(rat_array(rows[i], "likelihoods[" + std::to_string(i) + "]"));
    }
    return {std::move(alphabet), std::move(table)};
}

Json to_json(const ObservationModel& model) {
    Json doc;
    Json alphabet = Json::array();
    for (const auto& s : model.alphabet()) {
        alphabet.push_back(s);
    }
    doc["alphabet"] = std::move(alphabet);
    Json rows = Json::array();
    for (const auto& row : model.table()) {
        rows.push_back(rat_array_json(row));
    }
    doc["likelihoods"] = std::move(rows);
    return doc;
}

Json to_json(const LinearSystem& sys) {
    Json doc;
    Json rows = Json::array();
    for (std::size_t r = 0; r < sys.a.rows(); ++r) {
        rows.push_back(rat_array_json(sys.a.row(r)));
    }
    doc["A"] = std::move(rows);
    doc["b"] = rat_array_json(sys.b);
    if (!sys.row_labels.empty()) {
        Json labels = Json::array();
        for (const auto& l : sys.row_labels) {
            labels.push_back(l);
        }
        doc["rows"] = std::move(labels);
    }
    return doc;
}

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ": invalid JSON: " + e.what());
    }
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path.string());
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

} // namespace wregret::io
