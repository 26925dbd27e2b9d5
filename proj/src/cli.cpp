#include "wregret/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "wregret/axioms.hpp"
#include "wregret/error.hpp"
#include "wregret/io.hpp"
#include "wregret/learning.hpp"
#include "wregret/likelihood.hpp"
#include "wregret/regret.hpp"

namespace wregret::cli {

namespace {

using io::Json;

// Document problems (bad sums, duplicate measures, unknown labels) are
// input errors, so they map to the usage exit code.
template <class F>
auto load(const std::string& path, F&& parse) {
    try {
        return parse(io::read_json_file(path));
    } catch (const ParseError&) {
        throw;
    } catch (const DomainError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

WeightedCredalSet load_set(const std::string& path) {
    return load(path, [](const Json& j) { return io::credal_set_from_json(j); });
}

SetFunction load_function(const std::string& path) {
    return load(path, [](const Json& j) { return io::set_function_from_json(j); });
}

std::vector<Act> load_acts(const std::string& path, const SpacePtr& space) {
    return load(path, [&](const Json& j) { return io::acts_from_json(j, space); });
}

ObservationModel load_model(const std::string& source, const WeightedCredalSet& set) {
    if (source == "iid") {
        return ObservationModel::iid(set);
    }
    auto model = load(source, [](const Json& j) { return io::model_from_json(j); });
    if (model.rows() != set.size()) {
        throw ParseError(source + ": model has " + std::to_string(model.rows()) + " rows but the set has " +
                         std::to_string(set.size()) + " entries");
    }
    return model;
}

std::vector<Event> parse_events(const SpacePtr& space, const std::string& text) {
    std::vector<Event> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(Event::parse(space, text.substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string decimals(std::initializer_list<const Rat*> values) {
    std::string out = "(";
    bool first = true;
    for (const Rat* v : values) {
        if (!first) {
            out += ' ';
        }
        out += v->to_decimal(6);
        first = false;
    }
    return out + ")";
}

std::string exact_and_decimal(const Rat& r) { return r.to_string() + " (" + r.to_decimal(6) + ")"; }

std::string join_events(const std::vector<Event>& events) {
    std::string out;
    for (std::size_t i = 0; i < events.size(); ++i) {
        out += (i == 0 ? "" : ", ") + events[i].to_string();
    }
    return out;
}

Json interval_json(const Event& e, const AmbiguityInterval& iv) {
    Json j;
    j["event"] = e.key();
    j["lower"] = io::rat_to_json(iv.lower);
    j["upper"] = io::rat_to_json(iv.upper);
    j["width"] = io::rat_to_json(iv.width());
    return j;
}

struct Options {
    std::string set_path;
    std::string acts_path;
    std::string menu_path;
    std::string function_path;
    std::string measure_path;
    std::string model = "iid";
    std::string observations;
    std::string events;
    std::string bounds;
    std::string variant = "reg3";
    std::string ustar = "1";
    std::string first;
    std::string second;
    bool json = false;
    bool csv = false;
    bool drop_zero = false;
};

// ---- likelihood -----------------------------------------------------------

void cmd_likelihood(const Options& o, std::ostream& out) {
    const auto set = load_set(o.set_path);
    const auto events = parse_events(set.space(), o.events);
    if (o.json) {
        Json arr = Json::array();
        for (const auto& e : events) {
            arr.push_back(interval_json(e, ambiguity_interval(e, set)));
        }
        Json doc;
        doc["intervals"] = std::move(arr);
        out << io::dump(doc);
        return;
    }
    out << "event lower upper width (decimal)\n";
    for (const auto& e : events) {
        const auto iv = ambiguity_interval(e, set);
        const Rat w = iv.width();
        out << e.to_string() << ' ' << iv.lower << ' ' << iv.upper << ' ' << w << ' '
            << decimals({&iv.lower, &iv.upper, &w}) << '\n';
    }
}

// ---- regret / prefer --------------------------------------------------------

struct RegretContext {
    WeightedCredalSet set;
    std::vector<Act> acts;
    std::optional<Menu> menu;
    Rat u_star;

    [[nodiscard]] Rat per_entry(const Act& a, const WeightedMeasure& e) const {
        if (menu) {
            return expected_regret(a, e.measure, *menu);
        }
        return u_star - expected_utility(a, e.measure);
    }
    [[nodiscard]] Rat weighted(const Act& a) const {
        return menu ? weighted_regret(a, set, *menu) : absolute_weighted_regret(a, set, u_star);
    }
    [[nodiscard]] std::string heading() const {
        if (!menu) {
            return "absolute regret, u* = " + u_star.to_string();
        }
        std::string names;
        for (const auto& a : menu->acts()) {
            names += (names.empty() ? "" : ", ") + a.name();
        }
        return "regret relative to menu {" + names + "}";
    }
};

RegretContext regret_context(const Options& o) {
    auto set = load_set(o.set_path);
    auto acts = load_acts(o.acts_path, set.space());
    if (acts.empty()) {
        throw ParseError(o.acts_path + ": no acts");
    }
    std::optional<Menu> menu;
    if (!o.menu_path.empty()) {
        menu = Menu(load_acts(o.menu_path, set.space()));
    }
    Rat u_star;
    try {
        u_star = Rat::parse(o.ustar);
    } catch (const ParseError& e) {
        throw ParseError(std::string("--ustar: ") + e.what());
    }
    return {std::move(set), std::move(acts), std::move(menu), std::move(u_star)};
}

void cmd_regret(const Options& o, std::ostream& out) {
    const auto ctx = regret_context(o);
    const auto entries = ctx.set.entries();
    if (o.json) {
        Json arr = Json::array();
        for (const auto& a : ctx.acts) {
            Json row;
            row["act"] = a.name();
            Json per = Json::array();
            for (const auto& e : entries) {
                per.push_back(io::rat_to_json(ctx.per_entry(a, e)));
            }
            row["per_entry"] = std::move(per);
            row["weighted"] = io::rat_to_json(ctx.weighted(a));
            arr.push_back(std::move(row));
        }
        Json doc;
        doc["mode"] = ctx.menu ? "menu" : "absolute";
        doc["regrets"] = std::move(arr);
        out << io::dump(doc);
        return;
    }
    out << ctx.heading() << '\n';
    out << "act";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out << " entry" << (i + 1);
    }
    out << " weighted (decimal)\n";
    for (const auto& a : ctx.acts) {
        std::vector<Rat> values;
        for (const auto& e : entries) {
            values.push_back(ctx.per_entry(a, e));
        }
        values.push_back(ctx.weighted(a));
        out << a.name();
        for (const auto& v : values) {
            out << ' ' << v;
        }
        out << " (";
        for (std::size_t i = 0; i < values.size(); ++i) {
            out << (i == 0 ? "" : " ") << values[i].to_decimal(6);
        }
        out << ")\n";
    }
}

const Act& find_act(const std::vector<Act>& acts, const std::string& name, std::size_t fallback) {
    if (name.empty()) {
        if (fallback >= acts.size()) {
            throw ParseError("prefer needs at least two acts (or --first/--second)");
        }
        return acts[fallback];
    }
    for (const auto& a : acts) {
        if (a.name() == name) {
            return a;
        }
    }
    throw ParseError("no act named \"" + name + "\"");
}

void cmd_prefer(const Options& o, std::ostream& out) {
    const auto ctx = regret_context(o);
    const Act& a = find_act(ctx.acts, o.first, 0);
    const Act& b = find_act(ctx.acts, o.second, 1);
    const Rat ra = ctx.weighted(a);
    const Rat rb = ctx.weighted(b);
    const Preference p = ctx.menu ? prefer(a, b, ctx.set, *ctx.menu)
                                  : prefer_absolute(a, b, ctx.set, ctx.u_star);
    if (o.json) {
        Json doc;
        doc["first"] = a.name();
        doc["second"] = b.name();
        doc["first_regret"] = io::rat_to_json(ra);
        doc["second_regret"] = io::rat_to_json(rb);
        doc["verdict"] = to_string(p);
        out << io::dump(doc);
        return;
    }
    out << ctx.heading() << '\n';
    out << "wr(" << a.name() << ") = " << exact_and_decimal(ra) << '\n';
    out << "wr(" << b.name() << ") = " << exact_and_decimal(rb) << '\n';
    switch (p) {
    case Preference::better:
        out << a.name() << " better than " << b.name() << '\n';
        break;
    case Preference::worse:
        out << a.name() << " worse than " << b.name() << '\n';
        break;
    case Preference::equivalent:
        out << a.name() << " equivalent to " << b.name() << '\n';
        break;
    }
}

// ---- learn / trajectory ------------------------------------------------------

void cmd_learn(const Options& o, std::ostream& out) {
    const auto set = load_set(o.set_path);
    const auto model = load_model(o.model, set);
    const auto obs = split_observations(o.observations);
    auto updated = update_weights_sequence(set, model, obs);
    if (o.drop_zero) {
        updated = drop_zero_weights(updated);
    }
    out << io::dump(io::to_json(updated));
}

void cmd_trajectory(const Options& o, std::ostream& out) {
    const auto set = load_set(o.set_path);
    const auto model = load_model(o.model, set);
    const auto obs = split_observations(o.observations);
    const Event e = Event::parse(set.space(), o.events);
    const auto traj = ambiguity_trajectory(set, model, obs, e);
    if (o.json) {
        Json arr = Json::array();
        for (std::size_t i = 0; i < traj.size(); ++i) {
            Json j = interval_json(e, traj[i]);
            j["step"] = i;
            j["observation"] = i == 0 ? "" : obs[i - 1];
            arr.push_back(std::move(j));
        }
        Json doc;
        doc["trajectory"] = std::move(arr);
        out << io::dump(doc);
        return;
    }
    if (o.csv) {
        out << "step,observation,lower,upper,width\n";
        for (std::size_t i = 0; i < traj.size(); ++i) {
            out << i << ',' << (i == 0 ? "" : obs[i - 1]) << ',' << traj[i].lower << ','
                << traj[i].upper << ',' << traj[i].width() << '\n';
        }
        return;
    }
    out << "event " << e.to_string() << '\n';
    out << "step observation lower upper width (decimal)\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const Rat w = traj[i].width();
        out << i << ' ' << (i == 0 ? "-" : obs[i - 1]) << ' ' << traj[i].lower << ' ' << traj[i].upper
            << ' ' << w << ' ' << decimals({&traj[i].lower, &traj[i].upper, &w}) << '\n';
    }
}

// ---- axioms -------------------------------------------------------------------

CoverBounds parse_bounds(const std::string& text) {
    CoverBounds b;
    if (text.empty()) {
        return b;
    }
    std::vector<std::size_t> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw ParseError("--bounds expects n,m[,k] with nonnegative integers, got \"" + text + "\"");
        }
        parts.push_back(std::stoul(item));
    }
    if (parts.size() < 2 || parts.size() > 3) {
        throw ParseError("--bounds expects n,m[,k], got \"" + text + "\"");
    }
    b.max_n = parts[0];
    b.max_m = parts[1];
    if (parts.size() == 3) {
        b.max_k = parts[2];
    }
    return b;
}

Json violation_json(const CoverViolation& v) {
    Json j;
    j["axiom"] = to_string(v.axiom);
    j["target"] = v.target.key();
    Json events = Json::array();
    for (const auto& e : v.events) {
        events.push_back(e.key());
    }
    j["events"] = std::move(events);
    j["n"] = v.n;
    j["k"] = v.k;
    j["bound"] = io::rat_to_json(v.bound_side);
    j["sum"] = io::rat_to_json(v.sum_side);
    j["slack"] = io::rat_to_json(v.slack);
    return j;
}

void print_violation(const CoverViolation& v, const char* fn, std::ostream& out) {
    std::vector<Event> comps;
    for (const auto& e : v.events) {
        comps.push_back(e.complement());
    }
    out << "  target E: " << v.target.to_string() << '\n';
    out << "  events E_i: " << join_events(v.events) << '\n';
    const std::string bound_expr = v.axiom == CoverAxiom::reg3
                                       ? std::to_string(v.n) + "*" + fn + "(E)"
                                       : std::to_string(v.k) + " + " + std::to_string(v.n) + "*" + fn + "(E)";
    switch (v.axiom) {
    case CoverAxiom::reg3:
        out << "  complements " << join_events(comps) << " form a " << v.n << "-cover of "
            << v.target.complement().to_string() << '\n';
        out << "  required: " << bound_expr << " = " << v.bound_side << " <= sum " << fn
            << "(E_i) = " << v.sum_side << '\n';
        break;
    case CoverAxiom::reg3prime:
        out << "  complements " << join_events(comps) << " form a (" << v.n << "," << v.k
            << ")-cover of (" << v.target.complement().to_string() << ", S)\n";
        out << "  required: " << bound_expr << " = " << v.bound_side << " <= sum " << fn
            << "(E_i) = " << v.sum_side << '\n';
        break;
    case CoverAxiom::lp3:
        out << "  events form an exact (" << v.n << "," << v.k << ")-cover of (" << v.target.to_string()
            << ", S)\n";
        out << "  required: " << bound_expr << " = " << v.bound_side << " >= sum " << fn
            << "(E_i) = " << v.sum_side << '\n';
        break;
    }
    out << "  slack: " << exact_and_decimal(v.slack) << '\n';
}

void cmd_axioms(const Options& o, std::ostream& out) {
    const auto f = load_function(o.function_path);
    const auto bounds = parse_bounds(o.bounds);
    const auto& space = f.space();
    const Rat& at_full = f.at(space->full_mask());
    const Rat& at_empty = f.at(0);

    if (o.variant == "lp") {
        const auto rep = check_LP_axioms(f, bounds);
        if (o.json) {
            Json doc;
            doc["variant"] = "lp";
            doc["LP1"] = rep.lp1;
            doc["LP2"] = rep.lp2;
            if (rep.lp3prime) {
                doc["LP3'"] = {{"first", rep.lp3prime->first.key()}, {"second", rep.lp3prime->second.key()}};
            } else {
                doc["LP3'"] = true;
            }
            doc["LP3"] = rep.lp3 ? violation_json(*rep.lp3) : Json(true);
            out << io::dump(doc);
            return;
        }
        out << "LP1 " << (rep.lp1 ? "ok" : "VIOLATION") << ": g(S) = " << at_full << '\n';
        out << "LP2 " << (rep.lp2 ? "ok" : "VIOLATION") << ": g({}) = " << at_empty << '\n';
        if (rep.lp3prime) {
            const auto& a = rep.lp3prime->first;
            const auto& b = rep.lp3prime->second;
            out << "LP3' VIOLATION: g(" << (a | b).to_string() << ") = " << f(a | b) << " < g("
                << a.to_string() << ") + g(" << b.to_string() << ") = " << f(a) + f(b) << '\n';
        } else {
            out << "LP3' ok\n";
        }
        out << "LP3 " << (rep.lp3 ? "VIOLATION" : "ok") << " within bounds n <= " << bounds.max_n
            << ", k <= " << bounds.max_k << ", m <= " << bounds.max_m << '\n';
        if (rep.lp3) {
            print_violation(*rep.lp3, "g", out);
        }
        return;
    }

    const auto reg12 = check_reg12_report(f);
    std::optional<CoverViolation> v;
    std::string bounds_text;
    std::string name;
    if (o.variant == "reg3") {
        v = check_REG3_bounded(f, bounds.max_n, bounds.max_m);
        bounds_text = "n <= " + std::to_string(bounds.max_n) + ", m <= " + std::to_string(bounds.max_m);
        name = "REG3";
    } else if (o.variant == "reg3prime") {
        v = check_REG3prime(f, bounds.max_n, bounds.max_k, bounds.max_m);
        bounds_text = "n <= " + std::to_string(bounds.max_n) + ", k <= " + std::to_string(bounds.max_k) +
                      ", m <= " + std::to_string(bounds.max_m);
        name = "REG3'";
    } else {
        throw ParseError("--variant must be reg3, reg3prime or lp");
    }
    if (o.json) {
        Json doc;
        doc["variant"] = o.variant;
        doc["REG1"] = reg12.reg1;
        doc["REG2"] = reg12.reg2;
        doc[name] = v ? violation_json(*v) : Json(true);
        out << io::dump(doc);
        return;
    }
    out << "REG1 " << (reg12.reg1 ? "ok" : "VIOLATION") << ": f(S) = " << at_full << '\n';
    out << "REG2 " << (reg12.reg2 ? "ok" : "VIOLATION") << ": f({}) = " << at_empty << '\n';
    out << name << ' ' << (v ? "VIOLATION" : "ok") << " within bounds " << bounds_text << '\n';
    if (v) {
        print_violation(*v, "f", out);
    }
}

// ---- represent / weight --------------------------------------------------------

void cmd_represent(const Options& o, std::ostream& out) {
    const auto f = load_function(o.function_path);
    const auto rep = representability(f);
    if (o.json) {
        Json doc;
        doc["representable"] = rep.representable;
        if (rep.representable) {
            doc["witness"] = io::to_json(*rep.witness_set);
        } else {
            doc["reason"] = rep.reason;
            if (rep.failing_system) {
                doc["failing_event"] = rep.failing_event ? Json(rep.failing_event->key()) : Json(nullptr);
                doc["system"] = io::to_json(*rep.failing_system);
                Json beta = Json::array();
                for (const auto& x : rep.certificate) {
                    beta.push_back(io::rat_to_json(x));
                }
                doc["certificate"] = std::move(beta);
            }
        }
        out << io::dump(doc);
        return;
    }
    if (rep.representable) {
        out << "representable\n";
        out << "weight-1 measure: " << rep.weight_one_measure->to_string() << '\n';
        out << "tightness witnesses:\n";
        for (const auto& t : rep.tightness) {
            out << "  " << t.event.to_string() << ": ";
            if (t.measure) {
                out << t.measure->to_string() << " weight " << canonical_weight(f, *t.measure) << '\n';
            } else {
                out << "trivially tight (f = 0)\n";
            }
        }
        out << "witness credal set:\n" << io::dump(io::to_json(*rep.witness_set));
        return;
    }
    out << "not representable: " << rep.reason << '\n';
    if (!rep.failing_system) {
        return;
    }
    const auto& sys = *rep.failing_system;
    out << "infeasible system (A x >= b), certificate beta:\n";
    for (std::size_t r = 0; r < sys.a.rows(); ++r) {
        if (rep.certificate[r].is_zero()) {
            continue;
        }
        out << "  beta = " << rep.certificate[r] << " on " << sys.row_labels[r] << '\n';
    }
    Rat dot;
    for (std::size_t r = 0; r < sys.a.rows(); ++r) {
        dot += rep.certificate[r] * sys.b[r];
    }
    out << "check: beta >= 0, beta A = 0, beta b = " << dot << " > 0\n";
}

void cmd_weight(const Options& o, std::ostream& out) {
    const auto f = load_function(o.function_path);
    const auto pr = load(o.measure_path, [&](const Json& j) { return io::measure_from_json(j, f.space()); });
    const Rat alpha = canonical_weight(f, pr);
    if (o.json) {
        Json doc;
        doc["measure"] = io::to_json(pr);
        doc["weight"] = io::rat_to_json(alpha);
        out << io::dump(doc);
        return;
    }
    out << "measure " << pr.to_string() << '\n';
    out << "canonical weight " << exact_and_decimal(alpha) << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted-regret likelihood toolkit over finite state spaces", "wregret"};
    app.require_subcommand(1);
    Options o;

    auto* likelihood = app.add_subcommand("likelihood", "Ambiguity intervals of events");
    likelihood->add_option("-p,--set", o.set_path, "Weighted credal set document")->required();
    likelihood->add_option("-e,--events", o.events, "Events, comma separated (\"h\", \"ab\", \"{}\")")->required();
    likelihood->add_flag("--json", o.json, "Emit a JSON document");

    auto* regret = app.add_subcommand("regret", "Weighted regret table for acts");
    auto* prefer_cmd = app.add_subcommand("prefer", "Compare two acts by weighted regret");
    for (auto* sc : {regret, prefer_cmd}) {
        sc->add_option("-p,--set", o.set_path, "Weighted credal set document")->required();
        sc->add_option("-a,--acts", o.acts_path, "Acts document")->required();
        sc->add_option("-m,--menu", o.menu_path, "Menu document (absolute regret when omitted)");
        sc->add_option("--ustar", o.ustar, "Best utility for absolute regret");
        sc->add_flag("--json", o.json, "Emit a JSON document");
    }
    prefer_cmd->add_option("--first", o.first, "Name of the first act (default: first in file)");
    prefer_cmd->add_option("--second", o.second, "Name of the second act (default: second in file)");

    auto* learn = app.add_subcommand("learn", "Likelihood-update weights and print the new set");
    auto* trajectory = app.add_subcommand("trajectory", "Ambiguity interval after each observation");
    for (auto* sc : {learn, trajectory}) {
        sc->add_option("-p,--set", o.set_path, "Weighted credal set document")->required();
        sc->add_option("-o,--model", o.model, "Observation model document, or \"iid\"");
        sc->add_option("-s,--observations", o.observations, "Observations (\"ht\" or \"h,t\")");
    }
    learn->add_flag("--drop-zero", o.drop_zero, "Drop entries whose weight becomes 0");
    trajectory->add_option("-e,--event", o.events, "Event to track")->required();
    trajectory->add_flag("--csv", o.csv, "Emit CSV");
    trajectory->add_flag("--json", o.json, "Emit a JSON document");

    auto* axioms = app.add_subcommand("axioms", "Check axioms of a set function");
    axioms->add_option("-f,--function", o.function_path, "Set function document")->required();
    axioms->add_option("--bounds", o.bounds, "Enumeration bounds n,m[,k]");
    axioms->add_option("--variant", o.variant, "reg3, reg3prime or lp")
        ->check(CLI::IsMember({"reg3", "reg3prime", "lp"}));
    axioms->add_flag("--json", o.json, "Emit a JSON document");

    auto* represent = app.add_subcommand("represent", "Decide representability and build a witness set");
    represent->add_option("-f,--function", o.function_path, "Set function document")->required();
    represent->add_flag("--json", o.json, "Emit a JSON document");

    auto* weight = app.add_subcommand("weight", "Canonical weight of a measure");
    weight->add_option("-f,--function", o.function_path, "Set function document")->required();
    weight->add_option("-q,--measure", o.measure_path, "Measure document")->required();
    weight->add_flag("--json", o.json, "Emit a JSON document");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        std::ostringstream buffer;
        if (likelihood->parsed()) {
            cmd_likelihood(o, buffer);
        } else if (regret->parsed()) {
            cmd_regret(o, buffer);
        } else if (prefer_cmd->parsed()) {
            cmd_prefer(o, buffer);
        } else if (learn->parsed()) {
            cmd_learn(o, buffer);
        } else if (trajectory->parsed()) {
            cmd_trajectory(o, buffer);
        } else if (axioms->parsed()) {
            cmd_axioms(o, buffer);
        } else if (represent->parsed()) {
            cmd_represent(o, buffer);
        } else if (weight->parsed()) {
            cmd_weight(o, buffer);
        }
        out << buffer.str();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}

} // namespace wregret::cli
