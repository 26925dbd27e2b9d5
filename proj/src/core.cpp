#include "wregret/core.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <unordered_set>

#include "wregret/error.hpp"

namespace wregret {

std::size_t max_states() {
    const char* env = std::getenv("WREGRET_MAX_STATES");
    if (env == nullptr || *env == '\0') {
        return kDefaultMaxStates;
    }
    std::size_t value = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        throw DomainError("WREGRET_MAX_STATES must be a positive integer, got \"" +
                          std::string(text) + "\"");
    }
    return std::min(value, kHardMaxStates);
}

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw DomainError("state space needs at least one state");
    }
    if (labels_.size() > max_states()) {
        throw DomainError("state space has " + std::to_string(labels_.size()) +
                          " states, above the cap of " + std::to_string(max_states()) +
                          " (set WREGRET_MAX_STATES to raise it)");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) {
            throw DomainError("state labels must be nonempty");
        }
        if (l.find_first_of("+,{} ") != std::string::npos) {
            throw DomainError("state label \"" + l + "\" contains a reserved character");
        }
        if (!seen.insert(l).second) {
            throw DomainError("duplicate state label \"" + l + "\"");
        }
        compact_ = compact_ && l.size() == 1;
    }
}

std::size_t StateSpace::index_of(std::string_view label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw ParseError("unknown state label \"" + std::string(label) + "\"");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    return a == b || (a && b && *a == *b);
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, std::string_view what) {
    if (!same_space(a, b)) {
        throw DomainError("state space mismatch in " + std::string(what));
    }
}

Event::Event(SpacePtr space, std::uint64_t mask) : space_(std::move(space)), mask_(mask) {
    if (!space_) {
        throw DomainError("event without a state space");
    }
    if ((mask_ & ~space_->full_mask()) != 0) {
        throw DomainError("event mask refers to states outside the space");
    }
}

Event Event::of(const SpacePtr& space, std::initializer_list<std::string_view> labels) {
    std::uint64_t mask = 0;
    for (auto l : labels) {
        mask |= std::uint64_t{1} << space->index_of(l);
    }
    return {space, mask};
}

Event Event::parse(const SpacePtr& space, std::string_view key) {
    if (key.empty() || key == "{}") {
        return empty(space);
    }
    std::uint64_t mask = 0;
    auto set_bit = [&](std::string_view label) {
        const std::uint64_t bit = std::uint64_t{1} << space->index_of(label);
        if ((mask & bit) != 0) {
            throw ParseError("state \"" + std::string(label) + "\" repeated in event \"" +
                             std::string(key) + "\"");
        }
        mask |= bit;
    };
    if (space->compact_labels()) {
        for (std::size_t i = 0; i < key.size(); ++i) {
            set_bit(key.substr(i, 1));
        }
    } else {
        std::size_t start = 0;
        while (true) {
            const auto plus = key.find('+', start);
            set_bit(key.substr(start, plus - start));
            if (plus == std::string_view::npos) {
                break;
            }
            start = plus + 1;
        }
    }
    return {space, mask};
}

std::size_t Event::count() const { return static_cast<std::size_t>(std::popcount(mask_)); }

bool Event::is_subset_of(const Event& other) const {
    require_same_space(space_, other.space_, "event inclusion");
    return (mask_ & ~other.mask_) == 0;
}

std::vector<std::size_t> Event::members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < space_->size(); ++i) {
        if (contains(i)) {
            out.push_back(i);
        }
    }
    return out;
}

Event operator|(const Event& a, const Event& b) {
    require_same_space(a.space_, b.space_, "event union");
    return {a.space_, a.mask_ | b.mask_};
}

Event operator&(const Event& a, const Event& b) {
    require_same_space(a.space_, b.space_, "event intersection");
    return {a.space_, a.mask_ & b.mask_};
}

std::string Event::to_string() const {
    std::string out = "{";
    bool first = true;
    for (auto i : members()) {
        if (!first) {
            out += ',';
        }
        out += space_->label(i);
        first = false;
    }
    return out + "}";
}

std::string Event::key() const {
    std::string out;
    for (auto i : members()) {
        if (!out.empty() && !space_->compact_labels()) {
            out += '+';
        }
        out += space_->label(i);
    }
    return out;
}

ProbMeasure::ProbMeasure(SpacePtr space, std::vector<Rat> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
    if (!space_) {
        throw DomainError("probability measure without a state space");
    }
    if (mass_.size() != space_->size()) {
        throw DomainError("probability measure has " + std::to_string(mass_.size()) +
                          " masses for " + std::to_string(space_->size()) + " states");
    }
    Rat total;
    for (const auto& m : mass_) {
        if (m.sign() < 0) {
            throw DomainError("probability mass " + m.to_string() + " is negative");
        }
        total += m;
    }
    if (total != Rat(1)) {
        throw DomainError("probability masses sum to " + total.to_string() + ", not 1");
    }
}

ProbMeasure ProbMeasure::point_mass(const SpacePtr& space, std::size_t state) {
    std::vector<Rat> mass(space->size());
    mass.at(state) = Rat(1);
    return {space, std::move(mass)};
}

ProbMeasure ProbMeasure::uniform(const SpacePtr& space) {
    const auto n = static_cast<long>(space->size());
    return {space, std::vector<Rat>(space->size(), Rat(1, n))};
}

Rat ProbMeasure::prob(const Event& e) const {
    require_same_space(space_, e.space(), "probability of an event");
    Rat total;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        if (e.contains(i)) {
            total += mass_[i];
        }
    }
    return total;
}

std::string ProbMeasure::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += mass_[i].to_string();
    }
    return out + ")";
}

WeightedCredalSet::WeightedCredalSet(std::vector<WeightedMeasure> entries, Normalization mode)
    : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw DomainError("weighted credal set must contain at least one measure");
    }
    const auto& space = entries_.front().measure.space();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        require_same_space(space, e.measure.space(), "weighted credal set");
        if (e.weight.sign() < 0 || e.weight > Rat(1)) {
            throw DomainError("weight " + e.weight.to_string() + " outside [0,1]");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (entries_[j].measure == e.measure) {
                throw DomainError("measure " + e.measure.to_string() +
                                  " appears more than once in the credal set");
            }
        }
    }
    if (mode == Normalization::required && max_weight() != Rat(1)) {
        throw DomainError("largest weight is " + max_weight().to_string() +
                          ", expected 1 (construct as unnormalized and call normalize_weights)");
    }
}

WeightedCredalSet WeightedCredalSet::unweighted(const std::vector<ProbMeasure>& measures) {
    std::vector<WeightedMeasure> entries;
    entries.reserve(measures.size());
    for (const auto& m : measures) {
        entries.push_back({m, Rat(1)});
    }
    return WeightedCredalSet(std::move(entries));
}

std::vector<ProbMeasure> WeightedCredalSet::measures() const {
    std::vector<ProbMeasure> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) {
        out.push_back(e.measure);
    }
    return out;
}

Rat WeightedCredalSet::max_weight() const {
    Rat best = entries_.front().weight;
    for (const auto& e : entries_) {
        best = max(best, e.weight);
    }
    return best;
}

WeightedCredalSet WeightedCredalSet::normalize_weights() const {
    const Rat top = max_weight();
    if (top.is_zero()) {
        throw DomainError("cannot normalize weights: every weight is 0");
    }
    std::vector<WeightedMeasure> out = entries_;
    for (auto& e : out) {
        e.weight /= top;
    }
    return WeightedCredalSet(std::move(out));
}

void MultisetOfEvents::add(const Event& event, std::size_t multiplicity) {
    if (!space_) {
        space_ = event.space();
    }
    require_same_space(space_, event.space(), "multiset of events");
    if (multiplicity == 0) {
        return;
    }
    for (auto& item : items_) {
        if (item.event == event) {
            item.multiplicity += multiplicity;
            return;
        }
    }
    items_.push_back({event, multiplicity});
}

std::size_t MultisetOfEvents::total() const {
    std::size_t n = 0;
    for (const auto& item : items_) {
        n += item.multiplicity;
    }
    return n;
}

MultisetOfEvents operator+(const MultisetOfEvents& a, const MultisetOfEvents& b) {
    MultisetOfEvents out = a;
    for (const auto& item : b.items()) {
        out.add(item.event, item.multiplicity);
    }
    return out;
}

std::vector<std::size_t> cover_counts(const MultisetOfEvents& m) {
    if (!m.space()) {
        return {};
    }
    std::vector<std::size_t> counts(m.space()->size(), 0);
    for (const auto& item : m.items()) {
        for (std::size_t s = 0; s < counts.size(); ++s) {
            if (item.event.contains(s)) {
                counts[s] += item.multiplicity;
            }
        }
    }
    return counts;
}

bool is_n_cover(const MultisetOfEvents& m, const Event& e, std::size_t n) {
    if (m.space()) {
        require_same_space(m.space(), e.space(), "cover check");
    }
    if (e.is_empty() || n == 0) {
        return true;
    }
    const auto counts = cover_counts(m);
    if (counts.empty()) {
        return false;
    }
    for (auto s : e.members()) {
        if (counts[s] < n) {
            return false;
        }
    }
    return true;
}

bool is_nk_cover(const MultisetOfEvents& m, const Event& e, std::size_t n, std::size_t k) {
    return is_n_cover(m, Event::full(e.space()), k) && is_n_cover(m, e, n + k);
}

} // namespace wregret
