#include "wregret/learning.hpp"

#include <algorithm>

#include "wregret/error.hpp"

namespace wregret {

ObservationModel::ObservationModel(std::vector<std::string> alphabet,
                                   std::vector<std::vector<Rat>> likelihoods)
    : alphabet_(std::move(alphabet)), likelihoods_(std::move(likelihoods)) {
    if (alphabet_.empty()) {
        throw DomainError("observation alphabet is empty");
    }
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (alphabet_[i].empty() || alphabet_[i].find(',') != std::string::npos) {
            throw DomainError("observation symbol \"" + alphabet_[i] + "\" is empty or has a comma");
        }
        if (std::find(alphabet_.begin(), alphabet_.begin() + static_cast<long>(i), alphabet_[i]) !=
            alphabet_.begin() + static_cast<long>(i)) {
            throw DomainError("duplicate observation symbol \"" + alphabet_[i] + "\"");
        }
    }
    for (std::size_t r = 0; r < likelihoods_.size(); ++r) {
        const auto& row = likelihoods_[r];
        if (row.size() != alphabet_.size()) {
            throw DomainError("likelihood row " + std::to_string(r) + " has " +
                              std::to_string(row.size()) + " values for " +
                              std::to_string(alphabet_.size()) + " symbols");
        }
        Rat total;
        for (const auto& v : row) {
            if (v.sign() < 0 || v > Rat(1)) {
                throw DomainError("likelihood " + v.to_string() + " outside [0,1] in row " +
                                  std::to_string(r));
            }
            total += v;
        }
        if (total != Rat(1)) {
            throw DomainError("likelihood row " + std::to_string(r) + " sums to " +
                              total.to_string() + ", not 1");
        }
    }
}

ObservationModel ObservationModel::iid(std::span<const ProbMeasure> measures) {
    if (measures.empty()) {
        throw DomainError("i.i.d. model needs at least one measure");
    }
    std::vector<std::vector<Rat>> rows;
    rows.reserve(measures.size());
    for (const auto& pr : measures) {
        rows.emplace_back(pr.masses().begin(), pr.masses().end());
    }
    return {measures.front().space()->labels(), std::move(rows)};
}

ObservationModel ObservationModel::iid(const WeightedCredalSet& set) {
    const auto ms = set.measures();
    return iid(ms);
}

std::size_t ObservationModel::symbol_index(std::string_view symbol) const {
    const auto it = std::find(alphabet_.begin(), alphabet_.end(), symbol);
    if (it == alphabet_.end()) {
        throw ParseError("observation \"" + std::string(symbol) + "\" is not in the alphabet");
    }
    return static_cast<std::size_t>(it - alphabet_.begin());
}

ObservationModel ObservationModel::select(std::span<const std::size_t> rows) const {
    std::vector<std::vector<Rat>> out;
    out.reserve(rows.size());
    for (auto r : rows) {
        out.push_back(likelihoods_.at(r));
    }
    return {alphabet_, std::move(out)};
}

std::vector<std::string> split_observations(std::string_view text) {
    std::vector<std::string> out;
    if (text.empty()) {
        return out;
    }
    if (text.find(',') == std::string_view::npos) {
        for (char c : text) {
            out.emplace_back(1, c);
        }
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.emplace_back(text.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

namespace {

void check_alignment(const ObservationModel& model, std::size_t n) {
    if (model.rows() != n) {
        throw DomainError("observation model has " + std::to_string(model.rows()) +
                          " rows for " + std::to_string(n) + " measures");
    }
}

} // namespace

WeightedCredalSet update_weights(const WeightedCredalSet& set, const ObservationModel& model,
                                 std::string_view observation) {
    check_alignment(model, set.size());
    const std::size_t sym = model.symbol_index(observation);

    std::vector<WeightedMeasure> entries(set.entries().begin(), set.entries().end());
    Rat top;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries[i].weight *= model.likelihood(i, sym);
        top = max(top, entries[i].weight);
    }
    if (top.is_zero()) {
        throw DomainError("impossible observation \"" + std::string(observation) +
                          "\": every weighted measure gives it likelihood 0");
    }
    for (auto& e : entries) {
        e.weight /= top;
    }
    return WeightedCredalSet(std::move(entries));
}

WeightedCredalSet update_weights_sequence(const WeightedCredalSet& set,
                                          const ObservationModel& model,
                                          std::span<const std::string> observations) {
    WeightedCredalSet current = set;
    for (const auto& ob : observations) {
        current = update_weights(current, model, ob);
    }
    return current;
}

WeightedCredalSet drop_zero_weights(const WeightedCredalSet& set) {
    std::vector<WeightedMeasure> kept;
    for (const auto& e : set.entries()) {
        if (!e.weight.is_zero()) {
            kept.push_back(e);
        }
    }
    return WeightedCredalSet(std::move(kept), set.is_normalized() ? Normalization::required
                                                                  : Normalization::unnormalized);
}

FilteredMeasures epstein_schneider_update(std::span<const ProbMeasure> measures,
                                          const ObservationModel& model,
                                          std::string_view observation, const Rat& threshold) {
    if (threshold.sign() <= 0 || threshold >= Rat(1)) {
        throw DomainError("threshold " + threshold.to_string() + " must lie strictly between 0 and 1");
    }
    check_alignment(model, measures.size());
    const std::size_t sym = model.symbol_index(observation);
    std::vector<std::size_t> rows;
    std::vector<ProbMeasure> kept;
    for (std::size_t i = 0; i < measures.size(); ++i) {
        if (model.likelihood(i, sym) >= threshold) {
            rows.push_back(i);
            kept.push_back(measures[i]);
        }
    }
    if (kept.empty()) {
        throw DomainError("no measure gives observation \"" + std::string(observation) +
                          "\" likelihood at least " + threshold.to_string());
    }
    return {std::move(kept), model.select(rows)};
}

std::vector<AmbiguityInterval> ambiguity_trajectory(const WeightedCredalSet& set,
                                                    const ObservationModel& model,
                                                    std::span<const std::string> observations,
                                                    const Event& e) {
    std::vector<AmbiguityInterval> out;
    out.reserve(observations.size() + 1);
    WeightedCredalSet current = set;
    out.push_back(ambiguity_interval(e, current));
    for (const auto& ob : observations) {
        current = update_weights(current, model, ob);
        out.push_back(ambiguity_interval(e, current));
    }
    return out;
}

WeightedCredalSet coin_grid(const SpacePtr& space, const Rat& lo, const Rat& hi, const Rat& step) {
    if (space->size() != 2) {
        throw DomainError("coin grid needs a two-state space");
    }
    if (step.sign() <= 0 || lo.sign() < 0 || hi > Rat(1) || hi < lo) {
        throw DomainError("coin grid needs 0 <= lo <= hi <= 1 and step > 0");
    }
    std::vector<WeightedMeasure> entries;
    for (Rat b = lo; b <= hi; b += step) {
        entries.push_back({ProbMeasure(space, {b, Rat(1) - b}), Rat(1)});
    }
    return WeightedCredalSet(std::move(entries));
}

} // namespace wregret
