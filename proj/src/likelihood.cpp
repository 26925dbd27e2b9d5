#include "wregret/likelihood.hpp"

#include "wregret/error.hpp"

namespace wregret {

namespace {

void check_space(const Event& e, const WeightedCredalSet& set) {
    require_same_space(e.space(), set.space(), "regret likelihood");
}

} // namespace

Rat regret_likelihood(const Event& e, const WeightedCredalSet& set) {
    check_space(e, set);
    const Event c = e.complement();
    Rat best;
    for (const auto& entry : set.entries()) {
        best = max(best, entry.weight * entry.measure.prob(c));
    }
    return best;
}

Rat regret_likelihood_lower(const Event& e, const WeightedCredalSet& set) {
    return Rat(1) - regret_likelihood(e.complement(), set);
}

AmbiguityInterval ambiguity_interval(const Event& e, const WeightedCredalSet& set) {
    return {regret_likelihood_lower(e, set), regret_likelihood(e, set)};
}

Rat naive_lower(const Event& e, const WeightedCredalSet& set) {
    check_space(e, set);
    const Event c = e.complement();
    const auto entries = set.entries();
    Rat worst = entries.front().weight * entries.front().measure.prob(c);
    for (const auto& entry : entries.subspan(1)) {
        worst = min(worst, entry.weight * entry.measure.prob(c));
    }
    return worst;
}

Rat lower_probability(const Event& e, std::span<const ProbMeasure> measures) {
    if (measures.empty()) {
        throw DomainError("lower probability over an empty set of measures");
    }
    Rat lo = measures.front().prob(e);
    for (const auto& pr : measures.subspan(1)) {
        lo = min(lo, pr.prob(e));
    }
    return lo;
}

Rat upper_probability(const Event& e, std::span<const ProbMeasure> measures) {
    if (measures.empty()) {
        throw DomainError("upper probability over an empty set of measures");
    }
    Rat hi = measures.front().prob(e);
    for (const auto& pr : measures.subspan(1)) {
        hi = max(hi, pr.prob(e));
    }
    return hi;
}

} // namespace wregret
