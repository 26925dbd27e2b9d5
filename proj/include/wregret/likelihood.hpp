#pragma once

#include <span>

#include "wregret/core.hpp"

namespace wregret {

struct AmbiguityInterval {
    Rat lower;
    Rat upper;

    [[nodiscard]] Rat width() const { return upper - lower; }
    [[nodiscard]] bool contains(const Rat& x) const { return lower <= x && x <= upper; }
    friend bool operator==(const AmbiguityInterval&, const AmbiguityInterval&) = default;
};

// max over entries of weight * Pr(complement of E). Smaller means E is
// considered more likely; 0 at S and 1 at the empty event.
Rat regret_likelihood(const Event& e, const WeightedCredalSet& set);

// 1 - regret_likelihood(complement of E) = min over entries of 1 - weight * Pr(E).
Rat regret_likelihood_lower(const Event& e, const WeightedCredalSet& set);

AmbiguityInterval ambiguity_interval(const Event& e, const WeightedCredalSet& set);

// min over entries of weight * Pr(complement of E). Only useful as the left
// end of the chain naive_lower <= lower <= upper.
Rat naive_lower(const Event& e, const WeightedCredalSet& set);

Rat lower_probability(const Event& e, std::span<const ProbMeasure> measures);
Rat upper_probability(const Event& e, std::span<const ProbMeasure> measures);

} // namespace wregret
