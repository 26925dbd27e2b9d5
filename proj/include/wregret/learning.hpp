#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wregret/core.hpp"
#include "wregret/likelihood.hpp"

namespace wregret {

// Likelihood of each observation symbol under each measure. Row i belongs to
// the i-th entry of the credal set (or measure list) the model is used with.
class ObservationModel {
  public:
    ObservationModel(std::vector<std::string> alphabet, std::vector<std::vector<Rat>> likelihoods);

    // One observation per toss/roll: the alphabet is the state labels and the
    // likelihood of symbol s under Pr is Pr(s).
    static ObservationModel iid(std::span<const ProbMeasure> measures);
    static ObservationModel iid(const WeightedCredalSet& set);

    [[nodiscard]] const std::vector<std::string>& alphabet() const { return alphabet_; }
    [[nodiscard]] std::size_t rows() const { return likelihoods_.size(); }
    [[nodiscard]] std::size_t symbol_index(std::string_view symbol) const;
    [[nodiscard]] const Rat& likelihood(std::size_t row, std::size_t symbol) const {
        return likelihoods_.at(row).at(symbol);
    }
    [[nodiscard]] const std::vector<std::vector<Rat>>& table() const { return likelihoods_; }
    // Model restricted to the given rows, in that order.
    [[nodiscard]] ObservationModel select(std::span<const std::size_t> rows) const;

  private:
    std::vector<std::string> alphabet_;
    std::vector<std::vector<Rat>> likelihoods_;
};

// Splits an observation string: comma-separated when it contains a comma,
// otherwise one symbol per character. The empty string has no observations.
std::vector<std::string> split_observations(std::string_view text);

// Multiplies each weight by the entry's likelihood of the observation and
// rescales so the largest weight is exactly 1. Zero-weight entries are kept.
WeightedCredalSet update_weights(const WeightedCredalSet& set, const ObservationModel& model,
                                 std::string_view observation);

WeightedCredalSet update_weights_sequence(const WeightedCredalSet& set,
                                          const ObservationModel& model,
                                          std::span<const std::string> observations);

// Removes entries whose weight is 0.
WeightedCredalSet drop_zero_weights(const WeightedCredalSet& set);

struct FilteredMeasures {
    std::vector<ProbMeasure> measures;
    ObservationModel model;
};

// Keeps the measures that give the observation likelihood at least threshold,
// threshold in (0,1). Throws when nothing survives.
FilteredMeasures epstein_schneider_update(std::span<const ProbMeasure> measures,
                                          const ObservationModel& model,
                                          std::string_view observation, const Rat& threshold);

// Ambiguity interval of e before any observation and after each prefix.
std::vector<AmbiguityInterval> ambiguity_trajectory(const WeightedCredalSet& set,
                                                    const ObservationModel& model,
                                                    std::span<const std::string> observations,
                                                    const Event& e);

// Coin measures Pr_b with Pr_b(first state) = b for b = lo, lo+step, ..., hi,
// all with weight 1. The space must have exactly two states.
WeightedCredalSet coin_grid(const SpacePtr& space, const Rat& lo, const Rat& hi, const Rat& step);

} // namespace wregret
