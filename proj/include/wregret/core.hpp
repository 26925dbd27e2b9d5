#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wregret/rational.hpp"

namespace wregret {

// Default cap on the number of states. Events are bitmasks and the axiom
// checks walk all 2^N events, so work and memory double with every state.
// Override with the WREGRET_MAX_STATES environment variable (hard limit 30).
inline constexpr std::size_t kDefaultMaxStates = 20;
inline constexpr std::size_t kHardMaxStates = 30;

std::size_t max_states();

class StateSpace {
  public:
    explicit StateSpace(std::vector<std::string> labels);

    static std::shared_ptr<const StateSpace> make(std::vector<std::string> labels) {
        return std::make_shared<const StateSpace>(std::move(labels));
    }

    [[nodiscard]] std::size_t size() const { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
    [[nodiscard]] std::size_t index_of(std::string_view label) const;
    [[nodiscard]] std::uint64_t full_mask() const { return (std::uint64_t{1} << size()) - 1; }
    [[nodiscard]] std::size_t event_count() const { return std::size_t{1} << size(); }
    // True when every label is a single character, so events can be written
    // as plain concatenations ("ab"); otherwise labels are joined with '+'.
    [[nodiscard]] bool compact_labels() const { return compact_; }

    friend bool operator==(const StateSpace& a, const StateSpace& b) {
        return a.labels_ == b.labels_;
    }

  private:
    std::vector<std::string> labels_;
    bool compact_ = true;
};

using SpacePtr = std::shared_ptr<const StateSpace>;

bool same_space(const SpacePtr& a, const SpacePtr& b);
void require_same_space(const SpacePtr& a, const SpacePtr& b, std::string_view what);

class Event {
  public:
    Event(SpacePtr space, std::uint64_t mask);

    static Event empty(SpacePtr space) { return {std::move(space), 0}; }
    static Event full(const SpacePtr& space) { return {space, space->full_mask()}; }
    static Event of(const SpacePtr& space, std::initializer_list<std::string_view> labels);
    // Parses the key form used in documents and on the command line:
    // "" or "{}" is the empty event, otherwise concatenated single-character
    // labels ("ab") or '+'-joined labels ("s1+s3").
    static Event parse(const SpacePtr& space, std::string_view key);

    [[nodiscard]] const SpacePtr& space() const { return space_; }
    [[nodiscard]] std::uint64_t mask() const { return mask_; }
    [[nodiscard]] bool contains(std::size_t state) const { return ((mask_ >> state) & 1U) != 0; }
    [[nodiscard]] bool is_empty() const { return mask_ == 0; }
    [[nodiscard]] bool is_full() const { return mask_ == space_->full_mask(); }
    [[nodiscard]] std::size_t count() const;
    [[nodiscard]] bool is_subset_of(const Event& other) const;
    [[nodiscard]] std::vector<std::size_t> members() const;

    [[nodiscard]] Event complement() const { return {space_, ~mask_ & space_->full_mask()}; }
    friend Event operator|(const Event& a, const Event& b);
    friend Event operator&(const Event& a, const Event& b);
    friend bool operator==(const Event& a, const Event& b) {
        return a.mask_ == b.mask_ && same_space(a.space_, b.space_);
    }

    // "{a,b}" style, "{}" for the empty event.
    [[nodiscard]] std::string to_string() const;
    // Document key form, inverse of parse().
    [[nodiscard]] std::string key() const;

  private:
    SpacePtr space_;
    std::uint64_t mask_;
};

class ProbMeasure {
  public:
    // Rejects negative masses and masses that do not sum to exactly 1.
    ProbMeasure(SpacePtr space, std::vector<Rat> mass);

    static ProbMeasure point_mass(const SpacePtr& space, std::size_t state);
    static ProbMeasure uniform(const SpacePtr& space);

    [[nodiscard]] const SpacePtr& space() const { return space_; }
    [[nodiscard]] std::span<const Rat> masses() const { return mass_; }
    [[nodiscard]] const Rat& mass(std::size_t state) const { return mass_.at(state); }
    [[nodiscard]] Rat prob(const Event& e) const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const ProbMeasure& a, const ProbMeasure& b) {
        return a.mass_ == b.mass_ && same_space(a.space_, b.space_);
    }

  private:
    SpacePtr space_;
    std::vector<Rat> mass_;
};

struct WeightedMeasure {
    ProbMeasure measure;
    Rat weight;
};

enum class Normalization { required, unnormalized };

// A finite set of distinct probability measures, each carrying a weight in
// [0,1]. Unless constructed as unnormalized, the largest weight must be 1.
class WeightedCredalSet {
  public:
    explicit WeightedCredalSet(std::vector<WeightedMeasure> entries,
                               Normalization mode = Normalization::required);

    // Every measure gets weight 1.
    static WeightedCredalSet unweighted(const std::vector<ProbMeasure>& measures);

    [[nodiscard]] const SpacePtr& space() const { return entries_.front().measure.space(); }
    [[nodiscard]] std::span<const WeightedMeasure> entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] std::vector<ProbMeasure> measures() const;
    [[nodiscard]] Rat max_weight() const;
    [[nodiscard]] bool is_normalized() const { return max_weight() == Rat(1); }
    // Divides every weight by the current maximum.
    [[nodiscard]] WeightedCredalSet normalize_weights() const;

  private:
    std::vector<WeightedMeasure> entries_;
};

// Finite multiset of events over one space; multiset union adds multiplicities.
class MultisetOfEvents {
  public:
    struct Item {
        Event event;
        std::size_t multiplicity;
    };

    MultisetOfEvents() = default;
    explicit MultisetOfEvents(SpacePtr space) : space_(std::move(space)) {}

    void add(const Event& event, std::size_t multiplicity = 1);
    [[nodiscard]] std::span<const Item> items() const { return items_; }
    [[nodiscard]] std::size_t total() const;
    [[nodiscard]] const SpacePtr& space() const { return space_; }
    [[nodiscard]] bool empty() const { return items_.empty(); }

    friend MultisetOfEvents operator+(const MultisetOfEvents& a, const MultisetOfEvents& b);

  private:
    SpacePtr space_;
    std::vector<Item> items_;
};

// Per-state number of events (with multiplicity) containing that state.
// An empty multiset without a bound space yields an empty vector.
std::vector<std::size_t> cover_counts(const MultisetOfEvents& m);

// M covers S at least k times and E at least n+k times.
bool is_nk_cover(const MultisetOfEvents& m, const Event& e, std::size_t n, std::size_t k);

// M covers every state of E at least n times (vacuous for E = {}).
bool is_n_cover(const MultisetOfEvents& m, const Event& e, std::size_t n);

} // namespace wregret
