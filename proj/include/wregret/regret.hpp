#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wregret/core.hpp"

namespace wregret {

// An act, stored as the utility u(a(s)) it yields in each state.
class Act {
  public:
    Act(SpacePtr space, std::vector<Rat> utility, std::string name = {});

    // 1_E: utility 1 on E, 0 elsewhere.
    static Act indicator(const Event& e);

    [[nodiscard]] const SpacePtr& space() const { return space_; }
    [[nodiscard]] std::span<const Rat> utilities() const { return utility_; }
    [[nodiscard]] const Rat& utility(std::size_t state) const { return utility_.at(state); }
    [[nodiscard]] const std::string& name() const { return name_; }
    // The event E when this act is 1_E.
    [[nodiscard]] std::optional<Event> as_indicator() const;

    friend bool operator==(const Act& a, const Act& b) {
        return a.utility_ == b.utility_ && same_space(a.space_, b.space_);
    }

  private:
    SpacePtr space_;
    std::vector<Rat> utility_;
    std::string name_;
};

// Nonempty finite set of acts that regret is measured against.
class Menu {
  public:
    explicit Menu(std::vector<Act> acts);

    [[nodiscard]] const SpacePtr& space() const { return acts_.front().space(); }
    [[nodiscard]] std::span<const Act> acts() const { return acts_; }
    // Highest utility any menu act attains in the state.
    [[nodiscard]] const Rat& best(std::size_t state) const { return best_.at(state); }

  private:
    std::vector<Act> acts_;
    std::vector<Rat> best_;
};

enum class Preference { better, worse, equivalent };

std::string to_string(Preference p);

Rat expected_utility(const Act& a, const ProbMeasure& pr);

// best(s) - u(a(s)). The act does not have to belong to the menu; the
// result is then allowed to be negative.
Rat regret_state(const Act& a, std::size_t state, const Menu& menu);

Rat expected_regret(const Act& a, const ProbMeasure& pr, const Menu& menu);

// max over entries of weight * expected regret.
Rat weighted_regret(const Act& a, const WeightedCredalSet& set, const Menu& menu);

// Regret against the constant act with utility u_star; u_star must be at
// least every utility of a.
Rat absolute_weighted_regret(const Act& a, const WeightedCredalSet& set, const Rat& u_star);

// a is better than b when its weighted regret is strictly smaller.
Preference prefer(const Act& a, const Act& b, const WeightedCredalSet& set, const Menu& menu);
Preference prefer_absolute(const Act& a, const Act& b, const WeightedCredalSet& set,
                           const Rat& u_star);

// Worst-case expected utility; weights are ignored.
Rat maxmin_value(const Act& a, std::span<const ProbMeasure> measures);
Rat maxmin_value(const Act& a, const WeightedCredalSet& set);
Preference prefer_maxmin(const Act& a, const Act& b, std::span<const ProbMeasure> measures);

// Union of the events whose indicators make up the menu. Throws when a menu
// act is not an indicator.
Event menu_event(const Menu& menu);

// 1_E + 1_{complement of E_M}: the act whose absolute regret ranks like the
// menu-relative regret of 1_E. Requires 1_E to be in the menu.
Act menu_reduction(const Event& e, const Menu& menu);

} // namespace wregret
