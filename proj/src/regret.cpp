#include "wregret/regret.hpp"

#include <algorithm>

#include "wregret/error.hpp"

namespace wregret {

Act::Act(SpacePtr space, std::vector<Rat> utility, std::string name)
    : space_(std::move(space)), utility_(std::move(utility)), name_(std::move(name)) {
    if (!space_) {
        throw DomainError("act without a state space");
    }
    if (utility_.size() != space_->size()) {
        throw DomainError("act \"" + name_ + "\" has " + std::to_string(utility_.size()) +
                          " utilities for " + std::to_string(space_->size()) + " states");
    }
}

Act Act::indicator(const Event& e) {
    std::vector<Rat> u(e.space()->size());
    for (std::size_t s = 0; s < u.size(); ++s) {
        u[s] = e.contains(s) ? Rat(1) : Rat(0);
    }
    return {e.space(), std::move(u), "1_" + e.to_string()};
}

std::optional<Event> Act::as_indicator() const {
    std::uint64_t mask = 0;
    for (std::size_t s = 0; s < utility_.size(); ++s) {
        if (utility_[s] == Rat(1)) {
            mask |= std::uint64_t{1} << s;
        } else if (!utility_[s].is_zero()) {
            return std::nullopt;
        }
    }
    return Event(space_, mask);
}

Menu::Menu(std::vector<Act> acts) : acts_(std::move(acts)) {
    if (acts_.empty()) {
        throw DomainError("menu must contain at least one act");
    }
    for (const auto& a : acts_) {
        require_same_space(acts_.front().space(), a.space(), "menu");
    }
    best_.assign(acts_.front().utilities().begin(), acts_.front().utilities().end());
    for (const auto& a : acts_) {
        for (std::size_t s = 0; s < best_.size(); ++s) {
            best_[s] = max(best_[s], a.utility(s));
        }
    }
}

std::string to_string(Preference p) {
    switch (p) {
    case Preference::better:
        return "better";
    case Preference::worse:
        return "worse";
    case Preference::equivalent:
        return "equivalent";
    }
    return "?";
}

Rat expected_utility(const Act& a, const ProbMeasure& pr) {
    require_same_space(a.space(), pr.space(), "expected utility");
    Rat total;
    for (std::size_t s = 0; s < a.space()->size(); ++s) {
        total += a.utility(s) * pr.mass(s);
    }
    return total;
}

Rat regret_state(const Act& a, std::size_t state, const Menu& menu) {
    require_same_space(a.space(), menu.space(), "regret");
    return menu.best(state) - a.utility(state);
}

Rat expected_regret(const Act& a, const ProbMeasure& pr, const Menu& menu) {
    require_same_space(a.space(), pr.space(), "expected regret");
    Rat total;
    for (std::size_t s = 0; s < a.space()->size(); ++s) {
        total += regret_state(a, s, menu) * pr.mass(s);
    }
    return total;
}

Rat weighted_regret(const Act& a, const WeightedCredalSet& set, const Menu& menu) {
    std::optional<Rat> worst;
    for (const auto& e : set.entries()) {
        Rat r = e.weight * expected_regret(a, e.measure, menu);
        if (!worst || *worst < r) {
            worst = std::move(r);
        }
    }
    return *worst;
}

Rat absolute_weighted_regret(const Act& a, const WeightedCredalSet& set, const Rat& u_star) {
    for (const auto& u : a.utilities()) {
        if (u_star < u) {
            throw DomainError("u_star = " + u_star.to_string() + " is below utility " +
                              u.to_string() + " of act \"" + a.name() +
                              "\"; it must be a best outcome");
        }
    }
    std::optional<Rat> worst;
    for (const auto& e : set.entries()) {
        Rat r = e.weight * (u_star - expected_utility(a, e.measure));
        if (!worst || *worst < r) {
            worst = std::move(r);
        }
    }
    return *worst;
}

namespace {

Preference by_regret(const Rat& ra, const Rat& rb) {
    if (ra < rb) {
        return Preference::better;
    }
    if (rb < ra) {
        return Preference::worse;
    }
    return Preference::equivalent;
}

} // namespace

Preference prefer(const Act& a, const Act& b, const WeightedCredalSet& set, const Menu& menu) {
    return by_regret(weighted_regret(a, set, menu), weighted_regret(b, set, menu));
}

Preference prefer_absolute(const Act& a, const Act& b, const WeightedCredalSet& set,
                           const Rat& u_star) {
    return by_regret(absolute_weighted_regret(a, set, u_star),
                     absolute_weighted_regret(b, set, u_star));
}

Rat maxmin_value(const Act& a, std::span<const ProbMeasure> measures) {
    if (measures.empty()) {
        throw DomainError("maxmin value over an empty set of measures");
    }
    Rat worst = expected_utility(a, measures.front());
    for (const auto& pr : measures.subspan(1)) {
        worst = min(worst, expected_utility(a, pr));
    }
    return worst;
}

Rat maxmin_value(const Act& a, const WeightedCredalSet& set) {
    const auto ms = set.measures();
    return maxmin_value(a, ms);
}

Preference prefer_maxmin(const Act& a, const Act& b, std::span<const ProbMeasure> measures) {
    // Higher worst-case utility is better; flip the arguments of by_regret.
    return by_regret(maxmin_value(b, measures), maxmin_value(a, measures));
}

Event menu_event(const Menu& menu) {
    Event acc = Event::empty(menu.space());
    for (const auto& act : menu.acts()) {
        const auto ev = act.as_indicator();
        if (!ev) {
            throw DomainError("menu act \"" + act.name() + "\" is not an indicator act");
        }
        acc = acc | *ev;
    }
    return acc;
}

Act menu_reduction(const Event& e, const Menu& menu) {
    const Event union_of_menu = menu_event(menu);
    const Act target = Act::indicator(e);
    const bool in_menu = std::any_of(menu.acts().begin(), menu.acts().end(),
                                     [&](const Act& a) { return a == target; });
    if (!in_menu) {
        throw DomainError("menu reduction needs 1_" + e.to_string() + " in the menu");
    }
    Act reduced = Act::indicator(e | union_of_menu.complement());
    return {reduced.space(), std::vector<Rat>(reduced.utilities().begin(), reduced.utilities().end()),
            "1_" + e.to_string() + "+1_" + union_of_menu.complement().to_string()};
}

} // namespace wregret
