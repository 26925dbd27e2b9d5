#include "wregret/axioms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "wregret/error.hpp"
#include "wregret/likelihood.hpp"

namespace wregret {

SetFunction::SetFunction(SpacePtr space, std::vector<Rat> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) {
        throw DomainError("set function without a state space");
    }
    if (values_.size() != space_->event_count()) {
        throw DomainError("set function table has " + std::to_string(values_.size()) +
                          " values for " + std::to_string(space_->event_count()) + " events");
    }
    for (std::size_t m = 0; m < values_.size(); ++m) {
        if (values_[m].sign() < 0 || values_[m] > Rat(1)) {
            throw DomainError("set function value " + values_[m].to_string() + " at " +
                              Event(space_, m).to_string() + " is outside [0,1]");
        }
    }
}

SetFunction SetFunction::induced(const WeightedCredalSet& set) {
    const auto& space = set.space();
    std::vector<Rat> v(space->event_count());
    for (std::uint64_t m = 0; m < v.size(); ++m) {
        v[m] = regret_likelihood(Event(space, m), set);
    }
    return {space, std::move(v)};
}

SetFunction SetFunction::lower_probability(const std::vector<ProbMeasure>& measures) {
    if (measures.empty()) {
        throw DomainError("lower probability over an empty set of measures");
    }
    const auto& space = measures.front().space();
    std::vector<Rat> v(space->event_count());
    for (std::uint64_t m = 0; m < v.size(); ++m) {
        v[m] = wregret::lower_probability(Event(space, m), measures);
    }
    return {space, std::move(v)};
}

const Rat& SetFunction::operator()(const Event& e) const {
    require_same_space(space_, e.space(), "set function lookup");
    return values_[e.mask()];
}

SetFunction SetFunction::with(const Event& e, Rat value) const {
    require_same_space(space_, e.space(), "set function update");
    auto v = values_;
    v[e.mask()] = std::move(value);
    return {space_, std::move(v)};
}

SetFunction SetFunction::one_minus() const {
    auto v = values_;
    for (auto& x : v) {
        x = Rat(1) - x;
    }
    return {space_, std::move(v)};
}

std::string to_string(CoverAxiom axiom) {
    switch (axiom) {
    case CoverAxiom::reg3:
        return "REG3";
    case CoverAxiom::reg3prime:
        return "REG3'";
    case CoverAxiom::lp3:
        return "LP3";
    }
    return "?";
}

MultisetOfEvents CoverViolation::multiset() const {
    MultisetOfEvents out(target.space());
    for (const auto& e : events) {
        out.add(e);
    }
    return out;
}

MultisetOfEvents CoverViolation::complement_multiset() const {
    MultisetOfEvents out(target.space());
    for (const auto& e : events) {
        out.add(e.complement());
    }
    return out;
}

Reg12Report check_reg12_report(const SetFunction& f) {
    const auto& s = f.space();
    return {f.at(s->full_mask()).is_zero(), f.at(0) == Rat(1)};
}

bool check_REG12(const SetFunction& f) { return check_reg12_report(f).ok(); }

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

void check_work(std::size_t states, std::size_t max_m) {
    const double events = std::ldexp(1.0, static_cast<int>(states));
    double multisets = 0;
    double term = 1;
    for (std::size_t len = 1; len <= max_m; ++len) {
        term = term * (events + static_cast<double>(len) - 1) / static_cast<double>(len);
        multisets += term;
    }
    const double work = multisets * events;
    if (work > kMaxCoverWork) {
        throw ResourceError("bounded cover enumeration with " + std::to_string(states) +
                            " states and up to " + std::to_string(max_m) +
                            " events would visit about " + std::to_string(static_cast<long long>(work)) +
                            " cases; lower max_m or use the LP-based representability check");
    }
}

// Walks nondecreasing sequences of event masks of each length 1..max_m in
// order. counts[s] tracks how often state s is covered, by the complements
// (complement_cover) or by the events themselves. visit(seq, counts, sum)
// returns true to stop.
class CoverWalker {
  public:
    using Visit = std::function<bool(const std::vector<std::uint64_t>&,
                                     const std::vector<std::size_t>&, const Rat&)>;

    CoverWalker(const SetFunction& f, bool complement_cover)
        : f_(f), states_(f.space()->size()), full_(f.space()->full_mask()),
          complement_(complement_cover), counts_(states_, 0) {}

    bool run(std::size_t max_m, const Visit& visit) {
        for (std::size_t len = 1; len <= max_m; ++len) {
            seq_.clear();
            sums_.assign(1, Rat(0));
            if (extend(len, 0, visit)) {
                return true;
            }
        }
        return false;
    }

  private:
    bool extend(std::size_t remaining, std::uint64_t from, const Visit& visit) {
        if (remaining == 0) {
            return visit(seq_, counts_, sums_.back());
        }
        for (std::uint64_t m = from; m <= full_; ++m) {
            const std::uint64_t covered = complement_ ? (full_ ^ m) : m;
            bump(covered, +1);
            seq_.push_back(m);
            sums_.push_back(sums_.back() + f_.at(m));
            const bool stop = extend(remaining - 1, m, visit);
            sums_.pop_back();
            seq_.pop_back();
            bump(covered, -1);
            if (stop) {
                return true;
            }
        }
        return false;
    }

    void bump(std::uint64_t mask, int delta) {
        for (std::size_t s = 0; s < states_; ++s) {
            if (((mask >> s) & 1U) != 0) {
                counts_[s] = static_cast<std::size_t>(static_cast<long>(counts_[s]) + delta);
            }
        }
    }

    const SetFunction& f_;
    std::size_t states_;
    std::uint64_t full_;
    bool complement_;
    std::vector<std::size_t> counts_;
    std::vector<std::uint64_t> seq_;
    std::vector<Rat> sums_;
};

// min over the states of each mask of counts; kUnbounded for the empty mask.
void min_counts(const std::vector<std::size_t>& counts, std::vector<std::size_t>& out) {
    out[0] = kUnbounded;
    for (std::uint64_t m = 1; m < out.size(); ++m) {
        const auto low = static_cast<std::size_t>(std::countr_zero(m));
        out[m] = std::min(out[m & (m - 1)], counts[low]);
    }
}

std::vector<Event> to_events(const SpacePtr& space, const std::vector<std::uint64_t>& seq) {
    std::vector<Event> out;
    out.reserve(seq.size());
    for (auto m : seq) {
        out.emplace_back(space, m);
    }
    return out;
}

} // namespace

std::optional<CoverViolation> check_REG3_bounded(const SetFunction& f, std::size_t max_n,
                                                 std::size_t max_m) {
    const auto& space = f.space();
    check_work(space->size(), max_m);
    const std::uint64_t full = space->full_mask();
    const std::size_t events = space->event_count();

    // n_times[n][E] = n f(E)
    std::vector<std::vector<Rat>> n_times(max_n + 1, std::vector<Rat>(events));
    for (std::size_t n = 1; n <= max_n; ++n) {
        for (std::size_t e = 0; e < events; ++e) {
            n_times[n][e] = Rat(static_cast<long>(n)) * f.at(e);
        }
    }

    std::optional<CoverViolation> found;
    std::vector<std::size_t> minc(events);
    CoverWalker walker(f, true);
    walker.run(max_m, [&](const auto& seq, const auto& counts, const Rat& sum) {
        min_counts(counts, minc);
        for (std::uint64_t e = 0; e < events; ++e) {
            const std::size_t n = std::min(max_n, minc[full ^ e]);
            if (n == 0 || n_times[n][e] <= sum) {
                continue;
            }
            found = CoverViolation{CoverAxiom::reg3, to_events(space, seq), Event(space, e), n, 0,
                                   n_times[n][e], sum, sum - n_times[n][e]};
            return true;
        }
        return false;
    });
    return found;
}

std::optional<CoverViolation> check_REG3prime(const SetFunction& f, std::size_t max_n,
                                              std::size_t max_k, std::size_t max_m) {
    const auto& space = f.space();
    check_work(space->size(), max_m);
    const std::uint64_t full = space->full_mask();
    const std::size_t events = space->event_count();

    std::optional<CoverViolation> found;
    std::vector<std::size_t> minc(events);
    CoverWalker walker(f, true);
    walker.run(max_m, [&](const auto& seq, const auto& counts, const Rat& sum) {
        min_counts(counts, minc);
        // f <= 1, so trading one unit of n for one unit of k never weakens the
        // bound: take k as large as allowed, then n.
        const std::size_t k = std::min(max_k, minc[full]);
        for (std::uint64_t e = 0; e < events; ++e) {
            const std::size_t cover = minc[full ^ e];
            const std::size_t n = cover == kUnbounded ? max_n : std::min(max_n, cover - k);
            if (n == 0 && k == 0) {
                continue;
            }
            Rat bound = Rat(static_cast<long>(k)) + Rat(static_cast<long>(n)) * f.at(e);
            if (bound <= sum) {
                continue;
            }
            found = CoverViolation{CoverAxiom::reg3prime, to_events(space, seq), Event(space, e), n, k,
                                   bound, sum, sum - bound};
            return true;
        }
        return false;
    });
    return found;
}

LpAxiomReport check_LP_axioms(const SetFunction& g, const CoverBounds& bounds) {
    const auto& space = g.space();
    const std::uint64_t full = space->full_mask();
    const std::size_t events = space->event_count();

    LpAxiomReport report{g.at(full) == Rat(1), g.at(0).is_zero(), std::nullopt, std::nullopt};

    for (std::uint64_t a = 0; a < events && !report.lp3prime; ++a) {
        for (std::uint64_t b = a; b < events; ++b) {
            if ((a & b) != 0) {
                continue;
            }
            if (g.at(a | b) < g.at(a) + g.at(b)) {
                report.lp3prime = SuperadditivityViolation{Event(space, a), Event(space, b)};
                break;
            }
        }
    }

    check_work(space->size(), bounds.max_m);
    CoverWalker walker(g, false);
    walker.run(bounds.max_m, [&](const auto& seq, const auto& counts, const Rat& sum) {
        for (std::uint64_t e = 0; e < events; ++e) {
            // Exact cover: constant count k off the target, constant c inside.
            std::optional<std::size_t> inside;
            std::optional<std::size_t> outside;
            bool exact = true;
            for (std::size_t s = 0; s < counts.size() && exact; ++s) {
                auto& slot = ((e >> s) & 1U) != 0 ? inside : outside;
                if (!slot) {
                    slot = counts[s];
                } else if (*slot != counts[s]) {
                    exact = false;
                }
            }
            if (!exact) {
                continue;
            }
            // Feasible (n, k) pairs form a segment; the bound k + n g(E) is
            // linear along it, so checking the two ends suffices.
            std::vector<std::pair<std::size_t, std::size_t>> candidates;  // (n, k)
            if (inside && outside) {
                if (*inside < *outside) {
                    continue;
                }
                candidates.emplace_back(*inside - *outside, *outside);
            } else if (outside) {  // target is empty: any n
                candidates.emplace_back(0, *outside);
                candidates.emplace_back(bounds.max_n, *outside);
            } else {  // target is S: c = n + k with any split
                const std::size_t c = *inside;
                const std::size_t k_lo = c > bounds.max_n ? c - bounds.max_n : 0;
                const std::size_t k_hi = std::min(c, bounds.max_k);
                if (k_lo > k_hi) {
                    continue;
                }
                candidates.emplace_back(c - k_lo, k_lo);
                candidates.emplace_back(c - k_hi, k_hi);
            }
            for (auto [n, k] : candidates) {
                if (n > bounds.max_n || k > bounds.max_k) {
                    continue;
                }
                Rat bound = Rat(static_cast<long>(k)) + Rat(static_cast<long>(n)) * g.at(e);
                if (bound < sum) {
                    report.lp3 = CoverViolation{CoverAxiom::lp3, to_events(space, seq), Event(space, e),
                                                n, k, bound, sum, bound - sum};
                    return true;
                }
            }
        }
        return false;
    });
    return report;
}

Rat canonical_weight(const SetFunction& f, const ProbMeasure& pr) {
    require_same_space(f.space(), pr.space(), "canonical weight");
    const auto& space = f.space();
    Rat best(1);
    for (std::uint64_t m = 0; m < space->event_count(); ++m) {
        const Event e(space, m);
        const Rat p = pr.prob(e.complement());
        if (p.is_zero()) {
            continue;
        }
        best = min(best, f.at(m) / p);
    }
    return best;
}

namespace {

std::string pr_of(const Event& e) { return "Pr(" + e.to_string() + ")"; }

} // namespace

LinearSystem weight_one_system(const SetFunction& f) {
    const auto& space = f.space();
    const std::size_t n = space->size();
    const std::uint64_t full = space->full_mask();
    const std::size_t rows = static_cast<std::size_t>(full) + n + 1;

    LinearSystem sys{RatMatrix(rows, n), std::vector<Rat>(rows), {}};
    sys.row_labels.reserve(rows);
    std::size_t r = 0;
    for (std::uint64_t m = 0; m < full; ++m, ++r) {
        const Event e(space, m);
        for (std::size_t s = 0; s < n; ++s) {
            if (!e.contains(s)) {
                sys.a(r, s) = Rat(-1);
            }
        }
        sys.b[r] = -f.at(m);
        sys.row_labels.push_back("-" + pr_of(e.complement()) + " >= -f(" + e.to_string() + ")");
    }
    for (std::size_t s = 0; s < n; ++s, ++r) {
        sys.a(r, s) = Rat(1);
        sys.row_labels.push_back("Pr({" + space->label(s) + "}) >= 0");
    }
    for (std::size_t s = 0; s < n; ++s) {
        sys.a(r, s) = Rat(1);
    }
    sys.b[r] = Rat(1);
    sys.row_labels.emplace_back("Pr(S) >= 1");
    return sys;
}

LinearSystem tightness_system(const SetFunction& f, const Event& e) {
    require_same_space(f.space(), e.space(), "tightness system");
    const auto& space = f.space();
    const Rat& fe = f(e);
    if (fe.sign() <= 0) {
        throw DomainError("tightness system needs f(E) > 0, got f(" + e.to_string() + ") = " +
                          fe.to_string());
    }
    const Event comp = e.complement();
    const auto vars = comp.members();
    const std::uint64_t full = space->full_mask();

    std::vector<std::uint64_t> constrained;
    for (std::uint64_t m = 0; m < full; ++m) {
        if ((comp.mask() & (full ^ m)) != 0) {
            constrained.push_back(m);
        }
    }
    const std::size_t rows = constrained.size() + vars.size() + 1;
    LinearSystem sys{RatMatrix(rows, vars.size()), std::vector<Rat>(rows), {}};
    std::size_t r = 0;
    for (auto m : constrained) {
        const Event other(space, m);
        const Event other_comp = other.complement();
        for (std::size_t v = 0; v < vars.size(); ++v) {
            if (other_comp.contains(vars[v])) {
                sys.a(r, v) = Rat(-1);
            }
        }
        sys.b[r] = -(f.at(m) / fe);
        sys.row_labels.push_back("-" + pr_of(comp & other_comp) + " >= -f(" + other.to_string() +
                                 ")/f(" + e.to_string() + ")");
        ++r;
    }
    for (std::size_t v = 0; v < vars.size(); ++v, ++r) {
        sys.a(r, v) = Rat(1);
        sys.row_labels.push_back("Pr({" + space->label(vars[v]) + "}) >= 0");
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
        sys.a(r, v) = Rat(1);
    }
    sys.b[r] = Rat(1);
    sys.row_labels.push_back(pr_of(comp) + " >= 1");
    return sys;
}

Representation representability(const SetFunction& f) {
    Representation out;
    const auto& space = f.space();
    const auto reg12 = check_reg12_report(f);
    if (!reg12.reg1) {
        out.reason = "REG1 fails: f(S) = " + f.at(space->full_mask()).to_string() + ", expected 0";
        return out;
    }
    if (!reg12.reg2) {
        out.reason = "REG2 fails: f({}) = " + f.at(0).to_string() + ", expected 1";
        return out;
    }

    auto sys = weight_one_system(f);
    auto res = exact_feasibility(sys);
    if (!res.feasible()) {
        out.reason = "no measure has weight 1: the weight-1 system is infeasible";
        out.certificate = res.certificate();
        out.failing_system = std::move(sys);
        return out;
    }
    out.weight_one_measure = ProbMeasure(space, res.witness());

    for (std::uint64_t m = 0; m < space->full_mask(); ++m) {
        const Event e(space, m);
        if (f.at(m).is_zero()) {
            out.tightness.push_back({e, std::nullopt});
            continue;
        }
        auto tsys = tightness_system(f, e);
        auto tres = exact_feasibility(tsys);
        if (!tres.feasible()) {
            out.reason = "f(" + e.to_string() + ") = " + f.at(m).to_string() +
                         " is not attained: its tightness system is infeasible";
            out.failing_event = e;
            out.certificate = tres.certificate();
            out.failing_system = std::move(tsys);
            out.tightness.clear();
            out.weight_one_measure.reset();
            return out;
        }
        std::vector<Rat> mass(space->size());
        const auto vars = e.complement().members();
        for (std::size_t v = 0; v < vars.size(); ++v) {
            mass[vars[v]] = tres.witness()[v];
        }
        out.tightness.push_back({e, ProbMeasure(space, std::move(mass))});
    }

    std::vector<WeightedMeasure> entries;
    auto add = [&](const ProbMeasure& pr) {
        for (const auto& existing : entries) {
            if (existing.measure == pr) {
                return;
            }
        }
        entries.push_back({pr, canonical_weight(f, pr)});
    };
    add(*out.weight_one_measure);
    for (const auto& t : out.tightness) {
        if (t.measure) {
            add(*t.measure);
        }
    }
    WeightedCredalSet set(std::move(entries));
    if (!(SetFunction::induced(set) == f)) {
        throw std::logic_error("reconstructed credal set does not reproduce the set function");
    }
    out.representable = true;
    out.witness_set = std::move(set);
    return out;
}

} // namespace wregret
