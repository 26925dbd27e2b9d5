#pragma once

// Reference computations written directly against GMP rationals and plain
// vectors. They share no code with the library so agreement is evidence.

#include <algorithm>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;

struct Entry {
    Vec mass;
    Q weight;
};

inline Q prob(const Vec& mass, std::uint64_t mask) {
    Q total = 0;
    for (std::size_t s = 0; s < mass.size(); ++s) {
        if ((mask >> s) & 1U) {
            total += mass[s];
        }
    }
    return total;
}

inline std::uint64_t full(std::size_t n) { return (std::uint64_t{1} << n) - 1; }

// max over entries of weight * Pr(complement of E)
inline Q regret_likelihood(const std::vector<Entry>& set, std::uint64_t e, std::size_t n) {
    Q best = 0;
    for (const auto& en : set) {
        best = std::max(best, Q(en.weight * prob(en.mass, full(n) ^ e)));
    }
    return best;
}

inline std::vector<Q> induced(const std::vector<Entry>& set, std::size_t n) {
    std::vector<Q> f(std::size_t{1} << n);
    for (std::uint64_t m = 0; m < f.size(); ++m) {
        f[m] = regret_likelihood(set, m, n);
    }
    return f;
}

inline Q expected_regret(const Vec& act, const Vec& mass, const std::vector<Vec>& menu) {
    Q total = 0;
    for (std::size_t s = 0; s < mass.size(); ++s) {
        Q best = menu.front()[s];
        for (const auto& m : menu) {
            best = std::max(best, m[s]);
        }
        total += mass[s] * (best - act[s]);
    }
    return total;
}

inline Q weighted_regret(const Vec& act, const std::vector<Entry>& set, const std::vector<Vec>& menu) {
    Q worst = 0;
    for (const auto& en : set) {
        worst = std::max(worst, Q(en.weight * expected_regret(act, en.mass, menu)));
    }
    return worst;
}

// Exhaustive REG3 check that enumerates multiplicity vectors over all events
// rather than sorted sequences; slow but independent of the library walker.
// Returns true when some n-cover within bounds violates the inequality.
inline bool reg3_violated(const std::vector<Q>& f, std::size_t n_states, std::size_t max_n, std::size_t max_m) {
    const std::size_t events = f.size();
    std::vector<std::size_t> mult(events, 0);
    bool violated = false;
    auto check = [&]() {
        std::size_t total = 0;
        Q sum = 0;
        std::vector<std::size_t> cover(n_states, 0);
        for (std::size_t e = 0; e < events; ++e) {
            total += mult[e];
            sum += Q(static_cast<long>(mult[e])) * f[e];
            for (std::size_t s = 0; s < n_states; ++s) {
                if (!((e >> s) & 1U)) {
                    cover[s] += mult[e];
                }
            }
        }
        if (total == 0 || total > max_m) {
            return;
        }
        for (std::uint64_t target = 0; target < events; ++target) {
            for (std::size_t n = 1; n <= max_n; ++n) {
                bool covers = true;
                for (std::size_t s = 0; s < n_states; ++s) {
                    if (!((target >> s) & 1U) && cover[s] < n) {
                        covers = false;
                    }
                }
                if (covers && Q(static_cast<long>(n)) * f[target] > sum) {
                    violated = true;
                }
            }
        }
    };
    // odometer over multiplicities with total <= max_m
    while (true) {
        check();
        std::size_t i = 0;
        while (i < events) {
            std::size_t total = 0;
            for (auto m : mult) {
                total += m;
            }
            if (total < max_m) {
                ++mult[i];
                break;
            }
            total -= mult[i];
            mult[i] = 0;
            ++i;
        }
        if (i == events) {
            break;
        }
    }
    return violated;
}

// beta >= 0, beta A = 0 and beta b > 0, recomputed from scratch.
inline bool farkas_holds(const std::vector<Vec>& a, const Vec& b, const Vec& beta) {
    if (beta.size() != a.size()) {
        return false;
    }
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    for (const auto& y : beta) {
        if (y < 0) {
            return false;
        }
    }
    for (std::size_t c = 0; c < cols; ++c) {
        Q dot = 0;
        for (std::size_t r = 0; r < a.size(); ++r) {
            dot += beta[r] * a[r][c];
        }
        if (dot != 0) {
            return false;
        }
    }
    Q rhs = 0;
    for (std::size_t r = 0; r < a.size(); ++r) {
        rhs += beta[r] * b[r];
    }
    return rhs > 0;
}

inline bool witness_holds(const std::vector<Vec>& a, const Vec& b, const Vec& x) {
    for (std::size_t r = 0; r < a.size(); ++r) {
        Q dot = 0;
        for (std::size_t c = 0; c < x.size(); ++c) {
            dot += a[r][c] * x[c];
        }
        if (dot < b[r]) {
            return false;
        }
    }
    return true;
}

} // namespace oracle
