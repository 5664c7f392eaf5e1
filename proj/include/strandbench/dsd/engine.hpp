#pragma once

#include "strandbench/dsd/species.hpp"
#include "strandbench/random.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace strandbench::dsd {

enum class RateClass { normal, leak };

/// One strand (free for normal events, waste for leaks) acting on one
/// toehold of one complex species. Released strands that lead with a
/// toehold can invade further and go back to the free pool; the rest are
/// waste.
struct ReactionEvent {
    RateClass rate_class = RateClass::normal;
    Strand invader;
    GateComplex target;
    std::size_t toehold = 0;
    GateComplex product;
    std::optional<Strand> released;

    bool released_is_waste() const { return released && !released->front().is_toehold(); }
    bool product_is_spent() const { return product.is_spent(); }

    friend bool operator==(const ReactionEvent&, const ReactionEvent&) = default;
};

inline Census reactant_census(const ReactionEvent& e) {
    Census c;
    count_into(c, e.invader, 1);
    count_into(c, e.target, 1);
    return c;
}

inline Census product_census(const ReactionEvent& e) {
    Census c;
    count_into(c, e.product, 1);
    if (e.released) {
        count_into(c, *e.released, 1);
    }
    return c;
}

namespace detail {

inline GateComplex rebind(const GateComplex& c, std::optional<std::size_t> drop, Incumbent add) {
    std::vector<Incumbent> incs;
    for (std::size_t i = 0; i < c.incumbents().size(); ++i) {
        if (!drop || i != *drop) {
            incs.push_back(c.incumbents()[i]);
        }
    }
    incs.push_back(std::move(add));
    return GateComplex(c.backbone(), std::move(incs));
}

}  // namespace detail

/// Toehold binding at exposed position p followed by three-way branch
/// migration through the incumbent that starts at p + 1.
///
/// The invader pairs domain by domain as far as it can within that
/// incumbent's range. Whatever the invader leaves unpaired must be toehold
/// only, so the incumbent falls off completely; otherwise there is no event.
inline std::optional<ReactionEvent> try_displace(const Strand& s, const GateComplex& c, std::size_t p) {
    const auto& bb = c.backbone();
    if (!c.is_exposed(p) || !bb[p].is_toehold() || !s.front().binds(bb[p])) {
        return std::nullopt;
    }
    const auto idx = c.incumbent_starting_at(p + 1);
    if (!idx) {
        return std::nullopt;
    }
    const Incumbent& inc = c.incumbents()[*idx];
    std::size_t m = 0;
    while (1 + m < s.size() && p + 1 + m < inc.end && s[1 + m].binds(bb[p + 1 + m])) {
        ++m;
    }
    if (m == 0) {
        return std::nullopt;
    }
    for (std::size_t q = p + 1 + m; q < inc.end; ++q) {
        if (!bb[q].is_toehold()) {
            return std::nullopt;
        }
    }
    ReactionEvent e{RateClass::normal, s, c, p, detail::rebind(c, idx, Incumbent{s, p, p + 1 + m, 0}), inc.strand};
    return e;
}

/// Spurious invasion by a waste strand: it sits on the toehold at p and
/// knocks off the incumbent starting at p + 1, if there is one.
inline std::optional<ReactionEvent> try_leak(const Strand& w, const GateComplex& c, std::size_t p) {
    const auto& bb = c.backbone();
    if (!c.is_exposed(p) || !bb[p].is_toehold() || !w.front().binds(bb[p])) {
        return std::nullopt;
    }
    const auto idx = c.incumbent_starting_at(p + 1);
    std::optional<Strand> released;
    if (idx) {
        released = c.incumbents()[*idx].strand;
    }
    return ReactionEvent{RateClass::leak, w, c, p, detail::rebind(c, idx, Incumbent{w, p, p + 1, 0}), released};
}

/// Every enabled event: one normal event per (free strand, complex, exposed
/// toehold) that displaces, plus, when leak_rate > 0, one leak event per
/// (waste strand, complex, exposed toehold) with a complementary leading
/// domain. Order follows the species ordering, so it is deterministic.
inline std::vector<ReactionEvent> enumerate_reactions(const SolutionState& s, double leak_rate) {
    if (leak_rate < 0.0) {
        throw argument_error("leak rate must be >= 0");
    }
    std::vector<ReactionEvent> out;
    for (const auto& [cx, ncx] : s.complexes) {
        for (std::size_t p : cx.exposed_toeholds()) {
            for (const auto& [st, nst] : s.free) {
                if (auto e = try_displace(st, cx, p)) {
                    out.push_back(std::move(*e));
                }
            }
            if (leak_rate > 0.0) {
                for (const auto& [w, nw] : s.waste_strands) {
                    if (auto e = try_leak(w, cx, p)) {
                        out.push_back(std::move(*e));
                    }
                }
            }
        }
    }
    return out;
}

/// Count product times rate class weight.
inline double propensity(const SolutionState& s, const ReactionEvent& e, double leak_rate) {
    const auto& pool = e.rate_class == RateClass::normal ? s.free : s.waste_strands;
    const auto a = pool.find(e.invader);
    const auto b = s.complexes.find(e.target);
    if (a == pool.end() || b == s.complexes.end()) {
        return 0.0;
    }
    const double rate = e.rate_class == RateClass::normal ? 1.0 : leak_rate;
    return static_cast<double>(a->second) * static_cast<double>(b->second) * rate;
}

/// Applies one event to a copy of the state.
inline SolutionState apply(const SolutionState& s, const ReactionEvent& e) {
    SolutionState out = s;
    take_from(e.rate_class == RateClass::normal ? out.free : out.waste_strands, e.invader);
    take_from(out.complexes, e.target);
    add_to(e.product_is_spent() ? out.waste_complexes : out.complexes, e.product);
    if (e.released) {
        add_to(e.released_is_waste() ? out.waste_strands : out.free, *e.released);
    }
    return out;
}

struct SimulationResult {
    SolutionState final_state;
    std::vector<ReactionEvent> trace;
    bool quiescent = false;
};

/// Raised if a step would change the domain census. Never expected.
class conservation_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Discrete stochastic simulation: picks enabled events with probability
/// proportional to propensity until nothing is enabled or max_events
/// events have fired. Deterministic for a given seed. The domain census is
/// checked on every event and on the final state.
inline SimulationResult simulate(const SolutionState& initial, std::uint64_t seed, double leak_rate,
                                 std::size_t max_events) {
    Rng rng(seed);
    SimulationResult r{initial, {}, false};
    const Census before = census(initial);
    while (true) {
        const auto events = enumerate_reactions(r.final_state, leak_rate);
        if (events.empty()) {
            r.quiescent = true;
            break;
        }
        if (r.trace.size() >= max_events) {
            break;
        }
        std::vector<double> weights;
        weights.reserve(events.size());
        double total = 0.0;
        for (const auto& e : events) {
            weights.push_back(propensity(r.final_state, e, leak_rate));
            total += weights.back();
        }
        double u = rng.unit() * total;
        std::size_t pick = 0;
        while (pick + 1 < events.size() && u >= weights[pick]) {
            u -= weights[pick];
            ++pick;
        }
        const auto& e = events[pick];
        if (reactant_census(e) != product_census(e)) {
            throw conservation_error("reaction changes the domain census");
        }
        r.final_state = apply(r.final_state, e);
        r.trace.push_back(e);
    }
    if (census(r.final_state) != before) {
        throw conservation_error("simulation changed the domain census");
    }
    return r;
}

}  // namespace strandbench::dsd
