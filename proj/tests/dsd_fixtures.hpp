#pragma once

#include "strandbench/dsd/engine.hpp"
#include "strandbench/dsd/gates.hpp"

namespace testing_support {

using namespace strandbench::dsd;

/// Two-stage AND cascade a,b -> w; w,c -> y, a second consumer c -> z, and
/// one stray strand led by w's toehold sitting in the waste pool. Inputs
/// are a=0, b=0, c=1, so y must stay off; only a leak can turn it on.
inline SolutionState leak_cascade_state() {
    SolutionState s;
    add_to(s.complexes, and_complex({"a", "b"}, "w"));
    add_to(s.complexes, and_complex({"w", "c"}, "y"));
    add_to(s.complexes, translator_complex("c", "z"));
    add_to(s.free, signal_strand("c"));
    add_to(s.waste_strands, Strand({signal_toehold("w"), migration("junk.m")}));
    return s;
}

inline const Reporter& leak_cascade_output() {
    static const Reporter r = reporter_for("y");
    return r;
}

/// Census of the reactants equals the census of the products, event by event.
inline bool trace_conserves(const SimulationResult& r) {
    for (const auto& e : r.trace) {
        if (reactant_census(e) != product_census(e)) return false;
    }
    return true;
}

}  // namespace testing_support
