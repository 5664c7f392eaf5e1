#pragma once

#include "strandbench/dsd/engine.hpp"
#include "strandbench/dsd/species.hpp"
#include "strandbench/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace strandbench::dsd {

// Every named signal x owns a toehold "x.t" and a migration domain "x.m";
// the signal strand itself is <x.t x.m>.

inline Domain signal_toehold(const std::string& name) { return toehold(name + ".t"); }
inline Domain signal_migration(const std::string& name) { return migration(name + ".m"); }

inline Strand signal_strand(const std::string& name) {
    return Strand({signal_toehold(name), signal_migration(name)});
}

/// Name of one rail of a dual-rail signal.
inline std::string rail(const std::string& name, bool bit) { return name + (bit ? ".1" : ".0"); }

/// Sequential AND over `inputs`: toehold i+1 is only revealed once input i
/// has displaced the incumbent covering it; the last input releases
/// <out.t out.m last.m>.
///
/// backbone  t1* m1* t2* m2* ... tk* mk*
/// blockers  [m_i t_{i+1}] over (m_i*, t_{i+1}*)
/// output    [out.t out.m mk] bound by its last domain to mk*
inline GateComplex and_complex(const std::vector<std::string>& inputs, const std::string& out) {
    if (inputs.empty()) {
        throw argument_error("an AND complex needs at least one input");
    }
    std::vector<Domain> bb;
    for (const auto& in : inputs) {
        bb.push_back(signal_toehold(in).complement());
        bb.push_back(signal_migration(in).complement());
    }
    std::vector<Incumbent> incs;
    for (std::size_t i = 0; i + 1 < inputs.size(); ++i) {
        incs.push_back({Strand({signal_migration(inputs[i]), signal_toehold(inputs[i + 1])}), 2 * i + 1, 2 * i + 3, 0});
    }
    const std::size_t last = 2 * inputs.size() - 1;
    incs.push_back({Strand({signal_toehold(out), signal_migration(out), signal_migration(inputs.back())}), last,
                    last + 1, 2});
    return GateComplex(Strand(std::move(bb)), std::move(incs));
}

/// Single-input complex converting signal `in` into signal `out`.
inline GateComplex translator_complex(const std::string& in, const std::string& out) { return and_complex({in}, out); }

/// Presence detector: a free strand starting with <name.t name.m>.
struct Reporter {
    Domain toehold;
    Domain migration;

    friend bool operator==(const Reporter&, const Reporter&) = default;
};

inline Reporter reporter_for(const std::string& name) { return {signal_toehold(name), signal_migration(name)}; }

inline bool present(const SolutionState& s, const Reporter& r) {
    for (const auto& [st, n] : s.free) {
        if (st.size() >= 2 && st[0] == r.toehold && st[1] == r.migration) {
            return true;
        }
    }
    return false;
}

inline std::uint64_t present_count(const SolutionState& s, const Reporter& r) {
    std::uint64_t total = 0;
    for (const auto& [st, n] : s.free) {
        if (st.size() >= 2 && st[0] == r.toehold && st[1] == r.migration) {
            total += n;
        }
    }
    return total;
}

struct InputTemplate {
    Strand strand;
    std::uint64_t copies = 1;
};

/// Gate complexes plus the strands that drive them and the reporters that
/// read them. Input and output keys are signal names (rails for dual-rail).
struct GateBundle {
    std::vector<std::pair<GateComplex, std::uint64_t>> complexes;
    std::map<std::string, InputTemplate> inputs;
    std::map<std::string, Reporter> outputs;

    SolutionState initial_state() const {
        SolutionState s;
        for (const auto& [c, n] : complexes) {
            add_to(s.complexes, c, n);
        }
        return s;
    }

    /// Initial state with the named inputs injected.
    SolutionState with_inputs(const std::set<std::string>& present_inputs) const {
        SolutionState s = initial_state();
        for (const auto& name : present_inputs) {
            const auto it = inputs.find(name);
            if (it == inputs.end()) {
                throw argument_error("unknown input '" + name + "'");
            }
            add_to(s.free, it->second.strand, it->second.copies);
        }
        return s;
    }
};

namespace detail {

inline void require_distinct(const std::vector<std::string>& names) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) {
            throw argument_error("signal names must be non-empty");
        }
        if (!seen.insert(n).second) {
            throw argument_error("signal name collision: '" + n + "'");
        }
    }
}

inline void add_input(GateBundle& b, const std::string& name, std::uint64_t copies = 1) {
    b.inputs.emplace(name, InputTemplate{signal_strand(name), copies});
}

}  // namespace detail

/// Two-input AND: only toehold 1 starts exposed; input 1 reveals toehold 2
/// and input 2 releases the output strand.
inline GateBundle make_and_gate(const std::string& in1, const std::string& in2, const std::string& out) {
    detail::require_distinct({in1, in2, out});
    GateBundle b;
    b.complexes.emplace_back(and_complex({in1, in2}, out), 1);
    detail::add_input(b, in1);
    detail::add_input(b, in2);
    b.outputs.emplace(out, reporter_for(out));
    return b;
}

/// Single assembly for k inputs with strictly sequential toehold reveal.
inline GateBundle make_multi_input_and(const std::vector<std::string>& inputs, const std::string& out) {
    if (inputs.size() < 2) {
        throw argument_error("multi-input AND needs at least 2 inputs");
    }
    auto names = inputs;
    names.push_back(out);
    detail::require_distinct(names);
    GateBundle b;
    b.complexes.emplace_back(and_complex(inputs, out), 1);
    for (const auto& in : inputs) {
        detail::add_input(b, in);
    }
    b.outputs.emplace(out, reporter_for(out));
    return b;
}

/// The same k-input AND built as a chain of two-input gates, each stage
/// releasing an intermediate reporter "<out>~<stage>" for the next.
inline GateBundle make_cascade_and(const std::vector<std::string>& inputs, const std::string& out) {
    if (inputs.size() < 2) {
        throw argument_error("cascade AND needs at least 2 inputs");
    }
    auto names = inputs;
    names.push_back(out);
    detail::require_distinct(names);
    GateBundle b;
    std::string carry = inputs[0];
    for (std::size_t i = 1; i < inputs.size(); ++i) {
        const std::string stage_out = i + 1 == inputs.size() ? out : out + "~" + std::to_string(i);
        b.complexes.emplace_back(and_complex({carry, inputs[i]}, stage_out), 1);
        carry = stage_out;
    }
    for (const auto& in : inputs) {
        detail::add_input(b, in);
    }
    b.outputs.emplace(out, reporter_for(out));
    return b;
}

/// Two translators sharing the output domains; either input releases the output.
inline GateBundle make_or_gate(const std::string& in1, const std::string& in2, const std::string& out) {
    detail::require_distinct({in1, in2, out});
    GateBundle b;
    b.complexes.emplace_back(translator_complex(in1, out), 1);
    b.complexes.emplace_back(translator_complex(in2, out), 1);
    detail::add_input(b, in1);
    detail::add_input(b, in2);
    b.outputs.emplace(out, reporter_for(out));
    return b;
}

/// Dual-rail NOT: in.1 releases out.0 and in.0 releases out.1.
inline GateBundle make_not_gate(const std::string& in, const std::string& out) {
    detail::require_distinct({in, out});
    GateBundle b;
    b.complexes.emplace_back(translator_complex(rail(in, true), rail(out, false)), 1);
    b.complexes.emplace_back(translator_complex(rail(in, false), rail(out, true)), 1);
    detail::add_input(b, rail(in, false));
    detail::add_input(b, rail(in, true));
    b.outputs.emplace(rail(out, false), reporter_for(rail(out, false)));
    b.outputs.emplace(rail(out, true), reporter_for(rail(out, true)));
    return b;
}

/// Linear threshold unit firing iff sum(w_i x_i) >= theta + 1.
///
/// Input i is injected as w_i strands, each converted by a translator into
/// a shared signal "<out>.sig". A single threshold complex holds theta
/// absorbing stages followed by the output stage; stages reveal strictly in
/// order, so the first theta signals are consumed before any can release
/// the output. Input names default to x1..xn.
inline GateBundle make_threshold_gate(const std::vector<std::uint64_t>& weights, std::uint64_t theta,
                                      const std::string& out, std::vector<std::string> inputs = {}) {
    if (weights.empty()) {
        throw argument_error("threshold gate needs at least one weight");
    }
    if (theta == 0) {
        throw argument_error("threshold 0 is rejected; express an always-on output explicitly");
    }
    for (auto w : weights) {
        if (w == 0) {
            throw argument_error("threshold weights must be positive");
        }
    }
    const std::uint64_t total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
    if (theta > total) {
        throw argument_error("threshold exceeds the sum of weights");
    }
    if (inputs.empty()) {
        for (std::size_t i = 0; i < weights.size(); ++i) {
            inputs.push_back("x" + std::to_string(i + 1));
        }
    }
    if (inputs.size() != weights.size()) {
        throw argument_error("one input name per weight");
    }
    const std::string sig = out + ".sig";
    auto names = inputs;
    names.push_back(out);
    names.push_back(sig);
    detail::require_distinct(names);

    GateBundle b;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        b.complexes.emplace_back(translator_complex(inputs[i], sig), weights[i]);
        detail::add_input(b, inputs[i], weights[i]);
    }
    std::vector<std::string> stages(theta + 1, sig);
    b.complexes.emplace_back(and_complex(stages, out), 1);
    b.outputs.emplace(out, reporter_for(out));
    return b;
}

enum class RailState { zero, one, absent, invalid };

inline const char* to_string(RailState r) {
    switch (r) {
        case RailState::zero: return "0";
        case RailState::one: return "1";
        case RailState::absent: return "absent";
        case RailState::invalid: return "invalid";
    }
    return "?";
}

/// Reads a dual-rail signal; both rails present is an invalid encoding.
inline RailState read_dual_rail(const SolutionState& s, const std::string& name) {
    const bool r0 = present(s, reporter_for(rail(name, false)));
    const bool r1 = present(s, reporter_for(rail(name, true)));
    if (r0 && r1) return RailState::invalid;
    if (r1) return RailState::one;
    if (r0) return RailState::zero;
    return RailState::absent;
}

/// Waste species with the toeholds each could leak into when the leak rate is positive.
struct WasteReport {
    struct LeakSite {
        GateComplex complex;
        std::size_t toehold;
    };
    struct StrandEntry {
        Strand strand;
        std::uint64_t count;
        std::vector<LeakSite> leak_sites;
    };
    std::vector<StrandEntry> strands;
    std::vector<std::pair<GateComplex, std::uint64_t>> complexes;

    std::uint64_t total() const {
        std::uint64_t n = 0;
        for (const auto& s : strands) n += s.count;
        for (const auto& c : complexes) n += c.second;
        return n;
    }
};

inline WasteReport waste_census(const SolutionState& s) {
    WasteReport r;
    for (const auto& [w, n] : s.waste_strands) {
        WasteReport::StrandEntry e{w, n, {}};
        for (const auto& [cx, ncx] : s.complexes) {
            for (std::size_t p : cx.exposed_toeholds()) {
                if (w.front().binds(cx.backbone()[p])) {
                    e.leak_sites.push_back({cx, p});
                }
            }
        }
        r.strands.push_back(std::move(e));
    }
    for (const auto& [c, n] : s.waste_complexes) {
        r.complexes.emplace_back(c, n);
    }
    return r;
}

/// Distinct domain ids (plain and complement counted once) over the complexes and inputs of a bundle.
inline std::size_t distinct_domains(const GateBundle& b) {
    std::set<std::string> ids;
    auto add = [&](const Strand& s) {
        for (const auto& d : s.domains()) ids.insert(d.id);
    };
    for (const auto& [c, n] : b.complexes) {
        add(c.backbone());
        for (const auto& inc : c.incumbents()) add(inc.strand);
    }
    for (const auto& [name, in] : b.inputs) add(in.strand);
    return ids.size();
}

}  // namespace strandbench::dsd
