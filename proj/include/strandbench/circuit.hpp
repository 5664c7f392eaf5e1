#pragma once

#include "strandbench/dsd/engine.hpp"
#include "strandbench/dsd/gates.hpp"
#include "strandbench/dsd/species.hpp"
#include "strandbench/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace strandbench::circuit {

enum class GateKind { And, Or, Not };

inline const char* to_string(GateKind k) {
    switch (k) {
        case GateKind::And: return "AND";
        case GateKind::Or: return "OR";
        case GateKind::Not: return "NOT";
    }
    return "?";
}

struct Assignment {
    std::string wire;
    GateKind kind;
    std::vector<std::string> args;
    std::size_t line = 0;  // source line, not part of equality

    friend bool operator==(const Assignment& a, const Assignment& b) {
        return a.wire == b.wire && a.kind == b.kind && a.args == b.args;
    }
};

/// Parsed circuit. Assignments are in definition order, which is a
/// topological order because every wire is defined before use.
struct CircuitAst {
    std::vector<std::string> inputs;
    std::vector<Assignment> assignments;
    std::vector<std::string> outputs;

    friend bool operator==(const CircuitAst&, const CircuitAst&) = default;
};

inline constexpr std::size_t max_and_arity = 8;

namespace detail {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline bool is_keyword(std::string_view s) {
    return s == "inputs" || s == "outputs" || s == "AND" || s == "OR" || s == "NOT";
}

/// Cursor over one source line; columns are 1-based.
class LineCursor {
  public:
    LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) {
            ++pos_;
        }
    }
    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }
    std::size_t column() const { return pos_ + 1; }

    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    std::string identifier(const char* what) {
        skip_space();
        if (pos_ >= text_.size() || !ident_start(text_[pos_])) {
            fail(std::string("expected ") + what);
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    [[noreturn]] void fail(const std::string& msg) const { throw input_error(msg, line_, column()); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t col) const { throw input_error(msg, line_, col); }

  private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the line-oriented circuit language:
///
///     # comment
///     inputs a b c
///     w = AND(a, b)        # AND takes 2..8 arguments
///     y = OR(w, c)
///     z = NOT(y)
///     outputs y z
///
/// Throws input_error with line and column on the first problem.
inline CircuitAst parse_circuit(std::string_view text) {
    CircuitAst ast;

    // first pass: where each wire is defined, for use-before-definition messages
    std::map<std::string, std::size_t> defined_on;
    {
        std::size_t line_no = 0;
        std::istringstream in{std::string(text)};
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            const auto hash = raw.find('#');
            std::string_view line(raw);
            if (hash != std::string::npos) line = line.substr(0, hash);
            detail::LineCursor cur(line, line_no);
            if (cur.at_end()) continue;
            try {
                auto head = cur.identifier("statement");
                if (!detail::is_keyword(head) && cur.peek('=')) {
                    defined_on.emplace(head, line_no);
                }
            } catch (const input_error&) {
                // reported by the main pass
            }
        }
    }

    std::map<std::string, std::size_t> known;  // name -> line it was introduced
    std::size_t outputs_line = 0;
    std::vector<std::pair<std::string, std::size_t>> output_cols;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        detail::LineCursor cur(line, line_no);
        if (cur.at_end()) continue;

        const std::size_t head_col = cur.column();
        const std::string head = cur.identifier("a statement");
        if (head == "inputs" || head == "outputs") {
            const bool is_inputs = head == "inputs";
            if (cur.at_end()) {
                cur.fail(std::string("'") + head + "' needs at least one name");
            }
            if (!is_inputs) {
                outputs_line = line_no;
            }
            while (!cur.at_end()) {
                const std::size_t col = cur.column();
                const std::string name = cur.identifier("a name");
                if (detail::is_keyword(name)) {
                    cur.fail_at("'" + name + "' is a reserved word", col);
                }
                if (is_inputs) {
                    if (known.contains(name)) {
                        cur.fail_at("redefinition of '" + name + "' (first defined on line " +
                                        std::to_string(known[name]) + ")",
                                    col);
                    }
                    known.emplace(name, line_no);
                    ast.inputs.push_back(name);
                } else {
                    for (const auto& [o, c] : output_cols) {
                        if (o == name) {
                            cur.fail_at("output '" + name + "' listed twice", col);
                        }
                    }
                    output_cols.emplace_back(name, col);
                    ast.outputs.push_back(name);
                }
            }
            continue;
        }
        if (detail::is_keyword(head)) {
            cur.fail_at("unexpected '" + head + "'", head_col);
        }

        // assignment
        if (known.contains(head)) {
            cur.fail_at("redefinition of '" + head + "' (first defined on line " + std::to_string(known[head]) + ")",
                        head_col);
        }
        cur.expect('=');
        cur.skip_space();
        const std::size_t kind_col = cur.column();
        const std::string kind_name = cur.identifier("a gate name (AND, OR, NOT)");
        GateKind kind;
        if (kind_name == "AND") {
            kind = GateKind::And;
        } else if (kind_name == "OR") {
            kind = GateKind::Or;
        } else if (kind_name == "NOT") {
            kind = GateKind::Not;
        } else {
            cur.fail_at("unknown gate '" + kind_name + "' (expected AND, OR or NOT)", kind_col);
        }
        cur.expect('(');
        Assignment a{head, kind, {}, line_no};
        while (true) {
            cur.skip_space();
            const std::size_t col = cur.column();
            const std::string arg = cur.identifier("an argument name");
            if (arg == head) {
                cur.fail_at("cycle: '" + head + "' depends on itself", col);
            }
            if (!known.contains(arg)) {
                if (auto it = defined_on.find(arg); it != defined_on.end()) {
                    cur.fail_at("'" + arg + "' is used before its definition on line " + std::to_string(it->second) +
                                    " (circuits must be acyclic, defined before use)",
                                col);
                }
                cur.fail_at("unknown identifier '" + arg + "'", col);
            }
            a.args.push_back(arg);
            if (cur.peek(',')) {
                cur.expect(',');
                continue;
            }
            break;
        }
        cur.expect(')');
        if (!cur.at_end()) {
            cur.fail("unexpected text after gate");
        }
        const std::size_t n = a.args.size();
        const bool arity_ok = (kind == GateKind::Not && n == 1) || (kind == GateKind::Or && n == 2) ||
                              (kind == GateKind::And && n >= 2 && n <= max_and_arity);
        if (!arity_ok) {
            const char* want = kind == GateKind::Not ? "1 argument" : kind == GateKind::Or ? "2 arguments"
                                                                                           : "2 to 8 arguments";
            cur.fail_at(std::string(to_string(kind)) + " takes " + want + ", got " + std::to_string(n), kind_col);
        }
        known.emplace(head, line_no);
        ast.assignments.push_back(std::move(a));
    }

    if (ast.inputs.empty()) {
        throw input_error("circuit declares no inputs", line_no == 0 ? 1 : line_no, 1);
    }
    if (ast.outputs.empty()) {
        throw input_error("circuit declares no outputs", line_no == 0 ? 1 : line_no, 1);
    }
    std::set<std::string> wires;
    for (const auto& a : ast.assignments) wires.insert(a.wire);
    for (const auto& [name, col] : output_cols) {
        if (!wires.contains(name)) {
            throw input_error(known.contains(name) ? "output '" + name + "' must name a gate wire, not an input"
                                                   : "unknown identifier '" + name + "' in outputs",
                              outputs_line, col);
        }
    }
    return ast;
}

/// Canonical source text; parse(print(ast)) == ast.
inline std::string print_circuit(const CircuitAst& ast) {
    std::string out = "inputs";
    for (const auto& i : ast.inputs) out += " " + i;
    out += "\n";
    for (const auto& a : ast.assignments) {
        out += a.wire + " = " + to_string(a.kind) + "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            out += (i ? ", " : "") + a.args[i];
        }
        out += ")\n";
    }
    out += "outputs";
    for (const auto& o : ast.outputs) out += " " + o;
    return out + "\n";
}

/// Longest input-to-gate chain, counting gates.
inline std::size_t circuit_depth(const CircuitAst& ast) {
    std::map<std::string, std::size_t> depth;
    std::size_t best = 0;
    for (const auto& a : ast.assignments) {
        std::size_t d = 0;
        for (const auto& arg : a.args) {
            if (auto it = depth.find(arg); it != depth.end()) d = std::max(d, it->second);
        }
        depth[a.wire] = d + 1;
        best = std::max(best, d + 1);
    }
    return best;
}

/// Direct boolean evaluation, used as the reference for compiled circuits.
inline std::map<std::string, bool> evaluate_ast(const CircuitAst& ast, const std::map<std::string, bool>& inputs) {
    std::map<std::string, bool> v;
    for (const auto& i : ast.inputs) {
        auto it = inputs.find(i);
        if (it == inputs.end()) {
            throw argument_error("no value for input '" + i + "'");
        }
        v[i] = it->second;
    }
    for (const auto& a : ast.assignments) {
        bool r = false;
        switch (a.kind) {
            case GateKind::And:
                r = std::all_of(a.args.begin(), a.args.end(), [&](const auto& x) { return v.at(x); });
                break;
            case GateKind::Or:
                r = std::any_of(a.args.begin(), a.args.end(), [&](const auto& x) { return v.at(x); });
                break;
            case GateKind::Not: r = !v.at(a.args.front()); break;
        }
        v[a.wire] = r;
    }
    std::map<std::string, bool> out;
    for (const auto& o : ast.outputs) out[o] = v.at(o);
    return out;
}

struct CompileOptions {
    bool multi_input = true;
    bool dual_rail = false;
};

/// A complex template, its copy number and the AST gate it implements.
struct CompiledComplex {
    dsd::GateComplex complex;
    std::uint64_t copies;
    std::size_t gate;
};

/// Where a signal comes from and which gates read it. Primary inputs have no producer.
struct SignalInfo {
    std::optional<std::size_t> producer;
    std::set<std::size_t> consumers;
};

struct CompileStats {
    std::size_t gates = 0;
    std::size_t depth = 0;
    std::size_t distinct_oligos = 0;
    std::size_t complexes = 0;
    std::size_t input_strands = 0;
    std::size_t reporters = 0;
};

/// Stable key=value lines, one per statistic.
inline std::string format_stats(const CompileStats& s) {
    return "gates=" + std::to_string(s.gates) + "\ndepth=" + std::to_string(s.depth) +
           "\ndistinct_oligos=" + std::to_string(s.distinct_oligos) + "\ncomplexes=" + std::to_string(s.complexes) +
           "\ninput_strands=" + std::to_string(s.input_strands) + "\nreporters=" + std::to_string(s.reporters) + "\n";
}

struct CompileOutput {
    CompileOptions options;
    std::vector<std::string> warnings;
    std::vector<CompiledComplex> complexes;
    dsd::SolutionState initial_state;
    /// input name -> value -> strands injected for that value
    std::map<std::string, std::map<bool, dsd::InputTemplate>> input_map;
    /// output name -> rail value -> reporter (single rail only has `true`)
    std::map<std::string, std::map<bool, dsd::Reporter>> output_map;
    std::map<std::string, SignalInfo> signals;
    CompileStats stats;
};

namespace detail {

/// AND chain over signals (one input = translator), owned by one AST gate.
struct Primitive {
    std::vector<std::string> inputs;
    std::string output;
    std::size_t gate;
};

inline void lower_and(std::vector<Primitive>& prims, const std::vector<std::string>& ins, const std::string& out,
                      std::size_t gate, bool multi_input) {
    if (multi_input || ins.size() <= 2) {
        prims.push_back({ins, out, gate});
        return;
    }
    std::string carry = ins[0];
    for (std::size_t i = 1; i < ins.size(); ++i) {
        const std::string stage = i + 1 == ins.size() ? out : out + "~" + std::to_string(i);
        prims.push_back({{carry, ins[i]}, stage, gate});
        carry = stage;
    }
}

inline std::vector<std::string> rails_of(const std::vector<std::string>& names, bool bit) {
    std::vector<std::string> out;
    for (const auto& n : names) out.push_back(dsd::rail(n, bit));
    return out;
}

}  // namespace detail

/// Compiles to a DSD species set. Wires become shared signal domains between
/// producer and consumers; intermediate cascade stages get fresh signals.
///
/// Fan-out is handled by copy number: a gate is instantiated once per
/// downstream consumer of its output (at least once), and primary inputs
/// are injected with one strand per consuming gate copy.
inline CompileOutput compile(const CircuitAst& ast, CompileOptions opts) {
    CompileOutput out;
    const bool has_not = std::any_of(ast.assignments.begin(), ast.assignments.end(),
                                     [](const Assignment& a) { return a.kind == GateKind::Not; });
    if (has_not && !opts.dual_rail) {
        opts.dual_rail = true;
        out.warnings.push_back("circuit contains NOT; dual-rail encoding enabled");
    }
    out.options = opts;

    std::vector<detail::Primitive> prims;
    for (std::size_t g = 0; g < ast.assignments.size(); ++g) {
        const auto& a = ast.assignments[g];
        if (!opts.dual_rail) {
            if (a.kind == GateKind::And) {
                detail::lower_and(prims, a.args, a.wire, g, opts.multi_input);
            } else {
                for (const auto& arg : a.args) prims.push_back({{arg}, a.wire, g});
            }
            continue;
        }
        const std::string y1 = dsd::rail(a.wire, true);
        const std::string y0 = dsd::rail(a.wire, false);
        switch (a.kind) {
            case GateKind::And:
                detail::lower_and(prims, detail::rails_of(a.args, true), y1, g, opts.multi_input);
                for (const auto& arg : a.args) prims.push_back({{dsd::rail(arg, false)}, y0, g});
                break;
            case GateKind::Or:
                for (const auto& arg : a.args) prims.push_back({{dsd::rail(arg, true)}, y1, g});
                detail::lower_and(prims, detail::rails_of(a.args, false), y0, g, opts.multi_input);
                break;
            case GateKind::Not:
                prims.push_back({{dsd::rail(a.args[0], true)}, y0, g});
                prims.push_back({{dsd::rail(a.args[0], false)}, y1, g});
                break;
        }
    }

    // copy numbers, consumers before producers
    std::map<std::string, std::uint64_t> demand;
    for (const auto& o : ast.outputs) {
        if (opts.dual_rail) {
            demand[dsd::rail(o, false)] += 1;
            demand[dsd::rail(o, true)] += 1;
        } else {
            demand[o] += 1;
        }
    }
    std::vector<std::uint64_t> copies(prims.size(), 1);
    for (std::size_t i = prims.size(); i-- > 0;) {
        copies[i] = std::max<std::uint64_t>(1, demand[prims[i].output]);
        for (const auto& in : prims[i].inputs) demand[in] += copies[i];
    }

    for (const auto& in : ast.inputs) {
        out.signals[opts.dual_rail ? dsd::rail(in, false) : in];
        if (opts.dual_rail) out.signals[dsd::rail(in, true)];
    }
    for (std::size_t i = 0; i < prims.size(); ++i) {
        const auto& p = prims[i];
        out.signals[p.output].producer = p.gate;
        for (const auto& in : p.inputs) out.signals[in].consumers.insert(p.gate);
        out.complexes.push_back({dsd::and_complex(p.inputs, p.output), copies[i], p.gate});
        dsd::add_to(out.initial_state.complexes, out.complexes.back().complex, copies[i]);
    }

    for (const auto& in : ast.inputs) {
        auto& slot = out.input_map[in];
        if (opts.dual_rail) {
            for (bool bit : {false, true}) {
                const auto sig = dsd::rail(in, bit);
                slot.emplace(bit, dsd::InputTemplate{dsd::signal_strand(sig), std::max<std::uint64_t>(1, demand[sig])});
            }
        } else {
            slot.emplace(true, dsd::InputTemplate{dsd::signal_strand(in), std::max<std::uint64_t>(1, demand[in])});
        }
    }
    for (const auto& o : ast.outputs) {
        auto& slot = out.output_map[o];
        if (opts.dual_rail) {
            slot.emplace(false, dsd::reporter_for(dsd::rail(o, false)));
            slot.emplace(true, dsd::reporter_for(dsd::rail(o, true)));
        } else {
            slot.emplace(true, dsd::reporter_for(o));
        }
    }

    std::set<dsd::Strand> oligos;
    std::set<dsd::GateComplex> templates;
    std::set<dsd::Strand> injected;
    for (const auto& c : out.complexes) {
        templates.insert(c.complex);
        oligos.insert(c.complex.backbone());
        for (const auto& inc : c.complex.incumbents()) oligos.insert(inc.strand);
    }
    for (const auto& [name, by_value] : out.input_map) {
        for (const auto& [bit, t] : by_value) {
            oligos.insert(t.strand);
            injected.insert(t.strand);
        }
    }
    out.stats.gates = ast.assignments.size();
    out.stats.depth = circuit_depth(ast);
    out.stats.distinct_oligos = oligos.size();
    out.stats.complexes = templates.size();
    out.stats.input_strands = injected.size();
    for (const auto& [name, rails] : out.output_map) out.stats.reporters += rails.size();
    return out;
}

/// Domains used by a complex that do not belong to a signal the complex's
/// gate produces or consumes. Empty means every gate's domains are fresh
/// apart from declared wire connections.
inline std::vector<std::string> freshness_violations(const CompileOutput& c) {
    std::vector<std::string> bad;
    auto signal_of = [](const std::string& id) { return id.substr(0, id.rfind('.')); };
    for (const auto& cc : c.complexes) {
        auto check = [&](const dsd::Strand& s) {
            for (const auto& d : s.domains()) {
                const auto sig = signal_of(d.id);
                const auto it = c.signals.find(sig);
                const bool ok = it != c.signals.end() &&
                                (it->second.producer == cc.gate || it->second.consumers.contains(cc.gate));
                if (!ok) {
                    bad.push_back("gate " + std::to_string(cc.gate) + " uses domain '" + d.id +
                                  "' outside its declared wires");
                }
            }
        };
        check(cc.complex.backbone());
        for (const auto& inc : cc.complex.incumbents()) check(inc.strand);
    }
    return bad;
}

/// Sum over complex copies of the displacements each can undergo; bounds
/// the event count of any leak-free run.
inline std::size_t displacement_bound(const CompileOutput& c) {
    std::size_t n = 0;
    for (const auto& cc : c.complexes) {
        n += cc.copies * cc.complex.incumbents().size();
    }
    return n;
}

class evaluation_timeout : public std::runtime_error {
  public:
    evaluation_timeout(std::size_t max_events, std::vector<dsd::ReactionEvent> trace)
        : std::runtime_error("simulation not quiescent after " + std::to_string(max_events) + " events"),
          trace_(std::move(trace)) {}

    const std::vector<dsd::ReactionEvent>& trace() const noexcept { return trace_; }

  private:
    std::vector<dsd::ReactionEvent> trace_;
};

class encoding_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Initial state plus the strands for one input assignment.
inline dsd::SolutionState inject(const CompileOutput& c, const std::map<std::string, bool>& assignment) {
    dsd::SolutionState s = c.initial_state;
    for (const auto& [name, by_value] : c.input_map) {
        auto it = assignment.find(name);
        if (it == assignment.end()) {
            throw argument_error("no value for input '" + name + "'");
        }
        if (auto t = by_value.find(it->second); t != by_value.end()) {
            dsd::add_to(s.free, t->second.strand, t->second.copies);
        }
    }
    for (const auto& [name, v] : assignment) {
        if (!c.input_map.contains(name)) {
            throw argument_error("assignment names unknown input '" + name + "'");
        }
    }
    return s;
}

/// Output bits read from a final state. Throws encoding_error for a
/// dual-rail output with both rails or neither.
inline std::map<std::string, bool> read_outputs(const CompileOutput& c, const dsd::SolutionState& s) {
    std::map<std::string, bool> out;
    for (const auto& [name, rails] : c.output_map) {
        if (!c.options.dual_rail) {
            out[name] = dsd::present(s, rails.at(true));
            continue;
        }
        const bool r0 = dsd::present(s, rails.at(false));
        const bool r1 = dsd::present(s, rails.at(true));
        if (r0 == r1) {
            throw encoding_error("output '" + name + "' has " + (r0 ? "both rails" : "no rail") + " present");
        }
        out[name] = r1;
    }
    return out;
}

struct Evaluation {
    std::map<std::string, bool> outputs;
    dsd::SimulationResult run;
};

inline Evaluation evaluate(const CompileOutput& c, const std::map<std::string, bool>& assignment, std::uint64_t seed,
                           double leak_rate, std::size_t max_events = 100'000) {
    auto run = dsd::simulate(inject(c, assignment), seed, leak_rate, max_events);
    if (!run.quiescent) {
        throw evaluation_timeout(max_events, std::move(run.trace));
    }
    auto outputs = read_outputs(c, run.final_state);
    return {std::move(outputs), std::move(run)};
}

}  // namespace strandbench::circuit
