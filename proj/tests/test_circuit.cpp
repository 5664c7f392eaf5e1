#include "strandbench/circuit.hpp"
#include "strandbench/json_io.hpp"
#include "strandbench/random.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace strandbench;
using namespace strandbench::circuit;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::filesystem::path> circuit_fixtures() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(std::string(STRANDBENCH_FIXTURES) + "/circuits")) {
        if (e.is_regular_file() && e.path().extension() == ".circ") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::map<std::string, bool> assignment_for(const CircuitAst& ast, unsigned mask) {
    std::map<std::string, bool> a;
    for (std::size_t i = 0; i < ast.inputs.size(); ++i) a[ast.inputs[i]] = ((mask >> i) & 1u) != 0;
    return a;
}

void expect_error_at(const std::string& text, std::size_t line, std::size_t col, const std::string& fragment) {
    try {
        parse_circuit(text);
        ADD_FAILURE() << "no error for:\n" << text;
    } catch (const input_error& e) {
        EXPECT_EQ(e.line(), line) << e.what();
        EXPECT_EQ(e.column(), col) << e.what();
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

/// Random well-formed program text with noise: comments, blank lines, odd spacing.
std::string random_program(Rng& rng) {
    const std::size_t n_in = 1 + rng.below(4);
    std::vector<std::string> names;
    std::string text = rng.bernoulli(0.5) ? "# generated\n" : "";
    text += "inputs";
    for (std::size_t i = 0; i < n_in; ++i) {
        names.push_back("in" + std::to_string(i));
        text += std::string(1 + rng.below(2), ' ') + names.back();
    }
    text += "\n";
    std::vector<std::string> wires;
    const std::size_t n_gates = 1 + rng.below(8);
    for (std::size_t g = 0; g < n_gates; ++g) {
        const std::string w = "g" + std::to_string(g);
        const auto kind = rng.below(3);
        std::size_t arity = kind == 0 ? 2 + rng.below(3) : kind == 1 ? 2 : 1;
        text += w + (rng.bernoulli(0.5) ? " = " : "=") + (kind == 0 ? "AND" : kind == 1 ? "OR" : "NOT") + "(";
        for (std::size_t i = 0; i < arity; ++i) {
            text += (i ? (rng.bernoulli(0.5) ? ", " : ",") : "") + names[rng.below(names.size())];
        }
        text += ")" + std::string(rng.bernoulli(0.3) ? "  # note" : "") + "\n";
        if (rng.bernoulli(0.2)) text += "\n";
        names.push_back(w);
        wires.push_back(w);
    }
    text += "outputs";
    for (const auto& w : wires) {
        if (w == wires.back() || rng.bernoulli(0.3)) text += " " + w;
    }
    return text + "\n";
}

}  // namespace

TEST(Parse, SingleAnd) {
    const auto ast = parse_circuit("inputs a b\ny = AND(a, b)\noutputs y");
    EXPECT_EQ(ast.inputs, (std::vector<std::string>{"a", "b"}));
    ASSERT_EQ(ast.assignments.size(), 1u);
    EXPECT_EQ(ast.assignments[0].kind, GateKind::And);
    EXPECT_EQ(circuit_depth(ast), 1u);
}

TEST(Parse, Errors) {
    expect_error_at("inputs a b\ny = AND(a, y)\noutputs y\n", 2, 12, "cycle");
    expect_error_at("inputs a b\nx = AND(a, z)\nz = OR(a, b)\noutputs x\n", 2, 12, "before its definition");
    expect_error_at("inputs a b\ny = AND(a, q)\noutputs y\n", 2, 12, "unknown identifier");
    expect_error_at("inputs a b\ny = AND(a, b)\ny = OR(a, b)\noutputs y\n", 3, 1, "redefinition");
    expect_error_at("inputs a a\n", 1, 10, "redefinition");
    expect_error_at("inputs a b\ny = NOT(a, b)\noutputs y\n", 2, 5, "NOT takes 1");
    expect_error_at("inputs a b\ny = OR(a)\noutputs y\n", 2, 5, "OR takes 2");
    expect_error_at("inputs a\ny = AND(a, a, a, a, a, a, a, a, a)\noutputs y\n", 2, 5, "AND takes 2 to 8");
    expect_error_at("inputs a b\ny = XOR(a, b)\noutputs y\n", 2, 5, "unknown gate");
    expect_error_at("inputs a b\ny = AND(a, b) z\noutputs y\n", 2, 15, "unexpected text");
    expect_error_at("inputs a b\ny = AND(a, b)\n", 2, 1, "no outputs");
    expect_error_at("y = AND(a, b)\noutputs y\n", 1, 9, "unknown identifier");
    expect_error_at("", 1, 1, "no inputs");
    expect_error_at("inputs a b\ny = AND(a, b)\noutputs a\n", 3, 9, "gate wire");
    expect_error_at("inputs a b\ny = AND(a, b)\noutputs q\n", 3, 9, "unknown identifier");
    expect_error_at("inputs a b\ny = AND(a, b)\noutputs y y\n", 3, 11, "twice");
}

TEST(Parse, PrintParseFixpoint) {
    Rng rng(2024);
    for (int i = 0; i < 300; ++i) {
        const auto text = random_program(rng);
        const auto ast = parse_circuit(text);
        const auto printed = print_circuit(ast);
        EXPECT_EQ(parse_circuit(printed), ast) << text;
        EXPECT_EQ(print_circuit(parse_circuit(printed)), printed);
    }
}

TEST(EvaluateAst, Basics) {
    const auto ast = parse_circuit("inputs a b\nn = NOT(a)\ny = OR(n, b)\nz = AND(a, b, y)\noutputs y z\n");
    for (unsigned m = 0; m < 4; ++m) {
        const bool a = m & 1u, b = m & 2u;
        const auto out = evaluate_ast(ast, {{"a", a}, {"b", b}});
        EXPECT_EQ(out.at("y"), !a || b);
        EXPECT_EQ(out.at("z"), a && b);
    }
    EXPECT_THROW(evaluate_ast(ast, {{"a", true}}), argument_error);
}

TEST(Compile, SingleAndShape) {
    const auto c = compile(parse_circuit("inputs a b\ny = AND(a, b)\noutputs y\n"), {});
    EXPECT_EQ(c.stats.complexes, 1u);
    EXPECT_EQ(c.stats.input_strands, 2u);
    EXPECT_EQ(c.stats.reporters, 1u);
    EXPECT_EQ(c.stats.gates, 1u);
    EXPECT_EQ(c.stats.depth, 1u);
    EXPECT_TRUE(c.warnings.empty());
}

TEST(Compile, MultiInputBeatsCascade) {
    const auto ast = parse_circuit("inputs a b c\ny = AND(a, b, c)\noutputs y\n");
    const auto multi = compile(ast, {true, false});
    const auto cascade = compile(ast, {false, false});
    EXPECT_LT(multi.stats.distinct_oligos, cascade.stats.distinct_oligos);
    EXPECT_EQ(multi.stats.complexes, 1u);
    EXPECT_EQ(cascade.stats.complexes, 2u);
}

TEST(Compile, NotForcesDualRail) {
    const auto c = compile(parse_circuit("inputs a\ny = NOT(a)\noutputs y\n"), {true, false});
    EXPECT_TRUE(c.options.dual_rail);
    ASSERT_EQ(c.warnings.size(), 1u);
    for (bool a : {false, true}) {
        EXPECT_EQ(evaluate(c, {{"a", a}}, 0, 0.0).outputs.at("y"), !a);
    }
}

TEST(Compile, FreshnessAndTamper) {
    for (const auto& path : circuit_fixtures()) {
        const auto ast = parse_circuit(slurp(path));
        for (bool multi : {true, false}) {
            EXPECT_TRUE(freshness_violations(compile(ast, {multi, false})).empty()) << path;
            EXPECT_TRUE(freshness_violations(compile(ast, {multi, true})).empty()) << path;
        }
    }
    auto c = compile(parse_circuit(slurp(std::string(STRANDBENCH_FIXTURES) + "/circuits/majority.circ")), {});
    c.complexes.front().gate = 4;  // claim the first AND belongs to the last OR
    EXPECT_FALSE(freshness_violations(c).empty());
}

TEST(Compile, FixturesMatchAstBothModes) {
    for (const auto& path : circuit_fixtures()) {
        const auto ast = parse_circuit(slurp(path));
        ASSERT_LE(ast.inputs.size(), 6u);
        ASSERT_LE(ast.assignments.size(), 10u);
        for (bool multi : {true, false}) {
            const auto c = compile(ast, {multi, false});
            EXPECT_TRUE(freshness_violations(c).empty());
            for (unsigned m = 0; m < (1u << ast.inputs.size()); m += 1 + (m % 3)) {
                const auto a = assignment_for(ast, m);
                const auto ev = evaluate(c, a, m, 0.0);
                EXPECT_EQ(ev.outputs, evaluate_ast(ast, a)) << path << " mask " << m;
                EXPECT_LE(ev.run.trace.size(), displacement_bound(c));
            }
        }
    }
}

TEST(Compile, DualRailMatchesWithoutNot) {
    const auto ast = parse_circuit(slurp(std::string(STRANDBENCH_FIXTURES) + "/circuits/majority.circ"));
    const auto c = compile(ast, {true, true});
    for (unsigned m = 0; m < 8; ++m) {
        const auto a = assignment_for(ast, m);
        EXPECT_EQ(evaluate(c, a, 7, 0.0).outputs, evaluate_ast(ast, a));
    }
}

TEST(Compile, SpeciesAdvantageOnRandomCircuits) {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto ast = parse_circuit(random_program(rng));
        for (bool dual : {false, true}) {
            EXPECT_LE(compile(ast, {true, dual}).stats.distinct_oligos, compile(ast, {false, dual}).stats.distinct_oligos);
        }
    }
}

TEST(Compile, GoldenStats) {
    const auto ast = parse_circuit(slurp(std::string(STRANDBENCH_FIXTURES) + "/circuits/three_level.circ"));
    EXPECT_EQ(ast.assignments.size(), 8u);
    EXPECT_EQ(circuit_depth(ast), 3u);
    const std::string got = "[multi_input]\n" + format_stats(compile(ast, {true, false}).stats) + "[cascade]\n" +
                            format_stats(compile(ast, {false, false}).stats);
    EXPECT_EQ(got, slurp(std::string(STRANDBENCH_FIXTURES) + "/golden/three_level.stats"));
}

TEST(Evaluate, TimeoutCarriesTrace) {
    const auto c = compile(parse_circuit("inputs a b c\ny = AND(a, b, c)\noutputs y\n"), {});
    try {
        evaluate(c, {{"a", true}, {"b", true}, {"c", true}}, 0, 0.0, 1);
        FAIL();
    } catch (const evaluation_timeout& e) {
        EXPECT_EQ(e.trace().size(), 1u);
    }
}

TEST(Evaluate, AssignmentMustCoverInputs) {
    const auto c = compile(parse_circuit("inputs a b\ny = AND(a, b)\noutputs y\n"), {});
    EXPECT_THROW(evaluate(c, {{"a", true}}, 0, 0.0), argument_error);
    EXPECT_THROW(evaluate(c, {{"a", true}, {"b", true}, {"q", true}}, 0, 0.0), argument_error);
}

TEST(Evaluate, JsonRoundTrip) {
    const auto ast = parse_circuit(slurp(std::string(STRANDBENCH_FIXTURES) + "/circuits/xor.circ"));
    const auto c = compile(ast, {});
    const auto back = io::compiled_from_json(io::parse_json(io::to_json(c).dump()));
    EXPECT_EQ(io::to_json(back), io::to_json(c));
    for (unsigned m = 0; m < 4; ++m) {
        const auto a = assignment_for(ast, m);
        EXPECT_EQ(evaluate(back, a, 1, 0.0).outputs, evaluate_ast(ast, a));
    }
}
