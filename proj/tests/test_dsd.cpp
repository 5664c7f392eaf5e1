#include "strandbench/dsd/engine.hpp"
#include "strandbench/dsd/gates.hpp"
#include "strandbench/dsd/species.hpp"
#include "dsd_fixtures.hpp"

#include <gtest/gtest.h>

using namespace strandbench;
using namespace strandbench::dsd;

namespace {

SimulationResult run(const GateBundle& b, const std::set<std::string>& inputs, std::uint64_t seed,
                     double leak = 0.0) {
    const auto initial = b.with_inputs(inputs);
    auto r = simulate(initial, seed, leak, 10000);
    EXPECT_TRUE(r.quiescent);
    EXPECT_EQ(census(r.final_state), census(initial));
    EXPECT_TRUE(testing_support::trace_conserves(r));
    return r;
}

std::set<std::string> subset(const std::vector<std::string>& names, unsigned mask) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if ((mask >> i) & 1u) out.insert(names[i]);
    }
    return out;
}

}  // namespace

TEST(Species, DomainBinding) {
    const auto t = toehold("a.t");
    EXPECT_TRUE(t.binds(t.complement()));
    EXPECT_FALSE(t.binds(t));
    EXPECT_FALSE(t.binds(migration("a.t").complement()));
    EXPECT_THROW(Strand({}), argument_error);
}

TEST(Species, ComplexValidation) {
    const Strand bb({toehold("a.t").complement(), migration("a.m").complement()});
    EXPECT_THROW(GateComplex(bb, {{Strand({toehold("a.t")}), 0, 1, 0}, {Strand({toehold("a.t")}), 0, 1, 0}}),
                 argument_error);
    EXPECT_THROW(GateComplex(bb, {{Strand({toehold("b.t")}), 0, 1, 0}}), argument_error);
    EXPECT_THROW(GateComplex(bb, {{Strand({migration("a.m")}), 1, 3, 0}}), argument_error);
    const GateComplex ok(bb, {{Strand({migration("a.m")}), 1, 2, 0}});
    EXPECT_EQ(ok.exposed_toeholds(), std::vector<std::size_t>{0});
    EXPECT_FALSE(ok.is_spent());
}

TEST(Species, TakeFromGuards) {
    Multiset<Strand> m;
    const Strand s({toehold("a.t")});
    add_to(m, s, 2);
    take_from(m, s, 2);
    EXPECT_TRUE(m.empty());
    EXPECT_THROW(take_from(m, s), std::logic_error);
}

TEST(Engine, AndGateStepByStep) {
    const auto c = and_complex({"a", "b"}, "y");
    EXPECT_EQ(c.exposed_toeholds(), std::vector<std::size_t>{0});
    EXPECT_FALSE(try_displace(signal_strand("b"), c, 0));
    const auto first = try_displace(signal_strand("a"), c, 0);
    ASSERT_TRUE(first);
    ASSERT_TRUE(first->released);
    EXPECT_TRUE(first->released_is_waste());
    EXPECT_EQ(first->product.exposed_toeholds(), std::vector<std::size_t>{2});
    const auto second = try_displace(signal_strand("b"), first->product, 2);
    ASSERT_TRUE(second);
    EXPECT_TRUE(second->product_is_spent());
    EXPECT_FALSE(second->released_is_waste());
    EXPECT_TRUE(present(SolutionState{{{*second->released, 1}}, {}, {}, {}}, reporter_for("y")));
}

TEST(Engine, InvaderMustCoverMigration) {
    // an invader that stops inside the incumbent's migration domain cannot displace it
    const Strand bb({toehold("a.t").complement(), migration("a.m").complement(), migration("b.m").complement()});
    const GateComplex c(bb, {{Strand({migration("a.m"), migration("b.m")}), 1, 3, 0}});
    EXPECT_FALSE(try_displace(signal_strand("a"), c, 0));
}

TEST(Engine, EnumerationAndPropensity) {
    auto s = make_and_gate("a", "b", "y").with_inputs({"a"});
    add_to(s.free, signal_strand("a"), 2);
    const auto ev = enumerate_reactions(s, 0.0);
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_DOUBLE_EQ(propensity(s, ev[0], 0.0), 3.0);
    EXPECT_THROW(enumerate_reactions(s, -1.0), argument_error);
}

TEST(Engine, SimulateDeterministic) {
    const auto b = make_cascade_and({"a", "b", "c", "d"}, "y");
    const auto s = b.with_inputs({"a", "b", "c", "d"});
    const auto r1 = simulate(s, 9, 0.0, 1000);
    const auto r2 = simulate(s, 9, 0.0, 1000);
    EXPECT_EQ(r1.trace, r2.trace);
    EXPECT_EQ(r1.final_state, r2.final_state);
}

TEST(Engine, MaxEventsStopsEarly) {
    const auto b = make_cascade_and({"a", "b", "c"}, "y");
    const auto r = simulate(b.with_inputs({"a", "b", "c"}), 0, 0.0, 2);
    EXPECT_FALSE(r.quiescent);
    EXPECT_EQ(r.trace.size(), 2u);
}

TEST(Gates, AndTruthTable) {
    const auto b = make_and_gate("a", "b", "y");
    for (unsigned m = 0; m < 4; ++m) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto r = run(b, subset({"a", "b"}, m), seed);
            EXPECT_EQ(present(r.final_state, b.outputs.at("y")), m == 3);
        }
    }
}

TEST(Gates, AndEventsAndWaste) {
    const auto b = make_and_gate("a", "b", "y");
    const auto r = run(b, {"a", "b"}, 1);
    EXPECT_EQ(r.trace.size(), 2u);
    const auto w = waste_census(r.final_state);
    EXPECT_EQ(w.total(), 2u);
    ASSERT_EQ(w.strands.size(), 1u);
    EXPECT_EQ(w.complexes.size(), 1u);
    EXPECT_EQ(run(b, {"b"}, 1).trace.size(), 0u);
}

TEST(Gates, OrTruthTable) {
    const auto b = make_or_gate("a", "b", "y");
    for (unsigned m = 0; m < 4; ++m) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            EXPECT_EQ(present(run(b, subset({"a", "b"}, m), seed).final_state, b.outputs.at("y")), m != 0);
        }
    }
}

TEST(Gates, DualRailNot) {
    const auto b = make_not_gate("a", "y");
    for (bool a : {false, true}) {
        const auto r = run(b, {rail("a", a)}, 3);
        EXPECT_EQ(read_dual_rail(r.final_state, "y"), a ? RailState::zero : RailState::one);
    }
    EXPECT_EQ(read_dual_rail(run(b, {}, 0).final_state, "y"), RailState::absent);
    EXPECT_EQ(read_dual_rail(run(b, {rail("a", false), rail("a", true)}, 0).final_state, "y"), RailState::invalid);
}

TEST(Gates, KInputAndBothStyles) {
    for (std::size_t k = 2; k <= 4; ++k) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < k; ++i) names.push_back("i" + std::to_string(i));
        const auto multi = make_multi_input_and(names, "y");
        const auto cascade = make_cascade_and(names, "y");
        for (unsigned m = 0; m < (1u << k); ++m) {
            const bool want = m == (1u << k) - 1;
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                EXPECT_EQ(present(run(multi, subset(names, m), seed).final_state, reporter_for("y")), want);
                EXPECT_EQ(present(run(cascade, subset(names, m), seed).final_state, reporter_for("y")), want);
            }
        }
    }
}

TEST(Gates, MultiInputUsesFewerDomains) {
    const auto multi = make_multi_input_and({"a", "b", "c"}, "y");
    const auto cascade = make_cascade_and({"a", "b", "c"}, "y");
    EXPECT_EQ(distinct_domains(multi), 8u);
    EXPECT_EQ(distinct_domains(cascade), 10u);
    EXPECT_EQ(waste_census(run(multi, {"a", "b", "c"}, 0).final_state).total(), 3u);
    EXPECT_EQ(waste_census(run(cascade, {"a", "b", "c"}, 0).final_state).total(), 4u);
}

TEST(Gates, NameCollisionsRejected) {
    EXPECT_THROW(make_and_gate("a", "a", "y"), argument_error);
    EXPECT_THROW(make_or_gate("a", "b", "a"), argument_error);
    EXPECT_THROW(make_multi_input_and({"a"}, "y"), argument_error);
}

TEST(Gates, ThresholdUnit) {
    // fires iff sum(w_i x_i) >= theta + 1
    const std::vector<std::vector<std::uint64_t>> weight_sets = {{1, 1, 1}, {2, 1}, {1, 2, 3}};
    for (const auto& w : weight_sets) {
        const std::uint64_t total = std::accumulate(w.begin(), w.end(), std::uint64_t{0});
        for (std::uint64_t theta = 1; theta <= total; ++theta) {
            const auto b = make_threshold_gate(w, theta, "y");
            std::vector<std::string> names;
            for (std::size_t i = 0; i < w.size(); ++i) names.push_back("x" + std::to_string(i + 1));
            for (unsigned m = 0; m < (1u << w.size()); ++m) {
                std::uint64_t sum = 0;
                for (std::size_t i = 0; i < w.size(); ++i) sum += ((m >> i) & 1u) ? w[i] : 0;
                for (std::uint64_t seed = 0; seed < 3; ++seed) {
                    EXPECT_EQ(present(run(b, subset(names, m), seed).final_state, reporter_for("y")), sum >= theta + 1)
                        << "theta " << theta << " mask " << m;
                }
            }
        }
    }
    EXPECT_THROW(make_threshold_gate({1, 1}, 0, "y"), argument_error);
    EXPECT_THROW(make_threshold_gate({1, 0}, 1, "y"), argument_error);
    EXPECT_THROW(make_threshold_gate({1, 1}, 3, "y"), argument_error);
}

TEST(Leak, NeverFiresWithoutLeakRate) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto r = simulate(testing_support::leak_cascade_state(), seed, 0.0, 1000);
        EXPECT_TRUE(r.quiescent);
        EXPECT_FALSE(present(r.final_state, testing_support::leak_cascade_output()));
    }
}

TEST(Leak, FiresSometimesAtUnitRate) {
    std::size_t wrong = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto initial = testing_support::leak_cascade_state();
        const auto r = simulate(initial, seed, 1.0, 1000);
        EXPECT_TRUE(r.quiescent);
        EXPECT_EQ(census(r.final_state), census(initial));
        wrong += present(r.final_state, testing_support::leak_cascade_output()) ? 1 : 0;
    }
    EXPECT_GT(wrong, 20u);
    EXPECT_LT(wrong, 90u);
}

TEST(Leak, WasteReportListsLeakSites) {
    const auto w = waste_census(testing_support::leak_cascade_state());
    ASSERT_EQ(w.strands.size(), 1u);
    ASSERT_EQ(w.strands[0].leak_sites.size(), 1u);
    EXPECT_EQ(w.strands[0].leak_sites[0].toehold, 0u);
}
