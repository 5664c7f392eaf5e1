#include "strandbench/feasibility.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace strandbench;
using namespace strandbench::feasibility;

TEST(PathCount, SmallValues) {
    EXPECT_EQ(path_count(1), 1);
    EXPECT_EQ(path_count(10), 3628800);
    EXPECT_THROW(path_count(0), argument_error);
}

TEST(PathCount, SixtyTwoCities) {
    const double v = static_cast<double>(path_count(62));
    EXPECT_NEAR(v / 3.15e85, 1.0, 0.005);
    EXPECT_NEAR(std::log(v), std::lgamma(63.0), 1e-9);
}

TEST(PathCount, Recurrence) {
    for (std::uint64_t n = 2; n <= 100; ++n) {
        ASSERT_EQ(path_count(n), path_count(n - 1) * n) << n;
    }
}

TEST(StrandLength, Examples) {
    EXPECT_EQ(path_strand_length(62, 150), 18450u);
    EXPECT_EQ(path_strand_length(1, 150), 150u);
    EXPECT_EQ(path_strand_length(5, 10), 90u);
}

TEST(Mass, SixtyTwoCities) {
    EXPECT_NEAR(total_mass_kg(TspQuery{}) / 6.37e67, 1.0, 0.02);
}

TEST(Mass, CancelsAvogadro) {
    TspQuery q;
    q.n = 1;
    q.copies = 1;
    q.seg_len = 1;
    q.mass_per_bp = 602.214076;
    EXPECT_NEAR(total_mass_kg(q) / 1e-24, 1.0, 1e-12);
}

TEST(Mass, TenCitiesOracle) {
    // 10! * 100 copies * 19 segments of 150 bp, in plain integer and long double arithmetic
    std::uint64_t bases = 3628800ull * 100ull * 2850ull;
    const long double kg = static_cast<long double>(bases) * 660.0L / 6.02214076e23L / 1000.0L;
    TspQuery q;
    q.n = 10;
    EXPECT_NEAR(total_mass_kg(q) / static_cast<double>(kg), 1.0, 1e-12);
}

TEST(Mass, Monotone) {
    TspQuery base;
    base.n = 8;
    const double m0 = total_mass_kg(base);
    auto bump = base;
    bump.n = 9;
    EXPECT_GT(total_mass_kg(bump), m0);
    bump = base;
    bump.copies = 101;
    EXPECT_GT(total_mass_kg(bump), m0);
    bump = base;
    bump.seg_len = 151;
    EXPECT_GT(total_mass_kg(bump), m0);
    bump = base;
    bump.mass_per_bp = 661;
    EXPECT_GT(total_mass_kg(bump), m0);
    bump = base;
    bump.mass_per_bp = 0;
    EXPECT_THROW(total_mass_kg(bump), argument_error);
}

TEST(Strands, Formula) {
    EXPECT_EQ(strands_required(62), 2015u);
    EXPECT_EQ(strands_required(1), 2u);
    EXPECT_EQ(strands_required(10), 65u);
}

TEST(Capacity, Bounds) {
    EXPECT_EQ(unique_capacity(1), 4);
    EXPECT_EQ(min_length_for(2015), 6u);
    EXPECT_EQ(min_length_for(BigInt(1) << 20), 10u);
    EXPECT_EQ(min_length_for((BigInt(1) << 20) + 1), 11u);
    EXPECT_EQ(min_length_for(1), 1u);
    EXPECT_THROW(min_length_for(0), argument_error);
}

TEST(Report, TableRows) {
    const auto r = comparison_report();
    for (const char* s : {"one bit per cubic nanometer", "one bit per 10^12 cubic nanometers",
                          "10^8 to 10^12 operations per second", "10^14 to 10^20 operations per second (ligation)",
                          "10^9 operations per Joule", "2x10^19 operations per Joule", "5.0e-20", "1.0e-09"}) {
        EXPECT_NE(r.find(s), std::string::npos) << s;
    }
    EXPECT_DOUBLE_EQ(dna_profile().joules_per_operation, 5e-20);
}
