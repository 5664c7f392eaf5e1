#include "strandbench/tiling.hpp"
#include "strandbench/json_io.hpp"
#include "strandbench/random.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <memory>
#include <sstream>

using namespace strandbench;
using namespace strandbench::tiling;

namespace {

std::vector<bool> bits_of(unsigned v, std::size_t n) {
    std::vector<bool> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(((v >> i) & 1u) != 0);
    return out;
}

std::vector<bool> prefix_xor(const std::vector<bool>& x, bool y0) {
    std::vector<bool> y;
    bool acc = y0;
    for (bool b : x) {
        acc = acc ^ b;
        y.push_back(acc);
    }
    return y;
}

struct Bits {
    explicit Bits(const std::vector<bool>& v) : data(new bool[v.size()]), size(v.size()) {
        std::copy(v.begin(), v.end(), data.get());
    }
    std::span<const bool> span() const { return {data.get(), size}; }
    std::unique_ptr<bool[]> data;
    std::size_t size;
};

}  // namespace

TEST(Attach, MismatchNamesSide) {
    AssemblyGrid g = attach(AssemblyGrid{}, {0, 0}, xor_root_tile());
    try {
        attach(g, {1, 0}, xor_compute_tile(false, true));  // south x1 against root's north x0
        FAIL();
    } catch (const attach_error& e) {
        EXPECT_EQ(e.side(), Side::south);
    }
    EXPECT_THROW(attach(g, {0, 0}, xor_root_tile()), attach_error);
    EXPECT_NO_THROW(attach(g, {1, 0}, xor_compute_tile(true, false)));
}

TEST(TileSet, SevenTilesFivePalette) {
    const auto ts = xor_tile_set();
    EXPECT_EQ(ts.tiles.size(), 7u);
    EXPECT_EQ(ts.palette.size(), 5u);
    EXPECT_NO_THROW(ts.validate());
    TileSet bad = ts;
    bad.tiles[0].east = "zz";
    EXPECT_THROW(bad.validate(), argument_error);
}

TEST(RunXor, Examples) {
    const Bits a(std::vector<bool>{true, false});
    const auto r = run_xor(a.span(), true);
    EXPECT_EQ(r.y, (std::vector<bool>{false, false}));
    EXPECT_EQ(readout(r.grid, Role::output), r.y);
    EXPECT_EQ(readout(r.grid, Role::input), (std::vector<bool>{true, false}));
    const Bits none(std::vector<bool>{});
    EXPECT_THROW(run_xor(none.span(), false), argument_error);
}

TEST(RunXor, PrefixOracleAllLengthEight) {
    for (unsigned v = 0; v < 256; ++v) {
        for (bool y0 : {false, true}) {
            const auto x = bits_of(v, 8);
            const Bits b(x);
            const auto r = run_xor(b.span(), y0);
            ASSERT_EQ(r.y, prefix_xor(x, y0));
            ASSERT_TRUE(adjacency_valid(r.grid));
            ASSERT_EQ(readout(r.grid, Role::output), r.y);
        }
    }
}

TEST(RunXor, TruthTable) {
    const auto t = xor_truth_table();
    const bool want[4][3] = {{false, false, false}, {false, true, true}, {true, false, true}, {true, true, false}};
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(t[i].a, want[i][0]);
        EXPECT_EQ(t[i].b, want[i][1]);
        EXPECT_EQ(t[i].out, want[i][2]);
    }
}

TEST(Generic, MatchesRunXorAtTwoBonds) {
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 1 + rng.below(10);
        const auto x = bits_of(static_cast<unsigned>(rng.below(1u << n)), n);
        const bool y0 = rng.bernoulli(0.5);
        const Bits b(x);
        const auto run = assemble_generic(xor_tile_set(), xor_seed_grid(b.span(), y0), 1000, rng.next(), 2);
        EXPECT_TRUE(run.stuck);
        EXPECT_EQ(run.attachments, n);
        EXPECT_TRUE(adjacency_valid(run.grid));
        EXPECT_EQ(run.grid, run_xor(b.span(), y0).grid);
    }
}

TEST(Generic, SingleBondCanMisassemble) {
    // with one bond a computation tile can sit on its input before the carry arrives
    const Bits b(std::vector<bool>{false, false, false, false});
    bool wrong = false;
    for (std::uint64_t seed = 0; seed < 50 && !wrong; ++seed) {
        const auto run = assemble_generic(xor_tile_set(), xor_seed_grid(b.span(), false), 4, seed, 1);
        EXPECT_TRUE(adjacency_valid(run.grid));
        for (const auto& [p, t] : run.grid.placements()) {
            wrong |= t.tag.role == Role::output && t.tag.bit;
        }
    }
    EXPECT_TRUE(wrong);
}

TEST(Generic, InvariantHoldsOnRandomSets) {
    Rng rng(77);
    const std::vector<Glue> palette = {"a", "b", "c"};
    for (int i = 0; i < 30; ++i) {
        TileSet ts;
        ts.palette = palette;
        for (int k = 0; k < 6; ++k) {
            ts.tiles.push_back({palette[rng.below(3)], palette[rng.below(3)], palette[rng.below(3)],
                                palette[rng.below(3)], {}, "t" + std::to_string(k)});
        }
        const std::vector<WangTile> row = {ts.tiles[0]};
        const auto run = assemble_generic(ts, std::span<const WangTile>(row), 40, rng.next());
        EXPECT_TRUE(adjacency_valid(run.grid));
        EXPECT_EQ(run.grid.size(), 1 + run.attachments);
        EXPECT_EQ(assemble_generic(ts, std::span<const WangTile>(row), 40, 5).grid,
                  assemble_generic(ts, std::span<const WangTile>(row), 40, 5).grid);
    }
}

TEST(Generic, RejectsBadArguments) {
    const Bits b(std::vector<bool>{true});
    EXPECT_THROW(assemble_generic(xor_tile_set(), xor_seed_grid(b.span(), false), 5, 0, 0), argument_error);
}

TEST(Readout, EmptyRole) {
    const AssemblyGrid g = attach(AssemblyGrid{}, {0, 0}, xor_root_tile());
    EXPECT_THROW(readout(g, Role::output), readout_error);
}

TEST(TileSet, ShippedXorFileMatches) {
    std::ifstream in(std::string(STRANDBENCH_FIXTURES) + "/tiles/xor.json");
    std::stringstream ss;
    ss << in.rdbuf();
    const auto ts = io::tileset_from_json(io::parse_json(ss.str()));
    EXPECT_EQ(ts.palette, xor_tile_set().palette);
    EXPECT_EQ(ts.tiles, xor_tile_set().tiles);
}
