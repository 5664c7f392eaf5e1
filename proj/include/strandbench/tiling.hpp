#pragma once

#include "strandbench/errors.hpp"
#include "strandbench/random.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace strandbench::tiling {

using Glue = std::string;

enum class Role { none, input, output, root };

/// Role annotation carried by a tile; `bit` is meaningful for input/output.
struct Tag {
    Role role = Role::none;
    bool bit = false;

    friend bool operator==(const Tag&, const Tag&) = default;
};

inline Tag input_tag(bool b) { return {Role::input, b}; }
inline Tag output_tag(bool b) { return {Role::output, b}; }
inline Tag root_tag() { return {Role::root, false}; }

struct WangTile {
    Glue north;
    Glue east;
    Glue south;
    Glue west;
    Tag tag;
    std::string name;

    friend bool operator==(const WangTile&, const WangTile&) = default;
};

enum class Side { north, east, south, west };

inline const char* to_string(Side s) {
    switch (s) {
        case Side::north: return "north";
        case Side::east: return "east";
        case Side::south: return "south";
        case Side::west: return "west";
    }
    return "?";
}

struct TileSet {
    std::vector<Glue> palette;
    std::vector<WangTile> tiles;

    /// Throws argument_error if any tile uses a glue outside the palette.
    void validate() const {
        std::set<Glue> known(palette.begin(), palette.end());
        for (const auto& t : tiles) {
            for (const Glue* g : {&t.north, &t.east, &t.south, &t.west}) {
                if (!known.contains(*g)) {
                    throw argument_error("tile '" + t.name + "' uses glue '" + *g + "' outside the palette");
                }
            }
        }
    }
};

struct Position {
    std::int64_t row;
    std::int64_t col;

    friend auto operator<=>(const Position&, const Position&) = default;
};

/// Why attach() refused a placement.
class attach_error : public std::runtime_error {
  public:
    attach_error(const std::string& what, std::optional<Side> side)
        : std::runtime_error(what), side_(side) {}

    /// The mismatching side, or nullopt when the position was occupied.
    std::optional<Side> side() const noexcept { return side_; }

  private:
    std::optional<Side> side_;
};

/// North, east, south, west.
inline std::array<Position, 4> neighbours(Position p) {
    return {Position{p.row + 1, p.col}, Position{p.row, p.col + 1}, Position{p.row - 1, p.col},
            Position{p.row, p.col - 1}};
}

/// Partial placement of tiles. Rows grow northward (row + 1 is north).
class AssemblyGrid {
  public:
    using container = std::map<Position, WangTile>;

    const container& placements() const noexcept { return cells_; }
    bool empty() const noexcept { return cells_.empty(); }
    std::size_t size() const noexcept { return cells_.size(); }

    const WangTile* at(Position p) const {
        auto it = cells_.find(p);
        return it == cells_.end() ? nullptr : &it->second;
    }

    /// First side of `t` at `p` whose occupied neighbour disagrees, if any.
    std::optional<Side> mismatch(Position p, const WangTile& t) const {
        if (const auto* n = at({p.row + 1, p.col}); n && n->south != t.north) return Side::north;
        if (const auto* n = at({p.row, p.col + 1}); n && n->west != t.east) return Side::east;
        if (const auto* n = at({p.row - 1, p.col}); n && n->north != t.south) return Side::south;
        if (const auto* n = at({p.row, p.col - 1}); n && n->east != t.west) return Side::west;
        return std::nullopt;
    }

    std::size_t neighbour_count(Position p) const {
        std::size_t n = 0;
        for (Position q : neighbours(p)) {
            n += at(q) ? 1 : 0;
        }
        return n;
    }

    friend bool operator==(const AssemblyGrid&, const AssemblyGrid&) = default;

  private:
    friend AssemblyGrid attach(const AssemblyGrid&, Position, const WangTile&);
    container cells_;
};

/// New grid with `t` at `p`. Throws attach_error on an occupied position or
/// on any glue mismatch with an occupied neighbour.
inline AssemblyGrid attach(const AssemblyGrid& g, Position p, const WangTile& t) {
    if (g.at(p)) {
        throw attach_error("position (" + std::to_string(p.row) + "," + std::to_string(p.col) + ") is occupied",
                           std::nullopt);
    }
    if (auto side = g.mismatch(p, t)) {
        throw attach_error("tile '" + t.name + "' mismatches its neighbour on the " + to_string(*side) + " side",
                           side);
    }
    AssemblyGrid out = g;
    out.cells_.emplace(p, t);
    return out;
}

/// Full re-scan of every horizontally and vertically adjacent pair.
inline bool adjacency_valid(const AssemblyGrid& g) {
    for (const auto& [p, t] : g.placements()) {
        if (const auto* e = g.at({p.row, p.col + 1}); e && e->west != t.east) return false;
        if (const auto* n = g.at({p.row + 1, p.col}); n && n->south != t.north) return false;
    }
    return true;
}

// XOR tile set. Palette: boundary B, input glues x0/x1 (north face of an
// input tile), carry glues y0/y1. A computation tile sits on top of an
// input, takes the running value on its west face and exposes the new value
// on its east and north faces. The root presents x0 on its north face, so
// the seed tile above it is Y00 or Y10 and carries Y0 into the cascade.
namespace xor_glue {
inline const Glue boundary = "B";
inline const Glue x0 = "x0";
inline const Glue x1 = "x1";
inline const Glue y0 = "y0";
inline const Glue y1 = "y1";
}  // namespace xor_glue

inline const Glue& x_glue(bool b) { return b ? xor_glue::x1 : xor_glue::x0; }
inline const Glue& y_glue(bool b) { return b ? xor_glue::y1 : xor_glue::y0; }

inline WangTile xor_root_tile() {
    return {xor_glue::x0, xor_glue::boundary, xor_glue::boundary, xor_glue::y0, root_tag(), "root"};
}

inline WangTile xor_input_tile(bool x) {
    return {x_glue(x), xor_glue::boundary, xor_glue::boundary, xor_glue::boundary, input_tag(x),
            x ? "X1" : "X0"};
}

/// Computation tile for (previous Y, X) -> previous Y xor X.
inline WangTile xor_compute_tile(bool prev, bool x) {
    const bool y = prev != x;
    return {y_glue(y), y_glue(y), x_glue(x), y_glue(prev), output_tag(y),
            std::string("Y") + (prev ? "1" : "0") + (x ? "1" : "0")};
}

/// The seven-tile XOR set over a five-glue palette.
inline TileSet xor_tile_set() {
    TileSet ts;
    ts.palette = {xor_glue::boundary, xor_glue::x0, xor_glue::x1, xor_glue::y0, xor_glue::y1};
    ts.tiles = {xor_root_tile(), xor_input_tile(false), xor_input_tile(true)};
    for (bool prev : {false, true}) {
        for (bool x : {false, true}) {
            ts.tiles.push_back(xor_compute_tile(prev, x));
        }
    }
    return ts;
}

/// Root at (0,0), inputs along row 0, and the Y0 tile on top of the root.
inline AssemblyGrid xor_seed_grid(std::span<const bool> x, bool y0) {
    AssemblyGrid g = attach(AssemblyGrid{}, {0, 0}, xor_root_tile());
    for (std::size_t i = 0; i < x.size(); ++i) {
        g = attach(g, {0, static_cast<std::int64_t>(i) + 1}, xor_input_tile(x[i]));
    }
    return attach(g, {1, 0}, xor_compute_tile(y0, false));
}

struct XorRun {
    std::vector<bool> y;
    AssemblyGrid grid;
};

/// Cascading XOR, Y_i = Y_{i-1} xor X_i, grown left to right on row 1.
inline XorRun run_xor(std::span<const bool> x, bool y0) {
    if (x.empty()) {
        throw argument_error("run_xor needs at least one input bit");
    }
    XorRun r;
    r.grid = xor_seed_grid(x, y0);
    bool prev = y0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const WangTile t = xor_compute_tile(prev, x[i]);
        r.grid = attach(r.grid, {1, static_cast<std::int64_t>(i) + 1}, t);
        prev = t.tag.bit;
        r.y.push_back(prev);
    }
    return r;
}

struct TruthRow {
    bool a;
    bool b;
    bool out;
};

/// Rows (a, b) -> a xor b, each obtained from a one-step run_xor with Y0 = a, X1 = b.
inline std::array<TruthRow, 4> xor_truth_table() {
    std::array<TruthRow, 4> rows{};
    std::size_t i = 0;
    for (bool a : {false, true}) {
        for (bool b : {false, true}) {
            const std::array<bool, 1> x{b};
            rows[i++] = {a, b, run_xor(x, a).y.front()};
        }
    }
    return rows;
}

struct GenericRun {
    AssemblyGrid grid;
    std::size_t attachments = 0;
    /// True when no valid attachment remained before the step budget ran out.
    bool stuck = false;
};

/// Seeded asynchronous growth from an initial grid.
///
/// Each step lists every (empty position, tile) pair whose occupied
/// neighbours all match the tile, with at least `min_bonds` such neighbours,
/// then picks one uniformly. min_bonds = 1 is plain Wang matching; the XOR
/// set needs 2 (cooperative binding), otherwise a computation tile can land
/// on its input before the carry to its west exists.
inline GenericRun assemble_generic(const TileSet& ts, const AssemblyGrid& seed_grid, std::size_t steps,
                                   std::uint64_t seed, std::size_t min_bonds = 1) {
    ts.validate();
    if (min_bonds < 1 || min_bonds > 4) {
        throw argument_error("min_bonds must be between 1 and 4");
    }
    if (!adjacency_valid(seed_grid)) {
        throw argument_error("seed grid violates the adjacency invariant");
    }
    GenericRun run{seed_grid, 0, false};

    Rng rng(seed);
    struct Candidate {
        Position pos;
        std::size_t tile;
    };
    std::vector<Candidate> candidates;
    while (run.attachments < steps) {
        std::set<Position> frontier;
        for (const auto& [p, t] : run.grid.placements()) {
            for (Position q : neighbours(p)) {
                if (!run.grid.at(q) && run.grid.neighbour_count(q) >= min_bonds) {
                    frontier.insert(q);
                }
            }
        }
        candidates.clear();
        for (Position q : frontier) {
            for (std::size_t i = 0; i < ts.tiles.size(); ++i) {
                if (!run.grid.mismatch(q, ts.tiles[i])) {
                    candidates.push_back({q, i});
                }
            }
        }
        if (candidates.empty()) {
            run.stuck = true;
            return run;
        }
        const auto& pick = candidates[rng.below(candidates.size())];
        run.grid = attach(run.grid, pick.pos, ts.tiles[pick.tile]);
        ++run.attachments;
    }
    return run;
}

/// Overload seeding with a single row placed at row 0 from column 0.
inline GenericRun assemble_generic(const TileSet& ts, std::span<const WangTile> seed_row, std::size_t steps,
                                   std::uint64_t seed, std::size_t min_bonds = 1) {
    AssemblyGrid g;
    for (std::size_t i = 0; i < seed_row.size(); ++i) {
        g = attach(g, {0, static_cast<std::int64_t>(i)}, seed_row[i]);
    }
    return assemble_generic(ts, g, steps, seed, min_bonds);
}

class readout_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bits of the tiles with the given role, in column order. This stands in
/// for primer-specific PCR or AFM imaging of reporter strands. Output tiles
/// in the root's column are the carry seed, not results, and are skipped.
inline std::vector<bool> readout(const AssemblyGrid& g, Role role) {
    std::optional<std::int64_t> root_col;
    for (const auto& [p, t] : g.placements()) {
        if (t.tag.role == Role::root) {
            root_col = p.col;
        }
    }
    std::vector<std::tuple<std::int64_t, std::int64_t, bool>> hits;  // col, row, bit
    for (const auto& [p, t] : g.placements()) {
        if (t.tag.role != role) {
            continue;
        }
        if (role == Role::output && root_col && p.col == *root_col) {
            continue;
        }
        hits.emplace_back(p.col, p.row, t.tag.bit);
    }
    if (hits.empty()) {
        throw readout_error("grid holds no tiles with the requested role");
    }
    std::sort(hits.begin(), hits.end());
    std::vector<bool> bits;
    bits.reserve(hits.size());
    for (const auto& h : hits) {
        bits.push_back(std::get<2>(h));
    }
    return bits;
}

}  // namespace strandbench::tiling
