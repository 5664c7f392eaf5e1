#pragma once

#include "strandbench/adleman.hpp"
#include "strandbench/circuit.hpp"
#include "strandbench/dsd/engine.hpp"
#include "strandbench/dsd/species.hpp"
#include "strandbench/errors.hpp"
#include "strandbench/oligo_pool.hpp"
#include "strandbench/tiling.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace strandbench::io {

using json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become input_error with line and column.
inline json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
        throw input_error("malformed JSON: " + msg, line, col);
    }
}

namespace detail {

inline const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) {
        throw input_error(where + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw input_error(where + ": missing \"" + key + "\"");
    }
    return *it;
}

template <class T>
T get(const json& j, const std::string& where) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw input_error(where + ": " + e.what());
    }
}

inline const json& need_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw input_error(where + ": expected an array");
    return j;
}

/// Runs f, reporting domain validation failures as malformed input.
template <class F>
auto checked(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const input_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw input_error(where + ": " + e.what());
    }
}

}  // namespace detail

// ---- oligo pools

inline json to_json(const OligoPool& p) {
    json entries = json::array();
    for (const auto& [seq, n] : p.entries()) {
        entries.push_back({{"seq", seq.str()}, {"count", n}});
    }
    return {{"entries", entries}};
}

inline OligoPool pool_from_json(const json& j) {
    OligoPool p;
    const auto& entries = detail::need_array(detail::need(j, "entries", "pool"), "pool.entries");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string where = "pool.entries[" + std::to_string(i) + "]";
        auto seq = detail::get<std::string>(detail::need(entries[i], "seq", where), where + ".seq");
        auto n = detail::get<std::uint64_t>(detail::need(entries[i], "count", where), where + ".count");
        detail::checked(where, [&] {
            p.add(Sequence(seq), n);
            return 0;
        });
    }
    return p;
}

// ---- graphs

inline json to_json(const adleman::DiGraph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    return {{"nodes", g.nodes()}, {"edges", edges}};
}

inline adleman::DiGraph graph_from_json(const json& j) {
    auto nodes = detail::get<std::vector<adleman::NodeId>>(detail::need(j, "nodes", "graph"), "graph.nodes");
    const auto& raw = detail::need_array(detail::need(j, "edges", "graph"), "graph.edges");
    std::vector<adleman::Edge> edges;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const std::string where = "graph.edges[" + std::to_string(i) + "]";
        auto e = detail::get<std::vector<adleman::NodeId>>(raw[i], where);
        if (e.size() != 2) throw input_error(where + ": expected [from, to]");
        edges.emplace_back(e[0], e[1]);
    }
    return detail::checked("graph", [&] { return adleman::DiGraph(nodes, edges); });
}

// ---- tiles

inline std::string tag_string(const tiling::Tag& t) {
    switch (t.role) {
        case tiling::Role::none: return "none";
        case tiling::Role::root: return "root";
        case tiling::Role::input: return t.bit ? "input:1" : "input:0";
        case tiling::Role::output: return t.bit ? "output:1" : "output:0";
    }
    return "none";
}

inline tiling::Tag tag_from_string(const std::string& s, const std::string& where) {
    if (s == "none") return {};
    if (s == "root") return tiling::root_tag();
    if (s == "input:0" || s == "input:1") return tiling::input_tag(s.back() == '1');
    if (s == "output:0" || s == "output:1") return tiling::output_tag(s.back() == '1');
    throw input_error(where + ": unknown tag \"" + s + "\"");
}

inline json to_json(const tiling::WangTile& t) {
    return {{"name", t.name}, {"n", t.north}, {"e", t.east}, {"s", t.south}, {"w", t.west}, {"tag", tag_string(t.tag)}};
}

inline json to_json(const tiling::TileSet& ts) {
    json tiles = json::array();
    for (const auto& t : ts.tiles) tiles.push_back(to_json(t));
    return {{"palette", ts.palette}, {"tiles", tiles}};
}

inline tiling::TileSet tileset_from_json(const json& j) {
    tiling::TileSet ts;
    ts.palette = detail::get<std::vector<std::string>>(detail::need(j, "palette", "tileset"), "tileset.palette");
    const auto& tiles = detail::need_array(detail::need(j, "tiles", "tileset"), "tileset.tiles");
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        const std::string where = "tileset.tiles[" + std::to_string(i) + "]";
        const auto& t = tiles[i];
        tiling::WangTile w;
        w.north = detail::get<std::string>(detail::need(t, "n", where), where + ".n");
        w.east = detail::get<std::string>(detail::need(t, "e", where), where + ".e");
        w.south = detail::get<std::string>(detail::need(t, "s", where), where + ".s");
        w.west = detail::get<std::string>(detail::need(t, "w", where), where + ".w");
        w.tag = tag_from_string(t.contains("tag") ? detail::get<std::string>(t["tag"], where + ".tag") : "none", where);
        w.name = t.contains("name") ? detail::get<std::string>(t["name"], where + ".name") : "t" + std::to_string(i);
        ts.tiles.push_back(std::move(w));
    }
    detail::checked("tileset", [&] {
        ts.validate();
        return 0;
    });
    return ts;
}

inline json to_json(const tiling::AssemblyGrid& g) {
    json cells = json::array();
    for (const auto& [pos, tile] : g.placements()) {
        cells.push_back({{"row", pos.row}, {"col", pos.col}, {"tile", tile.name}});
    }
    return cells;
}

// ---- strand displacement species

inline json to_json(const dsd::Domain& d) {
    return {{"id", d.id}, {"kind", d.is_toehold() ? "t" : "m"}, {"comp", d.comp}};
}

inline json to_json(const dsd::Strand& s) {
    json out = json::array();
    for (const auto& d : s.domains()) out.push_back(to_json(d));
    return out;
}

inline dsd::Domain domain_from_json(const json& j, const std::string& where) {
    dsd::Domain d;
    d.id = detail::get<std::string>(detail::need(j, "id", where), where + ".id");
    const auto kind = detail::get<std::string>(detail::need(j, "kind", where), where + ".kind");
    if (kind == "t") {
        d.kind = dsd::DomainKind::toehold;
    } else if (kind == "m") {
        d.kind = dsd::DomainKind::migration;
    } else {
        throw input_error(where + ".kind: expected \"t\" or \"m\"");
    }
    d.comp = j.contains("comp") ? detail::get<bool>(j["comp"], where + ".comp") : false;
    return d;
}

inline dsd::Strand strand_from_json(const json& j, const std::string& where) {
    detail::need_array(j, where);
    std::vector<dsd::Domain> ds;
    for (std::size_t i = 0; i < j.size(); ++i) {
        ds.push_back(domain_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return detail::checked(where, [&] { return dsd::Strand(std::move(ds)); });
}

inline json to_json(const dsd::GateComplex& c) {
    json incs = json::array();
    for (const auto& inc : c.incumbents()) {
        incs.push_back({{"strand", to_json(inc.strand)}, {"begin", inc.begin}, {"end", inc.end}, {"offset", inc.offset}});
    }
    return {{"backbone", to_json(c.backbone())}, {"incumbents", incs}};
}

inline dsd::GateComplex complex_from_json(const json& j, const std::string& where) {
    auto backbone = strand_from_json(detail::need(j, "backbone", where), where + ".backbone");
    const auto& raw = detail::need_array(detail::need(j, "incumbents", where), where + ".incumbents");
    std::vector<dsd::Incumbent> incs;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const std::string w = where + ".incumbents[" + std::to_string(i) + "]";
        dsd::Incumbent inc{strand_from_json(detail::need(raw[i], "strand", w), w + ".strand"),
                           detail::get<std::size_t>(detail::need(raw[i], "begin", w), w + ".begin"),
                           detail::get<std::size_t>(detail::need(raw[i], "end", w), w + ".end"),
                           raw[i].contains("offset") ? detail::get<std::size_t>(raw[i]["offset"], w + ".offset") : 0};
        incs.push_back(std::move(inc));
    }
    return detail::checked(where, [&] { return dsd::GateComplex(std::move(backbone), std::move(incs)); });
}

namespace detail {

template <class T>
json multiset_json(const dsd::Multiset<T>& m, const char* key) {
    json out = json::array();
    for (const auto& [x, n] : m) out.push_back({{key, to_json(x)}, {"count", n}});
    return out;
}

template <class T, class F>
dsd::Multiset<T> multiset_from(const json& j, const char* key, const std::string& where, F&& read) {
    dsd::Multiset<T> m;
    need_array(j, where);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        auto x = read(need(j[i], key, w), w + "." + key);
        auto n = get<std::uint64_t>(need(j[i], "count", w), w + ".count");
        if (n == 0) throw input_error(w + ".count: must be positive");
        dsd::add_to(m, x, n);
    }
    return m;
}

}  // namespace detail

inline json to_json(const dsd::SolutionState& s) {
    return {{"free", detail::multiset_json(s.free, "strand")},
            {"complexes", detail::multiset_json(s.complexes, "complex")},
            {"waste",
             {{"strands", detail::multiset_json(s.waste_strands, "strand")},
              {"complexes", detail::multiset_json(s.waste_complexes, "complex")}}}};
}

inline dsd::SolutionState state_from_json(const json& j, const std::string& where = "state") {
    dsd::SolutionState s;
    if (j.contains("free")) {
        s.free = detail::multiset_from<dsd::Strand>(j["free"], "strand", where + ".free", strand_from_json);
    }
    if (j.contains("complexes")) {
        s.complexes =
            detail::multiset_from<dsd::GateComplex>(j["complexes"], "complex", where + ".complexes", complex_from_json);
    }
    if (j.contains("waste")) {
        const auto& w = j["waste"];
        if (w.contains("strands")) {
            s.waste_strands =
                detail::multiset_from<dsd::Strand>(w["strands"], "strand", where + ".waste.strands", strand_from_json);
        }
        if (w.contains("complexes")) {
            s.waste_complexes = detail::multiset_from<dsd::GateComplex>(w["complexes"], "complex",
                                                                         where + ".waste.complexes", complex_from_json);
        }
    }
    return s;
}

/// One trace line: the reaction in readable form.
inline json to_json(const dsd::ReactionEvent& e) {
    json out = {{"class", e.rate_class == dsd::RateClass::leak ? "leak" : "normal"},
                {"invader", dsd::to_string(e.invader)},
                {"target", dsd::to_string(e.target)},
                {"toehold", e.toehold},
                {"product", dsd::to_string(e.product)}};
    out["released"] = e.released ? json(dsd::to_string(*e.released)) : json(nullptr);
    return out;
}

// ---- compiled circuits

inline json to_json(const dsd::Reporter& r) {
    return {{"toehold", to_json(r.toehold)}, {"migration", to_json(r.migration)}};
}

inline json to_json(const circuit::CompileStats& s) {
    return {{"gates", s.gates},
            {"depth", s.depth},
            {"distinct_oligos", s.distinct_oligos},
            {"complexes", s.complexes},
            {"input_strands", s.input_strands},
            {"reporters", s.reporters}};
}

inline json to_json(const circuit::CompileOutput& c) {
    json complexes = json::array();
    for (const auto& cc : c.complexes) {
        complexes.push_back({{"gate", cc.gate}, {"copies", cc.copies}, {"complex", to_json(cc.complex)}});
    }
    json inputs = json::object();
    for (const auto& [name, by_value] : c.input_map) {
        json v = json::object();
        for (const auto& [bit, t] : by_value) {
            v[bit ? "1" : "0"] = {{"strand", to_json(t.strand)}, {"copies", t.copies}};
        }
        inputs[name] = v;
    }
    json outputs = json::object();
    for (const auto& [name, rails] : c.output_map) {
        json v = json::object();
        for (const auto& [bit, r] : rails) v[bit ? "1" : "0"] = to_json(r);
        outputs[name] = v;
    }
    json signals = json::object();
    for (const auto& [name, info] : c.signals) {
        signals[name] = {{"producer", info.producer ? json(*info.producer) : json(nullptr)},
                         {"consumers", info.consumers}};
    }
    return {{"options", {{"multi_input", c.options.multi_input}, {"dual_rail", c.options.dual_rail}}},
            {"warnings", c.warnings},
            {"stats", to_json(c.stats)},
            {"inputs", inputs},
            {"outputs", outputs},
            {"signals", signals},
            {"complexes", complexes},
            {"initial_state", to_json(c.initial_state)}};
}

inline circuit::CompileOutput compiled_from_json(const json& j) {
    using detail::get;
    using detail::need;
    circuit::CompileOutput c;
    const auto& opts = need(j, "options", "compiled");
    c.options.multi_input = get<bool>(need(opts, "multi_input", "compiled.options"), "compiled.options.multi_input");
    c.options.dual_rail = get<bool>(need(opts, "dual_rail", "compiled.options"), "compiled.options.dual_rail");
    if (j.contains("warnings")) c.warnings = get<std::vector<std::string>>(j["warnings"], "compiled.warnings");

    auto bit_key = [](const std::string& k, const std::string& where) {
        if (k != "0" && k != "1") throw input_error(where + ": rail key must be \"0\" or \"1\"");
        return k == "1";
    };
    const auto& inputs = need(j, "inputs", "compiled");
    if (!inputs.is_object()) throw input_error("compiled.inputs: expected an object");
    for (const auto& [name, by_value] : inputs.items()) {
        const std::string where = "compiled.inputs." + name;
        if (!by_value.is_object()) throw input_error(where + ": expected an object");
        for (const auto& [k, t] : by_value.items()) {
            const std::string w = where + "." + k;
            c.input_map[name].emplace(bit_key(k, w), dsd::InputTemplate{strand_from_json(need(t, "strand", w), w + ".strand"),
                                                                        get<std::uint64_t>(need(t, "copies", w), w + ".copies")});
        }
    }
    const auto& outputs = need(j, "outputs", "compiled");
    if (!outputs.is_object()) throw input_error("compiled.outputs: expected an object");
    for (const auto& [name, rails] : outputs.items()) {
        const std::string where = "compiled.outputs." + name;
        if (!rails.is_object()) throw input_error(where + ": expected an object");
        for (const auto& [k, r] : rails.items()) {
            const std::string w = where + "." + k;
            c.output_map[name].emplace(bit_key(k, w),
                                       dsd::Reporter{domain_from_json(need(r, "toehold", w), w + ".toehold"),
                                                     domain_from_json(need(r, "migration", w), w + ".migration")});
        }
    }
    if (j.contains("signals")) {
        for (const auto& [name, info] : j["signals"].items()) {
            const std::string w = "compiled.signals." + name;
            circuit::SignalInfo s;
            if (info.contains("producer") && !info["producer"].is_null()) {
                s.producer = get<std::size_t>(info["producer"], w + ".producer");
            }
            if (info.contains("consumers")) {
                s.consumers = get<std::set<std::size_t>>(info["consumers"], w + ".consumers");
            }
            c.signals.emplace(name, std::move(s));
        }
    }
    if (j.contains("complexes")) {
        const auto& raw = detail::need_array(j["complexes"], "compiled.complexes");
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const std::string w = "compiled.complexes[" + std::to_string(i) + "]";
            c.complexes.push_back({complex_from_json(need(raw[i], "complex", w), w + ".complex"),
                                   get<std::uint64_t>(need(raw[i], "copies", w), w + ".copies"),
                                   get<std::size_t>(need(raw[i], "gate", w), w + ".gate")});
        }
    }
    if (j.contains("stats")) {
        const auto& s = j["stats"];
        auto field = [&](const char* k) { return get<std::size_t>(need(s, k, "compiled.stats"), std::string("compiled.stats.") + k); };
        c.stats = {field("gates"), field("depth"), field("distinct_oligos"),
                   field("complexes"), field("input_strands"), field("reporters")};
    }
    c.initial_state = state_from_json(need(j, "initial_state", "compiled"), "compiled.initial_state");
    return c;
}

}  // namespace strandbench::io
