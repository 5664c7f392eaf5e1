#include "strandbench/adleman.hpp"
#include "strandbench/circuit.hpp"
#include "strandbench/design.hpp"
#include "strandbench/dsd/engine.hpp"
#include "strandbench/dsd/gates.hpp"
#include "strandbench/feasibility.hpp"
#include "strandbench/json_io.hpp"
#include "strandbench/tiling.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace strandbench;
using io::json;

constexpr const char* tool_version = "0.1.0";

enum Exit { ok = 0, usage = 1, malformed = 2, no_solution = 3 };

/// Bad flag values or flag combinations.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A valid run that produced no answer.
struct no_solution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool use_color() { return std::getenv("STRANDBENCH_NO_COLOR") == nullptr && isatty(STDERR_FILENO) != 0; }

void report(const std::string& msg) {
    if (use_color()) {
        std::cerr << "\x1b[1;31merror:\x1b[0m " << msg << "\n";
    } else {
        std::cerr << "error: " << msg << "\n";
    }
}

void warn(const std::string& msg) {
    if (use_color()) {
        std::cerr << "\x1b[1;33mwarning:\x1b[0m " << msg << "\n";
    } else {
        std::cerr << "warning: " << msg << "\n";
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

struct Common {
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "json";
};

/// Digest over the normalized parameters followed by every input file's bytes.
class Digest {
  public:
    void param(const std::string& key, const std::string& value) { text_ += key + "=" + value + "\n"; }
    void file(const std::string& bytes) { text_ += "\x1f" + bytes; }
    std::string str() const { return "sha256:" + sha256_hex(text_); }

  private:
    std::string text_;
};

json metadata(const std::string& command, const Common& c, const Digest& d) {
    return {{"tool", "strandbench"},
            {"version", tool_version},
            {"command", command},
            {"seed", c.seed},
            {"input_digest", d.str()}};
}

std::string meta_line(const json& meta) {
    return "# " + meta["tool"].get<std::string>() + " " + meta["version"].get<std::string>() +
           " command=" + meta["command"].get<std::string>() + " seed=" + std::to_string(meta["seed"].get<std::uint64_t>()) +
           " input_digest=" + meta["input_digest"].get<std::string>() + "\n";
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw usage_error("cannot write '" + c.output + "'");
    out << text;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

std::string bits_string(const std::vector<bool>& bits) {
    std::string s;
    for (bool b : bits) s += b ? '1' : '0';
    return s;
}

std::vector<bool> parse_bits(const std::string& s, const char* flag) {
    std::vector<bool> out;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw usage_error(std::string(flag) + " expects a string of 0 and 1");
        out.push_back(ch == '1');
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- design

struct DesignArgs {
    std::size_t length = 20;
    std::size_t count = 1;
    double gc_min = 0.0;
    double gc_max = 1.0;
    int tm_min = 0;
    int tm_max = std::numeric_limits<int>::max();
    std::size_t min_hamming = 1;
    std::size_t max_homopolymer = std::numeric_limits<std::size_t>::max();
    std::size_t attempts = 10000;
};

int run_design(const DesignArgs& a, const Common& c) {
    DesignConstraints dc;
    dc.length = a.length;
    dc.gc_min = a.gc_min;
    dc.gc_max = a.gc_max;
    dc.tm_min = a.tm_min;
    dc.tm_max = a.tm_max;
    dc.min_hamming = a.min_hamming;
    dc.max_homopolymer = a.max_homopolymer;
    try {
        dc.validate();
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    if (a.count < 1) throw usage_error("--count must be at least 1");

    Digest d;
    d.param("length", std::to_string(a.length));
    d.param("count", std::to_string(a.count));
    d.param("gc", fmt_double(a.gc_min) + "," + fmt_double(a.gc_max));
    d.param("tm", std::to_string(a.tm_min) + "," + std::to_string(a.tm_max));
    d.param("min_hamming", std::to_string(a.min_hamming));
    d.param("max_homopolymer", std::to_string(a.max_homopolymer));
    d.param("attempts", std::to_string(a.attempts));
    const json meta = metadata("design", c, d);

    std::vector<Sequence> seqs;
    try {
        seqs = design_library(dc, a.count, c.seed, a.attempts);
    } catch (const design_infeasible& e) {
        throw no_solution_error(e.what());
    }
    if (c.format == "text") {
        std::string out = meta_line(meta);
        for (const auto& s : seqs) {
            out += s.str() + "  gc=" + std::to_string(gc_count(s)) + " tm=" + std::to_string(melting_temp(s)) + "\n";
        }
        emit(c, out);
        return ok;
    }
    json list = json::array();
    for (const auto& s : seqs) {
        list.push_back({{"seq", s.str()}, {"gc_count", gc_count(s)}, {"tm", melting_temp(s)}});
    }
    emit(c, json_text({{"meta", meta},
                       {"violations", verify_library(seqs, dc).size()},
                       {"sequences", list}}));
    return ok;
}

// ---- adleman

struct AdlemanArgs {
    std::string graph;
    adleman::NodeId start = 0;
    adleman::NodeId end = 0;
    std::string mode = "exhaustive";
    std::size_t samples = 10000;
    std::size_t max_nodes = 0;
    double stop_probability = 0.1;
    std::size_t length = 20;
};

int run_adleman(const AdlemanArgs& a, const Common& c) {
    const std::string bytes = read_file(a.graph);
    const auto g = io::graph_from_json(io::parse_json(bytes));
    if (!g.has_node(a.start)) throw usage_error("--start " + std::to_string(a.start) + " is not a node of the graph");
    if (!g.has_node(a.end)) throw usage_error("--end " + std::to_string(a.end) + " is not a node of the graph");
    if (a.length < 2 || a.length % 2 != 0) throw usage_error("--length must be even and at least 2");

    Digest d;
    d.param("start", std::to_string(a.start));
    d.param("end", std::to_string(a.end));
    d.param("mode", a.mode);
    d.param("samples", std::to_string(a.samples));
    d.param("max_nodes", std::to_string(a.max_nodes));
    d.param("stop_probability", fmt_double(a.stop_probability));
    d.param("length", std::to_string(a.length));
    d.file(bytes);
    const json meta = metadata("adleman", c, d);

    DesignConstraints dc;
    dc.length = a.length;
    adleman::Encoding enc;
    try {
        enc = adleman::encode_graph(g, dc, c.seed);
    } catch (const design_infeasible& e) {
        throw no_solution_error(e.what());
    }
    adleman::AssemblyMode mode;
    if (a.mode == "exhaustive") {
        mode = adleman::Exhaustive{a.max_nodes == 0 ? g.size() : a.max_nodes};
    } else {
        if (a.samples < 1) throw usage_error("--samples must be at least 1");
        mode = adleman::Stochastic{a.samples, c.seed, a.stop_probability};
    }
    const auto pool = adleman::assemble(g, mode);
    const auto paths = adleman::select_hamiltonian(pool, g, a.start, a.end);
    const auto strands = adleman::to_strands(pool, enc);
    const auto selected = adleman::molecular_select(strands, g, enc, a.start, a.end);

    std::uint64_t walks = 0;
    for (const auto& [p, n] : pool) walks += n;

    json nodes = json::object();
    for (const auto& [v, s] : enc.node_seq) nodes[std::to_string(v)] = s.str();
    json found = json::array();
    for (const auto& p : paths) {
        const auto s = adleman::render_path(p, enc);
        found.push_back({{"path", p}, {"strand", s.str()}, {"length", s.size()}});
    }
    json recovered = json::array();
    for (const auto& [s, n] : selected.entries()) {
        const auto p = adleman::decode_strand(s, enc);
        recovered.push_back(p ? json(*p) : json(nullptr));
    }

    if (c.format == "text") {
        std::string out = meta_line(meta);
        out += "walks assembled: " + std::to_string(walks) + " (" + std::to_string(pool.size()) + " distinct)\n";
        out += "hamiltonian paths " + std::to_string(a.start) + " -> " + std::to_string(a.end) + ": " +
               std::to_string(paths.size()) + "\n";
        for (const auto& p : paths) {
            out += "  " + adleman::describe(p) + "  (" + std::to_string(adleman::render_path(p, enc).size()) + " bases)\n";
        }
        emit(c, out);
    } else {
        emit(c, json_text({{"meta", meta},
                           {"graph", {{"nodes", g.size()}, {"edges", g.edges().size()}}},
                           {"mode", a.mode},
                           {"pool", {{"distinct", pool.size()}, {"total", walks}}},
                           {"encoding", {{"node_length", a.length}, {"nodes", nodes}}},
                           {"paths", found},
                           {"molecular_selection", recovered}}));
    }
    if (paths.empty()) {
        throw no_solution_error("no Hamiltonian path from " + std::to_string(a.start) + " to " + std::to_string(a.end));
    }
    return ok;
}

// ---- tile

struct TileArgs {
    std::string x;
    int y0 = 0;
    bool generic = false;
    std::string tileset;
    std::string seed_row;
    std::size_t steps = 1000;
    std::size_t min_bonds = 0;
};

json readout_json(const tiling::AssemblyGrid& g) {
    try {
        return bits_string(tiling::readout(g, tiling::Role::output));
    } catch (const tiling::readout_error&) {
        return nullptr;
    }
}

int run_tile(const TileArgs& a, const Common& c) {
    Digest d;
    json body;
    std::string text;
    if (!a.tileset.empty()) {
        if (a.seed_row.empty()) throw usage_error("--tileset needs --seed-row");
        const std::string bytes = read_file(a.tileset);
        const auto raw = io::parse_json(bytes);
        const auto ts = io::tileset_from_json(raw);
        std::size_t bonds = a.min_bonds;
        if (bonds == 0) {
            bonds = raw.contains("min_bonds") ? io::detail::get<std::size_t>(raw["min_bonds"], "tileset.min_bonds") : 1;
        }
        // rows separated by '/', stacked northward from row 0; '.' leaves a cell empty
        tiling::AssemblyGrid seed_grid;
        std::stringstream rows(a.seed_row);
        std::string row_text;
        std::int64_t r = 0;
        for (; std::getline(rows, row_text, '/'); ++r) {
            std::stringstream cells(row_text);
            std::string name;
            for (std::int64_t col = 0; std::getline(cells, name, ','); ++col) {
                if (name == ".") continue;
                auto it = std::find_if(ts.tiles.begin(), ts.tiles.end(), [&](const auto& t) { return t.name == name; });
                if (it == ts.tiles.end()) throw usage_error("--seed-row names unknown tile '" + name + "'");
                try {
                    seed_grid = tiling::attach(seed_grid, {r, col}, *it);
                } catch (const tiling::attach_error& e) {
                    throw usage_error(std::string("--seed-row: ") + e.what());
                }
            }
        }
        const auto run = tiling::assemble_generic(ts, seed_grid, a.steps, c.seed, bonds);
        body = {{"mode", "tileset"},
                {"attachments", run.attachments},
                {"stuck", run.stuck},
                {"adjacency_valid", tiling::adjacency_valid(run.grid)},
                {"readout", readout_json(run.grid)},
                {"grid", io::to_json(run.grid)}};
        text = "attachments: " + std::to_string(run.attachments) + (run.stuck ? " (stuck)" : "") + "\nreadout: " +
               (body["readout"].is_null() ? std::string("none") : body["readout"].get<std::string>()) + "\n";
    } else {
        if (a.x.empty()) throw usage_error("tile needs --x or --tileset");
        if (a.y0 != 0 && a.y0 != 1) throw usage_error("--y0 must be 0 or 1");
        const auto x = parse_bits(a.x, "--x");
        const std::unique_ptr<bool[]> buf(new bool[x.size()]);
        std::copy(x.begin(), x.end(), buf.get());
        const std::span<const bool> span(buf.get(), x.size());
        d.param("x", a.x);
        d.param("y0", std::to_string(a.y0));
        d.param("generic", a.generic ? "1" : "0");
        d.param("steps", std::to_string(a.steps));
        if (a.generic) {
            const auto seed_grid = tiling::xor_seed_grid(span, a.y0 == 1);
            const auto run = tiling::assemble_generic(tiling::xor_tile_set(), seed_grid, a.steps, c.seed, 2);
            body = {{"mode", "xor-generic"},
                    {"x", a.x},
                    {"y0", a.y0},
                    {"attachments", run.attachments},
                    {"stuck", run.stuck},
                    {"y", readout_json(run.grid)},
                    {"grid", io::to_json(run.grid)}};
        } else {
            const auto run = tiling::run_xor(span, a.y0 == 1);
            body = {{"mode", "xor"}, {"x", a.x}, {"y0", a.y0}, {"y", bits_string(run.y)}, {"grid", io::to_json(run.grid)}};
        }
        text = "x:  " + a.x + "\ny0: " + std::to_string(a.y0) + "\ny:  " +
               (body["y"].is_null() ? std::string("none") : body["y"].get<std::string>()) + "\n";
    }
    const json meta = metadata("tile", c, d);
    if (c.format == "text") {
        emit(c, meta_line(meta) + text);
    } else {
        json out = {{"meta", meta}};
        out.update(body);
        emit(c, json_text(out));
    }
    return ok;
}

// ---- dsd-compile

struct CompileArgs {
    std::string file;
    bool cascade = false;
    bool dual_rail = false;
    std::string emit = "json";
};

int run_compile(const CompileArgs& a, const Common& c) {
    const std::string bytes = read_file(a.file);
    circuit::CircuitAst ast;
    try {
        ast = circuit::parse_circuit(bytes);
    } catch (const input_error& e) {
        throw input_error(a.file + ": " + e.what());
    }
    const auto out = circuit::compile(ast, {!a.cascade, a.dual_rail});
    for (const auto& w : out.warnings) warn(w);

    Digest d;
    d.param("multi_input", a.cascade ? "0" : "1");
    d.param("dual_rail", a.dual_rail ? "1" : "0");
    d.file(bytes);
    const json meta = metadata("dsd-compile", c, d);
    if (a.emit == "stats") {
        emit(c, meta_line(meta) + circuit::format_stats(out.stats) + "literature_oligos_three_level_eight_gates=130\n");
        return ok;
    }
    json j = {{"meta", meta}};
    j.update(io::to_json(out));
    emit(c, json_text(j));
    return ok;
}

// ---- dsd-sim

struct SimArgs {
    std::string file;
    std::string assign;
    double leak_rate = 0.0;
    std::size_t max_events = 100000;
    std::string trace;
};

std::map<std::string, bool> parse_assignment(const std::string& s) {
    std::map<std::string, bool> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 2 != item.size() ||
            (item.back() != '0' && item.back() != '1')) {
            throw usage_error("--assign expects name=0|1[,name=0|1...], got '" + item + "'");
        }
        out[item.substr(0, eq)] = item.back() == '1';
    }
    return out;
}

void write_trace(const std::string& path, const std::vector<dsd::ReactionEvent>& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot write '" + path + "'");
    for (std::size_t i = 0; i < trace.size(); ++i) {
        json line = {{"step", i}};
        line.update(io::to_json(trace[i]));
        out << line.dump() << "\n";
    }
}

json waste_json(const dsd::SolutionState& s) {
    std::uint64_t strands = 0;
    std::uint64_t complexes = 0;
    for (const auto& [x, n] : s.waste_strands) strands += n;
    for (const auto& [x, n] : s.waste_complexes) complexes += n;
    return {{"strands", strands}, {"complexes", complexes}};
}

int run_sim(const SimArgs& a, const Common& c) {
    if (!(a.leak_rate >= 0.0)) throw usage_error("--leak-rate must be non-negative");
    const std::string bytes = read_file(a.file);
    const auto raw = io::parse_json(bytes);
    Digest d;
    d.param("assign", a.assign);
    d.param("leak_rate", fmt_double(a.leak_rate));
    d.param("max_events", std::to_string(a.max_events));
    d.file(bytes);
    const json meta = metadata("dsd-sim", c, d);

    dsd::SimulationResult run;
    json outputs = nullptr;
    if (raw.contains("initial_state") && raw.contains("inputs")) {
        const auto compiled = io::compiled_from_json(raw);
        const auto assignment = parse_assignment(a.assign);
        dsd::SolutionState start;
        try {
            start = circuit::inject(compiled, assignment);
        } catch (const argument_error& e) {
            throw usage_error(e.what());
        }
        run = dsd::simulate(start, c.seed, a.leak_rate, a.max_events);
        if (run.quiescent) {
            try {
                outputs = json::object();
                for (const auto& [name, bit] : circuit::read_outputs(compiled, run.final_state)) {
                    outputs[name] = bit ? 1 : 0;
                }
            } catch (const circuit::encoding_error& e) {
                if (!a.trace.empty()) write_trace(a.trace, run.trace);
                throw no_solution_error(e.what());
            }
        }
    } else {
        if (!a.assign.empty()) throw usage_error("--assign needs a compiled circuit, not a bare state");
        run = dsd::simulate(io::state_from_json(raw), c.seed, a.leak_rate, a.max_events);
    }
    if (!a.trace.empty()) write_trace(a.trace, run.trace);
    if (!run.quiescent) {
        throw no_solution_error("simulation not quiescent after " + std::to_string(a.max_events) + " events");
    }

    if (c.format == "text") {
        std::string out = meta_line(meta);
        out += "events: " + std::to_string(run.trace.size()) + "\n";
        if (outputs.is_object()) {
            for (const auto& [name, v] : outputs.items()) out += name + " = " + std::to_string(v.get<int>()) + "\n";
        }
        out += "waste: " + std::to_string(dsd::waste_census(run.final_state).total()) + "\n";
        emit(c, out);
        return ok;
    }
    emit(c, json_text({{"meta", meta},
                       {"events", run.trace.size()},
                       {"quiescent", run.quiescent},
                       {"outputs", outputs},
                       {"waste", waste_json(run.final_state)},
                       {"final_state", io::to_json(run.final_state)}}));
    return ok;
}

// ---- feasibility

struct FeasibilityArgs {
    std::string action;
    feasibility::TspQuery q;
};

int run_feasibility(const FeasibilityArgs& a, const Common& c) {
    try {
        a.q.validate();
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    Digest d;
    d.param("n", std::to_string(a.q.n));
    d.param("seg_len", std::to_string(a.q.seg_len));
    d.param("copies", std::to_string(a.q.copies));
    d.param("mass_per_bp", fmt_double(a.q.mass_per_bp));
    d.param("avogadro", fmt_double(a.q.avogadro));
    const json meta = metadata("feasibility", c, d);

    const auto paths = feasibility::path_count(a.q.n);
    const auto strand_bp = feasibility::path_strand_length(a.q.n, a.q.seg_len);
    const double mass = feasibility::total_mass_kg(a.q);
    const auto strands = feasibility::strands_required(a.q.n);
    const auto bound = feasibility::min_length_for(strands);

    if (c.format == "text") {
        std::string out = meta_line(meta);
        out += "cities:                 " + std::to_string(a.q.n) + "\n";
        out += "paths (n!):             " + feasibility::format_sci(paths) + "\n";
        out += "path strand length:     " + std::to_string(strand_bp) + " bp\n";
        out += "DNA mass for " + std::to_string(a.q.copies) + " copies: " + feasibility::format_sci(mass) + " kg\n";
        out += "unique strands:         " + std::to_string(strands) + "\n";
        out += "min unique length:      " + std::to_string(bound) + " bp (4^L bound; literature figure " +
               std::to_string(feasibility::reported_length_for_2015_bp) + " bp)\n";
        out += "\n" + feasibility::comparison_report();
        emit(c, out);
        return ok;
    }
    auto profile = [](const feasibility::TechProfile& p) {
        return json{{"name", p.name},
                    {"storage", p.storage},
                    {"speed", p.speed},
                    {"efficiency", p.efficiency},
                    {"architecture", p.architecture},
                    {"joules_per_operation", p.joules_per_operation}};
    };
    emit(c, json_text({{"meta", meta},
                       {"n", a.q.n},
                       {"paths", paths.str()},
                       {"paths_approx", feasibility::format_sci(paths)},
                       {"strand_bp", strand_bp},
                       {"mass_kg", mass},
                       {"strands_required", strands},
                       {"capacity_bound_bp", bound},
                       {"literature_length_bp", feasibility::reported_length_for_2015_bp},
                       {"technologies", {profile(feasibility::silicon_profile()), profile(feasibility::dna_profile())}}}));
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DNA computing workbench: sequence design, Hamiltonian path search, tile assembly, strand "
                 "displacement circuits and feasibility arithmetic"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub, bool text) {
        sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
        sub->add_option("-o,--output", common.output, "write the result here instead of stdout");
        if (text) {
            sub->add_option("--format", common.format, "json or text")
                ->check(CLI::IsMember({"json", "text"}))
                ->capture_default_str();
        }
    };

    DesignArgs design;
    auto* s_design = app.add_subcommand("design", "generate a constrained sequence library");
    add_common(s_design, true);
    s_design->add_option("--length", design.length, "bases per sequence")->capture_default_str();
    s_design->add_option("-k,--count", design.count, "number of sequences")->capture_default_str();
    s_design->add_option("--gc-min", design.gc_min)->capture_default_str();
    s_design->add_option("--gc-max", design.gc_max)->capture_default_str();
    s_design->add_option("--tm-min", design.tm_min, "Wallace-rule melting temperature floor");
    s_design->add_option("--tm-max", design.tm_max);
    s_design->add_option("--min-hamming", design.min_hamming)->capture_default_str();
    s_design->add_option("--max-homopolymer", design.max_homopolymer);
    s_design->add_option("--attempts", design.attempts, "attempt budget per sequence")->capture_default_str();

    AdlemanArgs adl;
    auto* s_adl = app.add_subcommand("adleman", "encode a graph, assemble walks and select Hamiltonian paths");
    add_common(s_adl, true);
    s_adl->add_option("--graph,--input", adl.graph, "graph JSON file")->required()->check(CLI::ExistingFile);
    s_adl->add_option("--start", adl.start)->required();
    s_adl->add_option("--end", adl.end)->required();
    s_adl->add_option("--mode", adl.mode)->check(CLI::IsMember({"exhaustive", "stochastic"}))->capture_default_str();
    s_adl->add_option("--samples", adl.samples, "stochastic walks")->capture_default_str();
    s_adl->add_option("--max-nodes", adl.max_nodes, "exhaustive walk length cap (default: node count)");
    s_adl->add_option("--stop-probability", adl.stop_probability)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    s_adl->add_option("--length", adl.length, "node sequence length")->capture_default_str();

    TileArgs tile;
    auto* s_tile = app.add_subcommand("tile", "run the XOR tile set or assemble a tile-set file");
    add_common(s_tile, true);
    s_tile->add_option("--x", tile.x, "input bits, e.g. 1011");
    s_tile->add_option("--y0", tile.y0, "initial carry bit")->capture_default_str();
    s_tile->add_flag("--generic", tile.generic, "grow the XOR assembly by random attachment");
    s_tile->add_option("--tileset,--input", tile.tileset, "tile set JSON file")->check(CLI::ExistingFile);
    s_tile->add_option("--seed-row", tile.seed_row, "seed tiles: comma-separated names per row, rows joined by '/' from row 0 upward");
    s_tile->add_option("--steps", tile.steps, "attachment budget")->capture_default_str();
    s_tile->add_option("--min-bonds", tile.min_bonds, "matching neighbours required to attach");

    CompileArgs comp;
    auto* s_comp = app.add_subcommand("dsd-compile", "compile a .circ circuit to strand displacement species");
    add_common(s_comp, false);
    s_comp->add_option("file,--input", comp.file, "circuit file")->required()->check(CLI::ExistingFile);
    s_comp->add_flag("--cascade", comp.cascade, "lower k-input AND to a chain of 2-input gates");
    s_comp->add_flag("--multi-input", [&](std::int64_t) { comp.cascade = false; }, "single complex per k-input AND (default)");
    s_comp->add_flag("--dual-rail", comp.dual_rail, "dual-rail encoding (implied by NOT)");
    s_comp->add_option("--emit", comp.emit, "json or stats")->check(CLI::IsMember({"json", "stats"}))->capture_default_str();

    SimArgs sim;
    auto* s_sim = app.add_subcommand("dsd-sim", "simulate a compiled circuit or a species state");
    add_common(s_sim, true);
    s_sim->add_option("file,--input", sim.file, "compiled circuit or state JSON")->required()->check(CLI::ExistingFile);
    s_sim->add_option("--assign", sim.assign, "input bits, e.g. a=1,b=0");
    s_sim->add_option("--leak-rate", sim.leak_rate, "relative rate of leak reactions")->capture_default_str();
    s_sim->add_option("--max-events", sim.max_events)->capture_default_str();
    s_sim->add_option("--trace", sim.trace, "write the event trace as JSON lines");

    FeasibilityArgs feas;
    auto* s_feas = app.add_subcommand("feasibility", "resource arithmetic for brute-force DNA search");
    add_common(s_feas, true);
    s_feas->add_option("action", feas.action, "report (default)")->check(CLI::IsMember({"report"}));
    s_feas->add_option("--n", feas.q.n, "cities")->capture_default_str();
    s_feas->add_option("--seg-len", feas.q.seg_len, "bases per segment")->capture_default_str();
    s_feas->add_option("--copies", feas.q.copies, "copies of each path")->capture_default_str();
    s_feas->add_option("--mass-per-bp", feas.q.mass_per_bp, "g/mol per base pair")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*s_design) return run_design(design, common);
        if (*s_adl) return run_adleman(adl, common);
        if (*s_tile) return run_tile(tile, common);
        if (*s_comp) return run_compile(comp, common);
        if (*s_sim) return run_sim(sim, common);
        if (*s_feas) return run_feasibility(feas, common);
    } catch (const usage_error& e) {
        report(e.what());
        return usage;
    } catch (const input_error& e) {
        report(e.what());
        return malformed;
    } catch (const no_solution_error& e) {
        report(e.what());
        return no_solution;
    } catch (const std::exception& e) {
        report(e.what());
        return usage;
    }
    return usage;
}
