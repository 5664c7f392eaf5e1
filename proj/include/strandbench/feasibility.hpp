#pragma once

#include "strandbench/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace strandbench::feasibility {

using BigInt = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

struct TspQuery {
    std::uint64_t n = 62;
    std::uint64_t seg_len = 150;  // bases per segment
    std::uint64_t copies = 100;
    double mass_per_bp = 660.0;  // g/mol
    double avogadro = 6.02214076e23;

    void validate() const {
        if (n < 1) throw argument_error("n must be at least 1");
        if (seg_len < 1) throw argument_error("seg_len must be at least 1");
        if (copies < 1) throw argument_error("copies must be at least 1");
        if (!(mass_per_bp > 0)) throw argument_error("mass_per_bp must be positive");
        if (!(avogadro > 0)) throw argument_error("avogadro must be positive");
    }
};

/// n! exactly; every ordering of the n cities counts as a path.
inline BigInt path_count(std::uint64_t n) {
    if (n < 1) throw argument_error("n must be at least 1");
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

/// n city segments plus n - 1 link segments.
inline std::uint64_t path_strand_length(std::uint64_t n, std::uint64_t seg_len) {
    if (n < 1) throw argument_error("n must be at least 1");
    return (2 * n - 1) * seg_len;
}

inline double total_mass_kg(const TspQuery& q) {
    q.validate();
    const BigInt bases = path_count(q.n) * q.copies * path_strand_length(q.n, q.seg_len);
    BigFloat grams = BigFloat(bases) * BigFloat(q.mass_per_bp) / BigFloat(q.avogadro);
    return static_cast<double>(grams / 1000);
}

/// n node strands, n(n-1)/2 link strands and n auxiliary strands.
inline std::uint64_t strands_required(std::uint64_t n) {
    if (n < 1) throw argument_error("n must be at least 1");
    return n * (n + 3) / 2;
}

/// 4^L distinct sequences of length L.
inline BigInt unique_capacity(std::uint64_t length) {
    if (length < 1) throw argument_error("length must be at least 1");
    return BigInt(1) << (2 * length);
}

/// Smallest L with 4^L >= k.
inline std::uint64_t min_length_for(const BigInt& k) {
    if (k < 1) throw argument_error("k must be at least 1");
    std::uint64_t l = 1;
    while (unique_capacity(l) < k) ++l;
    return l;
}

/// Strand length quoted in the literature for 2015 unique strands. It is
/// shown next to min_length_for, not derived.
inline constexpr std::uint64_t reported_length_for_2015_bp = 142;

struct TechProfile {
    std::string name;
    std::string storage;
    std::string speed;
    std::string efficiency;
    std::string architecture;
    double joules_per_operation;
};

inline TechProfile silicon_profile() {
    return {"Silicon-based computing",
            "one bit per 10^12 cubic nanometers",
            "10^8 to 10^12 operations per second",
            "10^9 operations per Joule",
            "Effective for single operation; multiple cores of CPU for multiple operations at one time (up to six "
            "operations)",
            1e-9};
}

inline TechProfile dna_profile() {
    return {"DNA-mediated computing",
            "one bit per cubic nanometer",
            "10^14 to 10^20 operations per second (ligation)",
            "2x10^19 operations per Joule",
            "Ineffective for single operation; naturally effective for massive parallel operations",
            5e-20};
}

inline std::string format_sci(double v, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
    return buf;
}

inline std::string format_sci(const BigInt& v, int digits = 3) {
    std::string s = v.str();
    if (s.size() <= static_cast<std::size_t>(digits)) return s;
    return format_sci(static_cast<double>(BigFloat(v)), digits);
}

/// Plain-text table of both technology profiles.
inline std::string comparison_report() {
    const auto si = silicon_profile();
    const auto dna = dna_profile();
    const std::vector<std::vector<std::string>> rows = {
        {"Storage", si.storage, dna.storage},
        {"Speed", si.speed, dna.speed},
        {"Energy efficiency", si.efficiency, dna.efficiency},
        {"Architecture", si.architecture, dna.architecture},
        {"Energy per operation", format_sci(si.joules_per_operation, 2) + " J",
         format_sci(dna.joules_per_operation, 2) + " J"},
    };
    std::string out;
    for (const auto& r : rows) {
        out += r[0] + "\n  silicon: " + r[1] + "\n  DNA:     " + r[2] + "\n";
    }
    return out;
}

}  // namespace strandbench::feasibility
