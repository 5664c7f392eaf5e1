#pragma once

#include "strandbench/errors.hpp"
#include "strandbench/random.hpp"
#include "strandbench/sequence.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace strandbench {

/// Constraints a designed oligo library must satisfy.
struct DesignConstraints {
    std::size_t length = 20;
    double gc_min = 0.0;
    double gc_max = 1.0;
    double tm_min = 0.0;
    double tm_max = std::numeric_limits<double>::max();
    std::size_t min_hamming = 1;
    std::size_t max_homopolymer = std::numeric_limits<std::size_t>::max();

    /// Checks interval ordering and ranges; feasibility is checked by design_library.
    void validate() const {
        if (!(gc_min >= 0.0 && gc_max <= 1.0 && gc_min <= gc_max)) {
            throw argument_error("gc_fraction interval must satisfy 0 <= min <= max <= 1");
        }
        if (!(tm_min <= tm_max)) {
            throw argument_error("tm_window interval must satisfy min <= max");
        }
        if (max_homopolymer < 1) {
            throw argument_error("max_homopolymer must be >= 1");
        }
    }
};

enum class Constraint { length, gc_fraction, tm_window, homopolymer, min_hamming };

inline const char* to_string(Constraint c) {
    switch (c) {
        case Constraint::length: return "length";
        case Constraint::gc_fraction: return "gc_fraction";
        case Constraint::tm_window: return "tm_window";
        case Constraint::homopolymer: return "max_homopolymer";
        case Constraint::min_hamming: return "min_hamming";
    }
    return "?";
}

/// Which form of the other sequence a distance violation was measured against.
enum class Relation { identity, complement, reverse_complement };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::identity: return "identity";
        case Relation::complement: return "complement";
        case Relation::reverse_complement: return "reverse_complement";
    }
    return "?";
}

struct Violation {
    Constraint constraint;
    std::size_t index;
    std::optional<std::size_t> other;  // set for pairwise distance violations
    Relation relation = Relation::identity;
    std::string detail;
};

namespace detail {

inline double gc_fraction(const Sequence& s) {
    return s.empty() ? 0.0 : static_cast<double>(gc_count(s)) / static_cast<double>(s.size());
}

inline std::optional<Violation> check_single(const Sequence& s, std::size_t index, const DesignConstraints& c) {
    if (s.size() != c.length) {
        return Violation{Constraint::length, index, std::nullopt, Relation::identity,
                         "length " + std::to_string(s.size()) + " != " + std::to_string(c.length)};
    }
    const double gc = gc_fraction(s);
    if (gc < c.gc_min || gc > c.gc_max) {
        return Violation{Constraint::gc_fraction, index, std::nullopt, Relation::identity,
                         "gc fraction " + std::to_string(gc) + " outside window"};
    }
    const int tm = melting_temp(s);
    if (tm < c.tm_min || tm > c.tm_max) {
        return Violation{Constraint::tm_window, index, std::nullopt, Relation::identity,
                         "melting temperature " + std::to_string(tm) + " outside window"};
    }
    const std::size_t run = longest_homopolymer(s);
    if (run > c.max_homopolymer) {
        return Violation{Constraint::homopolymer, index, std::nullopt, Relation::identity,
                         "homopolymer run " + std::to_string(run)};
    }
    return std::nullopt;
}

/// Smallest distance between `a` and `b` in any of its three forms.
inline std::optional<Violation> check_pair(const Sequence& a, std::size_t i, const Sequence& b, std::size_t j,
                                           const DesignConstraints& c) {
    if (a.size() != b.size() || c.min_hamming == 0) {
        return std::nullopt;
    }
    const std::array<std::pair<Relation, std::size_t>, 3> d{{
        {Relation::identity, hamming(a, b)},
        {Relation::complement, hamming(a, complement(b))},
        {Relation::reverse_complement, hamming(a, reverse_complement(b))},
    }};
    const auto* worst = &d[0];
    for (const auto& e : d) {
        if (e.second < worst->second) {
            worst = &e;
        }
    }
    if (worst->second >= c.min_hamming) {
        return std::nullopt;
    }
    return Violation{Constraint::min_hamming, i, j, worst->first,
                     "distance " + std::to_string(worst->second) + " to " + to_string(worst->first) + " of #" +
                         std::to_string(j)};
}

}  // namespace detail

/// Every violated constraint in `seqs`. An empty result means compliant.
///
/// Per-sequence checks report the first failing constraint for that index.
/// Each unordered pair is reported at most once, against the closest of the
/// other sequence, its complement and its reverse complement.
inline std::vector<Violation> verify_library(const std::vector<Sequence>& seqs, const DesignConstraints& c) {
    std::vector<Violation> report;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        if (auto v = detail::check_single(seqs[i], i, c)) {
            report.push_back(std::move(*v));
        }
    }
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        for (std::size_t j = i + 1; j < seqs.size(); ++j) {
            if (auto v = detail::check_pair(seqs[i], i, seqs[j], j, c)) {
                report.push_back(std::move(*v));
            }
        }
    }
    return report;
}

/// design_library could not satisfy the constraints.
class design_infeasible : public std::runtime_error {
  public:
    design_infeasible(Constraint c, const std::string& what)
        : std::runtime_error(std::string("design infeasible (") + to_string(c) + "): " + what), constraint_(c) {}

    Constraint constraint() const noexcept { return constraint_; }

  private:
    Constraint constraint_;
};

/// Seeded rejection sampler producing `k` sequences that pass verify_library.
///
/// Structurally impossible constraint sets fail up front. Otherwise each
/// sequence gets `attempts_per_sequence` random candidates; when the budget
/// runs out the error names the constraint that rejected the most candidates.
inline std::vector<Sequence> design_library(const DesignConstraints& c, std::size_t k, std::uint64_t seed,
                                            std::size_t attempts_per_sequence = 10'000) {
    c.validate();
    if (k < 1) {
        throw argument_error("design_library: k must be >= 1");
    }
    const std::size_t len = c.length;

    bool gc_ok = false;
    bool tm_ok = false;
    for (std::size_t g = 0; g <= len; ++g) {
        const double frac = len == 0 ? 0.0 : static_cast<double>(g) / static_cast<double>(len);
        if (frac < c.gc_min || frac > c.gc_max) {
            continue;
        }
        gc_ok = true;
        const double tm = 2.0 * static_cast<double>(len) + 2.0 * static_cast<double>(g);
        if (tm >= c.tm_min && tm <= c.tm_max) {
            tm_ok = true;
        }
    }
    if (!gc_ok) {
        throw design_infeasible(Constraint::gc_fraction, "no GC count of a length-" + std::to_string(len) +
                                                             " sequence falls in the window");
    }
    if (!tm_ok) {
        throw design_infeasible(Constraint::tm_window,
                                "no admissible GC count yields a melting temperature in the window");
    }
    if (c.min_hamming > len) {
        throw design_infeasible(Constraint::min_hamming, "minimum distance " + std::to_string(c.min_hamming) +
                                                             " exceeds length " + std::to_string(len));
    }

    static constexpr std::array<char, 4> bases{'A', 'C', 'G', 'T'};
    Rng rng(seed);
    std::vector<Sequence> out;
    out.reserve(k);
    std::string buf(len, 'A');
    for (std::size_t i = 0; i < k; ++i) {
        std::array<std::size_t, 5> rejections{};
        bool placed = false;
        for (std::size_t attempt = 0; attempt < attempts_per_sequence && !placed; ++attempt) {
            for (auto& b : buf) {
                b = bases[rng.below(4)];
            }
            Sequence cand(buf);
            if (auto v = detail::check_single(cand, i, c)) {
                ++rejections[static_cast<std::size_t>(v->constraint)];
                continue;
            }
            bool clash = false;
            for (std::size_t j = 0; j < out.size() && !clash; ++j) {
                clash = detail::check_pair(out[j], j, cand, i, c).has_value();
            }
            if (clash) {
                ++rejections[static_cast<std::size_t>(Constraint::min_hamming)];
                continue;
            }
            out.push_back(std::move(cand));
            placed = true;
        }
        if (!placed) {
            std::size_t worst = 0;
            for (std::size_t r = 1; r < rejections.size(); ++r) {
                if (rejections[r] > rejections[worst]) {
                    worst = r;
                }
            }
            throw design_infeasible(static_cast<Constraint>(worst),
                                    "sequence " + std::to_string(i + 1) + " of " + std::to_string(k) +
                                        " not placed after " + std::to_string(attempts_per_sequence) + " attempts");
        }
    }
    return out;
}

}  // namespace strandbench
