#pragma once

#include "strandbench/errors.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace strandbench {

/// Ordered bases over {A, C, G, T}. Always uppercase.
class Sequence {
  public:
    Sequence() = default;

    /// Throws input_error on any character outside ACGT.
    explicit Sequence(std::string bases) : bases_(std::move(bases)) {
        for (std::size_t i = 0; i < bases_.size(); ++i) {
            if (!is_base(bases_[i])) {
                throw input_error("invalid base '" + std::string(1, bases_[i]) + "' at position " +
                                  std::to_string(i) + " (expected A, C, G or T)");
            }
        }
    }

    static constexpr bool is_base(char c) noexcept { return c == 'A' || c == 'C' || c == 'G' || c == 'T'; }

    const std::string& str() const noexcept { return bases_; }
    std::string_view view() const noexcept { return bases_; }
    std::size_t size() const noexcept { return bases_.size(); }
    bool empty() const noexcept { return bases_.empty(); }
    char operator[](std::size_t i) const { return bases_[i]; }

    bool starts_with(const Sequence& prefix) const { return view().starts_with(prefix.view()); }
    bool ends_with(const Sequence& suffix) const { return view().ends_with(suffix.view()); }
    bool contains(const Sequence& probe) const { return bases_.find(probe.bases_) != std::string::npos; }

    Sequence substr(std::size_t pos, std::size_t len = std::string::npos) const {
        Sequence out;
        out.bases_ = bases_.substr(pos, len);
        return out;
    }

    friend Sequence operator+(const Sequence& a, const Sequence& b) {
        Sequence out;
        out.bases_ = a.bases_ + b.bases_;
        return out;
    }

    friend bool operator==(const Sequence&, const Sequence&) = default;
    friend std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) {
        return a.bases_.compare(b.bases_) <=> 0;
    }

  private:
    std::string bases_;
};

constexpr char complement_base(char b) noexcept {
    switch (b) {
        case 'A': return 'T';
        case 'T': return 'A';
        case 'C': return 'G';
        case 'G': return 'C';
        default: return b;
    }
}

/// Positionwise Watson-Crick complement (A<->T, C<->G).
inline Sequence complement(const Sequence& s) {
    std::string out = s.str();
    std::transform(out.begin(), out.end(), out.begin(), complement_base);
    return Sequence(std::move(out));
}

inline Sequence reverse_complement(const Sequence& s) {
    std::string out(s.str().rbegin(), s.str().rend());
    std::transform(out.begin(), out.end(), out.begin(), complement_base);
    return Sequence(std::move(out));
}

inline std::size_t gc_count(const Sequence& s) {
    return static_cast<std::size_t>(std::count_if(s.str().begin(), s.str().end(),
                                                  [](char c) { return c == 'G' || c == 'C'; }));
}

/// Wallace rule: 2 degrees per A/T, 4 per G/C.
inline int melting_temp(const Sequence& s) {
    const auto gc = static_cast<int>(gc_count(s));
    const auto at = static_cast<int>(s.size()) - gc;
    return 2 * at + 4 * gc;
}

/// Longest run of one repeated base; 0 for the empty sequence.
inline std::size_t longest_homopolymer(const Sequence& s) {
    std::size_t best = 0;
    std::size_t run = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        run = (i > 0 && s[i] == s[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

/// Number of mismatched positions. Sequences must have equal length.
inline std::size_t hamming(const Sequence& a, const Sequence& b) {
    if (a.size() != b.size()) {
        throw argument_error("hamming distance needs equal lengths");
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] != b[i] ? 1 : 0;
    }
    return d;
}

}  // namespace strandbench

template <>
struct std::hash<strandbench::Sequence> {
    std::size_t operator()(const strandbench::Sequence& s) const noexcept { return std::hash<std::string>{}(s.str()); }
};
