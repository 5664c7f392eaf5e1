#pragma once

#include "strandbench/errors.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace strandbench::dsd {

enum class DomainKind : std::uint8_t { toehold, migration };

/// Opaque domain symbol. A domain binds its complement: same id and kind,
/// opposite polarity.
struct Domain {
    std::string id;
    DomainKind kind = DomainKind::migration;
    bool comp = false;

    Domain complement() const { return {id, kind, !comp}; }
    bool binds(const Domain& o) const { return id == o.id && kind == o.kind && comp != o.comp; }
    bool is_toehold() const { return kind == DomainKind::toehold; }

    friend auto operator<=>(const Domain&, const Domain&) = default;
};

inline Domain toehold(std::string id) { return {std::move(id), DomainKind::toehold, false}; }
inline Domain migration(std::string id) { return {std::move(id), DomainKind::migration, false}; }

inline std::string to_string(const Domain& d) { return d.id + (d.comp ? "*" : ""); }

/// Non-empty ordered list of domains.
class Strand {
  public:
    explicit Strand(std::vector<Domain> domains) : domains_(std::move(domains)) {
        if (domains_.empty()) {
            throw argument_error("a strand needs at least one domain");
        }
    }

    const std::vector<Domain>& domains() const noexcept { return domains_; }
    std::size_t size() const noexcept { return domains_.size(); }
    const Domain& operator[](std::size_t i) const { return domains_[i]; }
    const Domain& front() const { return domains_.front(); }

    friend auto operator<=>(const Strand&, const Strand&) = default;
    friend bool operator==(const Strand&, const Strand&) = default;

  private:
    std::vector<Domain> domains_;
};

inline std::string to_string(const Strand& s) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += (i ? " " : "") + to_string(s[i]);
    }
    return out + ">";
}

/// A strand hybridised to backbone positions [begin, end); strand domain
/// offset + k pairs with backbone domain begin + k. Other domains dangle.
struct Incumbent {
    Strand strand;
    std::size_t begin;
    std::size_t end;
    std::size_t offset = 0;

    friend auto operator<=>(const Incumbent&, const Incumbent&) = default;
    friend bool operator==(const Incumbent&, const Incumbent&) = default;
};

/// Backbone strand with bound incumbents. Uncovered backbone positions are
/// exposed; an exposed toehold is where an invader can start.
class GateComplex {
  public:
    GateComplex(Strand backbone, std::vector<Incumbent> incumbents)
        : backbone_(std::move(backbone)), incumbents_(std::move(incumbents)) {
        std::sort(incumbents_.begin(), incumbents_.end(),
                  [](const Incumbent& a, const Incumbent& b) { return a.begin < b.begin; });
        std::vector<bool> covered(backbone_.size(), false);
        for (const auto& inc : incumbents_) {
            if (inc.begin >= inc.end || inc.end > backbone_.size()) {
                throw argument_error("incumbent range out of bounds");
            }
            if (inc.offset + (inc.end - inc.begin) > inc.strand.size()) {
                throw argument_error("incumbent strand too short for its bound range");
            }
            for (std::size_t k = 0; k < inc.end - inc.begin; ++k) {
                if (covered[inc.begin + k]) {
                    throw argument_error("incumbent ranges overlap");
                }
                covered[inc.begin + k] = true;
                if (!inc.strand[inc.offset + k].binds(backbone_[inc.begin + k])) {
                    throw argument_error("incumbent " + to_string(inc.strand) + " is not complementary to backbone " +
                                         to_string(backbone_) + " at position " + std::to_string(inc.begin + k));
                }
            }
        }
        for (std::size_t i = 0; i < covered.size(); ++i) {
            if (!covered[i]) {
                exposed_.push_back(i);
            }
        }
    }

    const Strand& backbone() const noexcept { return backbone_; }
    const std::vector<Incumbent>& incumbents() const noexcept { return incumbents_; }
    const std::vector<std::size_t>& exposed() const noexcept { return exposed_; }

    std::vector<std::size_t> exposed_toeholds() const {
        std::vector<std::size_t> out;
        for (auto p : exposed_) {
            if (backbone_[p].is_toehold()) {
                out.push_back(p);
            }
        }
        return out;
    }

    bool is_exposed(std::size_t p) const { return std::binary_search(exposed_.begin(), exposed_.end(), p); }

    /// Index of the incumbent whose range starts at `begin`.
    std::optional<std::size_t> incumbent_starting_at(std::size_t begin) const {
        for (std::size_t i = 0; i < incumbents_.size(); ++i) {
            if (incumbents_[i].begin == begin) {
                return i;
            }
        }
        return std::nullopt;
    }

    /// No exposed toehold: nothing can ever bind again.
    bool is_spent() const { return exposed_toeholds().empty(); }

    friend bool operator==(const GateComplex& a, const GateComplex& b) {
        return a.backbone_ == b.backbone_ && a.incumbents_ == b.incumbents_;
    }
    friend auto operator<=>(const GateComplex& a, const GateComplex& b) {
        if (auto c = a.backbone_ <=> b.backbone_; c != 0) {
            return c;
        }
        return a.incumbents_ <=> b.incumbents_;
    }

  private:
    Strand backbone_;
    std::vector<Incumbent> incumbents_;
    std::vector<std::size_t> exposed_;
};

inline std::string to_string(const GateComplex& c) {
    std::string out = "{" + to_string(c.backbone());
    for (const auto& inc : c.incumbents()) {
        out += " | " + to_string(inc.strand) + "@" + std::to_string(inc.begin) + ":" + std::to_string(inc.end);
    }
    return out + "}";
}

template <class T>
using Multiset = std::map<T, std::uint64_t>;

template <class T>
void add_to(Multiset<T>& m, const T& item, std::uint64_t n = 1) {
    if (n > 0) {
        m[item] += n;
    }
}

template <class T>
void take_from(Multiset<T>& m, const T& item, std::uint64_t n = 1) {
    auto it = m.find(item);
    if (it == m.end() || it->second < n) {
        throw std::logic_error("removing more copies of a species than present");
    }
    it->second -= n;
    if (it->second == 0) {
        m.erase(it);
    }
}

/// Free strands, gate complexes and waste, each with molecule counts.
/// Spent complexes (no exposed toehold) live in waste_complexes.
struct SolutionState {
    Multiset<Strand> free;
    Multiset<GateComplex> complexes;
    Multiset<Strand> waste_strands;
    Multiset<GateComplex> waste_complexes;

    friend bool operator==(const SolutionState&, const SolutionState&) = default;
};

/// Instance count per (domain id, complemented).
using Census = std::map<std::pair<std::string, bool>, std::uint64_t>;

inline void count_into(Census& c, const Strand& s, std::uint64_t n) {
    for (const auto& d : s.domains()) {
        c[{d.id, d.comp}] += n;
    }
}

inline void count_into(Census& c, const GateComplex& g, std::uint64_t n) {
    count_into(c, g.backbone(), n);
    for (const auto& inc : g.incumbents()) {
        count_into(c, inc.strand, n);
    }
}

inline Census census(const SolutionState& s) {
    Census c;
    for (const auto& [x, n] : s.free) count_into(c, x, n);
    for (const auto& [x, n] : s.complexes) count_into(c, x, n);
    for (const auto& [x, n] : s.waste_strands) count_into(c, x, n);
    for (const auto& [x, n] : s.waste_complexes) count_into(c, x, n);
    return c;
}

}  // namespace strandbench::dsd
