#pragma once

#include "strandbench/errors.hpp"
#include "strandbench/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace strandbench {

/// Multiset of sequences with exact integer copy numbers.
///
/// Entries are kept sorted by sequence; adding a sequence that is already
/// present merges the counts, and zero counts are never stored. Every
/// pool operation below returns a new pool and leaves its argument alone,
/// mirroring the single-use nature of a reaction mixture.
class OligoPool {
  public:
    using count_type = std::uint64_t;
    using container = std::map<Sequence, count_type>;

    OligoPool() = default;

    void add(const Sequence& s, count_type count = 1) {
        if (count == 0) {
            throw argument_error("pool counts must be positive");
        }
        entries_[s] += count;
    }

    count_type count(const Sequence& s) const {
        auto it = entries_.find(s);
        return it == entries_.end() ? 0 : it->second;
    }

    const container& entries() const noexcept { return entries_; }
    std::size_t distinct() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    count_type total_copies() const {
        count_type n = 0;
        for (const auto& [seq, c] : entries_) {
            n += c;
        }
        return n;
    }

    /// Sum of length x count over all entries.
    count_type total_bases() const {
        count_type n = 0;
        for (const auto& [seq, c] : entries_) {
            n += seq.size() * c;
        }
        return n;
    }

    friend bool operator==(const OligoPool&, const OligoPool&) = default;

  private:
    container entries_;
};

/// Cuts every sequence immediately after each occurrence of `site`.
/// Occurrences are found leftmost-first without overlap. Empty fragments
/// are not produced; fragments inherit their parent's count.
inline OligoPool cleave(const OligoPool& pool, const Sequence& site) {
    if (site.empty()) {
        throw argument_error("restriction site must be non-empty");
    }
    OligoPool out;
    for (const auto& [seq, count] : pool.entries()) {
        const std::string& s = seq.str();
        std::size_t start = 0;
        std::size_t at = s.find(site.str());
        while (at != std::string::npos) {
            const std::size_t cut = at + site.size();
            out.add(seq.substr(start, cut - start), count);
            start = cut;
            at = s.find(site.str(), cut);
        }
        if (start < s.size()) {
            out.add(seq.substr(start), count);
        }
    }
    return out;
}

/// Gel-style length window, inclusive on both ends.
inline OligoPool filter_by_length(const OligoPool& pool, std::size_t min_len, std::size_t max_len) {
    if (min_len > max_len) {
        throw argument_error("filter_by_length: min must not exceed max");
    }
    OligoPool out;
    for (const auto& [seq, count] : pool.entries()) {
        if (seq.size() >= min_len && seq.size() <= max_len) {
            out.add(seq, count);
        }
    }
    return out;
}

/// PCR with primers for `head` and `tail`: keeps strands that begin with
/// head and end with tail, multiplying their copy number by `gain`.
inline OligoPool pcr_select(const OligoPool& pool, const Sequence& head, const Sequence& tail,
                            OligoPool::count_type gain) {
    if (gain < 1) {
        throw argument_error("pcr_select: gain must be >= 1");
    }
    OligoPool out;
    for (const auto& [seq, count] : pool.entries()) {
        if (seq.starts_with(head) && seq.ends_with(tail)) {
            out.add(seq, count * gain);
        }
    }
    return out;
}

/// Probe-based purification: keeps strands containing `probe`.
inline OligoPool affinity_select(const OligoPool& pool, const Sequence& probe) {
    if (probe.empty()) {
        throw argument_error("affinity_select: probe must be non-empty");
    }
    OligoPool out;
    for (const auto& [seq, count] : pool.entries()) {
        if (seq.contains(probe)) {
            out.add(seq, count);
        }
    }
    return out;
}

}  // namespace strandbench
