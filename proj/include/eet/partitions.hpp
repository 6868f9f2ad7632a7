#pragma once

#include <utility>
#include <vector>

#include "eet/errors.hpp"

namespace eet {

/// A pair-partition of {1..2k}: a word w with w[i] = class of position i+1,
/// every class hit exactly twice. Canonical labels follow first appearance,
/// so equality is plain word comparison. k = 0 (empty word) is allowed.
class PairPartition {
public:
    /// Validates and relabels canonically.
    static PairPartition from_word(std::vector<int> word);

    /// All canonical pair-partitions of 2k positions, (2k-1)!! of them.
    static std::vector<PairPartition> enumerate(int k);

    int k() const { return k_; }
    std::size_t positions() const { return word_.size(); }
    const std::vector<int>& word() const { return word_; }
    /// 1-based class label at 1-based position.
    int cls(std::size_t pos) const { return word_[pos - 1]; }

    /// For each position (in order): (class, conjugate?). The first occurrence
    /// of a class carries z, the second carries z-bar.
    std::vector<std::pair<int, bool>> sign_assignment() const;

    struct Reduction;

    /// Deletes both positions of the canonically-last class k and renumbers.
    Reduction reduce() const;
    /// Same deletion for an arbitrary class label.
    Reduction reduce_class(int cls) const;

    bool operator==(const PairPartition& rhs) const = default;

private:
    PairPartition() = default;
    std::vector<int> word_;
    int k_ = 0;
};

struct PairPartition::Reduction {
    std::size_t k_beta;                          // first position of the deleted class
    std::pair<std::size_t, std::size_t> deleted; // both positions, 1-based
    PairPartition alpha_beta;
};

} // namespace eet
