#include "eet/partitions.hpp"

#include <algorithm>
#include <map>

namespace eet {

PairPartition PairPartition::from_word(std::vector<int> word) {
    std::map<int, int> counts;
    for (int c : word) ++counts[c];
    for (const auto& [c, n] : counts)
        if (n != 2) throw NotAPairPartition("from_word: some class does not occur exactly twice");

    // Relabel by first appearance.
    std::map<int, int> relabel;
    int next = 1;
    for (int& c : word) {
        auto [it, inserted] = relabel.try_emplace(c, next);
        if (inserted) ++next;
        c = it->second;
    }
    PairPartition p;
    p.word_ = std::move(word);
    p.k_ = next - 1;
    return p;
}

std::vector<PairPartition> PairPartition::enumerate(int k) {
    if (k < 0) throw NotAPairPartition("enumerate: negative k");
    if (k > 5) throw KTooLarge("enumerate: k > 5");
    std::vector<PairPartition> out;
    std::vector<int> word(std::size_t(2 * k), 0);
    // Pair the first unassigned position with every later unassigned one.
    auto rec = [&](auto&& self, int next_class) -> void {
        auto first = std::find(word.begin(), word.end(), 0);
        if (first == word.end()) {
            out.push_back(from_word(word));
            return;
        }
        *first = next_class;
        for (auto it = first + 1; it != word.end(); ++it) {
            if (*it != 0) continue;
            *it = next_class;
            self(self, next_class + 1);
            *it = 0;
        }
        *first = 0;
    };
    rec(rec, 1);
    return out;
}

std::vector<std::pair<int, bool>> PairPartition::sign_assignment() const {
    std::vector<std::pair<int, bool>> out;
    out.reserve(word_.size());
    std::vector<bool> seen(std::size_t(k_) + 1, false);
    for (int c : word_) {
        out.emplace_back(c, seen[std::size_t(c)]);
        seen[std::size_t(c)] = true;
    }
    return out;
}

PairPartition::Reduction PairPartition::reduce() const {
    if (k_ < 1) throw NotAPairPartition("reduce: nothing to delete in the empty partition");
    return reduce_class(k_);
}

PairPartition::Reduction PairPartition::reduce_class(int cls) const {
    std::size_t p1 = 0, p2 = 0;
    for (std::size_t i = 0; i < word_.size(); ++i)
        if (word_[i] == cls) {
            if (p1 == 0)
                p1 = i + 1;
            else
                p2 = i + 1;
        }
    if (p2 == 0) throw NotAPairPartition("reduce_class: class not present");
    std::vector<int> rest;
    rest.reserve(word_.size() - 2);
    for (std::size_t i = 0; i < word_.size(); ++i)
        if (i + 1 != p1 && i + 1 != p2) rest.push_back(word_[i]);
    return Reduction{p1, {p1, p2}, from_word(std::move(rest))};
}

} // namespace eet
