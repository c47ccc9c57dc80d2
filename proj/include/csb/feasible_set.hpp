#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace csb {

// Subsets of the feasible set as bitmasks over alternative indices.
using AltMask = std::uint64_t;

inline int mask_size(AltMask m) { return __builtin_popcountll(m); }
inline bool mask_contains(AltMask m, int i) { return (m >> i) & 1ULL; }
inline AltMask full_mask(int n) { return (n == 64) ? ~0ULL : ((1ULL << n) - 1ULL); }

// The universal set of alternatives (deductible levels), ordered by amount.
class FeasibleSet {
  public:
    FeasibleSet(std::vector<double> amounts, std::vector<std::string> labels = {})
        : amounts_(std::move(amounts)), labels_(std::move(labels)) {
        if (amounts_.size() < 2) throw std::invalid_argument("FeasibleSet: need at least 2 alternatives");
        if (amounts_.size() > 64) throw std::invalid_argument("FeasibleSet: at most 64 alternatives supported");
        for (std::size_t i = 1; i < amounts_.size(); ++i)
            if (!(amounts_[i] > amounts_[i - 1]))
                throw std::invalid_argument("FeasibleSet: amounts must be strictly increasing");
        if (labels_.empty()) {
            for (double a : amounts_) labels_.push_back("$" + std::to_string(static_cast<long long>(a)));
        } else if (labels_.size() != amounts_.size()) {
            throw std::invalid_argument("FeasibleSet: label count mismatch");
        }
    }

    int size() const { return static_cast<int>(amounts_.size()); }
    double amount(int i) const { return amounts_.at(i); }
    const std::vector<double>& amounts() const { return amounts_; }
    const std::string& label(int i) const { return labels_.at(i); }
    AltMask all() const { return full_mask(size()); }

    int index_of_amount(double a) const {
        for (int i = 0; i < size(); ++i)
            if (amounts_[i] == a) return i;
        return -1;
    }

  private:
    std::vector<double> amounts_;
    std::vector<std::string> labels_;
};

}  // namespace csb
