#include "csb/test_sets.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace csb {

namespace {

bool is_adjacent_run(AltMask m) {
    if (m == 0) return false;
    const int lo = __builtin_ctzll(m);
    const int len = mask_size(m);
    return m == (full_mask(len) << lo);
}

void masks_of_size(int n, int size, std::vector<AltMask>& out) {
    // lexicographic combinations
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
        AltMask m = 0;
        for (int i : idx) m |= 1ULL << i;
        out.push_back(m);
        int k = size - 1;
        while (k >= 0 && idx[k] == n - size + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// distinct D*q realizations per cell
std::vector<std::vector<AltMask>> all_realizations(const std::vector<RankPartition>& partitions,
                                                   int q) {
    std::vector<std::vector<AltMask>> out;
    out.reserve(partitions.size());
    for (const auto& p : partitions) out.push_back(realization_masks(p, q));
    return out;
}

bool always_hit(const std::vector<std::vector<AltMask>>& realizations, AltMask K) {
    for (const auto& cell : realizations)
        for (AltMask r : cell)
            if (!(r & K)) return false;
    return true;
}

bool ever_cooccur(const std::vector<std::vector<AltMask>>& realizations, AltMask a, AltMask b) {
    for (const auto& cell : realizations)
        for (AltMask r : cell)
            if ((r & a) && (r & b)) return true;
    return false;
}

}  // namespace

bool vertical_structure_holds(const std::vector<RankPartition>& partitions) {
    if (partitions.empty()) return false;
    for (const auto& part : partitions) {
        const CovariateCell& cell = part.cell();
        const int n = cell.n_alternatives();
        double prev = 0.0;
        bool have_prev = false;
        for (int j = 0; j + 1 < n; ++j) {
            auto th = indifference_threshold_unbounded(j, j + 1, cell, part.support_lo(),
                                                       part.support_hi());
            if (!th) return false;
            if (have_prev && !(*th < prev)) return false;  // thresholds must interlace
            prev = *th;
            have_prev = true;
        }
        // realizations must be runs of adjacent alternatives for every q
        for (int q = 2; q <= n; ++q)
            for (AltMask m : realization_masks(part, q))
                if (!is_adjacent_run(m)) return false;
    }
    return true;
}

TestSetCollection prefix_suffix_collection(int n, int kappa) {
    TestSetCollection coll;
    coll.target = TestSetTarget::GammaRegion;
    AltMask pre = 0, suf = 0;
    for (int m = 1; m <= kappa - 1; ++m) {
        pre |= 1ULL << (m - 1);
        coll.sets.push_back(pre);
        coll.provenance.push_back("prefix");
    }
    for (int m = 1; m <= kappa - 1; ++m) {
        suf |= 1ULL << (n - m);
        coll.sets.push_back(suf);
        coll.provenance.push_back("suffix");
    }
    return coll;
}

namespace {

TestSetCollection gamma_collection(const std::vector<RankPartition>& partitions, int kappa) {
    const int n = partitions.front().cell().n_alternatives();
    if (vertical_structure_holds(partitions)) return prefix_suffix_collection(n, kappa);

    // general elimination on the initialization {K : |K| < kappa}
    double init_count = 0.0;
    for (int s = 1; s < kappa; ++s) {
        double binom = 1.0;
        for (int i = 0; i < s; ++i) binom = binom * (n - i) / (i + 1);
        init_count += binom;
    }
    if (init_count > 4.0e6)
        throw std::runtime_error("generate_test_sets: initialization too large without vertical structure");

    auto realizations = all_realizations(partitions, kappa);
    std::vector<AltMask> pool;
    for (int s = 1; s < kappa; ++s) masks_of_size(n, s, pool);

    std::map<AltMask, std::string> retained;
    for (AltMask m : pool) retained.emplace(m, "initial");

    // step (1): drop always-intersected sets together with their supersets
    for (int s = 1; s < kappa; ++s) {
        for (AltMask m : pool) {
            if (mask_size(m) != s || !retained.count(m)) continue;
            if (always_hit(realizations, m)) {
                for (auto it = retained.begin(); it != retained.end();) {
                    if ((it->first & m) == m)
                        it = retained.erase(it);
                    else
                        ++it;
                }
            }
        }
    }
    // steps (q): drop unions whose pieces never co-occur in D*
    for (int s = 2; s < kappa; ++s) {
        for (AltMask m : pool) {
            if (mask_size(m) != s || !retained.count(m)) continue;
            for (int c = 0; c < n; ++c) {
                if (!mask_contains(m, c)) continue;
                const AltMask single = 1ULL << c;
                const AltMask rest = m & ~single;
                if (!retained.count(single) || !retained.count(rest)) continue;
                if (!ever_cooccur(realizations, single, rest)) {
                    retained.erase(m);
                    break;
                }
            }
        }
    }

    TestSetCollection coll;
    coll.target = TestSetTarget::GammaRegion;
    std::vector<std::pair<AltMask, std::string>> items(retained.begin(), retained.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        const int sa = mask_size(a.first), sb = mask_size(b.first);
        return sa != sb ? sa < sb : a.first < b.first;
    });
    for (auto& [m, prov] : items) {
        coll.sets.push_back(m);
        coll.provenance.push_back(prov);
    }
    return coll;
}

// Sharp collection for the pi_5 projection at |D|=5, kappa=3.
TestSetCollection pi5_collection_5_3(const std::vector<RankPartition>& partitions) {
    auto top3 = all_realizations(partitions, 3);
    TestSetCollection coll;
    coll.target = TestSetTarget::PiUpper;
    coll.q = 5;
    std::vector<AltMask> pool;
    for (int s = 1; s < 5; ++s) masks_of_size(5, s, pool);
    for (AltMask m : pool) {
        const int s = mask_size(m);
        if (s == 3) continue;  // all triples dropped
        if (s == 2) {
            bool cooccur = false;
            for (const auto& cell : top3)
                for (AltMask r : cell)
                    if ((r & m) == m) cooccur = true;
            if (!cooccur) continue;  // the two elements are never jointly in the best 3
        }
        coll.sets.push_back(m);
        coll.provenance.push_back("pi5");
    }
    return coll;
}

// Sharp collection for the pi_4 projection at |D|=5, kappa=3.
TestSetCollection pi4_collection_5_3(const std::vector<RankPartition>& partitions) {
    auto top3 = all_realizations(partitions, 3);
    auto top2 = all_realizations(partitions, 4);
    const AltMask full = full_mask(5);
    std::vector<AltMask> pool;
    for (int s = 1; s < 5; ++s) masks_of_size(5, s, pool);
    std::map<AltMask, bool> keep;
    for (AltMask m : pool) keep[m] = true;

    // step 1: pairs never jointly among the best 3, dropped with complements
    for (AltMask m : pool) {
        if (mask_size(m) != 2) continue;
        bool cooccur = false;
        for (const auto& cell : top3)
            for (AltMask r : cell)
                if ((r & m) == m) cooccur = true;
        if (!cooccur) {
            keep[m] = false;
            keep[full & ~m] = false;
        }
    }
    // step 2: triples {j,k,l} with a retained pair whose extra element never
    // co-occurs with the pair among the best 3
    for (AltMask m : pool) {
        if (mask_size(m) != 3 || !keep[m]) continue;
        for (int l = 0; l < 5; ++l) {
            if (!mask_contains(m, l)) continue;
            const AltMask rest = m & ~(1ULL << l);
            if (!keep.count(rest) || !keep[rest]) continue;
            if (!ever_cooccur(top3, 1ULL << l, rest)) {
                keep[m] = false;
                break;
            }
        }
    }
    // step 3: sets that always contain one of the best 2
    for (AltMask m : pool) {
        if (!keep[m]) continue;
        if (always_hit(top2, m)) keep[m] = false;
    }

    TestSetCollection coll;
    coll.target = TestSetTarget::PiUpper;
    coll.q = 4;
    for (AltMask m : pool)
        if (keep[m]) {
            coll.sets.push_back(m);
            coll.provenance.push_back("pi4");
        }
    return coll;
}

// Outer (sound, not necessarily minimal) family for pi projections in
// general configurations: prefix/suffix sets and their complements.
TestSetCollection pi_outer_collection(int n, int kappa, int q) {
    TestSetCollection base = prefix_suffix_collection(n, kappa);
    TestSetCollection coll;
    coll.target = TestSetTarget::PiUpper;
    coll.q = q;
    const AltMask full = full_mask(n);
    for (AltMask m : base.sets) {
        coll.sets.push_back(m);
        coll.provenance.push_back("outer");
    }
    for (AltMask m : base.sets) {
        const AltMask comp = full & ~m;
        if (std::find(coll.sets.begin(), coll.sets.end(), comp) == coll.sets.end()) {
            coll.sets.push_back(comp);
            coll.provenance.push_back("outer-complement");
        }
    }
    return coll;
}

}  // namespace

TestSetCollection generate_test_sets(const std::vector<RankPartition>& partitions, int kappa,
                                     TestSetTarget target, int q) {
    if (partitions.empty()) throw std::invalid_argument("generate_test_sets: no cells");
    const int n = partitions.front().cell().n_alternatives();
    if (kappa < 2 || kappa > n) throw std::invalid_argument("generate_test_sets: kappa outside [2, |D|]");

    switch (target) {
        case TestSetTarget::GammaRegion:
            return gamma_collection(partitions, kappa);
        case TestSetTarget::KappaOne: {
            auto coll = gamma_collection(partitions, 2);
            coll.target = TestSetTarget::KappaOne;
            return coll;
        }
        case TestSetTarget::MixedLogit: {
            TestSetCollection coll;
            coll.target = TestSetTarget::MixedLogit;
            for (int s = 1; s < kappa; ++s) masks_of_size(n, s, coll.sets);
            coll.provenance.assign(coll.sets.size(), "full");
            return coll;
        }
        case TestSetTarget::PiUpper: {
            if (q <= kappa || q > n) throw std::invalid_argument("generate_test_sets: q outside (kappa, |D|]");
            if (n == 5 && kappa == 3 && q == 5) return pi5_collection_5_3(partitions);
            if (n == 5 && kappa == 3 && q == 4) return pi4_collection_5_3(partitions);
            return pi_outer_collection(n, kappa, q);
        }
    }
    throw std::logic_error("generate_test_sets: unknown target");
}

}  // namespace csb
