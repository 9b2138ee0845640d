// Test-only builders and brute-force references. Nothing here calls the
// library code it is used to check.
#pragma once

#include "bppc/core.hpp"
#include "bppc/rng.hpp"

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

namespace testing {

using bppc::Coord;
using bppc::Weight;

inline bppc::IntervalModel model_of(std::vector<std::pair<Coord, Coord>> endpoints)
{
    return bppc::IntervalModel::from_endpoints(endpoints);
}

inline bppc::Instance interval_instance(std::vector<std::pair<Coord, Coord>> endpoints, std::vector<Weight> weights,
                                        Weight capacity)
{
    return bppc::Instance::from_model(std::move(weights), capacity, model_of(std::move(endpoints)));
}

/// Pairwise open-interval overlap, written out independently of intersects().
inline std::vector<std::vector<bool>> overlap_matrix(const std::vector<std::pair<Coord, Coord>>& e)
{
    const std::size_t n = e.size();
    std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) a[i][j] = std::max(e[i].first, e[j].first) < std::min(e[i].second, e[j].second);
    return a;
}

inline std::vector<std::vector<bool>> matrix_of(const bppc::ConflictGraph& g)
{
    std::vector<std::vector<bool>> a(g.size(), std::vector<bool>(g.size(), false));
    for (int u = 0; u < g.size(); ++u)
        for (int v : g.neighbors(u)) a[u][v] = true;
    return a;
}

/// Maximum clique by subset enumeration (n <= ~16).
inline int brute_clique(const std::vector<std::vector<bool>>& a)
{
    const int n = static_cast<int>(a.size());
    int best = n > 0 ? 1 : 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                if ((mask >> i & 1) && (mask >> j & 1) && !a[i][j]) ok = false;
        if (ok) best = size;
    }
    return best;
}

/// Chromatic number by trying k = 1, 2, ... with plain backtracking.
inline int brute_chromatic(const std::vector<std::vector<bool>>& a)
{
    const int n = static_cast<int>(a.size());
    if (n == 0) return 0;
    std::vector<int> color(n, -1);
    for (int k = 1;; ++k) {
        std::function<bool(int)> go = [&](int v) {
            if (v == n) return true;
            for (int c = 0; c < k; ++c) {
                bool ok = true;
                for (int u = 0; u < v; ++u)
                    if (a[u][v] && color[u] == c) ok = false;
                if (!ok) continue;
                color[v] = c;
                if (go(v + 1)) return true;
            }
            color[v] = -1;
            return false;
        };
        if (go(0)) return k;
    }
}

/// Minimum bins over every set partition (restricted growth strings).
inline int brute_min_bins(const std::vector<std::vector<bool>>& a, const std::vector<Weight>& w, Weight capacity)
{
    const int n = static_cast<int>(w.size());
    if (n == 0) return 0;
    std::vector<int> label(n, 0);
    int best = n + 1;
    std::function<void(int, int)> go = [&](int k, int used) {
        if (k == n) {
            std::vector<Weight> load(used, 0);
            for (int i = 0; i < n; ++i) load[label[i]] += w[i];
            for (Weight x : load)
                if (x > capacity) return;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (label[i] == label[j] && a[i][j]) return;
            best = std::min(best, used);
            return;
        }
        for (int c = 0; c <= used && c < best; ++c) {
            label[k] = c;
            go(k + 1, std::max(used, c + 1));
        }
    };
    go(0, 0);
    return best;
}

/// Feasibility written out from the definition.
inline bool brute_feasible(const bppc::Instance& inst, const std::vector<std::vector<int>>& bins)
{
    std::vector<int> count(inst.size(), 0);
    for (const auto& bin : bins) {
        Weight load = 0;
        for (int i : bin) {
            if (i < 0 || i >= inst.size()) return false;
            ++count[i];
            load += inst.weight(i);
            for (int j : bin)
                if (i != j && inst.graph().adjacent(i, j)) return false;
        }
        if (load > inst.capacity()) return false;
    }
    return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

/// Random endpoints on [0, span) with lengths in [1, max_len].
inline std::vector<std::pair<Coord, Coord>> random_endpoints(bppc::Rng& rng, int n, Coord span, Coord max_len)
{
    std::vector<std::pair<Coord, Coord>> e;
    for (int i = 0; i < n; ++i) {
        const Coord l = rng.uniform_int(0, span - 1);
        e.emplace_back(l, l + rng.uniform_int(1, max_len));
    }
    return e;
}

inline std::vector<Weight> random_weights(bppc::Rng& rng, int n, Weight lo, Weight hi)
{
    std::vector<Weight> w(n);
    for (auto& x : w) x = rng.uniform_int(lo, hi);
    return w;
}

}  // namespace testing
