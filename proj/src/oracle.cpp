#include "bppc/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace bppc {

namespace {

class Search {
public:
    explicit Search(const Instance& instance) : instance_(instance), n_(instance.size())
    {
        // Heavy, high-degree items first prunes earliest.
        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), 0);
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            const auto ka = std::pair{instance.graph().degree(a), instance.weight(a)};
            const auto kb = std::pair{instance.graph().degree(b), instance.weight(b)};
            return ka != kb ? ka > kb : a < b;
        });
        remaining_.assign(n_ + 1, 0);
        for (int k = n_ - 1; k >= 0; --k) remaining_[k] = remaining_[k + 1] + instance.weight(order_[k]);
        bin_of_.assign(n_, -1);
    }

    std::vector<std::vector<int>> run()
    {
        best_value_ = n_ + 1;
        descend(0);
        return best_bins_;
    }

private:
    bool fits(int bin, int item) const
    {
        if (weights_[bin] + instance_.weight(item) > instance_.capacity()) return false;
        for (int v : instance_.graph().neighbors(item))
            if (bin_of_[v] == bin) return false;
        return true;
    }

    void descend(int k)
    {
        const int open = static_cast<int>(bins_.size());
        if (open >= best_value_) return;
        if (k == n_) {
            best_value_ = open;
            best_bins_ = bins_;
            return;
        }
        // Free space in open bins must absorb the rest, or new bins are needed.
        const Weight free = static_cast<Weight>(open) * instance_.capacity() -
                            std::accumulate(weights_.begin(), weights_.end(), Weight{0});
        if (remaining_[k] > free) {
            const Weight extra = (remaining_[k] - free + instance_.capacity() - 1) / instance_.capacity();
            if (open + extra >= best_value_) return;
        }

        const int item = order_[k];
        for (int b = 0; b < open; ++b) {
            if (!fits(b, item)) continue;
            place(b, item);
            descend(k + 1);
            unplace(b, item);
        }
        if (open + 1 < best_value_) {
            bins_.emplace_back();
            weights_.push_back(0);
            place(open, item);
            descend(k + 1);
            unplace(open, item);
            bins_.pop_back();
            weights_.pop_back();
        }
    }

    void place(int bin, int item)
    {
        bins_[bin].push_back(item);
        weights_[bin] += instance_.weight(item);
        bin_of_[item] = bin;
    }

    void unplace(int bin, int item)
    {
        bins_[bin].pop_back();
        weights_[bin] -= instance_.weight(item);
        bin_of_[item] = -1;
    }

    const Instance& instance_;
    int n_;
    std::vector<int> order_;
    std::vector<Weight> remaining_;
    std::vector<int> bin_of_;
    std::vector<std::vector<int>> bins_;
    std::vector<Weight> weights_;
    int best_value_ = 0;
    std::vector<std::vector<int>> best_bins_;
};

}  // namespace

ExactResult exact_min_bins(const Instance& instance, OracleLimit limit)
{
    const int cap = std::min(limit.max_n, OracleLimit::hard_cap);
    if (instance.size() > cap)
        throw OracleRefused("exact oracle refuses n = " + std::to_string(instance.size()) + " (limit " +
                            std::to_string(cap) + ")");
    const auto start = std::chrono::steady_clock::now();
    auto bins = Search(instance).run();
    for (auto& b : bins) std::sort(b.begin(), b.end());

    ExactResult out;
    out.packing = Packing::from_bins(instance, std::move(bins));
    out.value = out.packing.value();
    out.report.algorithm = "exact";
    out.report.value = out.value;
    out.report.lower_bound = lb_bppc(instance);
    out.report.certified_optimal = out.value == out.report.lower_bound;
    out.report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.report.feasible = true;
    return out;
}

}  // namespace bppc
