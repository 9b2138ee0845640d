#include "bppc/solver_bn.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <tuple>

namespace bppc {

Weight lambda_bound(const Instance& instance)
{
    if (!instance.has_model()) throw std::invalid_argument("BN needs an interval model");
    return std::max<Weight>(lb_bin_packing(instance.weights(), instance.capacity()),
                            leftmost_max_clique(*instance.model()).omega);
}

BnState::BnState(const Instance& instance, BnOptions options)
    : instance_(&instance), model_(nullptr), options_(options)
{
    if (!instance.has_model()) throw std::invalid_argument("BN needs an interval model");
    model_ = &*instance.model();
    events_.reserve(2 * model_->size());
    for (const auto& iv : *model_) {
        events_.push_back(iv.l + 1);
        events_.push_back(iv.r);
    }
    std::sort(events_.begin(), events_.end());
    events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
}

BnState BnState::phase1(const Instance& instance, BnOptions options)
{
    BnState s(instance, options);
    const auto& model = *s.model_;
    const int n = instance.size();
    const Coord R = model.horizon();
    const CliqueInfo clique = leftmost_max_clique(model);

    s.lambda_ = static_cast<int>(std::max<Weight>(lb_bin_packing(instance.weights(), instance.capacity()), clique.omega));
    s.stats_.lambda = s.lambda_;
    s.bins_.resize(s.lambda_);
    s.anchors_.assign(s.lambda_, clique.pi);
    if (n == 0) return s;

    std::vector<char> in_clique(n, 0);
    for (int i = 0; i < clique.omega; ++i) {
        const int item = clique.clique[i];
        in_clique[item] = 1;
        s.insert_sorted(i, item);
        s.anchors_[i] = model[item].r;
    }

    s.mu_ = static_cast<double>(instance.total_weight()) / (static_cast<double>(R) * s.lambda_);
    s.w_est_.resize(s.lambda_);
    for (int i = 0; i < s.lambda_; ++i) s.w_est_[i] = s.mu_ * static_cast<double>(R - s.anchors_[i]);

    std::vector<int> left, right;
    for (int j = 0; j < n; ++j) {
        if (in_clique[j]) continue;
        (model[j].r <= clique.pi ? left : right).push_back(j);
    }
    std::sort(left.begin(), left.end(), [&](int a, int b) {
        return std::make_tuple(-model[a].r, a) < std::make_tuple(-model[b].r, b);
    });
    std::sort(right.begin(), right.end(), [&](int a, int b) {
        return std::tie(model[a].l, a) < std::tie(model[b].l, b);
    });

    for (int j : left) {
        int best = -1;
        double best_key = 0.0;
        for (int i = 0; i < s.lambda_; ++i) {
            if (!s.non_conflicting(i, j)) continue;
            const double key = static_cast<double>(s.bins_[i].weight) + s.w_est_[i];
            if (best < 0 || key < best_key) {
                best = i;
                best_key = key;
            }
        }
        if (best < 0) throw std::logic_error("phase I: no non-conflicting bin for left interval");
        s.insert_sorted(best, j);
    }
    for (int j : right) {
        int best = -1;
        for (int i = 0; i < s.lambda_; ++i)
            if (s.non_conflicting(i, j) && (best < 0 || s.bins_[i].weight < s.bins_[best].weight)) best = i;
        if (best < 0) throw std::logic_error("phase I: no non-conflicting bin for right interval");
        s.insert_sorted(best, j);
    }
    s.stats_.phase1_feasible = s.feasible();
    s.after_mutation();
    return s;
}

BnState BnState::from_bins(const Instance& instance, std::vector<std::vector<int>> bins, BnOptions options)
{
    BnState s(instance, options);
    s.lambda_ = static_cast<int>(lambda_bound(instance));
    s.stats_.lambda = s.lambda_;
    s.bins_.resize(bins.size());
    for (std::size_t b = 0; b < bins.size(); ++b)
        for (int item : bins[b]) {
            if (item < 0 || item >= instance.size()) throw std::invalid_argument("item out of range");
            if (!s.non_conflicting(static_cast<int>(b), item))
                throw std::invalid_argument("bin " + std::to_string(b) + " is not an independent set");
            s.insert_sorted(static_cast<int>(b), item);
        }
    s.check_invariants();
    return s;
}

bool BnState::non_conflicting(int bin, int item) const
{
    const auto& members = bins_[bin].members;
    const Interval& iv = interval(item);
    // Last member starting before r_j; members are disjoint so it has the largest r among them.
    auto it = std::lower_bound(members.begin(), members.end(), iv.r,
                               [&](int m, Coord x) { return interval(m).l < x; });
    if (it == members.begin()) return true;
    return interval(*std::prev(it)).r <= iv.l;
}

void BnState::insert_sorted(int bin, int item)
{
    auto& members = bins_[bin].members;
    auto it = std::lower_bound(members.begin(), members.end(), item, [&](int a, int b) {
        return std::tie(interval(a).l, a) < std::tie(interval(b).l, b);
    });
    members.insert(it, item);
    bins_[bin].weight += instance_->weight(item);
}

void BnState::move_item(int item, int from, int to)
{
    auto& src = bins_[from].members;
    src.erase(std::find(src.begin(), src.end(), item));
    bins_[from].weight -= instance_->weight(item);
    insert_sorted(to, item);
    after_mutation();
}

TailView BnState::tail(int bin, Coord rho) const
{
    TailView view;
    view.bin = bin;
    view.rho = rho;
    view.defined = true;
    for (int m : bins_[bin].members) {
        const Interval& iv = interval(m);
        if (iv.l < rho && rho < iv.r) view.defined = false;
        if (iv.l >= rho) {
            view.members.push_back(m);
            view.weight += instance_->weight(m);
        }
    }
    return view;
}

bool BnState::feasible() const
{
    return std::all_of(bins_.begin(), bins_.end(), [&](const Bin& b) { return b.weight <= capacity(); });
}

int BnState::heavy_count() const
{
    return static_cast<int>(
        std::count_if(bins_.begin(), bins_.end(), [&](const Bin& b) { return b.weight > capacity(); }));
}

Weight BnState::total_excess() const
{
    Weight excess = 0;
    for (const auto& b : bins_) excess += std::max<Weight>(0, b.weight - capacity());
    return excess;
}

int BnState::heaviest_bin() const
{
    int best = 0;
    for (int i = 1; i < bin_count(); ++i)
        if (bins_[i].weight > bins_[best].weight) best = i;
    return best;
}

Coord BnState::next_coordinate(Coord rho) const
{
    if (options_.literal_sweep) return rho + 1;
    auto it = std::upper_bound(events_.begin(), events_.end(), rho);
    return it == events_.end() ? model_->horizon() : *it;
}

void BnState::tail_exchange_step(int g)
{
    const Weight B = capacity();
    const Coord R = model_->horizon();
    if (bins_[g].members.empty() || bins_[g].weight <= B) return;

    // Per-bin cursor: members[0..cursor) start before rho; head = their weight.
    // rho only grows, and a swap keeps both prefixes intact, so cursors stay valid.
    const int z = bin_count();
    std::vector<std::size_t> cursor(z, 0);
    std::vector<Weight> head(z, 0);
    auto seek = [&](int h, Coord rho) {
        const auto& m = bins_[h].members;
        while (cursor[h] < m.size() && interval(m[cursor[h]]).l < rho) head[h] += instance_->weight(m[cursor[h]++]);
        const bool defined = cursor[h] == 0 || interval(m[cursor[h] - 1]).r <= rho;
        return std::pair{defined, bins_[h].weight - head[h]};
    };

    Coord rho = interval(bins_[g].members.front()).r;
    while (bins_[g].weight > B && rho < R) {
        bool swapped = false;
        const auto [g_defined, g_tail] = seek(g, rho);
        if (g_defined) {
            int best = -1;
            Weight best_tail = 0;
            for (int h = 0; h < z; ++h) {
                if (h == g || bins_[h].weight > B) continue;
                const auto [h_defined, h_tail] = seek(h, rho);
                if (!h_defined || !(h_tail < g_tail) || bins_[h].weight - h_tail + g_tail > B) continue;
                if (best < 0 || h_tail < best_tail) {
                    best = h;
                    best_tail = h_tail;
                }
            }
            if (best >= 0) {
                auto& gm = bins_[g].members;
                auto& hm = bins_[best].members;
                std::vector<int> g_rest(gm.begin() + static_cast<std::ptrdiff_t>(cursor[g]), gm.end());
                gm.resize(cursor[g]);
                gm.insert(gm.end(), hm.begin() + static_cast<std::ptrdiff_t>(cursor[best]), hm.end());
                hm.resize(cursor[best]);
                hm.insert(hm.end(), g_rest.begin(), g_rest.end());
                bins_[g].weight += best_tail - g_tail;
                bins_[best].weight += g_tail - best_tail;
                ++stats_.tail_swaps;
                swapped = true;
                after_mutation();
            }
        }
        rho = swapped ? rho + 1 : next_coordinate(rho);
    }
}

void BnState::insertion_step(int g)
{
    const Weight B = capacity();
    int new_bin = -1;
    while (bins_[g].weight > B) {
        const Weight excess = bins_[g].weight - B;
        int pick = -1;
        Weight pick_key = 0;
        for (int j : bins_[g].members) {
            const Weight key = std::abs(excess - instance_->weight(j));
            if (pick < 0 || key < pick_key ||
                (key == pick_key && (instance_->weight(j) > instance_->weight(pick) ||
                                     (instance_->weight(j) == instance_->weight(pick) && j < pick)))) {
                pick = j;
                pick_key = key;
            }
        }
        const Weight wj = instance_->weight(pick);

        int light = -1, heavy = -1;
        for (int h = 0; h < bin_count(); ++h) {
            if (h == g || !non_conflicting(h, pick)) continue;
            const Weight wh = bins_[h].weight;
            if (wh + wj <= B) {
                if (light < 0 || wh > bins_[light].weight) light = h;
            } else if (wh > B || (options_.fallback_includes_full && wh == B)) {
                if (heavy < 0 || wh < bins_[heavy].weight) heavy = h;
            }
        }
        if (light >= 0) {
            move_item(pick, g, light);
            ++stats_.moves_to_light;
        } else if (heavy >= 0) {
            move_item(pick, g, heavy);
            ++stats_.moves_to_heavy;
        } else {
            if (new_bin < 0) {
                bins_.emplace_back();
                new_bin = bin_count() - 1;
                ++stats_.bins_created;
            }
            move_item(pick, g, new_bin);
            ++stats_.moves_to_new;
        }
    }
}

void BnState::after_mutation() const
{
    if (options_.audit) check_invariants();
}

void BnState::check_invariants() const
{
    const int n = instance_->size();
    std::vector<int> seen(n, 0);
    for (int b = 0; b < bin_count(); ++b) {
        const auto& members = bins_[b].members;
        Weight w = 0;
        for (std::size_t k = 0; k < members.size(); ++k) {
            const int item = members[k];
            if (item < 0 || item >= n || seen[item]++)
                throw std::logic_error("bins do not partition the items (bin " + std::to_string(b) + ")");
            w += instance_->weight(item);
            if (k > 0 && interval(members[k - 1]).r > interval(item).l)
                throw std::logic_error("bin " + std::to_string(b) + " is not an independent set");
        }
        if (w != bins_[b].weight) throw std::logic_error("stale cached weight in bin " + std::to_string(b));
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i]) throw std::logic_error("item " + std::to_string(i) + " is unassigned");
}

Packing BnState::to_packing() const
{
    Packing p;
    p.bins.reserve(bins_.size());
    p.bin_weights.reserve(bins_.size());
    for (const auto& b : bins_) {
        std::vector<int> members = b.members;
        std::sort(members.begin(), members.end());
        p.bins.push_back(std::move(members));
        p.bin_weights.push_back(b.weight);
    }
    return p;
}

BnResult solve_bn(const Instance& instance, BnOptions options)
{
    const auto start = std::chrono::steady_clock::now();
    BnState state = BnState::phase1(instance, options);

    const int n = instance.size();
    const long long guard = static_cast<long long>(n) * (state.lambda() + n);
    while (!state.feasible()) {
        auto& stats = state.stats();
        if (++stats.iterations > guard)
            throw SolverError("BN iteration guard of " + std::to_string(guard) + " exceeded");
        const int g = state.heaviest_bin();
        const auto before = std::pair{state.heavy_count(), state.total_excess()};
        state.tail_exchange_step(g);
        if (state.bin_weight(g) > state.capacity()) state.insertion_step(g);
        const auto after = std::pair{state.heavy_count(), state.total_excess()};
        if (!(after < before)) {
            ++stats.progress_violations;
            if (options.audit)
                throw std::logic_error("BN phase II iteration " + std::to_string(stats.iterations) +
                                       " did not reduce (heavy bins, excess)");
        }
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    BnResult result;
    result.packing = state.to_packing();
    result.stats = state.stats();
    result.report.algorithm = "bn";
    result.report.value = result.packing.value();
    result.report.lower_bound = lb_bppc(instance);
    result.report.certified_optimal = result.report.value == result.report.lower_bound;
    result.report.elapsed = elapsed;
    result.report.feasible = true;
    return result;
}

}  // namespace bppc
