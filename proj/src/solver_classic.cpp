#include "bppc/solver_classic.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace bppc {

namespace {

void finish_averages(ExtendedGraph& ext, const Instance& instance)
{
    const int n = instance.size();
    if (n == 0) return;
    ext.avg_weight = static_cast<double>(instance.total_weight()) / n;
    ext.avg_degree = std::accumulate(ext.degrees.begin(), ext.degrees.end(), 0.0) / n;
}

}  // namespace

ExtendedGraph build_extended_graph(const Instance& instance)
{
    const int n = instance.size();
    const Weight B = instance.capacity();
    const auto& g = instance.graph();
    ExtendedGraph ext;
    ext.base = &g;
    ext.degrees.assign(n, 0);

    // Weights sorted once; partners j with w_j > B - w_i form a suffix.
    std::vector<Weight> sorted(instance.weights().begin(), instance.weights().end());
    std::sort(sorted.begin(), sorted.end());

    std::size_t capacity_pairs2 = 0, extra2 = 0;
#pragma omp parallel for reduction(+ : capacity_pairs2, extra2) schedule(static)
    for (int i = 0; i < n; ++i) {
        const Weight wi = instance.weight(i);
        auto heavy_partners = static_cast<std::size_t>(
            sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), B - wi));
        if (wi + wi > B) --heavy_partners;  // i itself
        std::size_t overlap = 0;
        for (int j : g.neighbors(i))
            if (wi + instance.weight(j) > B) ++overlap;
        ext.degrees[i] = g.degree(i) + static_cast<int>(heavy_partners - overlap);
        capacity_pairs2 += heavy_partners;
        extra2 += heavy_partners - overlap;
    }
    ext.capacity_pairs = capacity_pairs2 / 2;
    ext.extra_edges = extra2 / 2;
    finish_averages(ext, instance);
    return ext;
}

ExtendedGraph build_extended_graph_serial(const Instance& instance)
{
    const int n = instance.size();
    const Weight B = instance.capacity();
    const auto& g = instance.graph();
    ExtendedGraph ext;
    ext.base = &g;
    ext.degrees.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        ext.degrees[i] += g.degree(i);
        for (int j = i + 1; j < n; ++j) {
            if (instance.weight(i) + instance.weight(j) <= B) continue;
            ++ext.capacity_pairs;
            if (g.adjacent(i, j)) continue;
            ++ext.extra_edges;
            ++ext.degrees[i];
            ++ext.degrees[j];
        }
    }
    finish_averages(ext, instance);
    return ext;
}

ScaledOrder scaled_weights(std::span<const Weight> weights, std::span<const int> degrees, double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
    const std::size_t n = weights.size();
    ScaledOrder out;
    out.alpha = alpha;
    out.scores.resize(n);
    out.order.resize(n);
    std::iota(out.order.begin(), out.order.end(), 0);
    if (n == 0) return out;

    const double avg_w = std::accumulate(weights.begin(), weights.end(), 0.0) / static_cast<double>(n);
    const double avg_deg = std::accumulate(degrees.begin(), degrees.end(), 0.0) / static_cast<double>(n);
    if (avg_w <= 0.0) throw std::domain_error("scaled weights need a positive average weight");
    for (std::size_t i = 0; i < n; ++i) {
        const double degree_term = avg_deg > 0.0 ? degrees[i] / avg_deg : 0.0;
        out.scores[i] = alpha * (static_cast<double>(weights[i]) / avg_w) + (1.0 - alpha) * degree_term;
    }
    std::sort(out.order.begin(), out.order.end(), [&](int a, int b) {
        if (out.scores[a] != out.scores[b]) return out.scores[a] > out.scores[b];
        if (weights[a] != weights[b]) return weights[a] > weights[b];
        return a < b;
    });
    return out;
}

ScaledOrder scaled_weights(const ExtendedGraph& ext, std::span<const Weight> weights, double alpha)
{
    return scaled_weights(weights, ext.degrees, alpha);
}

std::string to_string(FitRule rule)
{
    switch (rule) {
    case FitRule::first: return "ff";
    case FitRule::best: return "bf";
    case FitRule::worst: return "wf";
    }
    return "?";
}

Packing run_fit(const Instance& instance, std::span<const int> order, FitRule rule)
{
    const int n = instance.size();
    const Weight B = instance.capacity();
    const auto& g = instance.graph();
    Packing p;
    std::vector<int> bin_of(n, -1);
    std::vector<int> blocked_stamp;  // blocked_stamp[b] == item: bin b holds a neighbor of item

    for (int item : order) {
        const Weight w = instance.weight(item);
        for (int v : g.neighbors(item))
            if (bin_of[v] >= 0) blocked_stamp[bin_of[v]] = item;

        int chosen = -1;
        for (int b = 0; b < p.value(); ++b) {
            if (blocked_stamp[b] == item || p.bin_weights[b] + w > B) continue;
            if (chosen < 0) {
                chosen = b;
                if (rule == FitRule::first) break;
                continue;
            }
            if ((rule == FitRule::best && p.bin_weights[b] > p.bin_weights[chosen]) ||
                (rule == FitRule::worst && p.bin_weights[b] < p.bin_weights[chosen]))
                chosen = b;
        }
        if (chosen < 0) {
            p.bins.emplace_back();
            p.bin_weights.push_back(0);
            blocked_stamp.push_back(-1);
            chosen = p.value() - 1;
        }
        p.bins[chosen].push_back(item);
        p.bin_weights[chosen] += w;
        bin_of[item] = chosen;
    }
    return p;
}

std::array<double, 11> alpha_grid()
{
    std::array<double, 11> grid{};
    for (int k = 0; k <= 10; ++k) grid[k] = k / 10.0;
    return grid;
}

namespace {

constexpr std::array<FitRule, 3> kRules{FitRule::first, FitRule::best, FitRule::worst};

BestOfM assemble(const Instance& instance, std::vector<Packing>& packings, std::vector<FitRun> runs,
                 double elapsed)
{
    // Runs are rule-major then alpha, so the first minimum honours the tie order.
    std::size_t best = 0;
    for (std::size_t k = 1; k < runs.size(); ++k)
        if (runs[k].value < runs[best].value) best = k;
    BestOfM out;
    out.packing = std::move(packings[best]);
    out.rule = runs[best].rule;
    out.alpha = runs[best].alpha;
    out.runs = std::move(runs);
    out.report.algorithm = "m";
    out.report.value = out.packing.value();
    out.report.lower_bound = lb_bppc(instance);
    out.report.certified_optimal = out.report.value == out.report.lower_bound;
    out.report.elapsed = elapsed;
    out.report.feasible = true;
    return out;
}

}  // namespace

BestOfM best_of_m(const Instance& instance)
{
    const auto start = std::chrono::steady_clock::now();
    const ExtendedGraph ext = build_extended_graph(instance);
    const auto grid = alpha_grid();
    std::vector<ScaledOrder> orders(grid.size());
    for (std::size_t a = 0; a < grid.size(); ++a) orders[a] = scaled_weights(ext, instance.weights(), grid[a]);

    const int total = static_cast<int>(kRules.size() * grid.size());
    std::vector<Packing> packings(total);
    std::vector<FitRun> runs(total);
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < total; ++k) {
        const auto rule = kRules[k / grid.size()];
        const auto a = k % grid.size();
        packings[k] = run_fit(instance, orders[a].order, rule);
        runs[k] = {rule, grid[a], packings[k].value()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return assemble(instance, packings, std::move(runs), elapsed);
}

BestOfM best_of_m_serial(const Instance& instance)
{
    const auto start = std::chrono::steady_clock::now();
    const ExtendedGraph ext = build_extended_graph_serial(instance);
    std::vector<Packing> packings;
    std::vector<FitRun> runs;
    for (auto rule : kRules)
        for (double alpha : alpha_grid()) {
            const auto order = scaled_weights(ext, instance.weights(), alpha);
            packings.push_back(run_fit(instance, order.order, rule));
            runs.push_back({rule, alpha, packings.back().value()});
        }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return assemble(instance, packings, std::move(runs), elapsed);
}

}  // namespace bppc
