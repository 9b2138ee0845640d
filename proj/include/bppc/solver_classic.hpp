#ifndef BPPC_SOLVER_CLASSIC_HPP
#define BPPC_SOLVER_CLASSIC_HPP

#include "bppc/core.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace bppc {

/// G plus an edge for every pair whose weights cannot share a bin.
struct ExtendedGraph {
    const ConflictGraph* base = nullptr;
    std::size_t capacity_pairs = 0;  // pairs with w_i + w_j > B
    std::size_t extra_edges = 0;     // capacity pairs not already in G
    std::vector<int> degrees;        // degree in G_w
    double avg_weight = 0.0;
    double avg_degree = 0.0;

    std::size_t edge_count() const { return base->edge_count() + extra_edges; }
};

/// Row-parallel construction.
ExtendedGraph build_extended_graph(const Instance& instance);
ExtendedGraph build_extended_graph_serial(const Instance& instance);

struct ScaledOrder {
    double alpha = 0.0;
    std::vector<double> scores;
    std::vector<int> order;  // non-increasing score, then larger weight, then lower id
};

/// w^s_i = alpha * w_i / avg_w + (1 - alpha) * deg_i / avg_deg, with the
/// degree term taken as 0 when avg_deg = 0.
ScaledOrder scaled_weights(std::span<const Weight> weights, std::span<const int> degrees, double alpha);
ScaledOrder scaled_weights(const ExtendedGraph& ext, std::span<const Weight> weights, double alpha);

enum class FitRule { first, best, worst };

std::string to_string(FitRule rule);

Packing run_fit(const Instance& instance, std::span<const int> order, FitRule rule);

/// The 11-point grid 0, 0.1, ..., 1.
std::array<double, 11> alpha_grid();

struct FitRun {
    FitRule rule = FitRule::first;
    double alpha = 0.0;
    int value = 0;
};

struct BestOfM {
    Packing packing;
    SolveReport report;
    FitRule rule = FitRule::first;
    double alpha = 0.0;
    std::vector<FitRun> runs;  // all 33, rule-major then alpha
};

/// Minimum over the 33 rule x alpha runs; ties go to FF < BF < WF, then smaller alpha.
BestOfM best_of_m(const Instance& instance);
BestOfM best_of_m_serial(const Instance& instance);

}  // namespace bppc

#endif  // BPPC_SOLVER_CLASSIC_HPP
