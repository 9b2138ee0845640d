#ifndef BPPC_CORE_HPP
#define BPPC_CORE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bppc {

using Coord = std::int64_t;
using Weight = std::int64_t;

/// Open integer interval (l, r) attached to item `id`.
struct Interval {
    int id = 0;
    Coord l = 0;
    Coord r = 0;

    Coord length() const { return r - l; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// True iff the open intervals overlap; a shared endpoint is not an overlap.
constexpr bool intersects(const Interval& p, const Interval& q)
{
    return p.l < q.r && q.l < p.r;
}

/// One interval per item, shifted on construction so that the smallest left
/// endpoint is 0. Interval ids must equal their position.
class IntervalModel {
public:
    IntervalModel() = default;
    explicit IntervalModel(std::vector<Interval> intervals);

    static IntervalModel from_endpoints(std::span<const std::pair<Coord, Coord>> endpoints);

    std::size_t size() const { return intervals_.size(); }
    bool empty() const { return intervals_.empty(); }
    const Interval& operator[](std::size_t i) const { return intervals_[i]; }
    std::span<const Interval> intervals() const { return intervals_; }
    auto begin() const { return intervals_.begin(); }
    auto end() const { return intervals_.end(); }

    /// R = max r_j.
    Coord horizon() const { return horizon_; }

    friend bool operator==(const IntervalModel&, const IntervalModel&) = default;

private:
    std::vector<Interval> intervals_;
    Coord horizon_ = 0;
};

/// Simple undirected graph with sorted adjacency lists.
class ConflictGraph {
public:
    ConflictGraph() = default;
    explicit ConflictGraph(int n);

    /// Builds from an edge list; rejects self-loops, duplicates and
    /// out-of-range endpoints.
    static ConflictGraph from_edges(int n, std::span<const std::pair<int, int>> edges);

    /// Adopts per-vertex neighbor lists; they must already be sorted,
    /// symmetric, loop-free and duplicate-free (checked).
    static ConflictGraph from_adjacency(std::vector<std::vector<int>> adjacency);

    int size() const { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const { return edge_count_; }
    std::span<const int> neighbors(int v) const { return adjacency_[v]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
    bool adjacent(int u, int v) const;

    /// Edges (u, v) with u < v in lexicographic order.
    std::vector<std::pair<int, int>> edges() const;

    friend bool operator==(const ConflictGraph&, const ConflictGraph&) = default;

private:
    std::vector<std::vector<int>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Sweep-based construction; rows are filled in parallel when OpenMP is on.
ConflictGraph build_conflict_graph(const IntervalModel& model);

/// O(n^2) pairwise reference construction.
ConflictGraph build_conflict_graph_serial(const IntervalModel& model);

/// Number of intersecting pairs, counted in O(n log n) without building the graph.
std::size_t count_intersections(const IntervalModel& model);

/// 2|E| / (n(n-1)); throws std::domain_error when n < 2.
double edge_density(const ConflictGraph& graph);
double edge_density(std::size_t edges, std::size_t n);

/// A BPPC instance: weights, capacity, conflict graph and, optionally, an
/// interval model that induces the graph.
class Instance {
public:
    Instance(std::vector<Weight> weights, Weight capacity, ConflictGraph graph,
             std::optional<IntervalModel> model = std::nullopt);

    static Instance from_model(std::vector<Weight> weights, Weight capacity, IntervalModel model);

    int size() const { return static_cast<int>(weights_.size()); }
    std::span<const Weight> weights() const { return weights_; }
    Weight weight(int i) const { return weights_[i]; }
    Weight capacity() const { return capacity_; }
    Weight total_weight() const;
    const ConflictGraph& graph() const { return graph_; }
    const std::optional<IntervalModel>& model() const { return model_; }
    bool has_model() const { return model_.has_value(); }

    /// Same items and conflicts, different capacity.
    Instance with_capacity(Weight capacity) const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    std::vector<Weight> weights_;
    Weight capacity_ = 0;
    ConflictGraph graph_;
    std::optional<IntervalModel> model_;
};

/// A partition of the items into bins with cached bin weights.
struct Packing {
    std::vector<std::vector<int>> bins;
    std::vector<Weight> bin_weights;

    static Packing from_bins(const Instance& instance, std::vector<std::vector<int>> bins);

    int value() const { return static_cast<int>(bins.size()); }
};

/// Leftmost maximum clique of an interval model.
struct CliqueInfo {
    int omega = 0;
    std::vector<int> clique;  // sorted by id
    Coord pi = 0;
};

CliqueInfo leftmost_max_clique(const IntervalModel& model);
int chromatic_number(const IntervalModel& model);

/// Clique number of a chordal graph via maximum cardinality search.
/// Returns nullopt when the graph is not chordal.
std::optional<int> chordal_clique_number(const ConflictGraph& graph);

/// Largest clique found by greedy extension from every start vertex. A lower
/// bound on the clique number, hence on chi, for any graph.
int greedy_clique_size(const ConflictGraph& graph);

/// max(1, ceil(sum w / B)) for a non-empty weight set, 0 for an empty one.
Weight lb_bin_packing(std::span<const Weight> weights, Weight capacity);

/// max(lb_bin_packing, chi(G)); chi comes from the interval model when one
/// is attached and from the chordal clique number otherwise. For a graph that
/// is not chordal a greedy clique stands in for chi, which keeps the result a
/// valid bound but possibly a weaker one.
Weight lb_bppc(const Instance& instance);

struct SolveReport {
    std::string algorithm;
    int value = 0;
    Weight lower_bound = 0;
    bool certified_optimal = false;
    double elapsed = 0.0;  // seconds
    bool feasible = false;
};

struct Verdict {
    enum class Kind { ok, capacity, conflict, not_partition };

    Kind kind = Kind::ok;
    int bin = -1;
    int u = -1;
    int v = -1;

    bool ok() const { return kind == Kind::ok; }
    std::string describe() const;
};

/// First violation in deterministic order: partition, then per bin (lowest
/// index first) capacity followed by conflicts (lowest item pair first).
Verdict verify_packing(const Instance& instance, const Packing& packing);

/// (value - lb) / lb; throws std::domain_error when lb < 1.
double gap(Weight value, Weight lb);

}  // namespace bppc

#endif  // BPPC_CORE_HPP
