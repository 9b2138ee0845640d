#ifndef BPPC_SOLVER_BN_HPP
#define BPPC_SOLVER_BN_HPP

#include "bppc/core.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace bppc {

struct BnOptions {
    /// Re-check partition, cached weights and independence after every
    /// mutation, and throw on a Phase II iteration that fails to reduce
    /// (heavy bins, total excess) lexicographically.
    bool audit = false;
    /// Advance the tail-exchange coordinate one unit at a time instead of
    /// jumping over coordinates where no tail can change. Both give the
    /// same packing; the literal sweep is kept as a reference.
    bool literal_sweep = false;
    /// Insertion fallback targets bins with W >= B instead of heavy bins
    /// (W > B). A bin sitting exactly at B then turns heavy, and two bins can
    /// hand the same item back and forth forever; off by default.
    bool fallback_includes_full = false;
};

struct BnStats {
    int lambda = 0;
    bool phase1_feasible = false;
    int iterations = 0;  // Phase II main-loop iterations
    int tail_swaps = 0;
    int moves_to_light = 0;
    int moves_to_heavy = 0;
    int moves_to_new = 0;
    int bins_created = 0;
    int progress_violations = 0;
};

/// Tail(V_i, rho): members with l >= rho, defined only when no member
/// straddles rho.
struct TailView {
    int bin = -1;
    Coord rho = 0;
    bool defined = false;
    std::vector<int> members;
    Weight weight = 0;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// max(ceil(sum w / B), omega).
Weight lambda_bound(const Instance& instance);

/// Working state of the BN heuristic. Bins are kept sorted by left endpoint;
/// since every bin is an independent set, that is also right-endpoint order.
/// The instance must outlive the state.
class BnState {
public:
    /// Phase I: the estimated-weight-balanced lambda-coloring.
    static BnState phase1(const Instance& instance, BnOptions options = {});

    /// Arbitrary starting bins, for exercising the Phase II moves directly.
    /// Each bin must be an independent set; throws std::invalid_argument otherwise.
    static BnState from_bins(const Instance& instance, std::vector<std::vector<int>> bins, BnOptions options = {});

    int bin_count() const { return static_cast<int>(bins_.size()); }
    std::span<const int> bin(int i) const { return bins_[i].members; }
    Weight bin_weight(int i) const { return bins_[i].weight; }
    Weight capacity() const { return instance_->capacity(); }

    int lambda() const { return lambda_; }
    double mu() const { return mu_; }
    std::span<const Coord> anchors() const { return anchors_; }
    std::span<const double> estimated_weights() const { return w_est_; }

    bool non_conflicting(int bin, int item) const;
    TailView tail(int bin, Coord rho) const;

    bool feasible() const;
    int heavy_count() const;
    Weight total_excess() const;
    /// Heaviest bin, lowest index on ties.
    int heaviest_bin() const;

    /// Repeated tail exchanges between heavy bin g and light bins while g stays heavy.
    void tail_exchange_step(int g);
    /// Repeated single-item relocations out of heavy bin g until it is light;
    /// opens at most one new bin.
    void insertion_step(int g);

    /// Throws std::logic_error if bins do not partition the items, cached
    /// weights are stale or some bin is not independent.
    void check_invariants() const;

    const BnStats& stats() const { return stats_; }
    BnStats& stats() { return stats_; }
    Packing to_packing() const;

private:
    struct Bin {
        std::vector<int> members;
        Weight weight = 0;
    };

    explicit BnState(const Instance& instance, BnOptions options);

    const Interval& interval(int item) const { return (*model_)[item]; }
    void insert_sorted(int bin, int item);
    void move_item(int item, int from, int to);
    void after_mutation() const;
    Coord next_coordinate(Coord rho) const;

    const Instance* instance_;
    const IntervalModel* model_;
    BnOptions options_;
    std::vector<Bin> bins_;
    int lambda_ = 0;
    double mu_ = 0.0;
    std::vector<Coord> anchors_;  // R_i for the initial lambda bins
    std::vector<double> w_est_;   // mu * (R - R_i)
    std::vector<Coord> events_;   // coordinates where some tail may change
    BnStats stats_;
};

struct BnResult {
    Packing packing;
    SolveReport report;
    BnStats stats;
};

/// Phase I followed, if needed, by Phase II repair. Requires an interval model.
BnResult solve_bn(const Instance& instance, BnOptions options = {});

}  // namespace bppc

#endif  // BPPC_SOLVER_BN_HPP
