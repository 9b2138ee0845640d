#ifndef BPPC_EXPERIMENT_HPP
#define BPPC_EXPERIMENT_HPP

#include "bppc/core.hpp"
#include "bppc/generators.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bppc {

enum class Algorithm { bn, m, exact };

std::string to_string(Algorithm alg);
Algorithm parse_algorithm(const std::string& text);

/// Experiment grid. Config files are `key = value` lines, `#` starts a
/// comment, lists are comma separated:
///
///   class      = ti            # ti | tm | ts
///   n          = 120, 250
///   B          = 120, 150, 180
///   density    = 0, 0.1, 0.5   # Delta for ti, d for tm/ts
///   count      = 10            # instances per cell
///   seed       = 1
///   algorithms = bn, m         # any of bn, m, exact
///   output     = results.csv
///   threads    = 0             # 0 = OpenMP default
///   groups     = 120,150; 180; 210,240,270   # optional B groups for the summary
struct ExperimentConfig {
    ClassKind kind = ClassKind::ti;
    std::vector<int> n_values;
    std::vector<Weight> capacities;
    std::vector<double> densities;
    int count = 10;
    std::uint64_t seed = 1;
    std::vector<Algorithm> algorithms{Algorithm::bn, Algorithm::m};
    std::string output;
    int threads = 0;
    std::vector<std::vector<Weight>> groups;

    bool runs(Algorithm alg) const;
    /// Throws std::invalid_argument describing the first problem.
    void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Cell seed shared by every capacity (and by TM/TS) of one (n, density) cell.
std::uint64_t cell_seed(std::uint64_t master, int n, double density);

struct AlgorithmOutcome {
    int value = 0;
    double elapsed = 0.0;
};

struct InstanceRecord {
    int n = 0;
    Weight capacity = 0;
    double density = 0.0;
    int index = 0;
    std::uint64_t graph_seed = 0;
    std::uint64_t weight_seed = 0;
    double measured_density = 0.0;
    Weight lower_bound = 0;
    std::optional<AlgorithmOutcome> bn;
    std::optional<AlgorithmOutcome> m;
    std::optional<AlgorithmOutcome> exact;
};

struct TimingStats {
    double min = 0.0;
    double max = 0.0;
    double avg = 0.0;
};

/// One table cell. Percentages are in [0,100]; gaps are mean relative gaps
/// expressed in percent.
struct MetricsRow {
    int n = 0;
    std::string capacity;  // a single B, or a group label for summaries
    double density = 0.0;
    int count = 0;
    bool has_m = false;
    bool has_bn = false;
    double m_eq_lb_pct = 0.0;
    double bn_eq_lb_pct = 0.0;
    double m_lt_bn_pct = 0.0;
    double bn_lt_m_pct = 0.0;
    double gap_m = 0.0;
    double gap_bn = 0.0;
    TimingStats t_m;
    TimingStats t_bn;
};

/// Metrics over an arbitrary set of records.
MetricsRow summarize(std::span<const InstanceRecord> records);

struct ExperimentResult {
    std::vector<MetricsRow> rows;  // one per (n, density, B) cell
    std::vector<MetricsRow> summary;  // one per (n, group) when groups are configured
    std::vector<InstanceRecord> records;
};

class ExperimentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Generates, solves and verifies the whole grid. Instances within a cell
/// are solved in parallel unless `parallel` is false; output order never
/// depends on scheduling. A failed verification throws ExperimentError
/// naming the instance seeds and the algorithm.
ExperimentResult run_experiment(const ExperimentConfig& config, bool parallel = true);

/// Half-up rounding to `digits` decimals.
double round_half_up(double value, int digits);

/// Header then one line per row; columns are the MetricsRow fields in order,
/// without `count`/`has_*`. Absent algorithms print as NA.
void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows);
void write_instance_log(std::ostream& out, std::span<const InstanceRecord> records);

}  // namespace bppc

#endif  // BPPC_EXPERIMENT_HPP
