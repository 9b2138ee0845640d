#ifndef BPPC_GENERATORS_HPP
#define BPPC_GENERATORS_HPP

#include "bppc/core.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bppc {

// Density-targeted random interval graphs.

struct IntervalGenSpec {
    int n = 2;
    double delta = 0.0;
    std::uint64_t seed = 0;
};

/// D = floor(2.5 n).
Coord horizon(int n);

/// Target mean interval length delta * D * (n - 1) / (2n).
double mean_length(int n, double delta);

struct LengthRange {
    Coord lo = 1;
    Coord hi = 1;
};

/// Sampling window for the per-interval minimum length:
/// [max(1, ceil((4L - D)/3)), floor(L)], with L clamped to at least 1.
LengthRange lambda_min_range(Coord horizon, double mean_length);

/// Real-valued maximum length paired with `lambda_min` so that the expected
/// length equals `mean_length`. Throws std::logic_error on a negative radicand.
double lambda_max(Coord horizon, double mean_length, Coord lambda_min);

/// Per-interval draw record kept for testing the length bounds.
struct IntervalDraw {
    Coord lambda_min = 0;
    Coord lambda_max = 0;  // floored
    bool right_first = false;
};

struct TracedModel {
    IntervalModel model;
    std::vector<IntervalDraw> draws;
};

IntervalModel generate_interval_model(const IntervalGenSpec& spec);
TracedModel generate_interval_model_traced(const IntervalGenSpec& spec);

/// (h, h+1) for h = 0..n-1.
IntervalModel generate_disjoint_model(int n);

// Threshold graphs.

struct ThresholdGenSpec {
    int n = 1;
    double d = 0.0;
    std::uint64_t seed = 0;
};

/// Expected edge density of the threshold generator as a function of d.
double f_of_d(int n, double d);

struct ThresholdGraph {
    std::vector<double> values;  // p_i
    ConflictGraph graph;
    IntervalModel model;  // induces `graph`
};

ThresholdGraph generate_threshold_graph(const ThresholdGenSpec& spec);

/// Interval model whose intersection graph is the threshold graph defined by
/// `values` and `d`; throws std::logic_error if the result does not match `graph`.
IntervalModel threshold_interval_model(const std::vector<double>& values, double d, const ConflictGraph& graph);

// Weights and instance classes.

std::vector<Weight> sample_weights(int n, Weight lo, Weight hi, std::uint64_t seed);

enum class ClassKind { ti, tm, ts };

std::string to_string(ClassKind kind);
ClassKind parse_class_kind(const std::string& text);

struct ClassSpec {
    ClassKind kind = ClassKind::ti;
    int n = 0;
    Weight capacity = 0;
    double density = 0.0;  // Delta for TI, d for TM/TS
    int count = 1;
    Weight weight_lo = 20;
    Weight weight_hi = 100;
    std::uint64_t seed = 0;
    int max_attempts = 10000;

    /// Default weight range for the class: [20,100] for TI/TM, [500,2500] for TS.
    static ClassSpec make(ClassKind kind, int n, Weight capacity, double density, int count, std::uint64_t seed);
};

struct GeneratedInstance {
    Instance instance;
    int index = 0;
    std::uint64_t graph_seed = 0;   // seed of the accepted graph draw
    std::uint64_t weight_seed = 0;
    int attempts = 1;
    double density = 0.0;           // measured
};

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Instance `index` of a class. Seeds depend on (seed, index) only, so
/// different capacities of the same cell share graphs and weights.
GeneratedInstance build_class_instance(const ClassSpec& spec, int index);

/// All `count` instances of a class, generated in parallel.
std::vector<GeneratedInstance> build_class(const ClassSpec& spec);

}  // namespace bppc

#endif  // BPPC_GENERATORS_HPP
