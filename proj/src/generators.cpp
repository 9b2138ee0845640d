#include "bppc/generators.hpp"

#include "bppc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bppc {

Coord horizon(int n)
{
    return static_cast<Coord>(5) * n / 2;
}

double mean_length(int n, double delta)
{
    const double D = static_cast<double>(horizon(n));
    return delta * D * (n - 1) / (2.0 * n);
}

LengthRange lambda_min_range(Coord horizon, double mean_length)
{
    const double mean = std::max(1.0, mean_length);
    const double D = static_cast<double>(horizon);
    LengthRange range;
    range.hi = static_cast<Coord>(std::floor(mean));
    range.lo = std::max<Coord>(1, static_cast<Coord>(std::ceil((4.0 * mean - D) / 3.0)));
    range.lo = std::min(range.lo, range.hi);
    return range;
}

double lambda_max(Coord horizon, double mean_length, Coord lambda_min)
{
    const double D = static_cast<double>(horizon);
    const double mean = std::max(1.0, mean_length);
    const double lo = static_cast<double>(lambda_min);
    const double radicand = D * D - 4.0 * D * mean + 2.0 * D * lo + 4.0 * mean * lo - 3.0 * lo * lo;
    if (radicand < 0.0) throw std::logic_error("lambda_max: negative radicand, lambda_min outside its window");
    return D - std::sqrt(radicand);
}

TracedModel generate_interval_model_traced(const IntervalGenSpec& spec)
{
    if (spec.n < 2) throw std::invalid_argument("interval generator needs n >= 2");
    if (!(spec.delta >= 0.0 && spec.delta <= 1.0)) throw std::invalid_argument("delta must lie in [0,1]");

    const Coord D = horizon(spec.n);
    const double mean = std::max(1.0, mean_length(spec.n, spec.delta));
    const LengthRange window = lambda_min_range(D, mean);

    Rng rng(spec.seed);
    std::vector<Interval> intervals;
    std::vector<IntervalDraw> draws;
    intervals.reserve(spec.n);
    draws.reserve(spec.n);
    for (int j = 0; j < spec.n; ++j) {
        IntervalDraw draw;
        draw.lambda_min = rng.uniform_int(window.lo, window.hi);
        // Small slack so that exact roots are not floored one step too low.
        const auto floored = static_cast<Coord>(std::floor(lambda_max(D, mean, draw.lambda_min) + 1e-9));
        draw.lambda_max = std::clamp(floored, draw.lambda_min, D);
        draw.right_first = rng.coin();

        Coord l = 0, r = 0;
        if (draw.right_first) {
            r = rng.uniform_int(draw.lambda_min, D);
            l = r - rng.uniform_int(draw.lambda_min, std::min(r, draw.lambda_max));
        } else {
            l = rng.uniform_int(0, D - draw.lambda_min);
            r = l + rng.uniform_int(draw.lambda_min, std::min(D - l, draw.lambda_max));
        }
        intervals.push_back({j, l, r});
        draws.push_back(draw);
    }
    return {IntervalModel(std::move(intervals)), std::move(draws)};
}

IntervalModel generate_interval_model(const IntervalGenSpec& spec)
{
    return generate_interval_model_traced(spec).model;
}

IntervalModel generate_disjoint_model(int n)
{
    if (n < 1) throw std::invalid_argument("disjoint model needs n >= 1");
    std::vector<Interval> intervals;
    intervals.reserve(n);
    for (int h = 0; h < n; ++h) intervals.push_back({h, h, h + 1});
    return IntervalModel(std::move(intervals));
}

double f_of_d(int n, double d)
{
    const double nn = n;
    const double pairs = nn * (nn - 1.0);
    if (d <= 0.5) return (2.0 * (nn * d) * (nn * d) - nn * d) / pairs;
    // Complement symmetry: the non-edges form a threshold graph at 1 - d. This
    // makes the branches meet at 0.5.
    const double e = 1.0 - d;
    return (pairs - 2.0 * nn * nn * e * e + nn * e) / pairs;
}

IntervalModel threshold_interval_model(const std::vector<double>& values, double d, const ConflictGraph& graph)
{
    const int n = static_cast<int>(values.size());
    // Vertices with p <= d form a clique; the rest form an independent set whose
    // neighborhoods into the clique are nested. Independent vertices become
    // disjoint unit slots ordered by decreasing degree; each clique vertex
    // spans [0, 2t) where t counts its independent neighbors.
    std::vector<int> independent;
    for (int i = 0; i < n; ++i)
        if (!(values[i] <= d)) independent.push_back(i);
    std::stable_sort(independent.begin(), independent.end(),
                     [&](int a, int b) { return graph.degree(a) > graph.degree(b); });

    std::vector<std::pair<Coord, Coord>> endpoints(n);
    std::vector<char> is_independent(n, 0);
    for (std::size_t t = 0; t < independent.size(); ++t) {
        const Coord slot = 2 * static_cast<Coord>(t + 1);
        endpoints[independent[t]] = {slot - 1, slot};
        is_independent[independent[t]] = 1;
    }
    for (int i = 0; i < n; ++i) {
        if (is_independent[i]) continue;
        Coord reach = 0;
        for (int j : graph.neighbors(i)) reach += is_independent[j];
        endpoints[i] = {0, std::max<Coord>(1, 2 * reach)};
    }
    auto model = IntervalModel::from_endpoints(endpoints);
    if (build_conflict_graph(model) != graph)
        throw std::logic_error("threshold interval model does not reproduce the threshold graph");
    return model;
}

ThresholdGraph generate_threshold_graph(const ThresholdGenSpec& spec)
{
    if (spec.n < 1) throw std::invalid_argument("threshold generator needs n >= 1");
    if (!(spec.d >= 0.0 && spec.d <= 1.0)) throw std::invalid_argument("d must lie in [0,1]");

    ThresholdGraph out;
    Rng rng(spec.seed);
    out.values.resize(spec.n);
    for (auto& p : out.values) p = rng.uniform_real();

    std::vector<std::vector<int>> adjacency(spec.n);
    for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.n; ++j)
            if (i != j && (out.values[i] + out.values[j]) / 2.0 <= spec.d) adjacency[i].push_back(j);
    out.graph = ConflictGraph::from_adjacency(std::move(adjacency));
    out.model = threshold_interval_model(out.values, spec.d, out.graph);
    return out;
}

std::vector<Weight> sample_weights(int n, Weight lo, Weight hi, std::uint64_t seed)
{
    if (lo < 1 || lo > hi) throw std::invalid_argument("weight range must satisfy 1 <= lo <= hi");
    Rng rng(seed);
    std::vector<Weight> w(std::max(n, 0));
    for (auto& x : w) x = rng.uniform_int(lo, hi);
    return w;
}

std::string to_string(ClassKind kind)
{
    switch (kind) {
    case ClassKind::ti: return "ti";
    case ClassKind::tm: return "tm";
    case ClassKind::ts: return "ts";
    }
    return "?";
}

ClassKind parse_class_kind(const std::string& text)
{
    std::string lower = text;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "ti") return ClassKind::ti;
    if (lower == "tm") return ClassKind::tm;
    if (lower == "ts") return ClassKind::ts;
    throw std::invalid_argument("unknown instance class '" + text + "'");
}

ClassSpec ClassSpec::make(ClassKind kind, int n, Weight capacity, double density, int count, std::uint64_t seed)
{
    ClassSpec spec;
    spec.kind = kind;
    spec.n = n;
    spec.capacity = capacity;
    spec.density = density;
    spec.count = count;
    spec.seed = seed;
    if (kind == ClassKind::ts) {
        spec.weight_lo = 500;
        spec.weight_hi = 2500;
    }
    return spec;
}

GeneratedInstance build_class_instance(const ClassSpec& spec, int index)
{
    const std::uint64_t base = derive_seed(spec.seed, static_cast<std::uint64_t>(index));
    const std::uint64_t weight_seed = derive_seed(base, 0);
    auto weights = sample_weights(spec.n, spec.weight_lo, spec.weight_hi, weight_seed);
    auto cell = [&] {
        return to_string(spec.kind) + "(n=" + std::to_string(spec.n) + ", B=" + std::to_string(spec.capacity) +
               ", density=" + std::to_string(spec.density) + ") instance " + std::to_string(index);
    };

    if (spec.kind == ClassKind::ti) {
        if (spec.density <= 0.0) {
            auto instance = Instance::from_model(std::move(weights), spec.capacity, generate_disjoint_model(spec.n));
            return {std::move(instance), index, 0, weight_seed, 1, 0.0};
        }
        const double lo = spec.density - 0.02 - 1e-12;
        const double hi = spec.density + 0.02 + 1e-12;
        for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
            const std::uint64_t graph_seed = derive_seed(base, static_cast<std::uint64_t>(attempt) + 1);
            auto model = generate_interval_model({spec.n, spec.density, graph_seed});
            const double density = edge_density(count_intersections(model), model.size());
            if (density < lo || density > hi) continue;
            auto instance = Instance::from_model(std::move(weights), spec.capacity, std::move(model));
            return {std::move(instance), index, graph_seed, weight_seed, attempt + 1, density};
        }
        throw GenerationError("rejection budget of " + std::to_string(spec.max_attempts) + " attempts exceeded for " +
                              cell());
    }

    const std::uint64_t graph_seed = derive_seed(base, 1);
    auto tg = generate_threshold_graph({spec.n, spec.density, graph_seed});
    const double density = spec.n >= 2 ? edge_density(tg.graph) : 0.0;
    Instance instance(std::move(weights), spec.capacity, std::move(tg.graph), std::move(tg.model));
    return {std::move(instance), index, graph_seed, weight_seed, 1, density};
}

std::vector<GeneratedInstance> build_class(const ClassSpec& spec)
{
    if (spec.count < 1) throw std::invalid_argument("class count must be >= 1");
    std::vector<std::optional<GeneratedInstance>> slots(spec.count);
    std::vector<std::string> errors(spec.count);
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < spec.count; ++i) {
        try {
            slots[i] = build_class_instance(spec, i);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    std::vector<GeneratedInstance> out;
    out.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i) {
        if (!errors[i].empty()) throw GenerationError(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

}  // namespace bppc
