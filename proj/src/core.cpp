#include "bppc/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace bppc {

IntervalModel::IntervalModel(std::vector<Interval> intervals) : intervals_(std::move(intervals))
{
    if (intervals_.empty()) return;
    Coord shift = intervals_.front().l;
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto& iv = intervals_[i];
        if (iv.id != static_cast<int>(i))
            throw std::invalid_argument("interval id " + std::to_string(iv.id) + " at position " +
                                        std::to_string(i));
        if (!(iv.l < iv.r))
            throw std::invalid_argument("interval " + std::to_string(i) + " has l >= r");
        shift = std::min(shift, iv.l);
    }
    horizon_ = 0;
    for (auto& iv : intervals_) {
        iv.l -= shift;
        iv.r -= shift;
        horizon_ = std::max(horizon_, iv.r);
    }
}

IntervalModel IntervalModel::from_endpoints(std::span<const std::pair<Coord, Coord>> endpoints)
{
    std::vector<Interval> intervals;
    intervals.reserve(endpoints.size());
    for (std::size_t i = 0; i < endpoints.size(); ++i)
        intervals.push_back({static_cast<int>(i), endpoints[i].first, endpoints[i].second});
    return IntervalModel(std::move(intervals));
}

ConflictGraph::ConflictGraph(int n) : adjacency_(static_cast<std::size_t>(std::max(n, 0))) {}

ConflictGraph ConflictGraph::from_edges(int n, std::span<const std::pair<int, int>> edges)
{
    ConflictGraph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto& row : g.adjacency_) {
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw std::invalid_argument("duplicate edge");
    }
    g.edge_count_ = edges.size();
    return g;
}

ConflictGraph ConflictGraph::from_adjacency(std::vector<std::vector<int>> adjacency)
{
    ConflictGraph g;
    const int n = static_cast<int>(adjacency.size());
    std::size_t degree_sum = 0;
    for (int v = 0; v < n; ++v) {
        const auto& row = adjacency[v];
        for (std::size_t k = 0; k < row.size(); ++k) {
            const int u = row[k];
            if (u < 0 || u >= n || u == v || (k > 0 && row[k - 1] >= u))
                throw std::invalid_argument("malformed adjacency row " + std::to_string(v));
        }
        degree_sum += row.size();
    }
    for (int v = 0; v < n; ++v)
        for (int u : adjacency[v])
            if (!std::binary_search(adjacency[u].begin(), adjacency[u].end(), v))
                throw std::invalid_argument("asymmetric adjacency");
    g.adjacency_ = std::move(adjacency);
    g.edge_count_ = degree_sum / 2;
    return g;
}

bool ConflictGraph::adjacent(int u, int v) const
{
    const auto& row = adjacency_[u];
    return std::binary_search(row.begin(), row.end(), v);
}

std::vector<std::pair<int, int>> ConflictGraph::edges() const
{
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < size(); ++u)
        for (int v : adjacency_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

ConflictGraph build_conflict_graph(const IntervalModel& model)
{
    const int n = static_cast<int>(model.size());
    std::vector<int> by_left(n);
    std::iota(by_left.begin(), by_left.end(), 0);
    std::sort(by_left.begin(), by_left.end(), [&](int a, int b) {
        return std::tie(model[a].l, a) < std::tie(model[b].l, b);
    });
    std::vector<Coord> lefts(n);
    for (int k = 0; k < n; ++k) lefts[k] = model[by_left[k]].l;

    std::vector<std::vector<int>> adjacency(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < n; ++i) {
        const Interval& p = model[i];
        // Candidates start strictly before r_i; keep those ending after l_i.
        const auto stop = std::lower_bound(lefts.begin(), lefts.end(), p.r) - lefts.begin();
        auto& row = adjacency[i];
        for (std::ptrdiff_t k = 0; k < stop; ++k) {
            const int j = by_left[k];
            if (j != i && model[j].r > p.l) row.push_back(j);
        }
        std::sort(row.begin(), row.end());
    }
    return ConflictGraph::from_adjacency(std::move(adjacency));
}

ConflictGraph build_conflict_graph_serial(const IntervalModel& model)
{
    const int n = static_cast<int>(model.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (intersects(model[i], model[j])) edges.emplace_back(i, j);
    return ConflictGraph::from_edges(n, edges);
}

std::size_t count_intersections(const IntervalModel& model)
{
    const std::size_t n = model.size();
    std::vector<Coord> lefts;
    lefts.reserve(n);
    for (const auto& iv : model) lefts.push_back(iv.l);
    std::sort(lefts.begin(), lefts.end());
    // Ordered pairs (i, j) with r_i <= l_j are exactly the disjoint pairs.
    std::size_t disjoint = 0;
    for (const auto& iv : model)
        disjoint += static_cast<std::size_t>(lefts.end() - std::lower_bound(lefts.begin(), lefts.end(), iv.r));
    return n * (n - 1) / 2 - disjoint;
}

double edge_density(std::size_t edges, std::size_t n)
{
    if (n < 2) throw std::domain_error("edge density needs at least two vertices");
    return 2.0 * static_cast<double>(edges) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double edge_density(const ConflictGraph& graph)
{
    return edge_density(graph.edge_count(), static_cast<std::size_t>(graph.size()));
}

Instance::Instance(std::vector<Weight> weights, Weight capacity, ConflictGraph graph,
                   std::optional<IntervalModel> model)
    : weights_(std::move(weights)), capacity_(capacity), graph_(std::move(graph)), model_(std::move(model))
{
    if (capacity_ < 0) throw std::invalid_argument("negative capacity");
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] < 0) throw std::invalid_argument("negative weight on item " + std::to_string(i));
        if (weights_[i] > capacity_)
            throw std::invalid_argument("item " + std::to_string(i) + " weight " + std::to_string(weights_[i]) +
                                        " exceeds capacity " + std::to_string(capacity_));
    }
    if (graph_.size() != static_cast<int>(weights_.size()))
        throw std::invalid_argument("graph size does not match weight count");
    if (model_) {
        if (model_->size() != weights_.size())
            throw std::invalid_argument("interval model size does not match weight count");
        if (build_conflict_graph(*model_) != graph_)
            throw std::invalid_argument("interval model does not induce the conflict graph");
    }
}

Instance Instance::from_model(std::vector<Weight> weights, Weight capacity, IntervalModel model)
{
    auto graph = build_conflict_graph(model);
    return Instance(std::move(weights), capacity, std::move(graph), std::move(model));
}

Weight Instance::total_weight() const
{
    return std::accumulate(weights_.begin(), weights_.end(), Weight{0});
}

Instance Instance::with_capacity(Weight capacity) const
{
    Instance copy = *this;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i] > capacity)
            throw std::invalid_argument("item " + std::to_string(i) + " weight exceeds capacity " +
                                        std::to_string(capacity));
    copy.capacity_ = capacity;
    return copy;
}

Packing Packing::from_bins(const Instance& instance, std::vector<std::vector<int>> bins)
{
    Packing p;
    p.bin_weights.reserve(bins.size());
    for (const auto& bin : bins) {
        Weight w = 0;
        for (int item : bin) w += instance.weight(item);
        p.bin_weights.push_back(w);
    }
    p.bins = std::move(bins);
    return p;
}

CliqueInfo leftmost_max_clique(const IntervalModel& model)
{
    CliqueInfo info;
    if (model.empty()) return info;

    struct Event {
        Coord x;
        int opens;  // 0 = close, 1 = open; closes sort first at equal x
        int id;
    };
    std::vector<Event> events;
    events.reserve(2 * model.size());
    for (const auto& iv : model) {
        events.push_back({iv.l, 1, iv.id});
        events.push_back({iv.r, 0, iv.id});
    }
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return std::tie(a.x, a.opens, a.id) < std::tie(b.x, b.opens, b.id); });

    int open = 0;
    Coord best_x = 0;
    for (std::size_t k = 0; k < events.size();) {
        const Coord x = events[k].x;
        for (; k < events.size() && events[k].x == x; ++k) open += events[k].opens ? 1 : -1;
        if (open > info.omega) {
            info.omega = open;
            best_x = x;
        }
    }
    for (const auto& iv : model)
        if (iv.l <= best_x && best_x < iv.r) info.clique.push_back(iv.id);
    info.pi = 0;
    for (int id : info.clique) info.pi = std::max(info.pi, model[id].l);
    return info;
}

int chromatic_number(const IntervalModel& model)
{
    return leftmost_max_clique(model).omega;
}

std::optional<int> chordal_clique_number(const ConflictGraph& graph)
{
    const int n = graph.size();
    if (n == 0) return 0;
    std::vector<int> label(n, 0), position(n, -1), order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v)
            if (position[v] < 0 && (pick < 0 || label[v] > label[pick])) pick = v;
        position[pick] = step;
        order.push_back(pick);
        for (int u : graph.neighbors(pick))
            if (position[u] < 0) ++label[u];
    }
    // Reverse MCS order is a perfect elimination ordering iff the graph is chordal.
    int omega = 1;
    for (int v : order) {
        int parent = -1;
        std::vector<int> earlier;
        for (int u : graph.neighbors(v))
            if (position[u] < position[v]) {
                earlier.push_back(u);
                if (parent < 0 || position[u] > position[parent]) parent = u;
            }
        omega = std::max(omega, static_cast<int>(earlier.size()) + 1);
        for (int u : earlier)
            if (u != parent && !(position[u] < position[parent] && graph.adjacent(parent, u))) return std::nullopt;
    }
    return omega;
}

Weight lb_bin_packing(std::span<const Weight> weights, Weight capacity)
{
    if (capacity <= 0) throw std::domain_error("bin packing bound needs capacity >= 1");
    if (weights.empty()) return 0;
    const Weight total = std::accumulate(weights.begin(), weights.end(), Weight{0});
    return std::max<Weight>(1, (total + capacity - 1) / capacity);
}

int greedy_clique_size(const ConflictGraph& graph)
{
    const int n = graph.size();
    int best = n > 0 ? 1 : 0;
    std::vector<int> clique;
    for (int start = 0; start < n; ++start) {
        if (graph.degree(start) < best) continue;
        // Candidates by decreasing degree; keep one if it touches the whole clique.
        std::vector<int> candidates(graph.neighbors(start).begin(), graph.neighbors(start).end());
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](int a, int b) { return graph.degree(a) > graph.degree(b); });
        clique.assign(1, start);
        for (int v : candidates)
            if (std::all_of(clique.begin(), clique.end(), [&](int u) { return graph.adjacent(u, v); }))
                clique.push_back(v);
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

Weight lb_bppc(const Instance& instance)
{
    const Weight bp = lb_bin_packing(instance.weights(), instance.capacity());
    Weight chi = 0;
    if (instance.has_model()) {
        chi = chromatic_number(*instance.model());
    } else {
        const auto omega = chordal_clique_number(instance.graph());
        chi = omega ? *omega : greedy_clique_size(instance.graph());
    }
    return std::max(bp, chi);
}

std::string Verdict::describe() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::ok: os << "ok"; break;
    case Kind::capacity: os << "capacity violation in bin " << bin; break;
    case Kind::conflict: os << "conflict (" << u << "," << v << ") in bin " << bin; break;
    case Kind::not_partition: os << "not a partition (item " << u << ")"; break;
    }
    return os.str();
}

Verdict verify_packing(const Instance& instance, const Packing& packing)
{
    const int n = instance.size();
    std::vector<int> bin_of(n, -1);
    for (int b = 0; b < packing.value(); ++b)
        for (int item : packing.bins[b]) {
            if (item < 0 || item >= n || bin_of[item] >= 0)
                return {Verdict::Kind::not_partition, b, item, -1};
            bin_of[item] = b;
        }
    for (int i = 0; i < n; ++i)
        if (bin_of[i] < 0) return {Verdict::Kind::not_partition, -1, i, -1};

    for (int b = 0; b < packing.value(); ++b) {
        Weight w = 0;
        for (int item : packing.bins[b]) w += instance.weight(item);
        if (w > instance.capacity()) return {Verdict::Kind::capacity, b, -1, -1};

        std::vector<int> members = packing.bins[b];
        std::sort(members.begin(), members.end());
        for (int u : members)
            for (int v : instance.graph().neighbors(u))
                if (v > u && bin_of[v] == b) return {Verdict::Kind::conflict, b, u, v};
    }
    return {};
}

double gap(Weight value, Weight lb)
{
    if (lb < 1) throw std::domain_error("gap needs a positive lower bound");
    return static_cast<double>(value - lb) / static_cast<double>(lb);
}

}  // namespace bppc
