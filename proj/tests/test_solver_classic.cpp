#include "helpers.hpp"

#include "bppc/generators.hpp"
#include "bppc/solver_classic.hpp"

#include <doctest.h>

#include <numeric>

using namespace bppc;
using testing::interval_instance;

namespace {

std::vector<int> identity(int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::vector<std::vector<int>> sorted_bins(Packing p)
{
    for (auto& b : p.bins) std::sort(b.begin(), b.end());
    return p.bins;
}

}  // namespace

TEST_CASE("extended graph")
{
    const auto inst = interval_instance({{0, 2}, {1, 3}, {4, 5}, {6, 7}}, {90, 80, 30, 75}, 150);
    const auto ext = build_extended_graph(inst);
    // G has (0,1); capacity pairs are (0,1) and (0,3) and (1,3).
    CHECK(ext.capacity_pairs == 3);
    CHECK(ext.extra_edges == 2);
    CHECK(ext.edge_count() == 3);
    CHECK(ext.degrees == std::vector<int>{2, 2, 0, 2});
    CHECK(ext.avg_weight == doctest::Approx(68.75));
    CHECK(ext.avg_degree == doctest::Approx(1.5));

    const auto roomy = build_extended_graph(inst.with_capacity(200));
    CHECK(roomy.extra_edges == 0);
    CHECK(roomy.edge_count() == inst.graph().edge_count());
}

TEST_CASE("extended graph density follows the capacity")
{
    const int n = 1000;
    const auto w = sample_weights(n, 20, 100, 5);
    const auto inst = Instance::from_model(w, 120, generate_disjoint_model(n));
    const auto ext = build_extended_graph(inst);
    CHECK(edge_density(ext.extra_edges, n) == doctest::Approx(0.5).epsilon(0.05));
    CHECK(build_extended_graph(inst.with_capacity(200)).extra_edges == 0);
}

TEST_CASE("parallel and serial extended graphs agree")
{
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(2, 300));
        const auto inst = interval_instance(testing::random_endpoints(rng, n, 2 * n, n / 2 + 1),
                                            testing::random_weights(rng, n, 1, 100), rng.uniform_int(100, 200));
        const auto a = build_extended_graph(inst);
        const auto b = build_extended_graph_serial(inst);
        CHECK(a.degrees == b.degrees);
        CHECK(a.capacity_pairs == b.capacity_pairs);
        CHECK(a.extra_edges == b.extra_edges);
    }
}

TEST_CASE("scaled weights")
{
    const std::vector<Weight> w{60, 40};
    const std::vector<int> deg{1, 3};
    const auto s = scaled_weights(w, deg, 0.5);
    CHECK(s.scores[0] == doctest::Approx(0.85));
    CHECK(s.scores[1] == doctest::Approx(1.15));
    CHECK(s.order == std::vector<int>{1, 0});

    // Zero average degree drops the degree term.
    const std::vector<Weight> w3{10, 30, 20};
    const std::vector<int> none{0, 0, 0};
    CHECK(scaled_weights(w3, none, 0.0).order == std::vector<int>{1, 2, 0});  // equal scores: larger weight first
    CHECK(scaled_weights(w3, none, 1.0).order == std::vector<int>{1, 2, 0});

    // alpha = 1 is the weight order with ties by lower id.
    const std::vector<Weight> tied{5, 9, 5, 9, 1};
    const std::vector<int> d{4, 0, 1, 2, 3};
    CHECK(scaled_weights(tied, d, 1.0).order == std::vector<int>{1, 3, 0, 2, 4});
    CHECK_THROWS_AS(scaled_weights(tied, d, 1.5), std::invalid_argument);
    CHECK(alpha_grid()[0] == 0.0);
    CHECK(alpha_grid()[10] == 1.0);
    CHECK(alpha_grid()[3] == doctest::Approx(0.3));
}

TEST_CASE("fit rules on the textbook example")
{
    const auto inst = Instance::from_model({60, 50, 40, 30, 20}, 100, generate_disjoint_model(5));
    const auto order = identity(5);
    CHECK(sorted_bins(run_fit(inst, order, FitRule::first)) == std::vector<std::vector<int>>{{0, 2}, {1, 3, 4}});
    CHECK(sorted_bins(run_fit(inst, order, FitRule::best)) == std::vector<std::vector<int>>{{0, 2}, {1, 3, 4}});
    // WF: 40 joins the emptier 50-bin, 30 the 60-bin, 20 fits neither.
    CHECK(sorted_bins(run_fit(inst, order, FitRule::worst)) == std::vector<std::vector<int>>{{0, 3}, {1, 2}, {4}});
}

TEST_CASE("best fit and first fit differ when the fullest bin is not first")
{
    const auto inst = Instance::from_model({50, 70, 30}, 100, generate_disjoint_model(3));
    const auto order = identity(3);
    CHECK(sorted_bins(run_fit(inst, order, FitRule::first)) == std::vector<std::vector<int>>{{0, 2}, {1}});
    CHECK(sorted_bins(run_fit(inst, order, FitRule::best)) == std::vector<std::vector<int>>{{0}, {1, 2}});
}

TEST_CASE("fit respects conflicts")
{
    const auto clique = interval_instance({{0, 1}, {0, 1}, {0, 1}, {0, 1}}, {1, 1, 1, 1}, 100);
    for (auto rule : {FitRule::first, FitRule::best, FitRule::worst})
        CHECK(run_fit(clique, identity(4), rule).value() == 4);
}

TEST_CASE("best_of_m")
{
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(2, 150));
        const auto inst = Instance::from_model(testing::random_weights(rng, n, 20, 100), rng.uniform_int(100, 300),
                                               generate_interval_model({n, rng.uniform_real(), rng.next()}));
        const auto best = best_of_m(inst);
        const auto serial = best_of_m_serial(inst);
        REQUIRE(best.runs.size() == 33);
        CHECK(best.packing.bins == serial.packing.bins);
        CHECK(best.rule == serial.rule);
        CHECK(best.alpha == serial.alpha);
        CHECK(verify_packing(inst, best.packing).ok());

        int min_value = n + 1;
        for (const auto& run : best.runs) min_value = std::min(min_value, run.value);
        CHECK(best.packing.value() == min_value);
        // The winner is the first run that attains the minimum.
        const auto first = std::find_if(best.runs.begin(), best.runs.end(),
                                        [&](const FitRun& r) { return r.value == min_value; });
        CHECK(best.rule == first->rule);
        CHECK(best.alpha == first->alpha);
        CHECK(best.report.value == min_value);
        CHECK(best.report.lower_bound <= min_value);
        CHECK(best.report.algorithm == "m");

        // Every run is feasible, and in particular never pairs items that
        // cannot share a bin by weight.
        const auto ext = build_extended_graph(inst);
        for (auto rule : {FitRule::first, FitRule::best, FitRule::worst})
            for (double a : alpha_grid()) {
                const auto p = run_fit(inst, scaled_weights(ext, inst.weights(), a).order, rule);
                CHECK(verify_packing(inst, p).ok());
            }
    }
}

TEST_CASE("best_of_m trivial envelope")
{
    const auto inst = Instance::from_model({10, 20, 30}, 60, generate_disjoint_model(3));
    CHECK(best_of_m(inst).packing.value() == 1);
    CHECK(best_of_m(inst).rule == FitRule::first);
    CHECK(best_of_m(inst).alpha == 0.0);
}
