#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maxpm/algorithms.hpp"
#include "test_support.hpp"

using namespace maxpm;
using testsupport::OracleFamily;

namespace {

PartitionMatroid two_group_matroid() {
  return PartitionMatroid({{0, 1}, {2, 3}}, {1, 1});
}

}  // namespace

TEST_CASE("greedy on the modular instance finds the per-group maxima") {
  auto f = make_modular({3, 1, 2, 5});
  const PartitionMatroid m = two_group_matroid();
  CountingOracle counting(*f);
  const RunResult r = greedy(m, counting);
  CHECK(r.solution == std::vector<ElementId>{0, 3});
  CHECK(r.objective == 8.0);
  // Full scan: 4 evaluations at step 0, 3 at step 1.
  CHECK(r.queries == 7);
  CHECK(counting.count() == r.queries);
  CHECK(r.trace.size() == 2);
  CHECK(r.trace[0].element == 3);
  CHECK(r.trace[0].gain == 5.0);
  CHECK(r.trace[1].element == 0);
}

TEST_CASE("greedy matches enumeration on the coverage instance") {
  auto f = make_coverage({{0, 1}, {1, 2}, {2, 3}, {3}});
  const PartitionMatroid m = two_group_matroid();
  const RunResult r = greedy(m, *f);
  CHECK(r.objective == testsupport::reference_optimum(m, *f));
  CHECK(r.objective == 4.0);
  // Step-0 tie between elements 0, 1, 2 goes to the lowest id.
  CHECK(r.trace[0].element == 0);
  CHECK(r.solution == std::vector<ElementId>{0, 2});
}

TEST_CASE("greedy fills the only maximal set under cardinality squared") {
  auto f = make_cardinality_squared();
  const PartitionMatroid m({{0, 1, 2}}, {3});
  const RunResult r = greedy(m, *f);
  CHECK(r.solution == std::vector<ElementId>{0, 1, 2});
  CHECK(r.objective == 9.0);
  CHECK(r.queries == 6);  // 3 + 2 + 1
}

TEST_CASE("threshold greedy trace on the modular instance") {
  auto f = make_modular({3, 1, 2, 5});
  const PartitionMatroid m = two_group_matroid();
  const RunResult r = threshold_greedy(m, *f, 0.5);
  CHECK(r.solution == std::vector<ElementId>{0, 3});
  CHECK(r.objective == 8.0);
  // tau0 = 5: element 3 accepted in the first sweep, element 0 at tau = 2.5.
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[0].element == 3);
  CHECK(r.trace[0].gain == 5.0);
  CHECK(r.trace[1].element == 0);
  CHECK(r.trace[1].gain == 3.0);
  CHECK(r.rounds == 2);
  CHECK(r.queries == 9);  // 4 (tau0 scan) + 4 (sweep 1) + 1 (sweep 2)
  CHECK(r.rounds <= testsupport::threshold_round_bound(0.5, m.total_budget()));
}

TEST_CASE("threshold greedy reaches maximal in one sweep on growing gains") {
  auto f = make_cardinality_squared();
  const PartitionMatroid m({{0, 1, 2, 3}}, {4});
  const RunResult r = threshold_greedy(m, *f, 0.5);
  CHECK(m.is_maximal(r.solution));
  CHECK(r.rounds == 1);
  CHECK(r.objective == 16.0);
}

TEST_CASE("threshold greedy rejects bad epsilon") {
  auto f = make_modular({1});
  const PartitionMatroid m({{0}}, {1});
  CHECK_THROWS_AS(threshold_greedy(m, *f, 0.0), Error);
  CHECK_THROWS_AS(threshold_greedy(m, *f, 1.0), Error);
}

TEST_CASE("power exponent formula") {
  CHECK(power_exponent(2, 0.5, 0.5) == 3);  // ceil(3 / 0.75) - 1
  CHECK(power_exponent(7, 0.0, 0.3) == 7);  // denominator 1
  CHECK(power_exponent(4, 0.0, 1.0) == 4);
  CHECK_FALSE(power_exponent(3, 1.0, 0.0).has_value());  // argmax limit
}

TEST_CASE("sample_power_index distributions") {
  Rng rng(2024);

  SUBCASE("gains [3,1] with a=2 select index 0 with probability 9/10") {
    const std::vector<double> gains{3, 1};
    int zero = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
      if (sample_power_index(gains, 2, rng) == 0) ++zero;
    CHECK(std::abs(zero / double(n) - 0.9) < 0.005);
  }

  SUBCASE("equal gains are uniform for any exponent") {
    const std::vector<double> gains{5, 5, 5};
    std::vector<int> counts(3, 0);
    const int n = 90000;
    for (int i = 0; i < n; ++i) ++counts[sample_power_index(gains, 11, rng)];
    for (int c : counts) CHECK(std::abs(c / double(n) - 1.0 / 3) < 0.008);
  }

  SUBCASE("all-zero gains are uniform") {
    const std::vector<double> gains{0, 0};
    int zero = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i)
      if (sample_power_index(gains, 7, rng) == 0) ++zero;
    CHECK(std::abs(zero / double(n) - 0.5) < 0.01);
  }

  SUBCASE("a=0 is uniform by the 0^0 convention") {
    const std::vector<double> gains{3, 0, 1};
    std::vector<int> counts(3, 0);
    const int n = 90000;
    for (int i = 0; i < n; ++i) ++counts[sample_power_index(gains, 0, rng)];
    for (int c : counts) CHECK(std::abs(c / double(n) - 1.0 / 3) < 0.008);
  }

  SUBCASE("zero gains are never selected for positive exponents") {
    const std::vector<double> gains{0, 2};
    for (int i = 0; i < 2000; ++i)
      CHECK(sample_power_index(gains, 1, rng) == 1);
  }

  SUBCASE("empty pool throws") {
    CHECK_THROWS_AS(sample_power_index({}, 1, rng), Error);
  }
}

TEST_CASE("prob mean objective matches the exact outcome-path expectation") {
  auto f = make_modular({3, 1, 2, 5});
  const PartitionMatroid m = two_group_matroid();

  // Independent expectation: enumerate both steps of the run. Group 0 picks
  // from gains [3,1] and group 1 from [2,5], each with exponent
  // a = ceil((2+1)/0.75) - 1 = 3.
  const double a = 3.0;
  const double p0 = std::pow(3.0, a) / (std::pow(3.0, a) + std::pow(1.0, a));
  const double q3 = std::pow(5.0, a) / (std::pow(2.0, a) + std::pow(5.0, a));
  const double expected =
      (p0 * 3.0 + (1.0 - p0) * 1.0) + (q3 * 5.0 + (1.0 - q3) * 2.0);
  CHECK(expected == doctest::Approx(7.7481203).epsilon(1e-6));

  const int runs = 20000;
  std::vector<double> values;
  values.reserve(runs);
  for (int i = 0; i < runs; ++i) {
    Rng rng(Rng::derive_seed(99, 0, static_cast<std::uint64_t>(i)));
    const RunResult r = prob(m, *f, 0.5, 0.5, rng);
    CHECK(m.is_maximal(r.solution));
    CHECK(r.queries <= testsupport::sum_group_size_times_budget(m));
    values.push_back(r.objective);
  }
  const auto stats = testsupport::mean_stderr(values);
  CHECK(std::abs(stats.mean - expected) < 4.0 * stats.stderr_ + 1e-9);
}

TEST_CASE("prob with gamma'=1, alpha'=0 degenerates to argmax selection") {
  auto f = make_modular({3, 1, 2, 5});
  const PartitionMatroid m = two_group_matroid();
  Rng rng(5);
  const RunResult r = prob(m, *f, 1.0, 0.0, rng);
  CHECK(r.solution == std::vector<ElementId>{0, 3});
  CHECK(r.objective == 8.0);
}

TEST_CASE("sampled candidate pool size") {
  // 5 * ln(4000) ~ 41.5 exceeds the group size, so the pool degenerates.
  CHECK(sampled_pool_size(10, 0, 2, 4, 0.001) == 10);
  CHECK(sampled_pool_size(1000, 0, 100, 100, 0.5) == 53);  // ceil(10 ln 200)
  CHECK_THROWS_AS(sampled_pool_size(10, 0, 2, 4, 0.0), Error);
  CHECK_THROWS_AS(sampled_pool_size(10, 0, 2, 4, 1.0), Error);

  auto f = make_modular({1, 2});
  const PartitionMatroid m({{0, 1}}, {1});
  Rng rng(3);
  CHECK_THROWS_AS(fast_prob(m, *f, 0.5, 0.5, 1.5, rng), Error);
}

TEST_CASE("sample_without_replacement draws distinct elements uniformly") {
  Rng rng(31);
  const std::vector<ElementId> pool{0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<int> hits(pool.size(), 0);
  const int trials = 40000;
  for (int t = 0; t < trials; ++t) {
    const auto picked = sample_without_replacement(pool, 3, rng);
    CHECK(picked.size() == 3);
    CHECK(picked[0] != picked[1]);
    CHECK(picked[0] != picked[2]);
    CHECK(picked[1] != picked[2]);
    for (ElementId e : picked) ++hits[static_cast<size_t>(e)];
  }
  const double expected = 3.0 / 8.0;
  for (int h : hits)
    CHECK(std::abs(h / double(trials) - expected) < 0.01);
}

TEST_CASE("pool-sampling miss rate obeys the delta/b guarantee") {
  // Pool of 50 with 10 targets, b = 20, delta = 0.2: the sampled pool of
  // size ceil(5 ln 100) = 24 misses all targets with probability well under
  // delta / b = 0.01.
  Rng rng(77);
  std::vector<ElementId> pool(50);
  std::iota(pool.begin(), pool.end(), 0);
  const int m_t = sampled_pool_size(50, 0, 10, 20, 0.2);
  CHECK(m_t == 24);
  const int draws = 20000;
  int misses = 0;
  for (int d = 0; d < draws; ++d) {
    const auto picked = sample_without_replacement(pool, m_t, rng);
    bool hit = false;
    for (ElementId e : picked) hit = hit || (e < 10);
    if (!hit) ++misses;
  }
  const double freq = misses / double(draws);
  const double se = std::sqrt(freq * (1.0 - freq) / draws);
  CHECK(freq <= 0.2 / 20 + 3.0 * se + 1e-12);
}

TEST_CASE("fast_prob queries equal the summed pool sizes and match prob "
          "distributionally when pools degenerate") {
  auto f = make_modular({1, 2, 1});
  const PartitionMatroid m({{0, 1}, {2}}, {1, 1});
  // delta = 0.9 keeps every sampled pool at full size here.
  CHECK(sampled_pool_size(2, 0, 1, 2, 0.9) == 2);
  CHECK(sampled_pool_size(1, 0, 1, 2, 0.9) == 1);

  const int runs = 20000;
  int fast_first_zero = 0;
  int prob_first_zero = 0;
  for (int i = 0; i < runs; ++i) {
    Rng rng_fast(Rng::derive_seed(7, 1, static_cast<std::uint64_t>(i)));
    const RunResult rf = fast_prob(m, *f, 0.5, 0.5, 0.9, rng_fast);
    CHECK(rf.queries == 3);
    CHECK(m.is_maximal(rf.solution));
    if (rf.trace[0].element == 0) ++fast_first_zero;

    Rng rng_prob(Rng::derive_seed(7, 2, static_cast<std::uint64_t>(i)));
    const RunResult rp = prob(m, *f, 0.5, 0.5, rng_prob);
    if (rp.trace[0].element == 0) ++prob_first_zero;
  }
  // Exact first-step distribution: gains [1,2] with a = 3 => P(elem 0) = 1/9.
  const double exact = 1.0 / 9.0;
  const double se = std::sqrt(exact * (1.0 - exact) / runs);
  CHECK(std::abs(fast_first_zero / double(runs) - exact) < 4 * se);
  CHECK(std::abs(prob_first_zero / double(runs) - exact) < 4 * se);
  CHECK(std::abs(fast_first_zero - prob_first_zero) / double(runs) <
        5 * se);
}

TEST_CASE("residual greedy") {
  SUBCASE("modular instance always lands on the optimum") {
    auto f = make_modular({3, 1, 2, 5});
    const PartitionMatroid m = two_group_matroid();
    int first_zero = 0;
    const int runs = 2000;
    for (int i = 0; i < runs; ++i) {
      Rng rng(Rng::derive_seed(15, 0, static_cast<std::uint64_t>(i)));
      const RunResult r = residual_greedy(m, *f, rng);
      CHECK(r.objective == 8.0);
      CHECK(r.solution == std::vector<ElementId>{0, 3});
      CHECK(r.queries <= static_cast<long long>(m.num_elements()) *
                             m.total_budget());
      if (r.trace[0].element == 0) ++first_zero;
    }
    // The step-1 base is {0, 3}; each is picked with probability 1/2.
    CHECK(std::abs(first_zero / double(runs) - 0.5) < 0.045);
  }

  SUBCASE("budgets equal to group sizes fill everything") {
    auto f = make_modular({3, 1, 2, 5});
    const PartitionMatroid m({{0, 1}, {2, 3}}, {2, 2});
    Rng rng(4);
    const RunResult r = residual_greedy(m, *f, rng);
    CHECK(r.solution == std::vector<ElementId>{0, 1, 2, 3});
  }

  SUBCASE("single group with budget 1 equals greedy") {
    auto f = make_modular({2, 9, 4});
    const PartitionMatroid m({{0, 1, 2}}, {1});
    Rng rng(8);
    const RunResult r = residual_greedy(m, *f, rng);
    const RunResult g = greedy(m, *f);
    CHECK(r.solution == g.solution);
    CHECK(r.objective == g.objective);
  }
}

TEST_CASE("brute force") {
  SUBCASE("modular and coverage instances") {
    auto fm = make_modular({3, 1, 2, 5});
    const PartitionMatroid m = two_group_matroid();
    const RunResult r = brute_force(m, *fm);
    CHECK(r.solution == std::vector<ElementId>{0, 3});
    CHECK(r.objective == 8.0);
    CHECK(r.queries == 4);  // all maximal sets

    auto fc = make_coverage({{0, 1}, {1, 2}, {2, 3}, {3}});
    CHECK(brute_force(m, *fc).objective == 4.0);
  }

  SUBCASE("value ties break to the lexicographically smallest set") {
    auto f = make_modular({1, 1});
    const PartitionMatroid m({{0, 1}}, {1});
    CHECK(brute_force(m, *f).solution == std::vector<ElementId>{0});
  }

  SUBCASE("cardinality squared only depends on |S|") {
    auto f = make_cardinality_squared();
    Rng rng(19);
    for (int t = 0; t < 10; ++t) {
      Rng local = rng.split(static_cast<std::uint64_t>(t));
      const PartitionMatroid m = testsupport::random_matroid(local, 8, 3);
      const double b = m.total_budget();
      CHECK(brute_force(m, *f).objective == b * b);
    }
  }

  SUBCASE("enumeration cap") {
    auto f = make_modular({1, 2, 3, 4});
    const PartitionMatroid m({{0, 1, 2, 3}}, {2});
    CHECK_THROWS_AS(brute_force(m, *f, 5), Error);
    CHECK_NOTHROW(brute_force(m, *f, 6));
  }
}

TEST_CASE("randomized algorithms are deterministic given the seed") {
  auto f = make_coverage({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  const PartitionMatroid m({{0, 1, 2}, {3, 4}}, {2, 1});
  for (std::uint64_t seed : {1ull, 77ull}) {
    Rng a1(seed), a2(seed);
    const RunResult p1 = prob(m, *f, 0.4, 0.6, a1);
    const RunResult p2 = prob(m, *f, 0.4, 0.6, a2);
    CHECK(p1.solution == p2.solution);
    CHECK(p1.queries == p2.queries);

    Rng b1(seed), b2(seed);
    const RunResult f1 = fast_prob(m, *f, 0.4, 0.6, 0.3, b1);
    const RunResult f2 = fast_prob(m, *f, 0.4, 0.6, 0.3, b2);
    CHECK(f1.solution == f2.solution);
    CHECK(f1.queries == f2.queries);

    Rng c1(seed), c2(seed);
    CHECK(residual_greedy(m, *f, c1).solution ==
          residual_greedy(m, *f, c2).solution);
  }
}

TEST_CASE("feasibility, maximality and query audits on random instances") {
  Rng rng(1234);
  const double delta = 0.001;
  for (int trial = 0; trial < 40; ++trial) {
    Rng local = rng.split(static_cast<std::uint64_t>(trial));
    const int n = 4 + static_cast<int>(local.next_below(7));
    const PartitionMatroid m = testsupport::random_matroid(local, n, 3);
    const auto family = static_cast<OracleFamily>(local.next_below(3));
    auto f = testsupport::random_oracle(family, n, local);

    const long long nb =
        static_cast<long long>(m.num_elements()) * m.total_budget();

    const RunResult rg = greedy(m, *f);
    CHECK(m.is_maximal(rg.solution));
    CHECK(rg.queries <= nb);
    // Full-scan greedy queries are exactly sum over steps of (n - t).
    long long expect = 0;
    for (int t = 0; t < m.total_budget(); ++t) expect += m.num_elements() - t;
    CHECK(rg.queries == expect);
    CHECK(static_cast<int>(rg.trace.size()) == m.total_budget());

    const RunResult rt = threshold_greedy(m, *f, 0.5);
    CHECK(m.is_feasible(rt.solution));
    CHECK(rt.rounds <= testsupport::threshold_round_bound(0.5, m.total_budget()));
    CHECK(rt.queries <=
          static_cast<long long>(m.num_elements()) * (rt.rounds + 1));

    Rng r1 = local.split(1);
    const RunResult rp = prob(m, *f, 0.5, 0.5, r1);
    CHECK(m.is_maximal(rp.solution));
    CHECK(rp.queries <= testsupport::sum_group_size_times_budget(m));

    Rng r2 = local.split(2);
    const RunResult rf = fast_prob(m, *f, 0.5, 0.5, delta, r2);
    CHECK(m.is_maximal(rf.solution));
    // Reconstruct the exact pool-size sum from the trace's group sequence.
    std::vector<int> taken(static_cast<size_t>(m.num_groups()), 0);
    long long pool_sum = 0;
    for (const TraceStep& step : rf.trace) {
      pool_sum += sampled_pool_size(m.group_size(step.group),
                                    taken[static_cast<size_t>(step.group)],
                                    m.budget(step.group), m.total_budget(),
                                    delta);
      ++taken[static_cast<size_t>(step.group)];
    }
    CHECK(rf.queries == pool_sum);

    Rng r3 = local.split(3);
    const RunResult rr = residual_greedy(m, *f, r3);
    CHECK(m.is_maximal(rr.solution));
    CHECK(rr.queries <= nb);

    const RunResult rb = brute_force(m, *f);
    CHECK(rb.objective >= rg.objective - 1e-9);
    CHECK(rb.objective >= rt.objective - 1e-9);
    CHECK(rb.objective >= rp.objective - 1e-9);
  }
}
