#include <doctest.h>

#include <cmath>
#include <random>

#include "netclock/improvement_model.hpp"
#include "netclock/likelihood.hpp"
#include "test_support.hpp"

using namespace netclock;
using testing_support::random_clock;
using testing_support::random_instance;
using testing_support::reference_improvement;
using testing_support::reference_node_scores;

namespace {

const ICParams kDefault{0.001, 0.1};
const NonActivationPolicy kPolicies[] = {NonActivationPolicy::none,
                                         NonActivationPolicy::contagious_only,
                                         NonActivationPolicy::full};

// Conditioned improvement straight from the definition: every activation
// gains max(0, LL_act(c) - ln p_e - prior).
double reference_conditioned(const Graph& g, const CascadeSet& cs, const Clock& clock,
                             const ICParams& p, const std::vector<double>& prior) {
  double total = 0.0;
  std::size_t idx = 0;
  for (const auto& x : cs.cascades()) {
    for (const auto& a : x.activations()) {
      std::size_t c = 0;
      for (const auto& b : x.activations()) {
        if (g.has_edge(b.node, a.node) && clock.remap(b.time) + 1 == clock.remap(a.time)) {
          ++c;
        }
      }
      const double gain = activation_loglik(c, p) - std::log(p.p_e);
      total += std::max(0.0, gain - prior[idx]);
      ++idx;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("model evaluation agrees with the reference likelihood") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 80; ++trial) {
    const auto inst = random_instance(rng);
    for (auto policy : kPolicies) {
      const ImprovementModel model(inst.graph, inst.cascades, kDefault, policy);
      for (int k = 0; k < 3; ++k) {
        const auto clock = random_clock(rng, inst.cascades.horizon());
        CHECK(std::abs(model.evaluate(clock) -
                       reference_improvement(inst.graph, inst.cascades, clock, kDefault,
                                             policy)) < 1e-9);
      }
      CHECK(std::abs(model.evaluate(clock_max(inst.cascades.horizon()))) < 1e-9);
    }
  }
}

TEST_CASE("swept deltas equal single-cut deltas and recomputation") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 80; ++trial) {
    const auto inst = random_instance(rng);
    const auto T = inst.cascades.horizon();
    for (auto policy : kPolicies) {
      const ImprovementModel model(inst.graph, inst.cascades, kDefault, policy);
      const auto clock = random_clock(rng, T, 0.3);
      const double base = model.evaluate(clock);
      const auto deltas = model.sweep_deltas(clock);
      std::size_t expected = 0;
      for (Timestamp t = 2; t <= T; ++t) {
        if (!clock.is_boundary(t)) {
          ++expected;
        }
      }
      // Every tick of a compressed timeline carries an activation.
      CHECK(deltas.size() == expected);
      for (const auto& d : deltas) {
        CHECK_FALSE(clock.is_boundary(d.position));
        const double direct = model.delta_for_cut(clock, d.position);
        const double recomputed = model.evaluate(clock.with_cut(d.position)) - base;
        CHECK(std::abs(d.delta - direct) < 1e-9);
        CHECK(std::abs(d.delta - recomputed) < 1e-9);
      }
    }
  }
}

TEST_CASE("conditioned model nets out the prior") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.0, 6.0);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = random_instance(rng);
    Condition cond;
    cond.prior.resize(inst.cascades.total_activations());
    for (auto& v : cond.prior) {
      v = trial % 3 == 0 ? 0.0 : u(rng);
    }
    const ImprovementModel model(inst.graph, inst.cascades, kDefault,
                                 NonActivationPolicy::full, &cond);
    CHECK(model.conditioned());
    const auto clock = random_clock(rng, inst.cascades.horizon());
    const double want = reference_conditioned(inst.graph, inst.cascades, clock, kDefault,
                                              cond.prior);
    CHECK(std::abs(model.evaluate(clock) - want) < 1e-9);
    const double base = model.evaluate(clock);
    for (const auto& d : model.sweep_deltas(clock)) {
      CHECK(std::abs(d.delta - (model.evaluate(clock.with_cut(d.position)) - base)) < 1e-9);
    }
  }
}

TEST_CASE("activation-only improvement is the sum of node scores") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = random_instance(rng);
    const ImprovementModel model(inst.graph, inst.cascades, kDefault, NonActivationPolicy::none);
    const auto clock = random_clock(rng, inst.cascades.horizon());
    double sum = 0.0;
    for (double s : reference_node_scores(inst.graph, inst.cascades, clock, kDefault)) {
      sum += s;
    }
    CHECK(std::abs(model.evaluate(clock) - sum) < 1e-9);
  }
}

TEST_CASE("interval constant vanishes at the horizon and without the full policy") {
  const auto inst = testing_support::chain_instance();
  const ImprovementModel full(inst.graph, inst.cascades, kDefault, NonActivationPolicy::full);
  const ImprovementModel some(inst.graph, inst.cascades, kDefault,
                              NonActivationPolicy::contagious_only);
  CHECK(full.interval_constant(3) == 0.0);
  CHECK(full.interval_constant(1) < 0.0);
  CHECK(some.interval_constant(1) == 0.0);
  // Two of the three nodes are still inactive after tick 1.
  CHECK(std::abs(full.interval_constant(1) - 2 * std::log(0.999)) < 1e-12);
}
