#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bider/calculus.hpp"
#include "bider/errors.hpp"
#include "bider/integrators.hpp"
#include "bider/models.hpp"
#include "bider/signal.hpp"

#include "helpers.hpp"

using namespace bider;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("lag lowering fixes eps = 1/T and rate = K*u/T", "[models]") {
    const generic_biased g = to_biased(first_order_lag_biased(1.0, 2.0));
    REQUIRE(g.channels == std::vector<std::string>{"y"});
    CHECK(bias_at_state(g.biases[0], 123.0) == 0.5);
    const std::vector<double> state{0.0};
    CHECK_THAT(g.rate(0.0, state, 1.0)[0], WithinRel(0.5, 1e-15));

    SECTION("zero gain decays to zero") {
        const trajectory traj =
            simulate_biased(first_order_lag_biased(0.0, 1.0), step_signal{1.0, 0.0},
                            make_grid(0.0, 1e-2, 1001), std::vector<double>{3.0});
        CHECK(std::abs(traj.at(0, 1000)) < 3.0 * std::exp(-9.0));
    }
}

TEST_CASE("named and lowered model forms simulate identically", "[models]") {
    const time_grid grid = make_grid(0.0, 1e-3, 1001);
    const trajectory named = simulate_biased(first_order_lag{2.0, 3.0}, step_signal{1.0, 0.0},
                                             grid, std::vector<double>{0.0});
    const trajectory lowered = simulate_biased(first_order_lag_biased(2.0, 3.0),
                                               step_signal{1.0, 0.0}, grid, std::vector<double>{0.0});
    for (std::size_t i = 0; i < named.size(); i += 100)
        CHECK(named.at(0, i) == lowered.at(0, i));
}

TEST_CASE("step response closed form", "[models]") {
    CHECK(first_order_step_response(5.0, 2.0, 0.0) == 0.0);
    CHECK_THAT(first_order_step_response(1.0, 1.0, 60.0), WithinRel(1.0, 1e-12));
    CHECK_THAT(first_order_step_response(2.0, 3.0, 3.0), WithinRel(1.2642411176571153, 1e-12));
    CHECK_THROWS_AS(first_order_step_response(1.0, 1.0, -0.1), validation_error);
    CHECK_THROWS_AS(first_order_step_response(1.0, 0.0, 1.0), validation_error);

    SECTION("the biased simulation lands on it") {
        const trajectory traj =
            simulate_biased(first_order_lag{2.0, 3.0}, step_signal{1.0, 0.0},
                            make_grid(0.0, 1e-3, 3001), std::vector<double>{0.0});
        CHECK_THAT(traj.at(0, 3000), WithinAbs(1.2642411176571153, 1e-3));
    }
}

TEST_CASE("logistic lowering satisfies the algebraic identity", "[models][property]") {
    // ordinary rhs plus eps*N collapses to -sigma*N^2/K for every N
    std::mt19937 gen(550077);
    std::uniform_real_distribution<double> pop(0.01, 20.0);
    const double sigma = 1.3, cap = 7.0;
    const generic_biased g = to_biased(logistic_biased(sigma, cap));

    for (int trial = 0; trial < 200; ++trial) {
        const double n = pop(gen);
        const double ordinary = sigma * n * (1.0 - n / cap);
        const double lifted = biased_from_ordinary(ordinary, n, bias_at_state(g.biases[0], n));
        const std::vector<double> state{n};
        const double rate = g.rate(0.0, state, 0.0)[0];
        CHECK(testutil::within_ulps(lifted, rate, 4, std::abs(ordinary) + std::abs(sigma * n)));
    }
}

TEST_CASE("predator-prey lowering satisfies the algebraic identity", "[models][property]") {
    const double e1 = 0.7, e2 = 1.1, g1 = 0.9, g2 = 1.4;
    const generic_biased g = to_biased(predator_prey_biased(e1, e2, g1, g2));
    REQUIRE(g.channels.size() == 2);

    std::mt19937 gen(660088);
    std::uniform_real_distribution<double> pop(0.01, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double n1 = pop(gen), n2 = pop(gen);
        const std::vector<double> state{n1, n2};
        const auto rate = g.rate(0.0, state, 0.0);

        const double ord1 = e1 * n1 - g1 * n1 * n2;
        const double lift1 = biased_from_ordinary(ord1, n1, bias_at_state(g.biases[0], n1));
        CHECK(testutil::within_ulps(lift1, rate[0], 4, std::abs(ord1) + e1 * n1));

        const double ord2 = -e2 * n2 + g2 * n1 * n2;
        const double lift2 = biased_from_ordinary(ord2, n2, bias_at_state(g.biases[1], n2));
        CHECK(testutil::within_ulps(lift2, rate[1], 4, std::abs(ord2) + e2 * n2));
    }
}

TEST_CASE("model parameter validation", "[models]") {
    CHECK_THROWS_AS(first_order_lag_biased(1.0, 0.0), validation_error);
    CHECK_THROWS_AS(first_order_lag_biased(1.0, -2.0), validation_error);
    CHECK_THROWS_AS(logistic_biased(1.0, 0.0), validation_error);
    CHECK_THROWS_AS(predator_prey_biased(1.0, 1.0, 0.0, 1.0), validation_error);
    CHECK_THROWS_AS(predator_prey_biased(-1.0, 1.0, 1.0, 1.0), validation_error);
    CHECK_THROWS_AS(dimension(model_spec{first_order_lag{1.0, std::nan("")}}), validation_error);

    SECTION("generic models need coherent shape") {
        generic_biased g;
        g.channels = {"a", "a"};
        g.biases = {zero_bias{}, zero_bias{}};
        g.rate = [](double, std::span<const double>, double) {
            return std::vector<double>{0.0, 0.0};
        };
        CHECK_THROWS_AS(to_biased(model_spec{g}), validation_error);
        g.channels = {"a", "b"};
        g.biases = {zero_bias{}};
        CHECK_THROWS_AS(to_biased(model_spec{g}), validation_error);
        g.biases = {zero_bias{}, zero_bias{}};
        g.rate = nullptr;
        CHECK_THROWS_AS(to_biased(model_spec{g}), validation_error);
    }
}

TEST_CASE("model dimensions", "[models]") {
    CHECK(dimension(first_order_lag{1, 1}) == 1);
    CHECK(dimension(logistic_model{1, 1}) == 1);
    CHECK(dimension(predator_prey{1, 1, 1, 1}) == 2);
    CHECK(dimension(predator_prey_biased(1, 1, 1, 1)) == 2);
}

TEST_CASE("conserved quantity of the coupled populations", "[models]") {
    SECTION("direct evaluation at (1,1) with unit factors") {
        CHECK_THAT(lotka_volterra_invariant(1, 1, 1, 1, 1.0, 1.0), WithinRel(2.0, 1e-15));
    }
    SECTION("the equilibrium is a strict local minimum") {
        const double e1 = 0.8, e2 = 1.2, g1 = 1.1, g2 = 0.7;
        const double n1 = e2 / g2, n2 = e1 / g1;
        const double at_eq = lotka_volterra_invariant(e1, e2, g1, g2, n1, n2);
        for (double d : {1e-3, -1e-3}) {
            CHECK(lotka_volterra_invariant(e1, e2, g1, g2, n1 + d, n2) > at_eq);
            CHECK(lotka_volterra_invariant(e1, e2, g1, g2, n1, n2 + d) > at_eq);
        }
    }
    SECTION("nonpositive populations are rejected") {
        CHECK_THROWS_AS(lotka_volterra_invariant(1, 1, 1, 1, 0.0, 1.0), validation_error);
        CHECK_THROWS_AS(lotka_volterra_invariant(1, 1, 1, 1, 1.0, -2.0), validation_error);
    }
    SECTION("the reference integrator conserves it to 1e-7 relative") {
        const trajectory orbit =
            simulate_reference(ordinary_system(predator_prey{1, 1, 1, 1}), constant_signal{0.0},
                               make_grid(0.0, 1e-3, 20001), std::vector<double>{2.0, 1.0});
        const double v0 = lotka_volterra_invariant(1, 1, 1, 1, 2.0, 1.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < orbit.size(); ++i) {
            const double v = lotka_volterra_invariant(1, 1, 1, 1, orbit.at(0, i), orbit.at(1, i));
            worst = std::max(worst, std::abs(v - v0) / v0);
        }
        CHECK(worst < 1e-7);
    }
    SECTION("the orbit returns near its start") {
        const trajectory orbit =
            simulate_reference(ordinary_system(predator_prey{1, 1, 1, 1}), constant_signal{0.0},
                               make_grid(0.0, 1e-3, 20001), std::vector<double>{2.0, 1.0});
        double best = 1e9;
        for (std::size_t i = 3000; i < orbit.size(); ++i) {
            const double d = std::hypot(orbit.at(0, i) - 2.0, orbit.at(1, i) - 1.0);
            best = std::min(best, d);
        }
        CHECK(best < 1e-3);
    }
}

TEST_CASE("biased and ordinary forms agree within the first-order envelope", "[models][property]") {
    const double dt = 1e-3;

    SECTION("first-order lag (L = 0.05)") {
        const time_grid grid = make_grid(0.0, dt, 5001);
        const model_spec model = first_order_lag_biased(1.0, 1.0);
        const trajectory biased =
            simulate_biased(model, step_signal{1.0, 0.0}, grid, std::vector<double>{0.0});
        const trajectory reference = simulate_reference(ordinary_system(model), step_signal{1.0, 0.0},
                                                        grid, std::vector<double>{0.0});
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.n; ++i)
            worst = std::max(worst, std::abs(biased.at(0, i) - reference.at(0, i)));
        CHECK(worst <= 10.0 * dt * 0.05);
    }

    SECTION("logistic (L = 0.3)") {
        const time_grid grid = make_grid(0.0, dt, 10001);
        const model_spec model = logistic_biased(1.0, 10.0);
        const trajectory biased =
            simulate_biased(model, constant_signal{0.0}, grid, std::vector<double>{1.0});
        const trajectory reference = simulate_reference(ordinary_system(model), constant_signal{0.0},
                                                        grid, std::vector<double>{1.0});
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.n; ++i)
            worst = std::max(worst, std::abs(biased.at(0, i) - reference.at(0, i)));
        CHECK(worst <= 10.0 * dt * 0.3);
    }

    SECTION("predator-prey (L = 4)") {
        const time_grid grid = make_grid(0.0, dt, 20001);
        const model_spec model = predator_prey_biased(1, 1, 1, 1);
        const trajectory biased =
            simulate_biased(model, constant_signal{0.0}, grid, std::vector<double>{2.0, 1.0});
        const trajectory reference = simulate_reference(ordinary_system(model), constant_signal{0.0},
                                                        grid, std::vector<double>{2.0, 1.0});
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.n; ++i)
            worst = std::max({worst, std::abs(biased.at(0, i) - reference.at(0, i)),
                              std::abs(biased.at(1, i) - reference.at(1, i))});
        CHECK(worst <= 10.0 * dt * 4.0);
    }
}

TEST_CASE("logistic growth is monotone below capacity", "[models][property]") {
    std::mt19937 gen(112358);
    std::uniform_real_distribution<double> growth(0.2, 2.0);
    std::uniform_real_distribution<double> capacity(1.0, 20.0);
    std::uniform_real_distribution<double> fraction(0.05, 0.95);

    for (int trial = 0; trial < 20; ++trial) {
        const double sigma = growth(gen);
        const double cap = capacity(gen);
        const double n0 = fraction(gen) * cap;
        const trajectory traj = simulate_biased(logistic_model{sigma, cap}, constant_signal{0.0},
                                                make_grid(0.0, 1e-3, 5001), std::vector<double>{n0});
        bool increasing = true;
        bool bounded = true;
        for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
            increasing = increasing && traj.at(0, i + 1) > traj.at(0, i);
            bounded = bounded && traj.at(0, i) < cap;
        }
        CHECK(increasing);
        CHECK(bounded);
    }
}

TEST_CASE("populations remain positive over the default horizon", "[models][property]") {
    const trajectory traj =
        simulate_biased(predator_prey_biased(1, 1, 1, 1), constant_signal{0.0},
                        make_grid(0.0, 1e-3, 20001), std::vector<double>{2.0, 1.0});
    bool positive = true;
    for (std::size_t i = 0; i < traj.size(); ++i)
        positive = positive && traj.at(0, i) > 0.0 && traj.at(1, i) > 0.0;
    CHECK(positive);
}
