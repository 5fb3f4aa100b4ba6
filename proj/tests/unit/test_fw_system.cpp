#include <doctest.h>

#include <cmath>
#include <complex>

#include "fwb/approx_sequences.hpp"
#include "fwb/fw_system.hpp"
#include "oracles.hpp"

using fwb::BesovIndex;
using fwb::GridSpec;
using fwb::PeriodicFunction;
using fwb::SolverConfig;
using fwb::State;
using fwb::TrigTerm;
using cplx = std::complex<double>;

namespace {

SolverConfig base_config(const GridSpec& grid) {
  SolverConfig sc{grid};
  sc.guard_index = {3.0, 2.0, 2.0};
  return sc;
}

}  // namespace

TEST_SUITE("fw_system") {

TEST_CASE("right-hand side on elementary states") {
  const GridSpec grid(64);
  SUBCASE("zero state is stationary") {
    const State z{PeriodicFunction(grid), PeriodicFunction(grid)};
    const State d = fwb::rhs(z);
    CHECK(d.u.max_abs_coeff() == 0.0);
    CHECK(d.rho.max_abs_coeff() == 0.0);
  }
  SUBCASE("u = 0, rho = sin x feeds only the nonlocal term") {
    const State s{PeriodicFunction(grid), fwb::from_terms({TrigTerm::sin(1.0, 1)}, grid)};
    const State d = fwb::rhs(s);
    const PeriodicFunction want = fwb::from_terms({TrigTerm::cos(0.5, 1)}, grid);
    CHECK(oracles::max_coeff_diff(d.u, want) < 1e-15);
    CHECK(d.rho.max_abs_coeff() == 0.0);
  }
  SUBCASE("constant states are fixed points") {
    const State s{fwb::from_terms({TrigTerm::cos(0.7, 0)}, grid),
                  fwb::from_terms({TrigTerm::cos(-0.2, 0)}, grid)};
    const State d = fwb::rhs(s);
    CHECK(d.u.max_abs_coeff() == 0.0);
    CHECK(d.rho.max_abs_coeff() == 0.0);
  }
}

TEST_CASE("rk4 against the exact linear-mode solution") {
  // Linearized problem u_t = Lambda^{-1} d_x (rho - u), rho_t = 0 from
  // (0, sin x): mode j obeys u_j' = m_j (rho_j - u_j) with m_j = ij/(1+j^2),
  // so u_j(t) = rho_j (1 - e^{-m_j t}).
  const GridSpec grid(32);
  const PeriodicFunction rho0 = fwb::from_terms({TrigTerm::sin(1.0, 1)}, grid);
  const State s0{PeriodicFunction(grid), rho0};
  const fwb::StateRhs linear = [](double, const State& y) {
    return State{fwb::inverse_helmholtz_dx(y.rho - y.u), PeriodicFunction(y.grid())};
  };
  auto exact_u1 = [&](double t) {
    const cplx m(0.0, 0.5);
    return rho0.coeff(1) * (1.0 - std::exp(-m * t));
  };

  SUBCASE("one step is fifth-order accurate") {
    const double dt = 0.01;
    const State s1 = fwb::rk4_step(0.0, s0, dt, linear);
    CHECK(std::abs(s1.u.coeff(1) - exact_u1(dt)) < 1e-12);
    CHECK(oracles::max_coeff_diff(s1.rho, rho0) == 0.0);
  }
  SUBCASE("hundred steps stay on the exact trajectory") {
    State s = s0;
    const double dt = 0.01;
    for (int i = 0; i < 100; ++i) s = fwb::rk4_step(i * dt, s, dt, linear);
    CHECK(std::abs(s.u.coeff(1) - exact_u1(1.0)) < 1e-9);
  }
  SUBCASE("dt must be positive") {
    CHECK_THROWS_AS(fwb::rk4_step(s0, 0.0), std::invalid_argument);
  }
}

TEST_CASE("halving dt cuts the error by about 16") {
  const GridSpec grid(64);
  const State s0{fwb::from_terms({TrigTerm::sin(0.6, 1)}, grid),
                 fwb::from_terms({TrigTerm::cos(1.0, 0), TrigTerm::cos(0.4, 1)}, grid)};
  auto advance = [&](double dt, double t_end) {
    State s = s0;
    const int steps = static_cast<int>(std::round(t_end / dt));
    for (int i = 0; i < steps; ++i) s = fwb::rk4_step(s, dt);
    return s;
  };
  const State ref = advance(1.0 / 1280.0, 0.4);
  const State a = advance(1.0 / 40.0, 0.4);
  const State b = advance(1.0 / 80.0, 0.4);
  const BesovIndex idx{3.0, 2.0, 2.0};
  const double ea = fwb::pair_norm(a.u - ref.u, a.rho - ref.rho, idx);
  const double eb = fwb::pair_norm(b.u - ref.u, b.rho - ref.rho, idx);
  const double ratio = ea / eb;
  CHECK(ratio > 13.9);  // 2^3.8
  CHECK(ratio < 18.4);  // 2^4.2
}

TEST_CASE("solve bookkeeping") {
  const GridSpec grid(64);
  SUBCASE("zero data gives the zero trajectory") {
    SolverConfig sc = base_config(grid);
    sc.dt = 0.05;
    sc.t_end = 0.5;
    sc.sample_times = {0.0, 0.25, 0.5};
    const fwb::Trajectory traj = fwb::solve({PeriodicFunction(grid), PeriodicFunction(grid)}, sc);
    CHECK(traj.status == fwb::SolveStatus::completed);
    REQUIRE(traj.samples.size() == 3);
    for (const auto& [t, st] : traj.samples) {
      CHECK(st.u.max_abs_coeff() == 0.0);
      CHECK(st.rho.max_abs_coeff() == 0.0);
    }
  }
  SUBCASE("constant data is a fixed point of the discrete flow") {
    SolverConfig sc = base_config(grid);
    sc.dt = 0.1;
    sc.t_end = 1.0;
    sc.sample_times = {1.0};
    const State s0{fwb::from_terms({TrigTerm::cos(0.3, 0)}, grid),
                   fwb::from_terms({TrigTerm::cos(0.9, 0)}, grid)};
    const fwb::Trajectory traj = fwb::solve(s0, sc);
    CHECK(oracles::max_coeff_diff(traj.samples.front().second.u, s0.u) == 0.0);
    CHECK(oracles::max_coeff_diff(traj.samples.front().second.rho, s0.rho) == 0.0);
  }
  SUBCASE("samples land exactly on requested times") {
    SolverConfig sc = base_config(grid);
    sc.dt = 0.2;
    sc.t_end = 1.0;
    sc.sample_times = {0.3, 0.7, 1.0};
    const State s0{fwb::from_terms({TrigTerm::sin(0.1, 1)}, grid), PeriodicFunction(grid)};
    const fwb::Trajectory traj = fwb::solve(s0, sc);
    REQUIRE(traj.samples.size() == 3);
    CHECK(traj.samples[0].first == 0.3);
    CHECK(traj.samples[1].first == 0.7);
    CHECK(traj.samples[2].first == 1.0);
  }
  SUBCASE("config validation") {
    SolverConfig sc = base_config(grid);
    sc.dt = -0.1;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc.dt = 0.1;
    sc.sample_times = {0.5, 0.25};
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc.sample_times = {0.25};
    sc.blowup_factor = 0.9;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SUBCASE("grid mismatch and rough data rejected") {
    SolverConfig sc = base_config(grid);
    sc.sample_times = {0.5};
    sc.t_end = 0.5;
    CHECK_THROWS_AS(
        fwb::solve({PeriodicFunction(GridSpec(32)), PeriodicFunction(GridSpec(32))}, sc),
        std::invalid_argument);
    // energy above N/3 trips the band-limit guard
    const State rough{fwb::from_terms({TrigTerm::sin(1.0, 30)}, grid), PeriodicFunction(grid)};
    CHECK_THROWS_AS(fwb::solve(rough, sc), fwb::ResolutionError);
  }
}

TEST_CASE("solution stays within twice its initial size on family data") {
  const GridSpec grid(512);
  const State s0 = fwb::initial_state({+1, 64, 3.0}, grid);
  const BesovIndex idx{3.0, 2.0, 2.0};
  const double pn0 = fwb::pair_norm(s0.u, s0.rho, idx);
  SolverConfig sc = base_config(grid);
  sc.dt = 2e-3;
  sc.t_end = 1.0;
  sc.sample_times = {0.25, 0.5, 0.75, 1.0};
  const fwb::Trajectory traj = fwb::solve(s0, sc);
  REQUIRE(traj.status == fwb::SolveStatus::completed);
  for (const auto& [t, st] : traj.samples) {
    CHECK(fwb::pair_norm(st.u, st.rho, idx) <= 2.0 * pn0 + 1e-6);
  }
}

TEST_CASE("mean modes are conserved") {
  const GridSpec grid(128);
  const State s0 = fwb::initial_state({-1, 8, 3.0}, grid);
  SolverConfig sc = base_config(grid);
  sc.dt = 1e-3;
  sc.t_end = 0.5;
  sc.sample_times = {0.5};
  const fwb::Trajectory traj = fwb::solve(s0, sc);
  const State& end = traj.samples.front().second;
  CHECK(std::abs((end.u.coeff(0) - s0.u.coeff(0)).real()) <= 1e-10);
  CHECK(std::abs((end.rho.coeff(0) - s0.rho.coeff(0)).real()) <= 1e-10);
}

TEST_CASE("blow-up guard aborts and truncates") {
  const GridSpec grid(128);
  const State s0{fwb::from_terms({TrigTerm::sin(2.0, 1)}, grid), PeriodicFunction(grid)};
  SolverConfig sc = base_config(grid);
  sc.dt = 1e-2;
  sc.t_end = 4.0;
  sc.sample_times = {0.5, 1.0, 2.0, 3.0, 4.0};
  sc.blowup_factor = 1.05;
  const fwb::Trajectory traj = fwb::solve(s0, sc);
  REQUIRE(traj.status == fwb::SolveStatus::aborted_blowup);
  CHECK(std::isfinite(traj.blowup_time));
  CHECK(traj.blowup_time > 0.0);
  for (const auto& [t, st] : traj.samples) {
    CHECK(t < traj.blowup_time);
    CHECK(st.is_finite());
  }
}

TEST_CASE("lifespan estimate") {
  const GridSpec grid(64);
  const BesovIndex idx{3.0, 2.0, 2.0};
  SUBCASE("formula and homogeneity") {
    const PeriodicFunction u0 = fwb::from_terms({TrigTerm::cos(0.4, 0)}, grid);
    const PeriodicFunction zero(grid);
    const double pn = fwb::pair_norm(u0, zero, idx);
    CHECK(fwb::lifespan_estimate(u0, zero, idx, 1.0) ==
          doctest::Approx(1.0 / (pn * pn)).epsilon(1e-14));
    // doubling the data quarters the lifespan
    CHECK(fwb::lifespan_estimate(2.0 * u0, zero, idx, 1.0) ==
          doctest::Approx(0.25 / (pn * pn)).epsilon(1e-12));
  }
  SUBCASE("zero data lives forever") {
    const PeriodicFunction zero(grid);
    CHECK(std::isinf(fwb::lifespan_estimate(zero, zero, idx, 3.0)));
  }
  SUBCASE("C validated") {
    const PeriodicFunction zero(grid);
    CHECK_THROWS_AS(fwb::lifespan_estimate(zero, zero, idx, 0.0), std::invalid_argument);
  }
}

TEST_CASE("linear transport") {
  const GridSpec grid(128);
  SUBCASE("no velocity, no forcing: frozen") {
    SolverConfig sc = base_config(grid);
    sc.dt = 0.05;
    sc.t_end = 1.0;
    sc.sample_times = {1.0};
    const PeriodicFunction f0 = fwb::from_terms({TrigTerm::sin(1.0, 3)}, grid);
    const auto traj =
        fwb::solve_linear_transport(fwb::zero_field(grid), fwb::zero_field(grid), f0, sc);
    CHECK(oracles::max_coeff_diff(traj.samples.front().second, f0) == 0.0);
  }
  SUBCASE("unit velocity translates the profile") {
    SolverConfig sc = base_config(grid);
    sc.dt = 1e-3;
    sc.t_end = 1.0;
    sc.sample_times = {1.0};
    const PeriodicFunction f0 = fwb::from_terms({TrigTerm::sin(1.0, 1)}, grid);
    const PeriodicFunction one = fwb::from_terms({TrigTerm::cos(1.0, 0)}, grid);
    const auto traj = fwb::solve_linear_transport([&one](double) { return one; },
                                                  fwb::zero_field(grid), f0, sc);
    const auto want = oracles::sample(grid, [](double x) { return std::sin(x - 1.0); });
    CHECK(oracles::max_abs_diff(fwb::synthesize(traj.samples.front().second), want) < 1e-6);
  }
  SUBCASE("constant forcing integrates exactly") {
    SolverConfig sc = base_config(grid);
    sc.dt = 0.125;
    sc.t_end = 1.0;
    sc.sample_times = {1.0};
    const PeriodicFunction f0 = fwb::from_terms({TrigTerm::sin(0.3, 2)}, grid);
    const PeriodicFunction force = fwb::from_terms({TrigTerm::cos(1.0, 1)}, grid);
    const auto traj = fwb::solve_linear_transport(
        fwb::zero_field(grid), [&force](double) { return force; }, f0, sc);
    const PeriodicFunction want = f0 + force;  // f(1) = f0 + 1 * F
    CHECK(oracles::max_coeff_diff(traj.samples.front().second, want) < 1e-13);
  }
  SUBCASE("forward then backward returns the data") {
    SolverConfig sc = base_config(grid);
    sc.dt = 1e-3;
    sc.t_end = 0.5;
    sc.sample_times = {0.5};
    const PeriodicFunction f0 = fwb::from_terms({TrigTerm::cos(1.0, 2)}, grid);
    const PeriodicFunction v = fwb::from_terms({TrigTerm::sin(1.0, 1)}, grid);
    const auto fwd = fwb::solve_linear_transport([&v](double) { return v; },
                                                 fwb::zero_field(grid), f0, sc);
    const auto back = fwb::solve_linear_transport(
        [&v](double) { return -v; }, fwb::zero_field(grid), fwd.samples.front().second, sc);
    CHECK(oracles::sup_diff(back.samples.front().second, f0) < 1e-6);
  }
  SUBCASE("null fields rejected") {
    SolverConfig sc = base_config(grid);
    const PeriodicFunction f0(grid);
    CHECK_THROWS_AS(fwb::solve_linear_transport(nullptr, fwb::zero_field(grid), f0, sc),
                    std::invalid_argument);
  }
}

}  // TEST_SUITE
