#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fwb/experiments.hpp"
#include "fwb/random_families.hpp"
#include "report_io.hpp"

namespace fwb {
namespace {

using nlohmann::json;

struct Suite {
  std::vector<PropertyOutcome> outcomes;

  void add(std::string name, bool pass, double measured, double threshold,
           std::string detail = {}) {
    outcomes.push_back({std::move(name), pass, measured, threshold, std::move(detail)});
  }
};

double max_coeff_diff(const PeriodicFunction& a, const PeriodicFunction& b) {
  double m = 0.0;
  for (size_t k = 0; k < a.raw().size(); ++k) m = std::max(m, std::abs(a.raw()[k] - b.raw()[k]));
  return m;
}

std::string fmt3(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

void check_partition_of_unity(Suite& suite) {
  double worst = 0.0;
  for (int j = 0; j <= 2048; ++j) {
    double sum = 0.0;
    for (int q = -1; q <= 12; ++q) sum += phi_eval(q, static_cast<double>(j));
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  suite.add("partition_of_unity", worst <= 1e-14, worst, 1e-14);
}

void check_reconstruction(Suite& suite, std::uint64_t seed) {
  const GridSpec grid(256);
  const int q_top = standard_partition().q_max(grid.size() / 2);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const PeriodicFunction f = random_bandlimited(grid, 80, derive_seed(seed, 100 + trial));
    PeriodicFunction sum(grid);
    for (int q = -1; q <= q_top; ++q) sum = sum + dyadic_block(f, q);
    worst = std::max(worst, max_coeff_diff(sum, f) / f.max_abs_coeff());
  }
  suite.add("reconstruction", worst <= 1e-12, worst, 1e-12);
}

void check_interpolation(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(256);
  const double s1 = config.s;
  const double s2 = config.gamma;
  int violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PeriodicFunction f = random_bandlimited(grid, 64, derive_seed(config.seed, 200 + trial));
    const double n1 = besov_norm(f, {s1, config.p, config.r});
    const double n2 = besov_norm(f, {s2, config.p, config.r});
    for (double theta : {0.25, 0.5, 0.75}) {
      const double mid = besov_norm(f, {theta * s1 + (1.0 - theta) * s2, config.p, config.r});
      const double rhs = std::pow(n1, theta) * std::pow(n2, 1.0 - theta);
      const double excess = (mid - rhs) / rhs;
      worst = std::max(worst, excess);
      if (excess > 1e-10) ++violations;
    }
  }
  suite.add("interpolation_inequality", violations == 0, worst, 1e-10,
            std::to_string(violations) + "/100 trials violated");
}

void check_embedding(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(256);
  GaussianStream pick(derive_seed(config.seed, 300));
  int violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PeriodicFunction f = random_bandlimited(grid, 64, derive_seed(config.seed, 301 + trial));
    const double s1 = 2.0 * std::tanh(pick.next()) + 2.0;            // in (0, 4)
    const double s2 = s1 - 1.5 * (1.0 + std::tanh(pick.next()));     // below s1
    const double lhs = besov_norm(f, {s2, config.p, config.r});
    const double rhs = std::exp2(s1 - s2) * besov_norm(f, {s1, config.p, config.r});
    const double excess = lhs / rhs - 1.0;
    worst = std::max(worst, excess);
    if (excess > 1e-12) ++violations;
  }
  suite.add("embedding", violations == 0, worst, 1e-12,
            std::to_string(violations) + "/100 trials violated");
}

// Least-squares fit of ||fg|| = K ||f|| ||g|| through the origin; with
// unit-normalized factors this is the family mean, which concentrates where
// a max over draws would not.
double fitted_algebra_constant(const ExperimentConfig& config, std::uint64_t stream) {
  const GridSpec grid(256);
  const BesovIndex idx = config.index();
  const int max_mode = grid.size() / 6;
  const int trials = 400;
  double sum = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const PeriodicFunction f =
        random_unit_besov(grid, max_mode, idx, derive_seed(stream, 2 * trial), 2.0);
    const PeriodicFunction g =
        random_unit_besov(grid, max_mode, idx, derive_seed(stream, 2 * trial + 1), 2.0);
    sum += besov_norm(multiply(f, g), idx);
  }
  return sum / trials;
}

void check_algebra_stability(Suite& suite, const ExperimentConfig& config) {
  const double k1 = fitted_algebra_constant(config, derive_seed(config.seed, 400));
  const double k2 = fitted_algebra_constant(config, derive_seed(config.seed, 500));
  const double rel = std::abs(k1 - k2) / (0.5 * (k1 + k2));
  suite.add("algebra_constant_stability", rel <= 0.10, rel, 0.10,
            "K = " + fmt3(k1) + " vs " + fmt3(k2));
}

void check_sobolev_equivalence(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(256);
  const double s = config.s;
  const int limit = grid.dealias_limit();
  const DyadicPartition& part = standard_partition();
  const int q_top = part.q_max(limit);

  // per-mode ratio of the squared block weight to (1 + j^2)^s fixes the
  // equivalence interval once chi is chosen
  double c1 = kInf, c2 = 0.0;
  for (int j = 0; j <= limit; ++j) {
    double w = 0.0;
    for (int q = -1; q <= q_top; ++q) {
      const double ph = part.phi(q, static_cast<double>(j));
      w += std::exp2(2.0 * s * q) * ph * ph;
    }
    const double ratio = std::sqrt(w / std::pow(1.0 + static_cast<double>(j) * j, s));
    c1 = std::min(c1, ratio);
    c2 = std::max(c2, ratio);
  }

  int violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PeriodicFunction f = random_bandlimited(grid, limit, derive_seed(config.seed, 600 + trial));
    double sob = 0.0;
    for (int j = -limit; j <= limit; ++j) {
      sob += std::pow(1.0 + static_cast<double>(j) * j, s) * std::norm(f.coeff(j));
    }
    sob = std::sqrt(2.0 * std::numbers::pi * sob);
    const double ratio = besov_norm(f, {s, 2.0, 2.0}) / sob;
    const double excursion = std::max(c1 - ratio, ratio - c2) / c2;
    worst = std::max(worst, excursion);
    if (excursion > 1e-12) ++violations;
  }
  suite.add("sobolev_equivalence", violations == 0, worst, 1e-12,
            "interval [" + fmt3(c1) + ", " + fmt3(c2) + "]");
}

void check_phase_invariance(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(256);
  double worst = 0.0;
  for (int n : {5, 17}) {
    for (double p : {2.0, 4.0}) {
      for (double r : {1.0, 2.0, kInf}) {
        const BesovIndex idx{config.s, p, r};
        const double base = besov_norm(from_terms({TrigTerm::sin(1.0, n)}, grid), idx);
        for (double a : {0.3, 1.234, 4.0}) {
          const double shifted =
              besov_norm(from_terms({TrigTerm::sin(1.0, n, a)}, grid), idx);
          worst = std::max(worst, std::abs(shifted - base) / base);
        }
      }
    }
  }
  suite.add("phase_invariance", worst <= 1e-10, worst, 1e-10);
}

void check_block_commutation(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(128);
  const PeriodicFunction f = random_bandlimited(grid, 40, derive_seed(config.seed, 700));
  const Multiplier m = Multiplier::inverse_helmholtz_dx();
  const int q_top = standard_partition().q_max(grid.size() / 2);
  double worst = 0.0;
  for (int q = -1; q <= q_top; ++q) {
    const PeriodicFunction a = dyadic_block(apply_multiplier(f, m), q);
    const PeriodicFunction b = apply_multiplier(dyadic_block(f, q), m);
    worst = std::max(worst, max_coeff_diff(a, b) / f.max_abs_coeff());
  }
  suite.add("block_commutation", worst <= 1e-14, worst, 1e-14);
}

void check_multiplier_realness(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(128);
  const PeriodicFunction f = random_bandlimited(grid, 40, derive_seed(config.seed, 800));
  const PeriodicFunction g = apply_multiplier(f, Multiplier::inverse_helmholtz_dx());
  double imag = 0.0, real = 0.0;
  for (const std::complex<double>& v : synthesize_complex(g)) {
    imag = std::max(imag, std::abs(v.imag()));
    real = std::max(real, std::abs(v.real()));
  }
  const double residue = imag / std::max(1.0, real);
  suite.add("multiplier_realness", residue <= 1e-13, residue, 1e-13);
}

void check_operator_kappa(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(256);
  const BesovIndex to = config.index();
  const BesovIndex from = to.lowered();
  const Multiplier m = Multiplier::inverse_helmholtz_dx();
  const double k1 = operator_ratio(m, from, to, 200, grid, derive_seed(config.seed, 900));
  const double k2 = operator_ratio(m, from, to, 200, grid, derive_seed(config.seed, 901));
  const double kappa = std::max(k1, k2);
  const double rel = std::abs(k1 - k2) / (0.5 * (k1 + k2));
  suite.add("operator_kappa_bound", kappa <= 10.0, kappa, 10.0,
            "empirical kappa for Lambda^{-1} d_x");
  suite.add("operator_kappa_stability", rel <= 0.10, rel, 0.10,
            "kappa = " + fmt3(k1) + " vs " + fmt3(k2));
}

void check_solver_invariants(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(512);
  SolverConfig sc{grid};
  sc.dt = 1e-3;
  sc.t_end = 1.0;
  sc.sample_times = {0.25, 0.5, 0.75, 1.0};
  sc.guard_index = config.index();

  double drift = 0.0;
  double excess = -kInf;
  bool aborted = false;
  for (int omega : {+1, -1}) {
    const SequenceParams params{omega, 16, config.s};
    const State s0 = initial_state(params, grid);
    const double pn0 = pair_norm(s0.u, s0.rho, config.index());
    const Trajectory traj = solve(s0, sc);
    if (traj.status != SolveStatus::completed) {
      aborted = true;
      continue;
    }
    for (const auto& [t, st] : traj.samples) {
      drift = std::max({drift, std::abs((st.u.coeff(0) - s0.u.coeff(0)).real()),
                        std::abs((st.rho.coeff(0) - s0.rho.coeff(0)).real())});
      excess = std::max(excess, pair_norm(st.u, st.rho, config.index()) - 2.0 * pn0);
    }
  }
  suite.add("mean_conservation", !aborted && drift <= 1e-10, drift, 1e-10,
            aborted ? "blow-up abort" : "");
  suite.add("solution_size_bound", !aborted && excess <= 1e-6, excess, 1e-6,
            aborted ? "blow-up abort" : "max ||(u,rho)(t)|| - 2||initial||");
}

void check_rk4_order(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(64);
  const State s0{from_terms({TrigTerm::sin(0.6, 1)}, grid),
                 from_terms({TrigTerm::cos(1.0, 0), TrigTerm::cos(0.4, 1)}, grid)};
  auto run = [&](double dt) {
    SolverConfig sc{grid};
    sc.dt = dt;
    sc.t_end = 0.4;
    sc.sample_times = {0.4};
    sc.guard_index = config.index();
    return solve(s0, sc).samples.front().second;
  };
  const State ref = run(0.4 / 640.0);
  const State c1 = run(0.4 / 16.0);
  const State c2 = run(0.4 / 32.0);
  const double e1 = pair_norm(c1.u - ref.u, c1.rho - ref.rho, config.index());
  const double e2 = pair_norm(c2.u - ref.u, c2.rho - ref.rho, config.index());
  const double order = std::log2(e1 / e2);
  suite.add("rk4_order", std::abs(order - 4.0) <= 0.2, order, 0.2,
            "observed order, threshold is |order - 4|");
}

void check_transport_reversal(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(128);
  SolverConfig sc{grid};
  sc.dt = 1e-3;
  sc.t_end = 0.5;
  sc.sample_times = {0.5};
  sc.guard_index = config.index();

  const PeriodicFunction f0 = from_terms({TrigTerm::cos(1.0, 2)}, grid);
  const PeriodicFunction v = from_terms({TrigTerm::sin(1.0, 1)}, grid);
  const TimeField vel = [&v](double) { return v; };
  const TimeField neg_vel = [&v](double) { return -v; };
  const TimeField zero = zero_field(grid);

  const PeriodicFunction fwd = solve_linear_transport(vel, zero, f0, sc).samples.front().second;
  const PeriodicFunction back =
      solve_linear_transport(neg_vel, zero, fwd, sc).samples.front().second;

  const std::vector<double> got = synthesize(back);
  const std::vector<double> want = synthesize(f0);
  double worst = 0.0;
  for (size_t k = 0; k < got.size(); ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
  suite.add("transport_reversal", worst <= 1e-6, worst, 1e-6);
}

void check_transport_estimate(Suite& suite, const ExperimentConfig& config) {
  const GridSpec grid(256);
  const BesovIndex idx = config.index();
  SolverConfig sc{grid};
  sc.dt = 1e-3;
  sc.t_end = 2.0;
  sc.sample_times = {1.0, 2.0};
  sc.guard_index = idx;
  // norm growth along compressive transport is the phenomenon under test
  sc.blowup_factor = 1e9;

  GaussianStream draws(derive_seed(config.seed, 1100));
  std::vector<double> fitted;
  std::ostringstream detail;
  for (int member = 0; member < 5; ++member) {
    const double amp = 1.2 + 0.2 * std::tanh(draws.next());
    const double vphase = std::numbers::pi * (1.0 + std::tanh(draws.next()));
    const double fphase = std::numbers::pi * (1.0 + std::tanh(draws.next()));
    const PeriodicFunction v = from_terms({TrigTerm::sin(amp, 1, vphase)}, grid);
    const PeriodicFunction f0 = from_terms({TrigTerm::sin(1.0, 2, fphase)}, grid);

    const double v_rate = besov_norm(derivative(v), idx.lowered());
    const double f0_norm = besov_norm(f0, idx);
    const ScalarTrajectory traj =
        solve_linear_transport([&v](double) { return v; }, zero_field(grid), f0, sc);
    double c_member = 0.0;
    for (const auto& [t, ft] : traj.samples) {
      c_member = std::max(c_member, std::log(besov_norm(ft, idx) / f0_norm) / (v_rate * t));
    }
    fitted.push_back(c_member);
    detail << (member > 0 ? " " : "") << fmt3(c_member);
  }
  const double mean =
      std::accumulate(fitted.begin(), fitted.end(), 0.0) / static_cast<double>(fitted.size());
  double rel = 0.0;
  for (double c : fitted) rel = std::max(rel, std::abs(c - mean) / mean);
  suite.add("transport_estimate_stability", rel <= 0.20, rel, 0.20,
            "fitted C: " + detail.str());
}

void check_solve_self_convergence(Suite& suite, const ExperimentConfig& config) {
  auto final_norm = [&](int n_grid, double dt) {
    const GridSpec grid(n_grid);
    SolverConfig sc{grid};
    sc.dt = dt;
    sc.t_end = 1.0;
    sc.sample_times = {1.0};
    sc.guard_index = config.index();
    const State s0 = initial_state({+1, 16, config.s}, grid);
    const State s1 = solve(s0, sc).samples.front().second;
    return pair_norm(s1.u, s1.rho, config.index());
  };
  const double coarse = final_norm(256, 2e-3);
  const double fine = final_norm(512, 1e-3);
  const double rel = std::abs(coarse - fine) / fine;
  suite.add("solve_self_convergence", rel < 1e-6, rel, 1e-6,
            "N 256 -> 512, dt halved");
}

}  // namespace

PropertiesReport run_properties(const ExperimentConfig& config) {
  config.validate();
  Suite suite;
  check_partition_of_unity(suite);
  check_reconstruction(suite, config.seed);
  check_interpolation(suite, config);
  check_embedding(suite, config);
  check_algebra_stability(suite, config);
  check_sobolev_equivalence(suite, config);
  check_phase_invariance(suite, config);
  check_block_commutation(suite, config);
  check_multiplier_realness(suite, config);
  check_operator_kappa(suite, config);
  check_solver_invariants(suite, config);
  check_rk4_order(suite, config);
  check_transport_reversal(suite, config);
  check_transport_estimate(suite, config);
  check_solve_self_convergence(suite, config);

  PropertiesReport rep;
  rep.outcomes = std::move(suite.outcomes);
  for (const PropertyOutcome& o : rep.outcomes) {
    if (!o.pass) rep.exit_code = kExitAssertionFailure;
  }

  std::ostringstream csv;
  csv << "property,pass,measured,threshold\n";
  for (const PropertyOutcome& o : rep.outcomes) {
    csv << o.name << ',' << (o.pass ? 1 : 0) << ',' << detail::fmt_double(o.measured) << ','
        << detail::fmt_double(o.threshold) << '\n';
  }
  detail::write_text(std::filesystem::path(config.out) / "properties.csv", csv.str());

  json body;
  body["experiment"] = "properties";
  body["csv"] = "properties.csv";
  json outcomes = json::array();
  for (const PropertyOutcome& o : rep.outcomes) {
    outcomes.push_back({{"property", o.name},
                        {"pass", o.pass},
                        {"measured", o.measured},
                        {"threshold", o.threshold},
                        {"detail", o.detail}});
  }
  body["outcomes"] = outcomes;
  body["exit_code"] = rep.exit_code;
  detail::write_report_json(config, std::move(body));
  return rep;
}

}  // namespace fwb
