//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
// stochq: run the stochastic qubit models, the inequality evaluators, and
// the one-bit entanglement protocol from the command line.  All angles are
// radians and accept the symbolic forms "pi", "pi/3", "2pi/3", "-pi/4",
// "0.75pi" next to plain decimals.  Exit codes: 0 pass, 1 acceptance
// failure, 2 usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stochq/analytic.hpp"
#include "stochq/bell.hpp"
#include "stochq/inequalities.hpp"
#include "stochq/models.hpp"
#include "stochq/net.hpp"
#include "stochq/stats.hpp"

namespace {

using namespace stochq;
using nlohmann::ordered_json;

constexpr double kSigmaBand = 4.0;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Radians, with symbolic multiples of pi: "pi/3", "2pi/3", "-0.5pi", "1.2".
double parse_angle(std::string text) {
  std::erase_if(text, [](unsigned char c) { return std::isspace(c); });
  if (text.empty()) {
    throw UsageError("empty angle");
  }
  const auto pos = text.find("pi");
  try {
    if (pos == std::string::npos) {
      std::size_t used = 0;
      const double value = std::stod(text, &used);
      if (used != text.size()) {
        throw UsageError("trailing characters in angle '" + text + "'");
      }
      return value;
    }
    double coeff = 1.0;
    std::string head = text.substr(0, pos);
    if (!head.empty() && head.back() == '*') {
      head.pop_back();
    }
    if (head == "-") {
      coeff = -1.0;
    } else if (!head.empty()) {
      std::size_t used = 0;
      coeff = std::stod(head, &used);
      if (used != head.size()) {
        throw UsageError("bad coefficient in angle '" + text + "'");
      }
    }
    double divisor = 1.0;
    const std::string tail = text.substr(pos + 2);
    if (!tail.empty()) {
      if (tail[0] != '/') {
        throw UsageError("expected '/' after pi in '" + text + "'");
      }
      std::size_t used = 0;
      divisor = std::stod(tail.substr(1), &used);
      if (used != tail.size() - 1 || divisor == 0.0) {
        throw UsageError("bad divisor in angle '" + text + "'");
      }
    }
    return coeff * kPi / divisor;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("could not parse angle '" + text + "'");
  }
}

/// "theta,phi" spherical angles to a unit vector.
UnitVec3 parse_direction(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw UsageError("direction must be 'theta,phi', got '" + text + "'");
  }
  const double theta = parse_angle(text.substr(0, comma));
  const double phi = parse_angle(text.substr(comma + 1));
  return UnitVec3::from_spherical(theta, phi);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + path + "'");
  }
  out << content;
}

Rotation rabi(double theta) {
  return Rotation::axis_angle(UnitVec3::x_axis(), theta);
}

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// ---- transition ----------------------------------------------------------

int cmd_transition(int model, double theta, int s0, std::uint64_t samples,
                   std::uint64_t seed, const std::string& format,
                   const std::string& out) {
  models::TransitionConfig cfg;
  cfg.n = UnitVec3::z_axis();
  cfg.evolution = rabi(theta);
  cfg.s0 = s0;
  cfg.samples = samples;
  cfg.seed = seed;
  const auto report = models::run_transition(
      model == 1 ? models::Model::one : models::Model::two, cfg);

  if (format == "json") {
    write_output(out, models::transition_report_json(report) + "\n");
  } else {
    std::ostringstream os;
    os << "model,theta,s0,samples,seed,empirical_p,oracle_p,stderr,sigma_distance\n"
       << model << ',' << csv_number(theta) << ',' << s0 << ',' << samples << ','
       << seed << ',' << csv_number(report.empirical_p.mean) << ','
       << csv_number(report.oracle_p) << ','
       << csv_number(report.empirical_p.std_error) << ','
       << csv_number(report.sigma_distance) << '\n';
    write_output(out, os.str());
  }
  return report.sigma_distance <= kSigmaBand ? 0 : 1;
}

// ---- trajectory -----------------------------------------------------------

int cmd_trajectory(double theta_total, int grid_points, int s0, std::uint64_t seed,
                   const std::string& out) {
  models::TransitionConfig cfg;
  cfg.n = UnitVec3::z_axis();
  cfg.evolution = rabi(theta_total);
  cfg.s0 = s0;
  cfg.seed = seed;
  std::vector<double> grid;
  grid.reserve(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    grid.push_back(theta_total * i / (grid_points - 1));
  }
  // Unit angular velocity about x; full turns are resolved, unlike with
  // endpoint interpolation.
  const auto family = [](double t) { return rabi(t); };
  SeededRng rng(seed, 0);
  const auto trace = models::trace_trajectory(cfg, family, grid, rng);
  write_output(out, models::trajectory_csv(trace));
  return 0;
}

// ---- leggett-garg ---------------------------------------------------------

int cmd_leggett_garg(const std::vector<double>& thetas, std::uint64_t samples,
                     std::uint64_t seed, const std::string& out) {
  std::ostringstream os;
  os << "theta,k3_model1,k3_model2,k3_quantum,k3_model1_stderr,k3_model2_stderr\n";
  bool pass = true;
  std::uint64_t experiment = 0;
  const UnitVec3 n = UnitVec3::z_axis();
  for (const double theta : thetas) {
    const Rotation step = rabi(theta);
    const auto m1 = ineq::lg_k3(ineq::CorrelatorModel::model1, n, step, samples,
                                seed + 10 * experiment);
    const auto m2 = ineq::lg_k3(ineq::CorrelatorModel::model2, n, step, samples,
                                seed + 10 * experiment + 5);
    const auto q = ineq::lg_k3(ineq::CorrelatorModel::quantum_oracle, n, step, 0, 0);
    os << csv_number(theta) << ',' << csv_number(m1.k3) << ',' << csv_number(m2.k3)
       << ',' << csv_number(q.k3) << ',' << csv_number(m1.std_error) << ','
       << csv_number(m2.std_error) << '\n';
    // The noninvasive model must respect the bound; the invasive model must
    // track the quantum value.
    if (m1.k3 > 1.0 + kSigmaBand * m1.std_error) pass = false;
    if (std::abs(m2.k3 - q.k3) > kSigmaBand * m2.std_error && m2.std_error > 0.0) {
      pass = false;
    }
    ++experiment;
  }
  write_output(out, os.str());
  return pass ? 0 : 1;
}

// ---- bell -----------------------------------------------------------------

ordered_json direction_json(const UnitVec3& v) {
  return ordered_json::array({v.x(), v.y(), v.z()});
}

int cmd_bell(const std::string& variant_name, const UnitVec3& v0, const UnitVec3& v1,
             std::uint64_t rounds, std::uint64_t seed, const std::string& out,
             const std::string& round_log) {
  const bell::Variant variant =
      variant_name == "full" ? bell::Variant::full : bell::Variant::reduced;
  const auto counts = bell::run_protocol(variant, v0, v1, rounds, seed);

  if (!round_log.empty()) {
    std::ofstream log(round_log, std::ios::binary);
    if (!log) {
      throw std::runtime_error("cannot open round log '" + round_log + "'");
    }
    for (std::uint64_t k = 0; k < rounds; ++k) {
      bell::append_round_log(log, k, v0, v1, bell::play_round(variant, seed, k, v0, v1));
    }
  }

  ordered_json j;
  j["variant"] = variant_name;
  j["v0"] = direction_json(v0);
  j["v1"] = direction_json(v1);
  j["rounds"] = rounds;
  j["seed"] = seed;
  bool pass = true;
  ordered_json cells = ordered_json::object();
  for (const int s0 : {+1, -1}) {
    for (const int s1 : {+1, -1}) {
      const std::string key = std::string(s0 > 0 ? "+" : "-") + (s1 > 0 ? "+" : "-");
      const double oracle = analytic::pe(s0, s1, v0, v1);
      ordered_json cell;
      cell["count"] = counts.cell(s0, s1);
      if (rounds > 0) {
        const auto est = stats::binomial_estimate(counts.cell(s0, s1), rounds);
        const double sigma = stats::sigma_distance(est, oracle);
        cell["empirical_p"] = est.mean;
        cell["oracle_p"] = oracle;
        cell["stderr"] = est.std_error;
        cell["sigma_distance"] = sigma;
        if (sigma > kSigmaBand) pass = false;
      }
      cells[key] = cell;
    }
  }
  j["cells"] = cells;
  j["correlator"] = counts.correlator();
  j["oracle_correlator"] = v0.dot(v1);
  j["pass"] = pass;
  write_output(out, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

// ---- chsh -----------------------------------------------------------------

int cmd_chsh(double a, double a_prime, double b, double b_prime, std::uint64_t rounds,
             std::uint64_t seed, const std::string& out) {
  const auto axis = [](double alpha) { return UnitVec3::from_spherical(alpha, 0.0); };
  struct Pair {
    double alice;
    double bob;
  };
  const std::array<Pair, 4> pairs = {Pair{a, b}, Pair{a, b_prime}, Pair{a_prime, b},
                                     Pair{a_prime, b_prime}};
  std::array<ineq::CorrelatorEstimate, 4> estimates;
  double oracle_s = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const UnitVec3 vb = axis(pairs[i].bob);
    const UnitVec3 va = axis(pairs[i].alice);
    const auto counts =
        bell::run_protocol(bell::Variant::reduced, vb, va, rounds, seed + i);
    const auto p_same =
        stats::binomial_estimate(counts.cell(+1, +1) + counts.cell(-1, -1), rounds);
    estimates[i] = ineq::CorrelatorEstimate{2.0 * p_same.mean - 1.0,
                                            2.0 * p_same.std_error, rounds};
    const double sign = i == 3 ? -1.0 : 1.0;
    oracle_s += sign * vb.dot(va);
  }
  const auto s = ineq::chsh(estimates[0], estimates[1], estimates[2], estimates[3]);
  const double sigma = s.std_error > 0.0 ? std::abs(s.s - oracle_s) / s.std_error : 0.0;

  ordered_json j;
  j["angles"] = {{"a", a}, {"a_prime", a_prime}, {"b", b}, {"b_prime", b_prime}};
  j["rounds_per_pair"] = rounds;
  j["seed"] = seed;
  j["e_ab"] = estimates[0].mean;
  j["e_ab_prime"] = estimates[1].mean;
  j["e_a_prime_b"] = estimates[2].mean;
  j["e_a_prime_b_prime"] = estimates[3].mean;
  j["s"] = s.s;
  j["stderr"] = s.std_error;
  j["oracle_s"] = oracle_s;
  j["sigma_distance"] = sigma;
  j["classical_bound"] = 2.0;
  j["pass"] = sigma <= kSigmaBand;
  write_output(out, j.dump(2) + "\n");
  return sigma <= kSigmaBand ? 0 : 1;
}

// ---- networked harness ----------------------------------------------------

int cmd_serve(const std::string& who, const std::string& listen, bool once) {
  const auto ep = net::parse_endpoint(listen);
  net::TcpListener listener = net::TcpListener::bind(ep.host, ep.port);
  ordered_json hello;
  hello["service"] = who;
  hello["host"] = ep.host;
  hello["port"] = listener.port();
  std::cout << hello.dump() << std::endl;  // flushed: scripts scrape the port
  const int sessions = once ? 1 : -1;
  if (who == "bob") {
    net::bob_service(listener, sessions);
  } else {
    net::alice_service(listener, sessions);
  }
  return 0;
}

int cmd_referee(const std::string& bob, const std::string& alice, const UnitVec3& v0,
                const UnitVec3& v1, std::uint64_t rounds, std::uint64_t seed,
                const std::string& out) {
  const auto session = net::referee_session(net::parse_endpoint(bob),
                                            net::parse_endpoint(alice), v0, v1, rounds,
                                            seed, /*record_rounds=*/true);

  // The wire run must agree with the in-process protocol bit for bit.
  bool matches = session.round_log.size() == rounds;
  for (std::uint64_t k = 0; matches && k < rounds; ++k) {
    const auto o = bell::play_round(bell::Variant::reduced, seed, k, v0, v1);
    matches = session.round_log[k].r == o.r && session.round_log[k].s0 == o.s0 &&
              session.round_log[k].s1 == o.s1;
  }
  const bool byte_ok = session.bob_to_alice_payload_bytes == rounds;

  ordered_json j;
  j["rounds"] = rounds;
  j["seed"] = seed;
  j["v0"] = direction_json(v0);
  j["v1"] = direction_json(v1);
  j["cells"] = {{"++", session.counts.cell(+1, +1)},
                {"+-", session.counts.cell(+1, -1)},
                {"-+", session.counts.cell(-1, +1)},
                {"--", session.counts.cell(-1, -1)}};
  j["correlator"] = session.counts.correlator();
  j["oracle_correlator"] = v0.dot(v1);
  j["bob_to_alice_payload_bytes"] = session.bob_to_alice_payload_bytes;
  j["bits_per_round"] =
      rounds > 0
          ? 8.0 * static_cast<double>(session.bob_to_alice_payload_bytes) / rounds
          : 0.0;
  j["matches_in_process"] = matches;
  j["pass"] = matches && byte_ok;
  write_output(out, j.dump(2) + "\n");
  return (matches && byte_ok) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic qubit models, temporal/spatial inequality experiments, "
               "and a one-bit entanglement protocol"};
  app.require_subcommand(1);

  std::string theta_text = "pi/3";
  std::string out;
  std::string format = "json";
  std::string v0_text = "0,0";
  std::string v1_text = "pi/3,0";
  std::uint64_t samples = 1'000'000;
  std::uint64_t rounds = 1'000'000;
  std::uint64_t seed = 0;
  int model = 2;
  int s0 = +1;
  int grid_points = 200;

  auto* transition =
      app.add_subcommand("transition", "two-measurement transition vs oracle");
  transition->add_option("--model", model, "1 (noninvasive) or 2 (exact)")
      ->check(CLI::IsMember({1, 2}));
  transition->add_option("--theta", theta_text, "Rabi angle between measurements");
  transition->add_option("--s0", s0, "prepared outcome at t0")
      ->check(CLI::IsMember({-1, 1}));
  transition->add_option("--samples", samples, "Monte Carlo sample count");
  transition->add_option("--seed", seed, "RNG seed");
  transition->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  transition->add_option("--out", out, "output path (default stdout)");

  auto* trajectory =
      app.add_subcommand("trajectory", "single noise realization trace (CSV)");
  std::string theta_total_text = "4pi";
  trajectory->add_option("--theta", theta_total_text, "total drive angle");
  trajectory->add_option("--grid-points", grid_points, "grid resolution (>= 2)");
  trajectory->add_option("--s0", s0, "prepared outcome at t0")
      ->check(CLI::IsMember({-1, 1}));
  trajectory->add_option("--seed", seed, "RNG seed");
  trajectory->add_option("--out", out, "output path (default stdout)");

  auto* lg = app.add_subcommand("leggett-garg", "K3 curves for both models (CSV)");
  std::string thetas_text;
  int lg_grid = 20;
  lg->add_option("--thetas", thetas_text,
                 "comma-separated angles (default grid on [0, pi])");
  lg->add_option("--grid-points", lg_grid, "grid size when --thetas is absent");
  lg->add_option("--samples", samples, "samples per correlator");
  lg->add_option("--seed", seed, "RNG seed");
  lg->add_option("--out", out, "output path (default stdout)");

  auto* bell_cmd =
      app.add_subcommand("bell", "one-bit entanglement protocol, in process");
  std::string variant = "reduced";
  std::string round_log;
  bell_cmd->add_option("--variant", variant, "full or reduced")
      ->check(CLI::IsMember({"full", "reduced"}));
  bell_cmd->add_option("--v0", v0_text, "Bob setting 'theta,phi'");
  bell_cmd->add_option("--v1", v1_text, "Alice setting 'theta,phi'");
  bell_cmd->add_option("--rounds", rounds, "protocol rounds");
  bell_cmd->add_option("--seed", seed, "shared seed");
  bell_cmd->add_option("--out", out, "output path (default stdout)");
  bell_cmd->add_option("--round-log", round_log, "write per-round JSON lines here");

  auto* chsh_cmd = app.add_subcommand("chsh", "CHSH S value from protocol correlators");
  std::string a_text = "0", a_prime_text = "pi/2", b_text = "pi/4", b_prime_text = "-pi/4";
  chsh_cmd->add_option("--a", a_text, "Alice angle a");
  chsh_cmd->add_option("--a-prime", a_prime_text, "Alice angle a'");
  chsh_cmd->add_option("--b", b_text, "Bob angle b");
  chsh_cmd->add_option("--b-prime", b_prime_text, "Bob angle b'");
  chsh_cmd->add_option("--rounds", rounds, "rounds per axis pair");
  chsh_cmd->add_option("--seed", seed, "base seed");
  chsh_cmd->add_option("--out", out, "output path (default stdout)");

  std::string listen = "127.0.0.1:0";
  bool once = false;
  auto* serve_bob = app.add_subcommand("serve-bob", "run Bob as a network service");
  serve_bob->add_option("--listen", listen, "host:port (port 0 = ephemeral)");
  serve_bob->add_flag("--once", once, "serve one session, then exit");
  auto* serve_alice = app.add_subcommand("serve-alice", "run Alice as a network service");
  serve_alice->add_option("--listen", listen, "host:port (port 0 = ephemeral)");
  serve_alice->add_flag("--once", once, "serve one session, then exit");

  auto* referee = app.add_subcommand("referee", "drive a networked session");
  std::string bob_ep, alice_ep;
  referee->add_option("--connect-bob", bob_ep, "Bob endpoint host:port")->required();
  referee->add_option("--connect-alice", alice_ep, "Alice endpoint host:port")
      ->required();
  referee->add_option("--v0", v0_text, "Bob setting 'theta,phi'");
  referee->add_option("--v1", v1_text, "Alice setting 'theta,phi'");
  referee->add_option("--rounds", rounds, "protocol rounds");
  referee->add_option("--seed", seed, "shared seed");
  referee->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (transition->parsed()) {
      return cmd_transition(model, parse_angle(theta_text), s0, samples, seed, format,
                            out);
    }
    if (trajectory->parsed()) {
      if (grid_points < 2) {
        throw UsageError("--grid-points must be at least 2");
      }
      return cmd_trajectory(parse_angle(theta_total_text), grid_points, s0, seed, out);
    }
    if (lg->parsed()) {
      std::vector<double> thetas;
      if (!thetas_text.empty()) {
        std::stringstream ss(thetas_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
          thetas.push_back(parse_angle(item));
        }
      } else {
        if (lg_grid < 2) {
          throw UsageError("--grid-points must be at least 2");
        }
        for (int i = 0; i < lg_grid; ++i) {
          thetas.push_back(kPi * i / (lg_grid - 1));
        }
      }
      return cmd_leggett_garg(thetas, samples, seed, out);
    }
    if (bell_cmd->parsed()) {
      return cmd_bell(variant, parse_direction(v0_text), parse_direction(v1_text),
                      rounds, seed, out, round_log);
    }
    if (chsh_cmd->parsed()) {
      return cmd_chsh(parse_angle(a_text), parse_angle(a_prime_text),
                      parse_angle(b_text), parse_angle(b_prime_text), rounds, seed, out);
    }
    if (serve_bob->parsed()) {
      return cmd_serve("bob", listen, once);
    }
    if (serve_alice->parsed()) {
      return cmd_serve("alice", listen, once);
    }
    if (referee->parsed()) {
      return cmd_referee(bob_ep, alice_ep, parse_direction(v0_text),
                         parse_direction(v1_text), rounds, seed, out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
