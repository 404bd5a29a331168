// golden-susy: spectra, coherent-state concurrence curves, Bloch-state
// reports, and the identity-verification suite, as CSV or JSON on stdout.
//
// Exit codes: 0 success, 1 identity failure (verify), 2 config error,
// 3 tolerance breach (concurrence).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "golden/coherent.hpp"
#include "golden/entangle.hpp"
#include "golden/fock.hpp"
#include "golden/susy.hpp"
#include "golden/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Exact integers are emitted as JSON numbers while they fit in int64 and as
// decimal strings beyond that, so no value ever picks up float formatting.
json exact_json(const golden::BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

double env_default_tol() {
  if (const char* s = std::getenv("GOLDEN_SUSY_TOL")) {
    try {
      const double v = std::stod(s);
      if (v > 0.0) return v;
    } catch (...) {
    }
    std::cerr << "golden-susy: ignoring invalid GOLDEN_SUSY_TOL\n";
  }
  return 1e-10;
}

struct CommonOpts {
  std::vector<unsigned> k_list;
  int n_max = 5;
  int dim = 16;
  double tol = env_default_tol();
  double hbar_omega = 1.0;
  std::string format = "csv";
  std::uint64_t seed = 20240901;
};

void add_common(CLI::App* cmd, CommonOpts& o, std::vector<unsigned> default_k) {
  o.k_list = std::move(default_k);
  cmd->add_option("--k", o.k_list, "hierarchy levels")->capture_default_str();
  cmd->add_option("--n-max", o.n_max, "highest level index")->capture_default_str();
  cmd->add_option("--dim", o.dim, "Fock-space cutoff")->check(CLI::Range(2, 4096))
      ->capture_default_str();
  cmd->add_option("--tol", o.tol, "float tolerance (env GOLDEN_SUSY_TOL overrides the default)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--hbar-omega", o.hbar_omega, "energy scale")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--seed", o.seed, "seed for randomized property runs")->capture_default_str();
}

int run_spectrum(const CommonOpts& o, const std::string& kind_name) {
  golden::SpectrumKind kind = golden::SpectrumKind::Susy;
  if (kind_name == "bosonic") kind = golden::SpectrumKind::Bosonic;
  else if (kind_name == "fermionic") kind = golden::SpectrumKind::Fermionic;

  json rows = json::array();
  for (unsigned k : o.k_list) {
    auto t = golden::make_spectrum(kind, k, static_cast<std::size_t>(o.n_max), o.hbar_omega);
    for (int n = 0; n <= o.n_max; ++n) {
      json row;
      row["k"] = k;
      row["n"] = n;
      row["e_half"] = exact_json(t.half_units[static_cast<std::size_t>(n)]);
      row["energy"] = t.energies[static_cast<std::size_t>(n)];
      row["kind"] = golden::to_string(kind);
      rows.push_back(std::move(row));
    }
  }
  if (o.format == "json") {
    std::cout << json{{"rows", rows}}.dump(2) << "\n";
  } else {
    std::cout << "k,n,e_half,energy,kind\n";
    for (const auto& r : rows) {
      std::cout << r["k"] << "," << r["n"] << ","
                << (r["e_half"].is_string() ? r["e_half"].get<std::string>()
                                            : std::to_string(r["e_half"].get<std::int64_t>()))
                << "," << fmt17(r["energy"].get<double>()) << ","
                << r["kind"].get<std::string>() << "\n";
    }
  }
  return 0;
}

int run_concurrence(const CommonOpts& o, const std::string& side_name, double beta_max,
                    int steps) {
  const golden::ReferenceSide side =
      (side_name == "B") ? golden::ReferenceSide::B : golden::ReferenceSide::L;
  const golden::Family fam =
      (side == golden::ReferenceSide::L) ? golden::Family::LPlus : golden::Family::BMinus;

  json rows = json::array();
  double worst = 0.0;
  json worst_row;
  for (unsigned k : o.k_list) {
    const double cap = (k == 0) ? std::min(beta_max, 1.5) : beta_max;
    for (int i = 0; i <= steps; ++i) {
      const double babs = cap * i / steps;
      const golden::Complex beta{babs, 0.0};
      const double closed = golden::coherent_concurrence_closed(k, beta, side);
      const double gram = golden::concurrence_gram(golden::super_coherent(fam, k, beta).state);
      const double delta = std::abs(closed - gram);
      json row;
      row["k"] = k;
      row["beta_abs"] = babs;
      row["c_closed"] = closed;
      row["c_gram"] = gram;
      row["delta"] = delta;
      if (delta > worst) {
        worst = delta;
        worst_row = row;
      }
      rows.push_back(std::move(row));
    }
  }
  if (o.format == "json") {
    std::cout << json{{"family", side_name}, {"rows", rows}}.dump(2) << "\n";
  } else {
    std::cout << "k,beta_abs,c_closed,c_gram,delta\n";
    for (const auto& r : rows)
      std::cout << r["k"] << "," << fmt17(r["beta_abs"].get<double>()) << ","
                << fmt17(r["c_closed"].get<double>()) << "," << fmt17(r["c_gram"].get<double>())
                << "," << fmt17(r["delta"].get<double>()) << "\n";
  }
  if (worst > o.tol) {
    std::cerr << "golden-susy concurrence: tolerance breach, worst row " << worst_row.dump()
              << " (tol " << fmt17(o.tol) << ")\n";
    return 3;
  }
  return 0;
}

int run_verify(const CommonOpts& o) {
  golden::VerifyConfig cfg;
  cfg.k_list = o.k_list;
  cfg.n_max = o.n_max;
  cfg.dim = o.dim;
  cfg.tol = o.tol;
  cfg.seed = o.seed;
  cfg.hbar_omega = o.hbar_omega;
  auto rep = golden::run_verify(cfg);

  if (o.format == "json") {
    json jc;
    jc["k_list"] = cfg.k_list;
    jc["n_max"] = cfg.n_max;
    jc["dim"] = cfg.dim;
    jc["tol"] = cfg.tol;
    jc["seed"] = cfg.seed;
    jc["hbar_omega"] = cfg.hbar_omega;
    json checks = json::array();
    for (const auto& c : rep.checks) {
      checks.push_back(json{{"name", c.name},
                            {"pass", c.pass},
                            {"max_residual", c.max_residual},
                            {"detail", c.detail}});
    }
    std::cout << json{{"all_pass", rep.all_pass}, {"config", jc}, {"checks", checks}}.dump(2)
              << "\n";
  } else {
    std::cout << "name,pass,max_residual,detail\n";
    for (const auto& c : rep.checks)
      std::cout << c.name << "," << (c.pass ? "true" : "false") << "," << fmt17(c.max_residual)
                << ",\"" << c.detail << "\"\n";
  }
  if (!rep.all_pass) {
    std::cerr << "golden-susy verify: failing identities:";
    for (const auto& c : rep.checks)
      if (!c.pass) std::cerr << " " << c.name;
    std::cerr << "\n";
    return 1;
  }
  return 0;
}

int run_bloch(const CommonOpts& o, int n, unsigned k, double theta, double phi_az) {
  const int d = std::max(o.dim, n + 2);
  golden::SuperState s = golden::super_number_state(n, k, golden::BlochPoint{theta, phi_az}, d);
  golden::SuperOperator f = golden::super_fib_table(k, d);
  const double fn = golden::fib_divisor(k, static_cast<unsigned>(n)).convert_to<double>();
  golden::SuperState r = golden::apply(f, s);
  r.psi0 -= fn * s.psi0;
  r.psi1 -= fn * s.psi1;
  const double resid = std::sqrt(r.norm_sq()) / std::max(1.0, fn);
  const double c = golden::concurrence_gram(s);
  const double entropy = golden::von_neumann(golden::reduce_fermion(s));
  const golden::Complex xi = std::tan(theta / 2.0) * std::exp(golden::Complex(0.0, phi_az));

  json out;
  out["k"] = k;
  out["n"] = n;
  out["theta"] = theta;
  out["phi"] = phi_az;
  out["eigenvalue"] = exact_json(golden::fib_divisor(k, static_cast<unsigned>(n)));
  out["energy"] = 0.5 * o.hbar_omega * fn;
  out["eigen_residual"] = resid;
  out["concurrence"] = c;
  out["entropy"] = entropy;
  out["xi_re"] = xi.real();
  out["xi_im"] = xi.imag();
  if (o.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "k,n,theta,phi,eigen_residual,concurrence,entropy,xi_re,xi_im\n";
    std::cout << k << "," << n << "," << fmt17(theta) << "," << fmt17(phi_az) << ","
              << fmt17(resid) << "," << fmt17(c) << "," << fmt17(entropy) << ","
              << fmt17(xi.real()) << "," << fmt17(xi.imag()) << "\n";
  }
  return 0;
}

golden::Family parse_family(const std::string& name) {
  if (name == "sep-up") return golden::Family::SepUp;
  if (name == "sep-down") return golden::Family::SepDown;
  if (name == "L+") return golden::Family::LPlus;
  if (name == "L-") return golden::Family::LMinus;
  if (name == "B+") return golden::Family::BPlus;
  return golden::Family::BMinus;
}

int run_coherent(const CommonOpts& o, const std::string& family_name, double beta_re,
                 double beta_im) {
  const golden::Family fam = parse_family(family_name);
  const golden::Complex beta{beta_re, beta_im};
  auto built = golden::super_coherent(fam, static_cast<unsigned>(o.k_list.front()), beta);
  const double gram = golden::concurrence_gram(built.state);

  json out;
  out["k"] = o.k_list.front();
  out["family"] = golden::to_string(fam);
  out["beta_re"] = beta_re;
  out["beta_im"] = beta_im;
  out["dim"] = built.dim;
  out["residual"] = built.residual;
  out["norm_sq_direct"] = built.norm_sq_direct;
  out["norm_sq_closed"] = built.norm_sq_closed;
  out["concurrence_gram"] = gram;
  if (fam == golden::Family::LPlus || fam == golden::Family::LMinus)
    out["concurrence_closed"] =
        golden::coherent_concurrence_closed(o.k_list.front(), beta, golden::ReferenceSide::L);
  else if (fam == golden::Family::BPlus || fam == golden::Family::BMinus)
    out["concurrence_closed"] =
        golden::coherent_concurrence_closed(o.k_list.front(), beta, golden::ReferenceSide::B);
  if (o.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "k,family,beta_re,beta_im,dim,residual,norm_sq_direct,norm_sq_closed,"
                 "concurrence_gram,concurrence_closed\n";
    std::cout << out["k"] << "," << family_name << "," << fmt17(beta_re) << "," << fmt17(beta_im)
              << "," << built.dim << "," << fmt17(built.residual) << ","
              << fmt17(built.norm_sq_direct) << "," << fmt17(built.norm_sq_closed) << ","
              << fmt17(gram) << ","
              << (out.contains("concurrence_closed")
                      ? fmt17(out["concurrence_closed"].get<double>())
                      : "")
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchy of supersymmetric golden oscillators"};
  app.require_subcommand(1);

  CommonOpts spec_o, conc_o, ver_o, bloch_o, coh_o;

  auto* spectrum = app.add_subcommand("spectrum", "energy-level tables");
  add_common(spectrum, spec_o, {1, 2, 3, 4, 5});
  std::string kind = "susy";
  spectrum->add_option("--kind", kind, "susy, bosonic or fermionic")
      ->check(CLI::IsMember({"susy", "bosonic", "fermionic"}))->capture_default_str();

  auto* conc = app.add_subcommand("concurrence", "coherent-state concurrence curves");
  add_common(conc, conc_o, {0, 1, 2, 3});
  std::string family_side = "L";
  double beta_max = 1.0;
  int steps = 20;
  conc->add_option("--family", family_side, "L or B")->check(CLI::IsMember({"L", "B"}))
      ->capture_default_str();
  conc->add_option("--beta-max", beta_max, "largest |beta| on the grid")
      ->check(CLI::PositiveNumber)->capture_default_str();
  conc->add_option("--steps", steps, "grid points")->check(CLI::Range(1, 10000))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the full identity suite");
  ver_o.n_max = 30;
  add_common(verify, ver_o, {0, 1, 2, 3, 4, 5});

  auto* bloch = app.add_subcommand("bloch", "super-number state report");
  add_common(bloch, bloch_o, {1});
  int bloch_n = 1;
  double theta = 0.0, phi_az = 0.0;
  bloch->add_option("--n", bloch_n, "super-particle number")->capture_default_str();
  bloch->add_option("--theta", theta, "polar angle in [0, pi]")->capture_default_str();
  bloch->add_option("--phi", phi_az, "azimuth in [0, 2 pi)")->capture_default_str();

  auto* coherent = app.add_subcommand("coherent", "super-coherent state report");
  add_common(coherent, coh_o, {1});
  std::string family_name = "L+";
  double beta_re = 0.5, beta_im = 0.0;
  coherent->add_option("--family", family_name, "sep-up, sep-down, L+, L-, B+ or B-")
      ->check(CLI::IsMember({"sep-up", "sep-down", "L+", "L-", "B+", "B-"}))
      ->capture_default_str();
  coherent->add_option("--beta-re", beta_re, "Re beta")->capture_default_str();
  coherent->add_option("--beta-im", beta_im, "Im beta")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(spec_o, kind);
    if (conc->parsed()) return run_concurrence(conc_o, family_side, beta_max, steps);
    if (verify->parsed()) return run_verify(ver_o);
    if (bloch->parsed())
      return run_bloch(bloch_o, bloch_n, bloch_o.k_list.front(), theta, phi_az);
    if (coherent->parsed()) return run_coherent(coh_o, family_name, beta_re, beta_im);
  } catch (const std::out_of_range& e) {
    std::cerr << "golden-susy: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "golden-susy: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "golden-susy: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "golden-susy: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
