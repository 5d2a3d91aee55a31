#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fiiss/cli.hpp"
#include "fiiss/errors.hpp"
#include "fiiss/io.hpp"

namespace {

void add_common(CLI::App* cmd, fiiss::RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--streams", cfg.streams, "worker count (0 = all available)");
  cmd->add_option("--output", cfg.output, "output directory");
}

void emit_error(const std::string& message, int code) {
  nlohmann::ordered_json err;
  err["error"] = message;
  err["exit_code"] = code;
  std::fprintf(stderr, "%s\n", err.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and statistical verification of fractionally "
               "integrated inverse stable subordinators"};
  app.require_subcommand(1);
  app.set_config("--config", "", "config file (key = value lines; flags override)");

  fiiss::RunConfig cfg;

  auto* simulate = app.add_subcommand("simulate", "simulate one W path and its Y path");
  simulate->add_option("--alpha", cfg.alpha, "stability index in (0,1)");
  simulate->add_option("--beta", cfg.beta, "fractional integration order");
  simulate->add_option("--u-max", cfg.u_max, "path horizon in u");
  simulate->add_option("--u-step", cfg.u_step, "u grid spacing");
  simulate->add_option("--t-step", cfg.t_step, "subordinator grid spacing");
  add_common(simulate, cfg);

  auto* figure1 = app.add_subcommand(
      "figure1", "three realizations at alpha=0.75, beta in {0.5,-0.5,-1.5} on [0,1]");
  figure1->add_option("--u-step", cfg.u_step, "u grid spacing");
  figure1->add_option("--t-step", cfg.t_step, "subordinator grid spacing");
  add_common(figure1, cfg);

  auto* verify = app.add_subcommand("verify", "run the statistical verification suite");
  verify->add_option("--alpha", cfg.alpha, "stability index in (0,1)");
  verify->add_option("--beta", cfg.beta, "fractional integration order");
  verify->add_option("--n", cfg.n, "Monte Carlo replicas per check");
  verify->add_option("--t-step", cfg.t_step, "subordinator grid spacing");
  verify->add_option("--eps", cfg.eps, "jump truncation level");
  add_common(verify, cfg);

  auto* converge = app.add_subcommand(
      "converge", "shot-noise scaling limit: KS ladder against the Y marginal");
  converge->add_option("--alpha", cfg.alpha, "stability index in (0,1)");
  converge->add_option("--beta", cfg.beta, "fractional integration order");
  converge->add_option("--u", cfg.u, "marginal location");
  converge->add_option("--n", cfg.n, "draws per rung");
  converge->add_option("--t-ladder", cfg.t_ladder, "time scales");
  converge->add_option("--t-step", cfg.t_step, "subordinator grid spacing");
  converge->add_option("--ks-threshold", cfg.ks_threshold, "final-rung KS bound");
  converge->add_flag("--export-samples", cfg.export_samples,
                     "write the compared samples next to the report");
  std::string format_name = "csv";
  converge->add_option("--format", format_name, "sample export format (csv|json)")
      ->check(CLI::IsMember({"csv", "json"}));
  add_common(converge, cfg);

  auto* tail = app.add_subcommand("tail", "fit the stretched-exponential tail slope");
  tail->add_option("--alpha", cfg.alpha, "stability index in (0,1)");
  tail->add_option("--beta", cfg.beta, "fractional integration order");
  tail->add_option("--n", cfg.n, "sample size");
  tail->add_option("--t-step", cfg.t_step, "subordinator grid spacing");
  tail->add_option("--x-lo", cfg.x_lo, "fit window lower edge");
  tail->add_option("--x-hi", cfg.x_hi, "fit window upper edge");
  tail->add_option("--tolerance", cfg.tail_tolerance, "relative slope tolerance");
  add_common(tail, cfg);

  auto* lil = app.add_subcommand("lil", "iterated-logarithm envelope scan");
  lil->add_option("--alpha", cfg.alpha, "stability index in (0,1)");
  lil->add_option("--beta", cfg.beta, "fractional integration order");
  lil->add_option("--n", cfg.n, "path count");
  lil->add_option("--t-step", cfg.t_step, "subordinator grid spacing");
  lil->add_option("--u-lo", cfg.u_lo, "scan range lower edge (> e)");
  lil->add_option("--u-hi", cfg.u_hi, "scan range upper edge");
  lil->add_option("--u-points", cfg.u_points, "log-spaced scan points");
  lil->add_option("--lo-factor", cfg.lil_lo_factor, "envelope lower factor");
  lil->add_option("--hi-factor", cfg.lil_hi_factor, "envelope upper factor");
  add_common(lil, cfg);

  auto* diverge = app.add_subcommand(
      "diverge", "grid-maximum refinement ladder (divergence vs stabilization)");
  diverge->add_option("--alpha", cfg.alpha, "stability index in (0,1)");
  diverge->add_option("--beta", cfg.beta, "fractional integration order");
  diverge->add_option("--n", cfg.n, "path count");
  diverge->add_option("--t-step", cfg.t_step, "subordinator grid spacing");
  diverge->add_option("--lo", cfg.diverge_lo, "interval lower edge");
  diverge->add_option("--hi", cfg.diverge_hi, "interval upper edge");
  diverge->add_option("--ladder", cfg.refinement_ladder, "grid sizes");
  diverge->add_option("--ratio-tolerance", cfg.ratio_tolerance,
                      "stabilization band for beta > -alpha");
  add_common(diverge, cfg);

  // per-command default tunings
  converge->preparse_callback([&](std::size_t) {
    cfg.alpha = 0.75;
    cfg.beta = -0.5;
    cfg.n = 5000;
  });
  tail->preparse_callback([&](std::size_t) {
    cfg.alpha = 0.5;
    cfg.beta = 0.0;
    cfg.n = 1'000'000;
  });
  lil->preparse_callback([&](std::size_t) {
    cfg.alpha = 0.75;
    cfg.beta = 0.5;
    cfg.n = 100;
    cfg.t_step = 1e-2;
  });
  diverge->preparse_callback([&](std::size_t) {
    cfg.alpha = 0.75;
    cfg.beta = -1.5;
    cfg.n = 50;
    cfg.t_step = 1e-5;
  });
  figure1->preparse_callback([&](std::size_t) {
    cfg.u_step = 1.0 / 512.0;
    cfg.t_step = 1e-4;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(e.what(), fiiss::kExitUsage);
    return fiiss::kExitUsage;
  }

  cfg.format = format_name == "json" ? fiiss::OutputFormat::Json : fiiss::OutputFormat::Csv;
  if (simulate->parsed()) cfg.command = fiiss::Command::Simulate;
  if (figure1->parsed()) cfg.command = fiiss::Command::Figure1;
  if (verify->parsed()) cfg.command = fiiss::Command::Verify;
  if (converge->parsed()) cfg.command = fiiss::Command::Converge;
  if (tail->parsed()) cfg.command = fiiss::Command::Tail;
  if (lil->parsed()) cfg.command = fiiss::Command::Lil;
  if (diverge->parsed()) cfg.command = fiiss::Command::Diverge;

  try {
    return fiiss::run_command(cfg);
  } catch (const fiiss::resource_error& e) {
    emit_error(e.what(), fiiss::kExitResourceCap);
    return fiiss::kExitResourceCap;
  } catch (const std::exception& e) {
    emit_error(e.what(), fiiss::kExitUsage);
    return fiiss::kExitUsage;
  }
}
