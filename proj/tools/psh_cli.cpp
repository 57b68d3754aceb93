// psh: batch verification driver.
//
//   psh <subcommand> [--config PATH] [--seed N] [--samples N] [--budget N] [--out PATH]
//
// Records go to --out (or run.out) as JSON lines, or to stdout; the summary
// table goes to stderr when records use stdout.  Exit codes: 0 all pass,
// 2 any failure, 3 skips without failures, 4 configuration error.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "psh/acceptance.hpp"
#include "psh/config.hpp"
#include "psh/harmonics.hpp"
#include "psh/suites.hpp"

namespace {

constexpr int kConfigError = 4;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<std::uint64_t> budget;
  std::string out;
};

psh::RunConfig resolve(const Flags& f) {
  psh::RunConfig c;
  if (!f.config.empty()) c = psh::load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  if (f.samples) c.samples = *f.samples;
  if (f.budget) c.budget = *f.budget;
  if (!f.out.empty()) c.out = f.out;
  c.validate();
  return c;
}

// Builds the sphere and K for the configured ring; a budget overrun becomes a
// SKIP record instead of aborting the run.
std::optional<psh::Harmonics> setup(psh::Report& rep, const psh::RunConfig& c) {
  std::optional<psh::Harmonics> h;
  const psh::RingLevel ring = c.ring();
  rep.run(psh::tag_of(ring, c.n) + "/setup/all", "setup", {{"n", c.n}, {"M", c.level}, {"budget", c.budget}},
          [&](std::mt19937_64&) {
            h.emplace(ring, c.n, c.budget);
            const std::uint64_t order = h->k_enumerator().size();
            if (order > c.budget) {
              h.reset();
              throw psh::BudgetExceeded("|K| = " + std::to_string(order) + " exceeds the budget");
            }
            psh::Outcome o;
            o.observed = {{"sphere", h->sphere().size()}, {"K", order}};
            o.ok = true;
            return o;
          });
  return h;
}

void principal_series(psh::Report& rep, const psh::RunConfig& c) {
  auto h = setup(rep, c);
  if (!h) return;
  std::vector<psh::UnitCharacter> chis;
  if (c.characters.empty())
    chis.assign(static_cast<std::size_t>(c.n), h->characters().front());
  else
    chis = psh::select_characters(*h, c.characters);
  int sum = 0;
  for (const auto& x : chis) sum += x.conductor();
  if (sum > c.level) throw psh::ConfigError("characters: conductors sum to " + std::to_string(sum) + " > ring.level");
  psh::suite_principal_series(rep, *h, chis, c.samples);
  const bool exhaustive = h->k_enumerator().size() <= c.budget / 100;
  psh::suite_roundtrip(rep, *h, chis, exhaustive, c.samples);
}

int emit(const psh::Report& rep, const psh::RunConfig& c) {
  if (c.out.empty()) {
    rep.write_jsonl(std::cout);
    rep.write_summary(std::cerr);
  } else {
    std::ofstream os(c.out);
    if (!os) {
      std::cerr << "cannot write '" << c.out << "'\n";
      return kConfigError;
    }
    rep.write_jsonl(os);
    rep.write_summary(std::cout);
  }
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification driver for spherical harmonics on GL_n over local rings"};
  app.require_subcommand(1);
  Flags flags;
  auto add_flags = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "configuration file");
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--samples", flags.samples, "samples per randomized check");
    sub->add_option("--budget", flags.budget, "enumeration cap");
    sub->add_option("--out", flags.out, "JSON lines output path");
  };
  struct Command {
    const char* name;
    const char* help;
    std::function<void(psh::Report&, const psh::RunConfig&)> run;
  };
  const std::vector<Command> commands = {
      {"decompose", "dimensions, orthogonality and irreducibility of the harmonic spaces",
       [](psh::Report& rep, const psh::RunConfig& c) {
         if (auto h = setup(rep, c)) {
           psh::suite_decompose(rep, *h);
           psh::suite_irreducibility(rep, *h);
         }
       }},
      {"zonal", "zonal spherical functions and idempotent sums",
       [](psh::Report& rep, const psh::RunConfig& c) {
         if (auto h = setup(rep, c)) {
           psh::suite_zonal(rep, *h, c.samples);
           psh::suite_idempotents(rep, *h, c.samples);
         }
       }},
      {"double-cosets", "K_0 double cosets in K, exhaustively",
       [](psh::Report& rep, const psh::RunConfig& c) {
         psh::suite_double_cosets(rep, psh::GL(c.ring(), c.n), c.dc_level, c.budget);
       }},
      {"principal-series", "newforms of an induced representation", principal_series},
      {"arch-verify", "exact checks of the archimedean zonal polynomials",
       [](psh::Report& rep, const psh::RunConfig& c) { psh::suite_arch(rep, c.arch, c.samples); }},
      {"verify-all", "the full acceptance grid",
       [](psh::Report& rep, const psh::RunConfig& c) { rep.merge(psh::verify_all(c.seed)); }},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_flags(sub);
    subs.push_back({sub, &cmd});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    const psh::RunConfig c = resolve(flags);
    for (const auto& [sub, cmd] : subs) {
      if (!sub->parsed()) continue;
      psh::Report rep(c.seed);
      cmd->run(rep, c);
      return emit(rep, c);
    }
  } catch (const psh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const psh::ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
