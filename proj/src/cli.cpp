#include "erasure_chi/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "erasure_chi/campaign.hpp"
#include "erasure_chi/capacity.hpp"
#include "erasure_chi/ensemble_io.hpp"
#include "erasure_chi/protocols.hpp"

namespace erasure_chi::cli {

namespace {

struct Parser {
  CLI::App app{"Erasure-entropy accounting and Holevo-quantity tools for quantum ensembles", "erasure-chi"};
  RunConfig config;
  std::string command;
  std::string units = "nats";
  std::string format = "table";
  std::optional<std::uint64_t> seed;

  Parser() {
    app.add_option("command", command, "entropy | chi | erase | verify | capacity")
        ->required()
        ->check(CLI::IsMember({"entropy", "chi", "erase", "verify", "capacity"}));
    app.add_option("--input", config.input, "Ensemble JSON file");
    app.add_option("--seed", seed, "Master seed (default: $ERASURE_CHI_SEED, else 42)");
    app.add_option("--dims", config.dims, "Comma-separated dimensions for verify")->delimiter(',');
    app.add_option("--letters", config.letters, "Maximum letters per random ensemble");
    app.add_option("--trials", config.trials, "Trials per verification suite");
    app.add_option("--tol", config.tol, "KKT tolerance for capacity");
    app.add_option("--units", units, "bits | nats")->check(CLI::IsMember({"bits", "nats"}));
    app.add_option("--format", format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_flag("--epsilon-mix", config.epsilonMix, "Mix rank-deficient bath states with 1e-10 I/dim");
  }

  RunConfig finish() {
    static const std::map<std::string, Command> commands{{"entropy", Command::kEntropy},
                                                         {"chi", Command::kChi},
                                                         {"erase", Command::kErase},
                                                         {"verify", Command::kVerify},
                                                         {"capacity", Command::kCapacity}};
    config.command = commands.at(command);
    config.units = units == "bits" ? Units::kBits : Units::kNats;
    config.format = format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kTable;

    if (seed) {
      config.seed = *seed;
    } else if (const char* env = std::getenv(kSeedEnvVar); env && *env) {
      errno = 0;
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (errno != 0 || *end != '\0' || env[0] == '-')
        throw DomainError(std::string(kSeedEnvVar) + " is not an unsigned 64-bit integer: " + env);
      config.seed = v;
    }

    if (config.trials < 1) throw DomainError("--trials must be at least 1");
    if (config.letters < 1) throw DomainError("--letters must be at least 1");
    if (config.dims.empty()) throw DomainError("--dims must list at least one dimension");
    for (int d : config.dims)
      if (d < 2) throw DomainError("every entry of --dims must be at least 2");
    if (!(config.tol > 0.0)) throw DomainError("--tol must be positive");
    return config;
  }
};

const char* unitsName(Units u) { return u == Units::kBits ? "bits" : "nats"; }

const std::string& requireInput(const RunConfig& c) {
  if (!c.input) throw DomainError("this command needs --input PATH");
  return *c.input;
}

void header(Report& r, const char* command, const RunConfig& c) {
  r.add("command", std::string(command));
  r.add("units", std::string(unitsName(c.units)));
}

std::int64_t asInt(std::size_t n) { return static_cast<std::int64_t>(n); }

}  // namespace

RunConfig parseArguments(int argc, const char* const* argv) {
  Parser p;
  try {
    p.app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    throw DomainError(e.what());
  }
  return p.finish();
}

CommandResult cmdEntropy(const RunConfig& c) {
  const Ensemble e = loadEnsembleFile(std::filesystem::path(requireInput(c))).ensemble;
  CommandResult out;
  header(out.report, "entropy", c);
  out.report.add("dim", static_cast<std::int64_t>(e.dim()));
  out.report.add("letters", asInt(e.size()));
  std::vector<double> perLetter;
  for (const auto& m : e.members()) perLetter.push_back(vonNeumannEntropy(m.state).nats);
  out.report.addEntropies("letter_entropies", perLetter);
  out.report.addEntropy("average_state_entropy", vonNeumannEntropy(averageState(e)).nats);
  out.report.addEntropy("mean_letter_entropy", meanLetterEntropy(e));
  return out;
}

CommandResult cmdChi(const RunConfig& c) {
  const Ensemble e = loadEnsembleFile(std::filesystem::path(requireInput(c))).ensemble;
  const DensityMatrix avg = averageState(e);
  CommandResult out;
  header(out.report, "chi", c);
  out.report.add("dim", static_cast<std::int64_t>(e.dim()));
  out.report.add("letters", asInt(e.size()));
  out.report.addEntropy("chi", holevoChi(e).nats);
  out.report.addEntropy("chi_via_relative_entropy", chiViaRelativeEntropy(e).nats);
  std::vector<double> certificate;
  for (const auto& m : e.members()) certificate.push_back(relativeEntropy(m.state, avg).value());
  out.report.addEntropies("letter_relative_entropies", certificate);
  return out;
}

CommandResult cmdErase(const RunConfig& c) {
  const EnsembleFile file = loadEnsembleFile(std::filesystem::path(requireInput(c)));
  const EncodedMessage message = EncodedMessage::fromFile(file);
  const BobErasureRun bob = runBobErasure(message, {.epsilonMix = c.epsilonMix});
  const double chi = holevoChi(file.ensemble).nats;

  CommandResult out;
  header(out.report, "erase", c);
  out.report.add("epsilon_mix", c.epsilonMix);
  out.report.addEntropy("direct_erasure", bob.directEntropy);
  out.report.addEntropy("two_step_first", bob.firstStepEntropy);
  out.report.addEntropy("bob_erasure", bob.value());
  out.report.addEntropy("bob_erasure_ledger_route", bob.ledgerRoute);
  out.report.addEntropy("chi", chi);
  out.report.addEntropy("residual_protocol", std::abs(bob.directEntropy - bob.firstStepEntropy - bob.ledgerRoute));
  out.report.addEntropy("residual_bob_chi", std::abs(bob.value() - chi));
  return out;
}

CommandResult cmdVerify(const RunConfig& c) {
  CampaignConfig campaign;
  campaign.seed = c.seed;
  campaign.dims.assign(c.dims.begin(), c.dims.end());
  campaign.letters = static_cast<std::size_t>(c.letters);
  campaign.trials = static_cast<std::size_t>(c.trials);

  // Load the optional input first so a bad file fails fast with status 2.
  std::optional<Ensemble> input;
  if (c.input) input = loadEnsembleFile(std::filesystem::path(*c.input)).ensemble;

  const CampaignReport report = runCampaignParallel(campaign);
  std::vector<SuiteSummary> suites = report.suites;
  if (input) {
    auto extra = verifyEnsemble(*input, c.seed, campaign.trials, true);
    suites.insert(suites.end(), extra.begin(), extra.end());
  }

  CommandResult out;
  out.report.add("command", std::string("verify"));
  if (c.seed <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    out.report.add("seed", static_cast<std::int64_t>(c.seed));
  else
    out.report.add("seed", std::to_string(c.seed));
  out.report.add("trials", static_cast<std::int64_t>(c.trials));
  out.report.add("letters", static_cast<std::int64_t>(c.letters));
  out.report.add("dims", std::vector<double>(c.dims.begin(), c.dims.end()));
  if (c.input) out.report.add("input", *c.input);

  bool passed = true;
  std::ostringstream failures;
  for (const auto& s : suites) {
    out.report.add(s.name + "_checks", asInt(s.checks));
    out.report.add(s.name + "_failures", asInt(s.failures));
    out.report.add(s.name + "_max_violation", s.worst);
    out.report.add(s.name + "_threshold", s.threshold);
    out.report.add(s.name + "_pass", s.passed());
    if (s.firstFailureTrial) {
      out.report.add(s.name + "_first_failure_trial", asInt(*s.firstFailureTrial));
      passed = false;
      failures << "suite " << s.name << " failed first at trial " << *s.firstFailureTrial << " (seed " << c.seed
               << "): " << s.firstFailureMessage << "\n";
    } else {
      out.report.add(s.name + "_first_failure_trial", std::monostate{});
    }
  }
  out.report.add("passed", passed);
  out.status = passed ? kExitOk : kExitFailure;
  out.message = failures.str();
  return out;
}

CommandResult cmdCapacity(const RunConfig& c) {
  const std::vector<DensityMatrix> states = loadStates(std::filesystem::path(requireInput(c)));
  const CapacityResult r = optimizeInputDistribution(states, c.tol, kCapacityMaxIterations);

  CommandResult out;
  header(out.report, "capacity", c);
  out.report.add("letters", asInt(states.size()));
  out.report.add("p_star", r.pStar);
  out.report.addEntropy("chi_star", r.chiStar);
  out.report.add("chi_star_nats", r.chiStar);
  out.report.add("chi_star_bits", r.chiStar / std::numbers::ln2);
  out.report.addEntropy("kkt_residual", r.kktResidual);
  out.report.add("tol", c.tol);
  out.report.add("iterations", static_cast<std::int64_t>(r.iterations));
  out.report.add("converged", r.converged);
  if (!r.converged) {
    std::ostringstream os;
    os << "capacity optimisation stopped after " << r.iterations << " iterations with KKT residual "
       << r.kktResidual << "\n";
    out.message = os.str();
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Parser parser;
  try {
    parser.app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << parser.app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << parser.app.help();
    return kExitInput;
  }

  try {
    const RunConfig config = parser.finish();
    CommandResult result;
    switch (config.command) {
      case Command::kEntropy: result = cmdEntropy(config); break;
      case Command::kChi: result = cmdChi(config); break;
      case Command::kErase: result = cmdErase(config); break;
      case Command::kVerify: result = cmdVerify(config); break;
      case Command::kCapacity: result = cmdCapacity(config); break;
    }
    result.report.write(out, config.format, config.units);
    if (!result.message.empty()) err << result.message;
    return result.status;
  } catch (const ParseError& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "error: ValidationError(" << e.invariant() << "): " << e.what() << "\n";
    return kExitInput;
  } catch (const RankDeficientBath& e) {
    err << "error: RankDeficientBath: " << e.what() << " (pass --epsilon-mix)\n";
    return kExitInput;
  } catch (const InternalInconsistency& e) {
    err << "error: InternalInconsistency: " << e.what() << "\n";
    return kExitFailure;
  } catch (const ConvergenceFailure& e) {
    err << "error: ConvergenceFailure: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace erasure_chi::cli
