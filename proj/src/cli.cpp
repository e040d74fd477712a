#include "montmort/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "montmort/decimal.hpp"
#include "montmort/derangement.hpp"
#include "montmort/rank_derangement.hpp"
#include "montmort/simulate.hpp"
#include "montmort/treize.hpp"

namespace montmort::cli {

using Json = nlohmann::ordered_json;

std::string render_rational(const Rational& value, const OutputFormat& format) {
  const std::string decimal = render_decimal(value, format.digits, format.rounding);
  if (format.mode == OutputMode::Json) {
    Json j;
    j["exact"] = format.exact ? Json(value.str()) : Json(nullptr);
    j["decimal"] = decimal;
    j["digits"] = format.digits;
    return j.dump();
  }
  return format.exact ? decimal + "\n" + value.str() : decimal;
}

namespace {

const std::vector<std::string> kCommands = {
    "derange", "derange-prob", "rankderange", "prefix-prob", "table",
    "treize",  "simulate",     "limit"};

// A single computed quantity plus whatever the JSON form should carry.
struct Result {
  std::string command;
  Json inputs = Json::object();
  std::optional<Rational> exact;
  std::string decimal;
  Json metadata = Json::object();
};

class Emitter {
 public:
  Emitter(const OutputFormat& format, std::ostream& out)
      : format_(format), out_(out), start_(std::chrono::steady_clock::now()) {}

  void value(Result r) {
    switch (format_.mode) {
      case OutputMode::Plain:
        out_ << r.decimal << '\n';
        if (format_.exact && r.exact) out_ << r.exact->str() << '\n';
        break;
      case OutputMode::Csv:
        out_ << "command,decimal,exact\n"
             << r.command << ',' << r.decimal << ','
             << (r.exact ? r.exact->str() : "") << '\n';
        break;
      case OutputMode::Json: {
        Json j;
        j["command"] = r.command;
        j["inputs"] = std::move(r.inputs);
        j["exact"] = r.exact ? Json(r.exact->str()) : Json(nullptr);
        j["decimal"] = r.decimal;
        j["digits"] = format_.digits;
        r.metadata["runtime_ms"] = runtime_ms();
        j["metadata"] = std::move(r.metadata);
        out_ << j.dump() << '\n';
        break;
      }
    }
  }

  double runtime_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start_)
        .count();
  }

  const OutputFormat& format() const { return format_; }
  std::ostream& raw() { return out_; }

 private:
  OutputFormat format_;
  std::ostream& out_;
  std::chrono::steady_clock::time_point start_;
};

Result integer_result(std::string command, const BigCount& v) {
  Result r;
  r.command = std::move(command);
  r.exact = Rational(v);
  r.decimal = v.get_str();
  return r;
}

Result rational_result(std::string command, const Rational& v,
                       const OutputFormat& format) {
  Result r;
  r.command = std::move(command);
  r.exact = v;
  r.decimal = render_decimal(v, format.digits, format.rounding);
  return r;
}

std::string format_double(double v, unsigned digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(static_cast<int>(std::min(digits, 12u))) << v;
  return os.str();
}

Json deck_inputs(const DeckSpec& spec) {
  return Json{{"ranks", spec.n_ranks}, {"suits", spec.s_suits}};
}

void emit_estimate(Emitter& em, const std::string& command, Game game,
                   const SimConfig& cfg, const Estimate& e) {
  const unsigned digits = em.format().digits;
  if (em.format().mode == OutputMode::Plain) {
    em.raw() << "game=" << game_name(game) << " ranks=" << cfg.spec.n_ranks
             << " suits=" << cfg.spec.s_suits << " trials=" << e.trials
             << " seed=" << cfg.seed << " mean=" << format_double(e.mean, digits)
             << " se=" << format_double(e.standard_error, digits)
             << " hits=" << e.hits << '\n';
    return;
  }
  if (em.format().mode == OutputMode::Csv) {
    em.raw() << "game,ranks,suits,trials,seed,mean,standard_error,hits\n"
             << game_name(game) << ',' << cfg.spec.n_ranks << ',' << cfg.spec.s_suits
             << ',' << e.trials << ',' << cfg.seed << ','
             << format_double(e.mean, digits) << ','
             << format_double(e.standard_error, digits) << ',' << e.hits << '\n';
    return;
  }
  Result r;
  r.command = command;
  r.inputs = deck_inputs(cfg.spec);
  r.inputs["game"] = std::string(game_name(game));
  r.inputs["trials"] = cfg.trials;
  r.decimal = format_double(e.mean, digits);
  r.metadata["seed"] = cfg.seed;
  r.metadata["standard_error"] = format_double(e.standard_error, digits);
  r.metadata["trials"] = e.trials;
  r.metadata["hits"] = e.hits;
  em.value(std::move(r));
}

void emit_table(Emitter& em, unsigned n_max, unsigned s) {
  const unsigned digits = em.format().digits;
  const auto rows = probability_table(n_max, s, digits);
  switch (em.format().mode) {
    case OutputMode::Csv:
      em.raw() << "n,p_n,abs_err_vs_limit\n";
      for (const auto& row : rows)
        em.raw() << row.n << ',' << row.probability_decimal << ','
                 << row.abs_err_decimal << '\n';
      break;
    case OutputMode::Plain:
      for (const auto& row : rows)
        em.raw() << std::setw(5) << row.n << "  " << std::left
                 << std::setw(static_cast<int>(digits) + 3) << row.probability_decimal
                 << std::right << "  " << row.abs_err_decimal << '\n';
      break;
    case OutputMode::Json: {
      Json j;
      j["command"] = "table";
      j["inputs"] = Json{{"max", n_max}, {"suits", s}};
      Json arr = Json::array();
      for (const auto& row : rows) {
        Json item;
        item["n"] = row.n;
        item["exact"] =
            em.format().exact ? Json(row.probability.str()) : Json(nullptr);
        item["p_n"] = row.probability_decimal;
        item["abs_err_vs_limit"] = row.abs_err_decimal;
        arr.push_back(std::move(item));
      }
      j["rows"] = std::move(arr);
      j["limit"] = asymptotic_limit(s, digits);
      j["digits"] = digits;
      j["metadata"] = Json{{"runtime_ms", em.runtime_ms()}};
      em.raw() << j.dump() << '\n';
      break;
    }
  }
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
      std::find(kCommands.begin(), kCommands.end(), args[0]) == kCommands.end()) {
    err << "error: unknown command '" << args[0] << "'\n";
    return kUsage;
  }

  CLI::App app{"Exact derangement, rank-derangement and Treize calculator"};
  app.require_subcommand(1);

  std::string format_name = "plain";
  bool format_given = false;
  OutputFormat format;
  app.add_option_function<std::string>(
         "--format",
         [&](const std::string& v) {
           format_name = v;
           format_given = true;
         },
         "Output format")
      ->check(CLI::IsMember({"plain", "json", "csv"}));
  app.add_option("--digits", format.digits, "Places after the decimal point")
      ->check(CLI::Range(0u, 100000u));
  bool truncate = false;
  app.add_flag("--truncate", truncate,
               "Truncate decimals instead of rounding half to even");

  DeckSpec spec;
  auto add_deck = [&](CLI::App* sub) {
    sub->add_option("--ranks", spec.n_ranks, "Number of ranks")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--suits", spec.s_suits, "Number of suits")
        ->required()
        ->check(CLI::NonNegativeNumber);
  };

  unsigned n_arg = 0;
  auto* derange = app.add_subcommand("derange", "Derangement count D(n)");
  derange->add_option("n", n_arg)->required()->check(CLI::NonNegativeNumber);
  auto* derange_prob = app.add_subcommand("derange-prob", "D(n)/n!");
  derange_prob->add_option("n", n_arg)->required()->check(CLI::PositiveNumber);

  bool want_count = false, want_prob = false;
  auto* rank = app.add_subcommand("rankderange", "Rank-derangement count or probability");
  add_deck(rank);
  auto* count_flag = rank->add_flag("--count", want_count, "Print R(n,s)");
  rank->add_flag("--prob", want_prob, "Print R(n,s)/(ns)!")->excludes(count_flag);

  bool complement = false;
  auto* prefix = app.add_subcommand("prefix-prob",
                                    "Probability the first n cards give no match");
  add_deck(prefix);
  prefix->add_flag("--complement", complement,
                   "Print the dealer's first-round win probability instead");

  unsigned n_max = 0;
  auto* table = app.add_subcommand("table", "p_n = R(n,s)/(ns)! for n = 1..max");
  table->add_option("--max", n_max)->required()->check(CLI::PositiveNumber);
  table->add_option("--suits", spec.s_suits)->required()->check(CLI::PositiveNumber);

  bool treize_exact = false, treize_approx = false, treize_sim = false;
  std::size_t max_states = SolverOptions{}.max_states;
  unsigned bits = SolverOptions{}.precision_bits;
  std::string dump_path;
  std::uint64_t trials = 1'000'000, seed = 1;
  int threads = 0;
  std::uint64_t round_cap = 1'000'000;
  auto* treize = app.add_subcommand("treize", "Expected value of Treize to the dealer");
  add_deck(treize);
  auto* ex = treize->add_flag("--exact", treize_exact, "Exact rational solve (default)");
  auto* ap = treize->add_flag("--approx", treize_approx,
                              "High-precision floating solve")->excludes(ex);
  treize->add_flag("--simulate", treize_sim, "Monte Carlo estimate")->excludes(ex)->excludes(ap);
  treize->add_option("--max-states", max_states, "Solver state budget")
      ->check(CLI::PositiveNumber);
  treize->add_option("--bits", bits, "Mantissa bits for --approx")
      ->check(CLI::Range(170u, 1u << 20));
  treize->add_option("--dump", dump_path, "Write every solved state to this file");
  treize->add_option("--trials", trials)->check(CLI::PositiveNumber);
  treize->add_option("--seed", seed);
  treize->add_option("--threads", threads)->check(CLI::NonNegativeNumber);
  treize->add_option("--round-cap", round_cap)->check(CLI::PositiveNumber);

  std::string game_arg;
  std::string trials_csv;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate");
  simulate->add_option("--game", game_arg)
      ->required()
      ->check(CLI::IsMember(
          {"frustration", "frustration-matches", "exact", "treize", "treize-rounds"}));
  add_deck(simulate);
  simulate->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed)->required();
  simulate->add_option("--threads", threads)->check(CLI::NonNegativeNumber);
  simulate->add_option("--round-cap", round_cap)->check(CLI::PositiveNumber);
  simulate->add_option("--trials-csv", trials_csv, "Write per-trial outcomes as CSV");

  auto* limit = app.add_subcommand("limit", "e^{-s}, the large-n limit of p_n");
  limit->add_option("--suits", spec.s_suits)->required()->check(CLI::PositiveNumber);

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
    // treize's --exact selects the solver and prints the fraction.
    if (sub != treize) sub->add_flag("--exact", format.exact, "Also print the exact fraction");
  }

  std::ostringstream buffer;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, buffer, err);
    if (code == 0) out << buffer.str();
    return code == 0 ? kOk : kUsage;
  }

  if (truncate) format.rounding = Rounding::TowardZero;
  if (format_name == "json") format.mode = OutputMode::Json;
  if (format_name == "csv") format.mode = OutputMode::Csv;
  if (!format_given && table->parsed()) format.mode = OutputMode::Csv;

  Emitter em(format, buffer);
  try {
    if (derange->parsed()) {
      Result r = integer_result("derange", derangement_count(n_arg));
      r.inputs["n"] = n_arg;
      em.value(std::move(r));
    } else if (derange_prob->parsed()) {
      Result r = rational_result("derange-prob", derangement_probability(n_arg), format);
      r.inputs["n"] = n_arg;
      em.value(std::move(r));
    } else if (rank->parsed()) {
      spec.validate();
      Result r = want_prob ? rational_result("rankderange",
                                             rank_derangement_probability(spec),
                                             format)
                           : integer_result("rankderange", rank_derangement_count(spec));
      r.inputs = deck_inputs(spec);
      r.inputs["mode"] = want_prob ? "prob" : "count";
      em.value(std::move(r));
    } else if (prefix->parsed()) {
      spec.validate();
      const Rational p = complement ? first_round_dealer_win_probability(spec)
                                    : no_match_prefix_probability(spec);
      Result r = rational_result("prefix-prob", p, format);
      r.inputs = deck_inputs(spec);
      r.inputs["complement"] = complement;
      em.value(std::move(r));
    } else if (table->parsed()) {
      spec.validate();
      emit_table(em, n_max, spec.s_suits);
    } else if (limit->parsed()) {
      spec.validate();
      Result r;
      r.command = "limit";
      r.inputs = Json{{"suits", spec.s_suits}};
      r.decimal = asymptotic_limit(spec.s_suits, format.digits, format.rounding);
      em.value(std::move(r));
    } else if (treize->parsed()) {
      const TreizeConfig config{spec};
      validate_config(config);
      if (treize_sim) {
        SimConfig cfg{seed, trials, spec, round_cap, threads};
        emit_estimate(em, "treize", Game::Treize, cfg, estimate(cfg, Game::Treize));
      } else {
        SolverOptions opts;
        opts.max_states = max_states;
        opts.arithmetic = treize_approx ? Arithmetic::HighPrecision : Arithmetic::Exact;
        opts.precision_bits = bits;
        opts.keep_states = !dump_path.empty();
        const TreizeSolution sol = solve_treize(config, opts);
        if (!dump_path.empty()) {
          std::ofstream f(dump_path);
          dump_states(f, sol);
          if (!f) {
            err << "error: cannot write state dump to '" << dump_path << "'\n";
            return kIo;
          }
        }
        Result r;
        r.command = "treize";
        r.inputs = deck_inputs(spec);
        r.inputs["mode"] = treize_approx ? "approx" : "exact";
        if (sol.value.is_exact()) {
          r.exact = sol.value.exact;
          r.decimal = render_decimal(*sol.value.exact, format.digits, format.rounding);
        } else {
          r.decimal = render_decimal(sol.value.approx,
                                     std::min(format.digits, sol.value.reliable_digits));
          r.metadata["approximate"] = true;
          r.metadata["reliable_digits"] = sol.value.reliable_digits;
        }
        r.metadata["states"] = sol.state_count;
        if (format.mode == OutputMode::Plain) {
          buffer << r.decimal << '\n';
          if (r.exact && (format.exact || treize_exact)) buffer << r.exact->str() << '\n';
          if (!r.exact)
            err << "note: approximate value, " << sol.value.reliable_digits
                << " reliable places\n";
        } else {
          if (treize_exact) format.exact = true;
          em.value(std::move(r));
        }
      }
    } else if (simulate->parsed()) {
      const Game game = parse_game(game_arg);
      SimConfig cfg{seed, trials, spec, round_cap, threads};
      const Estimate e = estimate(cfg, game);
      if (!trials_csv.empty()) {
        const auto outcomes = trial_outcomes(cfg, game);
        std::ofstream f(trials_csv);
        f << "trial,outcome\n";
        for (std::size_t i = 0; i < outcomes.size(); ++i) f << i << ',' << outcomes[i] << '\n';
        if (!f) {
          err << "error: cannot write trial CSV to '" << trials_csv << "'\n";
          return kIo;
        }
      }
      emit_estimate(em, "simulate", game, cfg, e);
    }
  } catch (const TreizeConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const InvalidDeck& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const StateBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const RoundCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kRoundCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  out << buffer.str();
  out.flush();
  return kOk;
}

}  // namespace montmort::cli
