#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "chorefair/core.hpp"
#include "chorefair/ido.hpp"
#include "chorefair/instances.hpp"
#include "chorefair/mms.hpp"
#include "chorefair/rng.hpp"
#include "chorefair/strategyproof.hpp"
#include "chorefair/verify.hpp"

namespace chorefair::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string instance;
  std::string algorithm = "sesqui-rr";
  std::string pattern;
  std::string schedule = "log";
  std::string out;
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  std::uint64_t budget = 0;
  std::size_t n = 2;
  std::size_t m = 4;
};

MmsOptions mms_options_from_env() {
  MmsOptions options;
  if (const char* raw = std::getenv("CHOREFAIR_MAX_EXACT_M")) {
    const std::string_view text(raw);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      throw Error(ErrorKind::kValidation, "CHOREFAIR_MAX_EXACT_M must be a nonnegative integer");
    }
    options.max_exact_items = value;
  }
  return options;
}

json fraction_json(const Fraction& f) {
  json doc = to_json(f);
  doc["str"] = f.str();
  doc["decimal"] = f.decimal();
  return doc;
}

json one_based(const std::vector<std::size_t>& indices) {
  json out = json::array();
  for (std::size_t v : indices) out.push_back(v + 1);
  return out;
}

Sequencer sequencer_for(const Options& o) {
  if (o.algorithm == "pattern") {
    if (o.pattern.empty()) throw Error(ErrorKind::kValidation, "--algorithm pattern needs --pattern");
    return Sequencer::parse("pattern:" + o.pattern);
  }
  return Sequencer::parse(o.algorithm);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::kMalformedInput, "cannot write " + path);
  file << text;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Instance inst = read_instance(o.instance);
  const OrdinalProfile profile = ordinal_of(inst);
  const MmsOptions mms_opts = mms_options_from_env();

  json report{{"algorithm", o.algorithm}};
  std::optional<Allocation> alloc;
  if (o.algorithm == "consecutive-pick") {
    const PickSchedule schedule = parse_schedule(o.schedule, inst.agents(), inst.items());
    alloc = consecutive_pick(profile, schedule);
    report["schedule"] = schedule.quotas();
    report["schedule_bound"] = fraction_json(schedule_ratio_bound(schedule));
  } else if (o.algorithm == "random-decline") {
    RandomOutcome outcome = random_decline(profile, o.seed);
    alloc = outcome.allocation;
    report["seed"] = outcome.seed;
    report["reclaimed"] = one_based(outcome.reclaimed);
  } else {
    const Sequencer sequencer = sequencer_for(o);
    report["algorithm"] = sequencer.name();
    alloc = run_ordinal(profile, sequencer);
  }

  const MmsValues shares = mms_all(inst, mms_opts);
  const RatioReport ratios = ratio_against(inst, *alloc, shares.values);
  json agents = json::array();
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    agents.push_back({{"agent", i + 1},
                      {"cost", bundle_cost(inst, i, alloc->bundle(i))},
                      {"mms", shares.values[i]},
                      {"ratio", fraction_json(ratios.per_agent[i])}});
  }
  report["allocation"] = allocation_to_json(*alloc);
  report["agents"] = std::move(agents);
  report["worst"] = fraction_json(ratios.worst);
  if (!o.out.empty()) write_allocation(o.out, *alloc);
  out << report.dump(2) << '\n';
  return kExitOk;
}

int cmd_mms(const Options& o, std::ostream& out) {
  const Instance inst = read_instance(o.instance);
  const MmsValues shares = mms_all(inst, mms_options_from_env());
  json agents = json::array();
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    const MmsLowerBounds bounds = lemma1_bounds(inst, i);
    agents.push_back({{"agent", i + 1},
                      {"mms", shares.values[i]},
                      {"average", fraction_json(bounds.average)},
                      {"max_item", bounds.max_item},
                      {"lower_bound", bounds.combined()}});
  }
  out << json{{"n", inst.agents()}, {"m", inst.items()}, {"agents", agents}}.dump(2) << '\n';
  return kExitOk;
}

int cmd_sp_test(const Options& o, std::ostream& out) {
  if (o.n == 0 || o.m == 0) throw Error(ErrorKind::kValidation, "--n and --m must be positive");
  const std::uint64_t budget = o.budget == 0 ? 720 : o.budget;
  const Mechanism mechanism = make_mechanism(o.algorithm, o.n, o.m, o.schedule);
  if (!o.out.empty()) std::filesystem::create_directories(o.out);

  std::uint64_t searches = 0;
  std::uint64_t evaluated = 0;
  std::uint64_t found = 0;
  bool exhaustive = true;
  json witnesses = json::array();
  for (std::uint64_t t = 0; t < o.trials; ++t) {
    const Instance inst = gen_random(o.n, o.m, 9, derive_seed(o.seed, t));
    const OrdinalProfile truthful = ordinal_of(inst);
    for (std::size_t agent = 0; agent < o.n; ++agent) {
      const ManipulationSearch result = manipulation_search(
          inst, mechanism, agent, budget, derive_seed(o.seed ^ 0x5eedULL, t * o.n + agent));
      ++searches;
      evaluated += result.evaluated;
      exhaustive = exhaustive && result.exhaustive;
      if (!result.best) continue;
      ++found;
      json witness{{"trial", t},
                   {"agent", agent + 1},
                   {"instance", instance_to_json(inst)},
                   {"truthful_ranking", one_based(truthful.ranking(agent))},
                   {"misreport", one_based(result.best->ranking)},
                   {"truthful_cost", fraction_json(result.best->truthful_cost)},
                   {"manipulated_cost", fraction_json(result.best->manipulated_cost)}};
      if (!o.out.empty()) {
        std::ofstream file(std::filesystem::path(o.out) /
                           ("witness_" + std::to_string(found) + ".json"));
        file << witness.dump(2) << '\n';
      }
      if (witnesses.size() < 5) witnesses.push_back(std::move(witness));
    }
  }
  out << json{{"mechanism", mechanism.name()},
              {"n", o.n},
              {"m", o.m},
              {"instances", o.trials},
              {"searches", searches},
              {"evaluated", evaluated},
              {"exhaustive", exhaustive},
              {"manipulations", found},
              {"witnesses", witnesses}}
             .dump(2)
      << '\n';
  return kExitOk;
}

struct BenchRow {
  std::string id;
  std::string algorithm;
  Fraction worst;
};

OrdinalProfile identical_profile(std::size_t agents, std::size_t items) {
  std::vector<std::size_t> ranking(items);
  for (std::size_t j = 0; j < items; ++j) ranking[j] = j;
  return OrdinalProfile::from_rankings(std::vector<std::vector<std::size_t>>(agents, ranking));
}

void bench_grid(std::size_t agents, std::vector<std::size_t> sizes, std::vector<Cost> grid,
                std::uint64_t budget, const MmsOptions& opts, std::vector<BenchRow>& rows) {
  for (std::size_t m : sizes) {
    const OrdinalProfile profile = identical_profile(agents, m);
    for (const char* name : {"sesqui-rr", "round-robin"}) {
      const Allocation alloc = run_ordinal(profile, Sequencer::parse(name));
      const WorstRatio worst = worst_ratio_search(profile, alloc, grid, budget, opts);
      rows.push_back({"grid-n" + std::to_string(agents) + "-m" + std::to_string(m), name,
                      worst.ratio});
    }
  }
}

int cmd_bench(const Options& o, std::ostream& out) {
  const MmsOptions opts = mms_options_from_env();
  const std::uint64_t budget = o.budget == 0 ? 10'000'000 : o.budget;
  std::vector<BenchRow> rows;
  if (o.suite == "grid-n2") {
    bench_grid(2, {4, 5, 6}, {0, 1, 2, 3}, budget, opts, rows);
  } else if (o.suite == "grid-n3") {
    bench_grid(3, {5, 6, 7}, {0, 1, 2}, budget, opts, rows);
  } else if (o.suite == "random-n4plus") {
    for (std::size_t n = 4; n <= 8; ++n) {
      for (const char* name : {"sesqui-rr", "round-robin"}) {
        const Sequencer sequencer = Sequencer::parse(name);
        Fraction worst(0);
        for (std::uint64_t t = 0; t < o.trials; ++t) {
          const std::uint64_t s = derive_seed(o.seed + n, t);
          const std::size_t m = n + Rng(s).uniform(13 - n);
          const Instance inst = gen_random(n, m, 9, s);
          const Allocation alloc = run_ordinal(ordinal_of(inst), sequencer);
          worst = std::max(worst, ratio_of(inst, alloc, opts).worst);
        }
        rows.push_back({"random-n" + std::to_string(n), name, worst});
      }
    }
  } else if (o.suite == "lowerbounds") {
    rows.push_back({"lb-n2-m04", "certificate", lower_bound_certify_n2().bound});
    for (std::size_t m = 5; m <= 13; m += 2) {
      const Certificate cert = lower_bound_certify_n3(m, budget);
      rows.push_back({std::string("lb-n3-m") + (m < 10 ? "0" : "") + std::to_string(m),
                      "certificate", cert.bound});
    }
  } else {
    throw Error(ErrorKind::kUnknownAlgorithm, "unknown suite '" + o.suite + "'");
  }

  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.id, a.algorithm) < std::tie(b.id, b.algorithm);
  });
  std::ostringstream csv;
  csv << "instance_id,algorithm,worst_num,worst_den,worst_decimal\n";
  for (const auto& row : rows) {
    const json f = to_json(row.worst);
    csv << row.id << ',' << row.algorithm << ',' << f["num"] << ',' << f["den"] << ','
        << row.worst.decimal() << '\n';
  }
  emit(o.out, csv.str(), out);
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out) {
  Certificate cert = [&] {
    if (o.n == 2) return lower_bound_certify_n2();
    if (o.n == 3) return lower_bound_certify_n3(o.m, o.budget == 0 ? 14'348'907 : o.budget);
    throw Error(ErrorKind::kValidation, "certificates exist for n = 2 and n = 3 only");
  }();
  emit(o.out, cert.to_json().dump(2) + "\n", out);
  return kExitOk;
}

void write_error(std::ostream& err, std::string_view kind, std::string_view message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Maximin-share allocation of indivisible chores", "chorefair"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Allocate an instance and report MMS ratios");
  solve->add_option("--instance", o.instance, "Instance JSON file")->required();
  solve->add_option("--algorithm", o.algorithm,
                    "sesqui-rr, round-robin, pattern, pattern:<p>, consecutive-pick, "
                    "random-decline");
  solve->add_option("--pattern", o.pattern, "One-based agents, e.g. 1,2,2");
  solve->add_option("--schedule", o.schedule, "log, const:<r> or explicit:<a1,...,an>");
  solve->add_option("--seed", o.seed, "Seed for random-decline");
  solve->add_option("--out", o.out, "Write the allocation JSON here");

  auto* mms = app.add_subcommand("mms", "Print each agent's maximin share");
  mms->add_option("--instance", o.instance, "Instance JSON file")->required();

  auto* sp = app.add_subcommand("sp-test", "Search random instances for profitable misreports");
  sp->add_option("--algorithm", o.algorithm,
                 "round-robin, sesqui-rr, consecutive-pick, random-decline, dictatorship");
  sp->add_option("--n", o.n, "Agents");
  sp->add_option("--m", o.m, "Items");
  sp->add_option("--budget", o.budget, "Rankings tried per agent (default 720)");
  sp->add_option("--seed", o.seed, "Seed for instances and sampling");
  sp->add_option("--trials", o.trials, "Number of random instances");
  sp->add_option("--schedule", o.schedule, "Schedule for consecutive-pick");
  sp->add_option("--out", o.out, "Directory for witness files");

  auto* bench = app.add_subcommand("bench", "Write a CSV of worst ratios for a suite");
  bench->add_option("--suite", o.suite, "grid-n2, grid-n3, random-n4plus or lowerbounds")
      ->required();
  bench->add_option("--out", o.out, "CSV path (stdout if omitted)");
  bench->add_option("--seed", o.seed, "Seed for random suites");
  bench->add_option("--trials", o.trials, "Instances per agent count in random suites");
  bench->add_option("--budget", o.budget, "Enumeration budget");

  auto* certify = app.add_subcommand("certify", "Certify the lower bound for n = 2 or 3");
  certify->add_option("--n", o.n, "2 or 3");
  certify->add_option("--m", o.m, "Odd item count for n = 3");
  certify->add_option("--budget", o.budget, "Largest number of allocations to enumerate");
  certify->add_option("--out", o.out, "Certificate path (stdout if omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (solve->parsed()) return cmd_solve(o, out);
    if (mms->parsed()) return cmd_mms(o, out);
    if (sp->parsed()) return cmd_sp_test(o, out);
    if (bench->parsed()) return cmd_bench(o, out);
    if (certify->parsed()) return cmd_certify(o, out);
    return kExitValidation;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    write_error(err, "Usage", e.what());
    return kExitValidation;
  } catch (const Error& e) {
    write_error(err, to_string(e.kind()), e.what());
    return is_limit_error(e.kind()) ? kExitLimit : kExitValidation;
  } catch (const std::exception& e) {
    write_error(err, "Internal", e.what());
    return kExitValidation;
  }
}

}  // namespace chorefair::cli
