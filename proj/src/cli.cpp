#include "recurshift/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "recurshift/claims.hpp"
#include "recurshift/config.hpp"
#include "recurshift/errors.hpp"
#include "recurshift/language.hpp"
#include "recurshift/metric.hpp"
#include "recurshift/omega.hpp"
#include "recurshift/probes.hpp"
#include "recurshift/recurrence.hpp"
#include "recurshift/serialize.hpp"

namespace recurshift::cli {

namespace {

struct Outcome {
  Status status = Status::Pass;
  Json witnesses = Json::array();
  std::string text;
};

struct Timer {
  Json* sink;
  std::string name;
  bool enabled;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  ~Timer() {
    if (!enabled) return;
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    (*sink)[name] = ms;
  }
};

Index to_index(const std::string& text, const char* what) {
  try {
    return parse_index(text);
  } catch (const std::invalid_argument&) {
    throw InvalidArgument(std::string("bad integer for ") + what + ": '" + text + "'");
  }
}

int to_int(const std::string& text, const char* what) {
  const Index v = to_index(text, what);
  if (v < INT32_MIN || v > INT32_MAX) throw InvalidArgument(std::string(what) + " out of range");
  return static_cast<int>(v);
}

std::int64_t dyadic_exponent_below_one(const std::string& text, const char* what) {
  const Dyadic d = Dyadic::parse(text);
  if (d.is_zero() || d.exponent() > 0) throw InvalidArgument(std::string(what) + " must be 2^-k with k >= 0");
  return -d.exponent();
}

int exit_code(Status s) {
  switch (s) {
    case Status::Pass:
      return kPass;
    case Status::Fail:
      return kFail;
    case Status::Inconclusive:
      return kInconclusive;
  }
  return kFail;
}

// Every option of the app and the chosen subcommand, by long name. Values are
// the option strings as given, or the default.
Json capture_config(const CLI::App& app, const CLI::App& sub) {
  Json config = Json::object();
  config["command"] = sub.get_name();
  auto add = [&](const CLI::App& a) {
    for (const CLI::Option* opt : a.get_options()) {
      if (opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames().front();
      if (name == "help") continue;
      if (opt->get_type_size() == 0) {
        config[name] = opt->count() > 0;
      } else if (opt->get_expected_max() > 1) {
        Json values = Json::array();
        for (const auto& v : opt->results()) values.push_back(v);
        config[name] = std::move(values);
      } else if (opt->count() > 0) {
        config[name] = opt->results().back();
      } else if (!opt->get_default_str().empty()) {
        config[name] = opt->get_default_str();
      } else {
        config[name] = nullptr;
      }
    }
  };
  add(app);
  add(sub);
  return config;
}

std::string claim_text(const ClaimReport& r) {
  std::ostringstream s;
  s << "claim " << r.claim_id << ": " << to_string(r.status) << "\n";
  for (const auto& [k, v] : r.counters.items()) s << "  " << k << " = " << v.dump() << "\n";
  s << "  witnesses: " << r.witnesses.size() << "\n";
  const std::size_t shown = std::min<std::size_t>(r.witnesses.size(), 8);
  for (std::size_t i = 0; i < shown; ++i) {
    s << "    (";
    for (std::size_t j = 0; j < r.witnesses[i].size(); ++j) s << (j ? ", " : "") << to_string(r.witnesses[i][j]);
    s << ")\n";
  }
  if (!r.counterexamples.empty()) s << "  counterexamples: " << r.counterexamples.size() << "\n";
  if (!r.unresolved.empty()) s << "  unresolved: " << r.unresolved.size() << "\n";
  for (const auto& n : r.notes) s << "  note: " << n << "\n";
  return s.str();
}

std::string probe_text(const ProbeReport& r) {
  std::ostringstream s;
  s << "probe " << r.probe << " (seed " << r.seed << "): " << to_string(r.status) << "\n";
  s << "  entries: " << r.entries.size() << "\n";
  for (const auto& [k, v] : r.summary.items()) s << "  " << k << " = " << v.dump() << "\n";
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explore the sequence xi, its words omega_n and the subshift they generate", "recurshift"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  std::string format = "text";
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string output;
  bool timings = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "Seed for sampled probes");
  app.add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--output", output, "Write the report to this file instead of stdout");
  app.add_flag("--timings", timings, "Record wall-clock timings in the JSON report");

  std::map<std::string, std::function<Outcome()>> handlers;
  Json timing = Json::object();

  // gen
  auto* gen = app.add_subcommand("gen", "Print omega_n or a segment of xi");
  std::string gen_omega, gen_from, gen_to;
  gen->add_option("--omega", gen_omega, "Index n of omega_n");
  gen->add_option("--from", gen_from, "First xi coordinate");
  gen->add_option("--to", gen_to, "Last xi coordinate");
  handlers["gen"] = [&] {
    Outcome o;
    Json w = Json::object();
    Word word;
    if (!gen_omega.empty()) {
      if (!gen_from.empty() || !gen_to.empty()) throw InvalidArgument("use either --omega or --from/--to");
      const int n = to_int(gen_omega, "--omega");
      word = omega_word(n, materialize_cap());
      w["omega"] = n;
    } else {
      if (gen_from.empty() || gen_to.empty()) throw InvalidArgument("gen needs --omega or both --from and --to");
      const Index a = to_index(gen_from, "--from");
      const Index b = to_index(gen_to, "--to");
      word = xi_segment(a, b);
      w["from"] = index_json(a);
      w["to"] = index_json(b);
    }
    w["length"] = word.size();
    w["word"] = word.to_string();
    o.text = word.to_string() + "\n";
    o.witnesses.push_back(std::move(w));
    return o;
  };

  // query
  auto* query = app.add_subcommand("query", "Read coordinates of a point, or l_n");
  std::string query_point = "xi:0";
  std::vector<std::string> query_index;
  std::string query_length;
  query->add_option("--point", query_point, "zero | xi:<n> | rxi:<n>");
  query->add_option("--index", query_index, "Coordinate to read (repeatable)");
  query->add_option("--omega-length", query_length, "Print l_n for this n");
  handlers["query"] = [&] {
    Outcome o;
    if (!query_length.empty()) {
      const int n = to_int(query_length, "--omega-length");
      const Index len = omega_length(n);
      o.witnesses.push_back({{"n", n}, {"length", index_json(len)}});
      o.text = to_string(len) + "\n";
    }
    if (query_index.empty() && query_length.empty()) throw InvalidArgument("query needs --index or --omega-length");
    if (!query_index.empty()) {
      const PointDescriptor p = PointDescriptor::parse(query_point);
      for (const auto& text : query_index) {
        const Index i = to_index(text, "--index");
        const int v = point_at(p, i);
        o.witnesses.push_back({{"point", p.to_string()}, {"index", index_json(i)}, {"symbol", v}});
        o.text += std::to_string(v) + "\n";
      }
    }
    return o;
  };

  // factors
  auto* fac = app.add_subcommand("factors", "List the length-L factors of xi");
  std::string fac_length, fac_horizon;
  bool fac_count_only = false;
  fac->add_option("--length", fac_length, "Factor length L")->required();
  fac->add_option("--horizon-n", fac_horizon, "Scan up to l_h instead of growing until stable");
  fac->add_flag("--complexity", fac_count_only, "Print only the number of factors");
  handlers["factors"] = [&] {
    Outcome o;
    const int L = to_int(fac_length, "--length");
    if (L < 1) throw InvalidArgument("--length must be >= 1");
    FactorSet set;
    Json w = Json::object();
    if (!fac_horizon.empty()) {
      set = factors(static_cast<std::size_t>(L), to_int(fac_horizon, "--horizon-n"));
    } else {
      auto [s, n_stab] = factors_stabilized(static_cast<std::size_t>(L));
      set = std::move(s);
      w["n_stab"] = n_stab;
      if (!set.stabilized) o.status = Status::Inconclusive;
    }
    w["factors"] = to_json(set);
    o.witnesses.push_back(std::move(w));
    if (fac_count_only) {
      o.text = std::to_string(set.size()) + "\n";
    } else {
      for (const auto& word : set.words) o.text += word.to_string() + "\n";
    }
    return o;
  };

  // occurrences
  auto* occ = app.add_subcommand("occurrences", "Find occurrences of a word in xi");
  std::string occ_word, occ_from = "0", occ_to;
  occ->add_option("--word", occ_word, "Word over {0,1}")->required();
  occ->add_option("--from", occ_from, "First start position");
  occ->add_option("--to", occ_to, "Last start position")->required();
  handlers["occurrences"] = [&] {
    Outcome o;
    const Word w = Word::from_string(occ_word);
    if (w.empty()) throw InvalidArgument("--word must be nonempty");
    const IndexRange range{to_index(occ_from, "--from"), to_index(occ_to, "--to")};
    if (range.first > range.last) throw InvalidArgument("--from must not exceed --to");
    if (range.size() > materialize_cap()) throw CapExceeded("occurrence range exceeds the materialization cap");
    const OccurrenceReport rep = occurrences(w, range);
    Json j = to_json(rep);
    if (!rep.positions.empty()) j["max_gap_with_sentinels"] = index_json(max_gap(w, range));
    o.witnesses.push_back(std::move(j));
    for (Index p : rep.positions) o.text += to_string(p) + "\n";
    o.text += "max_gap " + (rep.max_gap ? to_string(*rep.max_gap) : std::string("unbounded-within-range")) + "\n";
    return o;
  };

  // verify
  auto* ver = app.add_subcommand("verify", "Run a claim sweep");
  std::string ver_claim;
  ClaimParams params;
  std::string ver_point = "xi:0", ver_horizon = "0";
  ver->add_option("--claim", ver_claim, "1 | 2a | 2b | 3 | 4 | recurrence | minimality")
      ->required()
      ->check(CLI::IsMember({"1", "2a", "2b", "3", "4", "recurrence", "minimality"}));
  ver->add_option("--n-max", params.n_max, "2a: largest n; minimality: largest omega index");
  ver->add_option("--k-max", params.k_max, "2b and 4: largest k");
  ver->add_option("--window-omega", params.window_omega, "2b: windows lie inside omega_n");
  ver->add_option("--point", ver_point, "3: descriptor");
  ver->add_option("--horizon", ver_horizon, "3: H (0 means l_10)");
  ver->add_option("--descriptor-radius", params.descriptor_radius, "recurrence: offsets |n| <= radius");
  ver->add_option("--window-radius", params.window_radius, "recurrence: largest window radius N");
  ver->add_option("--horizon-n", params.horizon_n, "recurrence: scan shifts up to l_h");
  ver->add_option("--length-max", params.length_max, "minimality: zero words up to this length");
  ver->add_option("--factor-length-max", params.factor_length_max, "1: factor lengths");
  handlers["verify"] = [&] {
    Outcome o;
    params.jobs = jobs;
    params.point = PointDescriptor::parse(ver_point);
    params.horizon = to_index(ver_horizon, "--horizon");
    ClaimReport r;
    {
      Timer t{&timing, "verify", timings};
      r = verify_claim(ver_claim, params);
    }
    if (!replay_witnesses(r)) {
      r.status = Status::Fail;
      r.notes.push_back("witness replay against xi_at failed");
    }
    o.status = r.status;
    o.witnesses.push_back(r.to_json());
    o.text = claim_text(r);
    return o;
  };

  // classify
  auto* cls = app.add_subcommand("classify", "Search returns of a point in both directions");
  std::string cls_point, cls_horizon, cls_horizon_n = "20";
  int cls_window = 4;
  std::size_t cls_count = 4;
  cls->add_option("--point", cls_point, "zero | xi:<n> | rxi:<n>")->required();
  cls->add_option("--window", cls_window, "Largest window radius N")->check(CLI::PositiveNumber);
  cls->add_option("--horizon-n", cls_horizon_n, "Scan shifts |s| <= l_h");
  cls->add_option("--horizon", cls_horizon, "Scan shifts |s| <= H (overrides --horizon-n)");
  cls->add_option("--count", cls_count, "Returns listed per direction at the largest radius");
  handlers["classify"] = [&] {
    Outcome o;
    const PointDescriptor p = PointDescriptor::parse(cls_point);
    const Index horizon =
        cls_horizon.empty() ? omega_length(to_int(cls_horizon_n, "--horizon-n")) : to_index(cls_horizon, "--horizon");
    RecurrenceReport r;
    {
      Timer t{&timing, "classify", timings};
      r = classify_point(p, cls_window, horizon, cls_count);
    }
    o.status = r.verdict == Verdict::NoneWithinHorizon ? Status::Inconclusive : Status::Pass;
    o.witnesses.push_back(to_json(r));
    std::ostringstream s;
    s << r.point.to_string() << ": " << to_string(r.verdict) << "\n";
    auto list = [](const std::vector<Index>& v) {
      std::string t;
      for (Index x : v) t += " " + to_string(x);
      return t.empty() ? std::string(" none") : t;
    };
    s << "  positive returns (N=" << r.window_radius << "):" << list(r.positive_returns) << "\n";
    s << "  negative returns (N=" << r.window_radius << "):" << list(r.negative_returns) << "\n";
    if (r.structural_note) s << "  structural: " << *r.structural_note << "\n";
    o.text = s.str();
    return o;
  };

  // metric
  auto* met = app.add_subcommand("metric", "Distance and local stable set membership");
  std::string met_x, met_y, met_resolution = "64", met_epsilon, met_horizon = "64";
  met->add_option("--x", met_x, "Point, e.g. xi:3 or xi:3+flip{-4}")->required();
  met->add_option("--y", met_y, "Point")->required();
  met->add_option("--resolution", met_resolution, "Search |i| <= resolution");
  met->add_option("--epsilon", met_epsilon, "Also test y in W^s_eps(x), eps = 2^-e");
  met->add_option("--horizon", met_horizon, "Forward iterates checked for membership");
  handlers["metric"] = [&] {
    Outcome o;
    const PerturbedPoint x = PerturbedPoint::parse(met_x);
    const PerturbedPoint y = PerturbedPoint::parse(met_y);
    const MetricValue d = distance(x, y, to_index(met_resolution, "--resolution"));
    Json w = Json::object();
    w["x"] = x.to_string();
    w["y"] = y.to_string();
    w["distance"] = to_json(d);
    o.text = "distance " + d.value.to_string() + (d.certified ? "" : " (upper bound)") + "\n";
    if (!met_epsilon.empty()) {
      const std::int64_t e = dyadic_exponent_below_one(met_epsilon, "--epsilon");
      const StableMembership m = stable_membership(x, y, e, to_index(met_horizon, "--horizon"));
      w["stable"] = to_json(m);
      if (!m.decomposition_ok) o.status = Status::Fail;
      o.text += std::string("stable member ") + (m.member ? "yes" : "no") + (m.certified ? "" : " (uncertified)") +
                ", cutoff " + to_string(m.cutoff) + "\n";
    }
    o.witnesses.push_back(std::move(w));
    return o;
  };

  // probe
  auto* prb = app.add_subcommand("probe", "Sampled metric checks");
  std::string prb_kind;
  std::size_t prb_samples = 0;
  std::int64_t prb_offset = 1000;
  std::string prb_c = "1/2", prb_power = "1", prb_budget, prb_a = "1", prb_lambda = "1/2", prb_gamma = "1/2";
  std::string prb_A = "2", prb_N, prb_delta, prb_epsilon, prb_horizon;
  std::string prb_resolution = "4096", prb_search = "1048576";
  std::size_t prb_length = 32, prb_trials = 20;
  prb->add_option("--kind", prb_kind, "expansivity | stable | hyperbolic | fn-scaling | lemma | distality | potp")
      ->required()
      ->check(CLI::IsMember({"expansivity", "stable", "hyperbolic", "fn-scaling", "lemma", "distality", "potp"}));
  prb->add_option("--samples", prb_samples, "Number of sampled pairs or triples (0 picks the default)");
  prb->add_option("--max-offset", prb_offset, "Largest |n| in sampled descriptors");
  prb->add_option("--c", prb_c, "expansivity: constant c");
  prb->add_option("--power", prb_power, "expansivity: shifts are multiples of this");
  prb->add_option("--budget", prb_budget, "Iterate budget (default 32; expansivity: largest |n|, default 4096)");
  prb->add_option("--a", prb_a, "hyperbolic: prefactor a");
  prb->add_option("--lambda", prb_lambda, "hyperbolic: rate lambda");
  prb->add_option("--gamma", prb_gamma, "hyperbolic: local set scale gamma");
  prb->add_option("--A", prb_A, "fn-scaling, lemma: expansion factor A");
  prb->add_option("--N", prb_N, "fn-scaling: power N (default log2 A)");
  prb->add_option("--delta", prb_delta, "fn-scaling, lemma: delta (default 1/2); potp: delta (default 1/16)");
  prb->add_option("--epsilon", prb_epsilon, "stable: epsilon (default 1/2); potp: epsilon (default 1/4)");
  prb->add_option("--horizon", prb_horizon, "stable: horizon (default 64); distality: horizon (default 256)");
  prb->add_option("--resolution", prb_resolution, "lemma: resolution");
  prb->add_option("--length", prb_length, "potp: pseudo-orbit length");
  prb->add_option("--trials", prb_trials, "potp: trials");
  prb->add_option("--search-budget", prb_search, "potp: |shift| searched for a tracing point");
  handlers["probe"] = [&] {
    Outcome o;
    Rng rng(seed);
    auto samples = [&](std::size_t fallback) { return prb_samples ? prb_samples : fallback; };
    auto pick = [](const std::string& given, const char* fallback) { return given.empty() ? std::string(fallback) : given; };
    const Index budget = to_index(pick(prb_budget, prb_kind == "expansivity" ? "4096" : "32"), "--budget");
    const std::string delta = pick(prb_delta, prb_kind == "potp" ? "1/16" : "1/2");
    const std::string eps = pick(prb_epsilon, prb_kind == "potp" ? "1/4" : "1/2");
    const Index horizon = to_index(pick(prb_horizon, prb_kind == "distality" ? "256" : "64"), "--horizon");
    ProbeReport r;
    Timer t{&timing, "probe", timings};
    if (prb_kind == "expansivity") {
      const auto pairs = sample_mixed_pairs(rng, samples(1000), prb_offset);
      r = expansivity_probe(pairs, Dyadic::parse(prb_c), to_index(prb_power, "--power"), budget, seed);
    } else if (prb_kind == "stable") {
      const std::size_t n = samples(200);
      auto pairs = sample_stable_pairs(rng, n / 2, 1, 20, prb_offset);
      for (auto& p : sample_unstable_pairs(rng, n - n / 2, 1, 20, prb_offset)) pairs.push_back(std::move(p));
      r = stable_probe(pairs, dyadic_exponent_below_one(eps, "--epsilon"), horizon, seed);
    } else if (prb_kind == "hyperbolic") {
      const std::int64_t g = dyadic_exponent_below_one(prb_gamma, "--gamma");
      const std::size_t n = samples(1000);
      const std::int64_t lo = std::max<std::int64_t>(1, g);
      const auto stable = sample_stable_pairs(rng, n, lo, lo + 40, prb_offset);
      const auto unstable = sample_unstable_pairs(rng, n, lo, lo + 40, prb_offset);
      r = hyperbolic_probe(stable, unstable, Dyadic::parse(prb_a), Dyadic::parse(prb_lambda), Dyadic::parse(prb_gamma),
                           budget, seed);
    } else if (prb_kind == "fn-scaling") {
      const Dyadic A = Dyadic::parse(prb_A);
      const Index N = prb_N.empty() ? Index{A.is_zero() ? 0 : std::max<std::int64_t>(A.exponent(), 1)}
                                    : to_index(prb_N, "--N");
      const std::int64_t de = dyadic_exponent_below_one(delta, "--delta");
      const std::int64_t lo = std::max<std::int64_t>(de, static_cast<std::int64_t>(N));
      const auto pairs = sample_stable_pairs(rng, samples(1000), lo, lo + 40, prb_offset);
      r = fn_scaling_probe(A, N, Dyadic::parse(delta), pairs, budget, seed);
    } else if (prb_kind == "lemma") {
      const std::int64_t de = dyadic_exponent_below_one(delta, "--delta");
      const auto triples = sample_stable_triples(rng, samples(1000), de, prb_offset);
      r = lemma_probe(Dyadic::parse(delta), triples, Dyadic::parse(prb_A), budget,
                      to_index(prb_resolution, "--resolution"), seed);
    } else if (prb_kind == "distality") {
      const auto pairs = sample_mixed_pairs(rng, samples(50), prb_offset);
      r = distality_probe(pairs, horizon, seed);
    } else {
      r = potp_probe(Dyadic::parse(delta), Dyadic::parse(eps), prb_length, prb_trials, seed,
                     to_index(prb_search, "--search-budget"));
    }
    o.status = r.status;
    o.witnesses.push_back(r.to_json());
    o.text = probe_text(r);
    return o;
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Outcome outcome;
  try {
    outcome = handlers.at(sub->get_name())();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n" << sub->help();
    return kUsage;
  } catch (const PairEqual& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NoOccurrence& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    // Cap, capacity and budget limits: the run could not reach a verdict.
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n" << sub->help();
    return kUsage;
  }

  std::string rendered;
  if (format == "json") {
    Json report = Json::object();
    report["command"] = sub->get_name();
    report["config"] = capture_config(app, *sub);
    report["seed"] = seed;
    report["status"] = to_string(outcome.status);
    report["witnesses"] = std::move(outcome.witnesses);
    report["timings_ms"] = timing;
    rendered = report.dump(2) + "\n";
  } else {
    rendered = outcome.text;
  }
  if (output.empty()) {
    out << rendered;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << output << "\n";
      return kUsage;
    }
    file << rendered;
  }
  return exit_code(outcome.status);
}

}  // namespace recurshift::cli
