// Command-line front end: exact laws and simulators for neutral allele
// frequencies, with reproducible seeds and machine-readable output.
//
// Conventions: JSON on stdout by default (CSV for tabular subcommands via
// --format csv; replicate streams print one JSON object per line); all
// randomness flows from a single --seed; no files are written unless --out
// is given; exit 0 on success, 1 on validation-suite failure, 2 on usage
// errors (with usage text on the diagnostic stream).

#include <popgen/popgen.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using ojson = nlohmann::ordered_json;

namespace {

struct Options {
  std::string theta = "1";
  std::string partition;       // comma-separated multiset of part sizes
  std::string counts;          // comma-separated age-ordered counts
  std::string two_n_text;      // decimal population size for lambda
  uint32_t n = 0;
  uint64_t two_n = 0;
  uint64_t exponent = 0;
  bool has_exponent = false;
  uint32_t rank = 1;
  uint32_t generations = 100;
  double u = 0.0;
  double c = 0.5;
  double p = 0.0;
  double epsilon = 1e-12;
  double theta_proposal = 0.0;
  uint64_t replicates = 0;
  uint64_t samples = 1000;
  uint64_t burnin = 0;
  uint64_t thin = 0;
  uint64_t seed = 42;
  bool exclude_self = false;
  bool population = false;
  bool exact_tail = false;
  std::string format = "json";
  std::string out_path;
};

std::vector<uint32_t> parse_parts(const std::string& text, const char* what) {
  std::vector<uint32_t> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": '" + tok + "' is not a positive integer");
    }
    if (pos != tok.size() || v == 0 || v > 0xFFFFFFFFull)
      throw std::invalid_argument(std::string(what) + ": '" + tok + "' is not a positive integer");
    parts.push_back(static_cast<uint32_t>(v));
  }
  if (parts.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  return parts;
}

ojson parts_json(const std::vector<uint32_t>& parts) {
  ojson a = ojson::array();
  for (uint32_t v : parts) a.push_back(v);
  return a;
}

ojson prob_map(const popgen::DiscreteDistribution& d) {
  ojson j = ojson::object();
  for (size_t i = 0; i < d.prob.size(); ++i)
    j[std::to_string(d.j_min + static_cast<int64_t>(i))] = d.prob[i];
  return j;
}

std::string num(double v) { return ojson(v).dump(); }

void write_map_csv(std::ostream& os, const popgen::DiscreteDistribution& d, const char* key) {
  os << key << ",probability\n";
  for (size_t i = 0; i < d.prob.size(); ++i)
    os << (d.j_min + static_cast<int64_t>(i)) << "," << num(d.prob[i]) << "\n";
}

std::string joined(const std::vector<uint32_t>& parts) {
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s;
}

uint32_t half_population(uint64_t two_n, const char* cmd) {
  if (two_n == 0 || two_n % 2 != 0 || two_n > 0xFFFFFFFFull)
    throw std::invalid_argument(std::string(cmd) + ": --two-n must be a positive even integer");
  return static_cast<uint32_t>(two_n / 2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact laws and simulators for neutral allele frequencies"};
  app.require_subcommand(1);
  Options o;

  auto make_sub = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--seed", o.seed, "master random seed")->capture_default_str();
    sub->add_option("--format", o.format, "output format: json or csv")->capture_default_str();
    sub->add_option("--out", o.out_path, "write output to this file instead of stdout");
    return sub;
  };

  CLI::App* esf = make_sub("esf", "partition law of a sample: one partition or the whole table");
  esf->add_option("--n", o.n, "sample size")->required();
  esf->add_option("--theta", o.theta, "scaled mutation rate (decimal or fraction)")->required();
  esf->add_option("--partition", o.partition, "comma-separated part sizes, e.g. 3,1,1");

  CLI::App* kdist = make_sub("k-dist", "law of the number of distinct types in a sample");
  kdist->add_option("--n", o.n, "sample size")->required();
  kdist->add_option("--theta", o.theta, "scaled mutation rate")->required();

  CLI::App* agedist = make_sub("age-dist", "age-ordered sample law over compositions");
  agedist->add_option("--n", o.n, "sample size")->required();
  agedist->add_option("--theta", o.theta, "scaled mutation rate")->required();
  agedist->add_option("--counts", o.counts, "oldest-to-youngest counts, e.g. 2,1,1");

  CLI::App* oldest = make_sub("oldest", "law of the oldest type's count in a sample");
  oldest->add_option("--n", o.n, "sample size")->required();
  oldest->add_option("--theta", o.theta, "scaled mutation rate")->required();
  oldest->add_flag("--population", o.population,
                   "count of the population's oldest type in the sample (includes 0)");

  CLI::App* gem = make_sub("gem-sample", "sample age-ordered population frequencies");
  gem->add_option("--theta", o.theta, "scaled mutation rate")->required();
  gem->add_option("--replicates", o.replicates, "number of frequency vectors")->required();
  gem->add_option("--epsilon", o.epsilon, "truncate once the residual drops below this")
      ->capture_default_str();

  CLI::App* ostats = make_sub("order-stats", "largest-frequency tails, bounds and estimates");
  ostats->add_option("--theta", o.theta, "scaled mutation rate")->required();
  ostats->add_option("--c", o.c, "tail threshold in [1/2, 1)")->capture_default_str();
  ostats->add_option("--rank", o.rank, "rank of the frequency to estimate")->capture_default_str();
  ostats->add_option("--replicates", o.replicates, "Monte Carlo replicates for the rank mean");
  ostats->add_option("--epsilon", o.epsilon, "stick-breaking truncation")->capture_default_str();

  CLI::App* coal = make_sub("coalescent", "genealogy simulator with neutral mutation");
  coal->add_option("--n", o.n, "sample size")->required();
  coal->add_option("--theta", o.theta, "scaled mutation rate")->required();
  coal->add_option("--replicates", o.replicates, "independent replicates")->required();

  CLI::App* eve = make_sub("eve", "law of the ancestral type's count in a sample");
  eve->add_option("--n", o.n, "sample size")->required();
  eve->add_option("--theta", o.theta, "scaled mutation rate")->required();

  CLI::App* moran = make_sub("moran", "stationary snapshots of the birth-death population");
  moran->add_option("--two-n", o.two_n, "population size in genes (even)")->required();
  moran->add_option("--u", o.u, "per-birth mutation probability in [0,1)")->required();
  moran->add_option("--samples", o.samples, "number of snapshots")->capture_default_str();
  moran->add_option("--burnin", o.burnin, "steps before the first snapshot (default 20(2N)^2)");
  moran->add_option("--thin", o.thin, "steps between snapshots (default (2N)^2)");
  moran->add_flag("--exclude-self", o.exclude_self, "parent never replaces itself");

  CLI::App* hoppe = make_sub("hoppe", "age-ordered type counts from the urn representation");
  hoppe->add_option("--two-n", o.two_n, "population size in genes (even)")->required();
  hoppe->add_option("--theta", o.theta, "scaled mutation rate")->required();
  hoppe->add_option("--replicates", o.replicates, "independent replicates")->required();

  CLI::App* ages = make_sub("ages", "mean allele ages in a finite population");
  ages->add_option("--two-n", o.two_n, "population size in genes (even)")->required();
  ages->add_option("--theta", o.theta, "scaled mutation rate")->required();
  ages->add_option("--n", o.n, "also report the oldest type of a sample of this size");
  ages->add_option("--p", o.p, "also report the mean age of an allele at this frequency");

  CLI::App* charge = make_sub("charge-state", "integer-labelled population under stepwise mutation");
  charge->add_option("--two-n", o.two_n, "population size in genes (even)")->required();
  charge->add_option("--u", o.u, "per-gene mutation probability in [0,1)")->required();
  charge->add_option("--generations", o.generations, "generations to run")->capture_default_str();

  CLI::App* lambda = make_sub("lambda", "iterated-log threshold count for the charge model");
  lambda->add_option("--two-n", o.two_n_text, "population size in genes (decimal, any size)");
  lambda->add_option("--two-n-exponent", o.exponent, "population size given as 10^E");

  CLI::App* perm = make_sub("perm", "cycle types of uniform random permutations");
  perm->add_option("--n", o.n, "permutation size")->required();
  perm->add_option("--replicates", o.replicates, "number of permutations");
  perm->add_flag("--exact-tail", o.exact_tail,
                 "print the exact P(longest cycle > n/2) instead of sampling");

  CLI::App* mapping = make_sub("mapping", "component sizes of uniform random mappings");
  mapping->add_option("--n", o.n, "mapping size")->required();
  mapping->add_option("--replicates", o.replicates, "number of mappings")->required();

  CLI::App* neut = make_sub("neutrality", "conditional homozygosity test of a sample partition");
  neut->add_option("--partition", o.partition, "observed part sizes, e.g. 4,3,3")->required();
  neut->add_option("--replicates", o.replicates, "null replicates (>= 10000)")
      ->capture_default_str();
  neut->add_option("--theta-proposal", o.theta_proposal,
                   "internal proposal rate (0 = tune automatically)");

  CLI::App* table = make_sub("table-3-1", "mean frequency of the most frequent and oldest alleles");
  table->add_option("--replicates", o.replicates, "Monte Carlo replicates per column")
      ->capture_default_str();

  CLI::App* validate = make_sub("validate", "run the full cross-validation suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!o.out_path.empty()) {
    out_file.open(o.out_path, std::ios::binary);
    if (!out_file) {
      std::cerr << "cannot open output file: " << o.out_path << "\n";
      return 2;
    }
    out = &out_file;
  }
  std::ostream& os = *out;
  if (o.format != "json" && o.format != "csv") {
    std::cerr << "unknown format '" << o.format << "' (expected json or csv)\n";
    return 2;
  }
  const bool csv = o.format == "csv";

  try {
    if (esf->parsed()) {
      popgen::Theta th = popgen::Theta::parse(o.theta);
      if (!o.partition.empty()) {
        auto parts = parse_parts(o.partition, "--partition");
        auto part = popgen::AllelicPartition::from_parts(parts);
        if (part.n() != o.n) throw std::invalid_argument("--partition does not sum to --n");
        auto pr = popgen::esf_probability(part, th);
        ojson j;
        j["partition"] = parts_json(part.parts_descending());
        j["probability"] = pr.value();
        os << j.dump() << "\n";
      } else {
        if (o.n > 40) throw std::invalid_argument("full table limited to n <= 40; give --partition");
        auto dist = popgen::esf_distribution(o.n, th);
        if (csv) {
          os << "partition,probability\n";
          for (const auto& [part, pr] : dist)
            os << "\"" << joined(part.parts_descending()) << "\"," << num(popgen::to_double(pr))
               << "\n";
        } else {
          ojson j = ojson::object();
          for (const auto& [part, pr] : dist)
            j[joined(part.parts_descending())] = popgen::to_double(pr);
          os << j.dump() << "\n";
        }
      }
    } else if (kdist->parsed()) {
      popgen::Theta th = popgen::Theta::parse(o.theta);
      auto d = popgen::k_distribution(o.n, th);
      if (csv)
        write_map_csv(os, d, "k");
      else
        os << prob_map(d).dump() << "\n";
    } else if (agedist->parsed()) {
      popgen::Theta th = popgen::Theta::parse(o.theta);
      if (!o.counts.empty()) {
        auto counts = parse_parts(o.counts, "--counts");
        uint64_t total = 0;
        for (uint32_t v : counts) total += v;
        if (total != o.n) throw std::invalid_argument("--counts does not sum to --n");
        ojson j;
        j["counts"] = parts_json(counts);
        j["probability"] = popgen::age_ordered_sample_probability(counts, th).value();
        os << j.dump() << "\n";
      } else {
        if (o.n > 16) throw std::invalid_argument("full table limited to n <= 16; give --counts");
        std::vector<std::vector<uint32_t>> comps;
        std::vector<uint32_t> prefix;
        std::function<void(uint32_t)> rec = [&](uint32_t rem) {
          if (rem == 0) {
            comps.push_back(prefix);
            return;
          }
          for (uint32_t f = 1; f <= rem; ++f) {
            prefix.push_back(f);
            rec(rem - f);
            prefix.pop_back();
          }
        };
        rec(o.n);
        if (csv) {
          os << "counts,probability\n";
          for (const auto& cpt : comps)
            os << "\"" << joined(cpt) << "\","
               << num(popgen::age_ordered_sample_probability(cpt, th).value()) << "\n";
        } else {
          ojson j = ojson::object();
          for (const auto& cpt : comps)
            j[joined(cpt)] = popgen::age_ordered_sample_probability(cpt, th).value();
          os << j.dump() << "\n";
        }
      }
    } else if (oldest->parsed()) {
      popgen::Theta th = popgen::Theta::parse(o.theta);
      auto d = o.population ? popgen::population_oldest_in_sample_distribution(o.n, th)
                            : popgen::oldest_sample_count_distribution(o.n, th);
      if (csv)
        write_map_csv(os, d, "j");
      else
        os << prob_map(d).dump() << "\n";
    } else if (gem->parsed()) {
      popgen::Theta th = popgen::Theta::parse(o.theta);
      double td = popgen::to_double(th.exact);
      if (o.replicates == 0) throw std::invalid_argument("--replicates must be >= 1");
      for (uint64_t r = 0; r < o.replicates; ++r) {
        popgen::CounterRng rng(o.seed, r);
        auto s = popgen::sample_gem(td, o.epsilon, rng);
        ojson j;
        j["replicate"] = r;
        j["weights"] = s.w;
        j["residual"] = s.residual;
        os << j.dump() << "\n";
      }
    } else if (ostats->parsed()) {
      popgen::Theta th = popgen::Theta::parse(o.theta);
      double td = popgen::to_double(th.exact);
      auto bounds = popgen::mean_largest_bounds(td);
      ojson j;
      j["theta"] = o.theta;
      j["c"] = o.c;
      j["tail_probability"] = popgen::largest_tail_probability(o.c, td);
      j["mean_largest_lower_bound"] = bounds.lower;
      j["mean_largest_upper_bound"] = bounds.upper;
      j["mean_largest_asymptotic"] = popgen::mean_largest_asymptotic(td);
      if (o.replicates > 0) {
        auto est = popgen::estimate_mean_order_statistic(o.rank, td, o.replicates, o.seed,
                                                         o.epsilon);
        j["rank"] = o.rank;
        j["replicates"] = o.replicates;
        j["mean_estimate"] = est.mean;
        j["std_error"] = est.std_error;
        j["truncated_replicates"] = est.truncated;
      }
      os << j.dump() << "\n";
    } else if (coal->parsed()) {
      popgen::Theta th = popgen::Theta::parse(o.theta);
      if (o.replicates == 0) throw std::invalid_argument("--replicates must be >= 1");
      for (uint64_t r = 0; r < o.replicates; ++r) {
        auto rep = popgen::run_ima_replicate(o.n, th, o.seed, r);
        ojson j;
        j["replicate"] = r;
        j["seed"] = o.seed;
        j["partition"] = parts_json(rep.partition.parts_descending());
        j["k"] = rep.k;
        j["t_mrcas"] = rep.t_mrcas;
        j["x_n"] = rep.x_n;
        j["y_n"] = rep.y_n;
        j["age_ordered"] = parts_json(rep.age_ordered);
        os << j.dump() << "\n";
      }
    } else if (eve->parsed()) {
      popgen::Theta th = popgen::Theta::parse(o.theta);
      auto d = popgen::solve_eve_recurrence(o.n, th);
      if (csv)
        write_map_csv(os, d, "j");
      else
        os << prob_map(d).dump() << "\n";
    } else if (moran->parsed()) {
      uint32_t N = half_population(o.two_n, "moran");
      auto samples = popgen::moran_stationary_samples(N, o.u, o.samples, o.seed, o.burnin, o.thin,
                                                     o.exclude_self);
      for (size_t i = 0; i < samples.size(); ++i) {
        ojson j;
        j["sample"] = i;
        j["partition"] = parts_json(samples[i].parts_descending());
        os << j.dump() << "\n";
      }
    } else if (hoppe->parsed()) {
      uint32_t N = half_population(o.two_n, "hoppe");
      popgen::Theta th = popgen::Theta::parse(o.theta);
      if (o.replicates == 0) throw std::invalid_argument("--replicates must be >= 1");
      for (uint64_t r = 0; r < o.replicates; ++r) {
        popgen::CounterRng rng(o.seed, r);
        ojson j;
        j["replicate"] = r;
        j["age_counts"] = parts_json(popgen::hoppe_age_counts(N, th, rng));
        os << j.dump() << "\n";
      }
    } else if (ages->parsed()) {
      uint32_t N = half_population(o.two_n, "ages");
      popgen::Theta th = popgen::Theta::parse(o.theta);
      ojson j;
      j["two_n"] = o.two_n;
      j["theta"] = o.theta;
      j["mean_age_oldest"] = popgen::mean_age_oldest(N, th);
      if (o.n > 0) {
        j["sample_size"] = o.n;
        j["mean_age_oldest_in_sample"] = popgen::mean_age_oldest_in_sample(N, o.n, th);
      }
      if (o.p > 0) {
        j["frequency"] = o.p;
        j["mean_age_at_frequency"] = popgen::mean_age_given_frequency(N, th, o.p);
      }
      os << j.dump() << "\n";
    } else if (charge->parsed()) {
      uint32_t N = half_population(o.two_n, "charge-state");
      popgen::ChargeStateModel model(N, o.u);
      popgen::CounterRng rng(o.seed, 0);
      for (uint32_t g = 0; g < o.generations; ++g) model.step(rng);
      auto part = model.partition();
      ojson j;
      j["two_n"] = o.two_n;
      j["u"] = o.u;
      j["generations"] = o.generations;
      j["range"] = model.range();
      j["occupied_states"] = model.occupied_states();
      j["partition"] = parts_json(part.parts_descending());
      os << j.dump() << "\n";
    } else if (lambda->parsed()) {
      o.has_exponent = lambda->count("--two-n-exponent") > 0;
      if (o.has_exponent == !o.two_n_text.empty())
        throw std::invalid_argument("lambda: give exactly one of --two-n or --two-n-exponent");
      uint32_t value;
      if (o.has_exponent) {
        value = popgen::kesten_lambda_pow10(o.exponent);
      } else {
        for (char ch : o.two_n_text)
          if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw std::invalid_argument("lambda: --two-n must be a decimal integer");
        value = popgen::kesten_lambda(popgen::BigInt(o.two_n_text));
      }
      os << value << "\n";
    } else if (perm->parsed()) {
      if (o.exact_tail) {
        ojson j;
        j["n"] = o.n;
        j["longest_exceeds_half"] = popgen::to_double(popgen::longest_cycle_exact_tail(o.n));
        os << j.dump() << "\n";
      } else {
        if (o.replicates == 0) throw std::invalid_argument("--replicates must be >= 1");
        for (uint64_t r = 0; r < o.replicates; ++r) {
          popgen::CounterRng rng(o.seed, r);
          ojson j;
          j["replicate"] = r;
          j["cycle_type"] =
              parts_json(popgen::random_permutation_cycle_type(o.n, rng).parts_descending());
          os << j.dump() << "\n";
        }
      }
    } else if (mapping->parsed()) {
      if (o.replicates == 0) throw std::invalid_argument("--replicates must be >= 1");
      for (uint64_t r = 0; r < o.replicates; ++r) {
        popgen::CounterRng rng(o.seed, r);
        ojson j;
        j["replicate"] = r;
        j["component_sizes"] =
            parts_json(popgen::random_mapping_component_sizes(o.n, rng).parts_descending());
        os << j.dump() << "\n";
      }
    } else if (neut->parsed()) {
      auto parts = parse_parts(o.partition, "--partition");
      auto part = popgen::AllelicPartition::from_parts(parts);
      uint64_t reps = o.replicates == 0 ? 10000 : o.replicates;
      auto report = popgen::neutrality_test(part, reps, o.seed, o.theta_proposal);
      ojson j;
      j["statistic_f"] = report.statistic_f;
      j["n"] = report.n;
      j["k"] = report.k;
      j["p_lower"] = report.p_lower;
      j["p_upper"] = report.p_upper;
      j["replicates"] = report.replicates;
      j["seed"] = report.seed;
      os << j.dump() << "\n";
    } else if (table->parsed()) {
      const std::vector<const char*> thetas = {"1/10", "1/5", "1/2", "1", "2", "5", "10", "20"};
      uint64_t reps = o.replicates == 0 ? 100000 : o.replicates;
      std::vector<double> most, old_row, theta_vals;
      for (size_t i = 0; i < thetas.size(); ++i) {
        popgen::Theta th = popgen::Theta::parse(thetas[i]);
        theta_vals.push_back(popgen::to_double(th.exact));
        auto est = popgen::estimate_mean_order_statistic(
            1, popgen::to_double(th.exact), reps,
            popgen::acceptance_detail::subseed(o.seed, 1, static_cast<uint32_t>(i)));
        most.push_back(est.mean);
        old_row.push_back(popgen::to_double(popgen::mean_jth_oldest(1, th)));
      }
      if (csv) {
        os << "row";
        for (double t : theta_vals) os << "," << num(t);
        os << "\nmost_frequent";
        for (double v : most) os << "," << num(v);
        os << "\noldest";
        for (double v : old_row) os << "," << num(v);
        os << "\n";
      } else {
        ojson j;
        j["theta"] = theta_vals;
        j["most_frequent"] = most;
        j["oldest"] = old_row;
        j["replicates"] = reps;
        j["seed"] = o.seed;
        os << j.dump() << "\n";
      }
    } else if (validate->parsed()) {
      auto results = popgen::run_validation_criteria(o.seed);
      bool all_pass = true;
      ojson arr = ojson::array();
      for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        ojson j;
        j["id"] = r.id;
        j["description"] = r.description;
        j["pass"] = r.pass;
        j["detail"] = r.detail;
        arr.push_back(j);
      }
      os << arr.dump(2) << "\n";
      os.flush();
      return all_pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n\n" << app.get_subcommands().front()->help() << std::flush;
    return 2;
  }
  os.flush();
  return 0;
}
