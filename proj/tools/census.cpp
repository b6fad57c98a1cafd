// Command-line front end: exact word counts, orbit censuses, genericity and
// small-cancellation experiments, presentation tooling, the word-problem
// reducer, bounded isomorphism search, relator recovery, the compression
// experiment, and the aggregated verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 flag or input errors,
// 3 budget refusals (including search/recover exhaustion).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "onerel/onerel.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::ordered_json;
using Meta = std::vector<std::pair<std::string, std::string>>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Common {
  bool json = false;
  std::string output;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
}

std::string meta_header(const std::string& sub, const Meta& meta) {
  std::ostringstream out;
  out << "# census " << kVersion << "\n";
  out << "# subcommand: " << sub << "\n";
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << "\n";
  return out.str();
}

Json json_header(const std::string& sub, const Meta& meta) {
  Json j;
  j["tool"] = "census";
  j["version"] = kVersion;
  j["subcommand"] = sub;
  Json params = Json::object();
  for (const auto& [key, value] : meta) params[key] = value;
  j["params"] = params;
  return j;
}

void emit_table(const Common& common, const std::string& sub, const Meta& meta,
                const Table& table) {
  if (common.json) {
    Json j = json_header(sub, meta);
    Json rows = Json::array();
    for (const auto& row : table.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < table.columns.size(); ++i)
        obj[table.columns[i]] = row[i];
      rows.push_back(obj);
    }
    j["rows"] = rows;
    write_out(j.dump(2) + "\n", common.output);
    return;
  }
  std::ostringstream out;
  out << meta_header(sub, meta);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << csv_field(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_field(row[i]);
    }
    out << '\n';
  }
  write_out(out.str(), common.output);
}

void emit_presentation(const Common& common, const std::string& sub, const Meta& meta,
                       const onerel::Presentation& p) {
  if (common.json) {
    Json j = json_header(sub, meta);
    Json pres = Json::object();
    pres["generators"] = p.generator_count;
    Json rels = Json::array();
    const bool numeric = p.generator_count > 26;
    for (const auto& r : p.relators) rels.push_back(onerel::word_to_text(r, numeric));
    pres["relators"] = rels;
    j["presentation"] = pres;
    write_out(j.dump(2) + "\n", common.output);
    return;
  }
  write_out(meta_header(sub, meta) + onerel::presentation_to_text(p), common.output);
}

onerel::BigRat parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("malformed rational: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

onerel::Presentation read_presentation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open presentation file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return onerel::parse_presentation_text(buf.str());
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_flag("--json", common.json, "emit JSON instead of CSV");
  sub->add_option("--output", common.output, "write to this file instead of stdout");
  sub->set_config("--config", "", "key=value config file; flags override it");
}

using Action = std::function<int()>;

// ---- count -------------------------------------------------------------------

void setup_count(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    std::int32_t k = 2;
    std::int64_t n_max = 0;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "count", "Closed-form counts of reduced and cyclically reduced words");
  sub->add_option("--k", opt->k, "free-group rank")->required()->check(CLI::Range(2, 1000000));
  sub->add_option("--n-max", opt->n_max, "largest length")->required()->check(CLI::Range(0, 100000));
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      Meta meta{{"k", std::to_string(opt->k)}, {"n_max", std::to_string(opt->n_max)}};
      Table t;
      t.columns = {"n", "gamma_free", "gamma_cyclic", "rho_free", "rho_cyclic"};
      onerel::BigInt rho_f = 0, rho_c = 0;
      for (std::int64_t n = 0; n <= opt->n_max; ++n) {
        const onerel::BigInt gf =
            onerel::gamma_count(opt->k, n, onerel::WordSet::FreelyReduced);
        const onerel::BigInt gc =
            onerel::gamma_count(opt->k, n, onerel::WordSet::CyclicallyReduced);
        rho_f += gf;
        rho_c += gc;
        t.rows.push_back({std::to_string(n), gf.get_str(), gc.get_str(),
                          rho_f.get_str(), rho_c.get_str()});
      }
      emit_table(common, "count", meta, t);
      return 0;
    };
  });
}

// ---- rivin -------------------------------------------------------------------

void setup_rivin(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    std::int32_t k = 2;
    std::int64_t n_max = 0;
    std::int64_t cap = onerel::kDefaultEnumerationCap;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "rivin", "Cyclically reduced counts: closed form against brute-force enumeration");
  sub->add_option("--k", opt->k, "free-group rank")->required()->check(CLI::Range(2, 64));
  sub->add_option("--n-max", opt->n_max, "largest length")->required()->check(CLI::Range(1, 64));
  sub->add_option("--cap", opt->cap, "enumeration budget on (2k-1)^n");
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      Meta meta{{"k", std::to_string(opt->k)},
                {"n_max", std::to_string(opt->n_max)},
                {"cap", std::to_string(opt->cap)}};
      Table t;
      t.columns = {"n", "formula", "brute_force", "equal"};
      for (std::int64_t n = 1; n <= opt->n_max; ++n) {
        const onerel::BigInt formula =
            onerel::gamma_count(opt->k, n, onerel::WordSet::CyclicallyReduced);
        const onerel::BigInt brute = onerel::enumerate_count(
            opt->k, n, onerel::WordSet::CyclicallyReduced, nullptr, opt->cap);
        t.rows.push_back({std::to_string(n), formula.get_str(), brute.get_str(),
                          formula == brute ? "true" : "false"});
      }
      emit_table(common, "rivin", meta, t);
      return 0;
    };
  });
}

// ---- orbits ------------------------------------------------------------------

void setup_orbits(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    std::int32_t k = 2;
    std::int64_t n = -1;
    std::int64_t n_max = -1;
    std::string method = "burnside";
    std::int64_t cap = onerel::kDefaultEnumerationCap;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "orbits", "Census of cyclic words up to rotation, inversion and relabeling");
  sub->add_option("--k", opt->k, "free-group rank")->required()->check(CLI::Range(2, 8));
  auto* n_opt = sub->add_option("--n", opt->n, "single length")->check(CLI::Range(1, 100000));
  auto* n_max_opt =
      sub->add_option("--n-max", opt->n_max, "lengths 1..n-max")->check(CLI::Range(1, 100000));
  n_opt->excludes(n_max_opt);
  sub->add_option("--method", opt->method, "census method")
      ->check(CLI::IsMember({"burnside", "canonicalize"}));
  sub->add_option("--cap", opt->cap, "enumeration budget on (2k-1)^n");
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      if (opt->n < 0 && opt->n_max < 0)
        throw std::invalid_argument("orbits: one of --n or --n-max is required");
      const onerel::CensusMethod method = opt->method == "burnside"
                                              ? onerel::CensusMethod::Burnside
                                              : onerel::CensusMethod::Canonicalize;
      Meta meta{{"k", std::to_string(opt->k)},
                {"method", opt->method},
                {"cap", std::to_string(opt->cap)}};
      const std::int64_t lo = opt->n >= 0 ? opt->n : 1;
      const std::int64_t hi = opt->n >= 0 ? opt->n : opt->n_max;
      Table t;
      t.columns = {"n", "gamma_cr", "orbit_count", "ratio_numerator", "ratio_denominator"};
      for (std::int64_t n = lo; n <= hi; ++n) {
        const onerel::BigInt orbits = onerel::count_orbits(opt->k, n, method, opt->cap);
        const onerel::BigRat ratio = onerel::census_ratio(opt->k, n, orbits);
        t.rows.push_back(
            {std::to_string(n),
             onerel::gamma_count(opt->k, n, onerel::WordSet::CyclicallyReduced).get_str(),
             orbits.get_str(), ratio.get_num().get_str(), ratio.get_den().get_str()});
      }
      emit_table(common, "orbits", meta, t);
      return 0;
    };
  });
}

// ---- generic-fraction ----------------------------------------------------------

void setup_generic_fraction(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    std::int32_t k = 2;
    std::vector<std::int64_t> ns;
    std::int64_t samples = 10000;
    std::uint64_t seed = 0;
    std::string predicate = "e-set";
    std::string lambda = "1/6";
    std::string tau;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "generic-fraction",
      "Density of a word-class predicate among cyclically reduced words");
  sub->add_option("--k", opt->k, "free-group rank")->required()->check(CLI::Range(2, 8));
  sub->add_option("--n", opt->ns, "word lengths (repeatable or comma-separated)")
      ->required()
      ->delimiter(',');
  sub->add_option("--samples", opt->samples, "Monte Carlo sample count")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}));
  sub->add_option("--seed", opt->seed, "random seed")->required();
  sub->add_option("--predicate", opt->predicate, "word class to measure")
      ->check(CLI::IsMember({"e-set", "s-set", "s-prime", "cprime"}));
  sub->add_option("--lambda", opt->lambda, "overlap parameter p/q");
  sub->add_option("--tau", opt->tau, "relabeling, e.g. 1:2+,2:1-");
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      const onerel::BigRat lambda = parse_rational(opt->lambda);
      onerel::CyclicPredicate pred;
      if (opt->predicate == "e-set") {
        const auto relabelings = onerel::all_relabelings(opt->k);
        pred = [lambda, relabelings](const onerel::CyclicWord& x) {
          return onerel::in_E(x, lambda, relabelings);
        };
      } else if (opt->predicate == "s-set" || opt->predicate == "s-prime") {
        if (opt->tau.empty())
          throw std::invalid_argument("--tau is required for the s-set and s-prime predicates");
        const onerel::Relabeling tau = onerel::Relabeling::parse(opt->tau, opt->k);
        const bool prime = opt->predicate == "s-prime";
        pred = [lambda, tau, prime](const onerel::CyclicWord& x) {
          return prime ? onerel::in_S_prime(x, lambda, tau).first
                       : onerel::in_S(x, lambda, tau).first;
        };
      } else {
        pred = [lambda](const onerel::CyclicWord& x) {
          return onerel::satisfies_c_prime(x, lambda).first;
        };
      }
      Meta meta{{"k", std::to_string(opt->k)},
                {"samples", std::to_string(opt->samples)},
                {"seed", std::to_string(opt->seed)},
                {"predicate", opt->predicate},
                {"lambda", parse_rational(opt->lambda).get_str()}};
      if (!opt->tau.empty()) meta.emplace_back("tau", opt->tau);
      Table t;
      t.columns = {"n", "samples", "hits", "density", "ci_halfwidth"};
      for (const std::int64_t n : opt->ns) {
        const onerel::DensityPoint pt =
            onerel::density_estimate(pred, opt->k, n, opt->samples, opt->seed);
        t.rows.push_back({std::to_string(pt.n), std::to_string(pt.samples),
                          std::to_string(pt.hits), format_double(pt.density),
                          format_double(pt.ci_halfwidth)});
      }
      emit_table(common, "generic-fraction", meta, t);
      return 0;
    };
  });
}

// ---- cprime ------------------------------------------------------------------

void setup_cprime(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    std::int32_t k = 2;
    std::string word;
    std::string lambda = "1/6";
    bool reduce = false;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub =
      app.add_subcommand("cprime", "Small-cancellation check for a single cyclic word");
  sub->add_option("--k", opt->k, "free-group rank")->required()->check(CLI::Range(1, 1000000));
  sub->add_option("--word", opt->word, "cyclic word")->required();
  sub->add_option("--lambda", opt->lambda, "cancellation parameter p/q");
  sub->add_flag("--reduce", opt->reduce, "freely and cyclically reduce the input first");
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      const onerel::BigRat lambda = parse_rational(opt->lambda);
      const onerel::Word w = onerel::parse_word(
          opt->word, opt->k,
          opt->reduce ? onerel::ParseMode::Reduce : onerel::ParseMode::Reject);
      const onerel::CyclicWord x =
          opt->reduce ? onerel::cyclic_reduce(w).core : onerel::CyclicWord(w);
      const auto [ok, max_piece] = onerel::satisfies_c_prime(x, lambda);
      Meta meta{{"k", std::to_string(opt->k)}, {"lambda", lambda.get_str()}};
      Table t;
      t.columns = {"word", "n", "lambda", "max_piece", "threshold", "satisfied"};
      t.rows.push_back(
          {onerel::word_to_text(x.representative()), std::to_string(x.size()),
           lambda.get_str(), std::to_string(max_piece),
           std::to_string(onerel::floor_lambda(lambda, static_cast<std::int64_t>(x.size()))),
           ok ? "true" : "false"});
      emit_table(common, "cprime", meta, t);
      return 0;
    };
  });
}

// ---- encode ------------------------------------------------------------------

void setup_encode(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    std::string in;
    std::string decode;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "encode", "Six-letter / binary presentation encoding (or decoding)");
  auto* in_opt = sub->add_option("--in", opt->in, "presentation text file");
  auto* dec_opt =
      sub->add_option("--decode", opt->decode, "six-letter string to decode instead");
  in_opt->excludes(dec_opt);
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      if (!opt->decode.empty()) {
        const onerel::Presentation p = onerel::decode_six_letter(opt->decode);
        Meta meta{{"six_letter", opt->decode}};
        emit_presentation(common, "encode", meta, p);
        return 0;
      }
      if (opt->in.empty())
        throw std::invalid_argument("encode: one of --in or --decode is required");
      const onerel::Presentation p = read_presentation(opt->in);
      const onerel::EncodedPresentation e = onerel::encode_presentation(p);
      const std::int64_t t_count = static_cast<std::int64_t>(p.relators.size());
      Meta meta{{"in", opt->in}};
      Table t;
      t.columns = {"generators", "relators", "ell",       "ell_1",
                   "six_letter", "binary",   "length_bound"};
      t.rows.push_back({std::to_string(p.generator_count), std::to_string(t_count),
                        std::to_string(onerel::ell(p)), std::to_string(onerel::ell_1(p)),
                        e.six_letter, e.binary,
                        std::to_string(onerel::six_letter_bound(
                            p.generator_count, onerel::ell_1(p), t_count))});
      emit_table(common, "encode", meta, t);
      return 0;
    };
  });
}

// ---- tietze ------------------------------------------------------------------

void setup_tietze(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    std::string in;
    bool assume_no_order_two = false;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "tietze", "Eliminate relators of length below three by Tietze moves");
  sub->add_option("--in", opt->in, "presentation text file")->required();
  sub->add_flag("--assume-no-order-two", opt->assume_no_order_two,
                "permit squared-relator elimination");
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      const onerel::Presentation p = read_presentation(opt->in);
      const onerel::Presentation q =
          onerel::tietze_cleanup(p, opt->assume_no_order_two);
      Meta meta{{"in", opt->in},
                {"assume_no_order_two", opt->assume_no_order_two ? "true" : "false"},
                {"ell_before", std::to_string(onerel::ell(p))},
                {"ell_after", std::to_string(onerel::ell(q))}};
      emit_presentation(common, "tietze", meta, q);
      return 0;
    };
  });
}

// ---- dehn --------------------------------------------------------------------

void setup_dehn(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    std::int32_t k = 2;
    std::string relator;
    std::string word;
    bool reduce = false;
    bool trace = false;
    bool numeric = false;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "dehn", "Length-reduction word-problem oracle for a small-cancellation relator");
  sub->add_option("--k", opt->k, "free-group rank")->required()->check(CLI::Range(1, 1000000));
  sub->add_option("--relator", opt->relator, "cyclic relator word")->required();
  sub->add_option("--word", opt->word, "word to reduce")->required();
  sub->add_flag("--reduce", opt->reduce, "freely and cyclically reduce inputs first");
  sub->add_flag("--trace", opt->trace, "emit one row per replacement step");
  sub->add_flag("--numeric", opt->numeric, "emit words in numeric form");
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      const onerel::ParseMode mode =
          opt->reduce ? onerel::ParseMode::Reduce : onerel::ParseMode::Reject;
      const onerel::Word rw = onerel::parse_word(opt->relator, opt->k, mode);
      const onerel::CyclicWord r =
          opt->reduce ? onerel::cyclic_reduce(rw).core : onerel::CyclicWord(rw);
      const onerel::Word w = onerel::parse_word(opt->word, opt->k, mode);
      const onerel::DehnResult res = onerel::dehn_reduce(r, w);
      Meta meta{{"k", std::to_string(opt->k)},
                {"relator", onerel::word_to_text(r.representative(), opt->numeric)},
                {"word", onerel::word_to_text(w, opt->numeric)}};
      if (!opt->trace) {
        Table t;
        t.columns = {"relator", "word", "in_closure", "steps", "reduced"};
        t.rows.push_back({onerel::word_to_text(r.representative(), opt->numeric),
                          onerel::word_to_text(w, opt->numeric),
                          res.reduced.empty() ? "true" : "false",
                          std::to_string(res.trace.steps.size()),
                          onerel::word_to_text(res.reduced, opt->numeric)});
        emit_table(common, "dehn", meta, t);
        return 0;
      }
      meta.emplace_back("in_closure", res.reduced.empty() ? "true" : "false");
      meta.emplace_back("reduced", onerel::word_to_text(res.reduced, opt->numeric));
      Table t;
      t.columns = {"step", "position", "fragment", "length_before", "length_after"};
      for (std::size_t i = 0; i < res.trace.steps.size(); ++i) {
        const onerel::DehnStep& s = res.trace.steps[i];
        t.rows.push_back({std::to_string(i + 1), std::to_string(s.position),
                          onerel::word_to_text(s.fragment, opt->numeric),
                          std::to_string(s.length_before),
                          std::to_string(s.length_after)});
      }
      emit_table(common, "dehn", meta, t);
      return 0;
    };
  });
}

// ---- search / recover -----------------------------------------------------------

struct SearchOpts {
  std::string in;
  std::int32_t rank = 2;
  std::string class_lambda = "1/6";
  std::int64_t max_len = 60;
  std::int64_t depth = 2;
  std::int64_t map_len = 4;
  std::int64_t conj_len = 2;
  std::int64_t max_states = 20000;
  std::int64_t max_tuples = 5000;
};

void add_search_options(CLI::App* sub, SearchOpts& opt) {
  sub->add_option("--in", opt.in, "presentation text file")->required();
  sub->add_option("--rank", opt.rank, "candidate presentation rank")
      ->check(CLI::Range(1, 8));
  sub->add_option("--class-lambda", opt.class_lambda, "generic-class parameter p/q");
  sub->add_option("--max-len", opt.max_len, "candidate relator length ceiling")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{10000}));
  sub->add_option("--depth", opt.depth, "closure enumeration depth");
  sub->add_option("--map-len", opt.map_len, "total length budget for map tuples");
  sub->add_option("--conj-len", opt.conj_len, "conjugator length in closure enumeration");
  sub->add_option("--max-states", opt.max_states, "closure enumeration state cap");
  sub->add_option("--max-tuples", opt.max_tuples, "verification tuple cap");
}

Meta search_meta(const SearchOpts& opt) {
  return Meta{{"in", opt.in},
              {"rank", std::to_string(opt.rank)},
              {"class_lambda", parse_rational(opt.class_lambda).get_str()},
              {"max_len", std::to_string(opt.max_len)},
              {"depth", std::to_string(opt.depth)},
              {"map_len", std::to_string(opt.map_len)},
              {"conj_len", std::to_string(opt.conj_len)},
              {"max_states", std::to_string(opt.max_states)},
              {"max_tuples", std::to_string(opt.max_tuples)}};
}

onerel::ClassParams class_params(const SearchOpts& opt) {
  onerel::ClassParams params;
  params.rank = opt.rank;
  params.lambda = parse_rational(opt.class_lambda);
  params.max_len = opt.max_len;
  return params;
}

onerel::SearchBudget search_budget(const SearchOpts& opt) {
  onerel::SearchBudget budget;
  budget.map_len = opt.map_len;
  budget.depth = opt.depth;
  budget.conj_len = opt.conj_len;
  budget.max_states = opt.max_states;
  budget.max_tuples = opt.max_tuples;
  return budget;
}

void setup_search(CLI::App& app, Common& common, Action& run) {
  auto opt = std::make_shared<SearchOpts>();
  auto* sub = app.add_subcommand(
      "search", "Bounded search for an isomorphic generic one-relator presentation");
  add_search_options(sub, *opt);
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      const onerel::Presentation p = read_presentation(opt->in);
      const std::optional<onerel::Presentation> found =
          onerel::search_isomorphic(p, class_params(*opt), search_budget(*opt));
      if (!found) {
        std::cerr << "search: no isomorphic generic one-relator presentation "
                     "within the budget\n";
        return 3;
      }
      emit_presentation(common, "search", search_meta(*opt), *found);
      return 0;
    };
  });
}

void setup_recover(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    SearchOpts search;
    std::string prefix;
    bool numeric = false;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "recover", "Recover the full relator from a presentation and a prefix");
  add_search_options(sub, opt->search);
  sub->add_option("--prefix", opt->prefix, "known prefix of the relator")->required();
  sub->add_flag("--numeric", opt->numeric, "emit words in numeric form");
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      const onerel::Presentation p = read_presentation(opt->search.in);
      const onerel::Word prefix = onerel::parse_word(opt->prefix, opt->search.rank);
      const onerel::RecoverResult res = onerel::recover_relator(
          p, prefix, class_params(opt->search), search_budget(opt->search));
      Meta meta = search_meta(opt->search);
      meta.emplace_back("prefix", opt->prefix);
      Table t;
      t.columns = {"status", "relator", "match_count"};
      const char* status = res.status == onerel::RecoverStatus::Found
                               ? "found"
                               : (res.status == onerel::RecoverStatus::Ambiguous
                                      ? "ambiguous"
                                      : "not-found");
      t.rows.push_back({status,
                        res.status == onerel::RecoverStatus::Found
                            ? onerel::word_to_text(res.relator, opt->numeric)
                            : std::string(),
                        std::to_string(res.match_count)});
      emit_table(common, "recover", meta, t);
      return res.status == onerel::RecoverStatus::NotFound ? 3 : 0;
    };
  });
}

// ---- kolmogorov -----------------------------------------------------------------

void setup_kolmogorov(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    std::int32_t k = 2;
    std::int64_t n = 400;
    std::int64_t c = 4;
    std::int64_t samples = 2000;
    std::uint64_t seed = 0;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "kolmogorov", "Incompressibility experiment over random cyclically reduced words");
  sub->add_option("--k", opt->k, "free-group rank")->required()->check(CLI::Range(2, 64));
  sub->add_option("--n", opt->n, "word length")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000}));
  sub->add_option("--c", opt->c, "slack bits in the counting threshold")
      ->check(CLI::Range(std::int64_t{0}, std::int64_t{4096}));
  sub->add_option("--samples", opt->samples, "sample count")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}));
  sub->add_option("--seed", opt->seed, "random seed")->required();
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      const onerel::IncompressibilityReport rep = onerel::incompressibility_experiment(
          opt->k, opt->n, opt->c, opt->samples, opt->seed);
      Meta meta{{"k", std::to_string(opt->k)},
                {"n", std::to_string(opt->n)},
                {"c", std::to_string(opt->c)},
                {"samples", std::to_string(opt->samples)},
                {"seed", std::to_string(opt->seed)}};
      Table t;
      t.columns = {"k",        "n",          "c",           "samples",
                   "seed",     "threshold_bits", "hits",    "fraction",
                   "median_bits", "fraction_bound", "mu",      "delta",
                   "direct_count", "periodic_count"};
      t.rows.push_back({std::to_string(rep.k), std::to_string(rep.n),
                        std::to_string(rep.c), std::to_string(rep.samples),
                        std::to_string(rep.seed), std::to_string(rep.threshold_bits),
                        std::to_string(rep.hits), format_double(rep.fraction),
                        std::to_string(rep.median_bits), rep.fraction_bound.get_str(),
                        rep.mu.get_str(), rep.delta.get_str(),
                        std::to_string(rep.direct_count),
                        std::to_string(rep.periodic_count)});
      emit_table(common, "kolmogorov", meta, t);
      return 0;
    };
  });
}

// ---- verify ------------------------------------------------------------------

void setup_verify(CLI::App& app, Common& common, Action& run) {
  struct Opts {
    std::vector<int> criteria;
  };
  auto opt = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("verify", "Run the acceptance suite");
  sub->add_option("--criterion", opt->criteria, "criterion ids to run (default all)")
      ->delimiter(',')
      ->check(CLI::Range(1, 12));
  add_common(sub, common);
  sub->callback([&common, &run, opt] {
    run = [&common, opt]() -> int {
      using Criterion = onerel::CriterionResult (*)();
      static constexpr Criterion kCriteria[12] = {
          onerel::criterion_rivin_exactness,
          onerel::criterion_free_counts,
          onerel::criterion_orbit_census,
          onerel::criterion_y_set_cardinality,
          onerel::criterion_genericity_decay,
          onerel::criterion_small_cancellation_density,
          onerel::criterion_dehn_oracle,
          onerel::criterion_relator_recovery,
          onerel::criterion_encoding,
          onerel::criterion_tietze,
          onerel::criterion_kraft,
          onerel::criterion_incompressibility,
      };
      std::vector<int> ids = opt->criteria;
      if (ids.empty())
        for (int i = 1; i <= 12; ++i) ids.push_back(i);
      Meta meta{{"criteria", [&ids] {
                   std::string s;
                   for (std::size_t i = 0; i < ids.size(); ++i) {
                     if (i) s.push_back(',');
                     s += std::to_string(ids[i]);
                   }
                   return s;
                 }()}};
      Table t;
      t.columns = {"id", "name", "pass", "detail"};
      bool all_pass = true;
      for (const int id : ids) {
        const onerel::CriterionResult res = kCriteria[id - 1]();
        all_pass = all_pass && res.pass;
        t.rows.push_back({std::to_string(res.id), res.name,
                          res.pass ? "true" : "false", res.detail});
        std::cerr << "criterion " << res.id << " (" << res.name << "): "
                  << (res.pass ? "pass" : "FAIL") << " [" << res.millis << " ms]\n";
      }
      emit_table(common, "verify", meta, t);
      return all_pass ? 0 : 1;
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computational toolkit for generic one-relator presentations"};
  app.require_subcommand(1);
  Common common;
  Action run;
  setup_count(app, common, run);
  setup_rivin(app, common, run);
  setup_orbits(app, common, run);
  setup_generic_fraction(app, common, run);
  setup_cprime(app, common, run);
  setup_encode(app, common, run);
  setup_tietze(app, common, run);
  setup_dehn(app, common, run);
  setup_search(app, common, run);
  setup_recover(app, common, run);
  setup_kolmogorov(app, common, run);
  setup_verify(app, common, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run ? run() : 2;
  } catch (const onerel::BudgetError& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return 3;
  } catch (const onerel::OrderTwoError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
