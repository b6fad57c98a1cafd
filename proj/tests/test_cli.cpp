#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "onerel/onerel.hpp"

using namespace onerel;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const std::string& work_dir() {
  static const std::string dir = [] {
    std::string tmpl = "/tmp/census_cli_XXXXXX";
    if (mkdtemp(tmpl.data()) == nullptr)
      throw std::runtime_error("mkdtemp failed");
    return tmpl;
  }();
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = work_dir() + "/" + name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

// Runs the census binary with the given (pre-quoted) argument string.
RunResult run_census(const std::string& args) {
  static int counter = 0;
  const std::string base = work_dir() + "/run" + std::to_string(counter++);
  const std::string cmd = std::string("\"") + CENSUS_BIN + "\" " + args +
                          " >" + base + ".out 2>" + base + ".err";
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (status == -1) return r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(base + ".out");
  r.err = slurp(base + ".err");
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> ls;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) ls.push_back(line);
  return ls;
}

// Header line followed by data rows, comments stripped.
std::vector<std::string> csv_body(const std::string& text) {
  std::vector<std::string> body;
  for (const std::string& line : lines_of(text))
    if (line.rfind("# ", 0) != 0 && !line.empty()) body.push_back(line);
  return body;
}

bool has_meta(const std::string& text, const std::string& key,
              const std::string& value) {
  const std::string needle = "# " + key + ": " + value;
  for (const std::string& line : lines_of(text))
    if (line == needle) return true;
  return false;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

CyclicWord generic_relator(std::uint64_t salt, std::int64_t n) {
  Rng rng(derive_seed(0xC11F00D5, salt));
  const auto rels = all_relabelings(2);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    const CyclicWord w(sample_cyclically_reduced_word(2, n, rng));
    if (satisfies_c_prime(w, BigRat(1, 6)).first && in_E(w, BigRat(1, 6), rels))
      return w;
  }
  throw std::runtime_error("no generic relator found");
}

}  // namespace

TEST_CASE("count subcommand emits the closed-form table") {
  const RunResult r = run_census("count --k 2 --n-max 4");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.empty());
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "# census 1.0.0");
  CHECK(lines[1] == "# subcommand: count");
  CHECK(has_meta(r.out, "k", "2"));
  CHECK(has_meta(r.out, "n_max", "4"));
  const auto body = csv_body(r.out);
  REQUIRE(body.size() == 6);
  CHECK(body[0] == "n,gamma_free,gamma_cyclic,rho_free,rho_cyclic");
  CHECK(body[1] == "0,1,1,1,1");
  CHECK(body[4] == "3,36,28,53,45");
  CHECK(body[5] == "4,108,84,161,129");
}

TEST_CASE("flag and usage errors exit with code 2") {
  CHECK(run_census("").exit_code == 2);
  CHECK(run_census("bogus-subcommand").exit_code == 2);
  CHECK(run_census("count --n-max 3").exit_code == 2);
  CHECK(run_census("count --k 1 --n-max 3").exit_code == 2);
  CHECK(run_census("count --k 2 --n-max 3 --unknown-flag").exit_code == 2);

  const RunResult help = run_census("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("count") != std::string::npos);
  CHECK(run_census("count --help").exit_code == 0);
}

TEST_CASE("rivin subcommand cross-checks the closed form") {
  const RunResult r = run_census("rivin --k 2 --n-max 6");
  REQUIRE(r.exit_code == 0);
  const auto body = csv_body(r.out);
  REQUIRE(body.size() == 7);
  CHECK(body[0] == "n,formula,brute_force,equal");
  for (std::size_t i = 1; i < body.size(); ++i) CHECK(ends_with(body[i], ",true"));
  CHECK(body[3] == "3,28,28,true");
}

TEST_CASE("orbits subcommand") {
  SECTION("single length with the frozen census row") {
    const RunResult r = run_census("orbits --k 2 --n 3");
    REQUIRE(r.exit_code == 0);
    CHECK(has_meta(r.out, "method", "burnside"));
    const auto body = csv_body(r.out);
    REQUIRE(body.size() == 2);
    CHECK(body[0] == "n,gamma_cr,orbit_count,ratio_numerator,ratio_denominator");
    CHECK(body[1] == "3,28,2,24,7");
  }
  SECTION("length range") {
    const RunResult r = run_census("orbits --k 2 --n-max 3");
    REQUIRE(r.exit_code == 0);
    const auto body = csv_body(r.out);
    REQUIRE(body.size() == 4);
    CHECK(body[1] == "1,4,1,4,1");
    CHECK(body[2] == "2,12,2,16,3");
    CHECK(body[3] == "3,28,2,24,7");
  }
  SECTION("canonicalization refuses past the enumeration budget") {
    const RunResult r = run_census("orbits --k 2 --n 40 --method canonicalize");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("budget refusal") != std::string::npos);
  }
  SECTION("length flags are mandatory and exclusive") {
    const RunResult neither = run_census("orbits --k 2");
    CHECK(neither.exit_code == 2);
    CHECK(neither.err.find("--n or --n-max") != std::string::npos);
    CHECK(run_census("orbits --k 2 --n 3 --n-max 4").exit_code == 2);
    CHECK(run_census("orbits --k 2 --n 3 --method bogus").exit_code == 2);
  }
}

TEST_CASE("cprime subcommand") {
  SECTION("commutator fails at 1/3 and passes at 1/2") {
    const RunResult tight = run_census("cprime --k 2 --word abAB --lambda 1/3");
    REQUIRE(tight.exit_code == 0);
    const auto body = csv_body(tight.out);
    REQUIRE(body.size() == 2);
    CHECK(body[0] == "word,n,lambda,max_piece,threshold,satisfied");
    CHECK(body[1] == "abAB,4,1/3,1,1,false");

    const RunResult loose = run_census("cprime --k 2 --word abAB --lambda 1/2");
    REQUIRE(loose.exit_code == 0);
    CHECK(csv_body(loose.out)[1] == "abAB,4,1/2,1,2,true");
  }
  SECTION("input validation") {
    CHECK(run_census("cprime --k 2 --word 'ab!'").exit_code == 2);
    CHECK(run_census("cprime --k 2 --word abBa").exit_code == 2);
  }
  SECTION("--reduce accepts unreduced input") {
    const RunResult r = run_census("cprime --k 2 --word abBa --reduce");
    REQUIRE(r.exit_code == 0);
    const auto body = csv_body(r.out);
    CHECK(starts_with(body[1], "aa,2,"));
    CHECK(ends_with(body[1], ",false"));
  }
}

TEST_CASE("encode subcommand") {
  const std::string in =
      write_temp("commutator.txt", "gens: 2\nrel: abAB\n");
  SECTION("encoding the commutator presentation") {
    const RunResult r = run_census("encode --in " + in);
    REQUIRE(r.exit_code == 0);
    const auto body = csv_body(r.out);
    REQUIRE(body.size() == 2);
    CHECK(body[0] ==
          "generators,relators,ell,ell_1,six_letter,binary,length_bound");
    CHECK(body[1] ==
          "2,1,2,4,10|b1b10-b1-b10,"
          "010001101000010000010001011000010011000010001,23");
  }
  SECTION("decoding round-trips to presentation text") {
    const RunResult r = run_census("encode --decode '10|b1b10-b1-b10'");
    REQUIRE(r.exit_code == 0);
    CHECK(has_meta(r.out, "six_letter", "10|b1b10-b1-b10"));
    CHECK(r.out.find("gens: 2\n") != std::string::npos);
    CHECK(r.out.find("rel: abAB\n") != std::string::npos);
  }
  SECTION("malformed six-letter strings are input errors") {
    CHECK(run_census("encode --decode 'xx'").exit_code == 2);
  }
  SECTION("exactly one of --in and --decode") {
    const RunResult neither = run_census("encode");
    CHECK(neither.exit_code == 2);
    CHECK(neither.err.find("--in or --decode") != std::string::npos);
    CHECK(run_census("encode --in " + in + " --decode '10|'").exit_code == 2);
  }
  SECTION("unreadable input file") {
    CHECK(run_census("encode --in /nonexistent/path.txt").exit_code == 2);
  }
}

TEST_CASE("tietze subcommand") {
  SECTION("cascading elimination down to one generator") {
    const std::string in =
        write_temp("tietze_in.txt", "gens: 2\nrel: AB\nrel: aaaabab\n");
    const RunResult r = run_census("tietze --in " + in);
    REQUIRE(r.exit_code == 0);
    CHECK(has_meta(r.out, "ell_before", "5"));
    CHECK(has_meta(r.out, "ell_after", "1"));
    CHECK(r.out.find("gens: 1\n") != std::string::npos);
    CHECK(r.out.find("rel: aaa\n") != std::string::npos);
  }
  SECTION("squared relator is refused without the flag") {
    const std::string in = write_temp("tietze_sq.txt", "gens: 2\nrel: aa\n");
    const RunResult r = run_census("tietze --in " + in);
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("refused") != std::string::npos);
  }
  SECTION("malformed presentation text") {
    const std::string in = write_temp("tietze_bad.txt", "nonsense\n");
    CHECK(run_census("tietze --in " + in).exit_code == 2);
  }
}

TEST_CASE("dehn subcommand") {
  const CyclicWord r = generic_relator(1, 60);
  const std::string rel = word_to_text(r.representative());

  SECTION("the relator itself reduces to the empty word in one step") {
    const RunResult res =
        run_census("dehn --k 2 --relator " + rel + " --word " + rel);
    REQUIRE(res.exit_code == 0);
    const auto body = csv_body(res.out);
    REQUIRE(body.size() == 2);
    CHECK(body[0] == "relator,word,in_closure,steps,reduced");
    CHECK(body[1] == rel + "," + rel + ",true,1,");
  }
  SECTION("short words outside the closure survive unchanged") {
    const RunResult res =
        run_census("dehn --k 2 --relator " + rel + " --word abab");
    REQUIRE(res.exit_code == 0);
    CHECK(ends_with(csv_body(res.out)[1], ",false,0,abab"));
  }
  SECTION("trace mode emits one row per replacement") {
    const RunResult res =
        run_census("dehn --k 2 --relator " + rel + " --word " + rel + " --trace");
    REQUIRE(res.exit_code == 0);
    CHECK(has_meta(res.out, "in_closure", "true"));
    CHECK(has_meta(res.out, "reduced", ""));
    const auto body = csv_body(res.out);
    REQUIRE(body.size() == 2);
    CHECK(body[0] == "step,position,fragment,length_before,length_after");
    CHECK(starts_with(body[1], "1,"));
    CHECK(ends_with(body[1], ",60,0"));
  }
  SECTION("relators outside the small-cancellation class are rejected") {
    const RunResult res = run_census("dehn --k 2 --relator abab --word a");
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("error:") != std::string::npos);
  }
}

TEST_CASE("search subcommand") {
  SECTION("a rank-one torsion presentation has no generic counterpart") {
    const std::string in = write_temp("search_a.txt", "gens: 1\nrel: a\n");
    const RunResult r = run_census("search --in " + in + " --rank 1");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("no isomorphic") != std::string::npos);
  }
  SECTION("a generic relator presentation is found via its own relator") {
    const CyclicWord v = generic_relator(2, 60);
    const std::string text = word_to_text(v.representative());
    const std::string in =
        write_temp("search_v.txt", "gens: 2\nrel: " + text + "\n");
    const RunResult r = run_census("search --in " + in);
    REQUIRE(r.exit_code == 0);
    CHECK(has_meta(r.out, "rank", "2"));
    CHECK(r.out.find("gens: 2\n") != std::string::npos);
    CHECK(r.out.find("rel: " + text + "\n") != std::string::npos);
  }
}

TEST_CASE("recover subcommand") {
  // The ten-letter uniqueness guarantee belongs to the orbit-canonical form,
  // so that is the string the presentation file carries.
  const CyclicWord v = generic_relator(3, 60);
  const std::string text = word_to_text(canonical_form(v, 2));
  const std::string in =
      write_temp("recover_v.txt", "gens: 2\nrel: " + text + "\n");

  SECTION("a ten-letter prefix pins the relator down") {
    const RunResult r =
        run_census("recover --in " + in + " --prefix " + text.substr(0, 10));
    REQUIRE(r.exit_code == 0);
    const auto body = csv_body(r.out);
    REQUIRE(body.size() == 2);
    CHECK(body[0] == "status,relator,match_count");
    CHECK(body[1] == "found," + text + ",1");
  }
  SECTION("the empty prefix is ambiguous") {
    const RunResult r = run_census("recover --in " + in + " --prefix \"\"");
    REQUIRE(r.exit_code == 0);
    const auto body = csv_body(r.out);
    CHECK(starts_with(body[1], "ambiguous,,"));
    const long matches = std::stol(body[1].substr(body[1].rfind(',') + 1));
    CHECK(matches >= 2);
  }
  SECTION("exhausting the budget on a non-generic presentation") {
    const std::string bad =
        write_temp("recover_bad.txt", "gens: 2\nrel: abAB\n");
    const RunResult r =
        run_census("recover --in " + bad + " --prefix a --max-len 10");
    CHECK(r.exit_code == 3);
    CHECK(csv_body(r.out)[1] == "not-found,,0");
  }
}

TEST_CASE("generic-fraction subcommand") {
  SECTION("small lengths use the exact census and are deterministic") {
    const std::string args =
        "generic-fraction --k 2 --n 4,5 --samples 10 --seed 1";
    const RunResult first = run_census(args);
    const RunResult second = run_census(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(has_meta(first.out, "predicate", "e-set"));
    CHECK(has_meta(first.out, "lambda", "1/6"));
    const auto body = csv_body(first.out);
    REQUIRE(body.size() == 3);
    CHECK(body[0] == "n,samples,hits,density,ci_halfwidth");
    CHECK(starts_with(body[1], "4,84,0,0,"));
    CHECK(starts_with(body[2], "5,244,0,0,"));
  }
  SECTION("long lengths fall back to sampling") {
    const RunResult r = run_census(
        "generic-fraction --k 2 --n 25 --samples 50 --seed 9 --predicate cprime");
    REQUIRE(r.exit_code == 0);
    CHECK(starts_with(csv_body(r.out)[1], "25,50,"));
  }
  SECTION("relabeling-dependent predicates require --tau") {
    const RunResult r = run_census(
        "generic-fraction --k 2 --n 4 --samples 10 --seed 1 --predicate s-set");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("--tau is required") != std::string::npos);
  }
}

TEST_CASE("kolmogorov subcommand is deterministic for a fixed seed") {
  const std::string args = "kolmogorov --k 2 --n 50 --c 4 --samples 100 --seed 7";
  const RunResult first = run_census(args);
  const RunResult second = run_census(args);
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
  const auto body = csv_body(first.out);
  REQUIRE(body.size() == 2);
  CHECK(body[0] ==
        "k,n,c,samples,seed,threshold_bits,hits,fraction,median_bits,"
        "fraction_bound,mu,delta,direct_count,periodic_count");
  CHECK(starts_with(body[1], "2,50,4,100,7,"));
  const auto fields = [&] {
    std::vector<std::string> f;
    std::istringstream row(body[1]);
    std::string field;
    while (std::getline(row, field, ',')) f.push_back(field);
    return f;
  }();
  REQUIRE(fields.size() == 14);
  CHECK(std::stol(fields[12]) + std::stol(fields[13]) == 100);
}

TEST_CASE("json and output redirection") {
  SECTION("--json emits a single object with typed sections") {
    const RunResult r = run_census("count --k 2 --n-max 3 --json");
    REQUIRE(r.exit_code == 0);
    REQUIRE(!r.out.empty());
    CHECK(r.out[0] == '{');
    CHECK(r.out.find("\"tool\": \"census\"") != std::string::npos);
    CHECK(r.out.find("\"subcommand\": \"count\"") != std::string::npos);
    CHECK(r.out.find("\"rows\"") != std::string::npos);
    CHECK(r.out.find("\"rho_cyclic\": \"45\"") != std::string::npos);
  }
  SECTION("presentations also serialize to json") {
    const RunResult r = run_census("encode --decode '10|b1b10-b1-b10' --json");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"presentation\"") != std::string::npos);
    CHECK(r.out.find("\"relators\"") != std::string::npos);
  }
  SECTION("--output writes the file and keeps stdout quiet") {
    const std::string path = work_dir() + "/count_out.csv";
    const RunResult r = run_census("count --k 2 --n-max 3 --output " + path);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    CHECK(starts_with(slurp(path), "# census 1.0.0"));
  }
  SECTION("unwritable output paths are input errors") {
    CHECK(run_census("count --k 2 --n-max 3 --output /nonexistent/dir/f.csv")
              .exit_code == 2);
  }
}

TEST_CASE("verify subcommand") {
  SECTION("a single passing criterion") {
    const RunResult r = run_census("verify --criterion 11");
    REQUIRE(r.exit_code == 0);
    CHECK(has_meta(r.out, "criteria", "11"));
    const auto body = csv_body(r.out);
    REQUIRE(body.size() == 2);
    CHECK(body[0] == "id,name,pass,detail");
    CHECK(starts_with(body[1], "11,prefix-code accounting,true,"));
    CHECK(r.err.find("criterion 11 (prefix-code accounting): pass") !=
          std::string::npos);
  }
  SECTION("criteria run in the requested order") {
    const RunResult r = run_census("verify --criterion 2,1");
    REQUIRE(r.exit_code == 0);
    const auto body = csv_body(r.out);
    REQUIRE(body.size() == 3);
    CHECK(starts_with(body[1], "2,"));
    CHECK(starts_with(body[2], "1,"));
  }
  SECTION("criterion ids are range-checked") {
    CHECK(run_census("verify --criterion 13").exit_code == 2);
  }
}
