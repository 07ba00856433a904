#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "detset/detset.hpp"

namespace {

using namespace detset;

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) raise(Errc::usage, "cannot open output file: " + path);
    stream = &file;
  }
};

RingSpec ring_from_flags(const std::string& ring, std::uint64_t p) {
  if (ring == "int") return RingSpec::integers();
  if (ring == "fp") return RingSpec::prime_field(p);
  raise(Errc::usage, "ring must be fp or int");
}

template <class R>
ElemSet<R> parse_set_warned(const R& ring, const std::string& literal) {
  ParsedSet info;
  ElemSet<R> a = parse_set(ring, literal, &info);
  if (a.size() < info.tokens)
    std::cerr << "warning: set literal has " << info.tokens
              << " entries but only " << a.size()
              << " distinct canonical elements\n";
  return a;
}

struct DsetArgs {
  std::string ring = "fp";
  std::uint64_t p = 0;
  std::string set_literal;
  std::size_t n = 2;
  std::string method = "naive";
  std::uint64_t max_matrices = 10'000'000;
  double max_seconds = 300.0;
  unsigned jobs = 1;
  std::string format = "text";
  std::string out;
};

int run_dset(const DsetArgs& args) {
  OutputTarget out;
  out.open(args.out);
  return with_ring(ring_from_flags(args.ring, args.p), [&](auto ring) {
    using R = decltype(ring);
    ElemSet<R> a = parse_set_warned(ring, args.set_literal);
    EnumBudget budget{args.max_matrices, args.max_seconds,
                      args.method == "cofactor" ? EnumBudget::Method::Cofactor
                                                : EnumBudget::Method::Naive};

    std::vector<ElemSet<R>> results;
    std::vector<std::string> used;
    if (args.method == "naive" || args.method == "both") {
      results.push_back(dset_naive(a, args.n, budget, args.jobs));
      used.push_back("naive");
    }
    if (args.method == "cofactor" || args.method == "both") {
      results.push_back(dset_cofactor(a, args.n, budget, args.jobs));
      used.push_back("cofactor");
    }
    if (results.empty())
      raise(Errc::usage, "method must be naive, cofactor or both");
    if (results.size() == 2 && results[0] != results[1]) {
      std::cerr << "method mismatch: naive " << format_set(results[0])
                << " vs cofactor " << format_set(results[1]) << "\n";
      return 1;
    }

    const ElemSet<R>& d = results[0];
    if (args.format == "json") {
      Json j;
      j["ring"] = args.ring;
      if constexpr (is_prime_field_v<R>) j["p"] = ring.modulus();
      j["n"] = args.n;
      j["method"] = args.method;
      j["set"] = set_to_json(d);
      j["size"] = d.size();
      *out.stream << j.dump() << "\n";
    } else if (args.format == "csv") {
      *out.stream << "value\n";
      d.for_each([&](const typename R::Elem& e) {
        *out.stream << ring.str(e) << "\n";
      });
    } else {
      *out.stream << "D_" << args.n << "(A) = " << format_set(d) << "\n"
                  << "|D_" << args.n << "(A)| = " << d.size() << "\n";
    }
    return 0;
  });
}

struct WitnessArgs {
  std::string ring = "fp";
  std::uint64_t p = 0;
  std::string set_literal;
  std::size_t m = 1, n = 2;
  std::string target = "0";
  bool cover = false;
  std::size_t budget = 64;
  unsigned jobs = 1;
  std::string out;
};

int run_witness(const WitnessArgs& args) {
  OutputTarget out;
  out.open(args.out);
  if (args.cover) {
    if (args.ring != "fp")
      raise(Errc::usage, "coverage witnesses need a prime field");
    Fp ring(args.p);
    ElemSet<Fp> a = parse_set_warned(ring, args.set_literal);
    CoverageCertificate<Fp> cert = coverage_certificate(a, args.budget);
    std::vector<Json> lines = parallel_map<Json>(
        ring.modulus(), args.jobs, [&](std::size_t t) {
          Json j = witness_to_json(cert.witness_for(t));
          j["target"] = t;
          j["certified_size"] = cert.matrix_size;
          return j;
        });
    for (const Json& j : lines) *out.stream << j.dump() << "\n";
    return 0;
  }
  return with_ring(ring_from_flags(args.ring, args.p), [&](auto ring) {
    using R = decltype(ring);
    ElemSet<R> a = parse_set_warned(ring, args.set_literal);
    typename R::Elem target = ring.from_integer(Int(args.target));
    GadgetWitness<R> w = synthesize_witness(a, args.m, args.n, target);
    *out.stream << witness_to_json(w).dump() << "\n";
    return 0;
  });
}

struct VerifyArgs {
  std::vector<std::string> suites;
  std::uint64_t seed = VerifyOptions{}.seed;
  unsigned jobs = 1;
  std::string format = "jsonl";
  std::string out;
};

int run_verify(const VerifyArgs& args) {
  OutputTarget out;
  out.open(args.out);
  std::vector<std::string> names = args.suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all"))
    names = suite_names();
  VerifyOptions opt;
  opt.seed = args.seed;
  opt.jobs = args.jobs;
  std::vector<BoundReport> reports = run_suites(names, opt);
  *out.stream << (args.format == "csv" ? render_csv(reports)
                                       : render_jsonl(reports));
  bool all_pass = true;
  for (const BoundReport& r : reports) all_pass = all_pass && r.pass;
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact determinant-set toolkit: enumeration, gadget witness "
               "synthesis, and growth-bound verification"};
  app.require_subcommand(1);

  DsetArgs dset_args;
  CLI::App* dset_cmd =
      app.add_subcommand("dset", "enumerate the determinant set D_n(A)");
  dset_cmd->add_option("--ring", dset_args.ring, "fp or int")
      ->check(CLI::IsMember({"fp", "int"}));
  dset_cmd->add_option("--p", dset_args.p, "prime modulus for fp");
  dset_cmd->add_option("--set", dset_args.set_literal,
                       "comma-separated entry set, e.g. 0,1,3")
      ->required();
  dset_cmd->add_option("--n", dset_args.n, "matrix size")->required();
  dset_cmd->add_option("--method", dset_args.method, "naive, cofactor or both")
      ->check(CLI::IsMember({"naive", "cofactor", "both"}));
  dset_cmd->add_option("--max-matrices", dset_args.max_matrices,
                       "enumeration budget");
  dset_cmd->add_option("--max-seconds", dset_args.max_seconds,
                       "wall-clock budget");
  dset_cmd->add_option("--jobs", dset_args.jobs, "worker threads");
  dset_cmd->add_option("--format", dset_args.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  dset_cmd->add_option("--out", dset_args.out, "write output to a file");

  WitnessArgs witness_args;
  CLI::App* witness_cmd = app.add_subcommand(
      "witness", "synthesize a verified determinant witness matrix");
  witness_cmd->add_option("--ring", witness_args.ring, "fp or int")
      ->check(CLI::IsMember({"fp", "int"}));
  witness_cmd->add_option("--p", witness_args.p, "prime modulus for fp");
  witness_cmd->add_option("--set", witness_args.set_literal, "allowed entries")
      ->required();
  witness_cmd->add_option("--m", witness_args.m, "number of summands");
  witness_cmd->add_option("--n", witness_args.n, "factors per summand");
  witness_cmd->add_option("--target", witness_args.target,
                          "determinant value to realize");
  witness_cmd->add_flag("--cover", witness_args.cover,
                        "emit one witness per field element");
  witness_cmd->add_option("--budget", witness_args.budget,
                          "matrix size budget for --cover");
  witness_cmd->add_option("--jobs", witness_args.jobs, "worker threads");
  witness_cmd->add_option("--out", witness_args.out, "write output to a file");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run named check suites and stream reports");
  verify_cmd->add_option("--suite", verify_args.suites,
                         "suites to run (default: all): lemma1 theorem1 "
                         "lemma2 cor3 cor4 example1 permanent cd");
  verify_cmd->add_option("--seed", verify_args.seed, "seed for random suites");
  verify_cmd->add_option("--jobs", verify_args.jobs, "worker threads");
  verify_cmd->add_option("--format", verify_args.format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  verify_cmd->add_option("--out", verify_args.out, "write output to a file");

  try {
    app.parse(argc, argv);
    if (dset_cmd->parsed()) return run_dset(dset_args);
    if (witness_cmd->parsed()) return run_witness(witness_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    return 5;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 5;
  } catch (const detset::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return detset::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
