// Command-line front end: reproduces the built-in worked examples, runs the
// derived-functor and homology engines on user complexes, emits the universal
// polynomials, and generates/replays K-relation witness certificates.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lambdak/cli.hpp"

namespace {

using lambdak::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lambdak::ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw lambdak::ParseError("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

void emit(const json& j, const std::string& output, const std::string& format,
          const std::string& text) {
  std::string body = (format == "json") ? j.dump(2) + "\n" : text;
  if (output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(output);
    out << body;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for exterior powers of binary complexes"};
  app.require_subcommand(1);
  std::string format = "text", output;
  uint64_t seed = 1;
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", output, "write the result to a file");
  app.add_option("--seed", seed, "seed for randomized sweeps");

  auto* rep = app.add_subcommand("reproduce", "run a named built-in example");
  rep->fallthrough();
  std::string target;
  long rep_r = 0;
  long long rep_x = 0;
  rep->add_option("target", target,
                  "ex-invertible | ex-counterexample | ex-shift | ex-axiom2 | "
                  "ex-axiom3 | all")
      ->required();
  rep->add_option("--r", rep_r, "exterior power for ex-invertible");
  rep->add_option("--x", rep_x, "unit scalar for ex-invertible");

  auto* der = app.add_subcommand("derive", "apply a derived functor to a complex");
  der->fallthrough();
  std::string der_input, der_functor;
  der->add_option("--input", der_input, "complex JSON file")->required();
  der->add_option("--functor", der_functor, "functor text, e.g. L2 or L2@L2")
      ->required();

  auto* hom = app.add_subcommand("homology", "homology groups of a complex");
  hom->fallthrough();
  std::string hom_input;
  hom->add_option("--input", hom_input, "complex JSON file")->required();

  auto* ple = app.add_subcommand("plethysm", "the universal polynomial P_{r,s}");
  ple->fallthrough();
  long ple_r = 0, ple_s = 0;
  ple->add_option("r", ple_r)->required();
  ple->add_option("s", ple_s)->required();

  auto* lam = app.add_subcommand("lambda-check", "verify the ring axioms by degree");
  lam->fallthrough();
  long max_degree = 4;
  lam->add_option("--max-degree", max_degree, "weighted degree bound (<= 8)");

  auto* wit = app.add_subcommand("witness", "generate or replay certificates");
  wit->fallthrough();
  auto* wgen = wit->add_subcommand("gen", "generate a certificate chain");
  wgen->fallthrough();
  std::string wkind, winput, winput2, woutput;
  long wk = 1;
  wgen->add_option("kind", wkind, "shift | product")->required();
  wgen->add_option("--input", winput, "binary complex JSON file")->required();
  wgen->add_option("--input2", winput2, "second factor for product");
  wgen->add_option("--k", wk, "shift amount");
  wgen->add_option("--output", woutput, "witness file to write");
  auto* wchk = wit->add_subcommand("check", "replay a certificate chain");
  wchk->fallthrough();
  std::string wcheck_input;
  wchk->add_option("--input", wcheck_input, "witness JSON file")->required();

  auto* st = app.add_subcommand("selftest", "internal consistency sweep");
  st->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code ? 2 : 0;
  }

  try {
    if (*rep) {
      lambdak::RunReport r = lambdak::cmd_reproduce(target, rep_r, rep_x);
      emit(r.to_json(), output, format, r.to_text());
      return r.pass() ? 0 : 1;
    }
    if (*der) {
      auto res = lambdak::cmd_derive(read_json_file(der_input), der_functor);
      emit(res.output, output, "json", res.output.dump(2) + "\n");
      return 0;
    }
    if (*hom) {
      json res = lambdak::cmd_homology(read_json_file(hom_input));
      std::string text;
      for (auto& fam : res) {
        text += fam["family"].get<std::string>() + ":";
        long i = 0;
        for (auto& g : fam["homology"])
          text += " H" + std::to_string(i++) + "=" + g.get<std::string>();
        text += "\n";
      }
      emit(res, output, format, text);
      return 0;
    }
    if (*ple) {
      json res = lambdak::cmd_plethysm(ple_r, ple_s);
      emit(res, output, format,
           "P_{" + std::to_string(ple_r) + "," + std::to_string(ple_s) +
               "} = " + res["e_basis"].get<std::string>() + "\n");
      return 0;
    }
    if (*lam) {
      lambdak::RunReport r = lambdak::cmd_lambda_check(max_degree);
      emit(r.to_json(), output, format, r.to_text());
      return r.pass() ? 0 : 1;
    }
    if (*wit) {
      if (*wgen) {
        const json in = read_json_file(winput);
        json second;
        const json* second_ptr = nullptr;
        if (!winput2.empty()) {
          second = read_json_file(winput2);
          second_ptr = &second;
        }
        json chain = lambdak::cmd_witness_gen(wkind, in, wk, second_ptr);
        emit(chain, woutput.empty() ? output : woutput, "json", chain.dump(2) + "\n");
        return 0;
      }
      if (*wchk) {
        auto r = lambdak::cmd_witness_check(read_json_file(wcheck_input));
        json res{{"valid", r.ok}, {"detail", r.detail}};
        emit(res, output, format, r.ok ? "valid\n" : "invalid: " + r.detail + "\n");
        return r.ok ? 0 : 1;
      }
      std::cerr << "witness: expected gen or check\n";
      return 2;
    }
    if (*st) {
      lambdak::RunReport r = lambdak::cmd_selftest(seed);
      emit(r.to_json(), output, format, r.to_text());
      return r.pass() ? 0 : 1;
    }
  } catch (const lambdak::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const lambdak::UnknownTarget& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
