// nftab: least character nonresidues over Dirichlet character groups, cubic
// field tabulation by discriminant, and the prime-indexed average-value
// constants behind them.
//
// Progress and timings go to stderr; stdout carries the report (a human table
// by default, one JSON document with --json).  Exit codes: 0 success,
// 1 invalid arguments, 2 internal invariant failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "nftab/averages.hpp"
#include "nftab/constants.hpp"
#include "nftab/cubic_stats.hpp"
#include "nftab/report.hpp"
#include "nftab/verify.hpp"

using namespace nftab;

namespace {

constexpr const char* kVersion = "nftab 1.0.0";

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void emit(const Doc& doc, bool json) {
  if (json) {
    std::cout << doc.to_json() << "\n";
  } else {
    std::cout << doc.to_text();
  }
}

Doc make_report(const std::string& command) {
  Doc doc;
  doc.put("command", command);
  doc.put("version", kVersion);
  return doc;
}

void put_average(Doc& out, const AverageReport& r) {
  out.put("count", r.count);
  out.put("sum", r.sum);
  out.put("mean", r.mean());
  out.put("reference", r.reference.to_double());
  out.put("reference_bound", r.reference.bound);
  out.put("deviation", r.deviation());
}

i64 sieve_limit_for(i64 x) { return std::max<i64>(x, 2000000); }

std::string default_tolerances_path() {
  const char* env = std::getenv("NFTAB_TOLERANCES");
  if (env) return env;
  for (const char* p : {"tolerances.conf", "../tolerances.conf"}) {
    if (std::ifstream(p).good()) return p;
  }
  return "tolerances.conf";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"character nonresidues, cubic field tabulation, and their average-value constants"};
  app.require_subcommand(1);
  int threads = 2;
  app.add_option("--threads", threads, "worker thread cap")->capture_default_str();

  // avg-q
  auto* avgq = app.add_subcommand("avg-q", "average n_chi over nonprincipal characters mod q");
  i64 avgq_q = 7;
  bool avgq_json = false;
  avgq->add_option("--q", avgq_q, "modulus (q >= 3)")->required();
  avgq->add_flag("--json", avgq_json, "machine-readable output");

  // global
  auto* global = app.add_subcommand("global", "average n_chi over all moduli q <= x");
  i64 global_x = 10000;
  bool global_primitive = false, global_json = false;
  global->add_option("--x", global_x, "modulus bound")->required();
  global->add_flag("--primitive", global_primitive, "restrict to primitive characters");
  global->add_flag("--json", global_json, "machine-readable output");

  // erdos
  auto* erdos = app.add_subcommand("erdos", "average least quadratic nonresidue over primes <= x");
  i64 erdos_x = 100000;
  bool erdos_json = false;
  erdos->add_option("--x", erdos_x, "prime bound")->required();
  erdos->add_flag("--json", erdos_json, "machine-readable output");

  // constants
  auto* consts = app.add_subcommand("constants", "reference constants with certified bounds");
  int digits = 10;
  bool consts_json = false;
  consts->add_option("--digits", digits, "certified decimal digits (<= 30)")
      ->capture_default_str();
  consts->add_flag("--json", consts_json, "machine-readable output");

  // sums
  auto* sums = app.add_subcommand("sums", "summatory functions against their main terms");
  i64 sums_x = 1000, sums_m = 1;
  std::string sums_mode = "phi";
  bool sums_json = false;
  sums->add_option("--x", sums_x, "summation bound")->required();
  sums->add_option("--m", sums_m, "coprimality modulus")->capture_default_str();
  sums->add_option("--mode", sums_mode, "phi | phi-star | phi-ell")->capture_default_str();
  sums->add_flag("--json", sums_json, "machine-readable output");

  // cubic enum / cubic avg
  auto* cubic = app.add_subcommand("cubic", "cubic field tabulation");
  cubic->require_subcommand(1);
  auto* cenum = cubic->add_subcommand("enum", "enumerate fields by |disc| <= bound");
  i64 enum_bound = 1000;
  std::string enum_sign = "both", enum_out;
  bool enum_json = false;
  cenum->add_option("--bound", enum_bound, "discriminant bound")->required();
  cenum->add_option("--sign", enum_sign, "pos | neg | both")->capture_default_str();
  cenum->add_option("--out", enum_out, "write the field cache to FILE");
  cenum->add_flag("--json", enum_json, "machine-readable output");

  auto* cavg = cubic->add_subcommand("avg", "field-level averages and splitting densities");
  i64 avg_bound = 100000;
  std::string avg_cache;
  bool avg_json = false;
  cavg->add_option("--bound", avg_bound, "discriminant bound")->required();
  cavg->add_option("--cache", avg_cache, "load fields from a cache FILE instead of enumerating");
  cavg->add_flag("--json", avg_json, "machine-readable output");

  // verify
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  std::string suite = "fast";
  std::string tol_path = default_tolerances_path();
  bool verify_json = false;
  verify->add_option("--suite", suite, "fast | full")->capture_default_str();
  verify->add_option("--tolerances", tol_path, "tolerance config file")->capture_default_str();
  verify->add_flag("--json", verify_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    Timer timer;
    if (*avgq) {
      PrimeSieve sieve(sieve_limit_for(avgq_q));
      AverageReport r = avg_nchi_mod_q(avgq_q, sieve);
      Doc doc = make_report("avg-q");
      doc.put("q", avgq_q);
      put_average(doc, r);
      doc.put("ell", r.ell);
      doc.put("f", r.f_ord);
      emit(doc, avgq_json);
    } else if (*global) {
      PrimeSieve sieve(sieve_limit_for(global_x));
      Doc doc = make_report("global");
      doc.put("x", global_x);
      doc.put("primitive", global_primitive);
      if (global_primitive) {
        auto ref = first_failure_expectation(prob_primitive_characters(), 1e-11, sieve);
        put_average(doc, primitive_avg_nchi(global_x, sieve, ref, threads));
      } else {
        auto ref = first_failure_expectation(prob_all_characters(), 1e-11, sieve);
        put_average(doc, global_avg_nchi(global_x, sieve, ref, threads));
      }
      emit(doc, global_json);
    } else if (*erdos) {
      PrimeSieve sieve(sieve_limit_for(erdos_x));
      auto ref = first_failure_expectation(prob_constant(mpq_class(1, 2), "half"), 1e-11, sieve);
      AverageReport r = erdos_prime_avg(erdos_x, sieve, ref);
      Doc doc = make_report("erdos");
      doc.put("x", erdos_x);
      put_average(doc, r);
      emit(doc, erdos_json);
    } else if (*consts) {
      PrimeSieve sieve(2000000);
      auto table = named_constants(digits, sieve);
      Doc doc = make_report("constants");
      doc.put("digits", digits);
      auto& arr = doc.array("constants");
      for (auto& c : table) {
        Doc row;
        row.put("name", c.name);
        row.put("value", c.value.value.to_fixed_string(digits));
        row.put("bound", c.value.bound);
        arr.push_back(std::move(row));
      }
      emit(doc, consts_json);
    } else if (*sums) {
      PrimeSieve sieve(sieve_limit_for(sums_x));
      Doc doc = make_report("sums");
      doc.put("x", sums_x);
      doc.put("mode", sums_mode);
      if (sums_mode == "phi" || sums_mode == "phi-star") {
        doc.put("m", sums_m);
        auto r = sum_phi_coprime(sums_x, factorize(sums_m, sieve),
                                 sums_mode == "phi" ? PhiMode::Phi : PhiMode::PhiStar, sieve);
        doc.put("exact", r.exact);
        doc.put("main_term", r.main_term.to_double());
        doc.put("main_term_bound", r.main_term.bound);
        doc.put("deviation", r.deviation);
      } else if (sums_mode == "phi-ell") {
        auto delta = first_failure_expectation(prob_all_characters(), 1e-11, sieve);
        auto r = sum_phi_ell(sums_x, delta, sieve);
        doc.put("exact", r.exact);
        doc.put("main_term", r.main_term.to_double());
        doc.put("main_term_bound", r.main_term.bound);
        doc.put("ratio", r.ratio);
      } else {
        std::cerr << "unknown --mode: " << sums_mode << "\n";
        return 1;
      }
      emit(doc, sums_json);
    } else if (*cenum) {
      SignRange sign;
      if (enum_sign == "pos") {
        sign = SignRange::Positive;
      } else if (enum_sign == "neg") {
        sign = SignRange::Negative;
      } else if (enum_sign == "both") {
        sign = SignRange::Both;
      } else {
        std::cerr << "unknown --sign: " << enum_sign << "\n";
        return 1;
      }
      PrimeSieve sieve(sieve_limit_for(enum_bound));
      auto recs = enumerate_cubic_fields(enum_bound, sign, sieve, threads);
      if (!enum_out.empty()) {
        std::ofstream out(enum_out);
        if (!out) {
          std::cerr << "cannot open " << enum_out << "\n";
          return 1;
        }
        write_field_cache(out, recs);
        std::cerr << "wrote " << recs.size() << " records to " << enum_out << "\n";
      }
      Doc doc = make_report("cubic enum");
      doc.put("bound", enum_bound);
      doc.put("sign", enum_sign);
      doc.put("fields", static_cast<i64>(recs.size()));
      auto& arr = doc.array("records");
      size_t shown = enum_out.empty() ? recs.size() : std::min<size_t>(recs.size(), 20);
      for (size_t i = 0; i < shown; ++i) {
        Doc row;
        row.put("disc", recs[i].disc);
        row.put("a", recs[i].form.a);
        row.put("b", recs[i].form.b);
        row.put("c", recs[i].form.c);
        row.put("d", recs[i].form.d);
        row.put("n_K", recs[i].n_K);
        row.put("galois", recs[i].galois);
        arr.push_back(std::move(row));
      }
      emit(doc, enum_json);
    } else if (*cavg) {
      PrimeSieve sieve(sieve_limit_for(avg_bound));
      std::vector<CubicFieldRec> recs;
      if (!avg_cache.empty()) {
        std::ifstream in(avg_cache);
        if (!in) {
          std::cerr << "cannot open " << avg_cache << "\n";
          return 1;
        }
        recs = read_field_cache(in);
      } else {
        recs = enumerate_cubic_fields(avg_bound, SignRange::Both, sieve, threads);
      }
      auto nsc = first_failure_expectation(prob_cubic_not_split_completely(), 1e-11, sieve);
      auto cs = first_failure_expectation(prob_cubic_split_completely(), 1e-11, sieve);
      auto inert = first_failure_expectation(prob_cubic_inert(), 1e-11, sieve);
      auto ps = first_failure_expectation(prob_cubic_partially_split(), 1e-11, sieve);
      CubicAverages avgs = avg_nK_and_densities(recs, avg_bound, {2, 3, 5}, nsc, cs, inert, ps);
      Doc doc = make_report("cubic avg");
      doc.put("bound", avg_bound);
      doc.put("fields", avgs.field_count);
      doc.put("nongalois", avgs.nongalois_count);
      doc.put("count_ratio", avgs.dh_ratio);
      doc.put("n_K_eq_2_fraction",
              static_cast<double>(avgs.n_K_eq_2) / static_cast<double>(avgs.field_count));
      put_average(doc.child("n_K"), avgs.avg_n_K);
      put_average(doc.child("least_split_completely"), avgs.least_split_completely);
      put_average(doc.child("least_inert"), avgs.least_inert);
      put_average(doc.child("least_partially_split_nongalois"), avgs.least_partially_split);
      auto& freqs = doc.array("splitting_frequencies");
      for (auto& tf : avgs.type_freq) {
        Doc row;
        row.put("p", tf.p);
        for (int t = 0; t < 5; ++t) {
          auto st = static_cast<SplittingType>(t);
          Doc& cell = row.child(splitting_type_name(st));
          cell.put("empirical", tf.frequency(st));
          cell.put("local_density", local_density(st, tf.p).get_d());
        }
        freqs.push_back(std::move(row));
      }
      emit(doc, avg_json);
    } else if (*verify) {
      if (suite != "fast" && suite != "full") {
        std::cerr << "unknown --suite: " << suite << "\n";
        return 1;
      }
      Tolerances tol = Tolerances::load(tol_path);
      auto results = run_acceptance(suite == "full", tol, threads, &std::cerr);
      Doc doc = make_report("verify");
      doc.put("suite", suite);
      bool all_pass = true;
      auto& arr = doc.array("criteria");
      for (auto& r : results) {
        all_pass = all_pass && r.pass;
        Doc row;
        row.put("criterion", static_cast<i64>(r.number));
        row.put("id", r.id);
        row.put("pass", r.pass);
        row.put("detail", r.detail);
        arr.push_back(std::move(row));
        if (!verify_json) {
          std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.number << "  " << r.id
                    << "\n";
          if (!r.detail.empty()) std::cout << r.detail;
        }
      }
      doc.put("all_pass", all_pass);
      if (verify_json) {
        emit(doc, true);
      } else {
        std::cout << (all_pass ? "all criteria passed" : "SOME CRITERIA FAILED") << "\n";
      }
      std::cerr << "total " << timer.seconds() << "s\n";
      return all_pass ? 0 : 1;
    }
    std::cerr << "done in " << timer.seconds() << "s\n";
    return 0;
  } catch (const internal_error& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
