#include "specrig/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "specrig/exceptional.hpp"
#include "specrig/generators.hpp"
#include "specrig/json_io.hpp"
#include "specrig/pencil.hpp"
#include "specrig/random.hpp"
#include "specrig/rigidity.hpp"
#include "specrig/spectrum.hpp"

namespace specrig::cli {

namespace {

// Raised for bad flag values and unreadable inputs; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Complex parse_complex(const std::string& s, const std::string& flag) {
  // "re" or "re,im"
  std::istringstream is(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(is >> re)) throw UsageError(flag + ": expected a number or re,im, got '" + s + "'");
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) throw UsageError(flag + ": expected re,im, got '" + s + "'");
  }
  if (std::string rest; is >> rest) throw UsageError(flag + ": trailing characters in '" + s + "'");
  return {re, im};
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

GeneratorTuple load_tuple(const std::string& path) {
  try {
    return tuple_from_json(read_json_file(path));
  } catch (const SchemaError& e) {
    const std::string what = e.what();
    throw UsageError(what.rfind(path, 0) == 0 ? what : path + ": " + what);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct FamilyArgs {
  std::string family;
  std::size_t n = 0;
  std::optional<double> nu;
  std::string alpha = "1", beta = "2", gamma = "2", delta = "1";
  std::string c = "1";
};

GeneratorTuple build_family(const FamilyArgs& a) {
  auto need_n = [&] {
    if (a.n == 0) throw UsageError("--n is required for family " + a.family);
  };
  auto need_nu = [&] {
    if (!a.nu) throw UsageError("--nu is required for family " + a.family);
    return *a.nu;
  };
  Family f;
  try {
    f = parse_family(a.family);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  switch (f) {
    case Family::snu2:
      need_n();
      return snu2_generators(a.n, need_nu());
    case Family::sl2:
      need_n();
      return sl2_generators(a.n);
    case Family::limit_nu1:
      need_n();
      return limit_generators(a.n);
    case Family::fundamental:
      return fundamental_generators(need_nu());
    case Family::one_dim:
      return one_dim_rep(parse_complex(a.c, "--c"), need_nu());
    case Family::counterexample:
      return counterexample_tuple(parse_complex(a.alpha, "--alpha"), parse_complex(a.beta, "--beta"),
                                  parse_complex(a.gamma, "--gamma"), parse_complex(a.delta, "--delta"));
    case Family::custom:
      break;
  }
  throw UsageError("family custom has no constructor; pass a tuple file instead");
}

void add_family_args(CLI::App* cmd, FamilyArgs& a) {
  cmd->add_option("--n", a.n, "dimension");
  cmd->add_option("--nu", a.nu, "deformation parameter in [-1, 1] \\ {0}");
  cmd->add_option("--alpha", a.alpha, "counterexample parameter (re or re,im)");
  cmd->add_option("--beta", a.beta, "counterexample parameter");
  cmd->add_option("--gamma", a.gamma, "counterexample parameter");
  cmd->add_option("--delta", a.delta, "counterexample parameter");
  cmd->add_option("--c", a.c, "one-dimensional representation parameter");
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void write(const std::string& text) {
    if (!cfg_.output) {
      out_ << text;
      return;
    }
    std::ofstream f(*cfg_.output, std::ios::binary);
    if (!f) throw UsageError(*cfg_.output + ": cannot open for writing");
    f << text;
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
};

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string report_text(const RigidityReport& r) {
  std::ostringstream os;
  os << "verdict: " << verdict_name(r.verdict) << "\n";
  if (!r.failed_step.empty()) os << "failed step: " << r.failed_step << "\n";
  if (r.certified_residual) os << "certified residual: " << format_real(*r.certified_residual) << "\n";
  for (const auto& [k, v] : r.condition_residuals) os << "  " << k << ": " << format_real(v) << "\n";
  for (const auto& d : r.diagnostics) {
    os << "[" << d.step << "] " << d.message << "\n";
    for (const auto& e : d.entries)
      os << "    " << e.matrix << "(" << e.i << "," << e.j << ") = " << format_real(e.value.real()) << " + "
         << format_real(e.value.imag()) << "i\n";
  }
  return os.str();
}

}  // namespace

double default_tolerance() {
  const char* env = std::getenv("SPECRIG_TOL");
  if (!env || !*env) return kDefaultTol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string("SPECRIG_TOL must be a positive number, got '") + env + "'");
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg.tol = default_tolerance();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{"specrig: joint spectra and spectral rigidity of S_nuU(2) and sl(2) generator tuples"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--tol", cfg.tol, "tolerance (default 1e-9 or $SPECRIG_TOL)")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", cfg.output, "write the result to this file instead of stdout");
  app.add_option("--threads", cfg.threads, "threads for determinant grids")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", cfg.seed, "seed for randomized fixtures");
  std::string format_name;
  app.add_option("--format", format_name, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));

  FamilyArgs fam;
  std::string base_family = "snu2", mode_name = "unitary";
  auto* gen = app.add_subcommand("gen", "construct a generator tuple");
  gen->add_option("--family", fam.family,
                  "snu2 | sl2 | limit | fundamental | onedim | counterexample | random-conjugate")
      ->required();
  add_family_args(gen, fam);
  gen->add_option("--base", base_family, "base family for random-conjugate");
  gen->add_option("--mode", mode_name, "random-conjugate mode: phase | unitary");

  std::string tuple_path, other_path, pencil_src, vars_src;
  std::vector<std::string> pencils;
  bool homogeneous = false;
  auto* det = app.add_subcommand("det", "determinantal polynomial of a pencil");
  det->add_option("--tuple", tuple_path, "tuple JSON file")->required();
  det->add_option("--pencil", pencil_src, "pencil, e.g. \"A1, A2 A2^H\"")->required();
  det->add_option("--vars", vars_src, "comma-separated variable names");
  det->add_flag("--homogeneous", homogeneous, "det(x1 M1 + ... - t I) with t appended");

  auto* lines = app.add_subcommand("lines", "line decomposition of a two-term pencil");
  lines->add_option("--tuple", tuple_path, "tuple JSON file")->required();
  lines->add_option("--pencil", pencil_src, "two-term pencil")->required();

  auto* compare = app.add_subcommand("compare", "compare pencil spectra of two tuples");
  compare->add_option("--tuple", tuple_path, "first tuple")->required();
  compare->add_option("--other", other_path, "second tuple")->required();
  compare->add_option("--pencil", pencils, "pencil (repeatable; default: the five adjoint pencils)");

  std::string rig_family;
  bool as_json = false, as_csv = false;
  auto* rigidity = app.add_subcommand("rigidity", "verify and reconstruct a unitary equivalence");
  rigidity->add_option("--tuple", tuple_path, "candidate tuple")->required();
  rigidity->add_option("--family", rig_family, "snu2 | sl2")->required()->check(CLI::IsMember({"snu2", "sl2"}));
  rigidity->add_option("--n", fam.n, "dimension")->required();
  rigidity->add_option("--nu", fam.nu, "deformation parameter (snu2)");
  rigidity->add_flag("--json", as_json, "JSON report");

  auto* exceptional = app.add_subcommand("exceptional", "exceptional parameter values for dimension n");
  exceptional->add_option("--n", fam.n, "dimension")->required();
  auto* json_flag = exceptional->add_flag("--json", as_json, "JSON output");
  exceptional->add_flag("--csv", as_csv, "CSV output")->excludes(json_flag);

  std::string orientation_src = "paper";
  auto* relations = app.add_subcommand("relations", "residuals of the deformed commutation relations");
  relations->add_option("--tuple", tuple_path, "tuple JSON file");
  relations->add_option("--family", fam.family, "family instead of a tuple file");
  add_family_args(relations, fam);
  relations->add_option("--orientation", orientation_src, "paper | swapped")
      ->check(CLI::IsMember({"paper", "swapped"}));

  auto* counter = app.add_subcommand("counterexample", "the non-rigid 3-dimensional tuple");
  counter->add_option("--alpha", fam.alpha, "re or re,im");
  counter->add_option("--beta", fam.beta, "re or re,im");
  counter->add_option("--gamma", fam.gamma, "re or re,im");
  counter->add_option("--delta", fam.delta, "re or re,im");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (!format_name.empty())
    cfg.format = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::text;
  cfg.command = app.get_subcommands().front()->get_name();
  Emitter emit(cfg, out);
  const DetOptions det_opts{false, cfg.threads};

  try {
    if (cfg.command == "gen") {
      GeneratorTuple t = [&] {
        if (fam.family != "random-conjugate") return build_family(fam);
        FamilyArgs base = fam;
        base.family = base_family;
        Rng rng(cfg.seed);
        ConjugationMode mode;
        try {
          mode = parse_conjugation_mode(mode_name);
        } catch (const std::exception& e) {
          throw UsageError(e.what());
        }
        return random_conjugate(build_family(base), mode, rng);
      }();
      emit.write(dump(tuple_to_json(t)));
      return 0;
    }

    if (cfg.command == "det") {
      const auto t = load_tuple(tuple_path);
      const Pencil p = parse_pencil(pencil_src);
      DetOptions opts = det_opts;
      opts.homogeneous = homogeneous;
      const std::size_t nvars = p.size() + (homogeneous ? 1 : 0);
      std::vector<std::string> vars = vars_src.empty() ? default_vars(nvars) : split_names(vars_src);
      if (vars_src.empty() && homogeneous) vars.back() = "t";
      if (vars.size() != nvars)
        throw UsageError("--vars: expected " + std::to_string(nvars) + " names, got " + std::to_string(vars.size()));
      const MultiPoly poly = det_pencil(evaluate(p, t), vars, opts);
      emit.write(cfg.format == Format::text ? to_string(poly) + "\n" : dump(poly_to_json(poly)));
      return 0;
    }

    if (cfg.command == "lines") {
      const auto t = load_tuple(tuple_path);
      const Pencil p = parse_pencil(pencil_src);
      if (p.size() != 2) throw UsageError("--pencil: lines needs exactly two terms");
      const auto m = evaluate(p, t);
      emit.write(dump(lines_to_json(lines_of_pair(m[0], m[1], cfg.tol))));
      return 0;
    }

    if (cfg.command == "compare") {
      const auto a = load_tuple(tuple_path);
      const auto b = load_tuple(other_path);
      std::vector<Pencil> list;
      for (const auto& s : pencils) list.push_back(parse_pencil(s));
      if (list.empty()) list = snu2_pencils();
      emit.write(dump(comparisons_to_json(spectra_equal(a, b, list, cfg.tol))));
      return 0;
    }

    if (cfg.command == "rigidity") {
      const auto t = load_tuple(tuple_path);
      if (t.n != fam.n) throw UsageError(tuple_path + ": tuple has n = " + std::to_string(t.n) + ", expected " + std::to_string(fam.n));
      RigidityReport r;
      if (rig_family == "snu2") {
        if (!fam.nu) throw UsageError("--nu is required for family snu2");
        r = reconstruct_snu2(t, fam.n, *fam.nu, cfg.tol);
      } else {
        r = reconstruct_sl2(t, fam.n, cfg.tol);
      }
      const bool json = as_json || cfg.format == Format::json;
      emit.write(json ? dump(report_to_json(r)) : report_text(r));
      return verdict_exit_code(r.verdict);
    }

    if (cfg.command == "exceptional") {
      const auto s = exceptional_set(fam.n);
      if (as_json || cfg.format == Format::json) {
        emit.write(dump(exceptional_to_json(s)));
      } else if (as_csv || cfg.format == Format::csv) {
        emit.write(exceptional_to_csv(s));
      } else {
        std::string text;
        for (const auto& r : s.roots)
          text += std::to_string(r.i) + " " + std::to_string(r.j) + " " + format_real(r.z) + " " + format_real(r.nu) + "\n";
        emit.write(text);
      }
      return 0;
    }

    if (cfg.command == "relations") {
      if (tuple_path.empty() == fam.family.empty()) throw UsageError("relations: pass exactly one of --tuple, --family");
      const auto t = tuple_path.empty() ? build_family(fam) : load_tuple(tuple_path);
      emit.write(dump(relations_to_json(relation_residuals(t, parse_orientation(orientation_src)))));
      return 0;
    }

    if (cfg.command == "counterexample") {
      fam.family = "counterexample";
      const auto t = build_family(fam);
      const auto ref = sl2_generators(3);
      const Pencil three = parse_pencil("A1, A2, A3");
      const std::vector<std::string> vars{"x", "y", "z", "t"};
      const MultiPoly pc = det_pencil(evaluate(three, t), vars, {true, cfg.threads});
      const MultiPoly pr = det_pencil(evaluate(three, ref), vars, {true, cfg.threads});
      const double d = poly_distance(pc, pr);
      Json j{{"tuple", tuple_to_json(t)},
             {"three_matrix_spectrum", {{"distance", d}, {"equal", d <= cfg.tol}, {"poly", poly_to_json(pc)}}},
             {"commutator_residual", (commutator(t.E, t.F) - t.H).hs_norm()},
             {"adjoint_pencils", comparisons_to_json(spectra_equal(t, ref, sl2_pencils(), cfg.tol))}};
      emit.write(dump(j));
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "error: --pencil: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: unknown command\n";
  return 1;
}

}  // namespace specrig::cli
