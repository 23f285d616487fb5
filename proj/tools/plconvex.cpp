// plconvex: verify whether a piecewise-linear closed surface bounds a convex
// polyhedron; also generates test instances, runs the brute-force oracle, and
// benchmarks the verifier.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "plconvex/bench.hpp"
#include "plconvex/generator.hpp"
#include "plconvex/io.hpp"
#include "plconvex/oracle.hpp"
#include "plconvex/verifier.hpp"

namespace {

using namespace plconvex;

constexpr int kExitConvex = 0;
constexpr int kExitNotConvex = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUncertain = 3;
constexpr int kExitUsage = 4;

std::string slurp(const std::string& path, bool* ok) {
  *ok = true;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *ok = false;
    return {};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Format pick_format(const std::string& name, const std::string& path,
                   const std::string& content) {
  if (name == "off") return Format::OFF;
  if (name == "plposet") return Format::PLPOSET;
  auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    if (ext == "off") return Format::OFF;
    if (ext == "json" || ext == "plposet") return Format::PLPOSET;
  }
  std::istringstream sniff(content);
  return detect_format(sniff);
}

int load_surface(const std::string& path, const std::string& format,
                 PLSurface* out) {
  bool ok = false;
  std::string content = slurp(path, &ok);
  if (!ok) {
    std::cerr << "plconvex: cannot read '" << path << "'\n";
    return kExitUsage;
  }
  try {
    std::istringstream in(content);
    *out = parse_surface(in, pick_format(format, path, content));
  } catch (const std::exception& e) {
    std::cerr << "plconvex: " << e.what() << "\n";
    return kExitInvalid;
  }
  return -1;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Convex: return kExitConvex;
    case Verdict::NotConvex: return kExitNotConvex;
    case Verdict::Invalid: return kExitInvalid;
    case Verdict::Uncertain: return kExitUncertain;
  }
  return kExitUsage;
}

void print_human(const Report& r, std::ostream& out) {
  out << "verdict: " << verdict_name(r.verdict) << "\n";
  if (r.witness_face)
    out << "witness: face " << r.witness_face->index << " (dimension "
        << r.witness_face->dim << ")\n";
  if (!r.reason.empty()) out << "reason: " << r.reason << "\n";
  out << "counts: f0=" << r.counts.f0 << " f_n3=" << r.counts.f_center
      << " f_n2=" << r.counts.f_ridge << " f_n1=" << r.counts.f_facet
      << " f_n3_n2=" << r.counts.center_ridge
      << " f_n3_n1=" << r.counts.center_facet
      << " f_n2_n1=" << r.counts.ridge_facet << "\n";
  out << "max predicate degree: " << r.audit.max_degree() << "\n";
  out << "elapsed: " << r.elapsed_ms << " ms\n";
}

int run_check(const std::string& path, const std::string& format,
              const std::string& mode_name, double eps, uint64_t seed,
              int jobs, const std::string& output) {
  PLSurface s;
  if (int rc = load_surface(path, format, &s); rc >= 0) return rc;
  Mode mode = mode_name == "float" ? Mode::floating(eps, seed) : Mode::exact(seed);
  Report rep = jobs > 1 ? check_convexity_parallel(s, mode, jobs)
                        : check_convexity(s, mode);
  if (output == "json")
    std::cout << report_json(rep).dump(2) << "\n";
  else
    print_human(rep, std::cout);
  return verdict_exit(rep.verdict);
}

int run_gen(const std::string& family, int dim, int num_points, uint64_t seed,
            const std::string& depth, const std::string& base_family,
            int base_num_points, int wound_k, const std::string& format,
            const std::string& out_path) {
  auto family_of = [](const std::string& name) -> GenSpec::Family {
    if (name == "cube") return GenSpec::Family::Cube;
    if (name == "simplex") return GenSpec::Family::Simplex;
    if (name == "cross-polytope") return GenSpec::Family::CrossPolytope;
    if (name == "hypercube") return GenSpec::Family::Hypercube;
    if (name == "random-hull") return GenSpec::Family::RandomHull;
    if (name == "dented") return GenSpec::Family::Dented;
    if (name == "wound-fan") return GenSpec::Family::WoundFan;
    throw GenError("unknown family '" + name + "'");
  };
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "plconvex: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    out = &file;
  }
  try {
    GenSpec spec;
    spec.family = family_of(family);
    spec.ambient_dim = dim;
    spec.num_points = num_points;
    spec.seed = seed;
    spec.dent_depth = parse_rational(depth);
    spec.wound_k = wound_k;
    if (spec.family == GenSpec::Family::Dented) {
      auto base = std::make_shared<GenSpec>();
      base->family = family_of(base_family);
      base->ambient_dim = dim;
      base->num_points = base_num_points;
      base->seed = mix_seed(seed, 0xBA5E);
      spec.base = base;
    }
    if (spec.family == GenSpec::Family::WoundFan) {
      emit_fan(generate_fan(spec), *out);
      return 0;
    }
    PLSurface s = generate(spec);
    Format f = format == "off" ? Format::OFF : Format::PLPOSET;
    emit_surface(s, f, *out);
  } catch (const std::exception& e) {
    std::cerr << "plconvex: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}

int run_oracle(const std::string& path, const std::string& format) {
  PLSurface s;
  if (int rc = load_surface(path, format, &s); rc >= 0) return rc;
  try {
    auto poset = validate_poset(s);
    if (!poset.ok) {
      std::cout << "invalid: " << poset.reason << " at face "
                << poset.face.index << " (dimension " << poset.face.dim
                << ")\n";
      return kExitInvalid;
    }
    auto v = supporting_hyperplane_oracle(s);
    if (v.convex) {
      std::cout << "convex: every facet hyperplane supports the vertex set\n";
      return kExitConvex;
    }
    std::cout << "not convex: facet " << v.failing_facet->index
              << " has vertex " << v.strictly_outside_vertex->index
              << " strictly outside its hyperplane\n";
    return kExitNotConvex;
  } catch (const std::exception& e) {
    std::cerr << "plconvex: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int run_bench_cmd(const std::string& sizes_arg, uint64_t seed,
                  const std::string& mode_name, double eps, int jobs,
                  const std::string& out_path) {
  std::vector<int> sizes;
  std::stringstream ss(sizes_arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      sizes.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      std::cerr << "plconvex: bad size '" << tok << "'\n";
      return kExitUsage;
    }
  }
  if (sizes.empty()) {
    std::cerr << "plconvex: no benchmark sizes\n";
    return kExitUsage;
  }
  Mode mode = mode_name == "float" ? Mode::floating(eps, seed) : Mode::exact(seed);
  try {
    BenchResult result = run_bench(sizes, seed, mode, jobs);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
      file.open(out_path, std::ios::binary);
      if (!file) {
        std::cerr << "plconvex: cannot write '" << out_path << "'\n";
        return kExitUsage;
      }
      out = &file;
    }
    bench_csv(result, mode, *out);
  } catch (const std::exception& e) {
    std::cerr << "plconvex: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convexity verification for piecewise-linear closed surfaces"};
  app.require_subcommand(1);

  std::string input, format = "auto", mode = "exact", output = "human";
  double eps = 1e-9;
  uint64_t seed = 0;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;

  auto* check = app.add_subcommand("check", "verify convexity of a surface");
  check->add_option("input", input, "OFF or PLPOSET file ('-' for stdin)")
      ->required();
  check->add_option("--format", format, "auto|off|plposet")
      ->check(CLI::IsMember({"auto", "off", "plposet"}));
  check->add_option("--mode", mode, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  check->add_option("--eps", eps, "float-mode tolerance");
  check->add_option("--jobs", jobs, "worker threads");
  check->add_option("--seed", seed, "seed for randomized stages")
      ->envname("PLCONVEX_SEED");
  check->add_option("--output", output, "human|json")
      ->check(CLI::IsMember({"human", "json"}));

  std::string family = "random-hull", base_family = "cube", depth = "2/5";
  std::string gen_format = "plposet", gen_out;
  int dim = 3, num_points = 50, base_num_points = 50, wound_k = 7;
  uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate test instances");
  gen->add_option("--family", family,
                  "cube|simplex|cross-polytope|hypercube|random-hull|dented|"
                  "wound-fan");
  gen->add_option("--dim", dim, "ambient dimension (3 or 4)");
  gen->add_option("--num-points", num_points, "sample size for random hulls");
  gen->add_option("--seed", gen_seed, "generator seed")->envname("PLCONVEX_SEED");
  gen->add_option("--dent-depth", depth, "dent depth in (0,1), rational");
  gen->add_option("--base", base_family, "base family for dented instances");
  gen->add_option("--base-num-points", base_num_points,
                  "sample size of a random-hull dent base");
  gen->add_option("--wound-k", wound_k, "ray count of the wound fan (odd >= 5)");
  gen->add_option("--format", gen_format, "off|plposet")
      ->check(CLI::IsMember({"off", "plposet"}));
  gen->add_option("-o,--output", gen_out, "output path (default stdout)");

  std::string oracle_input, oracle_format = "auto";
  auto* oracle = app.add_subcommand("oracle",
                                    "brute-force supporting-hyperplane check");
  oracle->add_option("input", oracle_input, "OFF or PLPOSET file")->required();
  oracle->add_option("--format", oracle_format, "auto|off|plposet")
      ->check(CLI::IsMember({"auto", "off", "plposet"}));

  std::string sizes = "100,1000,10000,100000", bench_mode = "exact", bench_out;
  double bench_eps = 1e-9;
  uint64_t bench_seed = 0;
  int bench_jobs = 1;
  auto* bench = app.add_subcommand("bench", "scaling benchmark over random hulls");
  bench->add_option("--sizes", sizes, "comma-separated vertex counts");
  bench->add_option("--seed", bench_seed, "instance seed")
      ->envname("PLCONVEX_SEED");
  bench->add_option("--mode", bench_mode, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  bench->add_option("--eps", bench_eps, "float-mode tolerance");
  bench->add_option("--jobs", bench_jobs,
                    "also time a parallel run and report the speedup");
  bench->add_option("-o,--output", bench_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (check->parsed())
    return run_check(input, format, mode, eps, seed, jobs, output);
  if (gen->parsed())
    return run_gen(family, dim, num_points, gen_seed, depth, base_family,
                   base_num_points, wound_k, gen_format, gen_out);
  if (oracle->parsed()) return run_oracle(oracle_input, oracle_format);
  if (bench->parsed())
    return run_bench_cmd(sizes, bench_seed, bench_mode, bench_eps, bench_jobs,
                         bench_out);
  return kExitUsage;
}
