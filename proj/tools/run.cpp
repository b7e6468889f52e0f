#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace k3lab::cli {

namespace {

std::pair<std::complex<double>, std::complex<double>> parse_center(const std::string& s) {
  // split at the comma outside any number
  auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
    throw UsageError("--center expects lambda,mu");
  return {parse_complex(s.substr(0, comma)), parse_complex(s.substr(comma + 1))};
}

Rational parse_point(const std::string& name, const std::string& v) {
  try {
    return parse_rational(v);
  } catch (const std::exception&) {
    throw UsageError("bad rational for " + name + ": '" + v + "'");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numerical checks for four families of lattice-polarized K3 surfaces", "k3lab"};
  app.require_subcommand(1);

  std::string config_file, cache_dir, format = "json";
  int order = 0, bound = 0;
  double tol = 0;
  bool timings = false;
  auto* o_order = app.add_option("--order", order, "series order N (default 14)");
  auto* o_tol = app.add_option("--tol", tol, "transport tolerance (default 1e-10)");
  auto* o_bound = app.add_option("--bound", bound, "entry bound for lattice searches (default 3)");
  auto* o_cache = app.add_option("--cache", cache_dir, "cache directory (overrides K3LAB_CACHE)");
  app.add_option("--config", config_file, "key=value config file")->check(CLI::ExistingFile);
  app.add_flag("--timings", timings, "include per-claim runtimes");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* verify = app.add_subcommand("verify", "run one verification suite");
  verify->require_subcommand(1);
  int family = -1;
  auto family_opt = [&](CLI::App* s) { s->add_option("--family", family, "family 0..3")->check(CLI::Range(0, 3)); };
  auto* v_lat = verify->add_subcommand("lattices", "determinants, certificates, complements");
  auto* v_gkz = verify->add_subcommand("gkz", "period operators and GKZ reduction");
  family_opt(v_gkz);
  auto* v_pf = verify->add_subcommand("pfaffian", "Pfaffian systems");
  family_opt(v_pf);
  auto* v_hil = verify->add_subcommand("hilbert", "uniformizing equation");
  auto* v_poly = verify->add_subcommand("polytopes", "reflexive and Fano flags");
  auto* v_fib = verify->add_subcommand("fibres", "fibre tables at pseudo-random points");
  auto* v_mon = verify->add_subcommand("monodromy", "group generators and local monodromies");

  auto* hil = app.add_subcommand("hilbert", "uniformizing equation");
  hil->require_subcommand(1);
  auto* hil_all = hil->add_subcommand("verify-all", "same as verify hilbert");

  auto* fib = app.add_subcommand("fibres", "singular fibres at a parameter point");
  std::string lambda_s, mu_s;
  bool alternate = false;
  fib->add_option("--family", family, "family 0..3")->required()->check(CLI::Range(0, 3));
  fib->add_option("--lambda", lambda_s, "rational lambda")->required();
  fib->add_option("--mu", mu_s, "rational mu")->required();
  fib->add_flag("--alternate", alternate, "second fibration of family 3");

  auto* mon = app.add_subcommand("monodromy", "monodromy along one loop");
  LoopSpec spec;
  std::string center;
  mon->add_option("--family", spec.family, "family 0..3")->required()->check(CLI::Range(0, 3));
  mon->add_option("--loop", spec.kind, "lambda-circle, mu-circle or disc-circle")
      ->required()
      ->check(CLI::IsMember({"lambda-circle", "mu-circle", "disc-circle"}));
  mon->add_option("--center", center, "lambda,mu (complex as a+bi)")->required();
  mon->add_option("--radius", spec.radius, "circle radius")->required();

  auto* rep = app.add_subcommand("report", "all suites");

  for (CLI::App* s : {verify, v_lat, v_gkz, v_pf, v_hil, v_poly, v_fib, v_mon, hil, hil_all, fib, mon, rep})
    s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Config c;
    if (!config_file.empty()) c = load_config_file(config_file, c);
    if (const char* env = std::getenv("K3LAB_CACHE"); env && *env) c.cache = env;
    if (o_cache->count()) c.cache = cache_dir;
    if (o_order->count()) c.order = order;
    if (o_tol->count()) c.tol = tol;
    if (o_bound->count()) c.bound = bound;
    c.timings = timings;
    c.validate();
    std::optional<Cache> cache;
    if (!c.cache.empty()) cache.emplace(c.cache);
    const Cache* cp = cache ? &*cache : nullptr;
    std::optional<int> fam = family >= 0 ? std::optional<int>(family) : std::nullopt;

    Report r;
    r.config = c;
    if (v_lat->parsed()) {
      r.command = "verify lattices";
      r.claims = suite_lattices(c);
    } else if (v_gkz->parsed()) {
      r.command = "verify gkz";
      r.claims = suite_gkz(c, fam, cp);
    } else if (v_pf->parsed()) {
      r.command = "verify pfaffian";
      r.claims = suite_pfaffian(c, fam);
    } else if (v_hil->parsed() || hil_all->parsed()) {
      r.command = "verify hilbert";
      r.claims = suite_hilbert(c);
    } else if (v_poly->parsed()) {
      r.command = "verify polytopes";
      r.claims = suite_polytopes(c);
    } else if (v_fib->parsed()) {
      r.command = "verify fibres";
      r.claims = suite_fibres(c);
    } else if (v_mon->parsed()) {
      r.command = "verify monodromy";
      r.claims = suite_monodromy(c, cp);
    } else if (fib->parsed()) {
      r = fibres_report(c, family, parse_point("--lambda", lambda_s), parse_point("--mu", mu_s), alternate);
    } else if (mon->parsed()) {
      std::tie(spec.lambda, spec.mu) = parse_center(center);
      spec.tol = c.tol;
      r = monodromy_report(c, spec, cp);
    } else if (rep->parsed()) {
      r = full_report(c, cp);
    }
    if (fam && r.data.empty()) r.data = {{"family", *fam}};
    r.sort();
    if (format == "text")
      out << r.to_text();
    else
      out << r.to_json().dump(2) << "\n";
    return r.exit_code();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace k3lab::cli
