#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <sstream>

#include "cli.hpp"
#include "k3lab/hilbert.hpp"
#include "k3lab/lattices.hpp"
#include "k3lab/linalg.hpp"
#include "k3lab/parse.hpp"
#include "k3lab/polytopes.hpp"

namespace k3lab::cli {

namespace {

class Claims {
 public:
  // Runs f for the computed value; pass iff it equals expected.
  template <class F>
  Claim& check(std::string id, std::string ref, std::string expected, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    Claim c;
    c.id = std::move(id);
    c.ref = std::move(ref);
    c.expected = std::move(expected);
    try {
      c.computed = f();
      c.verdict = c.computed == c.expected ? Verdict::Pass : Verdict::Fail;
    } catch (const std::exception& e) {
      c.computed = std::string("error: ") + e.what();
      c.verdict = Verdict::Fail;
    }
    c.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out_.push_back(std::move(c));
    return out_.back();
  }

  std::vector<Claim> take() {
    std::stable_sort(out_.begin(), out_.end(), [](const Claim& a, const Claim& b) { return a.id < b.id; });
    return std::move(out_);
  }

 private:
  std::vector<Claim> out_;
};

std::string yes(bool b) { return b ? "true" : "false"; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string list(const std::vector<long>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

// First total degree with a nonzero coefficient, or -1.
int first_nonzero(const BiSeries& r) {
  for (int d = 0; d <= r.valid_order(); ++d)
    for (int m = 0; m <= d; ++m)
      if (r(d - m, m) != 0) return d;
  return -1;
}

std::string annihilation(const ThetaOperator& op, const BiSeries& s) {
  BiSeries r = apply(op, s);
  if (r.valid_order() < 0) return "series too short";
  int d = first_nonzero(r);
  return d < 0 ? "annihilates through order " + std::to_string(r.valid_order())
               : "nonzero at order " + std::to_string(d);
}

std::string factor_list(std::vector<Poly> ps) {
  std::vector<std::string> s;
  for (auto& p : ps) {
    Poly q = p.to_vars(base_vars());
    s.push_back((q * (Rational(1) / q.leading_coeff())).str());
  }
  std::sort(s.begin(), s.end());
  std::string out;
  for (auto& x : s) out += (out.empty() ? "" : "; ") + x;
  return out;
}

std::string system_diff(const SecondOrderSystem& a, const SecondOrderSystem& b) {
  std::string bad;
  for (int i = 0; i < 8; ++i)
    if (*a.coefficients()[i] != *b.coefficients()[i]) bad += (bad.empty() ? "" : ",") + std::string(SecondOrderSystem::kNames[i]);
  return bad.empty() ? "all 8 coefficients equal" : "differ in " + bad;
}

double dist(const CMatrix4& a, const CMatrix4& b) { return (a - b).cwiseAbs().maxCoeff(); }

const Complex kLambda(0.1, 0.05), kMu(0.0004, 0.0003);

}  // namespace

std::vector<Claim> suite_polytopes(const Config&) {
  Claims out;
  for (int j = 0; j < 5; ++j) {
    std::string p = "P" + std::to_string(j);
    out.check("polytope." + p + ".fano", "Fano flag of " + p, yes(j != 1),
              [&] { return yes(is_fano(standard_polytope(j))); });
    out.check("polytope." + p + ".reflexive_terminal", "reflexive and terminal " + p, "true",
              [&] { return yes(is_reflexive_terminal(standard_polytope(j))); });
  }
  return out.take();
}

std::vector<Claim> suite_lattices(const Config& c) {
  Claims out;
  const long m_det[4] = {-5, -9, -9, -9};
  for (int j = 0; j < 4; ++j) {
    std::string n = std::to_string(j);
    out.check("lattice.det.M" + n, "determinant of M" + n, std::to_string(m_det[j]),
              [&] { return k3lab::to_string(det_exact(build_M(j))); });
    out.check("lattice.signature.M" + n, "signature of M" + n, "(1,17)", [&] {
      auto [p, q] = signature(build_M(j));
      return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    });
    out.check("lattice.certificate.f" + n, "unimodular certificate for M" + n, "unimodular, congruent", [&] {
      UnimodularMap u = certificate(j);
      bool uni = abs(det(u)) == 1;
      bool eq = verify_equivalence(build_M(j), u, neron_severi_form(j));
      return std::string(uni ? "unimodular" : "not unimodular") + ", " + (eq ? "congruent" : "not congruent");
    });
    Claim& cl = out.check("lattice.complement.f" + n, "transcendental lattice of family " + n,
                          "congruent to A" + n, [&]() -> std::string {
                            GramMatrix k3 = build_standard("K3");
                            auto e = k3_embedding(binary_part(j), c.bound);
                            if (!e) return "no embedding within bound";
                            Complement comp = orthogonal_complement(*e, k3);
                            auto w = find_congruence(comp.gram, transcendental_form(j), c.bound);
                            if (!w) return "no congruence within bound";
                            return "congruent to A" + n;
                          });
    if (cl.computed.find("within bound") != std::string::npos) cl.verdict = Verdict::Inconclusive;
  }
  const std::pair<const char*, long> dets[] = {{"L3prime", -36},  {"T2", -44},         {"T3", -40},
                                               {"L2tilde", -38},  {"L1tilde_a1", 12},  {"L1tilde_a4", -30},
                                               {"L1tilde_a7", 6}, {"L3tilde_0", -16},  {"L3tilde_1", -112}};
  for (auto [name, d] : dets) {
    Claim& cl = out.check(std::string("lattice.det.") + name, std::string("determinant of ") + name, std::to_string(d),
                          [&] { return k3lab::to_string(det_exact(gram(lattice_config(name)))); });
    if (cl.verdict == Verdict::Fail && (cl.id == "lattice.det.T2" || cl.id == "lattice.det.T3"))
      cl.note = "a hyperbolic lattice of rank 17 has positive determinant";
  }
  Claim& cl = out.check("lattice.det.T1bar", "determinant of T1bar in k",
                        parse_poly("-72*(1+k+k^2)", symbol_vars()).str(),
                        [&] { return symbolic_det(lattice_config("T1bar")).str(); });
  if (cl.verdict == Verdict::Fail) cl.note = "agrees at k = 0";
  return out.take();
}

std::vector<Claim> suite_fibres(const Config&) {
  Claims out;
  const char* table[4] = {"I15 + I3 + 6I1", "I*3 + I9 + 6I1", "I11 + I*1 + 6I1", "2I9 + 6I1"};
  std::uint64_t state = 24;
  auto next = [&](int lo, int hi) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return lo + int((state >> 33) % std::uint64_t(hi - lo + 1));
  };
  auto point = [&](int j) {
    for (;;) {
      Rational l(next(-40, 40), next(1, 9)), m(next(-40, 40), next(1, 9));
      l.canonicalize();
      m.canonicalize();
      if (in_parameter_domain(j, l, m)) return std::pair(l, m);
    }
  };
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 5; ++k) {
      auto [l, m] = point(j);
      out.check("fibres.f" + std::to_string(j) + ".p" + std::to_string(k),
                "fibres at (" + rational_string(l) + ", " + rational_string(m) + ")",
                std::string(table[j]) + ", euler 24", [&] {
                  FibreTable t = fibre_table(j, l, m);
                  return t.summary() + ", euler " + std::to_string(t.euler_sum());
                });
    }
  for (int k = 0; k < 2; ++k) {
    auto [l, m] = point(3);
    out.check("fibres.f3alt.p" + std::to_string(k),
              "second fibration at (" + rational_string(l) + ", " + rational_string(m) + ")",
              "I10 + I*2 + 6I1, euler 24", [&] {
                FibreTable t = fibre_table(3, l, m, Fibration::Alternate);
                return t.summary() + ", euler " + std::to_string(t.euler_sum());
              });
  }
  return out.take();
}

std::vector<Claim> suite_gkz(const Config& c, std::optional<int> family, const Cache* cache) {
  Claims out;
  for (int j = 0; j < 4; ++j) {
    if (family && *family != j) continue;
    std::string f = "gkz.f" + std::to_string(j);
    BiSeries s = cached_series(j, c.order, cache);
    std::string through = "annihilates through order ";
    for (int w = 1; w <= 3; ++w) {
      std::string d = "D" + std::to_string(w);
      std::string want = through + std::to_string(c.order - printed_operator(j, w).max_shift());
      out.check(f + "." + d + ".printed", "printed operator " + d + " of family " + std::to_string(j), want,
                [&] { return annihilation(printed_operator(j, w), s); });
      if (period_operator(j, w) != printed_operator(j, w)) {
        std::string want2 = through + std::to_string(c.order - period_operator(j, w).max_shift());
        Claim& cl = out.check(f + "." + d + ".corrected", "corrected operator " + d + " of family " + std::to_string(j),
                              want2, [&] { return annihilation(period_operator(j, w), s); });
        cl.note = period_operator(j, w).str();
      }
    }
    out.check(f + ".reduction", "GKZ reduction of family " + std::to_string(j), "both annihilate", [&] {
      auto [a, b] = reduce_to_theta(gkz_system(j), torus_param(j));
      return std::string(annihilates(a, s) && annihilates(b, s) ? "both annihilate" : "residual nonzero");
    });
    if (j == 0)
      out.check(f + ".reduction_printed", "reduction equals the printed pair", "equal", [&] {
        auto [a, b] = reduce_to_theta(gkz_system(0), torus_param(0));
        return std::string(a == printed_operator(0, 1) && b == printed_operator(0, 2) ? "equal" : "different");
      });
    if (j == 1) {
      Claim& cl = out.check(f + ".appell", "Appell F4(1/3,2/3,1,1)", "equal through order " + std::to_string(c.order), [&] {
        BiSeries a = appell_f4(Rational(1, 3), Rational(2, 3), 1, 1, c.order);
        for (int n = 0; n <= c.order; ++n)
          for (int m = 0; n + m <= c.order; ++m)
            if (s(n, m) != ((n + m) % 2 ? -a(n, m) : a(n, m)))
              return "differs at (" + std::to_string(n) + "," + std::to_string(m) + ")";
        return "equal through order " + std::to_string(c.order);
      });
      cl.note = "sign convention: F4 at (-27 lambda, -27 mu)";
    }
  }
  return out.take();
}

std::vector<Claim> suite_pfaffian(const Config&, std::optional<int> family) {
  Claims out;
  const char* apparent[4] = {"1-15*lambda-100*lambda^2", nullptr, "1+108*lambda-288*mu", "-54*lambda+(1-4*mu)^2"};
  for (int j = 0; j < 4; ++j) {
    if (family && *family != j) continue;
    std::string f = "pfaffian.f" + std::to_string(j), fam = " of family " + std::to_string(j);
    PfaffianSystem p = pfaffian_data(j);
    out.check(f + ".integrable", "integrability" + fam, "residual zero", [&] {
      RFMatrix r = integrability_residual(p);
      int bad = 0;
      for (Eigen::Index a = 0; a < r.rows(); ++a)
        for (Eigen::Index b = 0; b < r.cols(); ++b) bad += !r(a, b).is_zero();
      return bad ? std::to_string(bad) + " nonzero residual entries" : std::string("residual zero");
    });
    PfaffianSystem d = derive_pfaffian(j);
    out.check(f + ".derived", "derived system" + fam, "32 of 32 entries equal", [&] {
      int eq = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) eq += (d.alpha(a, b) == p.alpha(a, b)) + (d.beta(a, b) == p.beta(a, b));
      return std::to_string(eq) + " of 32 entries equal";
    });
    for (const auto& x : pfaffian_repairs()) {
      if (x.family != j) continue;
      // printed symbol names: a_{2k} sit in row 4 of alpha, b_{2k} and b_{3k} in rows 3 and 4 of beta
      std::string entry = std::string(1, x.matrix) + std::to_string(x.matrix == 'a' ? x.row - 1 : x.row) + std::to_string(x.col + 1);
      const RF& want = (x.matrix == 'a' ? d.alpha : d.beta)(x.row, x.col);
      std::string printed;
      bool undefined = false;
      try {
        printed = printed_entry(j, x.matrix, x.row, x.col).str();
      } catch (const std::domain_error&) {
        undefined = true;
        printed = "undefined symbol";
      }
      Claim& cl = out.check(f + "." + entry + ".printed", "printed entry " + entry + fam, printed,
                            [&] { return want.str(); });
      cl.note = x.reason + "; matrix entry (" + std::to_string(x.row + 1) + "," + std::to_string(x.col + 1) + ")";
      if (undefined) cl.verdict = Verdict::Inconclusive;
    }
    SingularLocus loc = singular_locus_from(p);
    out.check(f + ".singular", "singular locus" + fam, factor_list(singular_locus(j)),
              [&] { return factor_list(loc.true_factors()); });
    out.check(f + ".apparent", "apparent singularities" + fam,
              apparent[j] ? factor_list({parse_poly(apparent[j], base_vars())}) : "",
              [&] { return factor_list(loc.apparent_factors()); });
  }
  return out.take();
}

Loop make_loop(const LoopSpec& s) {
  if (s.radius <= 0) throw UsageError("radius must be positive");
  if (s.kind == "lambda-circle") return circle_loop(0, s.lambda, s.mu, s.radius);
  if (s.kind == "mu-circle") return circle_loop(1, s.lambda, s.mu, s.radius);
  if (s.kind == "disc-circle") return discriminant_loop(s.family, s.lambda, s.mu, s.radius);
  throw UsageError("unknown loop kind '" + s.kind + "'");
}

TransportResult cached_transport(const PfaffianSystem& p, const LoopSpec& s, double tol, const Cache* cache) {
  char key[256];
  std::snprintf(key, sizeof key, "%d %s %.17g %.17g %.17g %.17g %.17g %.17g", s.family, s.kind.c_str(), s.lambda.real(),
                s.lambda.imag(), s.mu.real(), s.mu.imag(), s.radius, tol);
  std::string name = "transport-" + checksum(key) + ".json";
  if (cache)
    if (auto body = cache->read(name)) try {
        json j = json::parse(*body);
        if (j.at("key") == key) {
          TransportResult r;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) r.M(a, b) = Complex(j["M"][a][b][0], j["M"][a][b][1]);
          r.error = j.at("error");
          r.steps = j.at("steps");
          return r;
        }
      } catch (const json::exception&) {
      }
  TransportResult r = transport(p, make_loop(s), tol);
  if (cache) {
    json m = json::array();
    for (int a = 0; a < 4; ++a) {
      json row = json::array();
      for (int b = 0; b < 4; ++b) row.push_back({r.M(a, b).real(), r.M(a, b).imag()});
      m.push_back(row);
    }
    cache->write(name, json{{"key", key}, {"M", m}, {"error", r.error}, {"steps", r.steps}}.dump() + "\n");
  }
  return r;
}

std::vector<Claim> suite_monodromy(const Config& c, const Cache* cache) {
  Claims out;
  GramMatrix a0 = form_a0();
  std::string plus;
  for (const auto& [name, g] : po_generators()) {
    out.check("monodromy.isometry." + name, "generator " + name + " preserves A0", "true",
              [&] { return yes(is_isometry(g, a0)); });
    if (component_test(g)) plus += (plus.empty() ? "" : ",") + name;
  }
  out.check("monodromy.components", "generators preserving the component", "G1,G2,G3,H2", [&] { return plus; });

  const double fine = c.tol / 10;
  auto local = [&](int j, const std::string& tag, LoopSpec spec, const std::vector<long>& poly) {
    std::string id = "monodromy.f" + std::to_string(j) + "." + tag;
    PfaffianSystem p = pfaffian_data(j);
    TransportResult m1, m2;
    Claim& conv = out.check(id + ".converged", "step-halving convergence", "true", [&] {
      m1 = cached_transport(p, spec, c.tol, cache);
      m2 = cached_transport(p, spec, fine, cache);
      return yes(dist(m1.M, m2.M) < 1e-6);
    });
    if (conv.computed.rfind("error", 0) == 0) return;
    conv.note = "difference " + fmt(dist(m1.M, m2.M));
    LocalReport r = analyse(m2.M, 1e-6);
    out.check(id + ".quasi_unipotent", "local monodromy is quasi-unipotent", "true", [&] { return yes(r.quasi_unipotent); });
    out.check(id + ".char_poly", "characteristic polynomial", list(poly), [&] { return list(r.rounded_char_poly); });
    if (poly[0] == -1)
      out.check(id + ".involution", "square is the identity", "true",
                [&] { return yes(dist(m2.M * m2.M, CMatrix4::Identity()) < 1e-6); });
  };
  const std::vector<long> unip{1, -4, 6, -4, 1}, refl{-1, 2, 0, -2, 1};
  for (int j = 0; j < 4; ++j) {
    local(j, "mu0", {j, "mu-circle", kLambda, 0, 1e-5}, unip);
    local(j, "lambda0", {j, "lambda-circle", 0, kMu, j == 0 ? 1e-2 : 1e-5}, unip);
    local(j, "disc", {j, "disc-circle", kLambda, 0, 1e-5}, refl);
  }
  local(0, "disc_sheet2", {0, "disc-circle", kLambda, -0.003, 1e-4}, refl);

  PfaffianSystem p0 = pfaffian_data(0);
  out.check("monodromy.f0.contractible", "contractible loop", "identity", [&] {
    TransportResult r = cached_transport(p0, {0, "mu-circle", kLambda, kMu, 1e-4}, c.tol, cache);
    return std::string(dist(r.M, CMatrix4::Identity()) < 1e-6 ? "identity" : "not identity");
  });
  out.check("monodromy.f0.apparent", "loop around an apparent curve", "identity", [&] {
    TransportResult r = cached_transport(p0, {0, "lambda-circle", 0.05, kMu, 0.01}, c.tol, cache);
    return std::string(dist(r.M, CMatrix4::Identity()) < 1e-6 ? "identity" : "not identity");
  });
  Claim& fit = out.check("monodromy.f0.integrality", "integral form after a basis change", "integral isometry of A0",
                         [&]() -> std::string {
                           Loop a = lasso(kLambda, kMu, discriminant_loop(0, kLambda, 0, 1e-5));
                           Loop b = lasso(kLambda, kMu, circle_loop(1, kLambda, 0, 1e-5));
                           Loop d = lasso(kLambda, kMu, discriminant_loop(0, kLambda, -0.003, 1e-4));
                           CMatrix4 ma = transport(p0, a, fine).M, mb = transport(p0, b, fine).M,
                                    md = transport(p0, d, fine).M;
                           auto basis = root_orbit_basis(ma, {mb, md, mb.inverse(), md.inverse()});
                           if (!basis) return "root orbit spans less than rank 4";
                           IntegralityReport r = integrality_check(mb, *basis, a0, 1e-6);
                           if (!r.integral) return "no integral candidate, residual " + fmt(r.residual);
                           return r.isometry ? "integral isometry of A0" : "integral, not an isometry of A0";
                         });
  if (fit.verdict == Verdict::Fail && fit.computed.rfind("error", 0) != 0) fit.verdict = Verdict::Inconclusive;
  return out.take();
}

std::vector<Claim> suite_hilbert(const Config&) {
  Claims out;
  out.check("hilbert.klein_relation", "relation among the icosahedral invariants", "identity",
            [&] { return std::string(verify_klein_relation() ? "identity" : "fails"); });
  SecondOrderSystem period = period_system();
  out.check("hilbert.period_system", "second-order system from the Pfaffian", "all 8 coefficients equal",
            [&] { return system_diff(second_order_from_pfaffian(pfaffian_data(0)), period); });
  out.check("hilbert.transform", "period system in the uniformizing coordinates", "all 8 coefficients equal",
            [&] { return system_diff(transform_system(period, birational_f()), uniformizing_system()); });
  for (bool sato : {false, true}) {
    std::string tag = sato ? "hilbert.sato" : "hilbert.normal";
    SecondOrderSystem s = sato ? sato_system() : uniformizing_system();
    PowerProduct factor = sato ? sato_normalization_factor() : normalization_factor();
    out.check(tag + ".integrable", "integrability", "true", [&] { return yes(is_integrable(s)); });
    std::array<RF, 4> abcd;
    out.check(tag + ".abcd", "a, b, c, d from the normalization factor", "all equal", [&] {
      abcd = coeffs_from_normalization(s.l, s.m, log_differential(factor, xy_vars()), xy_vars());
      std::string bad;
      const RF* want[4] = {&s.a, &s.b, &s.c, &s.d};
      for (int i = 0; i < 4; ++i)
        if (abcd[i] != *want[i]) bad += (bad.empty() ? "" : ",") + std::string(1, "abcd"[i]);
      return bad.empty() ? std::string("all equal") : "differ in " + bad;
    });
    out.check(tag + ".pq", "p, q from integrability", "unique, equal", [&] {
      PQSolution pq = pq_from_integrability(xy_vars(), s.l, s.m, abcd[0], abcd[1], abcd[2], abcd[3]);
      return std::string(pq.unique ? "unique" : "not unique") + ", " + (pq.p == s.p && pq.q == s.q ? "equal" : "different");
    });
  }
  out.check("hilbert.branch_locus", "branch locus pulled back", "monomial times the discriminant factor", [&] {
    Poly d = branch_locus();
    auto rest = divide_exact(d, Poly::variable(xy_vars(), "y"));
    if (!rest) return std::string("y does not divide");
    CoordinateChange f = birational_f();
    RF back = substitute(*rest, {{"x", f.u}, {"y", f.v}});
    Poly t = singular_locus(0)[2].to_vars(base_vars());
    Poly num = back.num().to_vars(base_vars());
    auto cof = divide_exact(num, t);
    if (!cof || multiplicity(num, t) != 1) return std::string("not a simple multiple");
    return std::string(cof->is_monomial() ? "monomial times the discriminant factor" : "other cofactor");
  });
  return out.take();
}

Report fibres_report(const Config& c, int family, const Rational& lambda, const Rational& mu, bool alternate) {
  if (!in_parameter_domain(family, lambda, mu)) throw UsageError("point lies on the excluded locus");
  const char* table[4] = {"I15 + I3 + 6I1", "I*3 + I9 + 6I1", "I11 + I*1 + 6I1", "2I9 + 6I1"};
  if (alternate && family != 3) throw UsageError("only family 3 has a second fibration");
  Report r;
  r.command = "fibres";
  r.config = c;
  FibreTable t = fibre_table(family, lambda, mu, alternate ? Fibration::Alternate : Fibration::Default);
  json entries = json::array();
  for (const auto& e : t.entries) entries.push_back({{"location", e.location.str()}, {"type", e.type.str()}, {"count", e.location.count}});
  r.data = {{"family", family}, {"lambda", rational_string(lambda)}, {"mu", rational_string(mu)},
            {"fibration", alternate ? "alternate" : "default"}, {"fibres", entries}, {"summary", t.summary()},
            {"euler", t.euler_sum()}};
  Claims out;
  out.check("fibres.f" + std::to_string(family) + (alternate ? "alt" : ""), "singular fibres",
            std::string(alternate ? "I10 + I*2 + 6I1" : table[family]) + ", euler 24",
            [&] { return t.summary() + ", euler " + std::to_string(t.euler_sum()); });
  r.claims = out.take();
  return r;
}

Report monodromy_report(const Config& c, const LoopSpec& s, const Cache* cache) {
  if (s.family < 0 || s.family > 3) throw UsageError("family must be 0..3");
  PfaffianSystem p = pfaffian_data(s.family);
  TransportResult coarse, fine;
  try {
    coarse = cached_transport(p, s, s.tol, cache);
    fine = cached_transport(p, s, s.tol / 10, cache);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  LocalReport a = analyse(fine.M, 1e-6);
  auto cx = [](Complex z) { return json::array({z.real(), z.imag()}); };
  json m = json::array(), cp = json::array(), ev = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back(cx(fine.M(i, k)));
    m.push_back(row);
  }
  for (auto z : a.char_poly) cp.push_back(cx(z));
  for (auto z : a.eigenvalues) ev.push_back(cx(z));
  double conv = dist(coarse.M, fine.M);
  Report r;
  r.command = "monodromy";
  r.config = c;
  r.config.tol = s.tol;
  r.data = {{"family", s.family},
            {"loop", s.kind},
            {"center", {cx(s.lambda), cx(s.mu)}},
            {"radius", s.radius},
            {"matrix", m},
            {"char_poly", cp},
            {"rounded_char_poly", a.rounded_char_poly},
            {"eigenvalues", ev},
            {"residuals",
             {{"integrality", a.integrality_residual},
              {"modulus", a.modulus_residual},
              {"step_halving", conv},
              {"transport_error", fine.error}}},
            {"steps", fine.steps}};
  Claims out;
  out.check("monodromy.converged", "step-halving convergence", "true", [&] { return yes(conv < 1e-6); });
  out.check("monodromy.quasi_unipotent", "eigenvalues are roots of unity", "true", [&] { return yes(a.quasi_unipotent); });
  if (s.kind == "disc-circle") {
    out.check("monodromy.reflection", "characteristic polynomial of a reflection", "[-1,2,0,-2,1]",
              [&] { return list(a.rounded_char_poly); });
    out.check("monodromy.involution", "square is the identity", "true",
              [&] { return yes(dist(fine.M * fine.M, CMatrix4::Identity()) < 1e-6); });
  }
  r.claims = out.take();
  return r;
}

Report full_report(const Config& c, const Cache* cache) {
  std::vector<std::future<std::vector<Claim>>> jobs;
  jobs.push_back(std::async(std::launch::async, [&] { return suite_polytopes(c); }));
  jobs.push_back(std::async(std::launch::async, [&] { return suite_lattices(c); }));
  jobs.push_back(std::async(std::launch::async, [&] { return suite_fibres(c); }));
  jobs.push_back(std::async(std::launch::async, [&] { return suite_gkz(c, std::nullopt, cache); }));
  jobs.push_back(std::async(std::launch::async, [&] { return suite_pfaffian(c, std::nullopt); }));
  jobs.push_back(std::async(std::launch::async, [&] { return suite_monodromy(c, cache); }));
  jobs.push_back(std::async(std::launch::async, [&] { return suite_hilbert(c); }));
  Report r;
  r.command = "report";
  r.config = c;
  for (auto& j : jobs)
    for (auto& cl : j.get()) r.claims.push_back(std::move(cl));
  r.sort();
  return r;
}

}  // namespace k3lab::cli
