#pragma once
// Elliptic fibrations of the four families: models, Kodaira normal forms,
// discriminants, and singular fibre classification.
#include <map>
#include <string>
#include <vector>

#include "k3lab/ratfunc.hpp"

namespace k3lab {

enum class Chart { Finite, Infinite };

// Family 3 carries two fibrations; the default one has fibres I9 + I9.
enum class Fibration { Default, Alternate };

// y^2 = 4x^3 + c2 x^2 + c1 x + c0, coefficients in (base, lambda, mu).
struct QuarticModel {
  std::string base;
  Poly c2, c1, c0;
  Chart chart = Chart::Finite;
};

// y^2 = 4x^3 - g2 x - g3.
struct WeierstrassModel {
  std::string base;
  Poly g2, g3;
  Chart chart = Chart::Finite;
};

struct FibreType {
  enum Kind { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };
  Kind kind = I;
  int n = 0;  // n for I_n, b for I*_b
  int euler() const;
  int components() const;  // number of irreducible components
  std::string str() const;  // "I3", "I*1", "IV*"
  friend bool operator==(const FibreType&, const FibreType&) = default;
};

struct FibreLocation {
  enum Kind { Root, Infinity, Factor };
  Kind kind = Root;
  Rational root;  // for Root
  Poly factor;    // square-free, for Factor
  int count = 1;  // number of points (degree of factor)
  std::string str() const;
};

struct FibreEntry {
  FibreLocation location;
  FibreType type;
};

struct FibreTable {
  std::vector<FibreEntry> entries;
  int euler_sum() const;
  std::string summary() const;  // "I15 + I3 + 6I1", largest types first
  std::map<std::string, int> counts() const;  // type name -> number of fibres
};

VarList fibration_vars(const std::string& base);
QuarticModel family_model(int j, Chart chart = Chart::Finite, Fibration which = Fibration::Default);
WeierstrassModel to_weierstrass(const QuarticModel& q);
WeierstrassModel chart_flip(const WeierstrassModel& w);
Poly discriminant(const WeierstrassModel& w);
RationalFunction j_invariant(const WeierstrassModel& w);

// Valuations (v(g2), v(g3), v(Delta)) to Kodaira type, after minimality reduction.
FibreType kodaira_type(int v2, int v3, int vdelta);

FibreType classify_fibre(const WeierstrassModel& w, const FibreLocation& where, const Rational& lambda0,
                         const Rational& mu0);
FibreTable fibre_table(int j, const Rational& lambda0, const Rational& mu0, Fibration which = Fibration::Default);

// {lambda, mu, F_j(lambda, mu)}; a point is admissible when none vanish.
std::vector<Poly> singular_locus(int j);
bool in_parameter_domain(int j, const Rational& lambda0, const Rational& mu0);

// Affine surface S_j in variables (X, Y, Z) with lambda, mu specialized.
Poly affine_surface(int j, const Rational& lambda0, const Rational& mu0);
// Substituting the birational map into S_j gives a multiple of the model relation.
bool verify_birational_map(int j, Fibration which, const Rational& lambda0, const Rational& mu0);

}  // namespace k3lab
