#pragma once

#include "monicdyn/heights.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace monicdyn {

struct OrbitStep {
  int n = 0;
  Divisor radical;
  int degree = 0;
};

enum class OrbitStatus { PreperiodicProvenAt, Inconclusive };

struct OrbitRecord {
  std::vector<OrbitStep> steps;
  OrbitStatus status = OrbitStatus::Inconclusive;
  /// m for PreperiodicProvenAt(m), max_steps for Inconclusive.
  int m = 0;
};

/// R_0 = rad D, R_{n+1} = rad f_*(R_n), stopping at the first m with
/// R_m | rad(R_0 ... R_{m-1}). Examines at most max_steps iterates
/// R_0 .. R_{max_steps - 1}.
OrbitRecord orbit_certify(const PolyMap &f, const Divisor &D, int max_steps);
OrbitRecord orbit_certify(DivisorOrbit &orbit, int max_steps);

struct Budgets {
  /// Iterates of the critical orbit examined, counting C_f itself.
  int max_steps = 8;
  mpfr_prec_t precision = kDefaultPrecision;
};

enum class Verdict { PcfProven, NotPcfProven, Unknown };

std::string to_string(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::Unknown;
  /// PCF: m. NOT_PCF: the escaping iterate. UNKNOWN: iterates examined.
  int step = 0;
  /// NOT_PCF only.
  std::optional<Place> place;
  /// NOT_PCF only: a positive value of G_{f,v}(C_f).
  std::optional<LogValue> witness;
  /// Radicals of the critical orbit examined along the way.
  std::vector<Divisor> radicals;
};

/// Local escape of C_f at the relevant places, iterate by iterate.
Certificate nonpcf_certify(const PolyMap &f, const Budgets &budgets = {});

/// Orbit finiteness and local escape in lockstep on one shared orbit:
/// the first definitive answer by iterate wins; at a given iterate the
/// orbit test runs first, then the primes ascending, then infinity.
Certificate classify(const PolyMap &f, const Budgets &budgets = {});

/// Rechecks a NOT_PCF witness from its stored step.
bool verify_witness(const PolyMap &f, const Certificate &c, mpfr_prec_t prec = kDefaultPrecision);

struct Component {
  Divisor divisor;
  /// Components meeting the radical of its image.
  std::vector<int> image;
};

/// Best-effort splitting of the critical orbit into components with their
/// images. Components come in order of first appearance in the orbit.
struct Portrait {
  std::vector<Component> components;
  /// Chains starting at the components of C_f, each ending at the first
  /// repeated component, as component indices.
  std::vector<std::vector<int>> chains;
};

Portrait portrait(const PolyMap &f, const std::vector<Divisor> &radicals);

/// Rational roots of sum c_k t^k, ascending, without multiplicity.
std::vector<Rational> rational_roots(const std::vector<Rational> &coeffs);

using Quad = std::array<long, 4>;

/// Rational affine fixed points (u, v) of the quadratic map, sorted.
std::vector<std::array<Rational, 2>> rational_fixed_points(const Quad &t);

/// (a, b, c, d) conjugated by the translation by an affine fixed point.
Quad translate(const Quad &t, const std::array<Rational, 2> &fixed_point);
Quad swap(const Quad &t);

/// All tuples reachable by swaps and fixed-point translations.
std::vector<Quad> conjugacy_orbit(const Quad &t);

/// Minimal l1 norm, ties broken by the lexicographically greatest tuple.
Quad canonical_representative(const std::vector<Quad> &orbit);

struct ConjugacyClass {
  Quad representative;
  /// Input tuples in the class, sorted.
  std::vector<Quad> members;
  /// The origin is the only rational fixed point of the representative.
  bool irrational_fixed_points_only = false;
};

/// Classes sorted by representative.
std::vector<ConjugacyClass> conjugacy_dedupe(const std::vector<Quad> &tuples);

class UnsupportedFamily : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct SearchBound {
  long bound = 0;
  /// Certified enclosures of both candidate bounds on B_inf.
  Interval first;
  Interval second;
};

/// Coefficient bound for PCF maps in the quadratic family.
SearchBound derive_search_bound(int N, int d, mpfr_prec_t prec = kDefaultPrecision);

/// Tuples with max |.| <= box, a and d even.
Integer tuple_count(long box);

std::string to_string(const Quad &t);

} // namespace monicdyn
