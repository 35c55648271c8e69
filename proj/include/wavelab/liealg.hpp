#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wavelab/euler.hpp"
#include "wavelab/fields.hpp"

namespace wavelab {

enum class BaseField { gamma_plus, gamma_minus, gamma_zero, w1, w2 };

const char* base_field_name(BaseField b);

/// rho^{-n} multiple of one of the named Euler fields.
struct GradedElement {
  int n = 0;
  BaseField base = BaseField::gamma_zero;

  bool operator==(const GradedElement& o) const { return n == o.n && base == o.base; }
  bool operator<(const GradedElement& o) const {
    return n != o.n ? n < o.n : static_cast<int>(base) < static_cast<int>(o.base);
  }
};

std::string graded_label(const GradedElement& e);
VectorField realize(const GradedElement& e, const GasParameters& g);

/// Bracket table over a graded basis with state-independent coefficients
/// fitted simultaneously at many sampled states. Brackets that would need
/// grade > truncation are kept with a truncated flag, never dropped silently.
struct StructureTable {
  struct Entry {
    std::vector<double> coeffs;  // over basis order
    double residual = 0.0;       // relative fit residual
    bool truncated = false;      // involves grade > N content
  };

  std::vector<GradedElement> basis;
  std::map<std::pair<int, int>, Entry> entries;  // keys i < j
  double max_residual = 0.0;
  int truncation = 0;
  GasParameters g;
  std::uint64_t seed = 0;
  int samples = 0;

  const Entry* find(int i, int j) const;  // i < j
  int index_of(const GradedElement& e) const;
  std::string markdown() const;
};

/// Iteratively brackets pairs and grows the graded basis until closed up to
/// grade N. Throws std::runtime_error with a "not closed in graded ansatz"
/// diagnostic when a bracket cannot be fitted with state-independent graded
/// coefficients.
StructureTable close_under_bracket(const std::vector<GradedElement>& seed_elements, int N,
                                   const GasParameters& g, int samples = 50,
                                   std::uint64_t seed = 20240501, double fit_tol = 1e-7);

struct IdealReport {
  bool abelian = false;
  bool ideal = false;
  double max_internal_bracket = 0.0;  // largest coefficient of an internal bracket
  double max_leak = 0.0;              // largest coefficient escaping the candidate span
  int truncated_pairs = 0;            // pairs decided only up to truncation
};

IdealReport ideal_check(const StructureTable& table, const std::vector<GradedElement>& candidate);

/// Isomorphism-invariant fingerprints of the quotient by an Abelian ideal.
struct QuotientFingerprint {
  int dim = 0;
  int derived_dim = 0;
  int center_dim = 0;
  std::vector<GradedElement> quotient_basis;
  /// quotient structure constants c[k] of [q_i, q_j], keys i < j
  std::map<std::pair<int, int>, std::vector<double>> brackets;
};

QuotientFingerprint quotient_fingerprint(const StructureTable& table,
                                         const std::vector<GradedElement>& ideal);

/// Scan for the Witt-type pattern [L_m, L_n] = c (m - n) L_{m+n} within each
/// single-base graded family of the closure. A fingerprint scan, not a proof.
struct WittPatternReport {
  struct FamilyResult {
    BaseField base;
    bool abelian = false;
    bool pattern = false;
    double c = 0.0;           // fitted constant
    double fit_residual = 0.0;
    int truncated_pairs = 0;
  };
  StructureTable table;
  std::vector<FamilyResult> families;
};

WittPatternReport witt_pattern_scan(const std::vector<GradedElement>& seed_elements, int N,
                                    const GasParameters& g, int samples = 50,
                                    std::uint64_t seed = 20240501);

}  // namespace wavelab
